"""Smoke test for the kostka extension module."""

import kostka


def main():
    m = kostka.Composition.from_partition("1,1,1,1")
    assert m.parts == [4]
    for route in ("fermionic", "charge", "bgg", "coinvariant"):
        p = kostka.restricted_kostka(0, m, 2, route=route)
        assert p.terms() == [(8, 1), (16, 1)], (route, p.terms())
    assert str(kostka.restricted_kostka(0, m, 2)) == "q^2 + q^4"

    p = kostka.unrestricted_kostka(2, kostka.Composition([2]))
    assert p == kostka.QPolynomial([1])
    assert kostka.QPolynomial.from_json(p.to_json()) == p
    assert (kostka.QPolynomial([1, 1]) * kostka.QPolynomial([1, -1])) == kostka.QPolynomial([1, 0, -1])

    assert kostka.structure_constants(m, 2) == [2, 0, 2]
    assert kostka.restricted_kostka(0, m, 2).eval_at_one() == 2

    offset, coeffs = kostka.branching_via_kostka_limit(0, 0, 1, 0, 6)
    assert offset == "0" and coeffs == [1, 0, 1, 1, 2, 2, 3]
    assert kostka.fermionic_character(0, 0, 1, 15) == kostka.rocha_caridi(3, 4, 1, 1, 15)

    report = kostka.run_suite("abf", max_weight=4, max_level=3)
    assert report["hard_failures"] == 0 and report["discrepancies"] > 0

    try:
        kostka.Composition.from_partition("1,x")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed composition accepted")

    print("kostka smoke test ok")


if __name__ == "__main__":
    main()
