//! Verification sweeps. Each suite returns one `AuditReport`; records come out
//! in grid order regardless of how many threads did the work.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::abf::{abf_limit_check, appendix_prop_audit, grouped_identity_check, inversion_check, AbfLabel};
use crate::affine_weyl::{
    closed_form_lemma_w, euler_characteristic_bgg, homology_dim_predicate, AffineWeight, Branch,
};
use crate::audit::{AuditClass, AuditRecord, AuditReport};
use crate::coinvariant::{restricted_kostka_oracle, FunctionalModelSpec, DEFAULT_VARIABLE_CAP};
use crate::compositions::{compositions_up_to, Composition};
use crate::error::{Error, Result};
use crate::kostka::{
    fusion_top_degree, restricted_alternating, restricted_fermionic, reversed_restricted,
    reversed_restricted_truncated, UnrestrictedSource,
};
use crate::qexact::QSeriesTruncated;
use crate::verlinde::q1_consistency;
use crate::virasoro::{branching_via_kostka_limit, fermionic_character_sum, rocha_caridi, MinimalModel};

pub const SUITES: [&str; 10] = [
    "routes",
    "verlinde",
    "reversal",
    "weyl",
    "bgg",
    "coinvariant",
    "coset",
    "fermionic-virasoro",
    "abf",
    "all",
];

/// Sweep bounds. `None` means the suite's own default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SuiteOptions {
    pub max_weight: Option<i64>,
    pub max_level: Option<i64>,
    pub order: Option<usize>,
}

impl SuiteOptions {
    fn weight(&self, default: i64) -> i64 {
        self.max_weight.unwrap_or(default)
    }

    fn level(&self, default: i64) -> i64 {
        self.max_level.unwrap_or(default)
    }

    fn order(&self, default: usize) -> usize {
        self.order.unwrap_or(default)
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<AuditReport> {
    match name {
        "routes" => routes(opts),
        "verlinde" => verlinde(opts),
        "reversal" => reversal(opts),
        "weyl" => weyl(opts),
        "bgg" => bgg(opts),
        "coinvariant" => coinvariant(opts),
        "coset" => coset(opts),
        "fermionic-virasoro" => fermionic_virasoro(opts),
        "abf" => abf(opts),
        "all" => {
            let mut report = AuditReport::new("all");
            for suite in SUITES.iter().filter(|s| **s != "all") {
                report.extend(run_suite(suite, opts)?);
            }
            Ok(report)
        }
        other => Err(Error::Parse(format!("unknown suite '{other}'"))),
    }
}

/// Every `m` with `0 < |m| <= max_weight` and no part above `max_width`,
/// padded to width `max_width`.
pub fn weight_grid(max_weight: i64, max_width: usize) -> Vec<Composition> {
    compositions_up_to(max_weight, max_width)
}

/// `(k, l, m)` with `m` of width at most `k`.
fn level_grid(max_weight: i64, max_level: i64) -> Vec<(i64, i64, Composition)> {
    let mut out = Vec::new();
    for k in 1..=max_level {
        for m in weight_grid(max_weight, k as usize) {
            for l in 0..=k {
                out.push((k, l, m.clone()));
            }
        }
    }
    out
}

fn collect(suite: &str, records: Vec<Result<Vec<AuditRecord>>>) -> Result<AuditReport> {
    let mut report = AuditReport::new(suite);
    for batch in records {
        for r in batch? {
            report.push(r);
        }
    }
    Ok(report)
}

fn klm(k: i64, l: i64, m: &Composition) -> Value {
    json!({"k": k, "l": l, "m": m.to_string()})
}

fn routes(opts: &SuiteOptions) -> Result<AuditReport> {
    let grid = level_grid(opts.weight(10), opts.level(4));
    let records = grid
        .par_iter()
        .map(|(k, l, m)| {
            let (k, l) = (*k, *l);
            let fermionic = restricted_fermionic(l, m, k);
            let alternating = restricted_alternating(l, m, k, UnrestrictedSource::ChargeOracle)?;
            let via_unrestricted = restricted_alternating(l, m, k, UnrestrictedSource::Fermionic)?;
            let euler = euler_characteristic_bgg(m, l, k)?;
            Ok(vec![
                AuditRecord::from_polynomials("fermionic-vs-alternating", AuditClass::Hard, klm(k, l, m), &fermionic, &alternating),
                AuditRecord::from_polynomials("alternating-sources", AuditClass::Hard, klm(k, l, m), &alternating, &via_unrestricted),
                AuditRecord::from_polynomials("fermionic-vs-bgg", AuditClass::Hard, klm(k, l, m), &fermionic, &euler),
            ])
        })
        .collect();
    collect("routes", records)
}

fn verlinde(opts: &SuiteOptions) -> Result<AuditReport> {
    let max_level = opts.level(4);
    let grid: Vec<(i64, Composition)> = (1..=max_level)
        .flat_map(|k| weight_grid(opts.weight(10), k as usize).into_iter().map(move |m| (k, m)))
        .collect();
    let records = grid
        .par_iter()
        .map(|(k, m)| {
            let report = q1_consistency(m, *k)?;
            Ok(report
                .entries
                .iter()
                .map(|e| {
                    AuditRecord::from_values(
                        "kostka-at-one-vs-verlinde",
                        AuditClass::Hard,
                        klm(*k, e.l, m),
                        json!(e.kostka_at_one.to_string()),
                        json!(e.constant.to_string()),
                    )
                })
                .collect())
        })
        .collect();
    collect("verlinde", records)
}

fn reversal(opts: &SuiteOptions) -> Result<AuditReport> {
    let max_weight = opts.weight(10);
    let mut records: Vec<Result<Vec<AuditRecord>>> = weight_grid(max_weight, max_weight as usize)
        .par_iter()
        .map(|m| {
            let h = m.top_degree_h();
            let top = fusion_top_degree(m)?;
            Ok(vec![AuditRecord::from_values(
                "top-degree",
                AuditClass::Hard,
                json!({"m": m.to_string()}),
                json!(h),
                json!(top),
            )])
        })
        .collect();
    let grid = level_grid(max_weight, opts.level(4));
    records.extend(grid.par_iter().map(|(k, l, m)| {
        let (k, l) = (*k, *l);
        let full = reversed_restricted(l, m, k)?;
        let order = m.top_degree_h().max(0) as usize;
        let truncated = reversed_restricted_truncated(l, m, k, order)?;
        Ok(vec![AuditRecord::from_series(
            "reversal-termwise",
            AuditClass::Hard,
            klm(k, l, m),
            &QSeriesTruncated::from_polynomial(&full, order)?,
            &truncated,
        )])
    }).collect::<Vec<_>>());
    collect("reversal", records)
}

/// Deterministic grid of weights `(i, k, m)` for the closed-form check.
pub fn weyl_grid() -> Vec<AffineWeight> {
    let mut out = Vec::new();
    for k in -1..=6 {
        for i in -6..=9 {
            for m in [-3, 0, 2] {
                out.push(AffineWeight::new(i, k, m));
            }
        }
    }
    out
}

pub fn lemma_w_records(w: AffineWeight, max_n: i64) -> Vec<AuditRecord> {
    let mut out = Vec::new();
    for branch in Branch::ALL {
        for n in 0..=max_n {
            let closed = closed_form_lemma_w(branch, n, w);
            let iterated = branch.word(n as usize).act(w);
            out.push(AuditRecord::from_values(
                "lemma-w",
                AuditClass::Hard,
                json!({"branch": branch, "n": n, "weight": [w.h0, w.level, w.d]}),
                json!([closed.h0, closed.level, closed.d]),
                json!([iterated.h0, iterated.level, iterated.d]),
            ));
        }
    }
    out
}

fn weyl(opts: &SuiteOptions) -> Result<AuditReport> {
    let max_n = opts.order(8) as i64;
    let records = weyl_grid().par_iter().map(|&w| Ok(lemma_w_records(w, max_n))).collect();
    collect("weyl", records)
}

fn bgg(opts: &SuiteOptions) -> Result<AuditReport> {
    let grid = level_grid(opts.weight(10), opts.level(4));
    let mut records: Vec<Result<Vec<AuditRecord>>> = grid
        .par_iter()
        .map(|(k, l, m)| {
            let (k, l) = (*k, *l);
            let euler = euler_characteristic_bgg(m, l, k)?;
            Ok(vec![AuditRecord::from_polynomials(
                "bgg-euler",
                AuditClass::Hard,
                klm(k, l, m),
                &euler,
                &restricted_fermionic(l, m, k),
            )])
        })
        .collect();
    // Single fusion factor: the homology predicate summed with signs is the
    // alternating sum at q = 1.
    let max_n = 3 * opts.weight(10);
    let singles: Vec<(i64, i64, i64)> = (1..=opts.level(4))
        .flat_map(|k| (0..=k).flat_map(move |l| (1..=max_n).map(move |n| (k, l, n))))
        .collect();
    records.extend(singles.par_iter().map(|&(k, l, n)| {
        let m = Composition::single(n as usize);
        let euler: i64 = (0..=n).map(|p| if p % 2 == 0 { 1 } else { -1 } * homology_dim_predicate(p, n, l, k)).sum();
        let alternating = restricted_alternating(l, &m, k, UnrestrictedSource::Fermionic)?;
        Ok(vec![AuditRecord::from_values(
            "homology-predicate",
            AuditClass::Hard,
            json!({"k": k, "l": l, "n": n}),
            json!(euler.to_string()),
            json!(alternating.eval_at_one().to_string()),
        )])
    }).collect::<Vec<_>>());
    collect("bgg", records)
}

/// Instances of the coinvariant model within the variable cap.
pub fn coinvariant_grid(max_weight: i64, max_level: i64) -> Vec<(i64, i64, Composition)> {
    level_grid(max_weight, max_level)
        .into_iter()
        .filter(|(k, l, m)| {
            FunctionalModelSpec::new(*l, m, *k).is_ok_and(|spec| spec.variables <= DEFAULT_VARIABLE_CAP)
        })
        .collect()
}

fn coinvariant(opts: &SuiteOptions) -> Result<AuditReport> {
    let grid = coinvariant_grid(opts.weight(8), opts.level(3));
    let records = grid
        .par_iter()
        .map(|(k, l, m)| {
            let spec = FunctionalModelSpec::new(*l, m, *k)?;
            let oracle = restricted_kostka_oracle(&spec)?;
            Ok(vec![AuditRecord::from_polynomials(
                "coinvariant-oracle",
                AuditClass::Hard,
                klm(*k, *l, m),
                &restricted_fermionic(*l, m, *k),
                &oracle,
            )])
        })
        .collect();
    collect("coinvariant", records)
}

/// `(k, i, j, l)` with `k <= max_level`, `i <= 1`, `j, l <= k+1` and
/// `i + j + l` even, restricted to labels of the minimal model.
pub fn coset_grid(max_level: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for k in 1..=max_level {
        for i in 0..=1 {
            for j in 0..=k {
                for l in 0..=k + 1 {
                    if (i + j + l) % 2 == 0 {
                        out.push((k, i, j, l));
                    }
                }
            }
        }
    }
    out
}

fn coset(opts: &SuiteOptions) -> Result<AuditReport> {
    let order = opts.order(15);
    let records = coset_grid(opts.level(2))
        .par_iter()
        .map(|&(k, i, j, l)| {
            let limit = branching_via_kostka_limit(i, j, k, l, order)?;
            let rc = rocha_caridi(&MinimalModel::new(k + 2, k + 3, j + 1, l + 1)?, order);
            Ok(vec![AuditRecord::from_series(
                "coset-limit",
                AuditClass::Hard,
                json!({"k": k, "i": i, "j": j, "l": l, "order": order, "N": limit.stabilization_n}),
                &limit.series,
                &rc.series,
            )])
        })
        .collect();
    collect("coset", records)
}

fn fermionic_virasoro(opts: &SuiteOptions) -> Result<AuditReport> {
    let order = opts.order(15);
    let grid: Vec<(i64, i64, i64)> = (1..=opts.level(2))
        .flat_map(|k| (0..=k).flat_map(move |j| (0..=k + 1).map(move |l| (k, j, l))))
        .collect();
    let records = grid
        .par_iter()
        .map(|&(k, j, l)| {
            let f = fermionic_character_sum(j, l, k, order)?;
            let rc = rocha_caridi(&MinimalModel::new(k + 2, k + 3, j + 1, l + 1)?, order);
            let params = json!({"k": k, "j": j, "l": l, "order": order});
            Ok(vec![
                AuditRecord::from_series("fermionic-derived", AuditClass::Hard, params.clone(), &f.derived.series, &rc.series),
                AuditRecord::from_series("fermionic-printed", AuditClass::Audit, params, &f.printed.series, &rc.series),
            ])
        })
        .collect();
    collect("fermionic-virasoro", records)
}

fn abf(opts: &SuiteOptions) -> Result<AuditReport> {
    let max_n = opts.weight(10);
    let max_r = opts.level(4);
    let labels: Vec<AbfLabel> = (1..=max_r)
        .flat_map(|r| (-r..=r).flat_map(move |b| (1..=r).flat_map(move |a| (0..=max_n).map(move |n| (r, b, a, n)))))
        .filter_map(|(r, b, a, n)| AbfLabel::new(r, b, a, n).ok())
        .collect();
    let mut records: Vec<Result<Vec<AuditRecord>>> =
        labels.par_iter().map(|lab| Ok(vec![inversion_check(lab)?])).collect();

    let hooks: Vec<(i64, i64, i64, i64)> = (1..=max_r.min(3))
        .flat_map(|k| (0..k).flat_map(move |j| (0..=k).flat_map(move |l| (0..=max_n).map(move |n| (k, j, l, n)))))
        .collect();
    records.extend(hooks.par_iter().map(|&(k, j, l, n)| {
        let appendix = appendix_prop_audit(k, j, l, n)?;
        Ok(vec![grouped_identity_check(k, j, l, n)?, appendix.derived, appendix.printed])
    }).collect::<Vec<_>>());

    let order = opts.order(12);
    let limits: Vec<(i64, i64, i64)> = (2..=max_r)
        .flat_map(|r| (1..r).flat_map(move |b| (1..=r).map(move |a| (r, b, a))))
        .collect();
    records.extend(limits.par_iter().map(|&(r, b, a)| Ok(vec![abf_limit_check(r, b, a, order)?])).collect::<Vec<_>>());
    collect("abf", records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let opts = SuiteOptions { max_weight: Some(5), max_level: Some(2), order: Some(6) };
        for suite in ["routes", "verlinde", "reversal", "weyl", "bgg", "coset", "fermionic-virasoro"] {
            let report = run_suite(suite, &opts).unwrap();
            assert!(report.all_hard_pass(), "{suite}: {:?}", report.records.first());
            assert!(report.checked > 0);
        }
        assert!(matches!(run_suite("nosuch", &opts), Err(Error::Parse(_))));
    }

    #[test]
    fn grids() {
        assert_eq!(weight_grid(2, 2).len(), 3);
        assert!(coset_grid(1).contains(&(1, 0, 0, 0)));
        assert!(coset_grid(1).iter().all(|(_, i, j, l)| (i + j + l) % 2 == 0));
    }
}
