//! Residual records comparing two routes to the same quantity.
//!
//! `Hard` records must have a zero residual. `Audit` records compare against a
//! formula known to disagree in places; their residuals are data.

use serde::Serialize;
use serde_json::Value;

use crate::qexact::{QPolynomial, QSeriesTruncated};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditClass {
    Hard,
    Audit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Discrepancy,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRecord {
    pub check: String,
    pub class: AuditClass,
    pub params: Value,
    pub route_a: Value,
    pub route_b: Value,
    pub residual_polynomial: Value,
    pub verdict: Verdict,
}

fn verdict(class: AuditClass, zero: bool) -> Verdict {
    match (zero, class) {
        (true, _) => Verdict::Pass,
        (false, AuditClass::Hard) => Verdict::Fail,
        (false, AuditClass::Audit) => Verdict::Discrepancy,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize to JSON")
}

impl AuditRecord {
    /// Residual `route_a - route_b`.
    pub fn from_polynomials(
        check: &str,
        class: AuditClass,
        params: Value,
        route_a: &QPolynomial,
        route_b: &QPolynomial,
    ) -> Self {
        let residual = route_a - route_b;
        AuditRecord {
            check: check.to_string(),
            class,
            params,
            route_a: to_value(route_a),
            route_b: to_value(route_b),
            residual_polynomial: to_value(&residual),
            verdict: verdict(class, residual.is_zero()),
        }
    }

    /// Residual over the common window of two truncated series. Offsets that
    /// differ by a non-integer leave the residual `null` and fail.
    pub fn from_series(
        check: &str,
        class: AuditClass,
        params: Value,
        route_a: &QSeriesTruncated,
        route_b: &QSeriesTruncated,
    ) -> Self {
        let residual = route_a.aligned_difference(route_b);
        let zero = residual.as_ref().is_some_and(QSeriesTruncated::is_zero);
        AuditRecord {
            check: check.to_string(),
            class,
            params,
            route_a: to_value(route_a),
            route_b: to_value(route_b),
            residual_polynomial: residual.as_ref().map_or(Value::Null, to_value),
            verdict: verdict(class, zero),
        }
    }

    /// Plain equality of two JSON values; the residual is always `null`.
    pub fn from_values(check: &str, class: AuditClass, params: Value, route_a: Value, route_b: Value) -> Self {
        let zero = route_a == route_b;
        AuditRecord {
            check: check.to_string(),
            class,
            params,
            route_a,
            route_b,
            residual_polynomial: Value::Null,
            verdict: verdict(class, zero),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn is_hard_failure(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub suite: String,
    pub checked: usize,
    pub hard_failures: usize,
    pub discrepancies: usize,
    /// Every hard failure and every audit record; passing hard checks are
    /// only counted.
    pub records: Vec<AuditRecord>,
}

impl AuditReport {
    pub fn new(suite: &str) -> Self {
        AuditReport {
            suite: suite.to_string(),
            checked: 0,
            hard_failures: 0,
            discrepancies: 0,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, record: AuditRecord) {
        self.checked += 1;
        match record.verdict {
            Verdict::Fail => self.hard_failures += 1,
            Verdict::Discrepancy => self.discrepancies += 1,
            Verdict::Pass => {}
        }
        if record.class == AuditClass::Audit || record.verdict == Verdict::Fail {
            self.records.push(record);
        }
    }

    pub fn extend(&mut self, other: AuditReport) {
        self.checked += other.checked;
        self.hard_failures += other.hard_failures;
        self.discrepancies += other.discrepancies;
        self.records.extend(other.records);
    }

    pub fn all_hard_pass(&self) -> bool {
        self.hard_failures == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn verdicts() {
        let q = QPolynomial::q_pow(1);
        let r = AuditRecord::from_polynomials("x", AuditClass::Hard, json!({}), &q, &q);
        assert!(r.passed());
        let r = AuditRecord::from_polynomials("x", AuditClass::Hard, json!({}), &q, &QPolynomial::one());
        assert!(r.is_hard_failure());
        let r = AuditRecord::from_polynomials("x", AuditClass::Audit, json!({"k": 1}), &q, &QPolynomial::one());
        assert_eq!(r.verdict, Verdict::Discrepancy);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"verdict\":\"discrepancy\""));
        assert!(text.contains("\"residual_polynomial\""));

        let mut report = AuditReport::new("s");
        report.push(AuditRecord::from_polynomials("x", AuditClass::Hard, json!({}), &q, &q));
        report.push(r);
        assert_eq!((report.checked, report.discrepancies, report.records.len()), (2, 1, 1));
        assert!(report.all_hard_pass());
    }
}
