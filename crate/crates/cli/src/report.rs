//! Machine-readable per-run reports and the exact ratio checks behind them.

use centerkit::scalar::{approx_sqrt, format_rational, parse_rational, within_one_plus_sqrt3};
use centerkit::Rational;
use serde::{Deserialize, Serialize};

pub const STATUS_OK: &str = "ok";
pub const STATUS_UNSOLVABLE: &str = "unsolvable";
pub const STATUS_REFUSED: &str = "refused";
pub const STATUS_PARSE_ERROR: &str = "parse_error";
pub const STATUS_INPUT_ERROR: &str = "input_error";
pub const STATUS_INTERNAL_ERROR: &str = "internal_error";

/// One (instance, algorithm) run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub instance: String,
    pub algorithm: String,
    pub status: String,
    /// Exact squared radius as `"n"` or `"n/d"`.
    pub sq_radius: Option<String>,
    pub radius_approx: Option<String>,
    pub centers: Vec<usize>,
    pub covered: usize,
    pub oracle_sq: Option<String>,
    /// `None` when no oracle value is available.
    pub ratio_bound_satisfied: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn failed(instance: &str, algorithm: &str, status: &str, detail: String) -> Self {
        RunReport {
            instance: instance.to_string(),
            algorithm: algorithm.to_string(),
            status: status.to_string(),
            sq_radius: None,
            radius_approx: None,
            centers: Vec::new(),
            covered: 0,
            oracle_sq: None,
            ratio_bound_satisfied: None,
            detail: Some(detail),
            wall_time_ms: 0,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// The line with `wall_time_ms` zeroed, for determinism comparisons.
    pub fn timeless_json_line(&self) -> String {
        RunReport {
            wall_time_ms: 0,
            ..self.clone()
        }
        .to_json_line()
    }

    /// Counts against the exit code: a violated bound or an internal error.
    pub fn is_failure(&self) -> bool {
        self.ratio_bound_satisfied == Some(false) || self.status == STATUS_INTERNAL_ERROR
    }

    /// `sqrt(sq_radius / oracle_sq)` for display, when both are present and
    /// the oracle value is positive.
    pub fn observed_ratio(&self) -> Option<f64> {
        let sq = parse_rational(self.sq_radius.as_deref()?).ok()?;
        let opt = parse_rational(self.oracle_sq.as_deref()?).ok()?;
        if opt == Rational::from_integer(0.into()) {
            return Some(if sq == opt { 1.0 } else { f64::INFINITY });
        }
        let ratio = sq / opt;
        approx_sqrt(&ratio).parse().ok()
    }
}

/// Guaranteed approximation factor of each algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// `radius <= c * OPT`, i.e. `sq <= c^2 * OPT_sq`; `c` given as `num/den`.
    Factor(i64, i64),
    /// `radius <= (1 + sqrt 3) * OPT`.
    OnePlusSqrt3,
}

impl Bound {
    pub fn holds(self, sq: &Rational, opt_sq: &Rational) -> bool {
        match self {
            Bound::Factor(n, d) => {
                let c = Rational::new(n.into(), d.into());
                *sq <= &c * &c * opt_sq
            }
            Bound::OnePlusSqrt3 => within_one_plus_sqrt3(sq, opt_sq),
        }
    }
}

pub fn fmt(value: &Rational) -> String {
    format_rational(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn bounds_are_exact() {
        assert!(Bound::Factor(5, 2).holds(&Rational::new(25.into(), 4.into()), &q(1)));
        assert!(!Bound::Factor(2, 1).holds(&Rational::new(17.into(), 4.into()), &q(1)));
        // (1 + sqrt 3)^2 = 4 + 2 sqrt 3 ~ 7.464
        assert!(Bound::OnePlusSqrt3.holds(&Rational::new(7464.into(), 1000.into()), &q(1)));
        assert!(!Bound::OnePlusSqrt3.holds(&Rational::new(7465.into(), 1000.into()), &q(1)));
    }

    #[test]
    fn report_round_trips() {
        let r = RunReport {
            instance: "line-000".into(),
            algorithm: "line25".into(),
            status: STATUS_OK.into(),
            sq_radius: Some("9/4".into()),
            radius_approx: Some("1.5".into()),
            centers: vec![1],
            covered: 4,
            oracle_sq: Some("9/4".into()),
            ratio_bound_satisfied: Some(true),
            detail: None,
            wall_time_ms: 3,
        };
        let line = r.to_json_line();
        let back: RunReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json_line(), line);
        assert_eq!(r.observed_ratio(), Some(1.0));
    }
}
