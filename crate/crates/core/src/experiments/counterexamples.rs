//! The two worked triplets on the frame `{a, b, c}` that separate the
//! expansive from the non-expansive (distance, rule) pairs, together with a
//! suite pinning every intermediate value.
//!
//! Conjunctive side: `m1 = ½·m_{a,b} + ½·m_Ω`, `m2 = ½·m_{a,c} + ½·m_Ω`,
//! `m3 = m_{b}`. Combining with `m3` doubles the `L_1` plausibility distance
//! (1/7 → 2/7). Disjunctive side: `m1 = m_{a}`, `m2 = m_{a,c}`, `m3 = m_{b}`;
//! union with `m3` doubles the `L_1` commonality distance (2/7 → 4/7).

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::frame::Frame;
use crate::fusion::{conjunctive, disjunctive};
use crate::mass::MassFunction;
use crate::metrics::{f_distance, NormOrder};
use crate::real::Real;
use crate::transforms::{to_commonality, to_plausibility, SetFamily};

/// Tolerance for the pinned dyadic values.
const TOL: f64 = 1e-15;

pub fn abc_frame() -> Frame {
    Frame::new(["a", "b", "c"]).expect("static frame")
}

/// Triplet whose plausibility distances grow under conjunctive combination.
pub fn conjunctive_counterexample<T: Real>(
) -> (Frame, MassFunction<T>, MassFunction<T>, MassFunction<T>) {
    let f = abc_frame();
    let ab = f.subset_of(&["a", "b"]).expect("static subset");
    let ac = f.subset_of(&["a", "c"]).expect("static subset");
    let b = f.subset_of(&["b"]).expect("static subset");
    let m1 = MassFunction::simple(&f, ab, T::of(0.5)).expect("static mass");
    let m2 = MassFunction::simple(&f, ac, T::of(0.5)).expect("static mass");
    let m3 = MassFunction::categorical(&f, b);
    (f, m1, m2, m3)
}

/// Triplet whose commonality distances grow under disjunctive combination.
pub fn disjunctive_counterexample<T: Real>(
) -> (Frame, MassFunction<T>, MassFunction<T>, MassFunction<T>) {
    let f = abc_frame();
    let a = f.subset_of(&["a"]).expect("static subset");
    let ac = f.subset_of(&["a", "c"]).expect("static subset");
    let b = f.subset_of(&["b"]).expect("static subset");
    (
        f.clone(),
        MassFunction::categorical(&f, a),
        MassFunction::categorical(&f, ac),
        MassFunction::categorical(&f, b),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub expected: f64,
    pub actual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub checks: Vec<CheckLine>,
}

impl CounterexampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            out.push_str(&format!(
                "[{}] {} (expected {}, got {})\n",
                if check.pass { "PASS" } else { "FAIL" },
                check.name,
                check.expected,
                check.actual
            ));
        }
        out
    }

    fn push(&mut self, name: impl Into<String>, expected: f64, actual: f64) {
        self.checks.push(CheckLine {
            name: name.into(),
            expected,
            actual,
            pass: (expected - actual).abs() <= TOL,
        });
    }

    fn push_vector<T: Real>(&mut self, name: &str, expected: &[f64], actual: &[T]) {
        let dev = expected
            .iter()
            .zip(actual)
            .map(|(&e, &a)| (a.to_f64_lossy() - e).abs())
            .fold(0.0f64, f64::max);
        self.checks.push(CheckLine {
            name: format!("{name}: max deviation from pinned values"),
            expected: 0.0,
            actual: dev,
            pass: dev <= TOL,
        });
    }
}

/// Rebuilds both counter-examples and asserts every pinned table value and
/// both inequality reversals.
pub fn counterexample_suite<T: Real>() -> Result<CounterexampleReport> {
    let mut report = CounterexampleReport { checks: Vec::new() };

    // conjunctive side; subset order ∅, {a}, {b}, {a,b}, {c}, {a,c}, {b,c}, Ω
    let (f, m1, m2, m3) = conjunctive_counterexample::<T>();
    let b = f.subset_of(&["b"]).expect("static subset");

    let m13 = conjunctive(&m1, &m3)?;
    let expected_m13: MassFunction<f64> = MassFunction::categorical(&f, b);
    report.push_vector(
        "conjunctive: m1 ⊗∩ m3 = m_{b}",
        expected_m13.values(),
        m13.values(),
    );
    let m23 = conjunctive(&m2, &m3)?;
    report.push_vector(
        "conjunctive: m2 ⊗∩ m3 = ½·m_{b} + ½·m_∅",
        &[0.5, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0],
        m23.values(),
    );

    report.push_vector(
        "pl of m1",
        &[0.0, 1.0, 1.0, 1.0, 0.5, 1.0, 1.0, 1.0],
        to_plausibility(&m1).values(),
    );
    report.push_vector(
        "pl of m2",
        &[0.0, 1.0, 0.5, 1.0, 1.0, 1.0, 1.0, 1.0],
        to_plausibility(&m2).values(),
    );
    report.push_vector(
        "pl of m1 ⊗∩ m3",
        &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0],
        to_plausibility(&m13).values(),
    );
    report.push_vector(
        "pl of m2 ⊗∩ m3",
        &[0.0, 0.0, 0.5, 0.5, 0.0, 0.0, 0.5, 0.5],
        to_plausibility(&m23).values(),
    );

    for k in 1..=3u32 {
        let rho = 7.0f64.powf(1.0 / f64::from(k));
        let before = f_distance(&m1, &m2, SetFamily::Pl, NormOrder::Finite(k))?;
        report.push(
            format!("d_pl,{k} before combination = (2·(1/2)^{k})^(1/{k})/ρ"),
            (2.0 * 0.5f64.powi(k as i32)).powf(1.0 / f64::from(k)) / rho,
            before.to_f64_lossy(),
        );
        let after = f_distance(&m13, &m23, SetFamily::Pl, NormOrder::Finite(k))?;
        report.push(
            format!("d_pl,{k} after combination = (4·(1/2)^{k})^(1/{k})/ρ"),
            (4.0 * 0.5f64.powi(k as i32)).powf(1.0 / f64::from(k)) / rho,
            after.to_f64_lossy(),
        );
        report.checks.push(CheckLine {
            name: format!("d_pl,{k} grows under ⊗∩ with m3"),
            expected: 1.0,
            actual: f64::from(after > before),
            pass: after > before,
        });
    }

    // disjunctive side
    let (f, m1, m2, m3) = disjunctive_counterexample::<T>();
    let ab = f.subset_of(&["a", "b"]).expect("static subset");

    let m13 = disjunctive(&m1, &m3)?;
    let expected_m13: MassFunction<f64> = MassFunction::categorical(&f, ab);
    report.push_vector(
        "disjunctive: m1 ⊗∪ m3 = m_{a,b}",
        expected_m13.values(),
        m13.values(),
    );
    let m23 = disjunctive(&m2, &m3)?;
    let expected_m23: MassFunction<f64> = MassFunction::vacuous(&f);
    report.push_vector(
        "disjunctive: m2 ⊗∪ m3 = m_Ω",
        expected_m23.values(),
        m23.values(),
    );

    report.push_vector(
        "q of m1",
        &[1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        to_commonality(&m1).values(),
    );
    report.push_vector(
        "q of m2",
        &[1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0],
        to_commonality(&m2).values(),
    );
    report.push_vector(
        "q of m1 ⊗∪ m3",
        &[1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        to_commonality(&m13).values(),
    );
    report.push_vector("q of m2 ⊗∪ m3", &[1.0; 8], to_commonality(&m23).values());

    for k in 1..=3u32 {
        let rho = 7.0f64.powf(1.0 / f64::from(k));
        let before = f_distance(&m1, &m2, SetFamily::Q, NormOrder::Finite(k))?;
        report.push(
            format!("d_q,{k} before combination = 2^(1/{k})/ρ"),
            2.0f64.powf(1.0 / f64::from(k)) / rho,
            before.to_f64_lossy(),
        );
        let after = f_distance(&m13, &m23, SetFamily::Q, NormOrder::Finite(k))?;
        report.push(
            format!("d_q,{k} after combination = 4^(1/{k})/ρ"),
            4.0f64.powf(1.0 / f64::from(k)) / rho,
            after.to_f64_lossy(),
        );
        report.checks.push(CheckLine {
            name: format!("d_q,{k} grows under ⊗∪ with m3"),
            expected: 1.0,
            actual: f64::from(after > before),
            pass: after > before,
        });
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_suite_passes() {
        let report = counterexample_suite::<f64>().unwrap();
        assert!(report.passed(), "{}", report.to_text());
        // two combination checks, four table rows and nine distance lines per side
        assert_eq!(report.checks.len(), 2 * (2 + 4 + 9));
    }

    #[test]
    fn reversal_values_at_k1() {
        let report = counterexample_suite::<f64>().unwrap();
        let before = report
            .checks
            .iter()
            .find(|c| c.name.starts_with("d_pl,1 before"))
            .unwrap();
        assert!((before.expected - 1.0 / 7.0).abs() < 1e-15);
        let after = report
            .checks
            .iter()
            .find(|c| c.name.starts_with("d_pl,1 after"))
            .unwrap();
        assert!((after.expected - 2.0 / 7.0).abs() < 1e-15);
        let before = report
            .checks
            .iter()
            .find(|c| c.name.starts_with("d_q,1 before"))
            .unwrap();
        assert!((before.expected - 2.0 / 7.0).abs() < 1e-15);
        let after = report
            .checks
            .iter()
            .find(|c| c.name.starts_with("d_q,1 after"))
            .unwrap();
        assert!((after.expected - 4.0 / 7.0).abs() < 1e-15);
    }
}
