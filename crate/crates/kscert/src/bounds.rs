//! Coefficient bounds, Fekete-Szego functionals, and the sufficient
//! coefficient-sum criterion.
//!
//! Everything here is coefficientwise.  `fekete_szego_bound` evaluates a
//! closed-form three-term estimate whose middle term depends on the witness
//! coefficient `d_1`; the report carries a `printed_formula_caveat` flag and
//! the randomized property suite cross-checks it empirically rather than
//! trusting it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classes::{build_gk, normalize_gk, ClassParams, MoebiusTarget};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Expansion data of the target: `phi = 1 + Q_1 w + Q_2 w^2 + ...` with
/// `Q_1 > 0`; `phi_prime0_abs` is `|phi'(0)| = Q_1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiExpansion {
    q1: f64,
    q2: f64,
}

impl PhiExpansion {
    pub fn new(q1: f64, q2: f64) -> Result<Self> {
        if !(q1 > 0.0) {
            return Err(Error::invariant(format!("Q_1 must be positive, got {q1}")));
        }
        Ok(PhiExpansion { q1, q2 })
    }

    /// For `(1 + A z)/(1 + B z)`: `Q_1 = A - B`, `Q_2 = -B (A - B)`.
    pub fn from_target(target: &MoebiusTarget) -> Self {
        PhiExpansion {
            q1: target.q1(),
            q2: target.q2(),
        }
    }

    pub fn q1(&self) -> f64 {
        self.q1
    }

    pub fn q2(&self) -> f64 {
        self.q2
    }

    pub fn phi_prime0_abs(&self) -> f64 {
        self.q1
    }
}

/// Per-coefficient growth bound
/// `|a_n| <= (1 + |phi'(0)| (n-1)/2) / (1 + (n-1)(lambda - mu + n lambda mu))`.
pub fn coefficient_bound(params: &ClassParams, phi: &PhiExpansion, n: usize) -> f64 {
    (1.0 + phi.phi_prime0_abs() * (n as f64 - 1.0) / 2.0) / params.coefficient_multiplier(n)
}

/// One row of a coefficient-bound verification table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: usize,
    pub abs_a_n: f64,
    pub bound: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoefficientBoundReport {
    pub rows: Vec<BoundRow>,
    pub pass: bool,
}

/// Checks `|a_n| <= bound` for `2 <= n <= n_max`; passes when every slack
/// is at least `-1e-9`.
pub fn verify_coefficient_bounds(
    f: &TruncatedSeries,
    params: &ClassParams,
    phi: &PhiExpansion,
    n_max: usize,
) -> Result<CoefficientBoundReport> {
    if !f.is_normalized() {
        return Err(Error::invariant("coefficient bounds apply to normalized members"));
    }
    if n_max > f.order() {
        return Err(Error::invariant(format!(
            "n_max = {n_max} exceeds the series order {}",
            f.order()
        )));
    }
    let mut rows = Vec::with_capacity(n_max.saturating_sub(1));
    for n in 2..=n_max {
        let abs_a_n = f.coeff(n).norm();
        let bound = coefficient_bound(params, phi, n);
        rows.push(BoundRow {
            n,
            abs_a_n,
            bound,
            slack: bound - abs_a_n,
        });
    }
    let pass = rows.iter().all(|r| r.slack >= -1e-9);
    Ok(CoefficientBoundReport { rows, pass })
}

/// Sharp weighted bound `|c_2 - w c_1^2| <= 2 max{1, |2w - 1|}` for
/// positive-real-part functions.
pub fn caratheodory_fs_bound(weight: Complex64) -> f64 {
    2.0 * (2.0 * weight - 1.0).norm().max(1.0)
}

/// Sharp weighted bound `|b_3 - w b_2^2| <= max{1, |3 - 4w|}` for starlike
/// functions.
pub fn starlike_fs_bound(weight: f64) -> f64 {
    (3.0 - 4.0 * weight).abs().max(1.0)
}

/// `|a_3 - delta a_2^2|` for a normalized series of order >= 3.
pub fn fekete_szego_functional(f: &TruncatedSeries, delta: Complex64) -> Result<f64> {
    if f.order() < 3 {
        return Err(Error::invariant("functional needs coefficients up to a_3"));
    }
    let a2 = f.coeff(2);
    let a3 = f.coeff(3);
    Ok((a3 - delta * a2 * a2).norm())
}

/// `|c_2 - w c_1^2|` for a positive-real-part candidate of order >= 2.
pub fn caratheodory_functional(p: &TruncatedSeries, weight: Complex64) -> Result<f64> {
    if p.order() < 2 {
        return Err(Error::invariant("functional needs coefficients up to c_2"));
    }
    let c1 = p.coeff(1);
    let c2 = p.coeff(2);
    Ok((c2 - weight * c1 * c1).norm())
}

/// Weight and witness coefficient for the closed-form three-term estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsBoundInputs {
    pub delta: Complex64,
    /// First coefficient of the positive-real witness; `|d_1| <= 2`.
    pub d1: Complex64,
}

impl FsBoundInputs {
    pub fn new(delta: Complex64, d1: Complex64) -> Result<Self> {
        if d1.norm() > 2.0 + 1e-12 {
            return Err(Error::invariant("witness coefficient must satisfy |d_1| <= 2"));
        }
        Ok(FsBoundInputs { delta, d1 })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FsBoundReport {
    pub value: f64,
    pub terms: [f64; 3],
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    /// The estimate is evaluated exactly as printed in its source form,
    /// including the anomalous `d_1` dependence of `beta`; treat it as a
    /// reference value, not a verified bound.
    pub printed_formula_caveat: bool,
}

/// Closed-form three-term estimate for `|a_3 - delta a_2^2|`:
///
/// ```text
/// max{1, |3 - 4 alpha|} / (3 m_3)
///   + Q_1 max{1, |2 beta - 1|} / (3 m_3)
///   + 2 Q_1 (1/(3 m_3) - delta/(2 m_2^2))
/// ```
///
/// with `m_2, m_3` the coefficient multipliers,
/// `alpha = 3 delta m_3 / (4 m_2)` and
/// `beta = (1 - Q_2/Q_1 - 3 delta Q_2^2 d_1^2 m_3 / (4 m_2^2)) / 2`.
/// The last term is real-valued only for real weights; this evaluator takes
/// its real part, which coincides with the printed value in that case.
pub fn fekete_szego_bound(
    params: &ClassParams,
    phi: &PhiExpansion,
    inputs: &FsBoundInputs,
) -> Result<FsBoundReport> {
    let m2 = params.coefficient_multiplier(2);
    let m3 = params.coefficient_multiplier(3);
    let d3 = 3.0 * m3;
    let delta = inputs.delta;
    let d1 = inputs.d1;
    let alpha = delta * (3.0 * m3 / (4.0 * m2));
    let beta = (Complex64::new(1.0 - phi.q2() / phi.q1(), 0.0)
        - delta * d1 * d1 * (3.0 * phi.q2() * phi.q2() * m3 / (4.0 * m2 * m2)))
        * 0.5;
    let term1 = (3.0 - 4.0 * alpha).norm().max(1.0) / d3;
    let term2 = phi.q1() * (2.0 * beta - 1.0).norm().max(1.0) / d3;
    let bracket = Complex64::new(1.0 / d3, 0.0) - delta / (2.0 * m2 * m2);
    let term3 = 2.0 * phi.q1() * bracket.re;
    Ok(FsBoundReport {
        value: term1 + term2 + term3,
        terms: [term1, term2, term3],
        alpha: [alpha.re, alpha.im],
        beta: [beta.re, beta.im],
        printed_formula_caveat: true,
    })
}

/// Closed forms for the first two nontrivial coefficients of a member built
/// from denominator coefficients `B_2, B_3` and witness coefficients `d_1, d_2`:
///
/// ```text
/// a_2 = (2 B_2 + Q_1 d_1) / (4 m_2)
/// a_3 = (2 B_2 Q_1 d_1 + 2 Q_1 (d_2 - d_1^2/2) + Q_2 d_1^2 + 4 B_3) / (12 m_3)
/// ```
#[allow(clippy::too_many_arguments)]
pub fn a2_a3_from_expansion(
    b2: Complex64,
    b3: Complex64,
    phi: &PhiExpansion,
    d1: Complex64,
    d2: Complex64,
    params: &ClassParams,
) -> (Complex64, Complex64) {
    let m2 = params.coefficient_multiplier(2);
    let m3 = params.coefficient_multiplier(3);
    let a2 = (2.0 * b2 + phi.q1() * d1) / (4.0 * m2);
    let a3 = (2.0 * b2 * phi.q1() * d1 + 2.0 * phi.q1() * (d2 - d1 * d1 * 0.5)
        + phi.q2() * d1 * d1
        + 4.0 * b3)
        / (12.0 * m3);
    (a2, a3)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SufficientConditionReport {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub satisfied: bool,
    /// Last retained summand of the member sum: a convergence caveat, large
    /// values mean the truncated verdict is unreliable.
    pub member_last_term: f64,
    /// Last retained summand of the denominator sum.
    pub witness_last_term: f64,
    pub order: usize,
}

/// Coefficient-sum criterion
/// `(1+|B|) sum n m_n |a_n| + (1+|A|) sum |B_n| <= A - B` over retained
/// indices `2..=N`; satisfying it guarantees membership.
pub fn sufficient_condition(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    params: &ClassParams,
    target: &MoebiusTarget,
) -> Result<SufficientConditionReport> {
    if !f.is_normalized() {
        return Err(Error::invariant("criterion applies to normalized members"));
    }
    let big_g = normalize_gk(&build_gk(g, params.k())?, params.k())?;
    let order = f.order().min(big_g.order());
    let mut member_sum = 0.0;
    let mut witness_sum = 0.0;
    let mut member_last = 0.0;
    let mut witness_last = 0.0;
    for n in 2..=order {
        member_last = n as f64 * params.coefficient_multiplier(n) * f.coeff(n).norm();
        witness_last = big_g.coeff(n).norm();
        member_sum += member_last;
        witness_sum += witness_last;
    }
    let lhs = (1.0 + target.b().abs()) * member_sum + (1.0 + target.a().abs()) * witness_sum;
    let rhs = target.q1();
    Ok(SufficientConditionReport {
        lhs,
        rhs,
        slack: rhs - lhs,
        satisfied: lhs <= rhs,
        member_last_term: (1.0 + target.b().abs()) * member_last,
        witness_last_term: (1.0 + target.a().abs()) * witness_last,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthesis::catalog;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn expansion_from_target_matches_series() {
        let t = MoebiusTarget::new(0.7, -0.4).unwrap();
        let phi = PhiExpansion::from_target(&t);
        let s = t.series(4);
        assert!((s.coeff(1) - re(phi.q1())).norm() < 1e-15);
        assert!((s.coeff(2) - re(phi.q2())).norm() < 1e-15);
        assert!(PhiExpansion::new(0.0, 1.0).is_err(), "Q_1 must be positive");
    }

    #[test]
    fn coefficient_bound_special_cases() {
        let halfplane = PhiExpansion::new(2.0, 2.0).unwrap();
        // lambda = mu = 0: the classical bound n
        let p0 = ClassParams::new(1, 0.0, 0.0).unwrap();
        for n in 2..=8 {
            assert!((coefficient_bound(&p0, &halfplane, n) - n as f64).abs() < 1e-12);
        }
        // lambda = 1, mu = 0, n = 3: (1 + 2)/3 = 1
        let p1 = ClassParams::new(1, 1.0, 0.0).unwrap();
        assert!((coefficient_bound(&p1, &halfplane, 3) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn koebe_saturates_its_bounds() {
        let f = catalog("koebe", 16).unwrap();
        let params = ClassParams::new(1, 0.0, 0.0).unwrap();
        let phi = PhiExpansion::new(2.0, 2.0).unwrap();
        let report = verify_coefficient_bounds(&f, &params, &phi, 16).unwrap();
        assert!(report.pass);
        for row in &report.rows {
            assert!(row.slack.abs() <= 1e-9, "koebe is the extremal member");
        }
    }

    #[test]
    fn bound_report_serialization() {
        let f = catalog("koebe", 4).unwrap();
        let params = ClassParams::new(1, 0.0, 0.0).unwrap();
        let phi = PhiExpansion::new(2.0, 2.0).unwrap();
        let report = verify_coefficient_bounds(&f, &params, &phi, 4).unwrap();
        let v: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(v["rows"][0]["n"], 2);
        assert!(v["rows"][0]["abs_a_n"].is_f64());
        assert!(v["rows"][0]["bound"].is_f64());
        assert!(v["rows"][0]["slack"].is_f64());
    }

    #[test]
    fn weighted_bound_values() {
        assert_eq!(caratheodory_fs_bound(re(0.0)), 2.0);
        assert_eq!(caratheodory_fs_bound(re(0.5)), 2.0);
        assert_eq!(caratheodory_fs_bound(re(1.0)), 2.0);
        assert_eq!(caratheodory_fs_bound(re(2.0)), 6.0);
        assert_eq!(starlike_fs_bound(0.75), 1.0);
        assert_eq!(starlike_fs_bound(0.0), 3.0);
        assert_eq!(starlike_fs_bound(1.0), 1.0);
    }

    #[test]
    fn functional_values_on_catalog() {
        let koebe = catalog("koebe", 4).unwrap();
        assert!((fekete_szego_functional(&koebe, re(0.0)).unwrap() - 3.0).abs() < 1e-12);

        let odd = catalog("koebe_sqrt2", 4).unwrap();
        assert!((fekete_szego_functional(&odd, re(0.75)).unwrap() - 1.0).abs() < 1e-12);

        let halfplane = catalog("halfplane", 4).unwrap();
        assert!((caratheodory_functional(&halfplane, re(0.0)).unwrap() - 2.0).abs() < 1e-12);

        let even = catalog("even_halfplane", 4).unwrap();
        assert!((caratheodory_functional(&even, re(0.5)).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn three_term_estimate_at_zero_weight() {
        let params = ClassParams::new(2, 0.0, 0.0).unwrap();
        let phi = PhiExpansion::new(2.0, 2.0).unwrap();
        let inputs = FsBoundInputs::new(re(0.0), re(2.0)).unwrap();
        let report = fekete_szego_bound(&params, &phi, &inputs).unwrap();
        assert!((report.terms[0] - 1.0).abs() < 1e-12);
        assert!((report.terms[1] - 2.0 / 3.0).abs() < 1e-12);
        assert!((report.terms[2] - 4.0 / 3.0).abs() < 1e-12);
        assert!((report.value - 3.0).abs() < 1e-12);
        assert!(report.printed_formula_caveat);
    }

    #[test]
    fn closed_form_a2_a3_on_koebe_data() {
        // B_2 = 2, B_3 = 3, d_1 = d_2 = 2 with the half-plane target: a_2 = 2, a_3 = 3
        let params = ClassParams::new(1, 0.0, 0.0).unwrap();
        let phi = PhiExpansion::new(2.0, 2.0).unwrap();
        let (a2, a3) = a2_a3_from_expansion(re(2.0), re(3.0), &phi, re(2.0), re(2.0), &params);
        assert!((a2 - re(2.0)).norm() < 1e-12);
        assert!((a3 - re(3.0)).norm() < 1e-12);
    }

    #[test]
    fn inputs_reject_oversized_witness_coefficient() {
        assert!(FsBoundInputs::new(re(0.0), re(2.4)).is_err());
    }

    #[test]
    fn sum_criterion_threshold() {
        let params = ClassParams::new(1, 0.0, 0.0).unwrap();
        let target = MoebiusTarget::half_plane();
        let g = catalog("identity", 8).unwrap();

        // f = z + 0.4 z^2: lhs = 2 * 2 * 0.4 = 1.6 <= 2
        let f = TruncatedSeries::from_real(&[0.0, 1.0, 0.4], "").unwrap().resized(8);
        let report = sufficient_condition(&f, &g, &params, &target).unwrap();
        assert!(report.satisfied);
        assert!((report.lhs - 1.6).abs() < 1e-12);
        assert!((report.slack - 0.4).abs() < 1e-12);

        // the threshold for z + a_2 z^2 is |a_2| = 1/2
        let f = TruncatedSeries::from_real(&[0.0, 1.0, 0.6], "").unwrap().resized(8);
        assert!(!sufficient_condition(&f, &g, &params, &target).unwrap().satisfied);
    }
}
