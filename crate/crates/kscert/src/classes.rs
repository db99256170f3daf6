//! Function-class parameters and grid-sampled certificates.
//!
//! The central object is the class `K_s^(k)(lambda, mu, A, B)` of normalized
//! analytic `f` on the unit disk: with
//! `F = (1 - lambda + mu) f + (lambda - mu) z f' + lambda mu z^2 f''`
//! and the symmetrized starlike denominator `g_k` built from a witness
//! `g` starlike of order `(k-1)/k`, membership demands that
//! `Phi = z F' / G_k` is subordinate to the Moebius target
//! `(1 + A z)/(1 + B z)`.  All certificates here sample `Phi` on a
//! [`DiskGrid`] and report margins plus tail caveats; a "pass" is a
//! sampled sub-disk claim, not a proof on the open disk.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disk::{self, DiskGrid, EPSILON_STRICT};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Symmetry order `k` and operator weights `0 <= mu <= lambda <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassParams {
    k: u32,
    lambda: f64,
    mu: f64,
}

impl ClassParams {
    pub fn new(k: u32, lambda: f64, mu: f64) -> Result<Self> {
        if !(1..=16).contains(&k) {
            return Err(Error::invariant(format!("k = {k} is outside 1..=16")));
        }
        if !(0.0..=1.0).contains(&mu) || !(mu..=1.0).contains(&lambda) {
            return Err(Error::invariant(format!(
                "operator weights need 0 <= mu <= lambda <= 1, got lambda = {lambda}, mu = {mu}"
            )));
        }
        Ok(ClassParams { k, lambda, mu })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `1 + (n-1)(lambda - mu + n lambda mu)`: the factor by which the
    /// operator scales the n-th coefficient.
    pub fn coefficient_multiplier(&self, n: usize) -> f64 {
        let nf = n as f64;
        1.0 + (nf - 1.0) * (self.lambda - self.mu + nf * self.lambda * self.mu)
    }

    /// Starlike order `(k-1)/k` required of the witness `g`.
    pub fn witness_order(&self) -> f64 {
        (self.k as f64 - 1.0) / self.k as f64
    }
}

/// Target half-plane/disk `(1 + A z)/(1 + B z)` with `-1 <= B < A <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusTarget {
    a: f64,
    b: f64,
}

impl MoebiusTarget {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(-1.0 <= b && b < a && a <= 1.0) {
            return Err(Error::invariant(format!(
                "moebius target needs -1 <= B < A <= 1, got A = {a}, B = {b}"
            )));
        }
        Ok(MoebiusTarget { a, b })
    }

    /// The right half-plane target `(1 + z)/(1 - z)`.
    pub fn half_plane() -> Self {
        MoebiusTarget { a: 1.0, b: -1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// First expansion coefficient `Q_1 = A - B` (also `|phi'(0)|`).
    pub fn q1(&self) -> f64 {
        self.a - self.b
    }

    /// Second expansion coefficient `Q_2 = -B (A - B)`.
    pub fn q2(&self) -> f64 {
        -self.b * (self.a - self.b)
    }

    /// Series `1 + (A - B) sum (-B)^(n-1) z^n`.
    pub fn series(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        let mut pow = 1.0;
        for _ in 1..=order {
            coeffs.push(Complex64::new((self.a - self.b) * pow, 0.0));
            pow *= -self.b;
        }
        TruncatedSeries::new(coeffs, "moebius-target").expect("nonempty")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One named sub-check of a certificate.
///
/// `margin` is already discounted by `tail_estimate`; the estimate is still
/// reported so a reader can judge how much of the raw margin it consumed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub margin: f64,
    pub witness: [f64; 2],
    pub tail_estimate: f64,
}

/// Grid-sampled certificate: margins, binding witness, and semantics label.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub margin: f64,
    pub witness: [f64; 2],
    pub checks: Vec<CheckResult>,
    pub grid: String,
    pub order: usize,
    pub semantics: String,
}

impl CertificateReport {
    fn from_checks(checks: Vec<CheckResult>, grid: &DiskGrid, order: usize) -> Self {
        let binding = checks
            .iter()
            .min_by(|a, b| a.margin.partial_cmp(&b.margin).expect("finite margins"))
            .expect("at least one check");
        let pass = checks.iter().all(|c| c.margin > EPSILON_STRICT);
        CertificateReport {
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            margin: binding.margin,
            witness: binding.witness,
            checks: checks.clone(),
            grid: grid.label().to_string(),
            order,
            semantics: "sampled sub-disk certificate".to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn check(name: &str, margin: f64, witness: Complex64, tail_estimate: f64) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        margin,
        witness: [witness.re, witness.im],
        tail_estimate,
    }
}

/// Symmetrized product `g_k(z) = prod_{v=0}^{k-1} e^{-2 pi i v / k} g(e^{2 pi i v / k} z)`.
///
/// The result has leading term `z^k`; coefficients below index `k` cancel.
pub fn build_gk(g: &TruncatedSeries, k: u32) -> Result<TruncatedSeries> {
    if k < 1 {
        return Err(Error::invariant("symmetry order k must be at least 1"));
    }
    if !g.is_normalized() {
        return Err(Error::invariant("witness g must satisfy g(0) = 0, g'(0) = 1"));
    }
    let step = 2.0 * std::f64::consts::PI / k as f64;
    let mut product = g.clone();
    for v in 1..k {
        product = product.mul(&g.rotate(step * v as f64));
    }
    Ok(product)
}

/// Cancels `z^(k-1)` from `g_k`, yielding the normalized starlike `G_k`.
pub fn normalize_gk(gk: &TruncatedSeries, k: u32) -> Result<TruncatedSeries> {
    // rotation products cancel low coefficients to rounding; 1e-10 absorbs it
    gk.shift_with_tolerance(-(k as i64 - 1), 1e-10)
}

/// `F = (1 - lambda + mu) f + (lambda - mu) z f' + lambda mu z^2 f''`,
/// computed coefficientwise as `F_n = a_n [1 + (n-1)(lambda - mu + n lambda mu)]`.
pub fn lambda_mu_transform(f: &TruncatedSeries, params: &ClassParams) -> Result<TruncatedSeries> {
    if !f.is_normalized() {
        return Err(Error::invariant("operator input must be normalized"));
    }
    let coeffs = (0..=f.order())
        .map(|n| f.coeff(n) * params.coefficient_multiplier(n))
        .collect();
    TruncatedSeries::new(coeffs, f.tag())
}

/// The membership ratio `Phi = z F'(z) / G_k(z)`, built from the derivative
/// chain `z f' + z^2 f'' (lambda - mu + 2 lambda mu) + lambda mu z^3 f'''`
/// over the symmetrized denominator, after cancelling the common `z` factor.
pub fn class_ratio(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    params: &ClassParams,
) -> Result<TruncatedSeries> {
    if !f.is_normalized() {
        return Err(Error::invariant("f must be normalized"));
    }
    let d1 = f.differentiate();
    let d2 = d1.differentiate();
    let d3 = d2.differentiate();
    let c1 = params.lambda() - params.mu() + 2.0 * params.lambda() * params.mu();
    let c2 = params.lambda() * params.mu();
    // z F' = z f' + z^2 f'' c1 + c2 z^3 f''', then cancel one z
    let num = d1
        .add(&d2.shift(1)?.scale(Complex64::new(c1, 0.0)))
        .add(&d3.shift(2)?.scale(Complex64::new(c2, 0.0)));
    let gk = build_gk(g, params.k())?;
    let den = normalize_gk(&gk, params.k())?.shift_with_tolerance(-1, 1e-10)?;
    let ratio = num.div(&den)?;
    Ok(ratio.with_tag("class-ratio"))
}

/// Certifies `Re p > 0` on the sampled grid; requires `p(0) = 1`.
pub fn certify_positive_real(p: &TruncatedSeries, grid: &DiskGrid) -> Result<CertificateReport> {
    if !p.is_p_candidate() {
        return Err(Error::invariant("positive-real candidate must have p(0) = 1"));
    }
    let stats = disk::range_stats(p, grid);
    let margin = stats.min_real - stats.tail_estimate;
    Ok(CertificateReport::from_checks(
        vec![check("positive-real", margin, stats.argmin_point, stats.tail_estimate)],
        grid,
        p.order(),
    ))
}

/// Certifies `Re (z g'/g) > alpha` on the sampled grid.
pub fn certify_starlike_order(
    g: &TruncatedSeries,
    alpha: f64,
    grid: &DiskGrid,
) -> Result<CertificateReport> {
    if !g.is_normalized() {
        return Err(Error::invariant("starlike candidate must be normalized"));
    }
    // z g'/g = g' / (g/z)
    let ratio = g.differentiate().div(&g.shift(-1)?)?;
    let stats = disk::range_stats(&ratio, grid);
    let margin = stats.min_real - alpha - stats.tail_estimate;
    Ok(CertificateReport::from_checks(
        vec![check("starlike-order", margin, stats.argmin_point, stats.tail_estimate)],
        grid,
        ratio.order(),
    ))
}

/// Certifies `Phi` subordinate to `(1 + A z)/(1 + B z)` via the criterion
/// `|Phi - 1| < |A - B Phi|` on the sampled grid; requires `Phi(0) = 1`.
///
/// The margin is `-(max gap + tail allowance)` where
/// `gap = |Phi - 1| - |A - B Phi|` and the allowance scales the series tail
/// by `1 + |B|`, the Lipschitz factor of the gap in `Phi`.
pub fn certify_subordinate_moebius(
    phi: &TruncatedSeries,
    target: &MoebiusTarget,
    grid: &DiskGrid,
) -> Result<CertificateReport> {
    if !phi.is_p_candidate() {
        return Err(Error::invariant("subordination candidate must have Phi(0) = 1"));
    }
    let a = Complex64::new(target.a(), 0.0);
    let b = Complex64::new(target.b(), 0.0);
    let mut max_gap = f64::NEG_INFINITY;
    let mut witness = Complex64::new(0.0, 0.0);
    for z in grid.points() {
        let v = disk::eval_horner(phi, z);
        let gap = (v - 1.0).norm() - (a - b * v).norm();
        if gap > max_gap {
            max_gap = gap;
            witness = z;
        }
    }
    let allowance = (1.0 + target.b().abs()) * disk::tail_bound(phi, grid.r_max());
    let margin = -(max_gap + allowance);
    Ok(CertificateReport::from_checks(
        vec![check("moebius-subordination", margin, witness, allowance)],
        grid,
        phi.order(),
    ))
}

/// Certifies that `Phi` maps the sampled grid into a caller-described region.
///
/// `region_margin` must return (approximately) the signed distance of a point
/// to the region boundary, positive inside; the series tail is subtracted so
/// the predicate should be 1-Lipschitz for the caveat to be meaningful.
/// Requires `Phi(0) = phi0`.
pub fn certify_target_region(
    phi: &TruncatedSeries,
    region_margin: &dyn Fn(Complex64) -> f64,
    phi0: Complex64,
    grid: &DiskGrid,
) -> Result<CertificateReport> {
    if (phi.coeff(0) - phi0).norm() > 1e-10 {
        return Err(Error::invariant("candidate must match the target's center value"));
    }
    let mut min_margin = f64::INFINITY;
    let mut witness = Complex64::new(0.0, 0.0);
    for z in grid.points() {
        let m = region_margin(disk::eval_horner(phi, z));
        if m < min_margin {
            min_margin = m;
            witness = z;
        }
    }
    let tail = disk::tail_bound(phi, grid.r_max());
    let margin = min_margin - tail;
    Ok(CertificateReport::from_checks(
        vec![check("target-region", margin, witness, tail)],
        grid,
        phi.order(),
    ))
}

/// Full membership certificate: the witness `g` must be starlike of order
/// `(k-1)/k` and the class ratio subordinate to the Moebius target.
pub fn certify_membership(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    params: &ClassParams,
    target: &MoebiusTarget,
    grid: &DiskGrid,
) -> Result<CertificateReport> {
    let starlike = certify_starlike_order(g, params.witness_order(), grid)?;
    let phi = class_ratio(f, g, params)?;
    let subordination = certify_subordinate_moebius(&phi, target, grid)?;
    let mut checks = Vec::new();
    for c in starlike.checks {
        checks.push(CheckResult {
            name: "witness-starlike-order".to_string(),
            ..c
        });
    }
    checks.extend(subordination.checks);
    Ok(CertificateReport::from_checks(checks, grid, phi.order()))
}

/// Certifies `Re (z f' / gstar) > 0` for a starlike witness `gstar`.
pub fn certify_close_to_convex(
    f: &TruncatedSeries,
    gstar: &TruncatedSeries,
    grid: &DiskGrid,
) -> Result<CertificateReport> {
    if !f.is_normalized() || !gstar.is_normalized() {
        return Err(Error::invariant("close-to-convex check needs normalized f and gstar"));
    }
    // z f' / gstar = f' / (gstar / z)
    let ratio = f.differentiate().div(&gstar.shift(-1)?)?;
    let stats = disk::range_stats(&ratio, grid);
    let margin = stats.min_real - stats.tail_estimate;
    Ok(CertificateReport::from_checks(
        vec![check("close-to-convex", margin, stats.argmin_point, stats.tail_estimate)],
        grid,
        ratio.order(),
    ))
}
