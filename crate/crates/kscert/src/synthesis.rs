//! Construction of members, transforms, and the function catalog.
//!
//! `solve_coefficients` runs the membership recurrence forward: given a
//! positive-real-part factor `p` and a starlike witness `g` it produces the
//! unique normalized `f` whose class ratio reproduces `p`.  The module also
//! hosts the Bernardi integral transform, the delta/nu decomposition of the
//! second-order operator, and seeded random generators used by the property
//! suite.

use num_complex::Complex64;
use rand::Rng;

use crate::classes::{build_gk, lambda_mu_transform, normalize_gk, ClassParams, MoebiusTarget};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

/// Closed-form reference functions, reproducible by name from the CLI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatalogFunction {
    /// `z/(1-z)^2`
    Koebe,
    /// `z/(1-z^2)`
    KoebeSqrt2,
    /// `(1+z)/(1-z)`
    HalfPlane,
    /// `(1+z^2)/(1-z^2)`
    EvenHalfPlane,
    /// `z - z^2/3`, starlike of order 1/2
    StarlikeHalfExample,
    /// `z/(1-z)^(2(1-alpha))`, starlike of order `alpha`
    GenKoebe { alpha: f64 },
    /// `(1+Az)/(1+Bz)`
    Moebius { a: f64, b: f64 },
    /// `z`
    Identity,
}

impl CatalogFunction {
    /// Parses `name` or `name(arg, ...)`, e.g. `gen_koebe(0.5)` or `moebius(1,-1)`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, args) = match text.find('(') {
            Some(open) => {
                let close = text
                    .rfind(')')
                    .ok_or_else(|| Error::invariant(format!("unbalanced parentheses in {text:?}")))?;
                let args: Vec<f64> = text[open + 1..close]
                    .split(',')
                    .map(|a| {
                        a.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::invariant(format!("bad catalog argument in {text:?}")))
                    })
                    .collect::<Result<_>>()?;
                (&text[..open], args)
            }
            None => (text, Vec::new()),
        };
        let arity = |want: usize| {
            if args.len() == want {
                Ok(())
            } else {
                Err(Error::invariant(format!(
                    "catalog entry {name} takes {want} argument(s), got {}",
                    args.len()
                )))
            }
        };
        match name {
            "koebe" => arity(0).map(|_| CatalogFunction::Koebe),
            "koebe_sqrt2" => arity(0).map(|_| CatalogFunction::KoebeSqrt2),
            "halfplane" => arity(0).map(|_| CatalogFunction::HalfPlane),
            "even_halfplane" => arity(0).map(|_| CatalogFunction::EvenHalfPlane),
            "starlike_half_example" => arity(0).map(|_| CatalogFunction::StarlikeHalfExample),
            "gen_koebe" => arity(1).map(|_| CatalogFunction::GenKoebe { alpha: args[0] }),
            "moebius" => arity(2).map(|_| CatalogFunction::Moebius { a: args[0], b: args[1] }),
            "identity" => arity(0).map(|_| CatalogFunction::Identity),
            _ => Err(Error::UnknownCatalogName {
                name: name.to_string(),
            }),
        }
    }

    /// Builds the truncated series at the requested order.
    pub fn series(&self, order: usize) -> Result<TruncatedSeries> {
        let s = match *self {
            CatalogFunction::Koebe => TruncatedSeries::binomial(2.0, order.saturating_sub(1))
                .shift(1)?
                .with_tag("koebe"),
            CatalogFunction::KoebeSqrt2 => {
                let coeffs: Vec<f64> = (0..=order)
                    .map(|n| if n % 2 == 1 { 1.0 } else { 0.0 })
                    .collect();
                TruncatedSeries::from_real(&coeffs, "koebe_sqrt2")?
            }
            CatalogFunction::HalfPlane => {
                let mut coeffs = vec![2.0; order + 1];
                coeffs[0] = 1.0;
                TruncatedSeries::from_real(&coeffs, "halfplane")?
            }
            CatalogFunction::EvenHalfPlane => {
                let coeffs: Vec<f64> = (0..=order)
                    .map(|n| {
                        if n == 0 {
                            1.0
                        } else if n % 2 == 0 {
                            2.0
                        } else {
                            0.0
                        }
                    })
                    .collect();
                TruncatedSeries::from_real(&coeffs, "even_halfplane")?
            }
            CatalogFunction::StarlikeHalfExample => {
                TruncatedSeries::from_real(&[0.0, 1.0, -1.0 / 3.0], "starlike_half_example")?
                    .resized(order.max(2))
            }
            CatalogFunction::GenKoebe { alpha } => {
                if !(0.0..1.0).contains(&alpha) {
                    return Err(Error::invariant(format!(
                        "gen_koebe order must lie in [0, 1), got {alpha}"
                    )));
                }
                TruncatedSeries::binomial(2.0 * (1.0 - alpha), order.saturating_sub(1))
                    .shift(1)?
                    .with_tag("gen_koebe")
            }
            CatalogFunction::Moebius { a, b } => MoebiusTarget::new(a, b)?.series(order),
            CatalogFunction::Identity => TruncatedSeries::identity(order).with_tag("identity"),
        };
        Ok(s)
    }
}

/// Parses and builds a catalog function in one step.
pub fn catalog(name: &str, order: usize) -> Result<TruncatedSeries> {
    CatalogFunction::parse(name)?.series(order)
}

// ---------------------------------------------------------------------------
// forward synthesis and operator inverses
// ---------------------------------------------------------------------------

/// Solves the coefficient recurrence
/// `n a_n [1 + (n-1)(lambda - mu + n lambda mu)] = [p G_k]_n`
/// for the normalized member `f` up to the requested order.
pub fn solve_coefficients(
    p: &TruncatedSeries,
    g: &TruncatedSeries,
    params: &ClassParams,
    order: usize,
) -> Result<TruncatedSeries> {
    if !p.is_p_candidate() {
        return Err(Error::invariant("factor p must satisfy p(0) = 1"));
    }
    let big_g = normalize_gk(&build_gk(g, params.k())?, params.k())?;
    let rhs = p.mul(&big_g);
    let order = order.min(rhs.order());
    let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
    for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
        *slot = rhs.coeff(n) / (n as f64 * params.coefficient_multiplier(n));
    }
    TruncatedSeries::new(coeffs, "synthesized")
}

/// Inverts [`lambda_mu_transform`] coefficientwise: `a_n = F_n / multiplier_n`.
pub fn invert_lambda_mu(big_f: &TruncatedSeries, params: &ClassParams) -> Result<TruncatedSeries> {
    if !big_f.is_normalized() {
        return Err(Error::invariant("operator output must be normalized"));
    }
    let coeffs = (0..=big_f.order())
        .map(|n| big_f.coeff(n) / params.coefficient_multiplier(n))
        .collect();
    TruncatedSeries::new(coeffs, big_f.tag())
}

/// Nonnegative parameter of the Bernardi integral transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformParam {
    gamma: f64,
}

impl TransformParam {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0) {
            return Err(Error::InvalidGamma { gamma });
        }
        Ok(TransformParam { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Bernardi transform `(1+gamma) z^(-gamma) int_0^z t^(gamma-1) f(t) dt`,
/// i.e. the coefficient multiplier `(1+gamma)/(n+gamma)`.
pub fn bernardi_transform(f: &TruncatedSeries, param: TransformParam) -> Result<TruncatedSeries> {
    if !f.is_normalized() {
        return Err(Error::invariant("transform input must be normalized"));
    }
    let gamma = param.gamma();
    let coeffs = (0..=f.order())
        .map(|n| {
            if n == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                f.coeff(n) * ((1.0 + gamma) / (n as f64 + gamma))
            }
        })
        .collect();
    TruncatedSeries::new(coeffs, f.tag())
}

/// Roots `delta, nu` of `t^2 - (alpha - beta) t + beta = 0` where
/// `alpha = (lambda - mu)/(1 - lambda + mu)` and `beta = lambda mu/(1 - lambda + mu)`.
///
/// The factorization `multiplier_n = (1 - lambda + mu)(1 + n delta)(1 + n nu)`
/// splits the second-order operator into two first-order stages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorDecomposition {
    pub alpha: f64,
    pub beta: f64,
    pub delta: Complex64,
    pub nu: Complex64,
    /// True when both roots are real with real part >= -1e-12.
    pub real_nonneg: bool,
}

pub fn decompose_delta_nu(params: &ClassParams) -> Result<OperatorDecomposition> {
    let denom = 1.0 - params.lambda() + params.mu();
    if denom <= 1e-12 {
        return Err(Error::DegenerateParams { value: denom });
    }
    let alpha = (params.lambda() - params.mu()) / denom;
    let beta = params.lambda() * params.mu() / denom;
    let half_trace = (alpha - beta) / 2.0;
    let disc = (alpha - beta) * (alpha - beta) - 4.0 * beta;
    let half_sqrt = if disc >= 0.0 {
        Complex64::new(disc.sqrt() / 2.0, 0.0)
    } else {
        Complex64::new(0.0, (-disc).sqrt() / 2.0)
    };
    let delta = half_trace + half_sqrt;
    let nu = half_trace - half_sqrt;
    let real_nonneg = disc >= 0.0 && delta.re >= -1e-12 && nu.re >= -1e-12;
    Ok(OperatorDecomposition {
        alpha,
        beta,
        delta,
        nu,
        real_nonneg,
    })
}

/// Verification artifact: applies the two Bernardi stages `gamma = 1/nu` then
/// `gamma = 1/delta` to the transformed series and returns the largest
/// coefficient deviation from `(1 - lambda + mu)(1 + delta)(1 + nu) f`.
///
/// A zero root makes its stage the identity (the limit `gamma -> infinity`).
/// Only defined when the decomposition has real nonnegative roots.
pub fn inversion_chain_deviation(f: &TruncatedSeries, params: &ClassParams) -> Result<f64> {
    let dec = decompose_delta_nu(params)?;
    if !dec.real_nonneg {
        return Err(Error::invariant(
            "inversion chain requires real nonnegative roots",
        ));
    }
    let stage = |s: TruncatedSeries, root: f64| -> Result<TruncatedSeries> {
        if root > 1e-9 {
            bernardi_transform(&s, TransformParam::new(1.0 / root)?)
        } else {
            Ok(s)
        }
    };
    let transformed = lambda_mu_transform(f, params)?;
    let out = stage(stage(transformed, dec.nu.re)?, dec.delta.re)?;
    let scalar = (1.0 - params.lambda() + params.mu())
        * (1.0 + dec.delta.re)
        * (1.0 + dec.nu.re);
    Ok(out.max_abs_diff(&f.scale(Complex64::new(scalar, 0.0))))
}

// ---------------------------------------------------------------------------
// witnesses and seeded generators
// ---------------------------------------------------------------------------

/// Schwarz-class generator `w(z) = z (c + z)/(1 + conj(c) z)` with `|c| < 1`.
pub fn blaschke_factor(c: Complex64, order: usize) -> Result<TruncatedSeries> {
    if c.norm() >= 1.0 {
        return Err(Error::invariant(format!(
            "blaschke parameter must satisfy |c| < 1, got |c| = {}",
            c.norm()
        )));
    }
    let inner = order.saturating_sub(1);
    let num = TruncatedSeries::new(vec![c, Complex64::new(1.0, 0.0)], "")?.resized(inner);
    let den_inv = TruncatedSeries::binomial(1.0, inner).scale_variable(-c.conj());
    Ok(num.mul(&den_inv).shift(1)?.with_tag("blaschke"))
}

/// Composition `(1 + A w)/(1 + B w)` for a Schwarz function `w` (`w(0) = 0`).
pub fn compose_moebius(target: &MoebiusTarget, w: &TruncatedSeries) -> Result<TruncatedSeries> {
    if w.coeff(0).norm() > 1e-12 {
        return Err(Error::invariant("subordination witness must vanish at 0"));
    }
    let one = TruncatedSeries::constant(Complex64::new(1.0, 0.0), w.order());
    let num = one.add(&w.scale(Complex64::new(target.a(), 0.0)));
    let den = one.add(&w.scale(Complex64::new(target.b(), 0.0)));
    Ok(num.div(&den)?.with_tag("subordinate"))
}

/// `z (1 - c z)^(-2/k)`: starlike of order `(k-1)/k` for every `|c| < 1`.
pub fn starlike_witness(c: Complex64, k: u32, order: usize) -> Result<TruncatedSeries> {
    if c.norm() >= 1.0 {
        return Err(Error::invariant("witness parameter must satisfy |c| < 1"));
    }
    Ok(TruncatedSeries::binomial(2.0 / k as f64, order.saturating_sub(1))
        .scale_variable(c)
        .shift(1)?
        .with_tag("starlike-witness"))
}

/// Uniform draw from the closed disk `|c| <= rmax` (area-uniform).
pub fn random_disk_point(rng: &mut impl Rng, rmax: f64) -> Complex64 {
    let r = rmax * rng.gen::<f64>().sqrt();
    let theta = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
    Complex64::from_polar(r, theta)
}

/// Random normalized series with coefficients in the closed unit disk.
pub fn random_normalized(rng: &mut impl Rng, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    for _ in 2..=order {
        coeffs.push(random_disk_point(rng, 1.0));
    }
    TruncatedSeries::new(coeffs, "random-normalized").expect("nonempty")
}

/// Random invertible series: `|b_0|` in `[0.75, 1.25]` and higher terms kept
/// small relative to it, so long division stays well conditioned.
pub fn random_unit(rng: &mut impl Rng, order: usize) -> TruncatedSeries {
    let modulus = 0.75 + 0.5 * rng.gen::<f64>();
    let phase = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
    let mut coeffs = vec![Complex64::from_polar(modulus, phase)];
    for _ in 1..=order {
        coeffs.push(random_disk_point(rng, 0.25));
    }
    TruncatedSeries::new(coeffs, "random-unit").expect("nonempty")
}

/// Random function subordinate to the target, as `phi` composed with a
/// random Blaschke-type Schwarz function.
pub fn random_subordinate(
    rng: &mut impl Rng,
    target: &MoebiusTarget,
    order: usize,
) -> Result<TruncatedSeries> {
    let c = random_disk_point(rng, 0.8);
    compose_moebius(target, &blaschke_factor(c, order)?)
}

/// Random positive-real-part function `(1 + w)/(1 - w)`.
pub fn random_positive_real(rng: &mut impl Rng, order: usize) -> Result<TruncatedSeries> {
    random_subordinate(rng, &MoebiusTarget::half_plane(), order)
}

/// A synthesized member together with the data that produced it.
#[derive(Debug, Clone)]
pub struct SynthesizedMember {
    pub f: TruncatedSeries,
    /// The subordinate factor the class ratio must reproduce.
    pub p: TruncatedSeries,
    /// The Schwarz function behind `p`.
    pub w: TruncatedSeries,
    /// The starlike witness `g`.
    pub g: TruncatedSeries,
}

/// Draws a random member of the class by the forward recurrence.
pub fn random_member(
    rng: &mut impl Rng,
    params: &ClassParams,
    target: &MoebiusTarget,
    order: usize,
) -> Result<SynthesizedMember> {
    let w = blaschke_factor(random_disk_point(rng, 0.8), order)?;
    let p = compose_moebius(target, &w)?;
    let g = starlike_witness(random_disk_point(rng, 0.8), params.k(), order)?;
    let f = solve_coefficients(&p, &g, params, order)?;
    Ok(SynthesizedMember { f, p, w, g })
}

/// Draws a pair `(f, g)` engineered to satisfy the summed sufficient
/// criterion with definite headroom.
///
/// The witness parameter is halved until the witness share of the budget
/// drops under half of `A - B`; the tail of `f` is then scaled onto a random
/// fraction of whatever budget remains, so the criterion holds by
/// construction but not trivially (the tail is as large as the headroom
/// allows).
pub fn sufficient_family(
    rng: &mut impl Rng,
    params: &ClassParams,
    target: &MoebiusTarget,
    order: usize,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let rhs = target.a() - target.b();
    let witness_weight = 1.0 + target.a().abs();
    let member_weight = 1.0 + target.b().abs();

    let mut c = random_disk_point(rng, 0.25);
    let (g, witness_sum) = loop {
        let g = starlike_witness(c, params.k(), order)?;
        let big = normalize_gk(&build_gk(&g, params.k())?, params.k())?;
        let sum: f64 = (2..=order).map(|n| big.coeff(n).norm()).sum();
        if witness_weight * sum < 0.5 * rhs {
            break (g, witness_weight * sum);
        }
        c *= 0.5;
    };

    let theta = 0.3 + 0.6 * rng.gen::<f64>();
    let budget = theta * (rhs - witness_sum);
    let tail_top = order.min(12);
    let raw: Vec<Complex64> = (2..=tail_top)
        .map(|n| random_disk_point(rng, 1.0) * 0.5f64.powi(n as i32))
        .collect();
    let raw_sum: f64 = raw
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let n = i + 2;
            member_weight * n as f64 * params.coefficient_multiplier(n) * t.norm()
        })
        .sum();
    let scale = if raw_sum > 1e-12 { (budget / raw_sum).min(1e3) } else { 0.0 };

    let mut coeffs = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    coeffs.extend(raw.iter().map(|t| t * scale));
    coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
    let f = TruncatedSeries::new(coeffs, "sufficient-member").expect("nonempty");
    Ok((f, g))
}
