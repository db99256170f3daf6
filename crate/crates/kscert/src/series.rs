//! Truncated complex power series arithmetic.
//!
//! A [`TruncatedSeries`] holds the coefficients `c_0..c_N` of a power series
//! in `z` together with a free-form role tag.  Operations are exact up to the
//! truncation order: products and quotients truncate to the shorter operand so
//! that no reported coefficient depends on unknown tail terms.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Constant-term modulus below which a series is treated as non-invertible.
pub const UNIT_TOLERANCE: f64 = 1e-12;
/// Modulus below which a low-order coefficient counts as zero for negative shifts.
pub const SHIFT_TOLERANCE: f64 = 1e-12;
/// Tolerance for the normalization checks `f(0) = 0, f'(0) = 1` and `p(0) = 1`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;

/// Coefficients `c_0..c_N` of a power series truncated at order `N`.
#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
    tag: String,
}

impl TruncatedSeries {
    /// Builds a series from explicit coefficients; `coeffs` must be nonempty.
    pub fn new(coeffs: Vec<Complex64>, tag: &str) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invariant("a series needs at least the c_0 coefficient"));
        }
        Ok(TruncatedSeries {
            coeffs,
            tag: tag.to_string(),
        })
    }

    /// Builds a series with real coefficients.
    pub fn from_real(coeffs: &[f64], tag: &str) -> Result<Self> {
        Self::new(
            coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            tag,
        )
    }

    /// The zero series at the given order.
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Complex64::new(0.0, 0.0); order + 1],
            tag: String::new(),
        }
    }

    /// The constant series `value` at the given order.
    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    /// The identity `z` at the given order (order must be >= 1).
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order.max(1));
        s.coeffs[1] = Complex64::new(1.0, 0.0);
        s
    }

    /// `(1 - z)^(-c)` via the recurrence `coef_{n+1} = coef_n * (c + n) / (n + 1)`.
    pub fn binomial(c: f64, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut coef = Complex64::new(1.0, 0.0);
        coeffs.push(coef);
        for n in 0..order {
            coef *= (c + n as f64) / (n as f64 + 1.0);
            coeffs.push(coef);
        }
        TruncatedSeries {
            coeffs,
            tag: String::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient `c_n`, zero for `n` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs
            .get(n)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn with_tag(mut self, tag: &str) -> Self {
        self.tag = tag.to_string();
        self
    }

    /// True when `|c_0| <= tol` and `|c_1 - 1| <= tol` (class-A normalization).
    pub fn is_normalized(&self) -> bool {
        self.coeff(0).norm() <= NORMALIZATION_TOLERANCE
            && (self.coeff(1) - 1.0).norm() <= NORMALIZATION_TOLERANCE
    }

    /// True when `|c_0 - 1| <= tol` (candidate for a positive-real-part function).
    pub fn is_p_candidate(&self) -> bool {
        (self.coeff(0) - 1.0).norm() <= NORMALIZATION_TOLERANCE
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficientwise deviation over the common prefix of two series.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().min(other.coeffs.len());
        (0..n)
            .map(|i| (self.coeffs[i] - other.coeffs[i]).norm())
            .fold(0.0, f64::max)
    }

    /// Copy truncated (or zero-padded) to the requested order.
    ///
    /// Padding asserts that the caller knows the tail vanishes, e.g. for
    /// polynomial inputs; it does not invent tail information for genuine
    /// truncations.
    pub fn resized(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        TruncatedSeries {
            coeffs,
            tag: self.tag.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        TruncatedSeries {
            coeffs,
            tag: self.tag.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
            tag: self.tag.clone(),
        }
    }

    /// Cauchy product, truncated to `min(N_a, N_b)` so every reported
    /// coefficient is independent of unknown tails.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        for (n, slot) in coeffs.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..=n {
                acc += self.coeffs[i] * other.coeffs[n - i];
            }
            *slot = acc;
        }
        TruncatedSeries {
            coeffs,
            tag: self.tag.clone(),
        }
    }

    /// Long division `a / b`; requires `|b_0| > 1e-12`.
    ///
    /// The quotient satisfies `mul(q, b) = a` exactly up to rounding on the
    /// common truncation order.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let b0 = other.coeff(0);
        if b0.norm() <= UNIT_TOLERANCE {
            return Err(Error::DivisionByNonUnit {
                modulus: b0.norm(),
                tolerance: UNIT_TOLERANCE,
            });
        }
        let order = self.order().min(other.order());
        let mut q = vec![Complex64::new(0.0, 0.0); order + 1];
        for n in 0..=order {
            let mut acc = self.coeff(n);
            for j in 0..n {
                acc -= q[j] * other.coeffs[n - j];
            }
            q[n] = acc / b0;
        }
        Ok(TruncatedSeries {
            coeffs: q,
            tag: self.tag.clone(),
        })
    }

    /// Termwise derivative; the order drops by one (constants map to 0).
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..self.coeffs.len())
            .map(|n| self.coeffs[n] * n as f64)
            .collect();
        TruncatedSeries {
            coeffs,
            tag: self.tag.clone(),
        }
    }

    /// Multiplies by `z^m` (`m > 0`) or cancels a `z^|m|` factor (`m < 0`).
    ///
    /// Cancellation demands `|c_0|..|c_{|m|-1}| <= 1e-12`.
    pub fn shift(&self, m: i64) -> Result<Self> {
        self.shift_with_tolerance(m, SHIFT_TOLERANCE)
    }

    pub(crate) fn shift_with_tolerance(&self, m: i64, tol: f64) -> Result<Self> {
        if m >= 0 {
            let m = m as usize;
            let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
            coeffs.extend_from_slice(&self.coeffs);
            return Ok(TruncatedSeries {
                coeffs,
                tag: self.tag.clone(),
            });
        }
        let m = (-m) as usize;
        if m > self.order() {
            return Err(Error::NonDivisibleByZPower {
                power: m,
                index: self.order(),
                modulus: f64::NAN,
            });
        }
        for (i, c) in self.coeffs[..m].iter().enumerate() {
            if c.norm() > tol {
                return Err(Error::NonDivisibleByZPower {
                    power: m,
                    index: i,
                    modulus: c.norm(),
                });
            }
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[m..].to_vec(),
            tag: self.tag.clone(),
        })
    }

    /// Normalization-preserving rotation `e^{-i theta} a(e^{i theta} z)`:
    /// `c_n -> e^{i (n-1) theta} c_n`.
    pub fn rotate(&self, theta: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| c * Complex64::from_polar(1.0, (n as f64 - 1.0) * theta))
            .collect();
        TruncatedSeries {
            coeffs,
            tag: self.tag.clone(),
        }
    }

    /// Argument dilation `a(w z)`: `c_n -> c_n w^n`.
    pub fn scale_variable(&self, w: Complex64) -> Self {
        let mut pow = Complex64::new(1.0, 0.0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let out = c * pow;
                pow *= w;
                out
            })
            .collect();
        TruncatedSeries {
            coeffs,
            tag: self.tag.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<[f64; 2]>,
    tag: String,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs.iter().map(|c| [c.re, c.im]).collect(),
            tag: self.tag.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "series order {} expects {} coefficients, got {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        Ok(TruncatedSeries {
            coeffs: repr
                .coeffs
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
            tag: repr.tag,
        })
    }
}
