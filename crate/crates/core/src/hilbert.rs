//! Hilbert series and Hilbert polynomials from free resolutions.
//!
//! For a curve `C` inside a complete intersection `Y` in `P^N`, the Hilbert
//! series of `O_C` over `P^N` has numerator
//!
//! ```text
//! N_C(t) = prod_j (1 - t^{d_j}) * (1 - sum_i (-1)^i sum_j t^{-a_{ij}})
//! ```
//!
//! where `d_j` are the degrees of `Y` and `a_{ij}` the twists of term `i`
//! of the ideal resolution. Dividing by `(1 - t)^{N-1}` (exactly, or the
//! target is not a curve) leaves `q(t) / (1-t)^2`, so the Hilbert
//! polynomial is `P(n) = sum_e q_e * C(n - e + 1, 1)`, a degree-one
//! polynomial `d*n + (1 - g)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::grr::{serre_invariants, GrrError};
use crate::model::{Cicy, CurveInvariants, FreeResolution, TargetKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("numerator is not divisible by (1-t)^{power}: remainder at step {step}")]
    NotACurve { power: i64, step: i64 },
    #[error("hilbert polynomial {0} is not of curve shape d*n + (1-g) with d >= 1")]
    NotACurvePolynomial(String),
    #[error("resolution does not resolve a curve ideal")]
    WrongTarget,
    #[error(transparent)]
    Grr(#[from] GrrError),
}

/// A finitely supported integer Laurent polynomial in `t`, exponent -> coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HilbertNumerator {
    coefficients: BTreeMap<i64, BigInt>,
}

impl HilbertNumerator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exponent: i64, coefficient: BigInt) -> Self {
        let mut c = BTreeMap::new();
        if !coefficient.is_zero() {
            c.insert(exponent, coefficient);
        }
        Self { coefficients: c }
    }

    pub fn coefficients(&self) -> &BTreeMap<i64, BigInt> {
        &self.coefficients
    }

    pub fn coefficient(&self, exponent: i64) -> BigInt {
        self.coefficients
            .get(&exponent)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, exponent: i64, coefficient: &BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self
            .coefficients
            .entry(exponent)
            .or_insert_with(BigInt::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.coefficients.remove(&exponent);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coefficients {
            out.add_term(*e, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.coefficients {
            for (e2, c2) in &other.coefficients {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    /// `1 - t^d`.
    pub fn one_minus_t_pow(d: i64) -> Self {
        let mut out = Self::one();
        out.add_term(d, &BigInt::from(-1));
        out
    }

    /// Exact division by `(1 - t)`, or `None` if the remainder is nonzero
    /// (equivalently, the value at `t = 1` is nonzero).
    fn div_one_minus_t(&self) -> Option<Self> {
        if self.coefficients.is_empty() {
            return Some(Self::zero());
        }
        // self = (1 - t) q  <=>  q_e = sum_{j <= e} c_j, with total sum zero.
        let mut out = Self::zero();
        let mut acc = BigInt::zero();
        let (&lo, _) = self.coefficients.iter().next().unwrap();
        let (&hi, _) = self.coefficients.iter().next_back().unwrap();
        for e in lo..=hi {
            acc += self.coefficient(e);
            if !acc.is_zero() {
                out.add_term(e, &acc.clone());
            }
        }
        if acc.is_zero() {
            Some(out)
        } else {
            None
        }
    }

    /// Evaluates the Hilbert function `[t^n] self / (1-t)^{N+1}` directly:
    /// `sum_e c_e * C(n - e + N, N)` over `e <= n`.
    pub fn hilbert_function(&self, ambient_dim: i64, n: i64) -> i64 {
        let mut total = BigInt::zero();
        for (e, c) in &self.coefficients {
            if *e <= n {
                total += c * crate::cohomology::ext_binomial(n - e + ambient_dim, ambient_dim);
            }
        }
        total.to_i64().expect("hilbert function exceeds i64")
    }
}

/// Numerator of the Hilbert series of `O_C` over `P^N`, read off a curve
/// ideal resolution over the ambient complete intersection.
pub fn numerator_from_resolution(res: &FreeResolution) -> Result<HilbertNumerator, HilbertError> {
    if res.target() != TargetKind::CurveIdeal {
        return Err(HilbertError::WrongTarget);
    }
    let mut ideal_part = HilbertNumerator::zero();
    for (i, term) in res.terms().iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for &a in term.twists() {
            ideal_part.add_term(-a, &BigInt::from(sign));
        }
    }
    // numerator of O_C = numerator of O_Y minus the ideal contribution
    let mut structure = HilbertNumerator::one();
    for &d in res.ambient().degrees() {
        structure = structure.mul(&HilbertNumerator::one_minus_t_pow(d));
    }
    let mut one_minus_ideal = HilbertNumerator::one();
    for (e, c) in ideal_part.coefficients() {
        one_minus_ideal.add_term(*e, &(-c));
    }
    Ok(structure.mul(&one_minus_ideal))
}

/// Rational-coefficient polynomial, low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertPolynomial {
    coefficients: Vec<BigRational>,
}

impl HilbertPolynomial {
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn evaluate(&self, n: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(n));
        let mut acc = BigRational::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    fn trimmed(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        Self { coefficients }
    }
}

impl std::fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "n".to_string(),
                _ => format!("n^{i}"),
            };
            parts.push(if var.is_empty() {
                format!("{c}")
            } else if c.is_one() {
                var
            } else {
                format!("{c}{var}")
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Hilbert polynomial of a curve from its series numerator over `P^N`:
/// divide by `(1 - t)^{N-1}` exactly, then expand against `1/(1-t)^2`.
pub fn hilbert_polynomial(
    ambient_dim: i64,
    num: &HilbertNumerator,
) -> Result<HilbertPolynomial, HilbertError> {
    let power = ambient_dim - 1;
    let mut q = num.clone();
    for step in 0..power {
        q = q.div_one_minus_t().ok_or(HilbertError::NotACurve {
            power,
            step: step + 1,
        })?;
    }
    // P(n) = sum_e q_e * C(n - e + 1, 1) = sum_e q_e * (n + 1 - e)
    let mut constant = BigInt::zero();
    let mut linear = BigInt::zero();
    for (e, c) in q.coefficients() {
        constant += c * BigInt::from(1 - e);
        linear += c;
    }
    Ok(HilbertPolynomial::trimmed(vec![
        BigRational::from_integer(constant),
        BigRational::from_integer(linear),
    ]))
}

/// `(degree, genus)` of a curve resolution: the Hilbert polynomial must be
/// `d*n + (1-g)` with `d >= 1`.
pub fn curve_invariants_from_resolution(
    res: &FreeResolution,
) -> Result<CurveInvariants, HilbertError> {
    let num = numerator_from_resolution(res)?;
    let poly = hilbert_polynomial(res.ambient().ambient_dim(), &num)?;
    let coeffs = poly.coefficients();
    if coeffs.len() != 2 {
        return Err(HilbertError::NotACurvePolynomial(poly.to_string()));
    }
    let as_int = |r: &BigRational| -> Option<i64> {
        r.is_integer().then(|| r.to_integer().to_i64()).flatten()
    };
    let (constant, degree) = match (as_int(&coeffs[0]), as_int(&coeffs[1])) {
        (Some(c), Some(d)) if d >= 1 => (c, d),
        _ => return Err(HilbertError::NotACurvePolynomial(poly.to_string())),
    };
    Ok(CurveInvariants {
        degree,
        genus: 1 - constant,
    })
}

/// Outcome of comparing a curve resolution against a bundle class through
/// the Serre correspondence. Mismatches are reported, not thrown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub from_resolution: Option<CurveInvariants>,
    pub from_serre: Option<CurveInvariants>,
    pub detail: String,
}

impl ConsistencyReport {
    pub fn consistent(&self) -> bool {
        match (&self.from_resolution, &self.from_serre) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

/// Checks that the resolution's Hilbert-polynomial invariants agree with
/// `serre_invariants(c1, c2)`.
pub fn check_serre_consistency(
    res: &FreeResolution,
    _x: &Cicy,
    c1: i64,
    c2: i64,
) -> ConsistencyReport {
    let from_resolution = curve_invariants_from_resolution(res).ok();
    let from_serre = serre_invariants(c1, c2).ok();
    let detail = match (&from_resolution, &from_serre) {
        (Some(a), Some(b)) if a == b => format!("both give {a}"),
        (Some(a), Some(b)) => format!("resolution gives {a}, serre gives {b}"),
        (None, _) => "resolution does not define a curve".to_string(),
        (_, None) => "no subcanonical pairing (odd c1*c2)".to_string(),
    };
    ConsistencyReport {
        from_resolution,
        from_serre,
        detail,
    }
}
