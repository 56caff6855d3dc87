//! Chern class arithmetic for rank 2 bundles on CICY threefolds.
//!
//! The Euler characteristic of a rank 2 bundle `E` on `X_r` is
//!
//! ```text
//! chi(E) = (r/6) c1^3 - c1 c2 / 2 + (c1/12) (12(k+4) - 2r)
//! ```
//!
//! where `12(k+4) - 2r` is `c2(T_X) . h` in line-class units (adjunction
//! gives `c1(T_X) = 0`). Twisting acts by `c1(E(n)) = c1 + 2n` and
//! `c2(E(n)) = c2 + r n c1 + r n^2`. All arithmetic is exact rational
//! internally; a non-integral value is a hard error, never a rounding,
//! and signals an invalid `(X, c1, c2)` combination.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_rational::Ratio;
use thiserror::Error;

use crate::cohomology::{CohomologyEntry, CohomologyTable};
use crate::model::{serre_dual_twist, Cicy, CurveInvariants};

/// Arguments stay well inside these bounds so the `i128` rational
/// arithmetic in [`grr_chi`] cannot overflow.
const MAX_C1: i64 = 1 << 20;
const MAX_C2: i64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrrError {
    #[error("chi({c1}, {c2}) on X{r} is not an integer: {num}/{den}")]
    NonIntegralChi { r: i64, c1: i64, c2: i64, num: i128, den: i128 },
    #[error("c1*c2 = {0} is odd: no subcanonical curve pairs with this class")]
    OddProduct(i64),
    #[error("anchor h^0({twist}) = {value} contradicts the ACM recursion ({reason})")]
    InconsistentAnchor { twist: i64, value: i64, reason: String },
    #[error("chi profile needs at least 3 samples, got {0}")]
    TooFewSamples(usize),
    #[error("duplicate twist {0} in chi profile")]
    DuplicateTwist(i64),
    #[error("no (c1, c2) in range matches the chi profile")]
    NoMatch,
    #[error("chi profile matched by several classes: {0:?}")]
    AmbiguousMatch(Vec<(i64, i64)>),
    #[error("argument out of supported range: {0}")]
    OutOfRange(String),
}

/// `c2(T_X) . h` of a catalog CICY in line-class units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentChernData {
    pub cicy: Cicy,
    pub d2_in_lines: i64,
}

/// Second Chern class coefficients of the tangent bundle, `d2 = coeff * h^2`
/// with `h^2 = r * l`, keyed by `r`.
const TANGENT_D2_COEFF: [(i64, i64); 5] = [(5, 10), (8, 7), (9, 6), (12, 5), (16, 4)];

/// Computes `c2(T_X) . h = 12(k+4) - 2r` and cross-checks it against the
/// stored per-type coefficient table.
pub fn tangent_d2(x: &Cicy) -> TangentChernData {
    let d2 = 12 * (x.k() + 4) - 2 * x.r();
    let coeff = TANGENT_D2_COEFF
        .iter()
        .find(|(r, _)| *r == x.r())
        .map(|(_, c)| *c)
        .expect("catalog CICY");
    assert_eq!(d2, coeff * x.r(), "tangent d2 table out of sync for {x}");
    TangentChernData {
        cicy: x.clone(),
        d2_in_lines: d2,
    }
}

/// Chern classes of `E(n)` from those of `E` on `X_r`.
pub fn twist_chern(c1: i64, c2: i64, n: i64, r: i64) -> (i64, i64) {
    (c1 + 2 * n, c2 + r * n * c1 + r * n * n)
}

/// Euler characteristic of a rank 2 bundle with classes `(c1, c2)` on a
/// catalog CICY, exact. `NonIntegralChi` exactly when `c1 * c2` is odd.
pub fn grr_chi(x: &Cicy, c1: i64, c2: i64) -> Result<i64, GrrError> {
    if c1.abs() > MAX_C1 || c2.abs() > MAX_C2 {
        return Err(GrrError::OutOfRange(format!("c1 = {c1}, c2 = {c2}")));
    }
    let r = Ratio::from_integer(x.r() as i128);
    let c1r = Ratio::from_integer(c1 as i128);
    let c2r = Ratio::from_integer(c2 as i128);
    let d2 = Ratio::from_integer(tangent_d2(x).d2_in_lines as i128);
    let chi = r / 6 * c1r * c1r * c1r - c1r * c2r / 2 + c1r / 12 * d2;
    if !chi.is_integer() {
        return Err(GrrError::NonIntegralChi {
            r: x.r(),
            c1,
            c2,
            num: *chi.numer(),
            den: *chi.denom(),
        });
    }
    Ok(chi.to_integer() as i64)
}

/// `chi(E(n))`: twist the Chern classes, then apply [`grr_chi`].
pub fn chi_twisted(x: &Cicy, c1: i64, c2: i64, n: i64) -> Result<i64, GrrError> {
    if c1.abs() > MAX_C1 || c2.abs() > MAX_C2 || n.abs() > MAX_C1 {
        return Err(GrrError::OutOfRange(format!("c1 = {c1}, c2 = {c2}, n = {n}")));
    }
    let (tc1, tc2) = twist_chern(c1, c2, n, x.r());
    grr_chi(x, tc1, tc2)
}

/// Degree and genus of the Serre-correspondence curve of a rank 2 bundle on
/// a Calabi-Yau threefold: degree `c2`, genus `c1 c2 / 2 + 1`.
pub fn serre_invariants(c1: i64, c2: i64) -> Result<CurveInvariants, GrrError> {
    let prod = c1 * c2;
    if prod.rem_euclid(2) != 0 {
        return Err(GrrError::OddProduct(prod));
    }
    Ok(CurveInvariants {
        degree: c2,
        genus: prod / 2 + 1,
    })
}

/// Result of the ACM section-count recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H0 {
    Known(i64),
    Undetermined,
}

impl H0 {
    pub fn known(self) -> Option<i64> {
        match self {
            H0::Known(v) => Some(v),
            H0::Undetermined => None,
        }
    }
}

impl std::fmt::Display for H0 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            H0::Known(v) => write!(f, "{v}"),
            H0::Undetermined => write!(f, "undetermined"),
        }
    }
}

/// `h^0(E(n))` for a normalized rank 2 ACM bundle with classes `(c1, c2)`.
///
/// ACM vanishing and Serre duality couple section counts in pairs:
/// `h^0(n) = chi(n) + h^0(-c1-n)`, with `h^0(m) = 0 for m < 0` from
/// normalization. The default anchor `h^0(0) = 1` applies only when
/// `c1 <= 0` (then `h^0(E) = 1 + h^0(I_C(c1)) = 1`); explicit anchors
/// override it. When a pair is self-coupled and unanchored the count is
/// genuinely `Undetermined` by these constraints alone.
pub fn acm_h0(
    x: &Cicy,
    c1: i64,
    c2: i64,
    n: i64,
    anchors: &BTreeMap<i64, i64>,
) -> Result<H0, GrrError> {
    // Reject anchors that contradict normalization or the pair recursion.
    for (&t, &v) in anchors {
        if v < 0 {
            return Err(GrrError::InconsistentAnchor {
                twist: t,
                value: v,
                reason: "section counts are nonnegative".into(),
            });
        }
        if t < 0 && v != 0 {
            return Err(GrrError::InconsistentAnchor {
                twist: t,
                value: v,
                reason: "normalized bundles have h^0 = 0 in negative twists".into(),
            });
        }
        let partner = serre_dual_twist(c1, t);
        let partner_value = if let Some(&w) = anchors.get(&partner) {
            Some(w)
        } else if partner < 0 {
            Some(0)
        } else {
            None
        };
        if let Some(w) = partner_value {
            let chi = chi_twisted(x, c1, c2, t)?;
            if v != chi + w {
                return Err(GrrError::InconsistentAnchor {
                    twist: t,
                    value: v,
                    reason: format!(
                        "recursion wants h^0({t}) = chi({t}) + h^0({partner}) = {} + {w}",
                        chi
                    ),
                });
            }
        }
    }

    if let Some(&v) = anchors.get(&n) {
        return Ok(H0::Known(v));
    }
    if n < 0 {
        return Ok(H0::Known(0));
    }
    if n == 0 && c1 <= 0 {
        return Ok(H0::Known(1));
    }
    let partner = serre_dual_twist(c1, n);
    let partner_h0 = if let Some(&w) = anchors.get(&partner) {
        Some(w)
    } else if partner < 0 {
        Some(0)
    } else if partner == 0 && c1 <= 0 {
        Some(1)
    } else {
        None
    };
    match partner_h0 {
        Some(w) => Ok(H0::Known(chi_twisted(x, c1, c2, n)? + w)),
        None => Ok(H0::Undetermined),
    }
}

/// Full cohomology table of `E(n)` for a normalized rank 2 ACM bundle:
/// middle entries zero, `h^0`/`h^3` from [`acm_h0`] and its Serre dual.
pub fn acm_cohomology_table(
    x: &Cicy,
    c1: i64,
    c2: i64,
    n: i64,
    anchors: &BTreeMap<i64, i64>,
) -> Result<CohomologyTable, GrrError> {
    let entry = |h: H0| match h {
        H0::Known(v) => CohomologyEntry::Known(v),
        H0::Undetermined => CohomologyEntry::Undetermined,
    };
    let h0 = acm_h0(x, c1, c2, n, anchors)?;
    let h3 = acm_h0(x, c1, c2, serre_dual_twist(c1, n), anchors)?;
    Ok(CohomologyTable {
        variety: x.base().clone(),
        twist: n,
        dims: vec![
            entry(h0),
            CohomologyEntry::Known(0),
            CohomologyEntry::Known(0),
            entry(h3),
        ],
    })
}

/// Sampled Euler characteristics `(twist, chi)` with distinct twists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiProfile {
    samples: Vec<(i64, i64)>,
}

impl ChiProfile {
    pub fn new(samples: Vec<(i64, i64)>) -> Result<Self, GrrError> {
        let mut seen = std::collections::BTreeSet::new();
        for &(n, _) in &samples {
            if !seen.insert(n) {
                return Err(GrrError::DuplicateTwist(n));
            }
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[(i64, i64)] {
        &self.samples
    }
}

/// Recovers `(c1, c2)` from a chi profile by exhaustive search over the
/// given ranges. At least three samples are required; with three distinct
/// twists the match is unique when it exists (the chi polynomial in `n` is
/// cubic with known leading coefficient). Candidates whose chi is not
/// integral at some sampled twist cannot match and are skipped. All matches
/// are collected and an ambiguity is reported rather than resolved.
pub fn infer_chern(
    x: &Cicy,
    profile: &ChiProfile,
    c1_range: RangeInclusive<i64>,
    c2_range: RangeInclusive<i64>,
) -> Result<(i64, i64), GrrError> {
    if profile.samples().len() < 3 {
        return Err(GrrError::TooFewSamples(profile.samples().len()));
    }
    let mut matches = Vec::new();
    for c1 in c1_range {
        for c2 in c2_range.clone() {
            let ok = profile.samples().iter().all(|&(n, chi)| {
                matches!(chi_twisted(x, c1, c2, n), Ok(v) if v == chi)
            });
            if ok {
                matches.push((c1, c2));
            }
        }
    }
    matches.sort_unstable();
    match matches.len() {
        0 => Err(GrrError::NoMatch),
        1 => Ok(matches[0]),
        _ => Err(GrrError::AmbiguousMatch(matches)),
    }
}
