//! Varieties, graded free modules, resolutions and bundle classes.
//!
//! Conventions: `O(a)` is the degree-`a` twist of the structure sheaf and
//! resolutions store the literal twists of their free summands (so ideal
//! sheaf generators of degree `r` appear as `-r`). Twist multisets are kept
//! sorted descending, which makes equality and display deterministic.
//!
//! Everything here is immutable after construction and every operation is a
//! pure function, so values can be shared freely across threads.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid complete intersection: {0}")]
    InvalidVariety(String),
    #[error("degrees {degrees:?} do not cut out a Calabi-Yau threefold")]
    NotCalabiYau { degrees: Vec<i64> },
    #[error("degrees {degrees:?} are not one of the five catalog types")]
    NotInCatalog { degrees: Vec<i64> },
    #[error("invalid resolution: {0}")]
    InvalidResolution(String),
}

/// A complete intersection of hypersurfaces in `P^N`.
///
/// The empty degree list denotes `P^N` itself. Degrees are stored sorted
/// ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompleteIntersection {
    ambient_dim: i64,
    degrees: Vec<i64>,
}

/// Magnitude bounds on construction keep all downstream `i64` arithmetic
/// (twist sums, canonical twists, binomial arguments) away from overflow.
pub(crate) const MAX_DEGREE: i64 = 1 << 40;
pub(crate) const MAX_AMBIENT_DIM: i64 = 1 << 20;

impl CompleteIntersection {
    pub fn new(ambient_dim: i64, mut degrees: Vec<i64>) -> Result<Self, ModelError> {
        if !(1..=MAX_AMBIENT_DIM).contains(&ambient_dim) {
            return Err(ModelError::InvalidVariety(format!(
                "ambient dimension {ambient_dim} must be in 1..={MAX_AMBIENT_DIM}"
            )));
        }
        if degrees.iter().any(|&d| !(1..=MAX_DEGREE).contains(&d)) {
            return Err(ModelError::InvalidVariety(format!(
                "hypersurface degrees {degrees:?} must all be in 1..={MAX_DEGREE}"
            )));
        }
        if (degrees.len() as i64) > ambient_dim {
            return Err(ModelError::InvalidVariety(format!(
                "{} hypersurfaces in P^{} leave negative dimension",
                degrees.len(),
                ambient_dim
            )));
        }
        degrees.sort_unstable();
        Ok(Self {
            ambient_dim,
            degrees,
        })
    }

    pub fn projective_space(n: i64) -> Self {
        Self::new(n, Vec::new()).expect("P^N with N >= 1")
    }

    /// `N` for a variety embedded in `P^N`.
    pub fn ambient_dim(&self) -> i64 {
        self.ambient_dim
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn codim(&self) -> i64 {
        self.degrees.len() as i64
    }

    pub fn dimension(&self) -> i64 {
        self.ambient_dim - self.codim()
    }

    /// Twist of the canonical sheaf: `sum(d_i) - N - 1`. Zero exactly for
    /// Calabi-Yau complete intersections.
    pub fn canonical_twist(&self) -> i64 {
        self.degrees.iter().sum::<i64>() - self.ambient_dim - 1
    }

    pub fn is_projective_space(&self) -> bool {
        self.degrees.is_empty()
    }
}

impl std::fmt::Display for CompleteIntersection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.degrees.is_empty() {
            write!(f, "P^{}", self.ambient_dim)
        } else {
            let degs: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
            write!(f, "({}) in P^{}", degs.join(","), self.ambient_dim)
        }
    }
}

/// The five Calabi-Yau complete intersection threefold types, keyed by the
/// degree product `r`: (5), (2,4), (3,3), (2,2,3) and (2,2,2,2).
pub const CICY_CATALOG: [&[i64]; 5] = [&[5], &[2, 4], &[3, 3], &[2, 2, 3], &[2, 2, 2, 2]];

/// A Calabi-Yau complete intersection threefold, one of the five catalog
/// types. `r` is the degree product and `k` the number of hypersurfaces;
/// `k = floor(r/4)` holds for every catalog instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cicy {
    base: CompleteIntersection,
    r: i64,
    k: i64,
}

/// Validates a degree list as one of the five CICY threefold types.
///
/// The Calabi-Yau condition fixes the ambient dimension: a threefold needs
/// `N = k + 3` and trivial canonical class needs `sum(d_i) = N + 1`, so any
/// degree list with `sum != k + 4` is rejected as `NotCalabiYau`. Lists that
/// satisfy the arithmetic but are not among the five types (for instance
/// lists containing a linear degree) are rejected as `NotInCatalog`.
pub fn make_cicy(degrees: &[i64]) -> Result<Cicy, ModelError> {
    if degrees.is_empty() {
        return Err(ModelError::NotCalabiYau {
            degrees: Vec::new(),
        });
    }
    let mut sorted: Vec<i64> = degrees.to_vec();
    sorted.sort_unstable();
    let k = sorted.len() as i64;
    if sorted.iter().any(|&d| d < 1) || sorted.iter().sum::<i64>() != k + 4 {
        return Err(ModelError::NotCalabiYau { degrees: sorted });
    }
    if !CICY_CATALOG.iter().any(|cat| cat == &sorted.as_slice()) {
        return Err(ModelError::NotInCatalog { degrees: sorted });
    }
    let base = CompleteIntersection::new(k + 3, sorted)?;
    let r: i64 = base.degrees().iter().product();
    debug_assert_eq!(base.dimension(), 3);
    debug_assert_eq!(base.canonical_twist(), 0);
    debug_assert_eq!(k, r.div_euclid(4));
    Ok(Cicy { base, r, k })
}

impl Cicy {
    pub fn base(&self) -> &CompleteIntersection {
        &self.base
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn degrees(&self) -> &[i64] {
        self.base.degrees()
    }

    /// All five catalog instances, ordered by `r`.
    pub fn catalog() -> Vec<Cicy> {
        CICY_CATALOG
            .iter()
            .map(|degs| make_cicy(degs).expect("catalog entry validates"))
            .collect()
    }

    /// The complete intersection fourfold obtained by dropping one
    /// hypersurface of degree `d` from the defining equations.
    pub fn fourfold_through(&self, d: i64) -> Result<CompleteIntersection, ModelError> {
        let mut degs = self.base.degrees().to_vec();
        match degs.iter().position(|&x| x == d) {
            Some(i) => {
                degs.remove(i);
                CompleteIntersection::new(self.base.ambient_dim(), degs)
            }
            None => Err(ModelError::InvalidVariety(format!(
                "no hypersurface of degree {d} in type ({:?})",
                self.base.degrees()
            ))),
        }
    }
}

impl std::fmt::Display for Cicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "X{} = {}", self.r, self.base)
    }
}

/// The twist pairing of Serre duality for a rank 2 bundle on a Calabi-Yau
/// threefold: `h^3(E(n)) = h^0(E(-c1-n))`, using `E^v = E(-c1)`.
pub fn serre_dual_twist(c1: i64, n: i64) -> i64 {
    -c1 - n
}

/// Chern data of a rank 2 bundle on a CICY threefold, with `c2` in
/// line-class units. The `normalized` flag records that the largest twist
/// with a section is zero; the classification range `-2 <= c1 <= 4` can be
/// queried but is not enforced at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleClass {
    pub rank: i64,
    pub c1: i64,
    pub c2: i64,
    pub normalized: bool,
}

impl BundleClass {
    pub fn new(rank: i64, c1: i64, c2: i64, normalized: bool) -> Result<Self, ModelError> {
        if rank < 1 {
            return Err(ModelError::InvalidVariety(format!(
                "bundle rank {rank} must be at least 1"
            )));
        }
        Ok(Self {
            rank,
            c1,
            c2,
            normalized,
        })
    }

    pub fn in_classification_range(&self) -> bool {
        (-2..=4).contains(&self.c1)
    }

    /// The class of `E(n)` on a variety whose degree product is `r`
    /// (rank 2 only). Twisting by `n != 0` drops the normalized flag.
    pub fn twist(&self, n: i64, r: i64) -> Self {
        debug_assert_eq!(self.rank, 2, "twist formulas are rank 2 specific");
        Self {
            rank: self.rank,
            c1: self.c1 + 2 * n,
            c2: self.c2 + r * n * self.c1 + r * n * n,
            normalized: self.normalized && n == 0,
        }
    }
}

/// A direct sum of line bundles, `⊕ O(a_j)`, recorded as the multiset of
/// twists `a_j` sorted descending. The zero module is the empty multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedFreeModule {
    twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(mut twists: Vec<i64>) -> Self {
        twists.sort_unstable_by(|a, b| b.cmp(a));
        Self { twists }
    }

    pub fn zero() -> Self {
        Self { twists: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn is_zero(&self) -> bool {
        self.twists.is_empty()
    }

    /// Twists, sorted descending.
    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    /// Tensor by `O(n)`: every twist shifts by `+n`.
    pub fn twist(&self, n: i64) -> Self {
        Self::new(self.twists.iter().map(|a| a + n).collect())
    }

    /// Dual twisted by `O(twist_by)`: each twist `a` maps to `-a + twist_by`.
    pub fn dual(&self, twist_by: i64) -> Self {
        Self::new(self.twists.iter().map(|a| -a + twist_by).collect())
    }

    pub fn sum_of_twists(&self) -> i64 {
        self.twists.iter().sum()
    }
}

impl std::fmt::Display for GradedFreeModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.twists.is_empty() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.twists.len() {
            let a = self.twists[i];
            let mut mult = 0;
            while i < self.twists.len() && self.twists[i] == a {
                mult += 1;
                i += 1;
            }
            let base = if a == 0 {
                "O".to_string()
            } else {
                format!("O({a})")
            };
            if mult == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{base}^{mult}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// What a free resolution resolves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    CurveIdeal,
    Bundle,
    Other,
}

impl TargetKind {
    pub fn label(&self) -> &'static str {
        match self {
            TargetKind::CurveIdeal => "curve_ideal",
            TargetKind::Bundle => "bundle",
            TargetKind::Other => "other",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "curve_ideal" => Some(TargetKind::CurveIdeal),
            "bundle" => Some(TargetKind::Bundle),
            "other" => Some(TargetKind::Other),
            _ => None,
        }
    }
}

/// An ordered complex of graded free modules over an ambient complete
/// intersection, term 0 nearest the resolved object.
///
/// Bundle targets are the two-term Auslander-Buchsbaum shape over a fourfold
/// containing the threefold: both terms have equal rank (the resolved sheaf
/// is supported on a hypersurface of the ambient).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeResolution {
    ambient: CompleteIntersection,
    terms: Vec<GradedFreeModule>,
    target: TargetKind,
}

impl FreeResolution {
    pub fn new(
        ambient: CompleteIntersection,
        terms: Vec<GradedFreeModule>,
        target: TargetKind,
    ) -> Result<Self, ModelError> {
        if terms.len() < 2 {
            return Err(ModelError::InvalidResolution(format!(
                "need at least two terms, got {}",
                terms.len()
            )));
        }
        if target == TargetKind::Bundle {
            if terms.len() != 2 {
                return Err(ModelError::InvalidResolution(format!(
                    "bundle resolutions have exactly two terms, got {}",
                    terms.len()
                )));
            }
            if terms[0].rank() != terms[1].rank() {
                return Err(ModelError::InvalidResolution(format!(
                    "bundle resolution terms must have equal rank ({} vs {})",
                    terms[0].rank(),
                    terms[1].rank()
                )));
            }
        }
        Ok(Self {
            ambient,
            terms,
            target,
        })
    }

    pub fn ambient(&self) -> &CompleteIntersection {
        &self.ambient
    }

    pub fn terms(&self) -> &[GradedFreeModule] {
        &self.terms
    }

    pub fn target(&self) -> TargetKind {
        self.target
    }

    /// One-line arrow display, leftmost term first:
    /// `0 -> O(-3) -> O(-2)^3 -> O(-1)^3 -> I_C -> 0`.
    pub fn arrow_display(&self) -> String {
        let mut parts = vec!["0".to_string()];
        for t in self.terms.iter().rev() {
            parts.push(t.to_string());
        }
        parts.push(
            match self.target {
                TargetKind::CurveIdeal => "I_C",
                TargetKind::Bundle => "E",
                TargetKind::Other => "M",
            }
            .to_string(),
        );
        parts.push("0".to_string());
        parts.join(" -> ")
    }
}

impl std::fmt::Display for FreeResolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.arrow_display())
    }
}

/// Degree and arithmetic genus of a curve. For a Serre-correspondence pair
/// on a Calabi-Yau threefold these are `c2` and `c1*c2/2 + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveInvariants {
    pub degree: i64,
    pub genus: i64,
}

impl std::fmt::Display for CurveInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "degree {}, genus {}", self.degree, self.genus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn catalog_validates_with_expected_data() {
        let expected = [(5, 1, 4), (8, 2, 5), (9, 2, 5), (12, 3, 6), (16, 4, 7)];
        for (degs, (r, k, n)) in CICY_CATALOG.iter().zip(expected) {
            let x = make_cicy(degs).unwrap();
            assert_eq!(x.r(), r);
            assert_eq!(x.k(), k);
            assert_eq!(x.base().ambient_dim(), n);
            assert_eq!(x.base().dimension(), 3);
            assert_eq!(x.k(), x.r().div_euclid(4));
        }
    }

    #[test]
    fn make_cicy_examples() {
        let x8 = make_cicy(&[2, 4]).unwrap();
        assert_eq!((x8.r(), x8.k(), x8.base().ambient_dim()), (8, 2, 5));
        let x5 = make_cicy(&[5]).unwrap();
        assert_eq!((x5.r(), x5.k(), x5.base().ambient_dim()), (5, 1, 4));
        // degree sum 7 would need N = 6, hence dimension 4: not Calabi-Yau
        assert!(matches!(
            make_cicy(&[3, 4]),
            Err(ModelError::NotCalabiYau { .. })
        ));
        // passes the arithmetic but is a degenerate relabeling, not catalog
        assert!(matches!(
            make_cicy(&[1, 5]),
            Err(ModelError::NotInCatalog { .. })
        ));
        assert!(make_cicy(&[]).is_err());
    }

    #[test]
    fn make_cicy_succeeds_exactly_on_the_catalog() {
        // sweep all degree lists with entries up to 6 and length up to 5
        fn sweep(prefix: &mut Vec<i64>, len: usize, found: &mut Vec<Vec<i64>>) {
            if prefix.len() == len {
                if make_cicy(prefix).is_ok() {
                    found.push(prefix.clone());
                }
                return;
            }
            let lo = prefix.last().copied().unwrap_or(1);
            for d in lo..=6 {
                prefix.push(d);
                sweep(prefix, len, found);
                prefix.pop();
            }
        }
        let mut found = Vec::new();
        for len in 1..=5 {
            sweep(&mut Vec::new(), len, &mut found);
        }
        let expected: Vec<Vec<i64>> = CICY_CATALOG.iter().map(|d| d.to_vec()).collect();
        assert_eq!(found, expected);
    }

    #[test]
    fn make_cicy_accepts_unsorted_input() {
        assert_eq!(make_cicy(&[4, 2]).unwrap(), make_cicy(&[2, 4]).unwrap());
        assert_eq!(make_cicy(&[3, 2, 2]).unwrap().degrees(), &[2, 2, 3]);
    }

    #[test]
    fn fourfold_through_drops_one_degree() {
        let x12 = make_cicy(&[2, 2, 3]).unwrap();
        let y = x12.fourfold_through(3).unwrap();
        assert_eq!(y.degrees(), &[2, 2]);
        assert_eq!(y.dimension(), 4);
        let y2 = x12.fourfold_through(2).unwrap();
        assert_eq!(y2.degrees(), &[2, 3]);
        assert!(x12.fourfold_through(5).is_err());
        let x5 = make_cicy(&[5]).unwrap();
        assert!(x5.fourfold_through(5).unwrap().is_projective_space());
    }

    #[test]
    fn twist_module_examples() {
        let m = GradedFreeModule::new(vec![0, -2, -2]);
        assert_eq!(m.twist(1), GradedFreeModule::new(vec![1, -1, -1]));
        let m = GradedFreeModule::new(vec![-5, -3, -3, -3]);
        assert_eq!(m.twist(0), m);
        let m = GradedFreeModule::new(vec![-7, -4, -4, -4]);
        assert_eq!(m.twist(7), GradedFreeModule::new(vec![0, 3, 3, 3]));
    }

    #[test]
    fn dual_module_examples() {
        let m = GradedFreeModule::new(vec![0, -2, -2, -2]);
        assert_eq!(m.dual(-3), GradedFreeModule::new(vec![-3, -1, -1, -1]));
        let m = GradedFreeModule::new(vec![0, -3, -3, -3]);
        assert_eq!(m.dual(-3), GradedFreeModule::new(vec![-3, 0, 0, 0]));
        // L0 of the quintic line bundle case, dualized by c - 2d = 3 - 10,
        // gives its L1
        let l0 = GradedFreeModule::new(vec![0, -3, -3, -3]);
        assert_eq!(l0.dual(-7), GradedFreeModule::new(vec![-7, -4, -4, -4]));
    }

    #[test]
    fn serre_dual_twist_examples() {
        assert_eq!(serre_dual_twist(-2, 0), 2);
        assert_eq!(serre_dual_twist(1, 0), -1);
        assert_eq!(serre_dual_twist(0, 0), 0);
    }

    #[test]
    fn bundle_class_twisting() {
        let e = BundleClass::new(2, -1, 2, true).unwrap();
        assert!(e.in_classification_range());
        let twisted = e.twist(2, 8);
        assert_eq!((twisted.c1, twisted.c2), (3, 18));
        assert!(!twisted.normalized);
        assert!(!twisted.in_classification_range() || twisted.c1 <= 4);
        assert_eq!(e.twist(0, 8), e);
        assert!(BundleClass::new(0, 0, 0, false).is_err());
        assert!(!BundleClass::new(2, 5, 1, true).unwrap().in_classification_range());
    }

    #[test]
    fn variety_magnitude_bounds() {
        assert!(CompleteIntersection::new(4, vec![1 << 41]).is_err());
        assert!(CompleteIntersection::new(1 << 21, vec![]).is_err());
        assert!(CompleteIntersection::new(1 << 20, vec![1 << 40]).is_ok());
    }

    #[test]
    fn module_display_groups_twists() {
        let m = GradedFreeModule::new(vec![-5, -3, -3, -3]);
        assert_eq!(m.to_string(), "O(-3)^3 + O(-5)");
        assert_eq!(GradedFreeModule::zero().to_string(), "0");
        assert_eq!(GradedFreeModule::new(vec![0, 0]).to_string(), "O^2");
    }

    #[test]
    fn bundle_resolution_shape_enforced() {
        let p4 = CompleteIntersection::projective_space(4);
        let ok = FreeResolution::new(
            p4.clone(),
            vec![
                GradedFreeModule::new(vec![0, -3, -3, -3]),
                GradedFreeModule::new(vec![-7, -4, -4, -4]),
            ],
            TargetKind::Bundle,
        );
        assert!(ok.is_ok());
        let bad = FreeResolution::new(
            p4,
            vec![
                GradedFreeModule::new(vec![0, -3]),
                GradedFreeModule::new(vec![-7, -4, -4]),
            ],
            TargetKind::Bundle,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn arrow_display_reads_left_to_right() {
        let p4 = CompleteIntersection::projective_space(4);
        let res = FreeResolution::new(
            p4,
            vec![
                GradedFreeModule::new(vec![-1, -1, -1]),
                GradedFreeModule::new(vec![-2, -2, -2]),
                GradedFreeModule::new(vec![-3]),
            ],
            TargetKind::CurveIdeal,
        )
        .unwrap();
        assert_eq!(
            res.arrow_display(),
            "0 -> O(-3) -> O(-2)^3 -> O(-1)^3 -> I_C -> 0"
        );
    }

    proptest! {
        #[test]
        fn twist_round_trips(twists in proptest::collection::vec(-20i64..20, 0..8), n in -15i64..15) {
            let m = GradedFreeModule::new(twists);
            prop_assert_eq!(m.twist(n).twist(-n), m);
        }

        #[test]
        fn dual_is_an_involution(twists in proptest::collection::vec(-20i64..20, 0..8), t in -15i64..15) {
            let m = GradedFreeModule::new(twists);
            prop_assert_eq!(m.dual(t).dual(t), m);
        }

        #[test]
        fn serre_dual_twist_is_an_involution(c1 in -10i64..10, n in -30i64..30) {
            prop_assert_eq!(serre_dual_twist(c1, serre_dual_twist(c1, n)), n);
        }
    }
}
