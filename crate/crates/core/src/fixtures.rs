//! Golden fixture corpus: every displayed resolution of the classification,
//! regenerated from generator degrees alone, plus the chi spot values, the
//! reference classification tables and the restriction constructions.
//!
//! The corpus ships as `data/fixtures.json` and doubles as a regression
//! file: alternative fixture files with the same schema can be verified in
//! its place.

use serde::Deserialize;
use thiserror::Error;

use crate::classify::verify_against_reference;
use crate::cohomology::hilbert_function_ci;
use crate::grr::{acm_h0, grr_chi, serre_invariants, H0};
use crate::hilbert::curve_invariants_from_resolution;
use crate::interchange::AmbientDoc;
use crate::model::{make_cicy, Cicy, FreeResolution};
use crate::resolutions::{
    ag_curve_resolution, bundle_resolution, curve_resolution_from_bundle_quintic,
    restrict_construction, theorem_applicable,
};

const BUILTIN: &str = include_str!("../data/fixtures.json");
const SCHEMA: i64 = 1;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("malformed fixture file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported fixture schema {0}")]
    Schema(i64),
    #[error("restriction fixture {0} references unknown case {1}")]
    DanglingInput(String, String),
}

#[derive(Debug, Clone, Deserialize)]
pub struct FixtureCase {
    pub id: String,
    pub group: String,
    pub cicy: Option<Vec<i64>>,
    pub ambient: AmbientDoc,
    pub hypersurface: i64,
    pub c1: i64,
    pub c2: i64,
    pub gens: Vec<i64>,
    pub curve: Vec<Vec<i64>>,
    pub bundle: Option<Vec<Vec<i64>>>,
    pub serre_check: bool,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RestrictionFixture {
    pub id: String,
    pub input: String,
    pub cicy: Vec<i64>,
    pub hypersurface: i64,
    pub new_rank: i64,
    pub shift: i64,
    pub chern: Option<(i64, i64)>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FixtureSet {
    pub schema: i64,
    pub cases: Vec<FixtureCase>,
    pub restrictions: Vec<RestrictionFixture>,
}

impl FixtureSet {
    pub fn case(&self, id: &str) -> Option<&FixtureCase> {
        self.cases.iter().find(|c| c.id == id)
    }
}

/// Parses a fixture file, checking the schema and cross-references.
pub fn parse(json: &str) -> Result<FixtureSet, FixtureError> {
    let set: FixtureSet = serde_json::from_str(json)?;
    if set.schema != SCHEMA {
        return Err(FixtureError::Schema(set.schema));
    }
    for r in &set.restrictions {
        if set.case(&r.input).is_none() {
            return Err(FixtureError::DanglingInput(r.id.clone(), r.input.clone()));
        }
    }
    Ok(set)
}

/// The corpus compiled into the library.
pub fn builtin() -> FixtureSet {
    parse(BUILTIN).expect("builtin fixture corpus is well formed")
}

/// Outcome of one verification step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub group: String,
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(group: &str, id: &str, detail: String) -> Self {
        Self {
            group: group.to_string(),
            id: id.to_string(),
            passed: true,
            detail,
        }
    }

    fn fail(group: &str, id: &str, detail: String) -> Self {
        Self {
            group: group.to_string(),
            id: id.to_string(),
            passed: false,
            detail,
        }
    }
}

fn expected_terms(doc: &[Vec<i64>], res: &FreeResolution) -> bool {
    if doc.len() != res.terms().len() {
        return false;
    }
    doc.iter().zip(res.terms()).all(|(want, got)| {
        let mut want = want.clone();
        want.sort_unstable_by(|a, b| b.cmp(a));
        want == got.twists()
    })
}

/// Regenerates one fixture's displayed resolutions from its generator
/// degrees and compares term by term; exercises the quintic inverse and the
/// Serre pairing where they apply.
pub fn check_case(case: &FixtureCase) -> CheckOutcome {
    let group = &case.group;
    let id = &case.id;
    let ambient = match case.ambient.to_variety() {
        Ok(a) => a,
        Err(e) => return CheckOutcome::fail(group, id, format!("bad ambient: {e}")),
    };

    let curve = match ag_curve_resolution(&case.gens, &ambient) {
        Ok(r) => r,
        Err(e) => return CheckOutcome::fail(group, id, format!("curve regeneration failed: {e}")),
    };
    if !expected_terms(&case.curve, &curve) {
        return CheckOutcome::fail(
            group,
            id,
            format!("curve terms differ: regenerated {}", curve.arrow_display()),
        );
    }

    let applicable = match theorem_applicable(&case.gens, case.hypersurface, case.c1) {
        Ok(a) => a,
        Err(e) => return CheckOutcome::fail(group, id, format!("bad generator data: {e}")),
    };
    if applicable != case.bundle.is_some() {
        return CheckOutcome::fail(
            group,
            id,
            format!(
                "bundle pairing applicability is {applicable} but the fixture {} a bundle",
                if case.bundle.is_some() { "has" } else { "lacks" }
            ),
        );
    }

    if let Some(expected_bundle) = &case.bundle {
        let (bundle, c1) = match bundle_resolution(&case.gens, case.hypersurface, &ambient) {
            Ok(r) => r,
            Err(e) => {
                return CheckOutcome::fail(group, id, format!("bundle regeneration failed: {e}"))
            }
        };
        if c1 != case.c1 {
            return CheckOutcome::fail(group, id, format!("c1 mismatch: {c1} vs {}", case.c1));
        }
        if !expected_terms(expected_bundle, &bundle) {
            return CheckOutcome::fail(
                group,
                id,
                format!("bundle terms differ: regenerated {}", bundle.arrow_display()),
            );
        }
        // on the quintic the curve resolution is also recoverable from L0
        if ambient.is_projective_space() && ambient.ambient_dim() == 4 && case.hypersurface == 5 {
            let mut rest: Vec<i64> = bundle.terms()[0].twists().to_vec();
            match rest.iter().position(|&a| a == 0) {
                Some(i) => {
                    rest.remove(i);
                }
                None => {
                    return CheckOutcome::fail(group, id, "L0 lacks a free summand".to_string())
                }
            }
            let r_i: Vec<i64> = rest.iter().map(|a| -a).collect();
            match curve_resolution_from_bundle_quintic(case.c1, &r_i) {
                Ok(back) if back == curve => {}
                Ok(back) => {
                    return CheckOutcome::fail(
                        group,
                        id,
                        format!("inverse round trip differs: {}", back.arrow_display()),
                    )
                }
                Err(e) => {
                    return CheckOutcome::fail(group, id, format!("inverse round trip failed: {e}"))
                }
            }
        }
    }

    if case.serre_check {
        let Some(cicy_degs) = &case.cicy else {
            return CheckOutcome::fail(group, id, "serre check needs a CICY".to_string());
        };
        let x = match make_cicy(cicy_degs) {
            Ok(x) => x,
            Err(e) => return CheckOutcome::fail(group, id, format!("bad CICY: {e}")),
        };
        let from_res = match curve_invariants_from_resolution(&curve) {
            Ok(v) => v,
            Err(e) => {
                return CheckOutcome::fail(group, id, format!("hilbert polynomial failed: {e}"))
            }
        };
        let from_serre = match serre_invariants(case.c1, case.c2) {
            Ok(v) => v,
            Err(e) => return CheckOutcome::fail(group, id, format!("serre pairing failed: {e}")),
        };
        if from_res != from_serre {
            return CheckOutcome::fail(
                group,
                id,
                format!("serre mismatch on {x}: resolution {from_res}, pairing {from_serre}"),
            );
        }
    }

    CheckOutcome::pass(group, id, "regenerated".to_string())
}

/// Reruns one restriction construction and compares rank, shift and Chern
/// classes.
pub fn check_restriction(fixture: &RestrictionFixture, set: &FixtureSet) -> CheckOutcome {
    const GROUP: &str = "restrictions";
    let id = &fixture.id;
    let Some(input) = set.case(&fixture.input) else {
        return CheckOutcome::fail(GROUP, id, format!("unknown input case {}", fixture.input));
    };
    let ambient = match input.ambient.to_variety() {
        Ok(a) => a,
        Err(e) => return CheckOutcome::fail(GROUP, id, format!("bad ambient: {e}")),
    };
    let x = match make_cicy(&fixture.cicy) {
        Ok(x) => x,
        Err(e) => return CheckOutcome::fail(GROUP, id, format!("bad CICY: {e}")),
    };
    let (res, _) = match bundle_resolution(&input.gens, input.hypersurface, &ambient) {
        Ok(r) => r,
        Err(e) => return CheckOutcome::fail(GROUP, id, format!("input regeneration failed: {e}")),
    };
    let out = match restrict_construction(&res, fixture.hypersurface, &x) {
        Ok(o) => o,
        Err(e) => return CheckOutcome::fail(GROUP, id, format!("restriction failed: {e}")),
    };
    if out.new_rank != fixture.new_rank {
        return CheckOutcome::fail(
            GROUP,
            id,
            format!("rank {} instead of {}", out.new_rank, fixture.new_rank),
        );
    }
    if out.normalization_shift != fixture.shift {
        return CheckOutcome::fail(
            GROUP,
            id,
            format!(
                "shift {} instead of {}",
                out.normalization_shift, fixture.shift
            ),
        );
    }
    if out.inferred_chern != fixture.chern {
        return CheckOutcome::fail(
            GROUP,
            id,
            format!(
                "chern {:?} instead of {:?}",
                out.inferred_chern, fixture.chern
            ),
        );
    }
    CheckOutcome::pass(
        GROUP,
        id,
        format!(
            "rank {}, shift {}, chern {:?}",
            out.new_rank, out.normalization_shift, out.inferred_chern
        ),
    )
}

/// The chi and section-count spot values of the classification.
pub fn chi_spot_checks() -> Vec<CheckOutcome> {
    const GROUP: &str = "chi";
    let mut out = Vec::new();
    let x5 = make_cicy(&[5]).expect("catalog");
    let x8 = make_cicy(&[2, 4]).expect("catalog");
    let none = std::collections::BTreeMap::new();

    let mut check = |id: &str, got: String, want: String| {
        if got == want {
            out.push(CheckOutcome::pass(GROUP, id, got));
        } else {
            out.push(CheckOutcome::fail(
                GROUP,
                id,
                format!("got {got}, want {want}"),
            ));
        }
    };

    let profile: Vec<i64> = (0..3)
        .map(|n| match acm_h0(&x5, 2, 11, n, &none) {
            Ok(H0::Known(v)) => v,
            _ => i64::MIN,
        })
        .collect();
    check("h0 profile of (2,11) on X5", format!("{profile:?}"), "[4, 18, 52]".to_string());

    check(
        "chi of (-2,1) on X8",
        format!("{:?}", grr_chi(&x8, -2, 1)),
        "Ok(-19)".to_string(),
    );
    check(
        "chi of (-1,2) on X8",
        format!("{:?}", grr_chi(&x8, -1, 2)),
        "Ok(-5)".to_string(),
    );
    check(
        "h0 of E(1) for (-1,2) on X8",
        acm_h0(&x8, -1, 2, 1, &none).map(|h| h.to_string()).unwrap_or_default(),
        "6".to_string(),
    );
    // h^0(I_C(1)) = h^0(E(2)) - h^0(O_X(2)) = 23 - 20 = 3
    let h0_e2 = match acm_h0(&x8, -1, 2, 2, &none) {
        Ok(H0::Known(v)) => v,
        _ => i64::MIN,
    };
    let h0_o2 = hilbert_function_ci(x8.base(), 2);
    check(
        "h0 of I_C(1) for the conic on X8",
        format!("{h0_e2} - {h0_o2} = {}", h0_e2 - h0_o2),
        "23 - 20 = 3".to_string(),
    );
    out
}

/// Compares the derived classification tables against the stored reference
/// for all five types.
pub fn classification_checks() -> Vec<CheckOutcome> {
    const GROUP: &str = "classification";
    Cicy::catalog()
        .into_iter()
        .map(|x| {
            let report = verify_against_reference(&x);
            let id = format!("{x}");
            if report.all_agree() {
                CheckOutcome::pass(GROUP, &id, "all rows agree".to_string())
            } else {
                let bad: Vec<String> = report
                    .rows
                    .iter()
                    .filter(|r| !r.agrees)
                    .map(|r| format!("c1={}: computed {}, stored {}", r.c1, r.computed, r.stored))
                    .collect();
                CheckOutcome::fail(GROUP, &id, bad.join("; "))
            }
        })
        .collect()
}

/// Every verification group, in the order they are run.
pub const GROUPS: [&str; 8] = [
    "quintic",
    "x8",
    "x9",
    "x12",
    "quartic",
    "chi",
    "classification",
    "restrictions",
];

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

/// Runs every check of the selected group (or all groups) over a fixture
/// set.
pub fn run_verification(set: &FixtureSet, group: Option<&str>) -> VerificationReport {
    let wanted = |g: &str| group.is_none_or(|want| want == g);
    let mut outcomes = Vec::new();
    for case in &set.cases {
        if wanted(&case.group) {
            outcomes.push(check_case(case));
        }
    }
    if wanted("chi") {
        outcomes.extend(chi_spot_checks());
    }
    if wanted("classification") {
        outcomes.extend(classification_checks());
    }
    if wanted("restrictions") {
        for r in &set.restrictions {
            outcomes.push(check_restriction(r, set));
        }
    }
    VerificationReport { outcomes }
}
