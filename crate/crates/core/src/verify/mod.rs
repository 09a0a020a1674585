//! Scenario registry: each scenario recomputes one group of facts and
//! reports a list of claims with expected and actual values.

mod scenarios;

use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coset::{EnumerationError, EnumerationLimits, Strategy, DEFAULT_MAX_COSETS};
use crate::designs::DesignError;
use crate::graphs::{GraphError, IsoError, DEFAULT_STEP_CAP};
use crate::models::ModelError;
use crate::perm::checks::CheckError;
use crate::perm::GroupError;

pub const REPORT_FORMAT: &str = "m12sl3-verify-report";
pub const REPORT_VERSION: u32 = 1;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Stated in the published identification.
    Literature,
    /// Obtained by an independent computation.
    Computed,
    /// True by construction or by counting.
    Immediate,
}

impl Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Literature => "literature",
            Basis::Computed => "computed",
            Basis::Immediate => "immediate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub basis: Basis,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Claim {
    pub fn equal<T: Display + PartialEq>(name: impl Into<String>, expected: T, actual: T, basis: Basis) -> Claim {
        Claim {
            name: name.into(),
            pass: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
            basis,
            detail: String::new(),
        }
    }

    pub fn holds(name: impl Into<String>, actual: bool, basis: Basis) -> Claim {
        Claim::equal(name, true, actual, basis)
    }

    pub fn failed(name: impl Into<String>, expected: impl Display, reason: impl Display, basis: Basis) -> Claim {
        Claim {
            name: name.into(),
            expected: expected.to_string(),
            actual: format!("error: {reason}"),
            pass: false,
            basis,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Claim {
        self.detail = detail.into();
        self
    }
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Iso(#[from] IsoError),
}

/// Resource caps for one scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    pub max_cosets: usize,
    pub strategy: Strategy,
    /// Seconds per enumeration.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_cap: Option<f64>,
    pub iso_step_cap: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { max_cosets: DEFAULT_MAX_COSETS, strategy: Strategy::Hlt, time_cap: None, iso_step_cap: DEFAULT_STEP_CAP }
    }
}

impl Settings {
    pub fn limits(&self) -> EnumerationLimits {
        EnumerationLimits {
            max_cosets: self.max_cosets,
            strategy: self.strategy,
            time_cap: self.time_cap.map(Duration::from_secs_f64),
        }
    }

    fn overlay(&self, o: &Overrides) -> Settings {
        Settings {
            max_cosets: o.max_cosets.unwrap_or(self.max_cosets),
            strategy: o.strategy.unwrap_or(self.strategy),
            time_cap: o.time_cap.or(self.time_cap),
            iso_step_cap: o.iso_step_cap.unwrap_or(self.iso_step_cap),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Overrides {
    pub max_cosets: Option<usize>,
    pub strategy: Option<Strategy>,
    pub time_cap: Option<f64>,
    pub iso_step_cap: Option<u64>,
}

/// Run configuration: global settings plus per-scenario overrides.
///
/// ```toml
/// max_cosets = 4000000
/// timing = false
/// [scenarios.theorem-a-orders]
/// strategy = "felsch"
/// max_cosets = 16000000
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    #[serde(flatten)]
    pub base: Settings,
    pub timing: bool,
    pub scenarios: BTreeMap<String, Overrides>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { base: Settings::default(), timing: true, scenarios: BTreeMap::new() }
    }
}

impl VerifyConfig {
    pub fn settings_for(&self, scenario: &str) -> Settings {
        self.scenarios.get(scenario).map_or_else(|| self.base.clone(), |o| self.base.overlay(o))
    }

    /// Names in `scenarios` that are not registered.
    pub fn unknown_overrides(&self) -> Vec<String> {
        self.scenarios.keys().filter(|k| find(k).is_none()).cloned().collect()
    }
}

type Runner = fn(&Settings) -> Result<Vec<Claim>, ScenarioError>;

#[derive(Clone, Copy)]
pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    pub topic: &'static str,
    run: Runner,
}

impl fmt::Debug for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scenario").field("name", &self.name).finish()
    }
}

const REGISTRY: [Scenario; 16] = {
    use scenarios::*;
    [
        Scenario {
            name: "presentation-orders",
            description: "orders of Z*, X*, Y* by enumeration over the trivial subgroup",
            topic: "amalgam presentations",
            run: presentation_orders,
        },
        Scenario {
            name: "theorem-a-orders",
            description: "orders of the four completions F1..F4",
            topic: "completions of the amalgam",
            run: theorem_a_orders,
        },
        Scenario {
            name: "theta-check",
            description: "relators of R_Z, R_X, R_Y under the GF(3) matrices and the group they generate",
            topic: "matrix representation",
            run: theta_check,
        },
        Scenario {
            name: "amalgam-two-classes",
            description: "Aut(Z) and the double cosets Inn(Z) \\ Aut(Z) / Inn(Z)",
            topic: "uniqueness of the amalgam",
            run: amalgam_two_classes,
        },
        Scenario {
            name: "agl23-facts",
            description: "structural facts about AGL2(3), abstractly and in the X* coset image",
            topic: "affine group facts",
            run: agl23_facts,
        },
        Scenario {
            name: "q8-lemma",
            description: "the two quaternion subgroups P, R and K in the F1 and F3 images",
            topic: "quaternion subgroups",
            run: q8_lemma,
        },
        Scenario {
            name: "centralizer-checks",
            description: "C_H(b), W = <P,R>, C_W(b) and O3 in the F1 and F3 images",
            topic: "involution centralizer",
            run: centralizer_checks,
        },
        Scenario {
            name: "burnside-w",
            description: "class and commutator identities of W/<t> under conjugation by b^2",
            topic: "special 2-groups",
            run: burnside_w,
        },
        Scenario {
            name: "feit-thompson-branch",
            description: "conclusion classes for groups with a self-centralizing subgroup of order 3",
            topic: "self-centralizing elements of order 3",
            run: feit_thompson,
        },
        Scenario {
            name: "sl3-geometry",
            description: "SL3(3), the projective plane of order 3 and the stabilizers A1, B1, C1",
            topic: "projective plane model",
            run: sl3_geometry,
        },
        Scenario {
            name: "steiner-build",
            description: "S(12,6,5) from the ternary Golay code and its automorphism group",
            topic: "Steiner system model",
            run: steiner_build,
        },
        Scenario {
            name: "linked-threes",
            description: "linked threes of S(12,6,5) and their stabilizers",
            topic: "Steiner system model",
            run: linked_threes,
        },
        Scenario {
            name: "gamma1-iso",
            description: "the incidence graph of PG(2,3) against the coset graph of SL3(3) on (A1, B1)",
            topic: "graph models",
            run: gamma1_iso,
        },
        Scenario {
            name: "gamma2-iso",
            description: "triples and linked threes against the coset graph of the F1 image on (X*, Y*)",
            topic: "graph models",
            run: gamma2_iso,
        },
        Scenario {
            name: "theorem-b-hypotheses",
            description: "edge-transitivity, stabilizers and fixed trees on both model graphs",
            topic: "amalgams from graphs",
            run: theorem_b,
        },
        Scenario {
            name: "free-identities",
            description: "commutator expansions in the free group, with a perturbed control",
            topic: "commutator identities",
            run: free_identities,
        },
    ]
};

pub fn list_scenarios() -> &'static [Scenario] {
    &REGISTRY
}

pub fn find(name: &str) -> Option<&'static Scenario> {
    REGISTRY.iter().find(|s| s.name == name)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub description: String,
    pub topic: String,
    pub settings: Settings,
    pub claims: Vec<Claim>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

/// Runs one scenario. Errors inside the scenario become a failed claim.
pub fn run_scenario(name: &str, config: &VerifyConfig) -> Result<ScenarioReport, ScenarioError> {
    let s = find(name).ok_or_else(|| ScenarioError::Unknown(name.to_string()))?;
    let settings = config.settings_for(name);
    let start = Instant::now();
    let claims = match (s.run)(&settings) {
        Ok(c) => c,
        Err(e) => vec![Claim::failed("scenario completed", "completed", e, Basis::Immediate)],
    };
    let wall_ms = config.timing.then(|| start.elapsed().as_millis() as u64);
    let pass = !claims.is_empty() && claims.iter().all(|c| c.pass);
    Ok(ScenarioReport {
        scenario: s.name.to_string(),
        description: s.description.to_string(),
        topic: s.topic.to_string(),
        settings,
        claims,
        pass,
        wall_ms,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub format: String,
    pub version: u32,
    pub scenarios: Vec<ScenarioReport>,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

impl RunReport {
    pub fn new(scenarios: Vec<ScenarioReport>) -> RunReport {
        let passed = scenarios.iter().filter(|s| s.pass).count();
        let failed = scenarios.len() - passed;
        RunReport { format: REPORT_FORMAT.into(), version: REPORT_VERSION, scenarios, passed, failed, pass: failed == 0 }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<RunReport, String> {
        let r: RunReport = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if r.format != REPORT_FORMAT || r.version != REPORT_VERSION {
            return Err(format!("unsupported report {} v{}", r.format, r.version));
        }
        Ok(r)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.scenarios {
            let time = s.wall_ms.map(|ms| format!(" ({ms} ms)")).unwrap_or_default();
            let _ = writeln!(out, "[{}] {}{time}", verdict(s.pass), s.scenario);
            for c in &s.claims {
                let _ = write!(out, "  {} {}: expected {}, got {} [{}]", verdict(c.pass), c.name, c.expected, c.actual, c.basis);
                if !c.detail.is_empty() {
                    let _ = write!(out, " ({})", c.detail);
                }
                out.push('\n');
            }
        }
        let _ = writeln!(out, "{} passed, {} failed", self.passed, self.failed);
        out
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Runs the named scenarios in order; `["all"]` means the whole registry.
pub fn run_all(names: &[&str], config: &VerifyConfig) -> Result<RunReport, ScenarioError> {
    let names: Vec<&str> = if names == ["all"] { REGISTRY.iter().map(|s| s.name).collect() } else { names.to_vec() };
    if let Some(bad) = names.iter().find(|n| find(n).is_none()) {
        return Err(ScenarioError::Unknown(bad.to_string()));
    }
    let reports = names.iter().map(|n| run_scenario(n, config)).collect::<Result<_, _>>()?;
    Ok(RunReport::new(reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_shape() {
        assert_eq!(list_scenarios().len(), 16);
        let mut names: Vec<_> = list_scenarios().iter().map(|s| s.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 16);
        assert!(find("gamma2-iso").is_some());
        assert!(find("nope").is_none());
    }

    #[test]
    fn overrides_apply_per_scenario() {
        let json = r#"{"max_cosets": 5000, "timing": false,
            "scenarios": {"theorem-a-orders": {"strategy": "felsch", "max_cosets": 16000000}}}"#;
        let cfg: VerifyConfig = serde_json::from_str(json).unwrap();
        assert!(!cfg.timing);
        assert_eq!(cfg.settings_for("theta-check").max_cosets, 5000);
        let s = cfg.settings_for("theorem-a-orders");
        assert_eq!((s.max_cosets, s.strategy), (16_000_000, Strategy::Felsch));
        assert!(cfg.unknown_overrides().is_empty());
        let bad: VerifyConfig = serde_json::from_str(r#"{"scenarios": {"nope": {}}}"#).unwrap();
        assert_eq!(bad.unknown_overrides(), ["nope"]);
        assert!(serde_json::from_str::<VerifyConfig>(r#"{"max_coset": 1}"#).is_err());
    }

    #[test]
    fn unknown_scenario_is_an_error() {
        let cfg = VerifyConfig::default();
        assert!(matches!(run_scenario("nope", &cfg), Err(ScenarioError::Unknown(_))));
        assert!(matches!(run_all(&["free-identities", "nope"], &cfg), Err(ScenarioError::Unknown(_))));
    }

    #[test]
    fn claims_compare_by_value() {
        assert!(Claim::equal("n", 3, 3, Basis::Immediate).pass);
        let c = Claim::equal("n", 3, 4, Basis::Computed);
        assert!(!c.pass);
        assert_eq!((c.expected.as_str(), c.actual.as_str()), ("3", "4"));
        assert!(!Claim::failed("n", 1, "cap", Basis::Literature).pass);
    }

    #[test]
    fn report_round_trip_and_text() {
        let cfg = VerifyConfig { timing: false, ..VerifyConfig::default() };
        let r = run_all(&["free-identities"], &cfg).unwrap();
        assert!(r.pass, "{}", r.to_text());
        assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);
        assert!(r.to_text().contains("[PASS] free-identities"));
        assert_eq!(run_all(&["free-identities"], &cfg).unwrap().to_json(), r.to_json());
    }
}
