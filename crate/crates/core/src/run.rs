//! Orchestration of every suite over one structure file, and rendering of
//! the resulting report.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::connection::{check_connection_laws, check_identities, identity_residuals, Variant, IDENTITY_CHECKS};
use crate::courant::verify_axioms;
use crate::report::{all_pass, CheckReport, Residual};
use crate::sample::SuiteOptions;
use crate::scalar::ScalarField;
use crate::structure::{StructureFile, Suite};
use crate::theorem::{assess, TheoremReport};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, Default)]
pub struct RunConfig {
    /// Run trials of each suite concurrently.
    pub parallel: bool,
    /// Record wall time per suite; makes the report nondeterministic.
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SuiteReport {
    pub suite: Suite,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<TheoremReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl SuiteReport {
    fn from_checks(suite: Suite, checks: Vec<CheckReport>) -> Self {
        SuiteReport {
            suite,
            status: if all_pass(&checks) { Status::Pass } else { Status::Fail },
            reason: None,
            checks,
            theorem: None,
            wall_ms: None,
        }
    }

    fn skipped(suite: Suite, reason: &str) -> Self {
        SuiteReport {
            suite,
            status: Status::Skipped,
            reason: Some(reason.to_string()),
            checks: Vec::new(),
            theorem: None,
            wall_ms: None,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptionsEcho {
    pub trials: usize,
    pub degree: u32,
    pub seed: u64,
    #[serde(rename = "family-degree")]
    pub family_degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct RunReport {
    pub version: String,
    pub structure_id: String,
    pub input_digest: String,
    pub options: OptionsEcho,
    pub suites: Vec<SuiteReport>,
    pub verdict: Status,
}

impl RunReport {
    pub fn suite(&self, suite: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == suite)
    }

    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    /// 0 when every suite passes, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

pub fn digest(input: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(input)))
}

/// Identity checks on every ordered pair of named sections, with `f = x1`.
fn named_section_identities(sf: &StructureFile) -> Result<Vec<CheckReport>, crate::Error> {
    let f = ScalarField::var(0);
    let mut out = Vec::new();
    for (a, x) in &sf.sections {
        for (b, y) in &sf.sections {
            let residuals = identity_residuals(&sf.triple, &f, x, y)?;
            for (id, r) in IDENTITY_CHECKS.iter().zip(residuals) {
                let id = format!("{id}({a},{b})");
                out.push(CheckReport::from_residual(id, None, &Residual::Section(r), sf.dimension));
            }
        }
    }
    Ok(out)
}

fn run_suite(sf: &StructureFile, suite: Suite, id: &str, opts: &SuiteOptions) -> SuiteReport {
    let hk = &sf.triple;
    let errored = |e: crate::Error| SuiteReport {
        status: Status::Fail,
        reason: Some(e.to_string()),
        ..SuiteReport::skipped(suite, "")
    };
    match suite {
        Suite::Axioms => SuiteReport::from_checks(suite, verify_axioms(sf.dimension, opts)),
        Suite::Certification => SuiteReport::from_checks(suite, hk.certification_reports()),
        Suite::ConnectionLaws => {
            let mut checks = Vec::new();
            for v in Variant::ALL {
                match check_connection_laws(hk, v, opts) {
                    Ok(reports) => checks.extend(reports.into_iter().map(|mut r| {
                        r.check_id = format!("{}[{}]", r.check_id, v.name());
                        r
                    })),
                    Err(e) => return errored(e),
                }
            }
            SuiteReport::from_checks(suite, checks)
        }
        Suite::Identities => {
            match check_identities(hk, opts).and_then(|mut c| {
                c.extend(named_section_identities(sf)?);
                Ok(c)
            }) {
                Ok(checks) => SuiteReport::from_checks(suite, checks),
                Err(e) => errored(e),
            }
        }
        Suite::Theorem => match assess(id, hk, opts, sf.family_degree) {
            Ok(report) => SuiteReport {
                status: if report.is_consistent() { Status::Pass } else { Status::Fail },
                reason: (!report.is_consistent()).then(|| report.violations.join("; ")),
                theorem: Some(report),
                ..SuiteReport::skipped(suite, "")
            },
            Err(e) => errored(e),
        },
    }
}

/// Runs the selected suites in order. A triple that fails certification
/// downgrades every later suite to skipped.
pub fn run(sf: &StructureFile, structure_id: &str, input: &[u8], cfg: &RunConfig) -> RunReport {
    let opts = SuiteOptions {
        parallel: cfg.parallel,
        ..sf.options.clone()
    };
    let certified = sf.triple.is_certified();
    let mut suites = Vec::new();
    for &suite in &sf.checks {
        let needs_certificate = suite > Suite::Certification;
        let start = Instant::now();
        let mut report = if needs_certificate && !certified {
            SuiteReport::skipped(suite, "structure failed certification")
        } else {
            run_suite(sf, suite, structure_id, &opts)
        };
        if cfg.timings {
            report.wall_ms = Some(start.elapsed().as_millis() as u64);
        }
        suites.push(report);
    }
    let verdict = if certified && suites.iter().all(|s| s.status == Status::Pass) {
        Status::Pass
    } else {
        Status::Fail
    };
    RunReport {
        version: VERSION.to_string(),
        structure_id: structure_id.to_string(),
        input_digest: digest(input),
        options: OptionsEcho {
            trials: opts.trials,
            degree: opts.degree,
            seed: opts.seed,
            family_degree: sf.family_degree,
        },
        suites,
        verdict,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Canonical JSON: keys sorted, rationals as exact strings, trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

fn describe_failures(out: &mut String, checks: &[CheckReport]) {
    for c in checks.iter().filter(|c| !c.pass) {
        let trial = c.trial.map(|t| format!(" (trial {t})")).unwrap_or_default();
        let _ = writeln!(out, "    FAIL {}{}", c.check_id, trial);
        if let Some(w) = &c.witness {
            let point: Vec<String> = w.point.iter().map(crate::scalar::format_rational).collect();
            let _ = writeln!(out, "      {} = {}", w.component, w.expression);
            let _ = writeln!(
                out,
                "      at ({}) value {}",
                point.join(", "),
                crate::scalar::format_rational(&w.value)
            );
        }
    }
}

pub fn to_text(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "hkcourant {}  {}", report.version, report.structure_id);
    let _ = writeln!(out, "input {}", report.input_digest);
    let o = &report.options;
    let _ = writeln!(
        out,
        "trials {}  degree {}  seed {}  family-degree {}",
        o.trials, o.degree, o.seed, o.family_degree
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "{:<16} {:<8} {:>7}", "suite", "status", "passed");
    for s in &report.suites {
        let passed = s.checks.iter().filter(|c| c.pass).count();
        let count = if s.checks.is_empty() {
            "-".to_string()
        } else {
            format!("{}/{}", passed, s.checks.len())
        };
        let time = s.wall_ms.map(|ms| format!("  {ms} ms")).unwrap_or_default();
        let _ = writeln!(out, "{:<16} {:<8} {:>7}{}", s.suite.id(), s.status.label(), count, time);
        if let Some(r) = &s.reason {
            let _ = writeln!(out, "    {r}");
        }
        describe_failures(&mut out, &s.checks);
        if let Some(t) = &s.theorem {
            for (key, st) in &t.concomitants {
                let state = if st.vanishes { "vanishes".to_string() } else { "nonzero".to_string() };
                let pair = st
                    .pair
                    .as_ref()
                    .map(|[a, b]| format!(" on ({a}, {b})"))
                    .unwrap_or_default();
                let _ = writeln!(out, "    {key:<5} {state}{pair}");
                if let Some(w) = &st.witness {
                    let point: Vec<String> = w.point.iter().map(crate::scalar::format_rational).collect();
                    let _ = writeln!(
                        out,
                        "          {} = {} at ({}) value {}",
                        w.component,
                        w.expression,
                        point.join(", "),
                        crate::scalar::format_rational(&w.value)
                    );
                }
            }
            let p = &t.parallel;
            let _ = writeln!(
                out,
                "    connections agree {}  parallel I {} J {} K {}  torsion formula {}",
                t.connection_equality, p.i, p.j, p.k, t.torsion_formula
            );
            let verdict = serde_json::to_value(t.verdict).expect("serializes");
            let consistency = serde_json::to_value(t.consistency).expect("serializes");
            let _ = writeln!(
                out,
                "    verdict {}  consistency {}",
                verdict.as_str().unwrap_or_default(),
                consistency.as_str().unwrap_or_default()
            );
        }
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "verdict {}", report.verdict.label());
    out
}

pub fn emit(report: &RunReport, format: Format) -> (String, u8) {
    let text = match format {
        Format::Json => to_json(report),
        Format::Text => to_text(report),
    };
    (text, report.exit_code())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{validate, Example};

    fn small(example: Example, checks: Vec<Suite>) -> StructureFile {
        let mut doc = example.document();
        doc.checks = checks;
        doc.options.trials = 2;
        doc.options.degree = 1;
        validate(&doc).unwrap()
    }

    #[test]
    fn every_selected_suite_appears_once() {
        let sf = small(Example::FlatQuaternionic, vec![Suite::Identities, Suite::Axioms]);
        let r = run(&sf, "flat", b"x", &RunConfig::default());
        let ids: Vec<Suite> = r.suites.iter().map(|s| s.suite).collect();
        assert_eq!(ids, vec![Suite::Axioms, Suite::Identities]);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn uncertified_triple_skips_later_suites() {
        let mut doc = Example::FlatQuaternionic.document();
        doc.structure.k = doc.structure.i.clone().into();
        doc.checks = vec![Suite::Certification, Suite::Identities];
        let sf = validate(&doc).unwrap();
        let r = run(&sf, "bad", b"", &RunConfig::default());
        assert_eq!(r.suites[0].status, Status::Fail);
        assert_eq!(r.suites[1].status, Status::Skipped);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_is_deterministic() {
        let sf = small(Example::FlatQuaternionic, vec![Suite::Axioms, Suite::Certification]);
        let a = emit(&run(&sf, "flat", b"abc", &RunConfig::default()), Format::Json);
        let b = emit(&run(&sf, "flat", b"abc", &RunConfig::default()), Format::Json);
        assert_eq!(a, b);
        assert!(a.0.contains("\"input-digest\": \"sha256:ba7816bf"));
    }

    #[test]
    fn text_lists_suites() {
        let sf = small(Example::FlatQuaternionic, vec![Suite::Certification]);
        let (text, code) = emit(&run(&sf, "flat", b"", &RunConfig::default()), Format::Text);
        assert!(text.contains("certification"));
        assert!(text.ends_with("verdict pass\n"));
        assert_eq!(code, 0);
    }
}
