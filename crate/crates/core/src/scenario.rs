//! Experiment descriptions in a flat `key = value` format.
//!
//! ```text
//! # comment
//! qg       = 0, 0.5e7, 1.5e7    # rad/s², one run per entry
//! t_end    = 25                 # λt
//! backend  = ode
//! ```
//!
//! | key | unit | default |
//! |---|---|---|
//! | `q` | 1/m | `1e7` |
//! | `mass` | kg | `1e-26` |
//! | `g` | m/s² | `9.8` |
//! | `lambda` | rad/s | `1e6` |
//! | `omega_rec` | rad/s | `0.5e6`, or `ħq²/2M` when `q` or `mass` is set alone |
//! | `delta0` | rad/s | `8.5e7` |
//! | `sigma0` | scaled momentum | `1` |
//! | `alpha.re`, `alpha.im` | | `5`, `0` |
//! | `qg` | rad/s² (list) | `0, 0.5e7, 1.5e7` |
//! | `t_start`, `t_end`, `n_samples` | λt | `0`, `25`, `2000` |
//! | `t_at` | λt | unset; a single instant instead of a sweep |
//! | `backend` | `analytic`, `ode`, `both` | `ode` |
//! | `outputs` | list of `inversion`, `entropy`, `qgrid`, `cat_report` | `inversion, entropy` |
//! | `qgrid.extent`, `qgrid.n` | | `9`, `201` |
//! | `momentum.nodes` | | `32` |
//! | `tol.ode`, `tol.quad` | | `1e-10`, `1e-12` |
//! | `fock.nmax` | | derived from `alpha` |
//! | `literal_paper_mode` | bool | `false` |

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt::Write as _;

use thiserror::Error;

use crate::observables::QGridSpec;
use crate::ode::{MAX_TOL, MIN_TOL};
use crate::sweep::Backend;
use crate::PhysicalParams;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScenarioError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid scenario: {0}")]
    Validation(String),
    #[error("unknown builtin scenario `{name}` (valid: {})", valid.join(", "))]
    UnknownBuiltin { name: String, valid: Vec<&'static str> },
}

/// Sampled instants in scaled time `λt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeSpec {
    Sweep { start: f64, end: f64, samples: usize },
    Instant(f64),
}

impl TimeSpec {
    pub fn lambda_times(&self) -> Vec<f64> {
        match *self {
            TimeSpec::Sweep { start, end, samples } => {
                let h = (end - start) / (samples - 1) as f64;
                (0..samples).map(|i| if i + 1 == samples { end } else { start + i as f64 * h }).collect()
            }
            TimeSpec::Instant(t) => vec![t],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendChoice {
    Analytic,
    Ode,
    Both,
}

impl BackendChoice {
    pub fn backends(self) -> Vec<Backend> {
        match self {
            BackendChoice::Analytic => vec![Backend::Analytic],
            BackendChoice::Ode => vec![Backend::Ode],
            BackendChoice::Both => vec![Backend::Analytic, Backend::Ode],
        }
    }

    fn name(self) -> &'static str {
        match self {
            BackendChoice::Analytic => "analytic",
            BackendChoice::Ode => "ode",
            BackendChoice::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Output {
    Inversion,
    Entropy,
    Qgrid,
    CatReport,
}

impl Output {
    pub const ALL: [Output; 4] = [Output::Inversion, Output::Entropy, Output::Qgrid, Output::CatReport];

    pub fn name(self) -> &'static str {
        match self {
            Output::Inversion => "inversion",
            Output::Entropy => "entropy",
            Output::Qgrid => "qgrid",
            Output::CatReport => "cat_report",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub params: PhysicalParams,
    /// Gravitational acceleration, m/s². Informational; runs are set by `qg_list`.
    pub g: f64,
    pub qg_list: Vec<f64>,
    pub time: TimeSpec,
    pub backend: BackendChoice,
    pub outputs: BTreeSet<Output>,
    pub qgrid: QGridSpec,
    pub momentum_nodes: usize,
    pub tol_ode: f64,
    pub tol_quad: f64,
    /// Fock cutoff; `None` picks one from `|α|`.
    pub fock_nmax: Option<usize>,
    pub literal_paper_mode: bool,
}

pub const REFERENCE_QG: [f64; 3] = [0.0, 0.5e7, 1.5e7];

impl Default for Scenario {
    fn default() -> Self {
        Self {
            params: PhysicalParams::reference(0.0),
            g: 9.8,
            qg_list: REFERENCE_QG.to_vec(),
            time: TimeSpec::Sweep { start: 0.0, end: 25.0, samples: 2000 },
            backend: BackendChoice::Ode,
            outputs: [Output::Inversion, Output::Entropy].into_iter().collect(),
            qgrid: QGridSpec::default(),
            momentum_nodes: 32,
            tol_ode: 1e-10,
            tol_quad: 1e-12,
            fock_nmax: None,
            literal_paper_mode: false,
        }
    }
}

pub const BUILTINS: [&str; 3] = ["fig1", "fig2", "fig3"];

/// Half-revival instant `λt = 7π/2` used for the phase-space snapshots.
pub const HALF_REVIVAL_LT: f64 = 3.5 * PI;

pub fn builtin_scenario(name: &str) -> Result<Scenario, ScenarioError> {
    let base = Scenario::default();
    let only = |o: Output| [o].into_iter().collect::<BTreeSet<_>>();
    match name {
        "fig1" => Ok(Scenario { outputs: only(Output::Inversion), ..base }),
        "fig2" => Ok(Scenario { outputs: only(Output::Entropy), ..base }),
        "fig3" => Ok(Scenario { time: TimeSpec::Instant(HALF_REVIVAL_LT), outputs: only(Output::Qgrid), ..base }),
        _ => Err(ScenarioError::UnknownBuiltin { name: name.to_string(), valid: BUILTINS.to_vec() }),
    }
}

impl Scenario {
    pub fn params_for(&self, qg: f64) -> PhysicalParams {
        self.params.with_qg(qg)
    }

    pub fn lambda_times(&self) -> Vec<f64> {
        self.time.lambda_times()
    }

    /// Sample instants in seconds.
    pub fn times(&self) -> Vec<f64> {
        let s = self.params.time_scale();
        self.lambda_times().into_iter().map(|lt| lt / s).collect()
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let bad = |m: String| Err(ScenarioError::Validation(m));
        self.params.with_qg(0.0).validate().map_err(|e| ScenarioError::Validation(e.to_string()))?;
        match self.time {
            TimeSpec::Sweep { start, end, samples } => {
                if !(start >= 0.0 && start.is_finite()) {
                    return bad(format!("t_start must be >= 0, got {start}"));
                }
                if !(end > start && end.is_finite()) {
                    return bad(format!("t_end must satisfy t_end > t_start, got t_end = {end}, t_start = {start}"));
                }
                if samples < 2 {
                    return bad(format!("n_samples must be >= 2, got {samples}"));
                }
            }
            TimeSpec::Instant(t) => {
                if !(t >= 0.0 && t.is_finite()) {
                    return bad(format!("t_at must be >= 0, got {t}"));
                }
            }
        }
        if self.qg_list.is_empty() {
            return bad("qg list is empty".into());
        }
        if let Some(v) = self.qg_list.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
            return bad(format!("qg entries must be finite and >= 0, got {v}"));
        }
        if !self.g.is_finite() {
            return bad(format!("g must be finite, got {}", self.g));
        }
        self.qgrid.validate().map_err(|e| ScenarioError::Validation(e.to_string()))?;
        if self.momentum_nodes == 0 {
            return bad("momentum.nodes must be >= 1".into());
        }
        if !(MIN_TOL..=MAX_TOL).contains(&self.tol_ode) {
            return bad(format!("tol.ode must lie in [{MIN_TOL:e}, {MAX_TOL:e}], got {:e}", self.tol_ode));
        }
        if !(self.tol_quad > 0.0 && self.tol_quad < 1.0) {
            return bad(format!("tol.quad must lie in (0, 1), got {:e}", self.tol_quad));
        }
        if self.outputs.is_empty() {
            return bad("outputs is empty".into());
        }
        if matches!(self.time, TimeSpec::Sweep { .. }) {
            if let Some(o) = self.outputs.iter().find(|o| matches!(o, Output::Qgrid | Output::CatReport)) {
                return bad(format!("output {} needs a single instant (t_at)", o.name()));
            }
        }
        Ok(())
    }
}

/// A parsed scenario plus the keys that were filled from defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub scenario: Scenario,
    pub defaulted: Vec<&'static str>,
}

const KEYS: [&str; 23] = [
    "q",
    "mass",
    "g",
    "lambda",
    "omega_rec",
    "delta0",
    "sigma0",
    "alpha.re",
    "alpha.im",
    "qg",
    "t_start",
    "t_end",
    "n_samples",
    "t_at",
    "backend",
    "outputs",
    "qgrid.extent",
    "qgrid.n",
    "momentum.nodes",
    "tol.ode",
    "tol.quad",
    "fock.nmax",
    "literal_paper_mode",
];

struct Entry {
    line: usize,
    column: usize,
    value: String,
}

fn parse_err(e: &Entry, message: String) -> ScenarioError {
    ScenarioError::Parse { line: e.line, column: e.column, message }
}

fn number(e: &Entry) -> Result<f64, ScenarioError> {
    e.value.parse::<f64>().map_err(|_| parse_err(e, format!("expected a number, got `{}`", e.value)))
}

fn count(e: &Entry) -> Result<usize, ScenarioError> {
    e.value.parse::<usize>().map_err(|_| parse_err(e, format!("expected a non-negative integer, got `{}`", e.value)))
}

fn list(e: &Entry) -> impl Iterator<Item = &str> {
    e.value.split(',').map(str::trim)
}

pub fn parse_scenario(text: &str) -> Result<Parsed, ScenarioError> {
    let mut entries: BTreeMap<&'static str, Entry> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let Some(eq) = content.find('=') else {
            return Err(ScenarioError::Parse { line, column: indent + 1, message: "expected `key = value`".into() });
        };
        let key = content[..eq].trim();
        let after = &content[eq + 1..];
        let value = after.trim();
        let column = eq + 2 + (after.len() - after.trim_start().len());
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(ScenarioError::Parse { line, column: indent + 1, message: format!("unknown key `{key}`") });
        };
        if value.is_empty() {
            return Err(ScenarioError::Parse { line, column, message: format!("missing value for `{key}`") });
        }
        if let Some(prev) = entries.get(known) {
            return Err(ScenarioError::Parse {
                line,
                column: indent + 1,
                message: format!("duplicate key `{key}` (first set on line {})", prev.line),
            });
        }
        entries.insert(known, Entry { line, column, value: value.to_string() });
    }

    let mut s = Scenario::default();
    let mut defaulted = Vec::new();
    for key in KEYS.iter() {
        let Some(e) = entries.get(key) else {
            defaulted.push(*key);
            continue;
        };
        match *key {
            "q" => s.params.q = number(e)?,
            "mass" => s.params.mass = number(e)?,
            "g" => s.g = number(e)?,
            "lambda" => s.params.lambda = number(e)?,
            "omega_rec" => s.params.omega_rec = number(e)?,
            "delta0" => s.params.delta0 = number(e)?,
            "sigma0" => s.params.sigma0 = number(e)?,
            "alpha.re" => s.params.alpha.re = number(e)?,
            "alpha.im" => s.params.alpha.im = number(e)?,
            "qg" => {
                s.qg_list = list(e)
                    .map(|v| {
                        v.parse::<f64>()
                            .map_err(|_| parse_err(e, format!("expected a number in the qg list, got `{v}`")))
                    })
                    .collect::<Result<_, _>>()?
            }
            "t_start" | "t_end" | "n_samples" | "t_at" => {}
            "backend" => {
                s.backend = match e.value.as_str() {
                    "analytic" => BackendChoice::Analytic,
                    "ode" => BackendChoice::Ode,
                    "both" => BackendChoice::Both,
                    other => return Err(parse_err(e, format!("backend must be analytic, ode or both, got `{other}`"))),
                }
            }
            "outputs" => {
                s.outputs = list(e)
                    .map(|v| {
                        Output::ALL
                            .into_iter()
                            .find(|o| o.name() == v)
                            .ok_or_else(|| parse_err(e, format!("unknown output `{v}`")))
                    })
                    .collect::<Result<_, _>>()?
            }
            "qgrid.extent" => s.qgrid.extent = number(e)?,
            "qgrid.n" => s.qgrid.n = count(e)?,
            "momentum.nodes" => s.momentum_nodes = count(e)?,
            "tol.ode" => s.tol_ode = number(e)?,
            "tol.quad" => s.tol_quad = number(e)?,
            "fock.nmax" => s.fock_nmax = Some(count(e)?),
            "literal_paper_mode" => {
                s.literal_paper_mode = match e.value.as_str() {
                    "true" => true,
                    "false" => false,
                    other => return Err(parse_err(e, format!("expected true or false, got `{other}`"))),
                }
            }
            _ => unreachable!(),
        }
    }

    let has = |k: &str| entries.contains_key(k);
    if has("t_at") {
        if let Some(k) = ["t_start", "t_end", "n_samples"].into_iter().find(|k| has(k)) {
            return Err(ScenarioError::Validation(format!("t_at excludes {k}")));
        }
        s.time = TimeSpec::Instant(number(&entries["t_at"])?);
    } else {
        let TimeSpec::Sweep { mut start, mut end, mut samples } = s.time else { unreachable!() };
        if let Some(e) = entries.get("t_start") {
            start = number(e)?;
        }
        if let Some(e) = entries.get("t_end") {
            end = number(e)?;
        }
        if let Some(e) = entries.get("n_samples") {
            samples = count(e)?;
        }
        s.time = TimeSpec::Sweep { start, end, samples };
    }

    if !has("omega_rec") && (has("q") || has("mass")) {
        s.params.omega_rec = s.params.recoil_from_q_mass();
        defaulted.retain(|k| *k != "omega_rec");
        log::info!("omega_rec derived from q and mass: {:e} rad/s", s.params.omega_rec);
    } else if has("omega_rec") && has("q") && has("mass") && s.params.recoil_mismatch() > 1e-6 {
        log::warn!("omega_rec differs from hbar q^2 / 2M by {:.3}%", 100.0 * s.params.recoil_mismatch());
    }

    s.validate()?;
    for k in &defaulted {
        log::debug!("scenario key `{k}` takes its default");
    }
    Ok(Parsed { scenario: s, defaulted })
}

/// Canonical text form; `parse_scenario` reproduces the same scenario.
pub fn serialize_scenario(s: &Scenario) -> String {
    let mut out = String::new();
    let p = &s.params;
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(out, "{k} = {v}");
    };
    kv("q", format!("{:e}", p.q));
    kv("mass", format!("{:e}", p.mass));
    kv("g", format!("{:e}", s.g));
    kv("lambda", format!("{:e}", p.lambda));
    kv("omega_rec", format!("{:e}", p.omega_rec));
    kv("delta0", format!("{:e}", p.delta0));
    kv("sigma0", format!("{:e}", p.sigma0));
    kv("alpha.re", format!("{:e}", p.alpha.re));
    kv("alpha.im", format!("{:e}", p.alpha.im));
    kv("qg", s.qg_list.iter().map(|v| format!("{v:e}")).collect::<Vec<_>>().join(", "));
    match s.time {
        TimeSpec::Sweep { start, end, samples } => {
            kv("t_start", format!("{start:e}"));
            kv("t_end", format!("{end:e}"));
            kv("n_samples", samples.to_string());
        }
        TimeSpec::Instant(t) => kv("t_at", format!("{t:e}")),
    }
    kv("backend", s.backend.name().to_string());
    kv("outputs", s.outputs.iter().map(|o| o.name()).collect::<Vec<_>>().join(", "));
    kv("qgrid.extent", format!("{:e}", s.qgrid.extent));
    kv("qgrid.n", s.qgrid.n.to_string());
    kv("momentum.nodes", s.momentum_nodes.to_string());
    kv("tol.ode", format!("{:e}", s.tol_ode));
    kv("tol.quad", format!("{:e}", s.tol_quad));
    if let Some(n) = s.fock_nmax {
        kv("fock.nmax", n.to_string());
    }
    kv("literal_paper_mode", s.literal_paper_mode.to_string());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn empty_document_is_the_default() {
        let parsed = parse_scenario("").unwrap();
        assert_eq!(parsed.scenario, Scenario::default());
        assert_eq!(parsed.defaulted.len(), KEYS.len());
        let p = parsed.scenario.params;
        assert_eq!((p.q, p.mass, p.lambda, p.omega_rec, p.delta0, p.sigma0), (1e7, 1e-26, 1e6, 0.5e6, 8.5e7, 1.0));
        assert_eq!(p.alpha_sq(), 25.0);
        assert_eq!(parsed.scenario.g, 9.8);
        assert_eq!(parsed.scenario.qg_list, vec![0.0, 0.5e7, 1.5e7]);
    }

    #[test]
    fn comments_and_overrides() {
        let doc = "# header\n\n  qg = 1.5e7   # gravity on\nbackend=both\noutputs = entropy, qgrid\nt_at = 11\n";
        let parsed = parse_scenario(doc).unwrap();
        assert_eq!(parsed.scenario.qg_list, vec![1.5e7]);
        assert_eq!(parsed.scenario.backend, BackendChoice::Both);
        assert_eq!(parsed.scenario.outputs, [Output::Entropy, Output::Qgrid].into_iter().collect());
        assert!(!parsed.defaulted.contains(&"qg"));
        assert!(parsed.defaulted.contains(&"delta0"));
    }

    #[test]
    fn time_validation() {
        let err = parse_scenario("t_end = -1").unwrap_err();
        assert!(matches!(&err, ScenarioError::Validation(m) if m.contains("t_end > t_start")), "{err}");
        assert!(parse_scenario("n_samples = 1").is_err());
        assert!(parse_scenario("t_at = 3\nt_end = 4").is_err());
        let s = parse_scenario("t_at = 2.5").unwrap().scenario;
        assert_eq!(s.time, TimeSpec::Instant(2.5));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_scenario("q = 1e7\n  lamda = 3").unwrap_err(),
            ScenarioError::Parse { line: 2, column: 3, message: "unknown key `lamda`".into() }
        );
        assert_eq!(
            parse_scenario("delta0 =  abc").unwrap_err(),
            ScenarioError::Parse { line: 1, column: 11, message: "expected a number, got `abc`".into() }
        );
        assert!(matches!(parse_scenario("just words"), Err(ScenarioError::Parse { line: 1, column: 1, .. })));
        assert!(matches!(parse_scenario("q = 1\nq = 2"), Err(ScenarioError::Parse { line: 2, .. })));
        assert!(matches!(parse_scenario("q ="), Err(ScenarioError::Parse { .. })));
    }

    #[test]
    fn validation_failures() {
        for doc in [
            "outputs = qgrid",
            "qg = -1",
            "sigma0 = 0",
            "tol.ode = 1e-3",
            "momentum.nodes = 0",
            "qgrid.n = 2",
            "lambda = -1",
        ] {
            assert!(matches!(parse_scenario(doc), Err(ScenarioError::Validation(_))), "{doc}");
        }
    }

    #[test]
    fn recoil_is_derived_when_not_given() {
        let s = parse_scenario("mass = 2e-26").unwrap().scenario;
        assert!((s.params.omega_rec - s.params.recoil_from_q_mass()).abs() < 1e-9 * s.params.omega_rec);
        let s = parse_scenario("mass = 2e-26\nomega_rec = 1e5").unwrap().scenario;
        assert_eq!(s.params.omega_rec, 1e5);
    }

    #[test]
    fn builtins() {
        let f1 = builtin_scenario("fig1").unwrap();
        assert_eq!(f1.params.delta0, 8.5e7);
        assert_eq!(f1.lambda_times().len(), 2000);
        assert_eq!(f1.outputs, [Output::Inversion].into_iter().collect());
        let f3 = builtin_scenario("fig3").unwrap();
        assert_eq!(f3.times(), vec![7.0 * PI / 2e6]);
        assert!((f3.times()[0] - 7.0 * PI / 2e6).abs() < 1e-20);
        let err = builtin_scenario("fig9").unwrap_err();
        assert!(err.to_string().contains("fig1, fig2, fig3"));
        for name in BUILTINS {
            builtin_scenario(name).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn sweep_endpoints_are_exact() {
        let t = TimeSpec::Sweep { start: 0.0, end: 25.0, samples: 2000 }.lambda_times();
        assert_eq!((t[0], t[1999]), (0.0, 25.0));
        assert!(t.windows(2).all(|w| w[1] > w[0]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_scenario() -> impl Strategy<Value = Scenario> {
            let physical = (
                1e5f64..1e9,
                1e-28f64..1e-24,
                0.0f64..1e7,
                1e3f64..1e9,
                -1e9f64..1e9,
                0.1f64..5.0,
                -6.0f64..6.0,
                -6.0f64..6.0,
            );
            let time = prop_oneof![
                (0.0f64..10.0, 0.1f64..50.0, 2usize..5000).prop_map(|(a, w, n)| TimeSpec::Sweep {
                    start: a,
                    end: a + w,
                    samples: n
                }),
                (0.0f64..50.0).prop_map(TimeSpec::Instant),
            ];
            let misc = (
                prop::collection::vec(0.0f64..1e8, 1..5),
                prop::sample::select(vec![BackendChoice::Analytic, BackendChoice::Ode, BackendChoice::Both]),
                prop::sample::subsequence(Output::ALL.to_vec(), 1..=4),
                (0.5f64..20.0, 3usize..400, 1usize..128),
                (1e-12f64..1e-6, 1e-14f64..1e-3, prop::option::of(0usize..300), any::<bool>(), -20.0f64..20.0),
            );
            (physical, time, misc).prop_map(
                |(
                    (q, mass, omega_rec, lambda, delta0, sigma0, are, aim),
                    time,
                    (qg, backend, outs, (ext, n, nodes), (tode, tquad, nmax, lit, g)),
                )| {
                    let mut outputs: BTreeSet<Output> = outs.into_iter().collect();
                    if matches!(time, TimeSpec::Sweep { .. }) {
                        outputs.retain(|o| matches!(o, Output::Inversion | Output::Entropy));
                        if outputs.is_empty() {
                            outputs.insert(Output::Inversion);
                        }
                    }
                    Scenario {
                        params: PhysicalParams {
                            q,
                            mass,
                            qg: 0.0,
                            lambda,
                            omega_rec,
                            delta0,
                            sigma0,
                            alpha: C64::new(are, aim),
                        },
                        g,
                        qg_list: qg,
                        time,
                        backend,
                        outputs,
                        qgrid: QGridSpec { extent: ext, n },
                        momentum_nodes: nodes,
                        tol_ode: tode,
                        tol_quad: tquad,
                        fock_nmax: nmax,
                        literal_paper_mode: lit,
                    }
                },
            )
        }

        proptest! {
            #[test]
            fn round_trip(s in arb_scenario()) {
                s.validate().unwrap();
                let text = serialize_scenario(&s);
                let back = parse_scenario(&text).unwrap();
                prop_assert_eq!(&back.scenario, &s);
                let optional = ["fock.nmax", "t_start", "t_end", "n_samples", "t_at"];
                prop_assert!(back.defaulted.iter().all(|k| optional.contains(k)));
                prop_assert_eq!(serialize_scenario(&back.scenario), text);
            }
        }
    }
}
