//! Study configuration: the `key=value` config grammar and the resolved
//! spec each study runs from. Command-line flags override file values.

use specabs_core::polybasis::DegreeNorm;
use specabs_core::problems::BenchmarkName;
use specabs_core::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(clippy::enum_variant_names)]
pub enum Study {
    Converge,
    QuadStudy,
    Stats,
    Eval,
    Approx,
}

impl Study {
    pub fn as_str(self) -> &'static str {
        match self {
            Study::Converge => "converge",
            Study::QuadStudy => "quad-study",
            Study::Stats => "stats",
            Study::Eval => "eval",
            Study::Approx => "approx",
        }
    }
}

impl FromStr for Study {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "converge" => Ok(Study::Converge),
            "quad-study" | "quad_study" => Ok(Study::QuadStudy),
            "stats" => Ok(Study::Stats),
            "eval" => Ok(Study::Eval),
            "approx" => Ok(Study::Approx),
            _ => Err(Error::Config(format!("unknown study '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSel {
    Galerkin,
    Collocation,
    Oracle,
}

impl MethodSel {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodSel::Galerkin => "galerkin",
            MethodSel::Collocation => "collocation",
            MethodSel::Oracle => "oracle",
        }
    }
}

impl FromStr for MethodSel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "galerkin" => Ok(MethodSel::Galerkin),
            "collocation" => Ok(MethodSel::Collocation),
            "oracle" => Ok(MethodSel::Oracle),
            _ => Err(Error::Config(format!("unknown method '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleSel {
    Trapezoid,
    Simpson,
    ClenshawCurtis,
    Gauss,
    Padua,
    Tensor,
}

impl RuleSel {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleSel::Trapezoid => "trapezoid",
            RuleSel::Simpson => "simpson",
            RuleSel::ClenshawCurtis => "clenshaw-curtis",
            RuleSel::Gauss => "gauss",
            RuleSel::Padua => "padua",
            RuleSel::Tensor => "tensor",
        }
    }
}

impl FromStr for RuleSel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "trapezoid" => Ok(RuleSel::Trapezoid),
            "simpson" => Ok(RuleSel::Simpson),
            "clenshaw-curtis" | "cc" => Ok(RuleSel::ClenshawCurtis),
            "gauss" | "gauss-legendre" => Ok(RuleSel::Gauss),
            "padua" => Ok(RuleSel::Padua),
            "tensor" | "tensor-cc" => Ok(RuleSel::Tensor),
            _ => Err(Error::Config(format!("unknown rule '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    All,
    Odd,
    Even,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::All => "all",
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }

    pub fn admits(self, k: u32) -> bool {
        match self {
            Parity::All => true,
            Parity::Odd => k % 2 == 1,
            Parity::Even => k % 2 == 0,
        }
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(Parity::All),
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            _ => Err(Error::Config(format!(
                "parity must be all, odd or even, got '{s}'"
            ))),
        }
    }
}

/// Fully resolved study configuration.
#[derive(Debug, Clone)]
pub struct StudySpec {
    pub study: Study,
    pub problem: BenchmarkName,
    pub method: MethodSel,
    pub basis_norm: DegreeNorm,
    pub degree_start: u32,
    pub degree_stop: u32,
    pub degree_step: u32,
    pub parity: Parity,
    pub rule: Option<RuleSel>,
    pub rule_size: Option<u32>,
    pub grid: Option<usize>,
    pub dde_n: u32,
    pub out: Option<PathBuf>,
}

impl StudySpec {
    /// Degrees (or rule sizes) the study sweeps over, parity-filtered.
    pub fn sweep(&self) -> Result<Vec<u32>> {
        if self.degree_step == 0 {
            return Err(Error::Config("degree_step must be positive".into()));
        }
        if self.degree_stop < self.degree_start {
            return Err(Error::Config(format!(
                "degree_stop {} below degree_start {}",
                self.degree_stop, self.degree_start
            )));
        }
        let vals: Vec<u32> = (self.degree_start..=self.degree_stop)
            .step_by(self.degree_step as usize)
            .filter(|&k| self.parity.admits(k))
            .collect();
        if vals.is_empty() {
            return Err(Error::Config(
                "degree sweep is empty after the parity filter".into(),
            ));
        }
        Ok(vals)
    }

    /// Error-grid points per dimension (documented defaults by dimension).
    pub fn grid_per_dim(&self) -> usize {
        self.grid.unwrap_or(match self.problem.dimension() {
            1 => 10_001,
            _ => 201,
        })
    }

    /// Echo of every resolved key, in fixed order, for CSV headers.
    pub fn echo(&self) -> Vec<(String, String)> {
        let mut kv = vec![
            ("study".into(), self.study.as_str().into()),
            ("problem".into(), self.problem.as_str().into()),
            ("method".into(), self.method.as_str().into()),
            (
                "basis_norm".into(),
                match self.basis_norm {
                    DegreeNorm::Total => "total".into(),
                    DegreeNorm::Maximal => "maximal".into(),
                },
            ),
            ("degree_start".into(), self.degree_start.to_string()),
            ("degree_stop".into(), self.degree_stop.to_string()),
            ("degree_step".into(), self.degree_step.to_string()),
            ("parity".into(), self.parity.as_str().into()),
        ];
        kv.push((
            "rule".into(),
            self.rule.map_or("auto".into(), |r| r.as_str().to_string()),
        ));
        kv.push((
            "rule_size".into(),
            self.rule_size.map_or("auto".into(), |s| s.to_string()),
        ));
        kv.push(("grid".into(), self.grid_per_dim().to_string()));
        kv.push(("dde_n".into(), self.dde_n.to_string()));
        kv
    }
}

pub const CONFIG_KEYS: [&str; 13] = [
    "study",
    "problem",
    "method",
    "basis_norm",
    "degree_start",
    "degree_stop",
    "degree_step",
    "parity",
    "rule",
    "rule_size",
    "grid",
    "dde_n",
    "out",
];

/// Raw key=value pairs from a config file.
#[derive(Debug, Default, Clone)]
pub struct RawConfig {
    pub values: BTreeMap<String, String>,
}

impl RawConfig {
    /// Parses the documented grammar: UTF-8 text, one `key=value` per line,
    /// `#` comments, blank lines allowed. Unknown and duplicate keys are
    /// rejected with their line number.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (lineno, raw_line) in text.lines().enumerate() {
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected key=value, got '{raw_line}'",
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if !CONFIG_KEYS.contains(&key.as_str()) {
                return Err(Error::Config(format!(
                    "line {}: unknown key '{key}'",
                    lineno + 1
                )));
            }
            if values.insert(key.clone(), value).is_some() {
                return Err(Error::Config(format!(
                    "line {}: duplicate key '{key}'",
                    lineno + 1
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Flag-level overrides collected by the CLI; every config key has a
/// mirroring flag.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub problem: Option<String>,
    pub method: Option<String>,
    pub basis_norm: Option<String>,
    pub degree_start: Option<u32>,
    pub degree_stop: Option<u32>,
    pub degree_step: Option<u32>,
    pub parity: Option<String>,
    pub rule: Option<String>,
    pub rule_size: Option<u32>,
    pub grid: Option<usize>,
    pub dde_n: Option<u32>,
    pub out: Option<PathBuf>,
}

fn parse_norm(s: &str) -> Result<DegreeNorm> {
    match s.to_ascii_lowercase().as_str() {
        "total" => Ok(DegreeNorm::Total),
        "maximal" | "max" => Ok(DegreeNorm::Maximal),
        _ => Err(Error::Config(format!(
            "basis_norm must be total or maximal, got '{s}'"
        ))),
    }
}

fn parse_u32(key: &str, s: &str) -> Result<u32> {
    s.parse::<u32>()
        .map_err(|_| Error::Config(format!("{key} must be a non-negative integer, got '{s}'")))
}

/// Merges the study name, the config file and the flag overrides into a
/// resolved spec, applying documented defaults.
pub fn resolve(study: Study, raw: &RawConfig, over: &Overrides) -> Result<StudySpec> {
    if let Some(s) = raw.values.get("study") {
        let file_study: Study = s.parse()?;
        if file_study != study {
            return Err(Error::Config(format!(
                "config study '{}' does not match subcommand '{}'",
                file_study.as_str(),
                study.as_str()
            )));
        }
    }
    let field = |key: &str, over_val: Option<&String>| -> Option<String> {
        over_val.cloned().or_else(|| raw.values.get(key).cloned())
    };

    let problem = field("problem", over.problem.as_ref())
        .ok_or_else(|| Error::Config("missing required field 'problem'".into()))?
        .parse::<BenchmarkName>()?;
    let method = match field("method", over.method.as_ref()) {
        Some(s) => s.parse()?,
        None => MethodSel::Galerkin,
    };
    let basis_norm = match field("basis_norm", over.basis_norm.as_ref()) {
        Some(s) => parse_norm(&s)?,
        None => DegreeNorm::Total,
    };
    let degree_start = match field("degree_start", None) {
        _ if over.degree_start.is_some() => over.degree_start.unwrap(),
        Some(s) => parse_u32("degree_start", &s)?,
        None => 1,
    };
    let degree_stop = match field("degree_stop", None) {
        _ if over.degree_stop.is_some() => over.degree_stop.unwrap(),
        Some(s) => parse_u32("degree_stop", &s)?,
        None => 20,
    };
    let degree_step = match field("degree_step", None) {
        _ if over.degree_step.is_some() => over.degree_step.unwrap(),
        Some(s) => parse_u32("degree_step", &s)?,
        None => 1,
    };
    let parity = match field("parity", over.parity.as_ref()) {
        Some(s) => s.parse()?,
        None => Parity::All,
    };
    let rule = match field("rule", over.rule.as_ref()) {
        Some(s) => Some(s.parse::<RuleSel>()?),
        None => None,
    };
    let rule_size = match field("rule_size", None) {
        _ if over.rule_size.is_some() => over.rule_size,
        Some(s) => Some(parse_u32("rule_size", &s)?),
        None => None,
    };
    let grid =
        match field("grid", None) {
            _ if over.grid.is_some() => over.grid,
            Some(s) => Some(s.parse::<usize>().map_err(|_| {
                Error::Config(format!("grid must be a positive integer, got '{s}'"))
            })?),
            None => None,
        };
    let dde_n = match field("dde_n", None) {
        _ if over.dde_n.is_some() => over.dde_n.unwrap(),
        Some(s) => parse_u32("dde_n", &s)?,
        None => 20,
    };
    let out = over
        .out
        .clone()
        .or_else(|| raw.values.get("out").map(PathBuf::from));

    let spec = StudySpec {
        study,
        problem,
        method,
        basis_norm,
        degree_start,
        degree_stop,
        degree_step,
        parity,
        rule,
        rule_size,
        grid,
        dde_n,
        out,
    };
    validate(&spec)?;
    Ok(spec)
}

fn validate(spec: &StudySpec) -> Result<()> {
    if spec.method == MethodSel::Oracle && spec.problem.dimension() != 1 {
        return Err(Error::Config(format!(
            "method 'oracle' is only defined for the 1-D benchmarks, not {}",
            spec.problem
        )));
    }
    if let Some(rule) = spec.rule {
        let rule_dim = match rule {
            RuleSel::Padua | RuleSel::Tensor => 2,
            _ => 1,
        };
        if rule_dim != spec.problem.dimension() {
            return Err(Error::Config(format!(
                "rule '{}' is {rule_dim}-D but problem {} is {}-D",
                rule.as_str(),
                spec.problem,
                spec.problem.dimension()
            )));
        }
    }
    if spec.dde_n < 4 && spec.problem.dimension() == 2 {
        return Err(Error::Config(format!(
            "dde_n must be >= 4, got {}",
            spec.dde_n
        )));
    }
    if let Some(g) = spec.grid {
        if g < 2 {
            return Err(Error::Config(format!(
                "grid must be >= 2 points per dimension, got {g}"
            )));
        }
    }
    spec.sweep()?;
    Ok(())
}

impl fmt::Display for StudySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.echo() {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
