use urnlab::montecarlo::{estimate_with_threshold, frequency_table, ModelSpec, SimModel};
use urnlab::paradox::{evaluate, scenario_by_name, SCENARIO_NAMES};
use urnlab::urn::{next_red_given_prefix, posterior_given_prefix};
use urnlab::{CompositionPrior, DrawSequence, Method, UrnError};

use crate::record::OutputRecord;

/// Failure modes of a command, mapped onto exit statuses by [`CliError::exit_code`].
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<UrnError> for CliError {
    fn from(e: UrnError) -> Self {
        match e {
            UrnError::Domain(_) | UrnError::Conditioning(_) => CliError::Usage(e.to_string()),
            UrnError::Estimation(_) | UrnError::Invariant(_) => CliError::Failed(e.to_string()),
        }
    }
}

/// A method name or `all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    One(Method),
    All,
}

impl std::str::FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(MethodChoice::All);
        }
        s.parse().map(MethodChoice::One).map_err(|e: UrnError| e.to_string())
    }
}

impl MethodChoice {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodChoice::One(m) => vec![m],
            MethodChoice::All => Method::ALL.to_vec(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            MethodChoice::One(m) => m.name(),
            MethodChoice::All => "all",
        }
    }
}

fn require_n(n: u64) -> Result<(), CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
    }
    Ok(())
}

pub fn exact(n: u64, method: MethodChoice) -> Result<OutputRecord, CliError> {
    require_n(n)?;
    let mut record = OutputRecord::new("exact").param("n", n).param("method", method.name());
    for m in method.methods() {
        record.result(m.name(), m.solve(n)?);
    }
    if method == MethodChoice::All {
        let correct: Vec<_> = Method::CORRECT.iter().map(|m| &record.results[m.name()].exact).collect();
        let agree = correct.windows(2).all(|w| w[0] == w[1]);
        record.check("agreement", agree);
    }
    Ok(record)
}

pub fn prefix(n: u64, prefix: &str, with_posterior: bool) -> Result<OutputRecord, CliError> {
    require_n(n)?;
    let draws: DrawSequence = prefix.parse()?;
    let mut record = OutputRecord::new("prefix")
        .param("n", n)
        .param("prefix", &draws);
    record.result("next-red", next_red_given_prefix(n, &draws)?);
    if with_posterior {
        let posterior = posterior_given_prefix(&CompositionPrior::uniform(n)?, &draws)?;
        for (x, w) in posterior.weights() {
            record.result(format!("posterior:x={x}"), w.clone());
        }
    }
    Ok(record)
}

pub struct SimulateArgs {
    pub model: String,
    pub n: u64,
    pub trials: u64,
    pub seed: u64,
    pub z_threshold: f64,
}

pub fn simulate(args: &SimulateArgs) -> Result<OutputRecord, CliError> {
    let kind: SimModel = args.model.parse()?;
    require_n(args.n)?;
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if args.z_threshold.is_nan() || args.z_threshold <= 0.0 {
        return Err(CliError::Usage("--z-threshold must be positive".into()));
    }
    let model = ModelSpec::new(kind, args.n)?;
    let report = estimate_with_threshold(&model, args.trials, args.seed, args.z_threshold)?;
    let mut record = OutputRecord::new("simulate")
        .param("model", kind.name())
        .param("n", args.n)
        .param("trials", args.trials)
        .param("seed", args.seed)
        .param("z_threshold", args.z_threshold);
    record.result("exact-target", report.exact_target.clone());
    if let Some(c) = &report.conditioning {
        record.result("first-red", c.exact_target.clone());
    }
    if kind == SimModel::UniformComposition {
        record.goodness_of_fit = Some(frequency_table(&model, args.trials, args.seed)?);
    }
    record.simulation = Some(report);
    Ok(record)
}

/// One record per `n` in `min..=max`, each checked against the method's n-independent value.
pub fn sweep(min: u64, max: u64, method: MethodChoice) -> Result<Vec<OutputRecord>, CliError> {
    if min < 2 || min > max {
        return Err(CliError::Usage(format!(
            "sweep needs 2 <= --min <= --max, got --min {min} --max {max}"
        )));
    }
    let mut records = Vec::new();
    for n in min..=max {
        for m in method.methods() {
            let value = m.solve(n)?;
            let mut record = OutputRecord::new("sweep").param("n", n).param("method", m.name());
            record.check("expected", value == m.expected());
            record.result(m.name(), value);
            records.push(record);
        }
    }
    Ok(records)
}

pub fn catalog(name: &str) -> Result<OutputRecord, CliError> {
    let scenario = scenario_by_name(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown scenario {name:?}; valid names: {}",
            SCENARIO_NAMES.join(", ")
        ))
    })?;
    let mut record = OutputRecord::new("catalog").param("scenario", name);
    record.result("answer", evaluate(&scenario)?);
    for (label, p) in scenario.outcomes() {
        let tag = match ((scenario.condition())(label), (scenario.target())(label)) {
            (true, true) => "condition+target",
            (true, false) => "condition",
            (false, true) => "target",
            (false, false) => "excluded",
        };
        record.result(format!("outcome:{label}:{tag}"), p.clone());
    }
    Ok(record)
}
