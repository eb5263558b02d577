//! Command-line front end: argument parsing, dispatch and rendering.
//!
//! [`run`] never exits the process, so tests can drive it in-process. JSON
//! output goes through `serde_json::Value`, whose maps are key-sorted.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use delpezzo_core::atlas::enumerate_minus_one_classes;
use delpezzo_core::exact::format_q;
use delpezzo_core::linear_systems::{nonempty_at_general_points, sample_pencil, LinearSystemSpec};
use delpezzo_core::positivity::{
    verify_ten_point_example, verify_thirteen_point_example, Certificate, PositivityReport, DEFAULT_SCAN_DEGREE,
};
use delpezzo_core::seshadri::{
    brute_force_seshadri, count_anticanonical_nodes, seshadri_constant, theorem_table, DEFAULT_D_MAX,
};
use delpezzo_core::{PointSpec, SeshadriResult};
use serde_json::{json, Value};

/// Exit code for malformed command lines.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for errors raised by the computation.
pub const EXIT_DOMAIN: i32 = 1;

/// Environment variable overriding the oracle's default degree bound.
pub const DMAX_ENV: &str = "SESHADRI_DMAX";

#[derive(Parser, Debug)]
#[command(name = "delpezzo", version, about = "Seshadri constants of -K on del Pezzo surfaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Seshadri constant of -K at a point of X_r.
    Seshadri {
        #[arg(long)]
        r: usize,
        /// general, node, or distinguished:<d>:<a1,...>
        #[arg(long, default_value = "general")]
        point: String,
    },
    /// Every case of the theorem with its witness.
    TheoremTable,
    /// The (-1)-classes of X_r.
    Exceptional {
        #[arg(long)]
        r: usize,
    },
    /// Expected dimension of plane curves of degree d with assigned multiplicities.
    ExpectedDim {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        mults: Vec<i64>,
    },
    /// Brute-force infimum over candidate curves, compared with the engine.
    Oracle {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "general")]
        point: String,
        #[arg(long, env = DMAX_ENV, default_value_t = DEFAULT_D_MAX, allow_negative_numbers = true)]
        dmax: i64,
    },
    /// Number of nodal members in a general pencil of cubics.
    PencilNodes {
        /// Seed of a random rational 8-point sample to certify the count.
        #[arg(long)]
        sample: Option<u64>,
    },
    /// Limits of rational-curve positivity on blow-ups at 10 or 13 points.
    Counterexample {
        #[arg(value_enum)]
        which: Counterexample,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Counterexample {
    TenPoints,
    ThirteenPoints,
}

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub command: String,
    pub parameters: Value,
    /// Payload on success, `(kind, message)` on a domain error.
    pub outcome: std::result::Result<Value, (String, String)>,
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    /// JSON document printed under `--format json`.
    pub fn to_json(&self) -> Value {
        let mut doc = json!({
            "command": self.command,
            "parameters": self.parameters,
            "exit_code": self.exit_code,
        });
        match &self.outcome {
            Ok(v) => doc["result"] = v.clone(),
            Err((kind, message)) => doc["error"] = json!({ "kind": kind, "message": message }),
        }
        doc
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return CommandResult {
                command: String::new(),
                parameters: Value::Null,
                outcome: Err(("usage".into(), e.kind().to_string())),
                exit_code: code,
                stdout,
                stderr,
            };
        }
    };
    execute(&cli)
}

/// Runs an already parsed command line.
pub fn execute(cli: &Cli) -> CommandResult {
    let (command, parameters) = describe(&cli.command);
    let computed = compute(&cli.command);
    let exit_code = if computed.is_ok() { 0 } else { EXIT_DOMAIN };
    let mut res = CommandResult {
        command,
        parameters,
        outcome: Ok(Value::Null),
        exit_code,
        stdout: String::new(),
        stderr: String::new(),
    };
    match computed {
        Ok(out) => {
            res.outcome = Ok(out.json);
            res.stdout = match cli.format {
                Format::Json => pretty(&res.to_json()),
                Format::Text => out.text,
            };
        }
        Err(e) => {
            res.outcome = Err((e.kind().to_string(), e.to_string()));
            match cli.format {
                Format::Json => res.stdout = pretty(&res.to_json()),
                Format::Text => res.stderr = format!("error [{}]: {e}\n", e.kind()),
            }
        }
    }
    res
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("Value always serializes");
    s.push('\n');
    s
}

fn describe(cmd: &Command) -> (String, Value) {
    match cmd {
        Command::Seshadri { r, point } => ("seshadri".into(), json!({ "r": r, "point": point })),
        Command::TheoremTable => ("theorem-table".into(), json!({})),
        Command::Exceptional { r } => ("exceptional".into(), json!({ "r": r })),
        Command::ExpectedDim { d, mults } => ("expected-dim".into(), json!({ "d": d, "mults": mults })),
        Command::Oracle { r, point, dmax } => {
            ("oracle".into(), json!({ "r": r, "point": point, "dmax": dmax }))
        }
        Command::PencilNodes { sample } => ("pencil-nodes".into(), json!({ "sample": sample })),
        Command::Counterexample { which } => {
            let name = match which {
                Counterexample::TenPoints => "ten-points",
                Counterexample::ThirteenPoints => "thirteen-points",
            };
            ("counterexample".into(), json!({ "which": name }))
        }
    }
}

struct Output {
    json: Value,
    text: String,
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("core types serialize to JSON")
}

fn compute(cmd: &Command) -> delpezzo_core::Result<Output> {
    match cmd {
        Command::Seshadri { r, point } => {
            let p: PointSpec = point.parse()?;
            let res = seshadri_constant(*r, &p)?;
            Ok(Output { json: to_value(&res), text: seshadri_line(&res) })
        }
        Command::TheoremTable => {
            let rows = theorem_table()?;
            let text = rows.iter().map(seshadri_line).collect();
            Ok(Output { json: json!({ "rows": to_value(&rows), "count": rows.len() }), text })
        }
        Command::Exceptional { r } => {
            let classes: Vec<_> = enumerate_minus_one_classes(*r)?.into_iter().map(|c| c.into_class()).collect();
            let mut text = format!("r = {r}: {} (-1)-classes\n", classes.len());
            for c in &classes {
                let _ = writeln!(text, "  {c}");
            }
            Ok(Output { json: json!({ "r": r, "count": classes.len(), "classes": to_value(&classes) }), text })
        }
        Command::ExpectedDim { d, mults } => {
            let spec = LinearSystemSpec::new(*d, mults.clone())?;
            let dim = spec.expected_dim();
            let nonempty = nonempty_at_general_points(&spec);
            let text = format!("expected_dim = {dim}\n");
            Ok(Output {
                json: json!({ "d": d, "mults": mults, "expected_dim": dim, "nonempty_at_general_points": nonempty }),
                text,
            })
        }
        Command::Oracle { r, point, dmax } => {
            let p: PointSpec = point.parse()?;
            let oracle = brute_force_seshadri(*r, &p, *dmax)?;
            let engine = seshadri_constant(*r, &p)?;
            let agree = oracle.value == engine.value;
            let text = format!(
                "oracle = {} (argmin {}, {} candidates, d <= {dmax}); engine = {}; agree = {agree}\n",
                format_q(&oracle.value),
                oracle.argmin,
                oracle.candidates,
                format_q(&engine.value)
            );
            Ok(Output {
                json: json!({
                    "r": r,
                    "point": to_value(&p),
                    "d_max": dmax,
                    "value": format_q(&oracle.value),
                    "argmin": to_value(&oracle.argmin),
                    "candidates": oracle.candidates,
                    "threshold": format_q(&engine.value),
                    "agree": agree,
                }),
                text,
            })
        }
        Command::PencilNodes { sample } => {
            let count = count_anticanonical_nodes();
            let mut text = format!("nodal cubics in a general pencil: {count}\n");
            let certificate = match sample {
                None => Value::Null,
                Some(seed) => {
                    let s = sample_pencil(*seed)?;
                    let _ = writeln!(
                        text,
                        "sample seed {seed} ({} attempts): discriminant degree {}, squarefree degree {}",
                        s.attempts, s.sample.degree, s.sample.squarefree_degree
                    );
                    let agrees = s.sample.degree as u64 == count && s.sample.squarefree_degree as u64 == count;
                    let mut v = to_value(&s);
                    v["agrees"] = json!(agrees);
                    v
                }
            };
            Ok(Output {
                json: json!({ "count": count, "method": "euler_characteristic", "certificate": certificate }),
                text,
            })
        }
        Command::Counterexample { which } => {
            let rep = match which {
                Counterexample::TenPoints => verify_ten_point_example(DEFAULT_SCAN_DEGREE)?,
                Counterexample::ThirteenPoints => verify_thirteen_point_example(DEFAULT_SCAN_DEGREE)?,
            };
            Ok(Output { json: to_value(&rep), text: report_text(&rep) })
        }
    }
}

fn seshadri_line(res: &SeshadriResult) -> String {
    let mut s = format!("r = {} at {}: epsilon = {}", res.r, res.point, format_q(&res.value));
    match (&res.witness, &res.family) {
        (Some(w), _) => {
            let _ = write!(s, ", attained by {} with multiplicity {} at x", w.class, w.mult);
        }
        (None, Some(f)) => {
            let _ = write!(s, ", not attained; limit of {} with ratios {}", f.shape, f.ratio);
        }
        (None, None) => s.push_str(", not attained"),
    }
    s.push('\n');
    s
}

fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::NegativeCurve { class, self_intersection, anticanonical_degree } => {
            format!("curve {class} with C^2 = {self_intersection}, -K.C = {anticanonical_degree}")
        }
        Certificate::EffectiveMember { class } => format!("effective member {class}"),
        Certificate::CoveringFamily { class, self_intersection, anticanonical_degree, family_dimension } => format!(
            "covering family {class} of dimension {family_dimension}, M^2 = {self_intersection}, -K.M = {anticanonical_degree}"
        ),
        Certificate::ImpliedByPseff { class, anticanonical_degree } => {
            format!("not pseudoeffective ({class} has -K.M = {anticanonical_degree})")
        }
    }
}

fn report_text(rep: &PositivityReport) -> String {
    let scan = &rep.rational_scan;
    let mut s = format!("X_{}: K^2 = {}\n", rep.r, rep.k_squared);
    let _ = writeln!(s, "nef: {} ({})", rep.nef.holds, certificate_text(&rep.nef.certificate));
    let _ = writeln!(s, "pseff: {} ({})", rep.pseff.holds, certificate_text(&rep.pseff.certificate));
    let _ = writeln!(
        s,
        "rational_positive: {} (min -K.C = {} over {} classes with d <= {}, attained by {})",
        rep.rational_positive, scan.scanned_min, scan.classes_scanned, scan.d_max, scan.min_class
    );
    for line in &rep.implications {
        let _ = writeln!(s, "  {line}");
    }
    s
}
