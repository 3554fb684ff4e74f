//! `valint`: exact intersection numbers, valuative interpolation on plane
//! curve germs, and monomial-weight invariants from the command line.
//!
//! Exit status: 0 when a result was computed (a "no" decision included),
//! 1 for invalid input, 2 for an internal inconsistency.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;
use valint_core::interp::{check_sequence_prefix, decide_finite, validate_instance, Decision};
use valint_core::intersect::{imult, imult_oracle, CurveGerm, OracleConfig};
use valint_core::io::{
    load_curve, InstanceFile, InterpOutput, IrreducibleMode, MonomialDecisionOutput,
    MonomialInput, PairsInput, SequenceOutput, TianOutput, ValuationDto,
};
use valint_core::monomial::{
    jumping_number, kiselman_sigma, monomial_interp_decide, tian_monomial, FracMonomialWeight,
    MonomialWeight,
};
use valint_core::parse::parse_poly;
use valint_core::poly::indexed_var_names;
use valint_core::rat::{parse_rat, ExtRat, Rat};
use valint_core::valtree::{qm_eval_product, skewness_pair, QMValuation};
use valint_core::{Error, MPoly};

#[derive(Parser)]
#[command(name = "valint", version, about)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Variable names, comma separated, or a count `n` meaning z1..zn.
    #[arg(long, global = true)]
    vars: Option<String>,
    /// Read the instance from a JSON file.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// How curve irreducibility is established.
    #[arg(long, global = true, value_enum)]
    irreducible: Option<IrreducibleFlag>,
}

#[derive(Clone, Copy, ValueEnum)]
enum IrreducibleFlag {
    /// Trust the input.
    Assert,
    /// Require the Newton-polygon test to succeed.
    Verify,
}

impl From<IrreducibleFlag> for IrreducibleMode {
    fn from(f: IrreducibleFlag) -> Self {
        match f {
            IrreducibleFlag::Assert => IrreducibleMode::Asserted,
            IrreducibleFlag::Verify => IrreducibleMode::Verify,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Local intersection multiplicity at the origin.
    Imult {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Multiplicity (order) of a polynomial at the origin.
    Mult {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Skewness of the infimum of two curve valuations.
    Skewness {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Decide a finite interpolation problem, given as POLY:B pairs or --input.
    Interpolate {
        #[arg(allow_hyphen_values = true)]
        curves: Vec<String>,
    },
    /// Evaluate v_{C,t} on a product of irreducible factors FACTOR[:EXP].
    Evaluate {
        #[arg(long, allow_hyphen_values = true)]
        curve: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(allow_hyphen_values = true)]
        factors: Vec<String>,
    },
    /// Check the intersection conditions on a prefix of an infinite sequence.
    CheckSequence {
        #[arg(allow_hyphen_values = true)]
        curves: Vec<String>,
    },
    /// Kiselman number of F for the weight max a_j log|z_j|.
    MonomialSigma {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(allow_hyphen_values = true)]
        f: Option<String>,
    },
    /// Jumping number of F for the weight max a_j log|z_j|.
    MonomialJump {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(allow_hyphen_values = true)]
        f: Option<String>,
    },
    /// Tian function value c(G·F^t), by formula and by expansion.
    MonomialTian {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[arg(allow_hyphen_values = true)]
        f: Option<String>,
    },
    /// Decide monomial interpolation for pairs BETA:A (BETA comma separated).
    MonomialDecide { pairs: Vec<String> },
    /// Intersection multiplicity by truncated linear algebra.
    OracleImult {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value_t = OracleConfig::default().start)]
        start: usize,
        #[arg(long, default_value_t = OracleConfig::default().ceiling)]
        ceiling: usize,
    },
}

#[derive(Args)]
struct WeightArgs {
    /// Weight a_j, repeated once per variable.
    #[arg(long = "a", value_name = "A", allow_hyphen_values = true)]
    a: Vec<String>,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            // A closed pipe downstream is not our failure.
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Core(c) if c.is_internal() => 2,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<String> {
    let g = &cli.global;
    match &cli.command {
        Command::Imult { f, g: h } => {
            let vars = curve_vars(g)?;
            let v = imult(&poly(f, &vars)?, &poly(h, &vars)?)?;
            Ok(value_out(g, "imult", &v))
        }
        Command::Mult { f } => {
            let vars = curve_vars(g)?;
            let p = poly(f, &vars)?;
            if p.is_zero() {
                return Err(Error::ZeroPolynomial.into());
            }
            Ok(value_out(g, "mult", &ExtRat::from(p.order()?)))
        }
        Command::Skewness { f, g: h } => {
            let vars = curve_vars(g)?;
            let mode = mode(g);
            let s = skewness_pair(&load_curve(f, &vars, mode)?, &load_curve(h, &vars, mode)?)?;
            Ok(value_out(g, "skewness", &s))
        }
        Command::Interpolate { curves } => interpolate(g, curves),
        Command::Evaluate { curve, t, factors } => evaluate(g, curve.as_deref(), t.as_deref(), factors),
        Command::CheckSequence { curves } => {
            let (_, items) = load_instance(g, curves)?;
            let report = check_sequence_prefix(items)?;
            let out = SequenceOutput::from(&report);
            if g.json {
                return Ok(to_json(&out));
            }
            let mut text = match &out.first_failure {
                None => format!("passed ({} pairs checked)", out.pairs_checked),
                Some(f) => format!(
                    "failed at i = {}, j = {}: intersection {} != required {}",
                    f.i, f.j, f.imult, f.required
                ),
            };
            text.push_str(&format!(
                "\nmax normalized target: {}\ngrowth at least linear: {}\ndenominators: {}\ndenominators strictly increasing: {}",
                out.max_normalized,
                out.growth_at_least_linear,
                out.denominators.join(", "),
                out.denominators_strictly_increasing
            ));
            Ok(text)
        }
        Command::MonomialSigma { weight, f } => {
            let (w, f, _, _) = monomial_input(g, weight, f.as_deref(), None, None)?;
            Ok(value_out(g, "sigma", &ExtRat::Finite(kiselman_sigma(&f, &w)?)))
        }
        Command::MonomialJump { weight, f } => {
            let (w, f, _, _) = monomial_input(g, weight, f.as_deref(), None, None)?;
            Ok(value_out(g, "jump", &ExtRat::Finite(jumping_number(&f, &w)?)))
        }
        Command::MonomialTian { weight, t, g: gpoly, f } => {
            let (w, f, gp, t) = monomial_input(g, weight, f.as_deref(), gpoly.as_deref(), t.as_deref())?;
            let t = t.ok_or_else(|| usage("monomial-tian needs --t"))?;
            let v = tian_monomial(&gp, &f, &w, &t)?;
            let out = TianOutput::from(&v);
            if g.json {
                return Ok(to_json(&out));
            }
            let exact = out.exact.as_ref().map_or("n/a".to_string(), ToString::to_string);
            let verdict = if out.discrepancy { "discrepancy" } else { "consistent" };
            Ok(format!("{}\nexact: {exact} ({verdict})", out.formula))
        }
        Command::MonomialDecide { pairs } => monomial_decide(g, pairs),
        Command::OracleImult { f, g: h, start, ceiling } => {
            let vars = curve_vars(g)?;
            let config = OracleConfig {
                start: *start,
                ceiling: *ceiling,
            };
            let n = imult_oracle(&poly(f, &vars)?, &poly(h, &vars)?, config)?;
            Ok(value_out(g, "imult", &ExtRat::from(n)))
        }
    }
}

fn value_out(g: &Global, key: &str, v: &ExtRat) -> String {
    if g.json {
        json!({ key: v }).to_string()
    } else {
        v.to_string()
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("invalid JSON in {}: {e}", path.display())))
}

fn mode(g: &Global) -> IrreducibleMode {
    g.irreducible.map_or(IrreducibleMode::Verify, Into::into)
}

fn parse_vars(text: &str) -> Result<Vec<String>> {
    if let Ok(n) = text.trim().parse::<usize>() {
        if n == 0 {
            return Err(usage("--vars must be positive"));
        }
        return Ok(indexed_var_names(n));
    }
    let names: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    if names.iter().any(String::is_empty) {
        return Err(usage(format!("invalid --vars `{text}`")));
    }
    Ok(names)
}

fn curve_vars(g: &Global) -> Result<Vec<String>> {
    let vars = match &g.vars {
        Some(s) => parse_vars(s)?,
        None => vec!["x".into(), "y".into()],
    };
    if vars.len() != 2 {
        return Err(Error::NotBivariate(vars.len()).into());
    }
    Ok(vars)
}

fn poly(text: &str, vars: &[String]) -> Result<MPoly> {
    Ok(parse_poly(text, vars)?)
}

/// Splits `TEXT:SUFFIX` at the last colon.
fn split_suffix(item: &str) -> Option<(&str, &str)> {
    item.rsplit_once(':').map(|(a, b)| (a.trim(), b.trim()))
}

fn load_instance(g: &Global, curves: &[String]) -> Result<(Vec<String>, Vec<(CurveGerm, Rat)>)> {
    match (&g.input, curves.is_empty()) {
        (Some(path), true) => {
            let mut file: InstanceFile = read_json(path)?;
            if let Some(v) = &g.vars {
                file.vars = parse_vars(v)?;
            }
            let items = file.load(g.irreducible.map(Into::into))?;
            Ok((file.vars, items))
        }
        (None, false) => {
            let vars = curve_vars(g)?;
            let items = curves
                .iter()
                .map(|item| {
                    let (p, b) = split_suffix(item)
                        .ok_or_else(|| usage(format!("expected POLY:B, got `{item}`")))?;
                    Ok((load_curve(p, &vars, mode(g))?, parse_rat(b)?))
                })
                .collect::<Result<_>>()?;
            Ok((vars, items))
        }
        (Some(_), false) => Err(usage("give curves either positionally or with --input, not both")),
        (None, true) => Err(usage("no curves given")),
    }
}

fn interpolate(g: &Global, curves: &[String]) -> Result<String> {
    let (vars, items) = load_instance(g, curves)?;
    let germs: Vec<CurveGerm> = items.iter().map(|(c, _)| c.clone()).collect();
    let res = decide_finite(&validate_instance(items)?)?;
    let out = InterpOutput::new(&res, &germs, &vars);
    if g.json {
        return Ok(to_json(&out));
    }
    let mut lines = Vec::new();
    match (&res.decision, &out.minimal_solution) {
        (Decision::Yes, Some(v)) => {
            lines.push(format!("yes: minimal solution v_{{C,t}} with C = {}, t = {}", v.curve, v.t));
            let values: Vec<String> = out.certificate.values.iter().map(ToString::to_string).collect();
            lines.push(format!("values: {}", values.join(", ")));
        }
        _ => {
            let v = out.certificate.violation.as_ref().expect("negative decision has a violation");
            let relation = if v.condition == "top_cluster" { ">=" } else { "=" };
            lines.push(format!(
                "no: {} check fails for curves {} and {}: skewness {} but {relation} {} is required",
                v.condition.replace('_', " "),
                v.i,
                v.j,
                v.skewness,
                v.required
            ));
        }
    }
    let kinds: Vec<String> = out
        .irreducibility
        .iter()
        .map(|k| serde_json::to_value(k).expect("enum").as_str().unwrap_or("").to_string())
        .collect();
    lines.push(format!("irreducibility: {}", kinds.join(", ")));
    Ok(lines.join("\n"))
}

fn evaluate(g: &Global, curve: Option<&str>, t: Option<&str>, factors: &[String]) -> Result<String> {
    let vars = curve_vars(g)?;
    let v: QMValuation = match (&g.input, curve, t) {
        (Some(path), None, None) => {
            let value: serde_json::Value = read_json(path)?;
            let sol = value.get("minimal_solution").unwrap_or(&value);
            if sol.is_null() {
                return Err(usage("input has no minimal solution"));
            }
            let dto: ValuationDto = serde_json::from_value(sol.clone())
                .map_err(|e| usage(format!("invalid valuation in input: {e}")))?;
            let germ = load_curve(&dto.curve, &vars, mode(g))?;
            QMValuation::new(germ, dto.t)?
        }
        (None, Some(c), Some(t)) => {
            QMValuation::new(load_curve(c, &vars, mode(g))?, ExtRat::parse(t)?)?
        }
        _ => return Err(usage("give either --curve and --t, or --input")),
    };
    let parsed = factors
        .iter()
        .map(|item| {
            let (p, e) = match split_suffix(item) {
                Some((p, e)) => {
                    let e = e.parse::<u32>().map_err(|_| usage(format!("bad exponent in `{item}`")))?;
                    (p, e)
                }
                None => (item.as_str(), 1),
            };
            Ok((load_curve(p, &vars, mode(g))?, e))
        })
        .collect::<Result<Vec<_>>>()?;
    let value = qm_eval_product(&v, &parsed)?;
    Ok(value_out(g, "value", &value))
}

fn weight_from(a: &[String]) -> Result<MonomialWeight> {
    let a = a.iter().map(|s| parse_rat(s)).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(MonomialWeight::new(a)?)
}

/// Weight, `f`, `g` (default 1) and `t`, from flags or from `--input`.
fn monomial_input(
    g: &Global,
    weight: &WeightArgs,
    f: Option<&str>,
    gpoly: Option<&str>,
    t: Option<&str>,
) -> Result<(MonomialWeight, MPoly, MPoly, Option<Rat>)> {
    let file: Option<MonomialInput> = g.input.as_deref().map(read_json).transpose()?;
    let a: Vec<Rat> = match (&file, weight.a.is_empty()) {
        (_, false) => weight.a.iter().map(|s| parse_rat(s)).collect::<std::result::Result<_, _>>()?,
        (Some(m), true) => m.a.clone(),
        (None, true) => return Err(usage("give the weight with --a (once per variable)")),
    };
    let n = a.len();
    let vars = match (&g.vars, &file) {
        (Some(s), _) => parse_vars(s)?,
        (None, Some(m)) => indexed_var_names(m.vars),
        (None, None) => indexed_var_names(n),
    };
    if vars.len() != n {
        return Err(Error::NvarsMismatch {
            left: vars.len(),
            right: n,
        }
        .into());
    }
    let w = weight_from(&a.iter().map(ToString::to_string).collect::<Vec<_>>())?;
    let pick = |flag: Option<&str>, from_file: Option<&String>| flag.map(str::to_string).or(from_file.cloned());
    let ftext = pick(f, file.as_ref().and_then(|m| m.f.as_ref()))
        .ok_or_else(|| usage("no polynomial F given"))?;
    let gtext = pick(gpoly, file.as_ref().and_then(|m| m.g.as_ref())).unwrap_or_else(|| "1".into());
    let t = match t {
        Some(s) => Some(parse_rat(s)?),
        None => file.as_ref().and_then(|m| m.t.clone()),
    };
    Ok((w, poly(&ftext, &vars)?, poly(&gtext, &vars)?, t))
}

fn monomial_decide(g: &Global, pairs: &[String]) -> Result<String> {
    let input = match (&g.input, pairs.is_empty()) {
        (Some(path), true) => read_json::<PairsInput>(path)?,
        (None, false) => {
            let parsed = pairs
                .iter()
                .map(|item| {
                    let (beta, a) = split_suffix(item)
                        .ok_or_else(|| usage(format!("expected BETA:A, got `{item}`")))?;
                    let beta = beta
                        .split(',')
                        .map(|e| e.trim().parse::<u32>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| usage(format!("bad exponent vector in `{item}`")))?;
                    Ok(valint_core::io::PairDto {
                        beta,
                        a: parse_rat(a)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            PairsInput { pairs: parsed }
        }
        (Some(_), false) => return Err(usage("give pairs either positionally or with --input, not both")),
        (None, true) => return Err(usage("no pairs given")),
    };
    let weight: FracMonomialWeight = input.to_weight()?;
    let d = monomial_interp_decide(&weight)?;
    let out = MonomialDecisionOutput::from(&d);
    if g.json {
        return Ok(to_json(&out));
    }
    let join = |v: &[Rat]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let verdict = match (&out.witness, &out.certificate) {
        (Some(w), _) => format!("yes: monomial valuation with weight ({})", join(w)),
        (None, Some(y)) => format!("no: infeasibility certificate y = ({})", join(y)),
        (None, None) => unreachable!("decision carries a witness or a certificate"),
    };
    Ok(format!(
        "{verdict}\ncriterion: sigma = {}, target sum a_j = {}",
        out.criterion, out.target
    ))
}
