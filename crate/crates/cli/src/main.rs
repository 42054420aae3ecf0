use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ivdr_core::laws::{self, LawConfig, LawReport, Polarity, Status};
use ivdr_core::{Interval, State, Stream, StreamSpace, Value};
use ivdr_dsl::report::Counterexample;
use ivdr_dsl::{DslError, Model};
use serde_json::json;

/// Exhaustive checking of interval predicates, simulations and data
/// refinement over small discrete carriers.
#[derive(Parser)]
#[command(name = "ivdr", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: one per core)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest number of streams a single enumeration may visit
    #[arg(long, global = true, default_value_t = 50_000_000)]
    budget: u128,
    /// Override the carrier horizon (for laws: the largest generated horizon)
    #[arg(long, global = true)]
    horizon: Option<usize>,
    /// Record the wall-clock time of every directive
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run every directive of a specification file
    Check { file: PathBuf },
    /// Check the algebraic law catalog on random instances
    Laws {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Run a single law
        #[arg(long)]
        law: Option<String>,
        #[arg(long, default_value_t = 1000)]
        instances: u64,
        /// Largest term depth
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Evaluate a named predicate on one stream and interval
    Eval {
        file: PathBuf,
        #[arg(long)]
        pred: String,
        /// `lo..hi` or `empty`
        #[arg(long)]
        interval: String,
        /// A stream index, or states such as `u=0,v=0;u=1,v=0;u=1,v=1`
        #[arg(long)]
        stream: String,
        /// Show the subterm values, chop splits and fixed points
        #[arg(long)]
        trace: bool,
    },
}

const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let code = match &cli.command {
        Command::Check { file } => check(&cli.global, file),
        Command::Laws {
            seed,
            law,
            instances,
            depth,
        } => run_laws(&cli.global, *seed, law.as_deref(), *instances, *depth),
        Command::Eval {
            file,
            pred,
            interval,
            stream,
            trace,
        } => eval(&cli.global, file, pred, interval, stream, *trace),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn load(global: &Global, file: &PathBuf) -> Result<Model, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let mut model =
        ivdr_dsl::load(&text).map_err(|e: DslError| format!("{}:{e}", file.display()))?;
    if let Some(h) = global.horizon {
        model.carrier = model.carrier.with_horizon(h).map_err(|e| e.to_string())?;
    }
    Ok(model)
}

fn check(global: &Global, file: &PathBuf) -> Result<u8, String> {
    let model = load(global, file)?;
    let name = file.display().to_string();
    let report = ivdr_dsl::run_model(&model, &name, global.budget, global.timings);
    if global.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(report.exit_code() as u8)
}

fn law_json(r: &LawReport) -> serde_json::Value {
    let witnesses: Vec<_> = r
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "instance": w.instance,
                "description": w.description,
                "counterexample": w.witness.as_ref().map(Counterexample::from),
            })
        })
        .collect();
    json!({
        "id": r.law.id,
        "statement": r.law.statement,
        "polarity": r.law.polarity,
        "status": r.status,
        "tried": r.tried,
        "exercised": r.exercised,
        "failures": r.failures,
        "witnesses": witnesses,
    })
}

fn run_laws(
    global: &Global,
    seed: u64,
    law: Option<&str>,
    instances: u64,
    depth: usize,
) -> Result<u8, String> {
    let mut cfg = LawConfig::new(instances, seed);
    cfg.max_depth = depth;
    if let Some(h) = global.horizon {
        cfg.max_horizon = h;
    }
    let reports = match law {
        Some(id) => vec![laws::run_law_with(id, &cfg).map_err(|e| e.to_string())?],
        None => laws::run_all_with(&cfg).map_err(|e| e.to_string())?.reports,
    };
    if global.json {
        let out = json!({
            "seed": seed,
            "instances": instances,
            "laws": reports.iter().map(law_json).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        for r in &reports {
            let kind = match r.law.polarity {
                Polarity::Law => "law",
                Polarity::Counterexample => "negative control",
            };
            println!(
                "{:<13}{:<22}{kind}: {} of {} instances exercised, {} violations",
                r.status.to_string(),
                r.law.id,
                r.exercised,
                r.tried,
                r.failures
            );
            for w in &r.witnesses {
                println!("    instance {}: {}", w.instance, w.description);
                if let Some(c) = &w.witness {
                    for l in c.to_string().lines() {
                        println!("      {l}");
                    }
                }
            }
        }
    }
    let ok = reports.iter().all(|r| r.status == Status::Pass);
    Ok(if ok { 0 } else { 1 })
}

fn parse_interval(s: &str) -> Result<Interval, String> {
    if s == "empty" {
        return Ok(Interval::Empty);
    }
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("interval `{s}`: expected `lo..hi` or `empty`"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("interval `{s}`: `{t}` is not a time point"))
    };
    Interval::range(num(lo)?, num(hi)?).map_err(|e| e.to_string())
}

fn parse_value(t: &str) -> Result<Value, String> {
    match t {
        "true" => Ok(Value::Bool(true)),
        "false" => Ok(Value::Bool(false)),
        "-inf" => Ok(Value::NegInf),
        "+inf" | "inf" => Ok(Value::PosInf),
        _ => t
            .parse()
            .map(Value::Int)
            .map_err(|_| format!("`{t}` is not a value")),
    }
}

fn parse_stream(space: &StreamSpace, s: &str) -> Result<Stream, String> {
    if let Ok(idx) = s.parse::<u128>() {
        let count = space.count().unwrap_or(u128::MAX);
        if idx >= count {
            return Err(format!("stream index {idx} out of range (there are {count})"));
        }
        return Ok(space.stream_at(idx));
    }
    let u = space.universe();
    let states = s
        .split(';')
        .map(|st| {
            let pairs = st
                .split(',')
                .map(|kv| {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| format!("`{kv}`: expected `var=value`"))?;
                    Ok((k.trim(), parse_value(v.trim())?))
                })
                .collect::<Result<Vec<_>, String>>()?;
            u.state_from_values(&pairs).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<State>, String>>()?;
    let horizon = space.carrier().horizon();
    if states.len() != horizon {
        return Err(format!(
            "the stream has {} states but the carrier has {horizon} time points",
            states.len()
        ));
    }
    Stream::new(u.clone(), states).map_err(|e| e.to_string())
}

fn eval(
    global: &Global,
    file: &PathBuf,
    pred: &str,
    interval: &str,
    stream: &str,
    trace: bool,
) -> Result<u8, String> {
    let model = load(global, file)?;
    let (universe, g) = model
        .lookup_pred(pred)
        .ok_or_else(|| format!("no predicate, system or process named `{pred}`"))?;
    let iv = parse_interval(interval)?;
    model.carrier.check(iv).map_err(|e| e.to_string())?;
    let space = StreamSpace::new(universe, model.carrier).map_err(|e| e.to_string())?;
    let s = parse_stream(&space, stream)?;
    let value = ivdr_core::pred::eval(&g, iv, &s, &model.carrier).map_err(|e| e.to_string())?;
    let explained = if trace {
        Some(ivdr_dsl::trace::trace(&g, iv, &s, &model.carrier).map_err(|e| e.to_string())?)
    } else {
        None
    };
    if global.json {
        let out = json!({
            "pred": pred,
            "term": g.to_string(),
            "interval": ivdr_dsl::report::JsonInterval(iv),
            "stream": s.display(),
            "value": value,
            "trace": explained,
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        println!("{pred} on {iv} of {}: {value}", s.display());
        if let Some(t) = explained {
            print!("{t}");
        }
    }
    Ok(0)
}
