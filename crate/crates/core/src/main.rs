use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use hamfvs::gadgets::{build_gadget, certify_gadget, GadgetKind};
use hamfvs::geometry::svg::dissolved_svg;
use hamfvs::io::{parse_graph, trace_from_json, trace_to_json, write_graph, write_witness};
use hamfvs::oracle::branch::{fvs_branch_reduce, Budget};
use hamfvs::oracle::fvs::{fvs_exact_exhaustive, EXHAUSTIVE_LIMIT};
use hamfvs::oracle::hamilton::{check_ham_ordered, TupleMode};
use hamfvs::pipeline::{compact_instance, run_pipeline, verify_trace, Target};
use hamfvs::Error;

#[derive(Parser)]
#[command(name = "hamfvs", version, about = "FVS reductions onto regular Hamiltonian graph classes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce an instance to a target class.
    Reduce {
        input: PathBuf,
        /// 4reg-planar, 4reg-planar-ham, 5reg-planar-ham, preg-ham:<p>, ham-ordered:<p>
        #[arg(long)]
        target: String,
        #[arg(short = 'o', long)]
        output: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        witness_out: Option<PathBuf>,
        /// Seed for a sampled Hamiltonian-ordered check on ham-ordered outputs
        /// too large for full tuple enumeration.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the dissolved grid drawing of the degree-three pairing.
        #[arg(long)]
        svg_debug: Option<PathBuf>,
    },
    /// Replay a trace and re-check every certificate.
    Verify {
        output: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        /// Original input; must match the input recorded in the trace.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Solve FVS exactly.
    Solve {
        input: PathBuf,
        /// Give up after this many seconds (exit code 5).
        #[arg(long)]
        time_budget: Option<f64>,
    },
    /// Certify a gadget by exhaustive search.
    GadgetCheck {
        /// R, L, D or Y
        kind: String,
        #[arg(long)]
        p: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(Error::from).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(Error::from).with_context(|| format!("writing {}", path.display()))
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Reduce { input, target, output, trace, witness_out, seed, svg_debug } => {
            let target: Target = target.parse()?;
            let inst = parse_graph(&read(&input)?).with_context(|| input.display().to_string())?;
            let res = run_pipeline(&inst, target)?;
            let out = compact_instance(&res.instance)?;
            write(&output, &write_graph(&out))?;
            if let Some(t) = trace {
                write(&t, &trace_to_json(&res.trace))?;
            }
            if let Some(w) = witness_out {
                let line = write_witness(&out).ok_or_else(|| Error::Precondition("target has no witness".into()))?;
                write(&w, &line)?;
            }
            if let (Some(path), Some(p)) = (svg_debug, &res.pairing) {
                write(&path, &dissolved_svg(&p.dissolved))?;
            }
            if let Target::HamOrdered(p) = target {
                let mode = if out.graph.n() <= 12 {
                    Some(TupleMode::Exhaustive)
                } else {
                    seed.map(|seed| TupleMode::Sampled { samples: 100, seed })
                };
                if let Some(mode) = mode {
                    let rep = check_ham_ordered(&out.graph, p, mode)?;
                    if !rep.holds {
                        return Err(Error::Certification(format!("not {p}-Hamiltonian-ordered: {:?}", rep.counterexample)).into());
                    }
                    eprintln!("{p}-Hamiltonian-ordered: {} tuples checked", rep.tuples_checked);
                }
            }
            let summary = serde_json::json!({
                "target": target.to_string(),
                "n": out.graph.n(),
                "m": out.graph.m(),
                "k": out.k,
                "stages": res.trace.stages.iter().map(|s| &s.name).collect::<Vec<_>>(),
                "size": res.size,
            });
            println!("{summary}");
        }
        Cmd::Verify { output, trace, input } => {
            let out = parse_graph(&read(&output)?).with_context(|| output.display().to_string())?;
            let t = trace_from_json(&read(&trace)?).with_context(|| trace.display().to_string())?;
            let inp = match input {
                Some(p) => Some(parse_graph(&read(&p)?).with_context(|| p.display().to_string())?),
                None => None,
            };
            let rep = verify_trace(&t, &out, inp.as_ref())?;
            println!("{}", serde_json::to_string(&rep)?);
        }
        Cmd::Solve { input, time_budget } => {
            let inst = parse_graph(&read(&input)?).with_context(|| input.display().to_string())?;
            let sol = if inst.graph.n() <= EXHAUSTIVE_LIMIT && time_budget.is_none() {
                fvs_exact_exhaustive(&inst.graph)?
            } else {
                let budget = Budget { time: time_budget.map(Duration::from_secs_f64), ..Budget::default() };
                fvs_branch_reduce(&inst.graph, budget)?
            };
            println!("opt {}", sol.size);
            let s: Vec<String> = sol.set.iter().map(|v| (v.0 + 1).to_string()).collect();
            println!("s {}", s.join(" "));
        }
        Cmd::GadgetCheck { kind, p } => {
            let kind: GadgetKind = match (kind.as_str(), p) {
                ("Y" | "y", Some(p)) => GadgetKind::Y(p),
                ("Y" | "y", None) => return Err(Error::Precondition("Y needs --p".into()).into()),
                (k, _) => k.parse()?,
            };
            let report = certify_gadget(&build_gadget(kind)?)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<Error>().map_or(1, Error::exit_code);
            ExitCode::from(code as u8)
        }
    }
}
