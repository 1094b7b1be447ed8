use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rao_forge::algebra::{GradedDims, MonomialOrder, RingConfig};
use rao_forge::batch::analyze_all;
use rao_forge::deformation::{
    cancel_common, cancel_l4_f1, cancel_l4_f2, component_count, generization_lattice, link, rab_family,
    singularity_ideal,
};
use rao_forge::invariants::{CurveData, CurveInput};
use rao_forge::obstruction::classify;
use rao_forge::report::analyze;
use rao_forge::resolution::resolve_ideal_text;
use rao_forge::{RaoError, Result};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "rao-forge", version, about = "Betti tables, Rao modules and obstructedness of space curves")]
struct Cli {
    /// Prime characteristic of the coefficient field.
    #[arg(long = "char", global = true, env = "RAO_FORGE_CHAR")]
    characteristic: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal free resolution and Betti table of an ideal file.
    Resolve {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, default_value = "degrevlex")]
        order: MonomialOrder,
        /// Print only the Betti table.
        #[arg(long)]
        betti_only: bool,
    },
    /// Full report for a curve given as JSON or as an ideal.
    Analyze(AnalyzeArgs),
    /// Apply one generization move.
    Generize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "move", value_enum)]
        kind: MoveArg,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<i32>,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Generization lattice of a tuple (r, a2, b1).
    Lattice {
        #[arg(long, num_args = 3, value_names = ["R", "A2", "B1"])]
        triple: Vec<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: LatticeFormat,
    },
    /// Link by a complete intersection of type (f, g).
    Link {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        f: i32,
        #[arg(long)]
        g: i32,
    },
    /// Number of components through a curve with tuple (r, 0, a2, b1, 0).
    Components {
        #[arg(long, num_args = 3, value_names = ["R", "A2", "B1"])]
        triple: Vec<u64>,
        /// Assert s = e = c.
        #[arg(long)]
        sec: bool,
        #[arg(long)]
        json: bool,
    },
    /// The (r, a, b) family with s = e = c.
    Family {
        #[arg(long, num_args = 3, value_names = ["R", "A", "B"])]
        ex1: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Quadratic equations of the Hilbert scheme at a curve.
    Singularity {
        #[arg(long, conflicts_with = "ex1")]
        input: Option<PathBuf>,
        #[arg(long, num_args = 3, value_names = ["R", "A", "B"])]
        ex1: Option<Vec<u64>>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Curve JSON: {"betti": .., "rao": .., "buchsbaum": ..}.
    #[arg(long, conflicts_with_all = ["ideal", "dir"])]
    input: Option<PathBuf>,
    /// Ideal file; resolved first.
    #[arg(long, conflicts_with = "dir")]
    ideal: Option<PathBuf>,
    /// Every *.json curve in a directory.
    #[arg(long)]
    dir: Option<PathBuf>,
    /// With --ideal: the Rao module is read off β3.
    #[arg(long)]
    buchsbaum: bool,
    /// With --ideal: Rao dimensions as JSON, e.g. '{"0": 1}'.
    #[arg(long)]
    rao: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MoveArg {
    Common,
    #[value(name = "l4-f2")]
    L4F2,
    #[value(name = "l4-f1")]
    L4F1,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeFormat {
    Json,
    Dot,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| RaoError::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn curve_from_json(text: &str, characteristic: Option<u32>) -> Result<CurveData> {
    let mut input: CurveInput =
        serde_json::from_str(text).map_err(|e| RaoError::Parse { line: e.line(), message: e.to_string() })?;
    if let Some(p) = characteristic {
        input.char = p;
    }
    CurveData::from_input(input)
}

fn load_curve(path: &Path, characteristic: Option<u32>) -> Result<CurveData> {
    curve_from_json(&read(path)?, characteristic)
}

fn ring_config(characteristic: Option<u32>, order: MonomialOrder) -> RingConfig {
    RingConfig { characteristic: characteristic.unwrap_or(RingConfig::default().characteristic), order }
}

fn triple(v: &[u64]) -> (u64, u64, u64) {
    (v[0], v[1], v[2])
}

enum Output {
    Json(Value),
    Text(String),
}

fn analyze_cmd(args: AnalyzeArgs, characteristic: Option<u32>) -> Result<(Output, u8)> {
    if let Some(dir) = args.dir {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
            .map_err(|e| RaoError::InvalidArgument(format!("cannot read {}: {e}", dir.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let mut inputs = Vec::new();
        let mut early: Vec<Option<RaoError>> = Vec::new();
        for p in &paths {
            match read(p).and_then(|t| {
                serde_json::from_str::<CurveInput>(&t)
                    .map_err(|e| RaoError::Parse { line: e.line(), message: e.to_string() })
            }) {
                Ok(mut input) => {
                    if let Some(c) = characteristic {
                        input.char = c;
                    }
                    inputs.push(input);
                    early.push(None);
                }
                Err(e) => early.push(Some(e)),
            }
        }
        let mut reports = analyze_all(&inputs).into_iter();
        let mut code = 0u8;
        let mut out = Vec::new();
        for (p, e) in paths.iter().zip(early) {
            let res = match e {
                Some(e) => Err(e),
                None => reports.next().expect("one report per parsed input"),
            };
            let name = p.file_name().unwrap().to_string_lossy().to_string();
            out.push(match res {
                Ok(r) => json!({ "file": name, "report": r }),
                Err(e) => {
                    code = code.max(e.exit_code() as u8);
                    json!({ "file": name, "error": e.to_string(), "exit_code": e.exit_code() })
                }
            });
        }
        return Ok((Output::Json(Value::Array(out)), code));
    }
    let cd = if let Some(path) = args.input {
        load_curve(&path, characteristic)?
    } else if let Some(path) = args.ideal {
        let (_, betti) = resolve_ideal_text(&read(&path)?, ring_config(characteristic, MonomialOrder::Degrevlex))?;
        let rao = match (&args.rao, args.buchsbaum) {
            (Some(text), _) => serde_json::from_str::<GradedDims>(text)
                .map_err(|e| RaoError::InvalidArgument(format!("--rao: {e}")))?,
            (None, true) => rao_forge::invariants::buchsbaum_rao_from_betti(&betti),
            (None, false) if betti.row_is_empty(3) => GradedDims::new(),
            (None, false) => {
                return Err(RaoError::InvalidArgument(
                    "β3 is nonzero: pass --buchsbaum or --rao to give the Rao module".into(),
                ))
            }
        };
        let input = CurveInput {
            char: ring_config(characteristic, MonomialOrder::Degrevlex).characteristic,
            betti,
            rao,
            buchsbaum: args.buchsbaum,
            overrides: None,
        };
        CurveData::from_input(input)?
    } else {
        return Err(RaoError::InvalidArgument("one of --input, --ideal, --dir is required".into()));
    };
    Ok((Output::Json(serde_json::to_value(analyze(&cd)).unwrap()), 0))
}

fn run(cli: Cli) -> Result<(Output, u8)> {
    let p = cli.characteristic;
    let out = match cli.command {
        Command::Resolve { ideal, order, betti_only } => {
            let (res, betti) = resolve_ideal_text(&read(&ideal)?, ring_config(p, order))?;
            if betti_only {
                Output::Json(serde_json::to_value(&betti).unwrap())
            } else {
                let (d, g) = rao_forge::resolution::hilbert_numerics(&betti)?;
                Output::Json(json!({ "betti": betti, "d": d, "g": g, "resolution": res.to_json() }))
            }
        }
        Command::Analyze(args) => return analyze_cmd(args, p),
        Command::Generize { input, kind, t, m } => {
            let cd = load_curve(&input, p)?;
            let t = || t.or(cd.c()).ok_or_else(|| RaoError::InvalidArgument("--t is required for an ACM curve".into()));
            let mv = match kind {
                MoveArg::Common => cancel_common(&cd)?,
                MoveArg::L4F2 => cancel_l4_f2(&cd, t()?, m)?,
                MoveArg::L4F1 => cancel_l4_f1(&cd, t()?, m)?,
            };
            let verdict = classify(&mv.result, None);
            Output::Json(json!({ "move": mv, "result_verdict": verdict }))
        }
        Command::Lattice { triple: v, format } => {
            let l = generization_lattice(triple(&v));
            match format {
                LatticeFormat::Json => Output::Json(serde_json::to_value(&l).unwrap()),
                LatticeFormat::Dot => Output::Text(l.to_dot()),
            }
        }
        Command::Link { input, f, g } => {
            let cd = load_curve(&input, p)?;
            Output::Json(serde_json::to_value(link(&cd, f, g)?).unwrap())
        }
        Command::Components { triple: v, sec, json } => {
            let c = component_count(triple(&v), sec);
            if json {
                Output::Json(serde_json::to_value(&c).unwrap())
            } else {
                Output::Text(format!("{c}\n"))
            }
        }
        Command::Family { ex1, json } => {
            let (r, a, b) = triple(&ex1);
            let e = rab_family(r, a, b)?;
            if json {
                Output::Json(serde_json::to_value(&e).unwrap())
            } else {
                Output::Text(format!("c={} d={} g={}\n{}", e.c, e.d, e.g, e.betti))
            }
        }
        Command::Singularity { input, ex1, json } => {
            let cd = match (input, ex1) {
                (Some(path), _) => load_curve(&path, p)?,
                (None, Some(v)) => {
                    let (r, a, b) = triple(&v);
                    rab_family(r, a, b)?.curve
                }
                (None, None) => return Err(RaoError::InvalidArgument("one of --input, --ex1 is required".into())),
            };
            let q = singularity_ideal(&cd)?;
            if json {
                Output::Json(serde_json::to_value(&q).unwrap())
            } else {
                Output::Text(format!("# Y variables: {}\n# {}\n{}", q.m, q.note, q.to_text()))
            }
        }
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            let text = match out {
                Output::Json(v) => serde_json::to_string_pretty(&v).unwrap() + "\n",
                Output::Text(t) => t,
            };
            // a closed pipe downstream is not our error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(code)
        }
        Err(e) => {
            match &e {
                RaoError::Inconsistent(problems) if problems.len() > 1 => {
                    eprintln!("error: inconsistent curve data:");
                    for p in problems {
                        eprintln!("  - {p}");
                    }
                }
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
