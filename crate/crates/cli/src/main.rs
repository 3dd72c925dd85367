use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use hilbcheck_core::artin::{enumerate_local_hfs, local_hilbert_function};
use hilbcheck_core::groebner::{groebner, initial_ideal, points_ideal};
use hilbcheck_core::smooth::{classify_smoothable, salmon_turnbull_pfaffian, Outcome};
use hilbcheck_core::tangent::tangent_report;
use hilbcheck_core::{Error, Ideal};

use hilbcheck_cli::report::{AnalysisReport, Status, VerifyReport};
use hilbcheck_cli::{cases, input};

const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(
    name = "hilbcheck",
    version,
    about = "Exact checks on zero-dimensional ideals of colength at most 8"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every randomized step.
    #[arg(long, global = true, env = "HILBCHECK_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vector-space dimension of S/I.
    Colength { file: String },
    /// Local Hilbert function at the origin.
    Hf { file: String },
    /// Dimension of Hom(I, S/I).
    Tangent {
        file: String,
        /// Also split by degree (homogeneous ideals only).
        #[arg(long)]
        graded: bool,
    },
    /// Initial ideal for a weight vector.
    Initial {
        file: String,
        #[arg(
            short,
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        weight: Vec<i64>,
    },
    /// Salmon-Turnbull Pfaffian of a homogeneous (1,4,3) ideal.
    Pfaffian { file: String },
    /// Smoothability verdict.
    Smoothable { file: String },
    /// Vanishing ideal of a finite point set.
    PointsIdeal {
        file: String,
        /// Number of coordinates per point.
        #[arg(short)]
        d: Option<usize>,
        /// File whose `field`/`vars` header fixes the ring.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Local Hilbert functions of colength N in D variables.
    Census {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        n: usize,
    },
    /// Run the bundled verification suite.
    VerifyPaper {
        /// Run only this case (or every case under `name/`).
        #[arg(long = "case")]
        case: Option<String>,
        /// List case names and exit.
        #[arg(long)]
        list: bool,
    },
}

/// Result of an analysis subcommand: the text rendering and the JSON fields.
struct Output {
    text: String,
    fields: Map<String, Value>,
}

fn fields(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("result is always an object"),
    }
}

fn generators(ideal: &Ideal) -> Vec<String> {
    ideal
        .generators()
        .iter()
        .map(|g| ideal.ring().format(g))
        .collect()
}

fn analyze(command: &Command) -> Result<Output, String> {
    let core = |e: Error| e.to_string();
    Ok(match command {
        Command::Colength { file } => {
            let n = groebner(&input::read_ideal(file)?)
                .colength()
                .map_err(core)?;
            Output {
                text: format!("{n}\n"),
                fields: fields(json!({ "colength": n })),
            }
        }
        Command::Hf { file } => {
            let h = local_hilbert_function(&input::read_ideal(file)?).map_err(core)?;
            Output {
                text: format!("{h}\n"),
                fields: fields(json!({ "hilbert_function": h.values(), "text": h.to_string() })),
            }
        }
        Command::Tangent { file, graded } => {
            let ideal = input::read_ideal(file)?;
            if *graded && !ideal.is_homogeneous() {
                return Err(Error::NotHomogeneous.to_string());
            }
            let r = tangent_report(&ideal, None).map_err(core)?;
            let mut text = format!("{}\n", r.total);
            let mut split: Option<Map<String, Value>> = None;
            if *graded {
                let pieces = r.graded.unwrap_or_default();
                for (e, dim) in &pieces {
                    text.push_str(&format!("  degree {e}: {dim}\n"));
                }
                split = Some(
                    pieces
                        .iter()
                        .map(|(e, dim)| (e.to_string(), json!(dim)))
                        .collect(),
                );
            }
            Output {
                text,
                fields: fields(json!({ "total": r.total, "graded": split })),
            }
        }
        Command::Initial { file, weight } => {
            let ideal = input::read_ideal(file)?;
            let inw = groebner(&initial_ideal(&ideal, weight).map_err(core)?).ideal();
            Output {
                text: inw.to_text(),
                fields: fields(json!({ "weight": weight, "generators": generators(&inw) })),
            }
        }
        Command::Pfaffian { file } => {
            let r = salmon_turnbull_pfaffian(&input::read_ideal(file)?).map_err(core)?;
            let quadrics: Vec<String> = r.quadrics.iter().map(|q| q.to_string()).collect();
            let text = format!(
                "block Pfaffian: {}\nintrinsic Pfaffian: {}\npairing determinant: {}\nvanishes: {}\n",
                r.pfaffian_block,
                r.pfaffian_intrinsic,
                r.pairing_determinant,
                if r.vanishes { "yes" } else { "no" }
            );
            Output {
                text,
                fields: fields(json!({
                    "block": r.pfaffian_block.to_string(),
                    "intrinsic": r.pfaffian_intrinsic.to_string(),
                    "pairing_determinant": r.pairing_determinant.to_string(),
                    "vanishes": r.vanishes,
                    "quadrics": quadrics,
                })),
            }
        }
        Command::Smoothable { file } => {
            let v = classify_smoothable(&input::read_ideal(file)?).map_err(core)?;
            let (outcome, reason) = match &v.outcome {
                Outcome::Smoothable => ("Smoothable", None),
                Outcome::NotSmoothable => ("NotSmoothable", None),
                Outcome::Indeterminate(r) => ("Indeterminate", Some(r.clone())),
            };
            Output {
                text: format!("{v}\n"),
                fields: fields(json!({
                    "verdict": v.to_string(),
                    "outcome": outcome,
                    "reason": reason,
                    "evidence": v.evidence,
                })),
            }
        }
        Command::PointsIdeal { file, d, ring } => {
            let text = input::read_source(file)?;
            let r = input::points_ring(ring.as_deref(), *d, &text)?;
            let pts = input::parse_points(&r, &text).map_err(|e| format!("{file}: {e}"))?;
            let ideal = points_ideal(&r, &pts).map_err(core)?.ideal();
            Output {
                text: ideal.to_text(),
                fields: fields(json!({ "points": pts.len(), "generators": generators(&ideal) })),
            }
        }
        Command::Census { d, n } => {
            let hfs = enumerate_local_hfs(*d, *n).map_err(core)?;
            let text: String = hfs.iter().map(|h| format!("{h}\n")).collect();
            let list: Vec<&[u32]> = hfs.iter().map(|h| h.values()).collect();
            Output {
                text,
                fields: fields(json!({ "d": d, "n": n, "hilbert_functions": list })),
            }
        }
        Command::VerifyPaper { .. } => unreachable!("handled separately"),
    })
}

fn input_label(command: &Command) -> String {
    match command {
        Command::Colength { file }
        | Command::Hf { file }
        | Command::Tangent { file, .. }
        | Command::Initial { file, .. }
        | Command::Pfaffian { file }
        | Command::Smoothable { file }
        | Command::PointsIdeal { file, .. } => file.clone(),
        Command::Census { d, n } => format!("d={d} n={n}"),
        Command::VerifyPaper { .. } => String::new(),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Colength { .. } => "colength",
        Command::Hf { .. } => "hf",
        Command::Tangent { .. } => "tangent",
        Command::Initial { .. } => "initial",
        Command::Pfaffian { .. } => "pfaffian",
        Command::Smoothable { .. } => "smoothable",
        Command::PointsIdeal { .. } => "points-ideal",
        Command::Census { .. } => "census",
        Command::VerifyPaper { .. } => "verify-paper",
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::VerifyPaper { case, list } = &cli.command {
        if *list {
            for n in cases::names() {
                println!("{n}");
            }
            return ExitCode::SUCCESS;
        }
        return match cases::run(case.as_deref(), cli.seed) {
            Ok(reports) => {
                let report = VerifyReport::new(cli.seed, reports);
                print!(
                    "{}",
                    if cli.json {
                        to_json(&report)
                    } else {
                        report.to_text()
                    }
                );
                if report.status == Status::Pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    match analyze(&cli.command) {
        Ok(out) => {
            if cli.json {
                let report = AnalysisReport {
                    command: command_name(&cli.command).into(),
                    input: input_label(&cli.command),
                    seed: cli.seed,
                    result: out.fields,
                };
                print!("{}", to_json(&report));
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
