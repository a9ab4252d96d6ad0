mod render;

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use smatrix_core::battery;
use smatrix_core::cocycle::classify_h3ab;
use smatrix_core::group::AbelianGroup;
use smatrix_core::io::{
    category_from_str, category_to_json, cocycle_from_json, element_key, matrix_to_json,
    smatrix2_report,
};
use smatrix_core::metric::{drinfeld_double, PointedBFC};
use smatrix_core::modules::{pi0_report, schur_classes};
use smatrix_core::{Error, ErrorKind};

#[derive(Parser)]
#[command(
    name = "smatrix",
    version,
    about = "Exact S-matrices of pointed braided fusion categories"
)]
struct Cli {
    /// Print the run report as JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON run report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 256, value_name = "N")]
    max_group_order: usize,
    #[command(subcommand)]
    command: Command,
}

/// A preset name, a JSON file, or `-` for stdin; given positionally or
/// with `--cat`.
#[derive(Args)]
struct CatArg {
    #[arg(value_name = "CAT")]
    source: Option<String>,
    #[arg(long = "cat", value_name = "CAT", conflicts_with = "source")]
    cat: Option<String>,
}

impl CatArg {
    fn get(&self) -> Result<&str, Error> {
        self.cat
            .as_deref()
            .or(self.source.as_deref())
            .ok_or_else(|| Error::Parse("no category given (use --cat <preset|file|->)".into()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// S-matrix of the category (level 1) or of its braided module categories (level 2).
    Smatrix {
        #[command(flatten)]
        cat: CatArg,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        level: u8,
    },
    /// Diagonal T-matrix.
    Tmatrix {
        #[command(flatten)]
        cat: CatArg,
    },
    /// Müger center.
    Center {
        #[command(flatten)]
        cat: CatArg,
    },
    /// Lagrangian subgroups and the Drinfeld-center test.
    Lagrangian {
        #[command(flatten)]
        cat: CatArg,
    },
    /// Drinfeld double of a group; always prints JSON so it can be piped.
    Double {
        #[arg(value_name = "GROUP")]
        group: String,
    },
    /// Classes of abelian 3-cocycles with values in μ_N.
    Classify {
        #[arg(value_name = "GROUP")]
        group: String,
        #[arg(long, value_name = "N")]
        values: u64,
    },
    /// Schur classes of braided module categories and the π₀ count.
    Modcats {
        #[command(flatten)]
        cat: CatArg,
    },
    /// Checks the pentagon and hexagon equations of a (Ψ, Ω) file.
    CocycleCheck {
        #[command(flatten)]
        cat: CatArg,
    },
    /// Runs the verification battery.
    Battery,
}

struct Outcome {
    inputs: Value,
    results: Value,
    human: String,
    exit: u8,
}

impl Outcome {
    fn ok(inputs: Value, results: Value, human: String) -> Self {
        Outcome {
            inputs,
            results,
            human,
            exit: 0,
        }
    }
}

fn read_source(src: &str) -> Result<String, Error> {
    if src == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(src).map_err(|e| Error::Parse(format!("reading {src}: {e}")))
}

fn is_file_source(src: &str) -> bool {
    src == "-" || Path::new(src).is_file() || src.ends_with(".json") || src.contains('/')
}

fn load_category(src: &str, bound: usize) -> Result<PointedBFC, Error> {
    let b = if is_file_source(src) {
        category_from_str(&read_source(src)?)?
    } else {
        if let Some(g) = src.trim().to_ascii_lowercase().strip_prefix("double:") {
            let g: AbelianGroup = g.parse()?;
            check_order(&g.product(&g), bound)?;
        }
        PointedBFC::preset(src)?
    };
    check_order(b.group(), bound)?;
    Ok(b)
}

fn check_order(g: &AbelianGroup, bound: usize) -> Result<(), Error> {
    if g.order() > bound {
        return Err(Error::GroupTooLarge {
            order: g.order(),
            bound,
        });
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let bound = cli.max_group_order;
    match &cli.command {
        Command::Smatrix { cat, level } => {
            let b = load_category(cat.get()?, bound)?;
            let inputs = json!({"category": category_to_json(&b), "level": level});
            let results = if *level == 1 {
                let m = b.smatrix1()?;
                let rank = m.rank()?;
                json!({
                    "category": b.label(),
                    "matrix": matrix_to_json(&m),
                    "rank": rank,
                    "invertible": rank == m.rows(),
                })
            } else {
                smatrix2_report(&b)?
            };
            let human = render::smatrix(&results);
            Ok(Outcome::ok(inputs, results, human))
        }
        Command::Tmatrix { cat } => {
            let b = load_category(cat.get()?, bound)?;
            let results = json!({"category": b.label(), "matrix": matrix_to_json(&b.tmatrix()?)});
            let human = render::smatrix(&results);
            Ok(Outcome::ok(
                json!({"category": category_to_json(&b)}),
                results,
                human,
            ))
        }
        Command::Center { cat } => {
            let b = load_category(cat.get()?, bound)?;
            let z = b.mueger_center()?;
            let results = json!({
                "category": b.label(),
                "center": z.elements(),
                "order": z.order(),
                "nondegenerate": b.is_nondegenerate()?,
                "symmetric": b.is_symmetric()?,
            });
            let human = render::center(&results);
            Ok(Outcome::ok(
                json!({"category": category_to_json(&b)}),
                results,
                human,
            ))
        }
        Command::Lagrangian { cat } => {
            let b = load_category(cat.get()?, bound)?;
            let lag = b.lagrangian_subgroups(bound)?;
            let report = b.detect_center(bound)?;
            let results = json!({
                "category": b.label(),
                "lagrangians": lag.iter().map(|l| l.elements()).collect::<Vec<_>>(),
                "count": lag.len(),
                "nondegenerate": report.nondegenerate,
                "is_center": report.is_center,
                "degenerate_ambient": report.degenerate_ambient,
            });
            let human = render::lagrangian(&results);
            Ok(Outcome::ok(
                json!({"category": category_to_json(&b)}),
                results,
                human,
            ))
        }
        Command::Double { group } => {
            let g: AbelianGroup = group.parse()?;
            check_order(&g.product(&g), bound)?;
            let d = drinfeld_double(&g)?;
            let results = json!({
                "group": g.to_string(),
                "category": category_to_json(&d),
                "nondegenerate": d.is_nondegenerate()?,
            });
            Ok(Outcome::ok(
                json!({"group": g.to_string()}),
                results,
                String::new(),
            ))
        }
        Command::Classify { group, values } => {
            let g: AbelianGroup = group.parse()?;
            let classes = classify_h3ab(&g, *values)?;
            let elems = g.elements();
            let classes: Vec<Value> = classes
                .iter()
                .map(|c| {
                    let q: serde_json::Map<String, Value> = elems
                        .iter()
                        .map(|e| (element_key(e), json!(c.form.value(e))))
                        .collect();
                    json!({"q": q, "size": c.size.to_string()})
                })
                .collect();
            let results = json!({
                "group": g.to_string(),
                "values": values,
                "count": classes.len(),
                "classes": classes,
            });
            let human = render::classify(&results);
            Ok(Outcome::ok(
                json!({"group": g.to_string(), "values": values}),
                results,
                human,
            ))
        }
        Command::Modcats { cat } => {
            let b = load_category(cat.get()?, bound)?;
            let classes = schur_classes(&b)?;
            let pi0 = pi0_report(&b)?;
            let results = json!({
                "category": b.label(),
                "center": b.mueger_center()?.elements(),
                "classes": classes.iter().map(|(c, m)| json!({
                    "character": c.character().coords(),
                    "subgroup": m.subgroup().elements(),
                    "value_order": m.value_order(),
                })).collect::<Vec<_>>(),
                "pi0": {"pi0": pi0.pi0, "pi0_omega": pi0.pi0_omega, "equal": pi0.equal},
            });
            let human = render::modcats(&results);
            Ok(Outcome::ok(
                json!({"category": category_to_json(&b)}),
                results,
                human,
            ))
        }
        Command::CocycleCheck { cat } => {
            let src = cat.get()?;
            let v: Value = serde_json::from_str(&read_source(src)?)
                .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
            let c = cocycle_from_json(&v)?;
            check_order(c.group(), bound)?;
            let violation = c.first_violation();
            let mut results = json!({
                "group": c.group().to_string(),
                "valid": violation.is_none(),
                "normalized": c.is_normalized(),
            });
            match &violation {
                Some(w) => results["violation"] = json!(w.to_string()),
                None => {
                    let q = c.trace_form()?;
                    let elems = c.group().elements();
                    let q: serde_json::Map<String, Value> = elems
                        .iter()
                        .map(|e| (element_key(e), json!(q.value(e))))
                        .collect();
                    results["trace"] = Value::Object(q);
                }
            }
            let human = render::cocycle_check(&results);
            let inputs = json!({"psi": c.psi_table(), "omega": c.omega_table(), "group": c.group().to_string()});
            Ok(Outcome {
                inputs,
                results,
                human,
                exit: if violation.is_some() { 2 } else { 0 },
            })
        }
        Command::Battery => {
            let s = battery::run_default()?;
            let results = serde_json::to_value(&s).expect("battery summary serializes");
            let human = render::battery(&s);
            Ok(Outcome {
                inputs: json!({"roster": battery::DEFAULT_ROSTER}),
                exit: if s.pass { 0 } else { 1 },
                results,
                human,
            })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Smatrix { .. } => "smatrix",
        Command::Tmatrix { .. } => "tmatrix",
        Command::Center { .. } => "center",
        Command::Lagrangian { .. } => "lagrangian",
        Command::Double { .. } => "double",
        Command::Classify { .. } => "classify",
        Command::Modcats { .. } => "modcats",
        Command::CocycleCheck { .. } => "cocycle-check",
        Command::Battery => "battery",
    }
}

fn digest(command: &str, inputs: &Value) -> String {
    let canonical = json!({"command": command, "inputs": inputs}).to_string();
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Validation => 2,
        ErrorKind::Inconsistency => 3,
        ErrorKind::Bounds => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let name = command_name(&cli.command);
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let report = json!({
        "command": echo.join(" "),
        "inputs_digest": digest(name, &outcome.inputs),
        "results": outcome.results,
        "timing_ms": start.elapsed().as_millis() as u64,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let mut stdout = io::stdout().lock();
    let printed = if cli.json || matches!(cli.command, Command::Double { .. }) {
        writeln!(stdout, "{text}")
    } else {
        write!(stdout, "{}", outcome.human)
    };
    if printed.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit)
}
