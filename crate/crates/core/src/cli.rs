//! The `vogan` command-line front end.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::classify::{noticed_report, theorem55_check};
use crate::diagram::{Involution, WeightedVoganDiagram};
use crate::equiv::{equivalence_class, move_sequence, normalize_p};
use crate::error::{Error, Result};
use crate::rootsys::{cartan_matrix, diagram_automorphisms, RootSystem, SimpleType};
use crate::sweep::{classify_all, export_catalog, SweepOptions};

#[derive(Debug, Parser)]
#[command(name = "vogan", version, about = "Weighted Vogan diagram combinatorics")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the positive roots of a type such as `E6`.
    Roots { ty: String },
    /// Print the noticed equality and the two necessary conditions.
    Check { diagram: String },
    /// Decide whether two diagrams are equivalent under (A).
    Equiv {
        first: String,
        second: String,
        /// Also allow relabeling the second diagram by a diagram automorphism.
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Print the equivalence class of a diagram.
    Class { diagram: String },
    /// Print the least equivalent diagram with property (P).
    Normalize { diagram: String },
    /// Classify every diagram of a type and involution.
    Sweep {
        ty: String,
        /// Involution as 1-based images, e.g. `1,2,3,5,4`. Defaults to the identity.
        #[arg(long)]
        theta: Option<String>,
        /// List every member of every class.
        #[arg(long)]
        full: bool,
        /// Merge classes related by diagram automorphisms commuting with theta.
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Draw a diagram.
    Render {
        diagram: String,
        /// Emit Graphviz DOT instead of text art.
        #[arg(long)]
        dot: bool,
    },
}

/// Diagram arguments may be given in the text syntax or as JSON.
fn read_diagram(arg: &str) -> Result<WeightedVoganDiagram> {
    if arg.trim_start().starts_with('{') {
        WeightedVoganDiagram::from_json(arg)
    } else {
        arg.parse()
    }
}

fn parse_theta(ty: SimpleType, text: Option<&str>) -> Result<Involution> {
    let Some(text) = text else {
        return Ok(Involution::identity(ty.rank()));
    };
    let mut image = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let node: usize = part.trim().parse().map_err(|_| Error::Syntax {
            position: offset,
            message: format!("expected a node number, found {part:?}"),
        })?;
        image.push(node.wrapping_sub(1));
        offset += part.len() + 1;
    }
    Involution::new(&cartan_matrix(ty), image)
}

fn moves_text(moves: &[usize]) -> String {
    let list: Vec<String> = moves.iter().map(|j| format!("A@{}", j + 1)).collect();
    format!("[{}]", list.join(","))
}

fn execute(cli: &Cli) -> Result<String> {
    let json_out = cli.format == Format::Json;
    let out = match &cli.command {
        Command::Roots { ty } => {
            let ty: SimpleType = ty.parse()?;
            let rs = RootSystem::of_type(ty);
            if json_out {
                json!({ "type": ty.to_string(), "count": rs.len(), "roots": rs.roots() }).to_string()
            } else {
                rs.roots().iter().map(|r| format!("{r}\n")).collect::<String>()
            }
        }
        Command::Check { diagram } => {
            let d = read_diagram(diagram)?;
            let report = noticed_report(&d);
            let t55 = theorem55_check(&d);
            if json_out {
                json!({ "diagram": d, "report": report, "theorem55": t55 }).to_string()
            } else {
                let roots = |rs: &[crate::Root]| rs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                format!(
                    "{d}\nnoticed={} lhs={} rhs={}\nP_p(2): {}\ntheorem55 cardinality={} minimality={}\n",
                    report.noticed,
                    report.lhs,
                    report.rhs,
                    roots(&report.p_p_2),
                    t55.cardinality,
                    t55.minimality
                )
            }
        }
        Command::Equiv { first, second, up_to_iso } => {
            let d1 = read_diagram(first)?;
            let d2 = read_diagram(second)?;
            let mut found = move_sequence(&d1, &d2).map(|m| (None, m));
            if found.is_none() && *up_to_iso {
                found = diagram_automorphisms(d2.diagram()).into_iter().find_map(|sigma| {
                    let r = d2.relabel(&sigma).ok()?;
                    move_sequence(&d1, &r).map(|m| (Some(sigma), m))
                });
            }
            if json_out {
                match &found {
                    Some((sigma, moves)) => json!({
                        "equivalent": true,
                        "moves": moves.iter().map(|j| j + 1).collect::<Vec<_>>(),
                        "relabel": sigma.as_ref().map(|s| s.iter().map(|i| i + 1).collect::<Vec<_>>()),
                    })
                    .to_string(),
                    None => json!({ "equivalent": false }).to_string(),
                }
            } else {
                match &found {
                    Some((None, moves)) => format!("true moves={}\n", moves_text(moves)),
                    Some((Some(sigma), moves)) => {
                        let s: Vec<String> = sigma.iter().map(|i| (i + 1).to_string()).collect();
                        format!("true relabel={} moves={}\n", s.join(","), moves_text(moves))
                    }
                    None => "false\n".to_string(),
                }
            }
        }
        Command::Class { diagram } => {
            let d = read_diagram(diagram)?;
            let class = equivalence_class(&d);
            if json_out {
                serde_json::to_string(&class)?
            } else {
                let mut s = format!(
                    "canonical: {}\nsize={} noticed={}\n",
                    class.canonical,
                    class.len(),
                    class.noticed
                );
                for m in &class.members {
                    let mark = if class.property_p_members.contains(m) { " (P)" } else { "" };
                    s.push_str(&format!("  {m}{mark}\n"));
                }
                s
            }
        }
        Command::Normalize { diagram } => {
            let d = normalize_p(&read_diagram(diagram)?)?;
            if json_out {
                d.to_json()
            } else {
                format!("{d}\n")
            }
        }
        Command::Sweep { ty, theta, full, up_to_iso } => {
            let ty: SimpleType = ty.parse()?;
            let theta = parse_theta(ty, theta.as_deref())?;
            let opts = SweepOptions { full: *full, up_to_iso: *up_to_iso, verify: false };
            let catalog = classify_all(ty, &theta, opts)?;
            export_catalog(&catalog, if json_out { "json" } else { "text" })?
        }
        Command::Render { diagram, dot } => {
            let d = read_diagram(diagram)?;
            if *dot {
                d.to_dot()
            } else if json_out {
                d.to_json()
            } else {
                d.render_ascii()
            }
        }
    };
    Ok(if out.ends_with('\n') { out } else { out + "\n" })
}

/// Parses `args` (including the program name) and runs the command, writing
/// the document to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, S>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(doc) => {
            if out.write_all(doc.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
