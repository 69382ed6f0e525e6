use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sl2triv::blocks::{block_distribution, brauer_correspondent, pim_characters};
use sl2triv::chartables::{irr_dicyclic, irr_psl2, irr_sl2, CharacterTable};
use sl2triv::groups::chain::TorusKind;
use sl2triv::groups::class_reps;
use sl2triv::oracle::{verify, BUDGET_ENV, DEFAULT_BUDGET, DEFAULT_SEED};
use sl2triv::{assemble, GroupKind};

const REGIMES: &str = "supported: l odd dividing q-1 or q+1 (SL2, q odd, l != p), or l = 2 with q = +-3 mod 8 (SL2 or PSL2)";

#[derive(Parser)]
#[command(name = "sl2triv", version, about = "Trivial source character tables of SL2(q) and PSL2(q)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    Sl2,
    Psl2,
    N,
    Nprime,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Csv,
    Text,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value = "sl2")]
    group: Group,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// The trivial source character table.
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ell: u64,
        /// Print floating point approximations instead of exact values.
        #[arg(long)]
        approx: bool,
    },
    /// Ordinary character table of SL2(q), PSL2(q), N or N'.
    Chartab {
        #[command(flatten)]
        common: Common,
        /// Dump class representatives as JSON.
        #[arg(long)]
        dump_classes: bool,
    },
    /// l-blocks with Brauer trees and PIMs.
    Blocks {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ell: u64,
    },
    /// Certify the table by brute force.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ell: u64,
        /// Largest |G| enumerated.
        #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

fn group_kind(g: Group) -> Result<GroupKind, Failure> {
    match g {
        Group::Sl2 => Ok(GroupKind::SL2),
        Group::Psl2 => Ok(GroupKind::PSL2),
        _ => Err(Failure::Usage("this subcommand needs --group sl2 or psl2".into())),
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(format!("{e}\n{REGIMES}"))
}

fn chartab_text(t: &CharacterTable) -> String {
    let mut out = format!("{} (q = {}), order {}\n", t.group, t.q, t.order);
    out.push_str(&format!("classes: {}\n", t.class_names.join(", ")));
    out.push_str(&format!("sizes:   {}\n", t.class_sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")));
    for c in &t.characters {
        out.push_str(&format!("{}: {}\n", c.id, c.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")));
    }
    out
}

fn chartab_latex(t: &CharacterTable) -> String {
    let mut out = format!("\\begin{{array}}{{l|{}}}\n", "c".repeat(t.classes.len()));
    out.push_str(&format!(" & {} \\\\\n\\hline\n", t.class_names.join(" & ")));
    for c in &t.characters {
        let cells: Vec<String> = c.values.iter().map(|v| v.to_latex()).collect();
        out.push_str(&format!("\\mathrm{{{}}} & {} \\\\\n", c.id, cells.join(" & ")));
    }
    out.push_str("\\end{array}\n");
    out
}

fn chartab_csv(t: &CharacterTable) -> String {
    let mut out = format!("character,{}\n", t.class_names.join(","));
    for c in &t.characters {
        out.push_str(&format!("{},{}\n", c.id, c.values.iter().map(|v| format!("\"{v}\"")).collect::<Vec<_>>().join(",")));
    }
    out
}

fn run(cli: Cli) -> Result<(String, Option<String>), Failure> {
    match cli.cmd {
        Cmd::Table { common, ell, approx } => {
            let kind = group_kind(common.group)?;
            let t = assemble(common.q, ell, kind).map_err(usage)?;
            let s = match common.format {
                Format::Json => t.to_json(),
                Format::Latex => t.to_latex(approx),
                Format::Csv => t.to_csv(),
                Format::Text => t.to_text(approx),
            };
            Ok((s, common.out))
        }
        Cmd::Chartab { common, dump_classes } => {
            let q = common.q;
            if dump_classes {
                let kind = group_kind(common.group)?;
                let reps = class_reps(q, kind).map_err(usage)?;
                let v: Vec<_> = reps.iter().map(|(l, m)| json!({"class": l.to_string(), "rep": [[m.a, m.b], [m.c, m.d]]})).collect();
                return Ok((serde_json::to_string_pretty(&v).expect("json"), common.out));
            }
            let t = match common.group {
                Group::Sl2 => irr_sl2(q),
                Group::Psl2 => irr_psl2(q),
                Group::N => irr_dicyclic(q, TorusKind::Split),
                Group::Nprime => irr_dicyclic(q, TorusKind::NonSplit),
            }
            .map_err(usage)?;
            let s = match common.format {
                Format::Json => serde_json::to_string_pretty(&t).expect("json"),
                Format::Latex => chartab_latex(&t),
                Format::Csv => chartab_csv(&t),
                Format::Text => chartab_text(&t),
            };
            Ok((s, common.out))
        }
        Cmd::Blocks { common, ell } => {
            let kind = group_kind(common.group)?;
            let blocks = block_distribution(common.q, ell, kind).map_err(usage)?;
            let s = match common.format {
                Format::Json => {
                    let v: Vec<_> = blocks
                        .iter()
                        .map(|b| {
                            let pims: Vec<Vec<String>> = pim_characters(b)
                                .iter()
                                .map(|p| p.iter().map(|(c, m)| if *m == 1 { c.to_string() } else { format!("{m} {c}") }).collect())
                                .collect();
                            json!({"block": b, "pims": pims, "correspondent": brauer_correspondent(common.q, b).ok()})
                        })
                        .collect();
                    serde_json::to_string_pretty(&v).expect("json")
                }
                Format::Text | Format::Csv | Format::Latex => {
                    let mut out = String::new();
                    for b in &blocks {
                        let members: Vec<String> = b.members.iter().map(|c| c.to_string()).collect();
                        out.push_str(&format!("{} defect {} ({}): {}\n", b.id, b.defect, b.defect_order, members.join(", ")));
                        for p in pim_characters(b) {
                            let parts: Vec<String> = p.iter().map(|(c, m)| if *m == 1 { c.to_string() } else { format!("{m} {c}") }).collect();
                            out.push_str(&format!("  PIM {}\n", parts.join(" + ")));
                        }
                    }
                    out
                }
            };
            Ok((s, common.out))
        }
        Cmd::Verify { common, ell, budget, seed } => {
            let kind = group_kind(common.group)?;
            let report = verify(common.q, ell, kind, budget, seed).map_err(usage)?;
            let s = match common.format {
                Format::Json => report.to_json(),
                _ => report.to_string(),
            };
            if report.passed() {
                Ok((s, common.out))
            } else {
                emit(&s, common.out.as_deref()).map_err(Failure::Usage)?;
                Err(Failure::Verification("verification failed".into()))
            }
        }
    }
}

fn emit(s: &str, out: Option<&str>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, format!("{s}\n")).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            let mut o = std::io::stdout().lock();
            writeln!(o, "{s}").map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((s, out)) => match emit(&s, out.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(e)) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
