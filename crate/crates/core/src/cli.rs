//! Command-line front end. The binary only parses arguments, calls
//! [`run`], prints the result and sets the exit code.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::adem::{admissible_basis, normalize, parse_expression, Degree};
use crate::error::Result;
use crate::exotic::{two_order_zero_certificate, verify as verify_exotic, DEFAULT_MAX_RANK};
use crate::modules::{consistency_check, is_decomposable, tensor, violation_classes, ModuleFile};
use crate::oracle::oracle_equal;
use crate::prime::Prime;
use crate::scenario::{
    run_all, scenario_exotic, scenario_prop2, scenario_prop3, scenario_prop5, scenario_prop6, ScenarioReport,
    PROP3_DEFAULT, PROP6_DEFAULT,
};
use crate::stems::{associator_obstruction, moore_endomorphisms, moore_homotopy, Stem, StemsTable};

#[derive(Debug, Parser)]
#[command(name = "torsion-bench", version, about = "Steenrod algebra, Moore spectra and F(Z/4) checks")]
pub struct Cli {
    /// Prime for Steenrod-algebra commands.
    #[arg(long, global = true, default_value = "2")]
    pub prime: Prime,
    /// Degree bound for oracle comparisons and relation checks.
    #[arg(long, global = true)]
    pub max_degree: Option<i64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Extra stable stems (JSON list of entries).
    #[arg(long, global = true)]
    pub stems_file: Option<PathBuf>,
    /// Run independent scenarios concurrently.
    #[arg(long, global = true)]
    pub parallel: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissible normal form of an expression such as "(P^3)^3".
    Normalize { expression: String },
    /// Compare an expression with its normal form (or with a second
    /// expression) by acting on the polynomial oracle.
    OracleCheck { expression: String, other: Option<String> },
    /// Admissible monomials in one degree.
    Basis { degree: i64 },
    /// Module files: relation check, tensor product, decomposition.
    Module {
        #[command(subcommand)]
        command: ModuleCommand,
    },
    /// π_k of the sphere, or of S/n with --moore.
    Pi {
        k: i64,
        #[arg(long)]
        moore: Option<u64>,
    },
    /// [S/n, S/n].
    Endo { n: u64 },
    /// The associativity obstruction group π_3(S/n).
    Associator { n: u64 },
    /// Checks on F(Z/4).
    Exotic {
        #[command(subcommand)]
        command: ExoticCommand,
    },
    /// Verification scenarios; exit code 0 iff all pass.
    Scenario {
        #[command(subcommand)]
        which: ScenarioCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModuleCommand {
    Check { file: PathBuf },
    Tensor { a: PathBuf, b: PathBuf },
    Decompose { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ExoticCommand {
    Verify {
        #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
        max_rank: usize,
    },
    TwoOrder,
}

#[derive(Debug, Subcommand)]
pub enum ScenarioCommand {
    Prop2,
    Prop3 {
        n: Vec<u64>,
    },
    Prop5,
    Prop6 {
        n: Vec<u64>,
    },
    Exotic {
        #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
        max_rank: usize,
    },
    All {
        #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
        max_rank: usize,
    },
}

/// What a command produced: text, the same content as JSON, and whether
/// it counts as success for the exit code.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub success: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, success: true }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("serializable") + "\n"
        } else {
            self.text.clone()
        }
    }
}

fn stems_table(cli: &Cli) -> Result<StemsTable> {
    match &cli.stems_file {
        Some(path) => StemsTable::with_file(path),
        None => Ok(StemsTable::reference()),
    }
}

fn scenarios(reports: Vec<ScenarioReport>) -> Outcome {
    let success = reports.iter().all(ScenarioReport::passes);
    let mut text: String = reports.iter().map(ScenarioReport::to_text).collect::<Vec<_>>().join("\n");
    if reports.len() > 1 {
        let passed = reports.iter().filter(|r| r.passes()).count();
        writeln!(text, "\n{passed}/{} scenarios passed", reports.len()).unwrap();
    }
    Outcome { text, json: serde_json::to_value(&reports).expect("serializable"), success }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let p = cli.prime;
    match &cli.command {
        Command::Normalize { expression } => {
            let e = parse_expression(expression, p)?;
            let n = normalize(&e);
            let degree = match n.degree() {
                Degree::Homogeneous(d) => json!(d),
                Degree::Any => json!("any"),
                Degree::NonHomogeneous => json!("non-homogeneous"),
            };
            Ok(Outcome::ok(
                format!("{n}\n"),
                json!({"prime": p.value(), "input": expression, "normalized": n.to_string(), "degree": degree}),
            ))
        }
        Command::OracleCheck { expression, other } => {
            let a = parse_expression(expression, p)?;
            let b = match other {
                Some(o) => parse_expression(o, p)?,
                None => normalize(&a),
            };
            let top = [&a, &b].iter().flat_map(|e| e.homogeneous_parts().into_keys()).max().unwrap_or(0);
            let max_degree = cli.max_degree.unwrap_or(top.max(1));
            let equal = oracle_equal(&a, &b, max_degree)?;
            Ok(Outcome {
                text: format!("{a}  vs  {b}: {}\n", if equal { "equal on the oracle" } else { "DIFFERENT" }),
                json: json!({"prime": p.value(), "left": a.to_string(), "right": b.to_string(),
                             "max_degree": max_degree, "equal": equal}),
                success: equal,
            })
        }
        Command::Basis { degree } => {
            let basis = admissible_basis(p, *degree);
            let names: Vec<String> = basis.iter().map(ToString::to_string).collect();
            let mut text = format!("{} admissible monomials in degree {degree} at p = {p}\n", names.len());
            for n in &names {
                writeln!(text, "  {n}").unwrap();
            }
            Ok(Outcome::ok(text, json!({"prime": p.value(), "degree": degree, "basis": names})))
        }
        Command::Module { command } => run_module(cli, command),
        Command::Pi { k, moore } => {
            let table = stems_table(cli)?;
            match moore {
                Some(n) => {
                    let g = moore_homotopy(&table, *n, *k);
                    Ok(Outcome {
                        text: format!("π_{k}(S/{n}) = {g}\n"),
                        success: g.is_known(),
                        json: json!({"k": k, "n": n, "value": g}),
                    })
                }
                None => {
                    let (text, value) = match table.stems(*k) {
                        Stem::Known { group, provenance } => {
                            (format!("π_{k} = {group}\n"), json!({"group": group, "provenance": provenance}))
                        }
                        Stem::PPrimary { parts, provenance } => {
                            let s: Vec<String> = parts.iter().map(|(q, g)| format!("{q}-primary {g}")).collect();
                            (
                                format!("π_{k}: {}\n", s.join(", ")),
                                json!({"p_primary": parts, "provenance": provenance}),
                            )
                        }
                        Stem::Unknown => (format!("π_{k}: unknown\n"), json!("unknown")),
                    };
                    Ok(Outcome::ok(text, json!({"k": k, "value": value})))
                }
            }
        }
        Command::Endo { n } => {
            let e = moore_endomorphisms(&stems_table(cli)?, *n);
            let mut text = format!("[S/{n}, S/{n}] = {}\n", e.group);
            writeln!(text, "  sub π_1(S/{n}) ⊗ Z/{n} = {}", e.sub).unwrap();
            writeln!(text, "  quotient π_0(S/{n})[{n}] = {}", e.quotient).unwrap();
            if let Some(o) = e.identity_order {
                writeln!(text, "  identity has order {o}").unwrap();
            }
            Ok(Outcome { text, success: e.group.is_known(), json: serde_json::to_value(&e).expect("serializable") })
        }
        Command::Associator { n } => {
            let g = associator_obstruction(&stems_table(cli)?, *n);
            let verdict = match g.is_trivial() {
                Some(true) => "vanishes: the multiplication is associative",
                Some(false) => "nonzero",
                None => "undetermined",
            };
            Ok(Outcome {
                text: format!("π_3(S/{n}) = {g}; obstruction {verdict}\n"),
                success: g.is_known(),
                json: json!({"n": n, "group": g, "vanishes": g.is_trivial()}),
            })
        }
        Command::Exotic { command } => match command {
            ExoticCommand::Verify { max_rank } => {
                let r = verify_exotic(*max_rank)?;
                Ok(Outcome {
                    text: format!("{r:#?}\n{}\n", if r.passes() { "all checks pass" } else { "FAILED" }),
                    success: r.passes(),
                    json: serde_json::to_value(&r).expect("serializable"),
                })
            }
            ExoticCommand::TwoOrder => {
                let c = two_order_zero_certificate()?;
                Ok(Outcome {
                    text: format!("{c:#?}\n"),
                    success: c.passes(),
                    json: serde_json::to_value(&c).expect("serializable"),
                })
            }
        },
        Command::Scenario { which } => {
            let table = stems_table(cli)?;
            let list = |ns: &Vec<u64>, default: &[u64]| if ns.is_empty() { default.to_vec() } else { ns.clone() };
            let reports = match which {
                ScenarioCommand::Prop2 => vec![scenario_prop2()],
                ScenarioCommand::Prop3 { n } => {
                    list(n, &PROP3_DEFAULT).into_iter().map(|n| scenario_prop3(&table, n)).collect()
                }
                ScenarioCommand::Prop5 => vec![scenario_prop5(&table)],
                ScenarioCommand::Prop6 { n } => {
                    list(n, &PROP6_DEFAULT).into_iter().map(|n| scenario_prop6(&table, n)).collect()
                }
                ScenarioCommand::Exotic { max_rank } => vec![scenario_exotic(*max_rank)],
                ScenarioCommand::All { max_rank } => run_all(&table, *max_rank, cli.parallel),
            };
            Ok(scenarios(reports))
        }
    }
}

fn run_module(cli: &Cli, command: &ModuleCommand) -> Result<Outcome> {
    match command {
        ModuleCommand::Check { file } => {
            let m = ModuleFile::read(file)?;
            let max = cli.max_degree.unwrap_or(40);
            let violations = consistency_check(&m, max);
            let classes = violation_classes(&violations);
            let mut text = format!(
                "{} violations in {} classes (relations up to degree {max})\n",
                violations.len(),
                classes.len()
            );
            let mut classes_json = Vec::new();
            for c in &classes {
                writeln!(text, "  degree {} → {}:", c.source_degree, c.target_degree).unwrap();
                let mut rels = Vec::new();
                for v in &c.violations {
                    writeln!(text, "    {} = {}  witness {:?}", v.relation.0, v.relation.1, v.witness).unwrap();
                    rels.push(json!({"left": v.relation.0.to_string(), "right": v.relation.1.to_string(),
                                     "witness": v.witness, "left_image": v.left_image, "right_image": v.right_image}));
                }
                classes_json.push(json!({"source_degree": c.source_degree, "target_degree": c.target_degree,
                                         "violations": rels}));
            }
            Ok(Outcome {
                text,
                success: violations.is_empty(),
                json: json!({"max_degree": max, "classes": classes_json}),
            })
        }
        ModuleCommand::Tensor { a, b } => {
            let t = tensor(&ModuleFile::read(a)?, &ModuleFile::read(b)?)?;
            let file = ModuleFile::from_module(&t);
            Ok(Outcome::ok(ModuleFile::to_json(&t) + "\n", serde_json::to_value(&file).expect("serializable")))
        }
        ModuleCommand::Decompose { file } => {
            let m = ModuleFile::read(file)?;
            let d = is_decomposable(&m)?;
            let (text, value) = match d.splitting() {
                None => ("indecomposable\n".to_string(), json!({"decomposable": false})),
                Some(s) => (
                    format!(
                        "decomposable: image of the idempotent has dims {:?}, kernel has dims {:?}\n",
                        s.image.dims(),
                        s.kernel.dims()
                    ),
                    json!({"decomposable": true, "summands": [ModuleFile::from_module(&s.image), ModuleFile::from_module(&s.kernel)]}),
                ),
            };
            Ok(Outcome::ok(text, value))
        }
    }
}
