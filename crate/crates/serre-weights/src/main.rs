//! Command line front end. Parses arguments, builds the arithmetic
//! context, and prints one JSON document per invocation.
//!
//! Exit codes: 0 success, 2 input or precondition error, 3 internal
//! assertion failure (including self-test failures).

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use serre_weights::{acceptance, commands, context::ContextFile, json as out};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "serre-weights", version, about = "Serre weight sets and Kisin model calculations for ramified p-adic fields")]
struct Cli {
    #[command(flatten)]
    ctx: CtxArgs,
    /// Lift the default size guards on f, e, and m.
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CtxArgs {
    /// JSON context file: {"p": .., "f": .., "e": .., "m"?, "n"?, "seed"?}.
    #[arg(long, global = true, value_name = "FILE")]
    ctx: Option<PathBuf>,
    /// Residue characteristic (odd prime); overrides the context file.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Residue degree; overrides the context file.
    #[arg(long, global = true)]
    f: Option<usize>,
    /// Ramification index; overrides the context file.
    #[arg(long, global = true)]
    e: Option<usize>,
    /// Coefficient field degree (default 2f); overrides the context file.
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Series truncation order; overrides the context file.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// PRNG seed for the sampling subcommands (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
}

impl CtxArgs {
    fn resolve(&self) -> Result<(ContextFile, u64), String> {
        let mut file = if let Some(path) = &self.ctx {
            ContextFile::from_path(path)?
        } else {
            let (Some(p), Some(f), Some(e)) = (self.p, self.f, self.e) else {
                return Err(
                    "no context given: pass --ctx FILE or all of --p, --f, --e".to_string()
                );
            };
            ContextFile { p, f, e, m: None, n: None, seed: None }
        };
        if let Some(p) = self.p {
            file.p = p;
        }
        if let Some(f) = self.f {
            file.f = f;
        }
        if let Some(e) = self.e {
            file.e = e;
        }
        if self.m.is_some() {
            file.m = self.m;
        }
        if self.n.is_some() {
            file.n = self.n;
        }
        let seed = self.seed.or(file.seed).unwrap_or(0);
        Ok((file, seed))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Serre weight set membership for the three representation shapes.
    #[command(subcommand)]
    Weights(WeightsCmd),
    /// Minimal and maximal Kisin models for an ordered character pair.
    Maxmin {
        /// Niveau-1 code of the quotient character.
        #[arg(long)]
        chi2: u64,
        /// Niveau-1 code of the sub character.
        #[arg(long)]
        chi: u64,
        /// Unramified scalar coordinates of the quotient character (default 1).
        #[arg(long, value_delimiter = ',')]
        a2: Option<Vec<u64>>,
        /// Unramified scalar coordinates of the sub character (default 1).
        #[arg(long, value_delimiter = ',')]
        a: Option<Vec<u64>>,
        /// Weight parameters r_0,..,r_{f-1}.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<usize>,
    },
    /// Extension class calculations over a fixed model pair.
    #[command(subcommand)]
    Ext(ExtCmd),
    /// Rebalance a diagonal subset description into a balanced witness.
    Rebalance {
        /// Embedding indices of the subset J (omit for the empty set).
        #[arg(long, value_delimiter = ',')]
        j: Option<Vec<usize>>,
        /// Twist exponents x_0,..,x_{2f-1}.
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<usize>,
        /// Weight parameters r_0,..,r_{2f-1}.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<usize>,
    },
    /// Independent cross-checks against brute-force enumeration.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Run the acceptance criteria and report pass/fail per criterion.
    Selftest {
        /// Run a single criterion (1..=11) instead of all of them.
        #[arg(long)]
        criterion: Option<usize>,
    },
}

#[derive(Subcommand)]
enum WeightsCmd {
    /// Weights of the split sum of two niveau-1 characters.
    Split {
        /// Niveau-1 code of the first diagonal character.
        #[arg(long)]
        chi1: u64,
        /// Niveau-1 code of the second diagonal character.
        #[arg(long)]
        chi2: u64,
    },
    /// Weights of the irreducible induction of a niveau-2 character.
    Irred {
        /// Niveau-2 code of the inducing character.
        #[arg(long)]
        chi: u64,
    },
    /// Membership of one weight for a non-split extension class.
    Ext {
        /// JSON file holding the extension class {"N", "P", "y"}.
        #[arg(long, value_name = "FILE")]
        ext: PathBuf,
        /// JSON file holding the weight {"a", "b"}.
        #[arg(long, value_name = "FILE")]
        weight: PathBuf,
        /// Treat the quotient-over-sub ratio as the cyclotomic character.
        #[arg(long)]
        cyclotomic: bool,
    },
}

#[derive(Subcommand)]
enum ExtCmd {
    /// Dimension data and class count for a model pair.
    Count {
        #[command(flatten)]
        pair: PairArgs,
        /// Weight parameters r_0,..,r_{f-1}.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<usize>,
    },
    /// Normal form of an extension class.
    NormalForm {
        /// JSON file holding the extension class {"N", "P", "y"}.
        #[arg(long, value_name = "FILE")]
        ext: PathBuf,
    },
    /// Move a class to another admissible model pair.
    Transform {
        /// JSON file holding the extension class {"N", "P", "y"}.
        #[arg(long, value_name = "FILE")]
        ext: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        /// Weight parameters r_0,..,r_{f-1}.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<usize>,
    },
}

#[derive(Args)]
struct PairArgs {
    /// Shifts of the quotient-side model N.
    #[arg(long, value_delimiter = ',', required = true)]
    quotient_s: Vec<usize>,
    /// Scalar coordinates of N (default 1).
    #[arg(long, value_delimiter = ',')]
    quotient_a: Option<Vec<u64>>,
    /// Shifts of the sub-side model P.
    #[arg(long, value_delimiter = ',', required = true)]
    sub_s: Vec<usize>,
    /// Scalar coordinates of P (default 1).
    #[arg(long, value_delimiter = ',')]
    sub_a: Option<Vec<u64>>,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Random structure samples checked against the divisibility boxes.
    Struct {
        /// Weight parameters r_0,..,r_{f-1}.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<usize>,
        /// Number of samples.
        #[arg(long, default_value_t = 10)]
        count: u64,
    },
    /// Brute-force balanced witness search for a niveau-2f character.
    Balanced {
        /// Niveau-2 code of the character.
        #[arg(long)]
        chi: u64,
        /// Weight parameters r_0,..,r_{f-1}.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<usize>,
    },
    /// Exhaustive model-extreme search cross-checked against maxmin.
    Maxmin {
        /// Niveau-1 code of the quotient character.
        #[arg(long)]
        chi2: u64,
        /// Niveau-1 code of the sub character.
        #[arg(long)]
        chi: u64,
        /// Weight parameters r_0,..,r_{f-1}.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<usize>,
    },
    /// Taylor coefficient valuation bounds on random ramified samples.
    Taylor {
        /// Level parameter, between 1 and p.
        #[arg(long)]
        ell: usize,
        /// Number of samples.
        #[arg(long, default_value_t = 10)]
        count: u64,
    },
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("invalid JSON in {}: {e}", path.display()))
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable value"));
}

fn panic_text(payload: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "non-string panic payload".to_string()
    }
}

fn selftest(only: Option<usize>) -> i32 {
    if let Some(id) = only {
        if !(1..=acceptance::CRITERIA.len()).contains(&id) {
            print_json(&json!({
                "error": format!("criterion {id} out of range 1..={}", acceptance::CRITERIA.len()),
            }));
            return 2;
        }
    }
    let mut rows = Vec::new();
    let mut all_pass = true;
    for result in acceptance::run_all(only) {
        match &result.outcome {
            Ok(()) => {
                eprintln!("criterion {} ({}): pass", result.id, result.name);
                rows.push(json!({ "id": result.id, "name": result.name, "pass": true }));
            }
            Err(msg) => {
                eprintln!("criterion {} ({}): FAIL: {msg}", result.id, result.name);
                rows.push(json!({
                    "id": result.id,
                    "name": result.name,
                    "pass": false,
                    "error": msg,
                }));
                all_pass = false;
            }
        }
    }
    print_json(&json!({ "criteria": rows, "all_pass": all_pass }));
    if all_pass {
        0
    } else {
        3
    }
}

fn dispatch(cli: &Cli) -> i32 {
    let (file, seed) = match cli.ctx.resolve() {
        Ok(pair) => pair,
        Err(msg) => {
            print_json(&json!({ "error": msg }));
            return 2;
        }
    };
    let ctx = match file.build(cli.allow_large) {
        Ok(ctx) => ctx,
        Err(msg) => {
            print_json(&json!({ "error": msg }));
            return 2;
        }
    };

    let run = || -> commands::CmdResult {
        match &cli.cmd {
            Cmd::Weights(WeightsCmd::Split { chi1, chi2 }) => {
                commands::weights_split(&ctx, *chi1, *chi2)
            }
            Cmd::Weights(WeightsCmd::Irred { chi }) => commands::weights_irred(&ctx, *chi),
            Cmd::Weights(WeightsCmd::Ext { ext, weight, cyclotomic }) => {
                let ext = read_json(ext)?;
                let weight = read_json(weight)?;
                commands::weights_ext(&ctx, &ext, &weight, *cyclotomic)
            }
            Cmd::Maxmin { chi2, chi, a2, a, r } => {
                commands::maxmin(&ctx, *chi2, *chi, a2.as_deref(), a.as_deref(), r)
            }
            Cmd::Ext(ExtCmd::Count { pair, r }) => commands::ext_count(
                &ctx,
                &pair.quotient_s,
                pair.quotient_a.as_deref(),
                &pair.sub_s,
                pair.sub_a.as_deref(),
                r,
            ),
            Cmd::Ext(ExtCmd::NormalForm { ext }) => {
                let ext = read_json(ext)?;
                commands::ext_normal_form(&ctx, &ext)
            }
            Cmd::Ext(ExtCmd::Transform { ext, pair, r }) => {
                let ext = read_json(ext)?;
                commands::ext_transform(
                    &ctx,
                    &ext,
                    &pair.quotient_s,
                    pair.quotient_a.as_deref(),
                    &pair.sub_s,
                    pair.sub_a.as_deref(),
                    r,
                )
            }
            Cmd::Rebalance { j, x, r } => {
                commands::rebalance_cmd(&ctx, j.as_deref().unwrap_or(&[]), x, r)
            }
            Cmd::Oracle(OracleCmd::Struct { r, count }) => {
                commands::oracle_struct(&ctx, r, seed, *count)
            }
            Cmd::Oracle(OracleCmd::Balanced { chi, r }) => {
                commands::oracle_balanced(&ctx, *chi, r)
            }
            Cmd::Oracle(OracleCmd::Maxmin { chi2, chi, r }) => {
                commands::oracle_maxmin(&ctx, *chi2, *chi, r)
            }
            Cmd::Oracle(OracleCmd::Taylor { ell, count }) => {
                commands::oracle_taylor(&ctx, *ell, seed, *count)
            }
            Cmd::Selftest { .. } => unreachable!("handled before context construction"),
        }
    };

    match catch_unwind(AssertUnwindSafe(run)) {
        Ok(Ok(body)) => {
            print_json(&out::report(&ctx, body));
            0
        }
        Ok(Err(msg)) => {
            print_json(&json!({ "error": msg }));
            2
        }
        Err(payload) => {
            print_json(&json!({
                "error": format!("internal assertion failure: {}", panic_text(payload)),
            }));
            3
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                err.exit();
            }
            print_json(&json!({ "error": err.to_string() }));
            std::process::exit(2);
        }
    };
    let code = match cli.cmd {
        Cmd::Selftest { criterion } => selftest(criterion),
        _ => dispatch(&cli),
    };
    std::process::exit(code);
}
