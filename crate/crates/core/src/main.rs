use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use wnalg::engine::{self, AlgebraKind, CheckOptions};
use wnalg::frontend::{parse_expr_in, parse_identity, render_poly, vars_to_gens};
use wnalg::oracle::{IdentitySet, Oracle, DEFAULT_CAP};
use wnalg::scalar::Field;
use wnalg::verify::{self, Suite};
use wnalg::word::Multidegree;

#[derive(Parser)]
#[command(
    name = "wnalg",
    version,
    about = "Normal forms and T-ideal computations for metabelian weakly Novikov algebras"
)]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression on generators x1, x2, ...
    Normalize {
        #[arg(long, default_value = "wnov")]
        algebra: AlgebraKind,
        #[arg(long, default_value = "q")]
        field: Field,
        expr: String,
    },
    /// Dimension of one component of a relatively free algebra.
    Dim {
        /// Preset name, `a+b` union of presets, or path to an identity file.
        #[arg(long)]
        identities: String,
        /// Multiplicities of x1, x2, ..., comma separated.
        #[arg(long, value_parser = parse_multidegree)]
        multidegree: Multidegree,
        #[arg(long, default_value = "q")]
        field: Field,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
    },
    /// Words spanning one component of a relatively free algebra.
    Basis {
        #[arg(long)]
        identities: String,
        #[arg(long, value_parser = parse_multidegree)]
        multidegree: Multidegree,
        #[arg(long, default_value = "q")]
        field: Field,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
    },
    /// Substitutes basis elements into an identity `<expr over v1, v2, ...> = 0`.
    CheckIdentity {
        #[arg(long)]
        algebra: AlgebraKind,
        #[arg(long)]
        identity: String,
        #[arg(long, default_value_t = 7)]
        max_degree: u32,
        /// Generators x1..x<pool> available for substitution.
        #[arg(long, default_value_t = 5)]
        pool: u32,
    },
    /// Whether a homogeneous polynomial lies in the T-ideal.
    Membership {
        #[arg(long)]
        identities: String,
        #[arg(long, default_value = "q")]
        field: Field,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
        expr: String,
    },
    /// Nilpotency verdict for the variety defined by a multilinear identity.
    Classify {
        /// Skip the oracle check of bounds that fit under the cap.
        #[arg(long)]
        no_verify: bool,
        #[arg(long, default_value = "fp:1009")]
        field: Field,
        expr: String,
    },
    /// Left nilpotency index of a table algebra.
    Nilpotency {
        #[arg(long, default_value = "wnov")]
        algebra: AlgebraKind,
        #[arg(long, default_value_t = engine::MAX_LEFT_CAP)]
        cap: u32,
    },
    /// Runs the acceptance checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
}

fn parse_multidegree(s: &str) -> Result<Multidegree, String> {
    let m: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("bad multiplicity '{p}': {e}")))
        .collect::<Result<_, _>>()?;
    if m.iter().all(|&c| c == 0) {
        return Err("multidegree must be nonzero".into());
    }
    Ok(Multidegree::from_multiplicities(&m))
}

fn multiplicities(md: &Multidegree) -> Vec<u32> {
    let top = md.counts().keys().max().copied().unwrap_or(0);
    (1..=top).map(|g| md.get(g)).collect()
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let json = cli.json;
    match cli.command {
        Command::Normalize { algebra, field, expr } => {
            let p = parse_expr_in(&expr, field)?;
            let nf = algebra.normalize(&p)?;
            if json {
                println!(
                    "{}",
                    json!({ "algebra": algebra.to_string(), "field": field.to_string(), "input": render_poly(&p), "normal_form": nf })
                );
            } else {
                println!("{nf}");
            }
        }
        Command::Dim {
            identities: list,
            multidegree,
            field,
            cap,
        } => {
            let ids = IdentitySet::resolve(&list)?;
            let c = Oracle { field, cap }.component(&ids, &multidegree)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "identities": ids.name(),
                        "multidegree": multiplicities(&multidegree),
                        "field": field.to_string(),
                        "words": c.word_count(),
                        "relations": c.relation_count(),
                        "rank": c.rank(),
                        "dimension": c.dimension(),
                    })
                );
            } else {
                println!("{}", c.dimension());
            }
        }
        Command::Basis {
            identities: list,
            multidegree,
            field,
            cap,
        } => {
            let ids = IdentitySet::resolve(&list)?;
            let words = Oracle { field, cap }.quotient_basis(&ids, &multidegree)?;
            if json {
                let words: Vec<String> = words.iter().map(|w| w.to_string()).collect();
                println!(
                    "{}",
                    json!({ "identities": ids.name(), "multidegree": multiplicities(&multidegree), "basis": words })
                );
            } else {
                for w in words {
                    println!("{w}");
                }
            }
        }
        Command::CheckIdentity {
            algebra,
            identity,
            max_degree,
            pool,
        } => {
            let f = parse_identity(&identity)?;
            let opts = CheckOptions {
                pool,
                max_degree,
                slot_cap: None,
            };
            let report = engine::check_identity(algebra, &f, opts)?;
            if json {
                println!("{}", report.to_json());
            } else {
                println!("{report}");
            }
        }
        Command::Membership {
            identities: list,
            field,
            cap,
            expr,
        } => {
            let ids = IdentitySet::resolve(&list)?;
            let p = vars_to_gens(&parse_expr_in(&expr, field)?);
            let member = Oracle { field, cap }.membership(&p, &ids)?;
            if json {
                println!(
                    "{}",
                    json!({ "identities": ids.name(), "input": render_poly(&p), "member": member })
                );
            } else {
                println!("{member}");
            }
        }
        Command::Classify { no_verify, field, expr } => {
            let f = parse_expr_in(&expr, Field::Rational)?;
            let c = engine::classify_multilinear(&f)?;
            let profile = if no_verify {
                None
            } else {
                engine::verify_bound(&c, &Oracle::over(field))?
            };
            if json {
                let mut v = c.to_json();
                if let Some(p) = &profile {
                    v["oracle"] = json!({ "degree": p.degree, "field": field.to_string(), "confirmed": p.all_zero() });
                }
                println!("{v}");
            } else {
                println!("{c}");
                println!("normal form: {}", c.coordinates);
                if let Some(p) = &profile {
                    let word = if p.all_zero() { "confirmed" } else { "CONTRADICTED" };
                    println!("oracle: degree {} components over {field} {word}", p.degree);
                }
            }
            if profile.is_some_and(|p| !p.all_zero()) {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Nilpotency { algebra, cap } => {
            let r = engine::left_nilpotency_index(algebra, cap)?;
            if json {
                println!(
                    "{}",
                    json!({ "algebra": algebra.to_string(), "index": r.index(), "witness": r.witness().to_string(), "text": r.to_string() })
                );
            } else {
                println!("{r}");
            }
        }
        Command::Verify { suite } => {
            let outcomes = verify::run_suite(suite);
            let passed = outcomes.iter().filter(|o| o.passed).count();
            if json {
                let list: Vec<_> = outcomes
                    .iter()
                    .map(|o| json!({ "criterion": o.id, "title": o.title, "passed": o.passed, "detail": o.detail, "seconds": o.elapsed.as_secs_f64() }))
                    .collect();
                println!("{}", json!({ "passed": passed, "total": outcomes.len(), "criteria": list }));
            } else {
                for o in &outcomes {
                    println!("{o}");
                }
                println!("{passed} of {} criteria passed", outcomes.len());
            }
            if passed != outcomes.len() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
