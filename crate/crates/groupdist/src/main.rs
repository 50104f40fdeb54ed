//! Command-line surface over the library: distances, class distances,
//! catalog tables, the quadruple sieve, rainbow thresholds, the special
//! searches, and the constructions.

use clap::{Args, Parser, Subcommand};
use groupdist::cayley::CayleyTable;
use groupdist::error::Error;
use groupdist::io::{parse_group, parse_table, serialize_table, Cache, Report};
use groupdist::search::SearchConfig;
use groupdist::{catalog, construct, metrics, rainbow, search, sieve, special};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "groupdist", version, about = "Hamming distances of group multiplication tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Skip the cache for both reads and writes.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Node budget; exceeding it reports the incumbent as unproven.
    #[arg(long)]
    budget: Option<u64>,
    /// Parallelize over top-level search branches.
    #[arg(long)]
    parallel: bool,
    /// Coset depth up to which automorphism lex-pruning applies.
    #[arg(long, default_value_t = 3)]
    aut_depth: usize,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            initial_upper_bound: None,
            aut_prune_depth: self.aut_depth,
            parallel: self.parallel,
            budget: self.budget,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the isomorphism classes of a supported order.
    Catalog {
        n: usize,
        /// Write each table as <name>.tbl into this directory.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Check the group axioms of a table file.
    Verify {
        file: PathBuf,
        /// Accept tables that are not groups (violations are still listed).
        #[arg(long)]
        allow_invalid: bool,
    },
    /// Cell distance and the full distance profile of two tables.
    Dist { a: PathBuf, b: PathBuf },
    /// Exact minimum distance between the isomorphism classes of two tables.
    Classdist {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// The class-distance matrix over the catalog of an order.
    Table {
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Quadruple elimination: stage counts, survivors, and bound states.
    Sieve {
        /// Emit only the named stage ("chain", "m2", "ig", "pipeline").
        #[arg(long)]
        stage: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Rainbow-matching threshold mu_l(v).
    Mu {
        l: usize,
        v: usize,
        /// Recompute even when cached or long-running.
        #[arg(long)]
        recompute: bool,
    },
    /// The specialized searches.
    #[command(subcommand)]
    Special(SpecialCmd),
    /// Distance-realizing constructions.
    #[command(subcommand)]
    Construct(ConstructCmd),
}

#[derive(Subcommand)]
enum SpecialCmd {
    /// Closest group to C_n among operations differing in two generator-row
    /// cells.
    M2 { n: usize },
    /// Closest cyclic reconstruction with exactly d differences in a
    /// generator row of C_n.
    Cyclic { n: usize, d: usize },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Quarter-distance construction over a cyclic quotient.
    Cyclic {
        file: PathBuf,
        /// Comma-separated elements of the normal subgroup.
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        m: usize,
    },
    /// Quarter-distance construction over a dihedral quotient.
    Dihedral {
        file: PathBuf,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        m: usize,
    },
    /// Generalized dihedral vs direct product over C_k.
    C1 { k: usize },
    /// The pair on C_a x C_b at distance n^2 (1 - a^-2) / 4.
    C2 { a: usize, b: usize },
    /// The ad hoc pairs at 18 and their order-18 extensions at 72.
    C3,
    /// Direct-product extension of a pair by C_k.
    Extend { a: PathBuf, b: PathBuf, k: usize },
}

fn read_group(path: &PathBuf) -> Result<CayleyTable, Error> {
    let text = std::fs::read_to_string(path)?;
    parse_group(&text)
}

fn parse_subgroup(spec: &str) -> Result<Vec<usize>, Error> {
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::PreconditionFailed(format!("bad subgroup element '{t}'")))
        })
        .collect()
}

fn construction_json(r: &construct::ConstructionResult) -> serde_json::Value {
    json!({
        "claimedDistance": r.claimed,
        "actualDistance": r.actual,
        "left": serialize_table(&r.left),
        "right": serialize_table(&r.right),
    })
}

fn run(cli: Cli) -> Result<Report, Error> {
    let cache = Cache::resolve(cli.no_cache);
    match cli.command {
        Command::Catalog { n, dir } => {
            let cat = catalog::catalog(n)?;
            let names: Vec<&str> = cat.iter().map(|t| t.name().unwrap_or("?")).collect();
            if let Some(dir) = &dir {
                std::fs::create_dir_all(dir)?;
                for t in &cat {
                    let file = dir.join(format!("{}.tbl", t.name().unwrap_or("group")));
                    std::fs::write(file, serialize_table(t))?;
                }
            }
            Ok(Report::new("catalog", json!({"n": n}), json!({"classes": names}), true))
        }
        Command::Verify { file, allow_invalid } => {
            let text = std::fs::read_to_string(&file)?;
            let t = parse_table(&text)?;
            let violations: Vec<String> = t.verify().iter().map(|v| v.to_string()).collect();
            if !violations.is_empty() && !allow_invalid {
                return Err(Error::NotAGroup(violations.join("; ")));
            }
            Ok(Report::new(
                "verify",
                json!({"file": file}),
                json!({"valid": violations.is_empty(), "violations": violations}),
                true,
            ))
        }
        Command::Dist { a, b } => {
            let (ta, tb) = (read_group(&a)?, read_group(&b)?);
            let p = metrics::profile(&ta, &tb)?;
            Ok(Report::new("dist", json!({"a": a, "b": b}), serde_json::to_value(&p).unwrap(), true))
        }
        Command::Classdist { a, b, search: sargs } => {
            let (ta, tb) = (read_group(&a)?, read_group(&b)?);
            let r = search::class_distance(&ta, &tb, &sargs.config())?;
            let witness = r.witness.as_ref().map(|w| w.images().to_vec());
            let mut rep = Report::new(
                "classdist",
                json!({"a": a, "b": b}),
                json!({"distance": r.distance, "proven": r.proven, "witness": witness, "nodes": r.nodes}),
                r.proven,
            );
            rep.provenance.budget = sargs.budget;
            Ok(rep)
        }
        Command::Table { n, search: sargs } => {
            let cat = catalog::catalog(n)?;
            let names: Vec<String> =
                cat.iter().map(|t| t.name().unwrap_or("?").to_string()).collect();
            let cfg = sargs.config();
            let k = cat.len();
            let mut entries = vec![vec![(0u32, true); k]; k];
            let mut all_proven = true;
            for i in 0..k {
                for j in i..k {
                    let (d, proven) = match cache.dist_get(&names[i], &names[j]) {
                        Some((d, p)) if p || sargs.budget.is_some() => (d, p),
                        _ => {
                            let r = search::class_distance(&cat[i], &cat[j], &cfg)?;
                            cache.dist_put(&names[i], &names[j], r.distance, r.proven);
                            (r.distance, r.proven)
                        }
                    };
                    all_proven &= proven;
                    entries[i][j] = (d, proven);
                    entries[j][i] = (d, proven);
                }
            }
            let matrix: Vec<Vec<u32>> =
                entries.iter().map(|row| row.iter().map(|e| e.0).collect()).collect();
            let proven: Vec<Vec<bool>> =
                entries.iter().map(|row| row.iter().map(|e| e.1).collect()).collect();
            let mut rep = Report::new(
                "table",
                json!({"n": n}),
                json!({"names": names, "distances": matrix, "proven": proven}),
                all_proven,
            );
            rep.provenance.budget = sargs.budget;
            Ok(rep)
        }
        Command::Sieve { stage, json: _ } => {
            let all = sieve::enumerate_quadruples();
            let chain = sieve::apply_inequality_chain(&all);
            let after_m2 = sieve::eliminate_m2(&chain.survivors);
            let cyclic_only = [23u32, 29, 31, 33, 35];
            let after_ig: Vec<sieve::Quadruple> = after_m2
                .iter()
                .copied()
                .filter(|q| {
                    if !cyclic_only.contains(&q.n) {
                        return true;
                    }
                    let mp = if q.n == 23 { 5 } else { 4 };
                    !sieve::apply_ig(*q, mp).eliminated
                })
                .collect();
            let (h1, delegated): (Vec<sieve::Quadruple>, Vec<sieve::Quadruple>) =
                after_ig.iter().partition(|q| q.h == 1);
            let mu = rainbow::sieve_mu_table();
            let mut states = Vec::new();
            let mut pipeline_survivors = Vec::new();
            for q in &h1 {
                let st = sieve::bound_pipeline(*q, &mu)?;
                if st.eliminated_by.is_none() {
                    pipeline_survivors.push(st.quad);
                }
                states.push(st);
            }
            let results = json!({
                "stageCounts": chain.stages,
                "inequalitySurvivors": chain.survivors,
                "afterM2": after_m2.len(),
                "afterIg": after_ig.len(),
                "delegatedToSearch": delegated,
                "boundStates": states,
                "pipelineSurvivors": pipeline_survivors,
            });
            let results = match stage.as_deref() {
                Some("chain") => json!({"stageCounts": chain.stages, "survivors": chain.survivors}),
                Some("m2") => json!({"afterM2": after_m2}),
                Some("ig") => json!({"afterIg": after_ig}),
                Some("pipeline") => json!({"boundStates": states, "survivors": pipeline_survivors}),
                _ => results,
            };
            Ok(Report::new("sieve", json!({"stage": stage}), results, true))
        }
        Command::Mu { l, v, recompute } => {
            let value = rainbow::mu(l, v, &cache, recompute)?;
            Ok(Report::new("mu", json!({"l": l, "v": v}), json!({"value": value}), true))
        }
        Command::Special(cmd) => match cmd {
            SpecialCmd::M2 { n } => {
                let r = special::m2_min_distance(n)?;
                Ok(Report::new(
                    "special m2",
                    json!({"n": n}),
                    json!({
                        "minDistance": r.distance,
                        "class": r.class_name,
                        "groupCandidates": r.group_candidates,
                        "witness": serialize_table(&r.witness),
                    }),
                    true,
                ))
            }
            SpecialCmd::Cyclic { n, d } => {
                let base = groupdist::cayley::cyclic(n);
                let r = special::cyclic_row_search(&base, d)?;
                Ok(Report::new(
                    "special cyclic",
                    json!({"n": n, "d": d}),
                    json!({
                        "minDistance": r.min_distance,
                        "candidates": r.candidates,
                        "achievers": r.achievers,
                    }),
                    true,
                ))
            }
        },
        Command::Construct(cmd) => {
            let (inputs, results) = match cmd {
                ConstructCmd::Cyclic { file, subgroup, h, m } => {
                    let g = read_group(&file)?;
                    let s = parse_subgroup(&subgroup)?;
                    let r = construct::cyclic_construction(&g, &s, h, m)?;
                    (json!({"kind": "cyclic", "file": file, "h": h, "m": m}), construction_json(&r))
                }
                ConstructCmd::Dihedral { file, subgroup, h, m } => {
                    let g = read_group(&file)?;
                    let s = parse_subgroup(&subgroup)?;
                    let r = construct::dihedral_construction(&g, &s, h, m)?;
                    (json!({"kind": "dihedral", "file": file, "h": h, "m": m}), construction_json(&r))
                }
                ConstructCmd::C1 { k } => {
                    let r = construct::construction1(&groupdist::cayley::cyclic(k))?;
                    (json!({"kind": "c1", "k": k}), construction_json(&r))
                }
                ConstructCmd::C2 { a, b } => {
                    let r = construct::construction2(a, b)?;
                    (json!({"kind": "c2", "a": a, "b": b}), construction_json(&r))
                }
                ConstructCmd::C3 => {
                    let rs = construct::construction3()?;
                    let list: Vec<serde_json::Value> = rs.iter().map(construction_json).collect();
                    (json!({"kind": "c3"}), json!(list))
                }
                ConstructCmd::Extend { a, b, k } => {
                    let (ta, tb) = (read_group(&a)?, read_group(&b)?);
                    let kt = groupdist::cayley::cyclic(k);
                    let (ea, eb) = construct::pair_extension(&ta, &tb, &kt)?;
                    let d = ea.distance(&eb)?;
                    (
                        json!({"kind": "extend", "a": a, "b": b, "k": k}),
                        json!({
                            "distance": d,
                            "left": serialize_table(&ea),
                            "right": serialize_table(&eb),
                        }),
                    )
                }
            };
            Ok(Report::new("construct", inputs, results, true))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } => 2,
        Error::NotAGroup(_) | Error::PreconditionFailed(_) | Error::InvalidSpec(_) => 3,
        Error::UnsupportedOrder(..) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            // unproven results signal an exhausted budget
            if report.proven {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
