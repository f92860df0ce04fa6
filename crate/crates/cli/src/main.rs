//! Command-line front end: exact La/ar searches, coloring constructions
//! and certification, copy detection, the embedding pipeline, the
//! inequality margins, and the acceptance-suite reproduction runner.
//!
//! Exit codes: 0 success, 1 verification failure (a rainbow copy exists,
//! an inequality is violated, a criterion fails), 2 usage error, 3 a time
//! limit cut a search short (partial result printed).

use std::time::Duration;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use poset_rainbow::acceptance;
use poset_rainbow::constructions::{
    antichain_chain_coloring, broom_chain_coloring, butterfly_coloring, certify,
    lowertriv_coloring, union_extraction,
};
use poset_rainbow::copies::{find_copy, find_rainbow_copy, Mode};
use poset_rainbow::embedding::{
    build_bigraph, complete_crown, complete_p2km1, greedy_spider, min_degree_subgraph,
    Discipline, Side,
};
use poset_rainbow::families::{check_lemma10, partition_f123, SetFamily};
use poset_rainbow::formats;
use poset_rainbow::search::{ar_exact, check_sandwich, la_exact, SearchConfig};

#[derive(Parser)]
#[command(name = "poset-rainbow", version, about = "Anti-Ramsey numbers of posets in the Boolean lattice: exact search, colorings, embeddings")]
struct Cli {
    /// Worker threads (also settable via POSET_RAINBOW_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Weak,
    Strong,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Weak => Mode::Weak,
            ModeArg::Strong => Mode::Strong,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a poset: Hasse diagram, height, levels, JSON.
    Poset {
        /// Catalog spec (crown:3, spider:2x5, diamond, …) or JSON file.
        #[arg(long)]
        catalog: String,
        #[arg(long, default_value = "json")]
        show: String,
    },
    /// Maximum size of a P-free family (La / La* / La_con).
    La {
        #[arg(long)]
        n: u32,
        /// Comma-separated poset specs.
        #[arg(long)]
        posets: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Weak)]
        mode: ModeArg,
        /// Restrict to convex families.
        #[arg(long)]
        convex: bool,
        /// Time limit in seconds.
        #[arg(long)]
        time_limit: Option<u64>,
        /// Write the witness family to this file.
        #[arg(long)]
        emit_witness: Option<String>,
    },
    /// Maximum number of colors avoiding a rainbow copy (ar / ar*).
    Ar {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        poset: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Weak)]
        mode: ModeArg,
        #[arg(long)]
        time_limit: Option<u64>,
        /// Write the witness coloring to this file (.json or line format).
        #[arg(long)]
        emit_witness: Option<String>,
    },
    /// Generate a coloring construction and write it out.
    Construct {
        /// One of: butterfly, broomchain, antichainchain, lowertriv.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: Option<u32>,
        /// Leg count s for broomchain.
        #[arg(long)]
        s: Option<u32>,
        /// Antichain size k for antichainchain.
        #[arg(long)]
        k: Option<u32>,
        /// Family spec or file for lowertriv.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Certify a coloring against a poset: color count and rainbow search.
    Certify {
        /// Coloring file or spec (butterfly:4, broomchain:5:2, …).
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        poset: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Strong)]
        mode: ModeArg,
    },
    /// Find a (rainbow) copy of a poset in a family or under a coloring.
    FindCopy {
        #[arg(long)]
        poset: String,
        /// Family file or spec; omit when searching under a coloring.
        #[arg(long)]
        family: Option<String>,
        /// Coloring file or spec for rainbow search.
        #[arg(long)]
        coloring: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Strong)]
        mode: ModeArg,
    },
    /// Grow a color-disciplined spider in the inclusion bigraph.
    EmbedSpider {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[arg(long)]
        legs: usize,
        #[arg(long)]
        leglen: usize,
        /// full (disjoint color sets) or fraction (less than j/k overlap).
        #[arg(long, default_value = "full")]
        discipline: String,
        /// k for the fraction discipline.
        #[arg(long)]
        k: Option<u32>,
        /// Upper-slice family file or spec; defaults to the shadow
        /// partition's qualifying slice at depth j.
        #[arg(long)]
        upper: Option<String>,
        /// Minimum-degree threshold; defaults to half the average degree.
        #[arg(long)]
        min_degree: Option<usize>,
    },
    /// Full crown pipeline: spider, fence completion, crown completion.
    EmbedCrown {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[arg(long, default_value_t = 3)]
        legs: usize,
    },
    /// Signed log-margins of the three large-n binomial inequalities.
    Lemma10 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u64,
    },
    /// Shadow partition of a family into F1 / F2 / F3.
    Partition {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
    /// Extract a bounded-union subfamily and its escort from one layer.
    UnionExtract {
        #[arg(long)]
        family: String,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        k: u32,
    },
    /// The ar-vs-La inequality chain at one n, computed exactly.
    Sandwich {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        poset: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Weak)]
        mode: ModeArg,
    },
    /// Run acceptance criteria: `repro all` or `repro AC7`.
    Repro {
        /// Criterion id or `all`.
        id: String,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn emit(format: Format, value: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        Format::Csv => {
            if let Value::Object(map) = value {
                for (k, v) in map {
                    println!("{k},{}", flat(v));
                }
            } else {
                println!("value,{}", flat(value));
            }
        }
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn family_json(f: &SetFamily) -> Value {
    json!({
        "n": f.ground(),
        "masks": f.members().iter().map(|m| format!("{m:x}")).collect::<Vec<_>>(),
    })
}

fn embedding_json(emb: &poset_rainbow::copies::CopyEmbedding) -> Value {
    let mut map = serde_json::Map::new();
    for (e, &mask) in emb.images.iter().enumerate() {
        map.insert(emb.poset.label(e), json!(format!("{mask:x}")));
    }
    Value::Object(map)
}

fn run(cli: Cli) -> Result<i32> {
    let format = cli.format;
    let threads = cli.threads;
    match cli.command {
        Command::Poset { catalog, show } => {
            let p = formats::load_poset(&catalog)?;
            let value = match show.as_str() {
                "hasse" => {
                    let h = p.hasse();
                    json!({
                        "n": h.size,
                        "arcs": h.arcs.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
                        "arc_count": h.arcs.len(),
                    })
                }
                "height" => json!({ "height": p.height() }),
                "levels" => json!({ "levels": p.canonical_decomposition() }),
                "json" => formats::poset_to_json(&p),
                other => return Err(anyhow!("unknown --show {other}")),
            };
            emit(format, &value);
            Ok(0)
        }
        Command::La { n, posets, mode, convex, time_limit, emit_witness } => {
            let posets = posets
                .split(',')
                .map(formats::load_poset)
                .collect::<Result<Vec<_>, _>>()?;
            let mut cfg = SearchConfig::new(n, posets, mode.into());
            cfg.convex_only = convex;
            cfg.threads = threads;
            cfg.time_limit = time_limit.map(Duration::from_secs);
            let r = la_exact(&cfg).context("La search failed")?;
            let witness = r.family();
            if let Some(path) = emit_witness {
                std::fs::write(&path, formats::family_to_string(witness))?;
            }
            emit(
                format,
                &json!({
                    "value": r.value,
                    "exact": r.exact,
                    "nodes": r.nodes,
                    "witness": family_json(witness),
                }),
            );
            Ok(if r.exact { 0 } else { 3 })
        }
        Command::Ar { n, poset, mode, time_limit, emit_witness } => {
            let p = formats::load_poset(&poset)?;
            let mut cfg = SearchConfig::new(n, vec![p], mode.into());
            cfg.threads = threads;
            cfg.time_limit = time_limit.map(Duration::from_secs);
            let r = ar_exact(&cfg).context("ar search failed")?;
            let coloring = r.coloring();
            if let Some(path) = emit_witness {
                std::fs::write(&path, formats::coloring_to_string(coloring))?;
            }
            emit(
                format,
                &json!({
                    "value": r.value,
                    "exact": r.exact,
                    "nodes": r.nodes,
                    "witness": {
                        "n": coloring.ground(),
                        "colors": coloring.colors(),
                    },
                }),
            );
            Ok(if r.exact { 0 } else { 3 })
        }
        Command::Construct { kind, n, s, k, family, out } => {
            let need_n = || n.ok_or_else(|| anyhow!("--n is required for {kind}"));
            let coloring = match kind.as_str() {
                "butterfly" => butterfly_coloring(need_n()?)?,
                "broomchain" => {
                    broom_chain_coloring(need_n()?, s.ok_or_else(|| anyhow!("--s required"))?)?
                }
                "antichainchain" => antichain_chain_coloring(
                    need_n()?,
                    k.ok_or_else(|| anyhow!("--k required"))?,
                )?,
                "lowertriv" => {
                    let f = formats::load_family(
                        family.as_deref().ok_or_else(|| anyhow!("--family required"))?,
                    )?;
                    lowertriv_coloring(&f)?
                }
                other => return Err(anyhow!("unknown construction kind {other}")),
            };
            let text = formats::coloring_to_string(&coloring);
            match out {
                Some(path) => std::fs::write(&path, text)?,
                None => print!("{text}"),
            }
            emit(format, &json!({ "colors": coloring.color_count(), "n": coloring.ground() }));
            Ok(0)
        }
        Command::Certify { coloring, poset, mode } => {
            let c = formats::load_coloring(&coloring)?;
            let p = formats::load_poset(&poset)?;
            let rep = certify(&c, &p, mode.into());
            let rainbow = rep.rainbow.as_ref().map(embedding_json);
            emit(
                format,
                &json!({
                    "colors": rep.color_count,
                    "rainbow": rainbow,
                }),
            );
            Ok(if rep.rainbow.is_some() { 1 } else { 0 })
        }
        Command::FindCopy { poset, family, coloring, mode } => {
            let p = formats::load_poset(&poset)?;
            let emb = match (&family, &coloring) {
                (_, Some(c)) => {
                    let c = formats::load_coloring(c)?;
                    find_rainbow_copy(&p, &c, mode.into())
                }
                (Some(f), None) => {
                    let f = formats::load_family(f)?;
                    find_copy(&p, &f, mode.into())
                }
                (None, None) => return Err(anyhow!("need --family or --coloring")),
            };
            match emb {
                Some(e) => {
                    emit(format, &json!({ "found": true, "witness": embedding_json(&e) }));
                    Ok(0)
                }
                None => {
                    emit(format, &json!({ "found": false, "witness": Value::Null }));
                    Ok(0)
                }
            }
        }
        Command::EmbedSpider { family, j, legs, leglen, discipline, k, upper, min_degree } => {
            let f = formats::load_family(&family)?;
            let (core, d_used) = pipeline_core(&f, j, upper.as_deref(), min_degree, leglen)?;
            let discipline = match discipline.as_str() {
                "full" => Discipline::FullDisjoint,
                "fraction" => Discipline::Fraction {
                    j,
                    k: k.ok_or_else(|| anyhow!("--k required for fraction discipline"))?,
                },
                other => return Err(anyhow!("unknown discipline {other}")),
            };
            let side = if leglen % 2 == 1 { Side::Lower } else { Side::Upper };
            let spider = greedy_spider(&core, legs, leglen, discipline, side)?;
            let emb = spider.to_copy_embedding();
            emit(
                format,
                &json!({
                    "center": format!("{:x}", spider.center),
                    "min_degree_threshold": d_used,
                    "legs": spider
                        .legs
                        .iter()
                        .map(|leg| {
                            leg.iter()
                                .map(|&(m, c)| json!({
                                    "mask": format!("{m:x}"),
                                    "colors": format!("{c:x}"),
                                }))
                                .collect::<Vec<_>>()
                        })
                        .collect::<Vec<_>>(),
                    "strong_copy_verified": emb.validate(),
                    "embedding": embedding_json(&emb),
                }),
            );
            Ok(0)
        }
        Command::EmbedCrown { k, family, j, legs } => {
            if k < 3 {
                return Err(anyhow!("crown pipeline needs k >= 3"));
            }
            let f = formats::load_family(&family)?;
            let leglen = k - 2;
            let (core, _) = pipeline_core(&f, j, None, None, leglen)?;
            let side = if leglen % 2 == 1 { Side::Lower } else { Side::Upper };
            let spider = greedy_spider(&core, legs, leglen, Discipline::FullDisjoint, side)?;
            let fence = complete_p2km1(&spider, &f, k)?;
            let crown = complete_crown(&fence, f.ground())?;
            emit(
                format,
                &json!({
                    "k": k,
                    "verified": crown.validate(),
                    "embedding": embedding_json(&crown),
                }),
            );
            Ok(0)
        }
        Command::Lemma10 { n, k, j } => {
            let rep = check_lemma10(n, k, j)?;
            emit(
                format,
                &json!({
                    "n": n, "k": k, "j": j,
                    "ratio_margin": rep.ratio_margin,
                    "sum_margin": rep.sum_margin,
                    "single_margin": rep.single_margin,
                    "all_positive": rep.all_positive(),
                }),
            );
            Ok(if rep.all_positive() { 0 } else { 1 })
        }
        Command::Partition { family, epsilon, k } => {
            let f = formats::load_family(&family)?;
            let part = partition_f123(&f, epsilon, k);
            let lambda3 = poset_rainbow::families::lubell_mass(&part.f3);
            emit(
                format,
                &json!({
                    "f1": family_json(&part.f1),
                    "f2": family_json(&part.f2),
                    "f3": family_json(&part.f3),
                    "j_of": part
                        .j_of
                        .iter()
                        .map(|(m, j)| (format!("{m:x}"), json!(j)))
                        .collect::<serde_json::Map<_, _>>(),
                    "lambda_f3": lambda3.to_string(),
                }),
            );
            Ok(0)
        }
        Command::UnionExtract { family, s, k } => {
            let f = formats::load_family(&family)?;
            match union_extraction(&f, s, k) {
                Some((fp, fpp)) => {
                    emit(format, &json!({
                        "found": true,
                        "bounded_union": family_json(&fp),
                        "escort": family_json(&fpp),
                    }));
                    Ok(0)
                }
                None => {
                    emit(format, &json!({ "found": false }));
                    Ok(0)
                }
            }
        }
        Command::Sandwich { n, poset, mode } => {
            let p = formats::load_poset(&poset)?;
            let rep = check_sandwich(n, &p, mode.into())?;
            emit(
                format,
                &json!({
                    "n": rep.n,
                    "mode": rep.mode.as_str(),
                    "ar": rep.ar,
                    "la": rep.la,
                    "la_pminus": rep.la_pminus,
                    "la_con_pminus": rep.la_con_pminus,
                    "la_minus_m": rep.la_minus_m,
                    "violations": rep.violations,
                }),
            );
            Ok(if rep.ok() { 0 } else { 1 })
        }
        Command::Repro { id } => {
            let reports = if id == "all" {
                acceptance::run_all(threads)
            } else {
                vec![acceptance::run_criterion(&id, threads)
                    .ok_or_else(|| anyhow!("unknown criterion {id}; known: {:?}", acceptance::CRITERIA))?]
            };
            let mut all_pass = true;
            for rep in &reports {
                println!("{}", rep.line());
                for d in &rep.details {
                    println!("        {d}");
                }
                all_pass &= rep.passed;
            }
            println!(
                "{} / {} criteria passed",
                reports.iter().filter(|r| r.passed).count(),
                reports.len()
            );
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

/// Shared front of the embedding pipeline: pick the upper slice (explicit,
/// or the shadow partition's qualifying slice at depth j), build the
/// bigraph, peel to the minimum-degree core.
fn pipeline_core(
    family: &SetFamily,
    j: u32,
    upper: Option<&str>,
    min_degree: Option<usize>,
    leglen: usize,
) -> Result<(poset_rainbow::embedding::InclusionBigraph, usize)> {
    let upper_sel = match upper {
        Some(spec) => formats::load_family(spec)?,
        None => {
            let part = partition_f123(family, 0.5, (leglen as u32 + 2).max(3));
            let mut members: Vec<u64> = part
                .j_of
                .iter()
                .filter(|&(_, &jj)| jj == j)
                .map(|(&m, _)| m)
                .collect();
            if members.is_empty() {
                members = part.f1.members().to_vec();
            }
            if members.is_empty() {
                return Err(anyhow!(
                    "no upper slice qualifies at depth {j}; pass --upper explicitly"
                ));
            }
            SetFamily::new(family.ground(), members)
        }
    };
    let b = build_bigraph(family, &upper_sel, j);
    let d = min_degree
        .unwrap_or_else(|| ((b.average_degree() / 2.0).floor() as usize).max(1));
    Ok((min_degree_subgraph(&b, d), d))
}
