//! `pgi`: isomorphism testing and canonical forms for finite groups.
//!
//! Exit codes: 0 isomorphic or success, 1 not isomorphic, 2 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pgi_core::canon::canonical_form;
use pgi_core::series::CompositionSeries;
use pgi_core::{
    build_x, canon, canon_series, decide_route, enumerate_composition_series, generate_family, iso, parse_group,
    relabel, write_group, ColoredGraph, FamilySpec, GroupTable, Route,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DEFAULT_MAX_ORDER: usize = 256;

#[derive(Parser)]
#[command(name = "pgi", version, about = "Finite group isomorphism and canonical forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file holds a group table.
    Validate { file: PathBuf },
    /// Print order, smallest prime and the route that would be used.
    Profile { file: PathBuf },
    /// Decide whether two groups are isomorphic.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        route: RouteArg,
        /// Print the isomorphism as `i -> j` lines.
        #[arg(long)]
        witness: bool,
    },
    /// Print the canonical multiplication table.
    Canon {
        file: PathBuf,
        #[command(flatten)]
        route: RouteArg,
    },
    /// Count or list the composition series.
    Series {
        file: PathBuf,
        #[arg(long, conflicts_with = "list", required_unless_present = "list")]
        count: bool,
        #[arg(long)]
        list: bool,
    },
    /// Write the cone graph of one composition series.
    ExportGraph {
        file: PathBuf,
        /// 1-based index into the `series --list` output.
        #[arg(long)]
        series: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the canonical encoding of a coloured graph as hex.
    CanonGraph { graph: PathBuf },
    /// Print the canonical form of one composition series.
    CanonSeries {
        file: PathBuf,
        /// 1-based index into the `series --list` output.
        #[arg(long)]
        series: usize,
    },
    /// Generate a group from a standard family.
    Gen(GenArgs),
    /// Relabel a group by a seeded random permutation.
    Relabel {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RouteArg {
    #[arg(long, value_enum)]
    route: Option<RouteName>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteName {
    Series,
    Gen,
}

impl RouteArg {
    fn get(&self) -> Option<Route> {
        self.route.map(|r| match r {
            RouteName::Series => Route::Series,
            RouteName::Gen => Route::GenEnum,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cyclic,
    ElementaryAbelian,
    Dihedral,
    Quaternion,
    Heisenberg,
    DirectProduct,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    p: Option<usize>,
    /// Exponent for cyclic and elementary abelian, degree for dihedral.
    #[arg(long)]
    k: Option<u32>,
    /// Order for cyclic, degree for dihedral; replaces `--p`/`--k`.
    #[arg(long)]
    n: Option<usize>,
    /// Factors of a direct product, e.g. `C2,D4,Q8,E2^3,H3`.
    #[arg(long, value_delimiter = ',')]
    factors: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn max_order() -> Result<usize> {
    match std::env::var("PGI_MAX_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("PGI_MAX_ORDER={v:?} is not a number")),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn read_group(path: &Path) -> Result<GroupTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_group(&text, max_order()?).with_context(|| format!("parsing {}", path.display()))
}

fn pick_series(g: GroupTable, index: usize) -> Result<CompositionSeries> {
    let all = enumerate_composition_series(&Arc::new(g));
    if index == 0 || index > all.len() {
        bail!("series index {index} out of range 1..={}", all.len());
    }
    Ok(all.into_iter().nth(index - 1).unwrap())
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_factor(token: &str) -> Result<FamilySpec> {
    let t = token.trim();
    let num = |s: &str| s.parse::<usize>().with_context(|| format!("bad factor {token:?}"));
    let (head, rest) = t.split_at(t.char_indices().nth(1).map_or(t.len(), |(i, _)| i));
    Ok(match head.to_ascii_uppercase().as_str() {
        "C" => FamilySpec::Cyclic { order: num(rest)? },
        "D" => FamilySpec::Dihedral { k: num(rest)? },
        "Q" if rest == "8" => FamilySpec::Quaternion,
        "H" => FamilySpec::Heisenberg { p: num(rest)? },
        "E" => {
            let (p, k) = rest
                .split_once('^')
                .with_context(|| format!("expected E<p>^<k>, got {token:?}"))?;
            FamilySpec::ElementaryAbelian {
                p: num(p)?,
                k: num(k)? as u32,
            }
        }
        _ => bail!("unknown factor {token:?}"),
    })
}

fn family_spec(args: &GenArgs) -> Result<FamilySpec> {
    let need_p = || args.p.context("--p is required for this family");
    let need_k = || args.k.context("--k is required for this family");
    Ok(match args.family {
        Family::Cyclic => match args.n {
            Some(order) => FamilySpec::Cyclic { order },
            None => FamilySpec::Cyclic {
                order: need_p()?.checked_pow(need_k()?).context("order overflows")?,
            },
        },
        Family::ElementaryAbelian => FamilySpec::ElementaryAbelian {
            p: need_p()?,
            k: need_k()?,
        },
        Family::Dihedral => FamilySpec::Dihedral {
            k: match args.n {
                Some(n) => n,
                None => need_k()? as usize,
            },
        },
        Family::Quaternion => FamilySpec::Quaternion,
        Family::Heisenberg => FamilySpec::Heisenberg { p: need_p()? },
        Family::DirectProduct => {
            if args.factors.is_empty() {
                bail!("--factors is required for direct-product");
            }
            FamilySpec::DirectProduct(args.factors.iter().map(|f| parse_factor(f)).collect::<Result<_>>()?)
        }
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { file } => {
            let g = read_group(&file)?;
            println!("valid group of order {}", g.order());
        }
        Command::Profile { file } => {
            let g = read_group(&file)?;
            let p = g.profile();
            println!("order: {}", p.order);
            match p.smallest_prime {
                Some(q) => println!("smallest prime: {q}"),
                None => println!("smallest prime: none"),
            }
            match p.prime_power_exponent {
                Some(m) => println!("p-group: yes (exponent {m})"),
                None => println!("p-group: no"),
            }
            println!("abelian: {}", if g.is_abelian() { "yes" } else { "no" });
            if p.order > 1 {
                let d = decide_route(&p, None);
                println!("alpha: {:.4}", d.alpha);
                println!("route: {}", d.chosen);
            }
        }
        Command::Iso { a, b, route, witness } => {
            let (g, h) = (read_group(&a)?, read_group(&b)?);
            let Some(phi) = iso(&g, &h, route.get()) else {
                println!("not isomorphic");
                return Ok(ExitCode::from(1));
            };
            println!("isomorphic");
            if witness {
                for (x, &y) in phi.forward().iter().enumerate() {
                    println!("{} -> {}", x + 1, y + 1);
                }
            }
        }
        Command::Canon { file, route } => {
            let g = read_group(&file)?;
            print!("{}", write_group(canon(&g, route.get()).group()));
        }
        Command::Series { file, count, .. } => {
            let g = read_group(&file)?;
            let all = enumerate_composition_series(&Arc::new(g));
            if count {
                println!("{}", all.len());
            } else {
                for s in all {
                    println!("{s}");
                }
            }
        }
        Command::ExportGraph { file, series, out } => {
            let s = pick_series(read_group(&file)?, series)?;
            emit(&build_x(&s).to_text(), Some(&out))?;
        }
        Command::CanonGraph { graph } => {
            let text = fs::read_to_string(&graph).with_context(|| format!("reading {}", graph.display()))?;
            let x = ColoredGraph::from_text(&text).with_context(|| format!("parsing {}", graph.display()))?;
            println!("{}", canonical_form(&x).to_hex());
        }
        Command::CanonSeries { file, series } => {
            let s = pick_series(read_group(&file)?, series)?;
            print!("{}", canon_series(&s)?);
        }
        Command::Gen(args) => {
            let g = generate_family(&family_spec(&args)?)?;
            emit(&write_group(&g), args.out.as_deref())?;
        }
        Command::Relabel { file, seed, out } => {
            let g = read_group(&file)?;
            let mut perm: Vec<usize> = (1..=g.order()).collect();
            perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            emit(&write_group(&relabel(&g, &perm)?), out.as_deref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
