//! Command-line front-end. Exit codes: 0 for success or a positive
//! decision, 1 for a negative decision (refusal, invalid artifact,
//! rejected certificate), 2 for usage or input errors.

use clap::{Args, Parser, Subcommand};
use pw::bitset::VertexSet;
use pw::decomposition::validate_decomposition;
use pw::digraph::{self, Digraph};
use pw::error::Error;
use pw::obstacles::{self, Certificate, Verdict};
use pw::oracle;
use pw::sampler;
use pw::separations::chain_predicates;
use pw::solver::{self, SolveConfig};
use pw::ugraph;
use pw::{io, UGraph};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "pw", version, about = "Digraph pathwidth via separation chains")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct SolveArgs {
    /// Digraph edge-list file.
    #[arg(long)]
    input: PathBuf,
    /// Write the decomposition in text form.
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Write the underlying ∅–∅ separation chain.
    #[arg(long)]
    emit_chain: Option<PathBuf>,
    /// Cache refused instances.
    #[arg(long)]
    memoize: bool,
    /// Trace recursion events on stderr.
    #[arg(long)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the pathwidth is at most k.
    Decide {
        #[command(flatten)]
        common: SolveArgs,
        #[arg(long)]
        k: usize,
    },
    /// Compute the exact pathwidth by increasing k.
    Compute {
        #[command(flatten)]
        common: SolveArgs,
    },
    /// Exact pathwidth by the subset oracle (small graphs only).
    Oracle {
        #[arg(long)]
        input: PathBuf,
        /// Largest admissible vertex count.
        #[arg(long, default_value_t = oracle::DEFAULT_ORACLE_CAP)]
        cap: usize,
        /// Also print a witness ordering.
        #[arg(long)]
        ordering: bool,
    },
    /// Check a decomposition or chain against a digraph.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long)]
        chain: Option<PathBuf>,
        /// Additionally require width (or order) at most k.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Generate test instances deterministically.
    Gen {
        #[command(subcommand)]
        kind: GenCmd,
    },
    /// Lower-bound certificates for semicomplete digraphs.
    Obstacle {
        #[command(subcommand)]
        cmd: ObstacleCmd,
    },
    /// Embed an undirected graph into a d-regular graph on n vertices.
    CompleteRegular {
        /// Undirected edge-list file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        d: usize,
        /// Total vertex count of the completion.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample an independent set with uniform vertex marginals.
    Sample {
        /// Undirected edge-list file.
        #[arg(long)]
        input: PathBuf,
        /// Degree bound (at least the maximum degree).
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Monte-Carlo check of sampler marginals and tails.
    Stats {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Target sets, semicolon-separated lists of vertices
        /// (default: prefixes of sizes 5, 10 and n).
        #[arg(long)]
        sets: Option<String>,
        /// Write tail rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Tangle-survival experiment under sampling.
    Survival {
        /// Digraph edge-list file.
        #[arg(long)]
        input: PathBuf,
        /// Degree-tangle window used on the completed graph.
        #[arg(long)]
        window: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Random digraph with at most h non-neighbors per vertex.
    HSemicomplete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform random digraph (each arc present with probability 1/2).
    Digraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random undirected graph with maximum degree at most d.
    BoundedDegree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ObstacleCmd {
    /// Largest degree tangle for a given window.
    FindDegreeTangle {
        #[arg(long)]
        input: PathBuf,
        /// Window width of the tangle.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum matching tangle between V≤d and V≥d+k+1.
    FindMatchingTangle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a certificate file and print its bound.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        /// Also check the tameness condition with this pathwidth bound.
        #[arg(long)]
        tameness_pw: Option<usize>,
    },
    /// Degree-interval lower bound.
    Bound {
        #[arg(long)]
        input: PathBuf,
    },
}

fn main() {
    std::process::exit(run(Cli::parse()));
}

fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_digraph(path: &Path) -> Result<Digraph, String> {
    io::read_digraph(&read_file(path)?).map_err(|e| e.to_string())
}

fn load_ugraph(path: &Path) -> Result<UGraph, String> {
    io::read_ugraph(&read_file(path)?).map_err(|e| e.to_string())
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.cmd {
        Cmd::Decide { common, k } => {
            let g = load_digraph(&common.input)?;
            decide(&g, k, &common, true)
        }
        Cmd::Compute { common } => {
            let g = load_digraph(&common.input)?;
            for k in 0..=g.vertex_count() {
                if decide(&g, k, &common, false)? == 0 {
                    println!("{k}");
                    return Ok(0);
                }
            }
            unreachable!("pathwidth is below the vertex count");
        }
        Cmd::Oracle {
            input,
            cap,
            ordering,
        } => {
            let g = load_digraph(&input)?;
            let pw_value = oracle::oracle_pathwidth_capped(&g, cap).map_err(|e| e.to_string())?;
            println!("{pw_value}");
            if ordering {
                let order = oracle::oracle_ordering_capped(&g, cap).map_err(|e| e.to_string())?;
                println!(
                    "{}",
                    order
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
            }
            Ok(0)
        }
        Cmd::Verify {
            input,
            decomposition,
            chain,
            k,
        } => {
            let g = load_digraph(&input)?;
            match (decomposition, chain) {
                (Some(pd_path), None) => {
                    let pd = io::read_decomposition(&read_file(&pd_path)?, g.vertex_count())
                        .map_err(|e| e.to_string())?;
                    let v = validate_decomposition(&g, &pd);
                    if !v.valid {
                        println!("invalid: {}", v.violation.unwrap_or_default());
                        return Ok(1);
                    }
                    if let Some(kk) = k {
                        if v.width > kk {
                            println!("invalid: width {} exceeds {}", v.width, kk);
                            return Ok(1);
                        }
                    }
                    println!("valid, width {}", v.width);
                    Ok(0)
                }
                (None, Some(chain_path)) => {
                    let ch = io::read_chain(&read_file(&chain_path)?, g.vertex_count())
                        .map_err(|e| e.to_string())?;
                    let empty = VertexSet::empty(g.vertex_count());
                    let rep = chain_predicates(&g, &ch, &empty, &empty);
                    let ok = rep.is_chain
                        && rep.is_st_chain
                        && rep.is_gapless
                        && k.is_none_or(|kk| rep.order <= kk);
                    println!(
                        "chain: nested {}, empty-ended {}, gapless {}, order {}",
                        rep.is_chain, rep.is_st_chain, rep.is_gapless, rep.order
                    );
                    Ok(if ok { 0 } else { 1 })
                }
                _ => Err("pass exactly one of --decomposition or --chain".into()),
            }
        }
        Cmd::Gen { kind } => {
            let (text, out) = match kind {
                GenCmd::HSemicomplete { n, h, seed, out } => {
                    let g =
                        digraph::random_h_semicomplete(n, h, seed).map_err(|e| e.to_string())?;
                    (io::write_digraph(&g), out)
                }
                GenCmd::Digraph { n, seed, out } => {
                    (io::write_digraph(&digraph::random_digraph(n, seed)), out)
                }
                GenCmd::BoundedDegree { n, d, seed, out } => (
                    io::write_ugraph(&ugraph::random_ugraph_max_degree(n, d, seed)),
                    out,
                ),
            };
            write_output(&out, &text)?;
            Ok(0)
        }
        Cmd::Obstacle { cmd } => obstacle(cmd),
        Cmd::CompleteRegular { input, d, n, out } => {
            let g = load_ugraph(&input)?;
            let h = sampler::regular_completion(&g, d, n).map_err(|e| e.to_string())?;
            write_output(&out, &io::write_ugraph(&h))?;
            Ok(0)
        }
        Cmd::Sample { input, d, seed } => {
            let g = load_ugraph(&input)?;
            let set = sampler::sample_independent_set(&g, d, seed).map_err(|e| e.to_string())?;
            println!(
                "{}",
                set.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            Ok(0)
        }
        Cmd::Stats {
            input,
            d,
            trials,
            seed,
            sets,
            csv,
            jobs,
        } => {
            let g = load_ugraph(&input)?;
            let n = g.vertex_count();
            let targets = match sets {
                Some(spec) => parse_sets(&spec, n)?,
                None => default_sets(n),
            };
            let report =
                sampler::marginal_and_tail_check(&g, d, trials, &targets, seed, 0.001, jobs)
                    .map_err(|e| e.to_string())?;
            print!("{}", report.table());
            if let Some(p) = csv {
                std::fs::write(&p, report.csv()).map_err(|e| format!("{}: {e}", p.display()))?;
            }
            Ok(0)
        }
        Cmd::Survival {
            input,
            window,
            seed,
            trials,
            jobs,
        } => {
            let g = load_digraph(&input)?;
            survival(&g, window, seed, trials, jobs)
        }
    }
}

fn decide(g: &Digraph, k: usize, common: &SolveArgs, announce: bool) -> Result<i32, String> {
    let cfg = SolveConfig {
        memoize: common.memoize,
        trace: common.verbose,
    };
    let empty = VertexSet::empty(g.vertex_count());
    let inst =
        solver::Instance::new(g, empty.clone(), empty.clone(), k).expect("always admissible");
    let (chain, _) = solver::solve_instance_with(g, &inst, cfg).map_err(|e| e.to_string())?;
    let Some(chain) = chain else {
        if announce {
            println!("no: pathwidth exceeds {k}");
        }
        return Ok(1);
    };
    let pd = pw::chain_to_decomposition(g, &chain).map_err(|e| e.to_string())?;
    let v = validate_decomposition(g, &pd);
    assert!(v.valid && v.width <= k);
    if announce {
        println!(
            "yes: width {} decomposition with {} bags",
            v.width,
            pd.bags().len()
        );
    }
    if let Some(path) = &common.emit {
        std::fs::write(path, io::write_decomposition(&pd))
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if let Some(path) = &common.emit_chain {
        std::fs::write(path, io::write_chain(&chain))
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(0)
}

fn obstacle(cmd: ObstacleCmd) -> Result<i32, String> {
    match cmd {
        ObstacleCmd::FindDegreeTangle { input, k, out } => {
            let g = load_digraph(&input)?;
            let found = obstacles::find_degree_tangle(&g, k).map_err(|e| e.to_string())?;
            let cert = found.map(Certificate::DegreeTangle);
            let text = serde_json::to_string_pretty(&cert).expect("serializable") + "\n";
            write_output(&out, &text)?;
            Ok(0)
        }
        ObstacleCmd::FindMatchingTangle { input, d, k, out } => {
            let g = load_digraph(&input)?;
            let found = obstacles::find_matching_tangle(&g, d, k).map_err(|e| e.to_string())?;
            let cert = found.map(Certificate::MatchingTangle);
            let text = serde_json::to_string_pretty(&cert).expect("serializable") + "\n";
            write_output(&out, &text)?;
            Ok(0)
        }
        ObstacleCmd::Verify {
            input,
            cert,
            tameness_pw,
        } => {
            let g = load_digraph(&input)?;
            let cert: Certificate = serde_json::from_str(&read_file(&cert)?)
                .map_err(|e| format!("certificate: {e}"))?;
            let verdict = obstacles::verify_certificate(&g, &cert).map_err(|e| e.to_string())?;
            match verdict {
                Verdict::Accepted { lower_bound } => {
                    println!("accepted: pathwidth >= {lower_bound}");
                    if let Some(pw_upper) = tameness_pw {
                        let tame = obstacles::verify_tameness(&g, &cert, pw_upper)
                            .map_err(|e| e.to_string())?;
                        println!("tame (with pathwidth bound {pw_upper}): {tame}");
                    }
                    Ok(0)
                }
                Verdict::Rejected { reason } => {
                    println!("rejected: {reason}");
                    Ok(1)
                }
            }
        }
        ObstacleCmd::Bound { input } => {
            let g = load_digraph(&input)?;
            let b = obstacles::degree_interval_lower_bound(&g).map_err(|e| e.to_string())?;
            println!("{b}");
            Ok(0)
        }
    }
}

fn survival(
    g: &Digraph,
    window: usize,
    seed: u64,
    trials: u64,
    jobs: usize,
) -> Result<i32, String> {
    if trials == 0 {
        return Err("at least one trial is required".into());
    }
    if trials == 1 {
        let outcome =
            obstacles::survival_experiment(g, window, seed).map_err(|e| e.to_string())?;
        println!(
            "{}",
            serde_json::to_string_pretty(&outcome).expect("serializable")
        );
        return Ok(0);
    }
    let jobs = jobs.max(1).min(trials as usize);
    let run_range = |from: u64, to: u64| -> Result<(u64, u64, u64), Error> {
        let mut hit_sum = 0u64;
        let mut sample_sum = 0u64;
        let mut all_semicomplete = 0u64;
        for i in from..to {
            let o = obstacles::survival_experiment(g, window, seed.wrapping_add(i))?;
            hit_sum += o.tangle_hit as u64;
            sample_sum += o.sampled_size as u64;
            all_semicomplete += o.induced_semicomplete as u64;
        }
        Ok((hit_sum, sample_sum, all_semicomplete))
    };
    let mut totals = (0u64, 0u64, 0u64);
    if jobs <= 1 {
        totals = run_range(0, trials).map_err(|e| e.to_string())?;
    } else {
        let chunk = trials.div_ceil(jobs as u64);
        let parts: Vec<_> = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for j in 0..jobs as u64 {
                let runner = &run_range;
                let from = j * chunk;
                let to = ((j + 1) * chunk).min(trials);
                handles.push(scope.spawn(move || runner(from, to)));
            }
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for p in parts {
            let (a, b, c) = p.map_err(|e| e.to_string())?;
            totals.0 += a;
            totals.1 += b;
            totals.2 += c;
        }
    }
    let h = g.h_index();
    let base = obstacles::survival_experiment(g, window, seed).map_err(|e| e.to_string())?;
    println!("h {h}   tangle size {}   trials {trials}", base.tangle_size);
    println!(
        "mean tangle hit {:.4}   expected {:.4}",
        totals.0 as f64 / trials as f64,
        base.tangle_size as f64 / (2.0 * (h as f64 + 1.0))
    );
    println!("mean sample size {:.4}", totals.1 as f64 / trials as f64);
    println!(
        "induced subgraph semicomplete in {}/{trials} trials",
        totals.2
    );
    Ok(0)
}

fn parse_sets(spec: &str, n: usize) -> Result<Vec<VertexSet>, String> {
    let mut out = Vec::new();
    for group in spec.split(';') {
        let mut set = VertexSet::empty(n);
        for tok in group.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| format!("bad vertex index {tok:?}"))?;
            if v >= n {
                return Err(format!("vertex {v} out of range (n = {n})"));
            }
            set.insert(v);
        }
        if !set.is_empty() {
            out.push(set);
        }
    }
    if out.is_empty() {
        return Err("no non-empty target sets given".into());
    }
    Ok(out)
}

fn default_sets(n: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for size in [5usize, 10, n] {
        let size = size.min(n);
        if size > 0 {
            let set = VertexSet::from_iter(n, 0..size);
            if !out.contains(&set) {
                out.push(set);
            }
        }
    }
    out
}
