//! Command-line surface: construct, analyze, verify, search, export.
//!
//! Exit codes: 0 success, 1 a verification mismatch was found, 2 argument or
//! I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ddgraph::cayley::{
    build_cayley_explicit, cayley_diameter_implicit, close_connection_set, implicit_bfs,
};
use ddgraph::constructions::{
    edge_pairing_graph, lcf_graph, moore_bound, pairing_to_string, read_pairing_file,
    validate_pairing,
};
use ddgraph::graph::{decimal6, CompactGraph};
use ddgraph::groups::{Group, SdElement, SemidirectGroup, SemidirectSpec, TcElement, TwoCoordGroup};
use ddgraph::records::{verify_all, VerifyFilter};
use ddgraph::search::{search_generators, search_pairing, SearchConfig};

#[derive(Parser)]
#[command(name = "ddgraph", version, about = "Large graphs of given maximum degree and diameter: construct, verify, search")]
struct Cli {
    /// Worker threads for parallel verification and search (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Moore bound n(delta, D).
    Moore { delta: u64, d: u64 },
    /// Print order, degree, diameter, girth and average distance of a graph.
    Stats {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
    },
    /// Build a Cayley graph over Z_M x|_A Z_N from generators.
    ConstructSd {
        m: u64,
        a: u64,
        n: u64,
        /// Generator as x,y (repeatable).
        #[arg(long = "gen", value_name = "X,Y", required = true)]
        gens: Vec<String>,
        /// Write the explicit graph in adjacency-list format.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Use the mirrored multiplication convention.
        #[arg(long)]
        opposite: bool,
    },
    /// Build a Cayley graph over (Z_m x Z_m) x| Z_2 (coordinate-swap action).
    #[command(name = "construct-2c")]
    Construct2c {
        m: u64,
        /// Generator as a,b,c (repeatable).
        #[arg(long = "gen", value_name = "A,B,C", required = true)]
        gens: Vec<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Build a cubic Hamiltonian graph from an LCF shift sequence.
    ConstructLcf {
        /// Comma-separated shifts, e.g. 17,-9,37,-37,9,-17
        #[arg(long, value_name = "S1,S2,...")]
        shifts: String,
        #[arg(long)]
        repeats: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Derive the vertex-union-edge graph of a host graph and an edge pairing.
    Chen {
        #[arg(long, value_name = "FILE")]
        host: PathBuf,
        #[arg(long, value_name = "FILE")]
        pairing: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Print the canonical edge-id table of a graph: `edge_id u v` per line.
    Edges {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
    },
    /// Replay the machine-checkable record entries.
    Verify {
        /// Only the self-contained Cayley rows.
        #[arg(long)]
        cayley_only: bool,
        /// Degree range lo..hi (inclusive).
        #[arg(long, value_name = "LO..HI")]
        delta: Option<String>,
        /// Diameter range lo..hi (inclusive).
        #[arg(long, value_name = "LO..HI")]
        diameter: Option<String>,
        /// Directory holding external data files (adjacency lists, group
        /// tables, pairings).
        #[arg(long, value_name = "DIR", default_value = ".")]
        data_dir: PathBuf,
        /// Line-oriented machine output instead of the human table.
        #[arg(long)]
        machine: bool,
    },
    /// Print the embedded record table with Moore ratios.
    Table,
    /// Hill-climbing search for generator sets over Z_M x|_A Z_N.
    SearchGens {
        m: u64,
        a: u64,
        n: u64,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        diameter: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        moves: usize,
        /// Write the evaluation log here (default: stdout after the summary).
        #[arg(long, value_name = "FILE")]
        log: Option<PathBuf>,
    },
    /// Hill-climbing search for edge pairings of a host graph.
    SearchPairing {
        #[arg(long, value_name = "FILE")]
        host: PathBuf,
        #[arg(long)]
        diameter: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        moves: usize,
        #[arg(long, value_name = "FILE")]
        log: Option<PathBuf>,
        /// Write the best pairing found, in pairing-file format.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected x,y but got '{s}'"));
    }
    let x = parts[0].trim().parse().map_err(|_| format!("invalid number '{}'", parts[0]))?;
    let y = parts[1].trim().parse().map_err(|_| format!("invalid number '{}'", parts[1]))?;
    Ok((x, y))
}

fn parse_triple(s: &str) -> Result<(u64, u64, u8), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected a,b,c but got '{s}'"));
    }
    let a = parts[0].trim().parse().map_err(|_| format!("invalid number '{}'", parts[0]))?;
    let b = parts[1].trim().parse().map_err(|_| format!("invalid number '{}'", parts[1]))?;
    let c = parts[2].trim().parse().map_err(|_| format!("invalid number '{}'", parts[2]))?;
    Ok((a, b, c))
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once("..").ok_or(format!("expected lo..hi but got '{s}'"))?;
    let lo = lo.trim().parse().map_err(|_| format!("invalid bound '{lo}'"))?;
    let hi = hi.trim().parse().map_err(|_| format!("invalid bound '{hi}'"))?;
    Ok((lo, hi))
}

fn print_graph_summary(g: &CompactGraph) {
    print!("{}", g.stats());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => fail(msg),
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Moore { delta, d } => {
            let bound = moore_bound(delta, d).map_err(|e| e.to_string())?;
            println!("{bound}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats { r#in } => {
            let g = CompactGraph::read_adjacency_file(&r#in).map_err(|e| e.to_string())?;
            print_graph_summary(&g);
            Ok(ExitCode::SUCCESS)
        }
        Command::ConstructSd { m, a, n, gens, out, opposite } => {
            let group =
                SemidirectGroup::new(SemidirectSpec { m, a, n }).map_err(|e| e.to_string())?;
            let indices: Result<Vec<usize>, String> = gens
                .iter()
                .map(|s| parse_pair(s).map(|(x, y)| group.encode(SdElement { x, y })))
                .collect();
            let indices = indices?;
            if opposite {
                let op = ddgraph::groups::OppositeGroup(&group);
                return construct_cayley(&op, &indices, out);
            }
            construct_cayley(&group, &indices, out)
        }
        Command::Construct2c { m, gens, out } => {
            let group = TwoCoordGroup::new(m).map_err(|e| e.to_string())?;
            let indices: Result<Vec<usize>, String> = gens
                .iter()
                .map(|s| parse_triple(s).map(|(a, b, c)| group.encode(TcElement { a, b, c })))
                .collect();
            construct_cayley(&group, &indices?, out)
        }
        Command::ConstructLcf { shifts, repeats, out } => {
            let shifts: Result<Vec<i64>, String> = shifts
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| format!("invalid shift '{t}'")))
                .collect();
            let g = lcf_graph(&shifts?, repeats).map_err(|e| e.to_string())?;
            print_graph_summary(&g);
            if let Some(path) = out {
                g.write_adjacency_file(&path).map_err(|e| e.to_string())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Chen { host, pairing, out } => {
            let host = CompactGraph::read_adjacency_file(&host).map_err(|e| e.to_string())?;
            let pairs = read_pairing_file(&pairing).map_err(|e| e.to_string())?;
            let p = validate_pairing(&host, &pairs).map_err(|e| e.to_string())?;
            if p.shared_endpoint_pairs() > 0 {
                println!(
                    "note: {} pair(s) share a host endpoint (each forces a triangle)",
                    p.shared_endpoint_pairs()
                );
            }
            let g = edge_pairing_graph(&p).map_err(|e| e.to_string())?;
            print_graph_summary(&g);
            if let Some(path) = out {
                g.write_adjacency_file(&path).map_err(|e| e.to_string())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Edges { r#in } => {
            let g = CompactGraph::read_adjacency_file(&r#in).map_err(|e| e.to_string())?;
            for (id, (u, v)) in g.edges().enumerate() {
                println!("{id} {u} {v}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { cayley_only, delta, diameter, data_dir, machine } => {
            let filter = VerifyFilter {
                delta: delta.map(|s| parse_range(&s)).transpose()?,
                d: diameter.map(|s| parse_range(&s)).transpose()?,
                cayley_only,
                data_dir,
            };
            let (reports, summary) = verify_all(&filter);
            let mut total_millis = 0u128;
            for r in &reports {
                total_millis += r.millis;
                if machine {
                    println!("{}", r.machine_line());
                } else {
                    let opt = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
                    let mut line = format!(
                        "({:>2},{:>2}) {:<10} claimed {:>10}  measured order {:>10} degree {:>3} diameter {:>3}  {}",
                        r.delta,
                        r.d,
                        r.label,
                        r.claimed_order,
                        opt(r.measured_order),
                        opt(r.measured_degree),
                        opt(r.measured_diameter),
                        r.status
                    );
                    if !r.detail.is_empty() {
                        line.push_str(&format!("  [{}]", r.detail));
                    }
                    println!("{line}");
                }
            }
            println!(
                "# verified {} mismatch {} inconsistent-spec {} external-data-missing {} wall_ms {}",
                summary.verified,
                summary.mismatch,
                summary.inconsistent_spec,
                summary.external_data_missing,
                total_millis
            );
            if summary.mismatch + summary.inconsistent_spec > 0 {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Table => {
            println!("delta d order label moore_bound moore_ratio");
            for e in ddgraph::records::table() {
                let bound = moore_bound(e.delta, e.d).map_err(|e| e.to_string())?;
                println!(
                    "{} {} {} {} {} {:.6}",
                    e.delta, e.d, e.order, e.label, bound, e.moore_ratio()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SearchGens { m, a, n, delta, diameter, seed, budget, restarts, moves, log } => {
            let group =
                SemidirectGroup::new(SemidirectSpec { m, a, n }).map_err(|e| e.to_string())?;
            let cfg = SearchConfig {
                seed,
                budget,
                target_delta: delta,
                target_diameter: diameter,
                restarts,
                neighborhood_moves: moves,
            };
            let out = search_generators(&group, &cfg).map_err(|e| e.to_string())?;
            println!(
                "best restart {} move {} objective diameter {} order {}",
                out.best.restart,
                out.best.move_index,
                out.best.objective.primary,
                group.order()
            );
            println!("generators {}", out.best.description);
            emit_log(&out.log, log)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SearchPairing { host, diameter, seed, budget, restarts, moves, log, out } => {
            let host = CompactGraph::read_adjacency_file(&host).map_err(|e| e.to_string())?;
            let cfg = SearchConfig {
                seed,
                budget,
                target_delta: 3,
                target_diameter: diameter,
                restarts,
                neighborhood_moves: moves,
            };
            let res = search_pairing(&host, &cfg).map_err(|e| e.to_string())?;
            println!(
                "best restart {} move {} objective {}",
                res.best.restart, res.best.move_index, res.best.objective.primary
            );
            if let Some(path) = out {
                std::fs::write(&path, pairing_to_string(host.edge_count(), &res.best.data))
                    .map_err(|e| e.to_string())?;
            }
            emit_log(&res.log, log)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn construct_cayley<G: ddgraph::Group + ?Sized>(
    group: &G,
    indices: &[usize],
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let conn = close_connection_set(group, indices).map_err(|e| e.to_string())?;
    let (diameter, reached) =
        cayley_diameter_implicit(group, &conn).map_err(|e| e.to_string())?;
    let bfs = implicit_bfs(group, &conn);
    println!("order    {reached}");
    println!("degree   {}", conn.degree());
    println!("diameter {diameter}");
    if let Some(avg) = bfs.average_distance() {
        println!("average  {}", decimal6(&avg));
    }
    if let Some(path) = out {
        let g = build_cayley_explicit(group, &conn).map_err(|e| e.to_string())?;
        g.write_adjacency_file(&path).map_err(|e| e.to_string())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_log(log: &str, path: Option<PathBuf>) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(&p, log).map_err(|e| e.to_string()),
        None => {
            print!("{log}");
            Ok(())
        }
    }
}
