//! Acceptance gate: the seven top-level checks, one pass line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::path::Path;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ddgraph::cayley::{build_cayley_explicit, close_connection_set, implicit_bfs};
use ddgraph::constructions::{
    edge_pairing_graph, foster_graph, moore_bound, validate_pairing,
};
use ddgraph::graph::decimal6;
use ddgraph::groups::{Group, OppositeGroup, SemidirectGroup, SemidirectSpec, TwoCoordGroup};
use ddgraph::records::{table, verify_entry, Checkable, Status};
use ddgraph::search::{search_pairing, SearchConfig};
use ddgraph::CompactGraph;

fn pass(n: u32, name: &str) {
    println!("[acceptance {n}] {name}: pass");
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ddgraph"))
}

/// 1. Every self-contained Cayley record row replays to the exact claimed
///    (order, degree, diameter).
#[test]
fn acceptance_1_cayley_record_replication() {
    let expected: [(u64, u64, u64); 13] = [
        (6, 8, 76_891),
        (7, 6, 12_264),
        (7, 7, 53_020),
        (9, 4, 1_640),
        (9, 8, 1_697_688),
        (10, 4, 2_331),
        (10, 5, 13_203),
        (11, 5, 19_620),
        (12, 5, 29_621),
        (13, 5, 40_488),
        (14, 5, 58_095),
        (15, 5, 77_520),
        (16, 2, 200),
    ];
    let t = table();
    for (delta, d, order) in expected {
        let e = t
            .iter()
            .find(|e| e.delta == delta && e.d == d)
            .unwrap_or_else(|| panic!("missing table entry ({delta},{d})"));
        assert_eq!(e.order, order, "claimed order of ({delta},{d})");
        let r = verify_entry(e, Path::new("."));
        assert_eq!(r.status, Status::Verified, "({delta},{d}): {}", r.detail);
        assert_eq!(r.measured_order, Some(order), "order of ({delta},{d})");
        assert_eq!(r.measured_degree, Some(delta), "degree of ({delta},{d})");
        assert_eq!(r.measured_diameter, Some(d), "diameter of ({delta},{d})");
    }
    pass(1, "cayley record replication (13 rows exact)");
}

/// 2. The (8,5) row is reported inconsistent (113·196 ≠ 5115) and the CLI
///    exits 1 without crashing.
#[test]
fn acceptance_2_inconsistent_row_detection() {
    let t = table();
    let e = t.iter().find(|e| e.delta == 8 && e.d == 5).unwrap();
    let r = verify_entry(e, Path::new("."));
    assert_eq!(r.status, Status::InconsistentSpec);
    assert_eq!(r.detail, "113\u{b7}196 = 22148 \u{2260} 5115");

    let out = bin()
        .args(["verify", "--delta", "8..8", "--diameter", "5..5"])
        .output()
        .expect("run ddgraph verify");
    assert_eq!(out.status.code(), Some(1), "exit code on inconsistent row");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("inconsistent-spec"), "output: {text}");
    assert!(text.contains("22148"), "output: {text}");
    pass(2, "inconsistency detection on the (8,5) row, exit 1");
}

/// 3. Moore bounds: closed form across the full table range; equality only
///    at (3,2) and (7,2).
#[test]
fn acceptance_3_moore_bounds() {
    for delta in 3..=16u64 {
        for d in 2..=10u64 {
            // Independent layer-sum oracle: 1 + Δ Σ (Δ-1)^i.
            let mut oracle = 1u64;
            let mut layer = delta;
            for _ in 0..d {
                oracle += layer;
                layer *= delta - 1;
            }
            assert_eq!(moore_bound(delta, d).unwrap(), oracle, "({delta},{d})");
        }
    }
    for e in table() {
        let bound = moore_bound(e.delta, e.d).unwrap();
        if (e.delta, e.d) == (3, 2) || (e.delta, e.d) == (7, 2) {
            assert_eq!(e.order, bound, "Moore graph at ({},{})", e.delta, e.d);
        } else {
            assert!(e.order < bound, "({},{}) must be strictly below", e.delta, e.d);
        }
    }
    pass(3, "Moore bound closed form and table comparison");
}

/// 4. The Foster graph: order 144, cubic, bipartite, girth 8, diameter 7.
#[test]
fn acceptance_4_foster_graph() {
    let g = foster_graph();
    assert_eq!(g.order(), 144);
    assert!(g.is_regular());
    assert_eq!(g.max_degree(), 3);
    assert!(g.is_bipartite());
    assert_eq!(g.girth(), Some(8));
    assert_eq!(g.diameter(false).unwrap(), 7);
    pass(4, "Foster graph stats (144, cubic, bipartite, girth 8, diameter 7)");
}

/// A perfect matching on the Foster graph's edge ids in which no two paired
/// edges share a host endpoint (greedy with tail repair).
fn disjoint_pairing(host: &CompactGraph) -> Vec<(usize, usize)> {
    let edges: Vec<(u32, u32)> = host.edges().collect();
    let disjoint =
        |a: (u32, u32), b: (u32, u32)| a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1;
    let m = edges.len();
    let mut partner: Vec<Option<usize>> = vec![None; m];
    for i in 0..m {
        if partner[i].is_some() {
            continue;
        }
        if let Some(j) = (i + 1..m).find(|&j| partner[j].is_none() && disjoint(edges[i], edges[j]))
        {
            partner[i] = Some(j);
            partner[j] = Some(i);
            continue;
        }
        // Tail repair: steal a partner from an earlier pair (a, b) such that
        // both (a, i) and (b, leftover) remain endpoint-disjoint.
        let (a, b) = (0..m)
            .filter_map(|a| partner[a].map(|b| (a, b)))
            .find(|&(a, b)| a < b && disjoint(edges[a], edges[i]) && disjoint(edges[b], edges[i]))
            .expect("repairable tail");
        let _ = b;
        let old = partner[a].unwrap();
        partner[a] = Some(i);
        partner[i] = Some(a);
        partner[old] = None;
        // The displaced edge re-enters the scan because indices after `i`
        // have not been fixed yet; pair it immediately with any free edge.
        let j = (0..m)
            .find(|&j| j != old && partner[j].is_none() && disjoint(edges[old], edges[j]))
            .expect("free disjoint partner");
        partner[old] = Some(j);
        partner[j] = Some(old);
    }
    (0..m)
        .filter_map(|i| partner[i].map(|j| (i, j)))
        .filter(|&(i, j)| i < j)
        .collect()
}

/// 5. Chen construction: 360 vertices and 3-regular for every valid pairing;
///    girth 3 exactly when a pair shares an endpoint; the pairing search
///    returns valid candidates with monotone logs within a 10^5 budget.
#[test]
fn acceptance_5_chen_pairing_properties() {
    let host = foster_graph();
    assert_eq!(host.edge_count(), 216);

    // Adjacent-id pairing: ids 0 and 1 both leave vertex 0, so it contains a
    // shared-endpoint pair and must create a triangle.
    let adjacent: Vec<(usize, usize)> = (0..108).map(|i| (2 * i, 2 * i + 1)).collect();
    let p = validate_pairing(&host, &adjacent).unwrap();
    assert!(p.shared_endpoint_pairs() > 0);
    let g = edge_pairing_graph(&p).unwrap();
    assert_eq!(g.order(), 360);
    assert!(g.is_regular() && g.max_degree() == 3);
    assert_eq!(g.girth(), Some(3));

    // Endpoint-disjoint pairing: no triangle possible.
    let disjoint = disjoint_pairing(&host);
    let p = validate_pairing(&host, &disjoint).unwrap();
    assert_eq!(p.shared_endpoint_pairs(), 0);
    let g = edge_pairing_graph(&p).unwrap();
    assert_eq!(g.order(), 360);
    assert!(g.is_regular() && g.max_degree() == 3);
    assert!(g.girth().unwrap() > 3);

    // Search contract within a 10^5-evaluation budget: valid best candidate
    // and monotone best-so-far per restart.
    let cfg = SearchConfig {
        seed: 5,
        budget: 100_000,
        target_delta: 3,
        target_diameter: 8,
        restarts: 4,
        neighborhood_moves: 199,
    };
    let out = search_pairing(&host, &cfg).unwrap();
    assert!(out.evaluations <= cfg.budget);
    let p = validate_pairing(&host, &out.best.data).unwrap();
    let g = edge_pairing_graph(&p).unwrap();
    assert_eq!(g.order(), 360);
    assert!(g.is_regular() && g.max_degree() == 3);
    assert_monotone_per_restart(&out.log);

    // Conditional: published pairing data, if present, must reproduce the
    // (3,8) stats exactly.
    let t = table();
    let chen = t.iter().find(|e| e.delta == 3 && e.d == 8).unwrap();
    let r = verify_entry(chen, Path::new("data"));
    match r.status {
        Status::ExternalDataMissing => {}
        Status::Verified => {
            assert_eq!(r.measured_order, Some(360));
        }
        other => panic!("(3,8) with supplied data: {other:?} ({})", r.detail),
    }
    pass(5, "Chen pairing properties and search contract");
}

/// 6. External-data rows: present files must verify; absent files must yield
///    external-data-missing, never a failure.
#[test]
fn acceptance_6_external_data_verifications() {
    let empty = tempfile::tempdir().unwrap();
    let t = table();
    for (delta, d) in [(13u64, 3u64), (5, 5), (3, 8)] {
        let e = t.iter().find(|e| e.delta == delta && e.d == d).unwrap();
        let r = verify_entry(e, empty.path());
        assert_eq!(
            r.status,
            Status::ExternalDataMissing,
            "({delta},{d}) with no data: {}",
            r.detail
        );
        // With data actually present in the repository's data directory the
        // row must fully verify; otherwise it must stay a clean skip.
        let r = verify_entry(e, Path::new("data"));
        assert!(
            matches!(r.status, Status::ExternalDataMissing | Status::Verified),
            "({delta},{d}): {:?} ({})",
            r.status,
            r.detail
        );
    }
    pass(6, "external-data rows verify when present, skip cleanly when absent");
}

fn assert_monotone_per_restart(log: &str) {
    use std::collections::HashMap;
    let mut best: HashMap<u64, u64> = HashMap::new();
    let mut best_seen: HashMap<u64, u64> = HashMap::new();
    for line in log.lines().skip(1) {
        let fields: Vec<&str> = line.splitn(5, ' ').collect();
        assert_eq!(fields.len(), 5, "log line: {line}");
        let restart: u64 = fields[1].parse().unwrap();
        let obj = fields[3];
        let primary: u64 = if obj == "inf" {
            u64::MAX
        } else {
            obj.trim_start_matches("d=").split('/').next().unwrap().parse().unwrap()
        };
        let entry = best.entry(restart).or_insert(u64::MAX);
        if primary < *entry {
            *entry = primary;
        }
        // best-so-far sequence is non-increasing by construction; verify by
        // replaying it.
        let seen = best_seen.entry(restart).or_insert(u64::MAX);
        assert!(*entry <= *seen, "best-so-far regressed in restart {restart}");
        *seen = *entry;
    }
}

/// 7. Property suites that need no external data.
#[test]
fn acceptance_7_property_suites() {
    // Group axioms, >= 10^4 random samples per spec.
    let specs = [
        SemidirectSpec { m: 17, a: 891, n: 4523 },
        SemidirectSpec { m: 24, a: 90, n: 511 },
        SemidirectSpec { m: 40, a: 24, n: 41 },
        SemidirectSpec { m: 48, a: 772, n: 1615 },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in specs {
        let g = SemidirectGroup::new(spec).unwrap();
        for _ in 0..10_000 {
            let (a, b, c) = (
                rng.gen_range(0..g.order()),
                rng.gen_range(0..g.order()),
                rng.gen_range(0..g.order()),
            );
            assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
            assert_eq!(g.mul(g.inv(a), a), g.identity());
        }
    }

    // Opposite-convention diameter equality on every semidirect row of
    // order <= 60000.
    for e in table() {
        let Some(Checkable::Semidirect { m, a, n, ref gens, .. }) = e.checkable else {
            continue;
        };
        if m * n > 60_000 || gens.is_empty() || m * n != e.order {
            continue;
        }
        let group = SemidirectGroup::new(SemidirectSpec { m, a, n }).unwrap();
        let indices: Vec<usize> = gens
            .iter()
            .map(|&(x, y)| group.encode(ddgraph::groups::SdElement { x, y }))
            .collect();
        let conn = close_connection_set(&group, &indices).unwrap();
        let forward = implicit_bfs(&group, &conn);
        let opposite = implicit_bfs(&OppositeGroup(&group), &conn);
        assert_eq!(forward.diameter, opposite.diameter, "({},{})", e.delta, e.d);
        assert_eq!(forward.histogram, opposite.histogram, "({},{})", e.delta, e.d);
    }

    // Vertex-transitive eccentricity equality plus implicit/explicit BFS
    // agreement on the small Cayley graphs (order <= 2000).
    {
        let group = SemidirectGroup::new(SemidirectSpec { m: 40, a: 24, n: 41 }).unwrap();
        let gens: Vec<usize> = [(25, 28), (14, 40), (29, 11), (39, 12), (20, 35)]
            .iter()
            .map(|&(x, y)| group.encode(ddgraph::groups::SdElement { x, y }))
            .collect();
        let conn = close_connection_set(&group, &gens).unwrap();
        check_vertex_transitive_agreement(&build_cayley_explicit(&group, &conn).unwrap(), {
            let bfs = implicit_bfs(&group, &conn);
            (bfs.diameter, bfs.histogram)
        });

        let abas = TwoCoordGroup::new(10).unwrap();
        let gens: Vec<usize> = [
            (0, 0, 1),
            (1, 0, 1),
            (1, 3, 1),
            (1, 7, 1),
            (5, 0, 1),
            (5, 2, 1),
            (5, 0, 0),
            (4, 1, 0),
            (3, 2, 0),
        ]
        .iter()
        .map(|&(a, b, c)| abas.encode(ddgraph::groups::TcElement { a, b, c }))
        .collect();
        let conn = close_connection_set(&abas, &gens).unwrap();
        check_vertex_transitive_agreement(&build_cayley_explicit(&abas, &conn).unwrap(), {
            let bfs = implicit_bfs(&abas, &conn);
            (bfs.diameter, bfs.histogram)
        });
    }

    // Adjacency round trip is bit-exact.
    let foster = foster_graph();
    let text = foster.to_adjacency_string();
    let back = CompactGraph::from_adjacency_str(&text).unwrap();
    assert_eq!(back.to_adjacency_string(), text);

    // Search determinism: byte-identical logs for both searches.
    {
        let group = SemidirectGroup::new(SemidirectSpec { m: 40, a: 24, n: 41 }).unwrap();
        let cfg = SearchConfig {
            seed: 11,
            budget: 200,
            target_delta: 9,
            target_diameter: 4,
            restarts: 4,
            neighborhood_moves: 49,
        };
        let a = ddgraph::search::search_generators(&group, &cfg).unwrap();
        let b = ddgraph::search::search_generators(&group, &cfg).unwrap();
        assert_eq!(a.log, b.log);
        let host = foster_graph();
        let cfg = SearchConfig {
            seed: 11,
            budget: 60,
            target_delta: 3,
            target_diameter: 8,
            restarts: 3,
            neighborhood_moves: 19,
        };
        let a = search_pairing(&host, &cfg).unwrap();
        let b = search_pairing(&host, &cfg).unwrap();
        assert_eq!(a.log, b.log);
    }

    // K4 pairing search against the exhaustive 15-matching oracle.
    {
        let k4 = CompactGraph::from_edges(
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let mut oracle_best: Option<(u64, u64)> = None;
        let ids: Vec<usize> = (0..6).collect();
        for j in 1..6 {
            // pair 0 with j, then split the remaining four in 3 ways
            let rest: Vec<usize> = ids.iter().copied().filter(|&x| x != 0 && x != j).collect();
            for k in 1..4 {
                let pairs = vec![
                    (0, j),
                    (rest[0], rest[k]),
                    (
                        rest[if k == 1 { 2 } else { 1 }],
                        rest[if k == 3 { 2 } else { 3 }],
                    ),
                ];
                let p = validate_pairing(&k4, &pairs).unwrap();
                let g = edge_pairing_graph(&p).unwrap();
                let d = g.diameter(false).map(|x| x as u64).unwrap_or(u64::MAX);
                let girth = g.girth().map(|x| x as u64).unwrap_or(0);
                let key = (d, u64::MAX - girth);
                if oracle_best.map_or(true, |b| key < b) {
                    oracle_best = Some(key);
                }
            }
        }
        let cfg = SearchConfig {
            seed: 3,
            budget: 200,
            target_delta: 3,
            target_diameter: 2,
            restarts: 4,
            neighborhood_moves: 49,
        };
        let out = search_pairing(&k4, &cfg).unwrap();
        assert_eq!(out.best.objective.primary, oracle_best.unwrap().0);
    }

    // decimal6 matches the published 6-decimal renderings.
    assert_eq!(decimal6(&num_rational::Ratio::new(3u64, 2u64)), "1.500000");
    pass(7, "property suites (axioms, conventions, BFS agreement, determinism)");
}

fn check_vertex_transitive_agreement(g: &CompactGraph, implicit: (u32, Vec<u64>)) {
    let (idiam, ihist) = implicit;
    let mut histogram = vec![0u64; idiam as usize + 1];
    let mut diameter = 0;
    for v in 0..g.order() as u32 {
        let (ecc, dist) = g.bfs_eccentricity(v).unwrap();
        assert_eq!(ecc, idiam, "eccentricity of vertex {v}");
        diameter = diameter.max(ecc);
        if v == 0 {
            for d in dist {
                histogram[d as usize] += 1;
            }
        }
    }
    assert_eq!(diameter, idiam);
    assert_eq!(histogram, ihist);
}
