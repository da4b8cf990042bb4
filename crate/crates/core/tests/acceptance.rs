//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vgraph::arr::{parse_arr, write_arr};
use vgraph::connectivity::{
    max_disjoint_paths, proof_paths, verify_disjoint_paths, vertex_connectivity,
};
use vgraph::dual::winkler_extend;
use vgraph::generators::{gen_venn, gen_venn3, gen_weave};
use vgraph::hamilton::{find_hamilton, verify_cycle, HamiltonError};
use vgraph::validate::{self, venn_check};
use vgraph::{Adjacency, Dart, PlaneGraph};

const VENN_CHECK_LIMIT: Duration = Duration::from_secs(1);
const CONNECTIVITY_LIMIT: Duration = Duration::from_secs(10);
const CERTIFY_LIMIT: Duration = Duration::from_secs(60);
const HAMILTON_LIMIT: Duration = Duration::from_secs(60);
const CHAIN_LIMIT: Duration = Duration::from_secs(120);
const WEAVE_LIMIT: Duration = Duration::from_secs(1);
const ROUND_TRIPS: usize = 200;
const ORACLE_MAX_V: usize = 12;
const SEED: u64 = 0x5eed;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:.2?}, limit {limit:?}")
    })
}

fn venn(n: usize) -> Result<PlaneGraph, String> {
    gen_venn(n).map_err(|e| format!("gen_venn({n}): {e}"))
}

fn venn_regions() -> Verdict {
    let mut notes = Vec::new();
    for n in 3..=6 {
        let g = venn(n)?;
        let start = Instant::now();
        let r = venn_check(&g).map_err(|e| format!("n={n}: {e}"))?;
        let elapsed = start.elapsed();
        ensure(r.is_simple_venn, || {
            format!("n={n}: not a simple Venn diagram")
        })?;
        ensure(r.distinct_labels == 1 << n, || {
            format!("n={n}: {} distinct labels", r.distinct_labels)
        })?;
        ensure(g.vertex_count() == (1 << n) - 2, || {
            format!("n={n}: V={}", g.vertex_count())
        })?;
        within(elapsed, VENN_CHECK_LIMIT, &format!("n={n}"))?;
        notes.push(format!(
            "n={n} V={} labels={}",
            g.vertex_count(),
            r.distinct_labels
        ));
    }
    Ok(notes.join(", "))
}

fn connectivity_four() -> Verdict {
    let mut notes = Vec::new();
    for n in 3..=6 {
        let g = venn(n)?;
        let start = Instant::now();
        let c = vertex_connectivity(g.adjacency()).map_err(|e| format!("n={n}: {e}"))?;
        let elapsed = start.elapsed();
        ensure(c.kappa == 4, || format!("n={n}: kappa={}", c.kappa))?;
        let cut = c.cut.ok_or_else(|| format!("n={n}: no separator"))?;
        ensure(cut.cut.len() == 4 && cut.verify(g.adjacency()), || {
            format!("n={n}: bad separator {:?}", cut.cut)
        })?;
        within(elapsed, CONNECTIVITY_LIMIT, &format!("n={n}"))?;
        notes.push(format!("n={n} kappa=4 ({elapsed:.1?})"));
    }
    Ok(notes.join(", "))
}

fn distance_two_certification() -> Verdict {
    let start = Instant::now();
    let (mut triples, mut fallbacks, mut pairs) = (0usize, 0usize, 0usize);
    for n in 3..=5 {
        let g = venn(n)?;
        let adj = g.adjacency();
        for pair in g.distance2_pairs() {
            pairs += 1;
            let flow = max_disjoint_paths(adj, pair.u, pair.v).map_err(|e| e.to_string())?;
            ensure(flow.k == 4, || {
                format!(
                    "n={n}: flow gives {} paths for ({}, {})",
                    flow.k, pair.u, pair.v
                )
            })?;
            for &z in &pair.witnesses {
                triples += 1;
                let r = proof_paths(&g, pair.u, z, pair.v).map_err(|e| format!("n={n}: {e}"))?;
                let paths: Vec<Vec<usize>> = r.paths.iter().map(|p| p.vertices.clone()).collect();
                ensure(
                    paths.len() == 4 && verify_disjoint_paths(adj, pair.u, pair.v, &paths),
                    || format!("n={n}: ({}, {z}, {}) not certified", pair.u, pair.v),
                )?;
                fallbacks += r.used_fallback as usize;
            }
        }
    }
    within(start.elapsed(), CERTIFY_LIMIT, "certification")?;
    Ok(format!(
        "{pairs} pairs, {triples} triples, fallback rate {fallbacks}/{triples}, flow agrees on all pairs"
    ))
}

fn hamiltonicity() -> Verdict {
    let mut notes = Vec::new();
    for n in 3..=6 {
        let g = venn(n)?;
        let start = Instant::now();
        let result = find_hamilton(g.adjacency());
        let elapsed = start.elapsed();
        let cycle = match result {
            Ok(c) => c,
            Err(HamiltonError::Exhausted) => return Err(format!("n={n}: Exhausted")),
            Err(e) => return Err(format!("n={n}: {e}")),
        };
        ensure(verify_cycle(g.adjacency(), &cycle.order), || {
            format!("n={n}: cycle fails verification")
        })?;
        within(elapsed, HAMILTON_LIMIT, &format!("n={n}"))?;
        notes.push(format!("n={n} V={} ({elapsed:.1?})", g.vertex_count()));
    }
    Ok(notes.join(", "))
}

fn extension_chain() -> Verdict {
    let start = Instant::now();
    let mut g = gen_venn3();
    let mut notes = vec!["3".to_string()];
    for n in 4..=6 {
        g = winkler_extend(&g).map_err(|e| format!("{} -> {n}: {e}", n - 1))?;
        let r = venn_check(&g).map_err(|e| format!("n={n}: {e}"))?;
        ensure(r.is_simple_venn && r.n == n, || {
            format!("n={n}: not a simple {n}-Venn diagram")
        })?;
        ensure(validate::validate(&g).is_vgraph, || {
            format!("n={n}: not a V-graph")
        })?;
        notes.push(n.to_string());
    }
    within(start.elapsed(), CHAIN_LIMIT, "chain")?;
    Ok(format!(
        "{} validated ({:.1?})",
        notes.join(" -> "),
        start.elapsed()
    ))
}

fn weave_counterexamples() -> Verdict {
    for k in 2..=6 {
        let start = Instant::now();
        let g = gen_weave(k).map_err(|e| e.to_string())?;
        let kappa = vertex_connectivity(g.adjacency())
            .map_err(|e| format!("k={k}: {e}"))?
            .kappa;
        let r = validate::validate(&g);
        let elapsed = start.elapsed();
        ensure(kappa == 2, || format!("k={k}: kappa={kappa}"))?;
        ensure(!r.two_faces.is_empty(), || format!("k={k}: no 2-faces"))?;
        ensure(!r.ufi_violations.is_empty(), || {
            format!("k={k}: no UFI violation")
        })?;
        within(elapsed, WEAVE_LIMIT, &format!("k={k}"))?;
    }
    Ok("k=2..6: kappa=2, 2-faces and UFI violations present".into())
}

fn subsets_up_to(
    n: usize,
    max: usize,
    out: &mut Vec<Vec<usize>>,
    cur: &mut Vec<usize>,
    from: usize,
) {
    if !cur.is_empty() {
        out.push(cur.clone());
    }
    if cur.len() == max {
        return;
    }
    for x in from..n {
        cur.push(x);
        subsets_up_to(n, max, out, cur, x + 1);
        cur.pop();
    }
}

fn cut_robustness() -> Verdict {
    let mut notes = Vec::new();
    for n in [3, 4] {
        let g = venn(n)?;
        let adj: &Adjacency = g.adjacency();
        let mut subsets = Vec::new();
        subsets_up_to(g.vertex_count(), 3, &mut subsets, &mut Vec::new(), 0);
        let failures = subsets
            .iter()
            .filter(|s| adj.components_without(s).len() != 1)
            .count();
        let size3 = subsets.iter().filter(|s| s.len() == 3).count();
        ensure(failures == 0, || {
            format!("n={n}: {failures} disconnecting subsets")
        })?;
        notes.push(format!(
            "n={n}: {} subsets ({size3} of size 3), 0 failures",
            subsets.len()
        ));
    }
    Ok(notes.join("; "))
}

fn structural_invariants() -> Verdict {
    let corpus = common::corpus();
    for (name, g) in &corpus {
        let v = g.vertex_count();
        let components = g.adjacency().components_without(&[]).len();
        ensure(g.edge_count() == 2 * v, || format!("{name}: E != 2V"))?;
        ensure(g.euler_characteristic() == 2 * components as i64, || {
            format!("{name}: Euler characteristic {}", g.euler_characteristic())
        })?;
        if components == 1 {
            ensure(g.face_count() == v + 2, || format!("{name}: F != V + 2"))?;
        }
        let mut hits = vec![0u8; g.dart_count()];
        for f in g.faces() {
            for d in &f.boundary {
                hits[d.index()] += 1;
            }
        }
        for o in g.curve_orbits() {
            for d in o {
                hits[d.index()] += 2;
            }
        }
        ensure(hits.iter().all(|&h| h == 3), || {
            format!("{name}: faces or curve orbits do not partition the darts")
        })?;
        let r = validate::validate(g);
        ensure(!r.is_vgraph || r.two_faces.is_empty(), || {
            format!("{name}: accepted V-graph with a 2-face")
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..ROUND_TRIPS {
        let (name, g) = corpus.choose(&mut rng).unwrap();
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let shift: Vec<usize> = (0..n).map(|_| rng.gen_range(0..4)).collect();
        let h = common::relabel(g, &perm, &shift);
        let text = write_arr(&h);
        let back = parse_arr(&text).map_err(|e| format!("trip {i} ({name}): {e}"))?;
        ensure(back == h && write_arr(&back) == text, || {
            format!("trip {i} ({name}): round trip changed the graph")
        })?;
        let moved = Dart::new(perm[0], shift[0]);
        ensure(
            h.twin(moved).vertex() == perm[g.twin(Dart::new(0, 0)).vertex()],
            || format!("trip {i} ({name}): relabelling lost an edge"),
        )?;
        ensure(
            h.face_count() == g.face_count()
                && validate::validate(&h).is_vgraph == validate::validate(g).is_vgraph,
            || format!("trip {i} ({name}): invariants changed under relabelling"),
        )?;
    }
    Ok(format!(
        "{} corpus graphs, {ROUND_TRIPS} randomized round trips",
        corpus.len()
    ))
}

fn oracle_equivalence() -> Verdict {
    let (mut graphs, mut pairs) = (0, 0);
    for (name, g) in common::corpus() {
        if g.vertex_count() > ORACLE_MAX_V {
            continue;
        }
        graphs += 1;
        let adj = g.adjacency();
        let found = find_hamilton(adj).is_ok();
        ensure(found == common::brute_hamiltonian(adj), || {
            format!("{name}: Hamilton verdict differs from brute force")
        })?;
        let n = adj.vertex_count();
        for u in 0..n {
            for v in u + 1..n {
                pairs += 1;
                let k = max_disjoint_paths(adj, u, v).map_err(|e| e.to_string())?.k;
                let oracle = common::local_connectivity_oracle(adj, u, v);
                ensure(k == oracle, || {
                    format!("{name}: pair ({u}, {v}) flow {k}, separators {oracle}")
                })?;
            }
        }
    }
    Ok(format!(
        "{graphs} graphs with V <= {ORACLE_MAX_V}, {pairs} pairs"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Venn validation", venn_regions),
        ("connectivity is four", connectivity_four),
        ("distance-two certification", distance_two_certification),
        ("Hamiltonicity", hamiltonicity),
        ("extension chain", extension_chain),
        ("weave counterexamples", weave_counterexamples),
        ("cut robustness", cut_robustness),
        ("structural invariants", structural_invariants),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
