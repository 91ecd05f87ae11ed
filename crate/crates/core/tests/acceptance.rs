//! End-to-end acceptance checks, one line of output per criterion.
//!
//! Everything runs inside a single test so the timing criteria are not
//! disturbed by other tests running alongside.

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wrg_core::analyze::{
    diameter, domination_number, feasibility_report, find_independent_triple, isolated_vertices,
    nontrivial_components, Domination, Verdict,
};
use wrg_core::gen::{random_connected_cointerval, random_graph, random_points};
use wrg_core::graph::families::{complete, cycle, path, supernova, union_of};
use wrg_core::realize::{
    intervals_to_staircase, realize_pm, realize_tree, realize_two_components, recognize_cointerval,
    TreeOutcome,
};
use wrg_core::separate::{
    linearly_separable, mutual_complete, search_counterexample, stored_counterexample,
};
use wrg_core::stab::{
    construct_certificate, grid_certificate, grid_instance, stab_construct, stab_exact,
};
use wrg_core::{build_oracle, build_rig, build_sweep, Graph, Mode, PlanePoint, Scene};

/// Writes past the test harness's output capture so results show in plain `cargo test` runs.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stderr(), $($t)*);
    }};
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn scene_of(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Scene {
    let all = random_points(rng, n + m, "e");
    let (p, w) = all.split_at(n);
    Scene::new(p.to_vec(), w.to_vec())
}

fn rebuilt(scene: &Scene, mode: Mode) -> Graph {
    build_oracle(scene, mode).unwrap().without_slopes()
}

// ------------------------------------------------------------------ 1, 2, 3

fn criterion_1() {
    let start = Instant::now();
    let mut r = rng(1);
    for round in 0..200 {
        let total = r.gen_range(1..=1000);
        let n = r.gen_range(1..=total);
        let s = scene_of(&mut r, n, total - n);
        for mode in [Mode::Positive, Mode::Negative] {
            assert_eq!(
                build_sweep(&s, mode).unwrap(),
                build_oracle(&s, mode).unwrap(),
                "scene {round}, {mode}"
            );
        }
    }
    let t = start.elapsed();
    say!("    200 scenes in {:.1} s", t.as_secs_f64());
    assert!(t < Duration::from_secs(60));
}

/// Random points plus four anchor vertices far left, each with a witness
/// just above it and right of every anchor. Only boxes with an anchor corner
/// can hold a witness, so k stays below 4n.
fn sparse_scene(n: usize, seed: u64) -> Scene {
    let mut r = rng(seed);
    let h = 40 * n as i64;
    let mut pts: Vec<PlanePoint> = random_points(&mut r, n - 4, "p")
        .into_iter()
        .map(|p| PlanePoint::new(p.id, 4 * p.x + 2, 4 * p.y + 2))
        .collect();
    let mut ws = Vec::new();
    for i in 0..4 {
        let y = h * (i + 1) / 5 + 1;
        pts.push(PlanePoint::new(format!("a{i}"), -100 * (i + 1), y));
        ws.push(PlanePoint::new(format!("w{i}"), -1 - i, y + 2));
    }
    Scene::new(pts, ws)
}

/// Best per-call time of `job(i)` for each `i`, sampled round-robin so drift
/// hits all sizes alike.
fn best_times(job: impl Fn(usize), reps: &[u32], rounds: usize) -> Vec<f64> {
    let mut best = vec![f64::INFINITY; reps.len()];
    for _ in 0..rounds {
        for (i, &r) in reps.iter().enumerate() {
            let t = Instant::now();
            for _ in 0..r {
                job(i);
            }
            best[i] = best[i].min(t.elapsed().as_secs_f64() / r as f64);
        }
    }
    best
}

fn criterion_2() {
    let sizes = [2000, 4000, 8000];
    let scenes: Vec<Scene> = sizes.iter().map(|&n| sparse_scene(n, n as u64)).collect();
    for (s, &n) in scenes.iter().zip(&sizes) {
        let k = build_sweep(s, Mode::Positive).unwrap().edge_count();
        assert!(k <= 4 * n, "k = {k} is not O(n)");
    }
    let sweep = best_times(
        |i| {
            drop(std::hint::black_box(build_sweep(
                &scenes[i],
                Mode::Positive,
            )))
        },
        &[40, 20, 10],
        20,
    );
    let oracle = best_times(
        |i| {
            drop(std::hint::black_box(build_oracle(
                &scenes[i],
                Mode::Positive,
            )))
        },
        &[4, 2, 1],
        5,
    );
    for i in 1..sizes.len() {
        let (rs, ro) = (sweep[i] / sweep[i - 1], oracle[i] / oracle[i - 1]);
        say!(
            "    n {} -> {}: sweep x{rs:.2}, oracle x{ro:.2}",
            sizes[i - 1],
            sizes[i]
        );
        assert!(rs <= 2.6, "sweep grew x{rs:.2}");
        assert!(ro >= 3.4, "oracle grew x{ro:.2}");
    }
}

fn criterion_3() {
    let mut r = rng(3);
    for _ in 0..100 {
        let n = r.gen_range(0..=200);
        let p = random_points(&mut r, n, "p");
        let w: Vec<PlanePoint> = p
            .iter()
            .map(|q| PlanePoint::new(format!("w{}", q.id), q.x, q.y))
            .collect();
        let s = Scene::new(p.clone(), w);
        let rig = build_rig(&p).without_slopes();
        assert_eq!(rebuilt(&s, Mode::Positive), rig.complement());
        assert_eq!(rebuilt(&s, Mode::Negative), rig);
    }
}

// ------------------------------------------------------------------ 4

fn criterion_4() {
    let mut r = rng(4);
    for round in 0..1000 {
        let n = r.gen_range(1..=40);
        let m = r.gen_range(0..=40);
        let g = rebuilt(&scene_of(&mut r, n, m), Mode::Positive);
        let comps = nontrivial_components(&g);
        assert!(comps.len() <= 2, "scene {round}");
        for c in &comps {
            let d = diameter(&g, c).unwrap();
            assert!(d <= if comps.len() == 1 { 6 } else { 3 }, "scene {round}");
        }
        assert!(find_independent_triple(&g).is_none(), "scene {round}");
        let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) > 0).collect();
        match domination_number(&g.induced(&keep), 4) {
            Domination::Exact(k) => assert!(k <= 4),
            Domination::Exceeds(_) => panic!("scene {round}: domination above 4"),
        }
    }

    let p7 = path(7);
    let TreeOutcome::Realized(real) = realize_tree(&p7).unwrap() else {
        panic!("P7 has a drawing")
    };
    let g = rebuilt(&real.scene, Mode::Positive);
    assert_eq!(diameter(&g, &(0..7).collect::<Vec<_>>()).unwrap(), 6);

    let two = union_of(&[path(4), path(4)]);
    let real = realize_two_components(&two).unwrap();
    let g = rebuilt(&real.scene, Mode::Positive);
    let comps = nontrivial_components(&g);
    assert_eq!(comps.len(), 2);
    for c in &comps {
        assert_eq!(diameter(&g, c).unwrap(), 3);
    }
}

// ------------------------------------------------------------------ 5

/// AHU code of the tree rooted at `v`.
fn ahu(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| ahu(adj, u, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn tree_code(t: &Graph) -> String {
    let adj = t.adjacency();
    let n = adj.len();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut left = n;
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in &adj[v] {
                deg[u] -= 1;
                if deg[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&c| ahu(&adj, c, usize::MAX))
        .min()
        .unwrap()
}

fn all_trees(max_n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::numbered(1, [])];
    let mut out = level.clone();
    for n in 2..=max_n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..n - 1 {
                let mut edges = t.edges().to_vec();
                edges.push((v, n - 1));
                let g = Graph::numbered(n, edges);
                if seen.insert(tree_code(&g)) {
                    next.push(g);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

fn criterion_5() {
    let start = Instant::now();
    let trees = all_trees(10);
    // 1, 1, 1, 2, 3, 6, 11, 23, 47, 106 unlabelled trees
    assert_eq!(trees.len(), 201);
    let mut drawn = 0;
    for t in &trees {
        match realize_tree(t).unwrap() {
            TreeOutcome::Realized(real) => {
                assert!(find_independent_triple(t).is_none());
                real.verify(t).unwrap();
                drawn += 1;
            }
            TreeOutcome::Certificate(_) => assert!(find_independent_triple(t).is_some()),
        }
    }
    say!("    {} trees, {drawn} drawn", trees.len());
    assert!(start.elapsed() < Duration::from_secs(300));
}

// ------------------------------------------------------------------ 6

fn adjacency_mask(g: &Graph) -> Vec<u32> {
    let mut m = vec![0u32; g.vertex_count()];
    for &(u, v) in g.edges() {
        m[u] |= 1 << v;
        m[v] |= 1 << u;
    }
    m
}

/// Canonical edge code: the smallest upper-triangle bit string over vertex
/// orders that sort vertices by a refinement invariant.
fn canonical_code(g: &Graph) -> u64 {
    let m = adjacency_mask(g);
    let n = m.len();
    let deg: Vec<u32> = m.iter().map(|x| x.count_ones()).collect();
    let inv: Vec<(u32, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n)
                .filter(|&u| m[v] >> u & 1 == 1)
                .map(|u| deg[u])
                .collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(c) if inv[c[0]] == inv[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut perm = Vec::with_capacity(n);
    fn go(cells: &mut [Vec<usize>], i: usize, perm: &mut Vec<usize>, m: &[u32], best: &mut u64) {
        if i == cells.len() {
            let mut code = 0u64;
            for a in 0..perm.len() {
                for b in a + 1..perm.len() {
                    code = code << 1 | (m[perm[a]] >> perm[b] & 1) as u64;
                }
            }
            *best = (*best).min(code);
            return;
        }
        let len = cells[i].len();
        permute(cells, i, 0, len, perm, m, best);
    }
    fn permute(
        cells: &mut [Vec<usize>],
        i: usize,
        k: usize,
        len: usize,
        perm: &mut Vec<usize>,
        m: &[u32],
        best: &mut u64,
    ) {
        if k == len {
            go(cells, i + 1, perm, m, best);
            return;
        }
        for j in k..len {
            cells[i].swap(k, j);
            perm.push(cells[i][k]);
            permute(cells, i, k + 1, len, perm, m, best);
            perm.pop();
            cells[i].swap(k, j);
        }
    }
    go(&mut cells, 0, &mut perm, &m, &mut best);
    best
}

fn all_graphs(max_n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::numbered(0, [])];
    let mut out = level.clone();
    for n in 1..=max_n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..1 << (n - 1) {
                let mut edges = g.edges().to_vec();
                edges.extend(
                    (0..n - 1)
                        .filter(|&u| mask >> u & 1 == 1)
                        .map(|u| (u, n - 1)),
                );
                let h = Graph::numbered(n, edges);
                if seen.insert(canonical_code(&h)) {
                    next.push(h);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Interval graph test by searching endpoint orders: a vertex may open when
/// it meets every open interval and no closed one, and may close once all
/// its neighbours have opened.
fn is_interval(g: &Graph) -> bool {
    let adj = adjacency_mask(g);
    let n = adj.len();
    let full = (1u32 << n) - 1;
    let mut dead = HashSet::new();
    fn dfs(
        opened: u32,
        closed: u32,
        full: u32,
        adj: &[u32],
        dead: &mut HashSet<(u32, u32)>,
    ) -> bool {
        if closed == full {
            return true;
        }
        if dead.contains(&(opened, closed)) {
            return false;
        }
        let active = opened & !closed;
        for v in 0..adj.len() {
            let bit = 1 << v;
            let ok = if opened & bit == 0 {
                active & !adj[v] == 0
                    && closed & adj[v] == 0
                    && dfs(opened | bit, closed, full, adj, dead)
            } else if closed & bit == 0 {
                adj[v] & !opened == 0 && dfs(opened, closed | bit, full, adj, dead)
            } else {
                false
            };
            if ok {
                return true;
            }
        }
        dead.insert((opened, closed));
        false
    }
    dfs(0, 0, full, &adj, &mut dead)
}

fn criterion_6() {
    let graphs = all_graphs(7);
    // 1, 1, 2, 4, 11, 34, 156, 1044 graphs up to isomorphism
    assert_eq!(graphs.len(), 1253);
    let mut yes = 0;
    for g in &graphs {
        let got = recognize_cointerval(g);
        assert_eq!(
            got.is_some(),
            is_interval(&g.complement()),
            "{:?}",
            g.edges()
        );
        if let Some(model) = got {
            model.validate().unwrap();
            let real = intervals_to_staircase(&model).unwrap();
            assert!(rebuilt(&real.scene, Mode::Positive).same_as(g));
            yes += 1;
        }
    }
    say!("    {} graphs, {yes} co-interval", graphs.len());
    assert!(recognize_cointerval(&cycle(5)).is_none());
    for g in [path(4), complete(5), cycle(4)] {
        assert!(recognize_cointerval(&g).is_some());
    }
}

// ------------------------------------------------------------------ 7

fn criterion_7() {
    let mut r = rng(7);
    for round in 0..200 {
        let (na, nb) = (r.gen_range(2..=8), r.gen_range(2..=8));
        let a = random_connected_cointerval(&mut r, na).relabel(|v| format!("a{v}"));
        let b = random_connected_cointerval(&mut r, nb).relabel(|v| format!("b{v}"));
        let lone = Graph::empty((0..r.gen_range(0..=3)).map(|i| format!("z{i}")).collect());
        let mut parts = vec![a, b, lone];
        parts.shuffle(&mut r);
        let g = union_of(&parts);
        let real = realize_two_components(&g).unwrap_or_else(|e| panic!("pair {round}: {e}"));
        real.verify(&g).unwrap();
        assert_eq!(
            isolated_vertices(&rebuilt(&real.scene, Mode::Positive)).len(),
            isolated_vertices(&g).len()
        );
    }
    assert_eq!(feasibility_report(&supernova(6)).verdict, Verdict::Fail);
    let three_k2 = union_of(&[
        path(2),
        path(2).relabel(|v| format!("b{v}")),
        path(2).relabel(|v| format!("c{v}")),
    ]);
    assert_eq!(feasibility_report(&three_k2).verdict, Verdict::Fail);
}

// ------------------------------------------------------------------ 8

fn check_pm(g: &Graph) {
    let n = g.vertex_count();
    let real = realize_pm(g);
    real.verify(g).unwrap();
    let scene = &real.scene;
    assert!(scene.witness_count() <= n.saturating_sub(1).pow(2));
    // vertices sit on the diagonal; cells lie between consecutive vertices
    let xs: Vec<i64> = scene.points.iter().map(|p| p.x).collect();
    let cell = |v: i64| xs.iter().filter(|&&x| x < v).count();
    let mut used = BTreeSet::new();
    for w in scene.pos_witnesses.iter().chain(&scene.neg_witnesses) {
        let (c, r) = (cell(w.x), cell(w.y));
        assert!((1..n).contains(&c) && (1..n).contains(&r));
        assert!(used.insert((c, r)), "two witnesses in one cell");
    }
}

fn criterion_8() {
    for n in 0..=5 {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for mask in 0u32..1 << pairs.len() {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            check_pm(&Graph::numbered(n, edges));
        }
    }
    let mut r = rng(8);
    for _ in 0..100 {
        let n = r.gen_range(1..=12);
        let p = r.gen_range(0.0..=1.0);
        check_pm(&random_graph(&mut r, n, p));
    }
    let c4 = realize_pm(&cycle(4)).scene;
    assert_eq!((c4.pos_witnesses.len(), c4.neg_witnesses.len()), (5, 4));
}

// ------------------------------------------------------------------ 9

fn criterion_9() {
    let start = Instant::now();
    for k in 2..=25 {
        let cert = grid_certificate(k).unwrap();
        let want = 2 * k * (k - 1);
        assert_eq!((cert.lower, cert.upper), (want, want), "k = {k}");
        assert_eq!(
            stab_construct(&grid_instance(k))
                .unwrap()
                .pos_witnesses
                .len(),
            want
        );
    }
    assert_eq!(stab_exact(&grid_instance(2), 16).unwrap(), 4);
    let mut r = rng(9);
    for _ in 0..100 {
        let n = r.gen_range(2..=9);
        let p = random_points(&mut r, n, "p");
        let cert = construct_certificate(&p).unwrap();
        let exact = stab_exact(&p, 64).unwrap();
        assert!(
            cert.lower <= exact && exact <= cert.upper,
            "{} <= {exact} <= {}",
            cert.lower,
            cert.upper
        );
    }
    assert!(start.elapsed() < Duration::from_secs(120));
}

// ------------------------------------------------------------------ 10, 11

fn criterion_10() {
    let p4 = recognize_cointerval(&path(4)).unwrap();
    let stair = rebuilt(&intervals_to_staircase(&p4).unwrap().scene, Mode::Positive);
    assert!(stair.same_as(&path(4)));
    assert_eq!(domination_number(&stair, 6), Domination::Exact(2));
    assert_eq!(domination_number(&complete(6), 6), Domination::Exact(1));
    assert_eq!(domination_number(&supernova(6), 6), Domination::Exact(6));
    assert_eq!(domination_number(&supernova(6), 5), Domination::Exceeds(5));
}

fn criterion_11() {
    let c = stored_counterexample();
    assert!(mutual_complete(&c).unwrap());
    assert_eq!(linearly_separable(&c), None);
    let start = Instant::now();
    let found = search_counterexample(1, 1_000_000).unwrap();
    assert!(start.elapsed() < Duration::from_secs(60));
    assert!(mutual_complete(&found).unwrap());
    assert_eq!(linearly_separable(&found), None);
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn()); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failed = Vec::new();
    for (i, f) in criteria {
        let t = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        say!(
            "criterion {i}: {} ({:.1} s)",
            if ok { "pass" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
        if !ok {
            failed.push(i);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
