use proptest::prelude::*;
use timely_core::{
    bellman_ford, find_negative_cycle, floyd_warshall, sparse_apsp, Bound, ConstraintGraph, DetectionMode,
    DistanceMatrix, Engine, Rational,
};

fn graphs(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = ConstraintGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::option::weighted(0.4, lo..=hi), n * n).prop_map(move |w| {
            let mut g = ConstraintGraph::new(n);
            for (k, weight) in w.into_iter().enumerate() {
                let (u, v) = (k / n, k % n);
                if let (true, Some(x)) = (u != v, weight) {
                    g.add_edge(u, v, Rational::from_i64(x));
                }
            }
            g
        })
    })
}

/// Reference distances by enumerating simple paths and simple cycles.
///
/// Without negative cycles the shortest walk is a simple path. A pair is
/// unbounded below exactly when a walk from `i` to `j` can visit a vertex on
/// a negative simple cycle.
fn enumerated_distances(g: &ConstraintGraph) -> DistanceMatrix {
    let n = g.vertex_count();
    let mut on_negative_cycle = vec![false; n];
    for start in 0..n {
        let mut stack = vec![(start, vec![start], Rational::ZERO)];
        while let Some((u, path, w)) = stack.pop() {
            for e in g.outgoing(u) {
                let total = &w + &e.weight;
                if e.to == start {
                    if total.is_negative() {
                        for &v in &path {
                            on_negative_cycle[v] = true;
                        }
                    }
                } else if e.to > start && !path.contains(&e.to) {
                    let mut next = path.clone();
                    next.push(e.to);
                    stack.push((e.to, next, total));
                }
            }
        }
    }
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        let mut todo = vec![i];
        row[i] = true;
        while let Some(u) = todo.pop() {
            for e in g.outgoing(u) {
                if !row[e.to] {
                    row[e.to] = true;
                    todo.push(e.to);
                }
            }
        }
    }
    let mut out = DistanceMatrix::unconstrained(n);
    for i in 0..n {
        let mut best = vec![Bound::PosInf; n];
        best[i] = Bound::ZERO;
        let mut stack = vec![(i, vec![i], Rational::ZERO)];
        while let Some((u, path, w)) = stack.pop() {
            for e in g.outgoing(u) {
                if path.contains(&e.to) {
                    continue;
                }
                let total = &w + &e.weight;
                best[e.to] = best[e.to].clone().min(Bound::Finite(total.clone()));
                let mut next = path.clone();
                next.push(e.to);
                stack.push((e.to, next, total));
            }
        }
        for j in 0..n {
            let unbounded = (0..n).any(|v| on_negative_cycle[v] && reach[i][v] && reach[v][j]);
            out.set(i, j, if unbounded { Bound::NegInf } else { best[j].clone() });
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dense_and_sparse_agree(g in graphs(8, -6, 12)) {
        let dense = floyd_warshall(&g);
        prop_assert_eq!(&sparse_apsp(&g), &dense);
        prop_assert_eq!(&Engine::Auto.all_pairs(&g), &dense);
    }

    #[test]
    fn matches_path_enumeration(g in graphs(6, -4, 8)) {
        prop_assert_eq!(floyd_warshall(&g), enumerated_distances(&g));
    }

    #[test]
    fn bellman_ford_rows_match(g in graphs(7, -4, 10)) {
        let m = floyd_warshall(&g);
        for s in 0..g.vertex_count() {
            match bellman_ford(&g, s, DetectionMode::Reachable) {
                Ok(row) => prop_assert_eq!(row.as_slice(), m.row(s)),
                Err(w) => {
                    prop_assert!(w.validate(&g));
                    prop_assert!(m.row(s).contains(&Bound::NegInf));
                }
            }
        }
    }

    #[test]
    fn cycle_detection_is_exact(g in graphs(7, -3, 10)) {
        let m = floyd_warshall(&g);
        let negative_diagonal = (0..g.vertex_count()).any(|v| *m.get(v, v) < Bound::ZERO);
        match find_negative_cycle(&g) {
            Some(w) => {
                prop_assert!(negative_diagonal);
                prop_assert!(w.validate(&g));
                prop_assert_eq!(w.cycle[0], *w.cycle.iter().min().unwrap());
            }
            None => prop_assert!(!negative_diagonal),
        }
        let global = bellman_ford(&g, 0, DetectionMode::Global);
        prop_assert_eq!(global.is_err(), negative_diagonal);
    }

    #[test]
    fn closure_properties(g in graphs(7, -2, 10)) {
        let m = floyd_warshall(&g);
        let n = g.vertex_count();
        for i in 0..n {
            for j in 0..n {
                // Never above a direct edge, and triangle inequality.
                if let Some(w) = g.weight(i, j) {
                    prop_assert!(*m.get(i, j) <= Bound::Finite(w.clone()));
                }
                for k in 0..n {
                    if let Ok(via) = m.get(i, k).add(m.get(k, j)) {
                        prop_assert!(*m.get(i, j) <= via);
                    }
                }
            }
        }
        // Idempotence: closing the closure changes nothing.
        if m.iter().all(|(_, _, b)| *b != Bound::NegInf) {
            let mut closed = ConstraintGraph::new(n);
            for (i, j, b) in m.iter() {
                if let (true, Some(w)) = (i != j, b.as_finite()) {
                    closed.add_edge(i, j, w.clone());
                }
            }
            prop_assert_eq!(floyd_warshall(&closed), m);
        }
    }

    #[test]
    fn tightening_an_edge_never_raises_distances(g in graphs(6, -2, 10), k in any::<prop::sample::Index>(), d in 1i64..5) {
        if g.edge_count() == 0 {
            return Ok(());
        }
        let e = &g.edges()[k.index(g.edge_count())];
        let mut tighter = g.clone();
        tighter.add_edge(e.from, e.to, &e.weight - &Rational::from_i64(d));
        let (a, b) = (floyd_warshall(&g), floyd_warshall(&tighter));
        for ((_, _, x), (_, _, y)) in a.iter().zip(b.iter()) {
            prop_assert!(y <= x);
        }
    }
}

#[test]
fn s1_paths_by_hand() {
    // a->b 5, b->a -3, b->c 2, c->a 0
    let w = |v: i64| Rational::from_i64(v);
    let g = ConstraintGraph::from_edges(3, [(0, 1, w(5)), (1, 0, w(-3)), (1, 2, w(2)), (2, 0, w(0))]);
    assert_eq!(floyd_warshall(&g), enumerated_distances(&g));
    assert_eq!(floyd_warshall(&g).get(2, 1), &Bound::from(5));
}
