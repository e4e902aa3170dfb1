//! Small named graphs used throughout the test suite and documentation.
//!
//! The corpus deliberately mixes sinks, isolated vertices, parallel loops,
//! exit-free cycles, cycles with exits, ω-bundles, and chains, so the
//! property tests exercise every regime of the ideal machinery.

use crate::graph::{Graph, Mult};

fn build(vertices: Vec<&str>, bundles: Vec<(&str, &str, &str, Mult)>) -> Graph {
    Graph::new(vertices, bundles).expect("fixture graph is valid")
}

/// One vertex with one loop; its algebra is the Laurent polynomial ring.
pub fn g1() -> Graph {
    build(vec!["v"], vec![("e", "v", "v", Mult::Finite(1))])
}

/// Two isolated vertices; its algebra is K ⊕ K.
pub fn g2() -> Graph {
    build(vec!["a", "b"], vec![])
}

/// Double loops at u and w, both pointing at a common sink v.
pub fn g3() -> Graph {
    build(
        vec!["u", "v", "w"],
        vec![
            ("eu1", "u", "u", Mult::Finite(1)),
            ("eu2", "u", "u", Mult::Finite(1)),
            ("u_v", "u", "v", Mult::Finite(1)),
            ("ew1", "w", "w", Mult::Finite(1)),
            ("ew2", "w", "w", Mult::Finite(1)),
            ("w_v", "w", "v", Mult::Finite(1)),
        ],
    )
}

/// Loop at a, edge a→b, loop at b: fails Condition (K) twice over.
pub fn g4() -> Graph {
    build(
        vec!["a", "b"],
        vec![
            ("ea", "a", "a", Mult::Finite(1)),
            ("ab", "a", "b", Mult::Finite(1)),
            ("eb", "b", "b", Mult::Finite(1)),
        ],
    )
}

/// Four isolated vertices; its algebra is K^4.
pub fn g5() -> Graph {
    build(vec!["u", "v", "w", "x"], vec![])
}

/// Truncated column graph: a chain v1→v2→…→vm with a feeder w_i→v_i and a
/// loop c_i at each w_i. Each loop c_i is exit-free in the quotient by
/// H = {v1,…,vm}.
pub fn g6(m: usize) -> Graph {
    assert!(m >= 1);
    let vs: Vec<String> = (1..=m)
        .map(|i| format!("v{i}"))
        .chain((1..=m).map(|i| format!("w{i}")))
        .collect();
    let mut bundles: Vec<(String, String, String, Mult)> = vec![];
    for i in 1..m {
        bundles.push((
            format!("a{i}"),
            format!("v{i}"),
            format!("v{}", i + 1),
            Mult::Finite(1),
        ));
    }
    for i in 1..=m {
        bundles.push((
            format!("b{i}"),
            format!("w{i}"),
            format!("v{i}"),
            Mult::Finite(1),
        ));
        bundles.push((
            format!("c{i}"),
            format!("w{i}"),
            format!("w{i}"),
            Mult::Finite(1),
        ));
    }
    Graph::new(vs, bundles).expect("column graph is valid")
}

/// An infinite emitter: ω-bundle u→v, a single edge u→w, and w a sink.
pub fn g7() -> Graph {
    build(
        vec!["u", "v", "w"],
        vec![
            ("e", "u", "v", Mult::Omega),
            ("f", "u", "w", Mult::Finite(1)),
        ],
    )
}

/// A single vertex and no edges.
pub fn point() -> Graph {
    build(vec!["p"], vec![])
}

/// A 2-cycle a⇄b with an extra loop at b: satisfies Condition (K).
pub fn two_cycle_with_loop() -> Graph {
    build(
        vec!["a", "b"],
        vec![
            ("e", "a", "b", Mult::Finite(1)),
            ("f", "b", "a", Mult::Finite(1)),
            ("g", "b", "b", Mult::Finite(1)),
        ],
    )
}

/// A double loop on one vertex: two parallel edges, Condition (K) holds.
pub fn double_loop() -> Graph {
    build(vec!["v"], vec![("e", "v", "v", Mult::Finite(2))])
}

/// Acyclic chain a→b→c ending in a sink.
pub fn chain3() -> Graph {
    build(
        vec!["a", "b", "c"],
        vec![
            ("ab", "a", "b", Mult::Finite(1)),
            ("bc", "b", "c", Mult::Finite(1)),
        ],
    )
}

/// Acyclic branching: r→s, r→t with sinks s and t, and a double edge r→s.
pub fn branch() -> Graph {
    build(
        vec!["r", "s", "t"],
        vec![
            ("rs", "r", "s", Mult::Finite(2)),
            ("rt", "r", "t", Mult::Finite(1)),
        ],
    )
}

/// An exit-free 3-cycle p→q→r→p.
pub fn triangle() -> Graph {
    build(
        vec!["p", "q", "r"],
        vec![
            ("pq", "p", "q", Mult::Finite(1)),
            ("qr", "q", "r", Mult::Finite(1)),
            ("rp", "r", "p", Mult::Finite(1)),
        ],
    )
}

/// The graphs exercised by the cross-cutting property tests.
pub fn corpus() -> Vec<Graph> {
    vec![
        g1(),
        g2(),
        g3(),
        g4(),
        g5(),
        g6(1),
        g6(2),
        g6(3),
        g7(),
        point(),
        two_cycle_with_loop(),
        double_loop(),
        chain3(),
        branch(),
        triangle(),
    ]
}

/// The acyclic, ω-free members of the corpus (eligible for the
/// matrix-model oracle).
pub fn acyclic_corpus() -> Vec<Graph> {
    vec![g2(), g5(), point(), chain3(), branch()]
}
