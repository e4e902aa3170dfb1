//! Independent brute-force models used to validate the symbolic rules.
//!
//! Two regimes admit a tractable second opinion:
//!
//! * acyclic graphs without ω-bundles — the algebra is a finite direct sum
//!   of matrix algebras, one block per sink, and two-sided ideals are just
//!   subsets of blocks;
//! * a graph that is a single exit-free cycle — the algebra is a matrix
//!   ring over Laurent polynomials, and ideals are principal ideals of
//!   `K[x, x⁻¹]`.
//!
//! [`cross_check`] generates seeded random ideals on an eligible graph and
//! compares every symbolic operation against the model.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::field::FieldSpec;
use crate::graph::{AdmissiblePair, Cycle, Graph, VSet};
use crate::ideal::IdealNF;
use crate::poly::Poly;
use crate::{Error, Result};

/// The direct-sum-of-matrix-algebras model of an acyclic graph: one simple
/// block per sink, sized by the number of paths ending there.
pub struct AcyclicModel {
    graph: Arc<Graph>,
    sinks: Vec<usize>,
}

impl AcyclicModel {
    /// Eligibility: finite, acyclic, no ω-bundles, at most 6 vertices.
    pub fn new(graph: Arc<Graph>) -> Result<AcyclicModel> {
        if graph.n() > 6 {
            return Err(Error::Ineligible("more than 6 vertices".into()));
        }
        if graph.bundles().iter().any(|b| b.mult.is_omega()) {
            return Err(Error::Ineligible("graph has an ω-bundle".into()));
        }
        if !graph.simple_cycles(1).map(|c| c.is_empty()).unwrap_or(false) {
            return Err(Error::Ineligible("graph has a cycle".into()));
        }
        let sinks = (0..graph.n()).filter(|&v| graph.is_sink(v)).collect();
        Ok(AcyclicModel { graph, sinks })
    }

    pub fn sinks(&self) -> &[usize] {
        &self.sinks
    }

    /// `(sink name, block size)` pairs: the algebra is ⊕ M_{size}(K).
    pub fn matrix_description(&self) -> Vec<(String, u64)> {
        self.sinks
            .iter()
            .map(|&s| {
                (
                    self.graph.vertex_name(s).to_string(),
                    self.paths_ending_at(s),
                )
            })
            .collect()
    }

    /// Number of paths (including the trivial one) ending at `s`.
    fn paths_ending_at(&self, s: usize) -> u64 {
        // count paths v ⇝ s by memoized recursion; the graph is acyclic
        fn count(g: &Graph, v: usize, s: usize, memo: &mut Vec<Option<u64>>) -> u64 {
            if let Some(c) = memo[v] {
                return c;
            }
            let mut total = u64::from(v == s);
            for b in g.out_bundles(v) {
                let m = match b.mult {
                    crate::graph::Mult::Finite(m) => m,
                    crate::graph::Mult::Omega => unreachable!("eligibility"),
                };
                total += m * count(g, b.dst, s, memo);
            }
            memo[v] = Some(total);
            total
        }
        let mut memo = vec![None; self.graph.n()];
        (0..self.graph.n())
            .map(|v| count(&self.graph, v, s, &mut memo))
            .sum()
    }

    /// The block set of an ideal: which simple summands it contains.
    pub fn blocks_of(&self, i: &IdealNF) -> Result<BTreeSet<usize>> {
        if *i.graph().as_ref() != *self.graph.as_ref() {
            return Err(Error::GraphMismatch);
        }
        if i.is_whole() {
            return Ok(self.sinks.iter().copied().collect());
        }
        if !i.is_graded() {
            return Err(Error::Ineligible("acyclic ideals are graded".into()));
        }
        Ok(self
            .sinks
            .iter()
            .copied()
            .filter(|s| i.pair().h.contains(s))
            .collect())
    }

    /// The ideal with exactly the given blocks: H = every vertex all of
    /// whose reachable sinks lie in the block set.
    pub fn ideal_of_blocks(&self, blocks: &BTreeSet<usize>, field: FieldSpec) -> Result<IdealNF> {
        let h: VSet = (0..self.graph.n())
            .filter(|&v| {
                self.graph
                    .reachable_from(v)
                    .iter()
                    .filter(|w| self.graph.is_sink(**w))
                    .all(|w| blocks.contains(w))
            })
            .collect();
        if h.len() == self.graph.n() {
            return Ok(IdealNF::whole(self.graph.clone(), field));
        }
        IdealNF::graded(self.graph.clone(), field, AdmissiblePair::new(h, VSet::new()))
    }

    /// Every two-sided ideal, via the block-set bijection, sorted.
    pub fn all_ideals(&self, field: FieldSpec) -> Result<Vec<IdealNF>> {
        let mut out = vec![];
        for mask in 0u32..(1 << self.sinks.len()) {
            let blocks: BTreeSet<usize> = self
                .sinks
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &s)| s)
                .collect();
            out.push(self.ideal_of_blocks(&blocks, field)?);
        }
        Ok(out)
    }
}

/// Ideal-level operations in the Laurent model, where an ideal of the
/// cycle algebra is the principal ideal of a canonical polynomial (zero
/// for the zero ideal, one for the whole algebra).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LaurentOp {
    Product,
    Intersect,
    Sum,
}

/// product ↔ multiply, intersect ↔ lcm, sum ↔ gcd; results canonical.
pub fn laurent_model(op: LaurentOp, f: &Poly, g: &Poly) -> Poly {
    let raw = match op {
        LaurentOp::Product => f.mul(g),
        LaurentOp::Intersect => f.lcm(g),
        LaurentOp::Sum => f.gcd(g),
    };
    if raw.is_zero() {
        raw
    } else {
        raw.normalize().expect("nonzero")
    }
}

/// contains ↔ divisibility: ⟨g⟩ ⊆ ⟨f⟩ iff f | g.
pub fn laurent_contains(f: &Poly, g: &Poly) -> bool {
    f.divides(g)
}

/// The exit-free cycle covering all vertices, if the graph is of that
/// shape — the eligibility condition for the Laurent model.
pub fn laurent_cycle(graph: &Graph) -> Result<Cycle> {
    for c in graph.cycles_without_exits() {
        if c.len() == graph.n() {
            return Ok(c);
        }
    }
    Err(Error::Ineligible(
        "graph is not a single exit-free cycle".into(),
    ))
}

/// Outcome of a randomized symbolic-vs-oracle comparison; `mismatches` is
/// expected to be empty.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub model: String,
    pub trials: usize,
    pub mismatches: Vec<String>,
}

impl CrossCheckReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Run `trials` random ideal pairs through every binary operation, on
/// whichever model the graph is eligible for.
pub fn cross_check(
    graph: &Arc<Graph>,
    field: FieldSpec,
    trials: usize,
    seed: u64,
) -> Result<CrossCheckReport> {
    if let Ok(model) = AcyclicModel::new(graph.clone()) {
        return cross_check_acyclic(&model, field, trials, seed);
    }
    let cycle = laurent_cycle(graph)?;
    cross_check_laurent(graph, &cycle, field, trials, seed)
}

fn cross_check_acyclic(
    model: &AcyclicModel,
    field: FieldSpec,
    trials: usize,
    seed: u64,
) -> Result<CrossCheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = vec![];
    let random_blocks = |rng: &mut ChaCha8Rng| -> BTreeSet<usize> {
        model
            .sinks()
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.5))
            .collect()
    };
    for t in 0..trials {
        let ba = random_blocks(&mut rng);
        let bb = random_blocks(&mut rng);
        let ia = model.ideal_of_blocks(&ba, field)?;
        let ib = model.ideal_of_blocks(&bb, field)?;
        let mut check = |name: &str, symbolic: IdealNF, expect: &BTreeSet<usize>| -> Result<()> {
            let got = model.blocks_of(&symbolic)?;
            if got != *expect {
                mismatches.push(format!(
                    "trial {t}: {name}({ba:?}, {bb:?}) = {got:?}, model says {expect:?}"
                ));
            }
            Ok(())
        };
        let inter: BTreeSet<usize> = ba.intersection(&bb).copied().collect();
        check("product", ia.product(&ib)?, &inter)?;
        check("intersect", ia.intersect(&ib)?, &inter)?;
        check("sum", ia.sum(&ib)?, &ba.union(&bb).copied().collect())?;
        if ia.contains(&ib)? != bb.is_subset(&ba) {
            mismatches.push(format!("trial {t}: contains({ba:?}, {bb:?}) disagrees"));
        }
    }
    Ok(CrossCheckReport {
        model: "acyclic-matrix".into(),
        trials,
        mismatches,
    })
}

fn random_poly(field: FieldSpec, max_deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    loop {
        let deg = rng.gen_range(1..=max_deg);
        let coeffs: Vec<_> = (0..=deg).map(|_| field.from_i64(rng.gen_range(-4..=4))).collect();
        let p = Poly::from_coeffs(field, coeffs);
        // need degree ≥ 1 after trimming and a nonzero canonical form
        if p.degree().unwrap_or(0) >= 1 {
            if let Ok(c) = p.normalize() {
                if c.degree().unwrap_or(0) >= 1 {
                    return c;
                }
            }
        }
    }
}

fn cross_check_laurent(
    graph: &Arc<Graph>,
    cycle: &Cycle,
    field: FieldSpec,
    trials: usize,
    seed: u64,
) -> Result<CrossCheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = vec![];
    let max_deg = if field == FieldSpec::Q { 6 } else { 8 };
    let mk = |f: &Poly| -> Result<IdealNF> {
        IdealNF::make(
            graph.clone(),
            field,
            AdmissiblePair::empty(),
            vec![(cycle.clone(), f.clone())],
        )
    };
    // the canonical polynomial of a symbolic ideal in this model
    let poly_of = |i: &IdealNF| -> Poly {
        if i.is_whole() {
            Poly::one(field)
        } else if i.is_zero() {
            Poly::zero(field)
        } else {
            i.cyc().values().next().expect("single cycle part").clone()
        }
    };
    for t in 0..trials {
        let f = random_poly(field, max_deg, &mut rng);
        let g = random_poly(field, max_deg, &mut rng);
        let (fi, gi) = (mk(&f)?, mk(&g)?);
        for (name, op) in [
            ("product", LaurentOp::Product),
            ("intersect", LaurentOp::Intersect),
            ("sum", LaurentOp::Sum),
        ] {
            let symbolic = match op {
                LaurentOp::Product => fi.product(&gi)?,
                LaurentOp::Intersect => fi.intersect(&gi)?,
                LaurentOp::Sum => fi.sum(&gi)?,
            };
            let expect = laurent_model(op, &f, &g);
            if poly_of(&symbolic) != expect {
                mismatches.push(format!(
                    "trial {t}: {name}({f}, {g}) = {}, model says {expect}",
                    poly_of(&symbolic)
                ));
            }
        }
        if fi.contains(&gi)? != laurent_contains(&f, &g) {
            mismatches.push(format!("trial {t}: contains({f}, {g}) disagrees"));
        }
    }
    Ok(CrossCheckReport {
        model: "laurent-pid".into(),
        trials,
        mismatches,
    })
}
