//! Canonical normal form for two-sided ideals and the ideal arithmetic.
//!
//! Every ideal is presented as `I = I(H,S) + Σ ⟨f_i(c_i)⟩` where `(H,S)` is
//! an admissible pair, each `c_i` is a cycle without exits in the quotient
//! graph `E\(H,S)`, and each `f_i` is monic with a nonzero constant term
//! and degree ≥ 1. The presentation is unique, so structural equality of
//! normal forms is equality of ideals. The whole algebra is kept as a
//! distinguished top value so "proper ideal" preconditions stay checkable.
//!
//! The arithmetic rests on three rewrite rules: a graded ideal times any
//! ideal equals their intersection; `⟨f(c)⟩⟨g(c)⟩ = ⟨(fg)(c)⟩` on a shared
//! exit-free cycle; and `⟨f(c)⟩⟨g(d)⟩ = 0` for distinct surviving cycles.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::field::FieldSpec;
use crate::graph::{AdmissiblePair, Cycle, Graph, VSet};
use crate::poly::Poly;
use crate::{Error, Result};

/// Map from exit-free cycles to their canonical polynomials.
pub type CycleMap = BTreeMap<Cycle, Poly>;

/// A two-sided ideal in normal form, or the whole algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealNF {
    graph: Arc<Graph>,
    field: FieldSpec,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Repr {
    /// The improper ideal (the whole algebra).
    Whole,
    /// `I(H,S) + Σ ⟨f_i(c_i)⟩`.
    Proper { pair: AdmissiblePair, cyc: CycleMap },
}

impl IdealNF {
    // -- constructors ------------------------------------------------------

    /// The zero ideal.
    pub fn zero(graph: Arc<Graph>, field: FieldSpec) -> IdealNF {
        IdealNF {
            graph,
            field,
            repr: Repr::Proper {
                pair: AdmissiblePair::empty(),
                cyc: CycleMap::new(),
            },
        }
    }

    /// The whole algebra (improper).
    pub fn whole(graph: Arc<Graph>, field: FieldSpec) -> IdealNF {
        IdealNF {
            graph,
            field,
            repr: Repr::Whole,
        }
    }

    /// The graded ideal I(H,S).
    pub fn graded(graph: Arc<Graph>, field: FieldSpec, pair: AdmissiblePair) -> Result<IdealNF> {
        IdealNF::make(graph, field, pair, vec![])
    }

    /// The graded ideal generated by a vertex set: I(closure(X), ∅).
    pub fn generated_by_vertices(
        graph: Arc<Graph>,
        field: FieldSpec,
        x: &VSet,
    ) -> Result<IdealNF> {
        let h = graph.hereditary_saturated_closure(x);
        IdealNF::make(graph, field, AdmissiblePair::new(h, VSet::new()), vec![])
    }

    /// Build an ideal from an admissible pair and cycle/polynomial parts.
    ///
    /// Validates the presentation as given — the pair must be admissible,
    /// each cycle disjoint from H and exit-free in the quotient graph, each
    /// polynomial nonzero — then normalizes: polynomials that reduce to
    /// units absorb their cycle's vertices into H, duplicate cycles combine
    /// by gcd, and H/S are re-closed to a fixed point.
    pub fn make(
        graph: Arc<Graph>,
        field: FieldSpec,
        pair: AdmissiblePair,
        parts: Vec<(Cycle, Poly)>,
    ) -> Result<IdealNF> {
        graph.check_admissible(&pair)?;
        // computed lazily: with H = E^0 the quotient would be empty, but
        // then every cycle meets H and errors out first
        let mut quotient = None;
        let mut canon_parts = vec![];
        for (c, f) in parts {
            if f.field() != field {
                return Err(Error::FieldMismatch);
            }
            let c_verts = c.vertex_set(&graph)?;
            if c_verts.iter().any(|v| pair.h.contains(v)) {
                return Err(Error::CycleMeetsH);
            }
            if quotient.is_none() {
                quotient = Some(graph.quotient_graph(&pair)?);
            }
            if !quotient.as_ref().unwrap().cycle_has_no_exit(&c)? {
                return Err(Error::CycleHasExit);
            }
            canon_parts.push((c, f.normalize()?));
        }
        normalize(graph, field, pair.h, pair.s, canon_parts)
    }

    // -- accessors ---------------------------------------------------------

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_whole(&self) -> bool {
        matches!(self.repr, Repr::Whole)
    }

    pub fn is_proper(&self) -> bool {
        !self.is_whole()
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.repr, Repr::Proper { pair, cyc }
            if pair.h.is_empty() && pair.s.is_empty() && cyc.is_empty())
    }

    /// Graded ideals are exactly those with no cycle parts (the whole
    /// algebra is graded too).
    pub fn is_graded(&self) -> bool {
        match &self.repr {
            Repr::Whole => true,
            Repr::Proper { cyc, .. } => cyc.is_empty(),
        }
    }

    /// The admissible pair of a proper ideal.
    ///
    /// Panics on the whole algebra; check [`IdealNF::is_proper`] first.
    pub fn pair(&self) -> &AdmissiblePair {
        match &self.repr {
            Repr::Proper { pair, .. } => pair,
            Repr::Whole => panic!("the whole algebra has no admissible pair"),
        }
    }

    /// The cycle → polynomial map of a proper ideal.
    ///
    /// Panics on the whole algebra; check [`IdealNF::is_proper`] first.
    pub fn cyc(&self) -> &CycleMap {
        match &self.repr {
            Repr::Proper { cyc, .. } => cyc,
            Repr::Whole => panic!("the whole algebra has no cycle map"),
        }
    }

    /// The graded part gr(I) = I(H,S).
    pub fn gr(&self) -> IdealNF {
        match &self.repr {
            Repr::Whole => self.clone(),
            Repr::Proper { pair, .. } => IdealNF {
                graph: self.graph.clone(),
                field: self.field,
                repr: Repr::Proper {
                    pair: pair.clone(),
                    cyc: CycleMap::new(),
                },
            },
        }
    }

    /// Cyc(I): the cycles carrying non-graded data.
    pub fn cyc_set(&self) -> Vec<Cycle> {
        match &self.repr {
            Repr::Whole => vec![],
            Repr::Proper { cyc, .. } => cyc.keys().cloned().collect(),
        }
    }

    fn check_compatible(&self, other: &IdealNF) -> Result<()> {
        if *self.graph != *other.graph {
            return Err(Error::GraphMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    // -- order and arithmetic ----------------------------------------------

    /// J ⊆ I, via the admissible-pair order on graded parts and
    /// divisibility on shared cycles.
    pub fn contains(&self, other: &IdealNF) -> Result<bool> {
        self.check_compatible(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Whole, _) => Ok(true),
            (_, Repr::Whole) => Ok(false),
            (
                Repr::Proper { pair: pi, cyc: ci },
                Repr::Proper { pair: pj, cyc: cj },
            ) => {
                if !pj.le(pi) {
                    return Ok(false);
                }
                for (d, g) in cj {
                    let dv = d.vertex_set(&self.graph)?;
                    if dv.is_subset(&pi.h) {
                        continue; // ⟨g(d)⟩ ⊆ I(H_I, S_I)
                    }
                    match ci.get(d) {
                        Some(f) if f.divides(g) => {}
                        _ => return Ok(false),
                    }
                }
                Ok(true)
            }
        }
    }

    /// Ideal sum: graded parts join, shared cycles combine by gcd.
    pub fn sum(&self, other: &IdealNF) -> Result<IdealNF> {
        self.check_compatible(other)?;
        let (pi, ci, pj, cj) = match (&self.repr, &other.repr) {
            (Repr::Whole, _) | (_, Repr::Whole) => {
                return Ok(IdealNF::whole(self.graph.clone(), self.field))
            }
            (Repr::Proper { pair: pi, cyc: ci }, Repr::Proper { pair: pj, cyc: cj }) => {
                (pi, ci, pj, cj)
            }
        };
        let h: VSet = pi.h.union(&pj.h).copied().collect();
        let s: VSet = pi.s.union(&pj.s).copied().collect();
        let mut parts: Vec<(Cycle, Poly)> = vec![];
        for (c, f) in ci {
            match cj.get(c) {
                Some(g) => parts.push((c.clone(), f.gcd(g))),
                None => parts.push((c.clone(), f.clone())),
            }
        }
        for (d, g) in cj {
            if !ci.contains_key(d) {
                parts.push((d.clone(), g.clone()));
            }
        }
        normalize(self.graph.clone(), self.field, h, s, parts)
    }

    /// Ideal product, by bilinear expansion of the normal forms. The
    /// graded × anything terms are intersections; a shared cycle multiplies
    /// its polynomials; distinct surviving cycles annihilate.
    pub fn product(&self, other: &IdealNF) -> Result<IdealNF> {
        self.check_compatible(other)?;
        let (pi, ci, pj, cj) = match (&self.repr, &other.repr) {
            (Repr::Whole, _) => return Ok(other.clone()),
            (_, Repr::Whole) => return Ok(self.clone()),
            (Repr::Proper { pair: pi, cyc: ci }, Repr::Proper { pair: pj, cyc: cj }) => {
                (pi, ci, pj, cj)
            }
        };
        let pair = graded_intersect_pair(&self.graph, pi, pj)?;
        let mut parts: Vec<(Cycle, Poly)> = vec![];
        for (c, f) in ci {
            match cj.get(c) {
                // shared exit-free cycle: ⟨f(c)⟩⟨g(c)⟩ = ⟨(fg)(c)⟩
                Some(g) => parts.push((c.clone(), f.mul(g))),
                None => {
                    // ⟨f(c)⟩ ⊆ I(H_J,S_J) when c lies inside H_J, and a
                    // graded ideal times any ideal is their intersection
                    if c.vertex_set(&self.graph)?.is_subset(&pj.h) {
                        parts.push((c.clone(), f.clone()));
                    }
                    // otherwise both cycles survive a common quotient and
                    // the cross term is zero
                }
            }
        }
        for (d, g) in cj {
            if !ci.contains_key(d) && d.vertex_set(&self.graph)?.is_subset(&pi.h) {
                parts.push((d.clone(), g.clone()));
            }
        }
        normalize(self.graph.clone(), self.field, pair.h, pair.s, parts)
    }

    /// Ideal intersection: graded parts meet, a shared cycle takes the lcm,
    /// distinct surviving cycles contribute nothing.
    pub fn intersect(&self, other: &IdealNF) -> Result<IdealNF> {
        self.check_compatible(other)?;
        let (pi, ci, pj, cj) = match (&self.repr, &other.repr) {
            (Repr::Whole, _) => return Ok(other.clone()),
            (_, Repr::Whole) => return Ok(self.clone()),
            (Repr::Proper { pair: pi, cyc: ci }, Repr::Proper { pair: pj, cyc: cj }) => {
                (pi, ci, pj, cj)
            }
        };
        let pair = graded_intersect_pair(&self.graph, pi, pj)?;
        let mut parts: Vec<(Cycle, Poly)> = vec![];
        for (c, f) in ci {
            match cj.get(c) {
                Some(g) => parts.push((c.clone(), f.lcm(g))),
                None => {
                    if c.vertex_set(&self.graph)?.is_subset(&pj.h) {
                        parts.push((c.clone(), f.clone()));
                    }
                }
            }
        }
        for (d, g) in cj {
            if !ci.contains_key(d) && d.vertex_set(&self.graph)?.is_subset(&pi.h) {
                parts.push((d.clone(), g.clone()));
            }
        }
        normalize(self.graph.clone(), self.field, pair.h, pair.s, parts)
    }

    /// rad(I): same graded part and cycles, square-free polynomials.
    pub fn radical(&self) -> Result<IdealNF> {
        let (pair, cyc) = match &self.repr {
            Repr::Whole => return Err(Error::ImproperIdeal),
            Repr::Proper { pair, cyc } => (pair, cyc),
        };
        let parts = cyc
            .iter()
            .map(|(c, f)| Ok((c.clone(), f.squarefree_part()?)))
            .collect::<Result<Vec<_>>>()?;
        normalize(
            self.graph.clone(),
            self.field,
            pair.h.clone(),
            pair.s.clone(),
            parts,
        )
    }
}

impl fmt::Display for IdealNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Whole => write!(f, "L (whole algebra)"),
            Repr::Proper { pair, cyc } => {
                let h = self.graph.names_of(&pair.h);
                let s = self.graph.names_of(&pair.s);
                write!(f, "I(H={{{}}}, S={{{}}})", h.join(","), s.join(","))?;
                for (c, p) in cyc {
                    write!(f, " + <({})({})>", p, c)?;
                }
                Ok(())
            }
        }
    }
}

/// The admissible pair of I(H_I,S_I) ∩ I(H_J,S_J): H is the meet, and S
/// keeps the breaking vertices of H whose generator v^H lies in both
/// ideals. Membership uses: v^H ∈ I(H′,S′) iff v ∈ H′ or v ∈ S′.
fn graded_intersect_pair(
    graph: &Graph,
    pi: &AdmissiblePair,
    pj: &AdmissiblePair,
) -> Result<AdmissiblePair> {
    let h: VSet = pi.h.intersection(&pj.h).copied().collect();
    let mem = |v: usize, p: &AdmissiblePair| p.h.contains(&v) || p.s.contains(&v);
    let s: VSet = graph
        .breaking_vertices(&h)?
        .into_iter()
        .filter(|&v| mem(v, pi) && mem(v, pj))
        .collect();
    Ok(AdmissiblePair::new(h, s))
}

/// Bring (H, S, parts) to normal form. Runs to a fixed point: unit
/// polynomials absorb their cycle's vertices into H, cycles meeting H are
/// dropped, duplicate cycles combine by gcd, and S is revalidated against
/// the new breaking vertices (a former breaking vertex that no longer
/// emits outside H is itself absorbed). Terminates because H only grows.
fn normalize(
    graph: Arc<Graph>,
    field: FieldSpec,
    h: VSet,
    s: VSet,
    parts: Vec<(Cycle, Poly)>,
) -> Result<IdealNF> {
    let mut h = graph.hereditary_saturated_closure(&h);
    let mut s = s;
    // combine duplicate cycles by gcd
    let mut cyc: CycleMap = CycleMap::new();
    for (c, f) in parts {
        let f = f.normalize()?;
        match cyc.remove(&c) {
            Some(g) => {
                cyc.insert(c, g.gcd(&f).normalize()?);
            }
            None => {
                cyc.insert(c, f);
            }
        }
    }
    loop {
        let mut grew = false;

        // unit polynomials absorb their cycle's vertices into H
        for (c, f) in cyc.clone() {
            if f.degree() == Some(0) {
                h.extend(c.vertex_set(&graph)?);
                cyc.remove(&c);
                grew = true;
            }
        }
        let closed = graph.hereditary_saturated_closure(&h);
        if closed != h {
            h = closed;
            grew = true;
        }

        // cycles meeting H are already inside the graded part
        cyc.retain(|c, _| {
            !c.vertex_set(&graph)
                .expect("cycle vertices are known")
                .iter()
                .any(|v| h.contains(v))
        });

        // S revalidation against the breaking vertices of the new H
        let b = graph.breaking_vertices(&h)?;
        for v in s.clone() {
            if h.contains(&v) {
                s.remove(&v);
            } else if !b.contains(&v) {
                // v was breaking for a smaller H and now emits nothing
                // outside H, so v itself belongs to the ideal
                s.remove(&v);
                h.insert(v);
                grew = true;
            }
        }

        if !grew {
            break;
        }
    }

    if h.len() == graph.n() {
        return Ok(IdealNF::whole(graph, field));
    }
    let pair = AdmissiblePair::new(h, s);
    // surviving cycles must be exit-free in the quotient
    let quotient = graph.quotient_graph(&pair)?;
    for c in cyc.keys() {
        if !quotient.cycle_has_no_exit(c)? {
            return Err(Error::CycleHasExit);
        }
    }
    Ok(IdealNF {
        graph,
        field,
        repr: Repr::Proper { pair, cyc },
    })
}
