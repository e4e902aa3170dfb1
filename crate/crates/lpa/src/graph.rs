//! Finite presentations of directed graphs and the graph invariants that
//! drive the ideal theory.
//!
//! Edges are grouped into *bundles*: a bundle is a set of parallel edges
//! from one vertex to another with a multiplicity in `{1, 2, ...} ∪ {ω}`.
//! An ω-bundle models an infinite emitter on a finite presentation, so that
//! breaking vertices and primed quotient vertices stay in scope. Individual
//! edges are addressed as `(bundle id, index)`; only finitely many indices
//! are ever materialized.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::{Error, Result};

/// A set of vertices, by internal index.
pub type VSet = BTreeSet<usize>;

/// Bundle multiplicity: a positive count or ω (infinitely many parallel
/// edges).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Mult {
    Finite(u64),
    Omega,
}

impl Mult {
    pub fn is_omega(&self) -> bool {
        matches!(self, Mult::Omega)
    }

    /// Number of representative parallel edges materialized for cycle
    /// enumeration: two are enough to witness "at least two".
    fn representatives(&self) -> u64 {
        match self {
            Mult::Finite(m) => (*m).min(2),
            Mult::Omega => 2,
        }
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Finite(m) => write!(f, "{m}"),
            Mult::Omega => write!(f, "ω"),
        }
    }
}

/// A bundle of parallel edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bundle {
    pub id: String,
    pub src: usize,
    pub dst: usize,
    pub mult: Mult,
}

/// An immutable finite graph. Vertices are stored sorted by name, so the
/// internal index order coincides with lexicographic name order; bundles
/// are sorted by id.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    verts: Vec<String>,
    bundles: Vec<Bundle>,
    out: Vec<Vec<usize>>, // vertex -> indices into `bundles`
}

impl Graph {
    /// Build a graph from vertex names and `(bundle id, src, dst, mult)`
    /// tuples. Names and bundle ids must be distinct; endpoints must be
    /// declared vertices; finite multiplicities must be positive.
    pub fn new<S: Into<String>>(
        vertices: Vec<S>,
        bundle_specs: Vec<(S, S, S, Mult)>,
    ) -> Result<Graph> {
        let mut verts: Vec<String> = vertices.into_iter().map(Into::into).collect();
        verts.sort();
        if verts.is_empty() {
            return Err(Error::Parse("graph must have at least one vertex".into()));
        }
        if verts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse("duplicate vertex id".into()));
        }
        let index: BTreeMap<&str, usize> = verts
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut bundles = vec![];
        for (id, src, dst, mult) in bundle_specs {
            let (id, src, dst) = (id.into(), src.into(), dst.into());
            if mult == Mult::Finite(0) {
                return Err(Error::Parse(format!("bundle `{id}` has multiplicity 0")));
            }
            let src = *index
                .get(src.as_str())
                .ok_or(Error::UnknownVertex(src.clone()))?;
            let dst = *index
                .get(dst.as_str())
                .ok_or(Error::UnknownVertex(dst.clone()))?;
            bundles.push(Bundle { id, src, dst, mult });
        }
        bundles.sort_by(|a, b| a.id.cmp(&b.id));
        if bundles.windows(2).any(|w| w[0].id == w[1].id) {
            return Err(Error::Parse("duplicate bundle id".into()));
        }
        let mut out = vec![vec![]; verts.len()];
        for (i, b) in bundles.iter().enumerate() {
            out[b.src].push(i);
        }
        Ok(Graph {
            verts,
            bundles,
            out,
        })
    }

    pub fn n(&self) -> usize {
        self.verts.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.verts[i]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.verts
            .binary_search_by(|v| v.as_str().cmp(name))
            .map_err(|_| Error::UnknownVertex(name.into()))
    }

    pub fn vertex_names(&self) -> impl Iterator<Item = &str> {
        self.verts.iter().map(String::as_str)
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub fn bundle_by_id(&self, id: &str) -> Result<&Bundle> {
        self.bundles
            .iter()
            .find(|b| b.id == id)
            .ok_or_else(|| Error::UnknownBundle(id.into()))
    }

    pub fn out_bundles(&self, v: usize) -> impl Iterator<Item = &Bundle> {
        self.out[v].iter().map(|&i| &self.bundles[i])
    }

    pub fn all_vertices(&self) -> VSet {
        (0..self.n()).collect()
    }

    pub fn vset_from_names<'a, I: IntoIterator<Item = &'a str>>(&self, names: I) -> Result<VSet> {
        names.into_iter().map(|s| self.vertex_index(s)).collect()
    }

    pub fn names_of(&self, set: &VSet) -> Vec<String> {
        set.iter().map(|&i| self.verts[i].clone()).collect()
    }

    // -- vertex classification ---------------------------------------------

    pub fn is_sink(&self, v: usize) -> bool {
        self.out[v].is_empty()
    }

    pub fn is_infinite_emitter(&self, v: usize) -> bool {
        self.out_bundles(v).any(|b| b.mult.is_omega())
    }

    pub fn is_regular(&self, v: usize) -> bool {
        !self.is_sink(v) && !self.is_infinite_emitter(v)
    }

    /// Total number of edges leaving `v` into the vertex set `targets`,
    /// `None` meaning infinite.
    pub fn out_multiplicity_into(&self, v: usize, targets: &VSet) -> Option<u64> {
        let mut total = 0u64;
        for b in self.out_bundles(v) {
            if targets.contains(&b.dst) {
                match b.mult {
                    Mult::Finite(m) => total += m,
                    Mult::Omega => return None,
                }
            }
        }
        Some(total)
    }

    // -- reachability ------------------------------------------------------

    /// True iff there is a path (possibly trivial) from `u` to `v`,
    /// written u ≥ v.
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.reachable_from(u).contains(&v)
    }

    /// All vertices reachable from `u`, including `u`.
    pub fn reachable_from(&self, u: usize) -> VSet {
        let mut seen: VSet = [u].into();
        let mut queue = VecDeque::from([u]);
        while let Some(w) = queue.pop_front() {
            for b in self.out_bundles(w) {
                if seen.insert(b.dst) {
                    queue.push_back(b.dst);
                }
            }
        }
        seen
    }

    /// M(v) = { w : w ≥ v }, the vertices from which `v` is reachable.
    pub fn m_set(&self, v: usize) -> VSet {
        (0..self.n()).filter(|&w| self.reaches(w, v)).collect()
    }

    /// ∀ u,v ∈ set ∃ w ∈ set with u ≥ w and v ≥ w.
    pub fn downward_directed(&self, set: &VSet) -> bool {
        set.iter().all(|&u| {
            set.iter().all(|&v| {
                set.iter()
                    .any(|&w| self.reaches(u, w) && self.reaches(v, w))
            })
        })
    }

    // -- hereditary saturated machinery ------------------------------------

    /// Least hereditary and saturated superset of `x`.
    pub fn hereditary_saturated_closure(&self, x: &VSet) -> VSet {
        let mut h = x.clone();
        loop {
            let mut grew = false;
            // hereditary: ranges of edges leaving H join H
            for v in h.clone() {
                for b in self.out_bundles(v) {
                    grew |= h.insert(b.dst);
                }
            }
            // saturated: regular vertices emitting only into H join H
            for v in 0..self.n() {
                if !h.contains(&v)
                    && self.is_regular(v)
                    && self.out_bundles(v).all(|b| h.contains(&b.dst))
                {
                    h.insert(v);
                    grew = true;
                }
            }
            if !grew {
                return h;
            }
        }
    }

    pub fn is_hereditary_saturated(&self, x: &VSet) -> bool {
        self.hereditary_saturated_closure(x) == *x
    }

    /// All hereditary saturated subsets, sorted. Walks the closure lattice
    /// from generators instead of enumerating all subsets.
    pub fn hereditary_saturated_sets(&self) -> Vec<VSet> {
        let bottom = self.hereditary_saturated_closure(&VSet::new());
        let mut found: BTreeSet<VSet> = [bottom].into();
        let mut frontier: Vec<VSet> = found.iter().cloned().collect();
        while let Some(h) = frontier.pop() {
            for v in 0..self.n() {
                if h.contains(&v) {
                    continue;
                }
                let mut gen = h.clone();
                gen.insert(v);
                let bigger = self.hereditary_saturated_closure(&gen);
                if found.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        found.into_iter().collect()
    }

    /// B_H: infinite emitters outside H with finitely many, and at least
    /// one, edges into the complement of H.
    pub fn breaking_vertices(&self, h: &VSet) -> Result<VSet> {
        if !self.is_hereditary_saturated(h) {
            return Err(Error::NotHereditarySaturated);
        }
        let complement: VSet = (0..self.n()).filter(|v| !h.contains(v)).collect();
        Ok(complement
            .iter()
            .copied()
            .filter(|&w| {
                self.is_infinite_emitter(w)
                    && matches!(self.out_multiplicity_into(w, &complement), Some(m) if m > 0)
            })
            .collect())
    }

    // -- maximal tails -----------------------------------------------------

    /// All maximal tails: nonempty M whose complement is hereditary
    /// saturated and which are downward directed.
    pub fn maximal_tails(&self) -> Vec<VSet> {
        self.hereditary_saturated_sets()
            .into_iter()
            .map(|h| (0..self.n()).filter(|v| !h.contains(v)).collect::<VSet>())
            .filter(|m| !m.is_empty() && self.downward_directed(m))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Searches for an irredundant cover of the vertex set by maximal
    /// tails, maximizing the number of tails. `None` if no cover exists or
    /// the maximum falls below `required_min`.
    pub fn irredundant_tail_cover(&self, required_min: usize) -> Option<TailCover> {
        let covers = self.irredundant_tail_covers();
        let n = covers.iter().map(|c| c.len()).max()?;
        if n < required_min {
            return None;
        }
        let maximal: Vec<&Vec<VSet>> = covers.iter().filter(|c| c.len() == n).collect();
        Some(TailCover {
            cover: maximal.iter().min().unwrap().to_vec(),
            n,
            sizes: covers.iter().map(|c| c.len()).collect(),
            max_count: maximal.len(),
        })
    }

    /// All irredundant covers of the vertex set by maximal tails, each
    /// sorted, by exhaustive subfamily search.
    pub fn irredundant_tail_covers(&self) -> Vec<Vec<VSet>> {
        let tails = self.maximal_tails();
        assert!(
            tails.len() <= 25,
            "tail-cover search is exhaustive and expects a small tail count"
        );
        let all = self.all_vertices();
        let mut out = vec![];
        for mask in 1u32..(1 << tails.len()) {
            let family: Vec<VSet> = (0..tails.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| tails[i].clone())
                .collect();
            let union: VSet = family.iter().flatten().copied().collect();
            if union != all {
                continue;
            }
            let irredundant = (0..family.len()).all(|i| {
                let others: VSet = family
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .flat_map(|(_, t)| t.iter().copied())
                    .collect();
                !family[i].is_subset(&others)
            });
            if irredundant {
                out.push(family);
            }
        }
        out
    }

    // -- cycles ------------------------------------------------------------

    /// All simple cycles, with parallel edges represented by at most two
    /// indices per bundle (enough to distinguish "exactly one" from "at
    /// least two" closed paths through a vertex). Sorted; errors if more
    /// than `cap` cycles exist.
    pub fn simple_cycles(&self, cap: usize) -> Result<Vec<Cycle>> {
        let mut out = vec![];
        // Each cycle is produced exactly once, rooted at its least vertex:
        // the DFS from `start` only passes through vertices > start.
        for start in 0..self.n() {
            let mut on_path = vec![false; self.n()];
            let mut path: Vec<(usize, u64)> = vec![]; // (bundle idx, edge idx)
            self.cycle_dfs(start, start, &mut on_path, &mut path, &mut out, cap)?;
        }
        out.sort();
        Ok(out)
    }

    fn cycle_dfs(
        &self,
        start: usize,
        v: usize,
        on_path: &mut Vec<bool>,
        path: &mut Vec<(usize, u64)>,
        out: &mut Vec<Cycle>,
        cap: usize,
    ) -> Result<()> {
        on_path[v] = true;
        for &bi in &self.out[v] {
            let b = &self.bundles[bi];
            for idx in 0..b.mult.representatives() {
                if b.dst == start {
                    if out.len() >= cap {
                        return Err(Error::CycleCapExceeded(cap));
                    }
                    path.push((bi, idx));
                    out.push(self.cycle_from_path(path));
                    path.pop();
                } else if b.dst > start && !on_path[b.dst] {
                    path.push((bi, idx));
                    self.cycle_dfs(start, b.dst, on_path, path, out, cap)?;
                    path.pop();
                }
            }
        }
        on_path[v] = false;
        Ok(())
    }

    fn cycle_from_path(&self, path: &[(usize, u64)]) -> Cycle {
        Cycle::canonical(
            path.iter()
                .map(|&(bi, idx)| {
                    let b = &self.bundles[bi];
                    EdgeRef {
                        src: self.verts[b.src].clone(),
                        dst: self.verts[b.dst].clone(),
                        bundle: b.id.clone(),
                        index: idx,
                    }
                })
                .collect(),
        )
    }

    /// All cycles without exits: no edge outside the cycle leaves a cycle
    /// vertex. Every vertex on such a cycle emits exactly one edge, so the
    /// search walks the unique-out-edge subgraph and needs no cap.
    pub fn cycles_without_exits(&self) -> Vec<Cycle> {
        // unique out-edge of v, when v emits exactly one concrete edge
        let unique_out = |v: usize| -> Option<usize> {
            match self.out[v].as_slice() {
                [bi] if self.bundles[*bi].mult == Mult::Finite(1) => Some(*bi),
                _ => None,
            }
        };
        let mut cycles = BTreeSet::new();
        for start in 0..self.n() {
            let mut seen: VSet = [start].into();
            let mut order = vec![start];
            let mut v = start;
            while let Some(bi) = unique_out(v) {
                let w = self.bundles[bi].dst;
                if w == start {
                    // closed back to start: a cycle without exits
                    let path: Vec<(usize, u64)> = order
                        .iter()
                        .map(|&u| (unique_out(u).unwrap(), 0))
                        .collect();
                    cycles.insert(self.cycle_from_path(&path));
                    break;
                }
                if !seen.insert(w) {
                    break; // closed to a later vertex: counted from there
                }
                order.push(w);
                v = w;
            }
        }
        cycles.into_iter().collect()
    }

    /// Condition (L): every cycle has an exit.
    pub fn condition_l(&self) -> bool {
        self.cycles_without_exits().is_empty()
    }

    /// All cycles without (K): simple cycles none of whose vertices lies on
    /// a different simple cycle.
    pub fn cycles_without_k(&self, cap: usize) -> Result<Vec<Cycle>> {
        let cycles = self.simple_cycles(cap)?;
        let mut on_count: BTreeMap<usize, usize> = BTreeMap::new();
        let verts_of = |c: &Cycle| -> VSet {
            c.edges()
                .iter()
                .map(|e| self.vertex_index(&e.src).expect("cycle vertex"))
                .collect()
        };
        for c in &cycles {
            for v in verts_of(c) {
                *on_count.entry(v).or_insert(0) += 1;
            }
        }
        Ok(cycles
            .iter()
            .filter(|c| verts_of(c).iter().all(|v| on_count[v] == 1))
            .cloned()
            .collect())
    }

    /// Condition (K): every vertex on a closed path lies on at least two
    /// distinct closed paths. On failure the witness is a cycle without (K).
    pub fn condition_k(&self, cap: usize) -> Result<(bool, Option<Cycle>)> {
        let bad = self.cycles_without_k(cap)?;
        Ok(match bad.into_iter().next() {
            None => (true, None),
            Some(c) => (false, Some(c)),
        })
    }

    /// True when a given cycle of this graph is a cycle without (K).
    pub fn is_cycle_without_k(&self, c: &Cycle, cap: usize) -> Result<bool> {
        Ok(self.cycles_without_k(cap)?.contains(c))
    }

    /// Whether the cycle has no exit here: every cycle vertex emits exactly
    /// the single cycle edge.
    pub fn cycle_has_no_exit(&self, c: &Cycle) -> Result<bool> {
        for e in c.edges() {
            let v = self.vertex_index(&e.src)?;
            match self.out[v].as_slice() {
                [bi] if self.bundles[*bi].mult == Mult::Finite(1) => {
                    if self.bundles[*bi].id != e.bundle {
                        return Ok(false);
                    }
                }
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    // -- admissible pairs and quotients ------------------------------------

    pub fn check_admissible(&self, p: &AdmissiblePair) -> Result<()> {
        if !self.is_hereditary_saturated(&p.h) {
            return Err(Error::NotHereditarySaturated);
        }
        let b = self.breaking_vertices(&p.h)?;
        if !p.s.is_subset(&b) {
            return Err(Error::InadmissiblePair(format!(
                "S = {:?} is not a subset of the breaking vertices {:?}",
                self.names_of(&p.s),
                self.names_of(&b)
            )));
        }
        Ok(())
    }

    /// All admissible pairs, sorted by (H, S).
    pub fn admissible_pairs(&self) -> Vec<AdmissiblePair> {
        let mut out = vec![];
        for h in self.hereditary_saturated_sets() {
            let b: Vec<usize> = self
                .breaking_vertices(&h)
                .expect("H is hereditary saturated")
                .into_iter()
                .collect();
            for mask in 0u32..(1 << b.len()) {
                let s: VSet = (0..b.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| b[i])
                    .collect();
                out.push(AdmissiblePair { h: h.clone(), s });
            }
        }
        out.sort();
        out
    }

    /// Do the admissible pairs form a chain under the pair order?
    pub fn admissible_pairs_chain(&self) -> (bool, Option<(AdmissiblePair, AdmissiblePair)>) {
        let pairs = self.admissible_pairs();
        for (i, p) in pairs.iter().enumerate() {
            for q in &pairs[i + 1..] {
                if !p.le(q) && !q.le(p) {
                    return (false, Some((p.clone(), q.clone())));
                }
            }
        }
        (true, None)
    }

    /// The quotient graph E\(H,S): drop H and its incoming edges; each
    /// breaking vertex v ∈ B_H∖S spawns a sink v′ receiving a primed copy
    /// e′ of every edge e with r(e) = v.
    pub fn quotient_graph(&self, p: &AdmissiblePair) -> Result<Graph> {
        self.check_admissible(p)?;
        let b = self.breaking_vertices(&p.h)?;
        let primed: VSet = b.difference(&p.s).copied().collect();
        let mut vertices: Vec<String> = (0..self.n())
            .filter(|v| !p.h.contains(v))
            .map(|v| self.verts[v].clone())
            .collect();
        vertices.extend(primed.iter().map(|&v| format!("{}'", self.verts[v])));
        let mut specs = vec![];
        for bd in &self.bundles {
            if p.h.contains(&bd.dst) {
                continue;
            }
            specs.push((
                bd.id.clone(),
                self.verts[bd.src].clone(),
                self.verts[bd.dst].clone(),
                bd.mult,
            ));
            if primed.contains(&bd.dst) {
                specs.push((
                    format!("{}'", bd.id),
                    self.verts[bd.src].clone(),
                    format!("{}'", self.verts[bd.dst]),
                    bd.mult,
                ));
            }
        }
        Graph::new(vertices, specs)
    }

    // -- export ------------------------------------------------------------

    /// GraphViz DOT rendering; ω appears as an edge label, multiplicities
    /// ≥ 2 as labels, primed vertices carry their `'` suffix.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph {\n");
        for v in &self.verts {
            s.push_str(&format!("  \"{v}\";\n"));
        }
        for b in &self.bundles {
            let label = match b.mult {
                Mult::Finite(1) => String::new(),
                m => format!(" [label=\"{m}\"]"),
            };
            s.push_str(&format!(
                "  \"{}\" -> \"{}\"{};\n",
                self.verts[b.src], self.verts[b.dst], label
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// The index of a graded ideal: a hereditary saturated H together with a
/// set S of breaking vertices of H.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AdmissiblePair {
    pub h: VSet,
    pub s: VSet,
}

impl AdmissiblePair {
    pub fn new(h: VSet, s: VSet) -> AdmissiblePair {
        AdmissiblePair { h, s }
    }

    pub fn empty() -> AdmissiblePair {
        AdmissiblePair {
            h: VSet::new(),
            s: VSet::new(),
        }
    }

    /// The order matching ideal inclusion: (H1,S1) ≤ (H2,S2) iff H1 ⊆ H2
    /// and S1 ⊆ H2 ∪ S2.
    pub fn le(&self, other: &AdmissiblePair) -> bool {
        self.h.is_subset(&other.h)
            && self
                .s
                .iter()
                .all(|v| other.h.contains(v) || other.s.contains(v))
    }
}

/// One concrete edge: `(bundle, index)` plus its endpoints by name, so
/// cycles stay meaningful across a graph and its quotients (which share
/// bundle ids).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeRef {
    pub src: String,
    pub dst: String,
    pub bundle: String,
    pub index: u64,
}

/// A simple cycle, stored in canonical rotation (lexicographically least
/// source vertex first) so equality is rotation-invariant.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cycle {
    edges: Vec<EdgeRef>,
}

impl Cycle {
    fn canonical(edges: Vec<EdgeRef>) -> Cycle {
        let least = edges
            .iter()
            .enumerate()
            .min_by_key(|(_, e)| &e.src)
            .map(|(i, _)| i)
            .unwrap_or(0);
        let mut rotated = edges;
        rotated.rotate_left(least);
        Cycle { edges: rotated }
    }

    /// Build from explicit `(bundle id, index)` edges of `g`, validating
    /// shape: consecutive edges compose, the last closes to the first, and
    /// sources are pairwise distinct.
    pub fn from_edges(g: &Graph, edges: &[(String, u64)]) -> Result<Cycle> {
        if edges.is_empty() {
            return Err(Error::NotACycle("empty edge list".into()));
        }
        let mut refs = vec![];
        for (id, index) in edges {
            let b = g.bundle_by_id(id)?;
            if let Mult::Finite(m) = b.mult {
                if *index >= m {
                    return Err(Error::NotACycle(format!(
                        "edge index {index} out of range for bundle `{id}` of multiplicity {m}"
                    )));
                }
            }
            refs.push(EdgeRef {
                src: g.verts[b.src].clone(),
                dst: g.verts[b.dst].clone(),
                bundle: id.clone(),
                index: *index,
            });
        }
        for i in 0..refs.len() {
            let next = &refs[(i + 1) % refs.len()];
            if refs[i].dst != next.src {
                return Err(Error::NotACycle(format!(
                    "edge `{}` ends at {} but the next edge starts at {}",
                    refs[i].bundle, refs[i].dst, next.src
                )));
            }
        }
        let sources: BTreeSet<&str> = refs.iter().map(|e| e.src.as_str()).collect();
        if sources.len() != refs.len() {
            return Err(Error::NotACycle("repeated source vertex".into()));
        }
        Ok(Cycle::canonical(refs))
    }

    /// Build from a vertex sequence when each step is unambiguous: exactly
    /// one bundle joins the consecutive vertices and it has multiplicity 1.
    pub fn from_vertices(g: &Graph, names: &[&str]) -> Result<Cycle> {
        if names.is_empty() {
            return Err(Error::NotACycle("empty vertex list".into()));
        }
        let mut edges = vec![];
        for i in 0..names.len() {
            let src = g.vertex_index(names[i])?;
            let dst = g.vertex_index(names[(i + 1) % names.len()])?;
            let joining: Vec<&Bundle> = g.out_bundles(src).filter(|b| b.dst == dst).collect();
            match joining.as_slice() {
                [b] if b.mult == Mult::Finite(1) => edges.push((b.id.clone(), 0)),
                [] => {
                    return Err(Error::NotACycle(format!(
                        "no edge from {} to {}",
                        names[i],
                        g.vertex_name(dst)
                    )))
                }
                _ => {
                    return Err(Error::NotACycle(format!(
                        "edge from {} to {} is ambiguous; give explicit bundle#index edges",
                        names[i],
                        g.vertex_name(dst)
                    )))
                }
            }
        }
        Cycle::from_edges(g, &edges)
    }

    pub fn edges(&self) -> &[EdgeRef] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a cycle always has at least one edge
    }

    /// Source vertices in cycle order, canonical rotation.
    pub fn vertex_names(&self) -> Vec<&str> {
        self.edges.iter().map(|e| e.src.as_str()).collect()
    }

    pub fn base(&self) -> &str {
        &self.edges[0].src
    }

    /// The cycle's vertices as indices of `g`.
    pub fn vertex_set(&self, g: &Graph) -> Result<VSet> {
        self.edges.iter().map(|e| g.vertex_index(&e.src)).collect()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{}#{}", e.bundle, e.index))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Result of the irredundant tail-cover search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TailCover {
    /// Lexicographically least cover of maximum cardinality.
    pub cover: Vec<VSet>,
    /// Maximum cardinality over all irredundant covers.
    pub n: usize,
    /// Every cardinality attained by some irredundant cover.
    pub sizes: BTreeSet<usize>,
    /// How many distinct maximum-cardinality covers exist.
    pub max_count: usize,
}

/// A tail cover of the quotient graph restricted to the requirement that it
/// contains specific tails; used by the factorization search.
impl TailCover {
    pub fn tails(&self) -> &[VSet] {
        &self.cover
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn vs(g: &Graph, names: &[&str]) -> VSet {
        g.vset_from_names(names.iter().copied()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let g3 = fixtures::g3();
        assert_eq!(
            g3.hereditary_saturated_closure(&vs(&g3, &["v"])),
            vs(&g3, &["v"])
        );
        assert_eq!(
            g3.hereditary_saturated_closure(&VSet::new()),
            VSet::new()
        );
        let g4 = fixtures::g4();
        assert_eq!(
            g4.hereditary_saturated_closure(&vs(&g4, &["b"])),
            vs(&g4, &["b"])
        );
        assert_eq!(
            g4.hereditary_saturated_closure(&vs(&g4, &["a"])),
            vs(&g4, &["a", "b"])
        );
    }

    #[test]
    fn hereditary_saturated_lattices() {
        let g3 = fixtures::g3();
        let sets = g3.hereditary_saturated_sets();
        let expect: Vec<VSet> = vec![
            VSet::new(),
            vs(&g3, &["v"]),
            vs(&g3, &["u", "v"]),
            vs(&g3, &["v", "w"]),
            vs(&g3, &["u", "v", "w"]),
        ];
        for e in &expect {
            assert!(sets.contains(e), "missing {:?}", g3.names_of(e));
        }
        assert_eq!(sets.len(), 5);
        // brute-force cross-check
        assert_eq!(sets, brute_force_hsat(&g3));
    }

    fn brute_force_hsat(g: &Graph) -> Vec<VSet> {
        (0u32..(1 << g.n()))
            .map(|mask| (0..g.n()).filter(|i| mask & (1 << i) != 0).collect::<VSet>())
            .filter(|x| g.is_hereditary_saturated(x))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    #[test]
    fn closure_is_a_closure_operator_on_corpus() {
        for g in fixtures::corpus() {
            for mask in 0u32..(1 << g.n().min(6)) {
                let x: VSet = (0..g.n()).filter(|i| mask & (1 << i) != 0).collect();
                let cx = g.hereditary_saturated_closure(&x);
                assert!(x.is_subset(&cx));
                assert_eq!(g.hereditary_saturated_closure(&cx), cx);
            }
        }
    }

    #[test]
    fn breaking_vertices_examples() {
        let g3 = fixtures::g3();
        assert_eq!(g3.breaking_vertices(&vs(&g3, &["v"])).unwrap(), VSet::new());
        let g7 = fixtures::g7();
        assert_eq!(
            g7.breaking_vertices(&vs(&g7, &["v"])).unwrap(),
            vs(&g7, &["u"])
        );
        assert_eq!(
            g7.breaking_vertices(&g7.all_vertices()).unwrap(),
            VSet::new()
        );
        assert!(matches!(
            g7.breaking_vertices(&vs(&g7, &["u"])),
            Err(Error::NotHereditarySaturated)
        ));
    }

    #[test]
    fn maximal_tails_examples() {
        let g3 = fixtures::g3();
        let tails = g3.maximal_tails();
        let expect = vec![
            vs(&g3, &["u"]),
            vs(&g3, &["u", "v", "w"]),
            vs(&g3, &["w"]),
        ];
        assert_eq!(tails, expect);

        let g1 = fixtures::g1();
        assert_eq!(g1.maximal_tails(), vec![g1.all_vertices()]);

        let g2 = fixtures::g2();
        assert_eq!(
            g2.maximal_tails(),
            vec![vs(&g2, &["a"]), vs(&g2, &["b"])]
        );
    }

    #[test]
    fn tails_are_complements_of_hsat_and_downward_directed() {
        for g in fixtures::corpus() {
            let hsat: BTreeSet<VSet> = g.hereditary_saturated_sets().into_iter().collect();
            for mask in 0u32..(1 << g.n().min(6)) {
                let m: VSet = (0..g.n()).filter(|i| mask & (1 << i) != 0).collect();
                let comp: VSet = (0..g.n()).filter(|v| !m.contains(v)).collect();
                let is_tail = !m.is_empty() && hsat.contains(&comp) && g.downward_directed(&m);
                assert_eq!(g.maximal_tails().contains(&m), is_tail);
            }
        }
    }

    #[test]
    fn condition_k_examples() {
        let cap = 10_000;
        assert!(fixtures::g3().condition_k(cap).unwrap().0);
        assert!(fixtures::g2().condition_k(cap).unwrap().0);
        let (holds, witness) = fixtures::g4().condition_k(cap).unwrap();
        assert!(!holds);
        let w = witness.unwrap();
        assert_eq!(w.vertex_names(), vec!["a"]);
        let (holds, witness) = fixtures::g1().condition_k(cap).unwrap();
        assert!(!holds);
        assert_eq!(witness.unwrap().vertex_names(), vec!["v"]);
    }

    #[test]
    fn parallel_edges_salvage_condition_k() {
        // v <-> w two-cycle plus a loop at w: v lies on only one simple
        // cycle but both its closed paths through w differ, so (K) holds.
        let g = Graph::new(
            vec!["v", "w"],
            vec![
                ("a", "v", "w", Mult::Finite(1)),
                ("b", "w", "v", Mult::Finite(1)),
                ("c", "w", "w", Mult::Finite(1)),
            ],
        )
        .unwrap();
        assert!(g.condition_k(10_000).unwrap().0);
        // A double loop alone also satisfies (K).
        let g = Graph::new(vec!["v"], vec![("e", "v", "v", Mult::Finite(2))]).unwrap();
        assert!(g.condition_k(10_000).unwrap().0);
    }

    #[test]
    fn cycles_without_exits_examples() {
        let g1 = fixtures::g1();
        let loops = g1.cycles_without_exits();
        assert_eq!(loops.len(), 1);
        assert_eq!(loops[0].vertex_names(), vec!["v"]);

        assert!(fixtures::g3().cycles_without_exits().is_empty());

        // In the column graph the loops c_i have the exits w_i→v_i, but
        // they become exit-free in the quotient by H = {v1, v2}.
        let g62 = fixtures::g6(2);
        assert!(g62.cycles_without_exits().is_empty());
        let h = g62.vset_from_names(["v1", "v2"]).unwrap();
        let q = g62
            .quotient_graph(&AdmissiblePair::new(h, VSet::new()))
            .unwrap();
        let c = q.cycles_without_exits();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].vertex_names(), vec!["w1"]);
        assert_eq!(c[1].vertex_names(), vec!["w2"]);
    }

    #[test]
    fn exit_free_cycles_are_without_k() {
        for g in fixtures::corpus() {
            let bad = g.cycles_without_k(100_000).unwrap();
            for c in g.cycles_without_exits() {
                assert!(bad.contains(&c), "{c} should be a cycle without (K)");
            }
        }
    }

    #[test]
    fn quotient_graph_examples() {
        let g3 = fixtures::g3();
        let q = g3
            .quotient_graph(&AdmissiblePair::new(vs(&g3, &["v"]), VSet::new()))
            .unwrap();
        assert_eq!(q.vertex_names().collect::<Vec<_>>(), vec!["u", "w"]);
        assert_eq!(q.bundles().len(), 4); // the four loops survive

        // trivial pair changes nothing
        let same = g3.quotient_graph(&AdmissiblePair::empty()).unwrap();
        assert_eq!(&same, &g3);

        // with S = B_H the vertex set is exactly the complement of H
        let g7 = fixtures::g7();
        let h = vs(&g7, &["v"]);
        let q = g7
            .quotient_graph(&AdmissiblePair::new(h.clone(), vs(&g7, &["u"])))
            .unwrap();
        assert_eq!(q.vertex_names().collect::<Vec<_>>(), vec!["u", "w"]);
    }

    #[test]
    fn quotient_graph_primed_sinks() {
        // u ∈ B_{v}∖S spawns a sink u′; no edge of G7 has range u, so u′
        // is isolated.
        let g7 = fixtures::g7();
        let q = g7
            .quotient_graph(&AdmissiblePair::new(
                vs(&g7, &["v"]),
                VSet::new(),
            ))
            .unwrap();
        assert_eq!(
            q.vertex_names().collect::<Vec<_>>(),
            vec!["u", "u'", "w"]
        );
        let up = q.vertex_index("u'").unwrap();
        assert!(q.is_sink(up));
        // the kept edge u→w survives under its original bundle id
        assert!(q.bundle_by_id("f").is_ok());
        // a primed copy exists exactly for edges ranging at a primed vertex
        assert!(q.bundles().iter().all(|b| b.dst != up));
    }

    #[test]
    fn quotient_with_incoming_primed_edges() {
        // ω-bundle u→v, edge u→x (a sink), and w→u: with H = {v}, u is a
        // breaking vertex, and for S = ∅ the edge w→u acquires a primed
        // copy w→u′.
        let g = Graph::new(
            vec!["u", "v", "w", "x"],
            vec![
                ("e", "u", "v", Mult::Omega),
                ("f", "u", "x", Mult::Finite(1)),
                ("g", "w", "u", Mult::Finite(1)),
            ],
        )
        .unwrap();
        let h = g.vset_from_names(["v"]).unwrap();
        assert_eq!(g.breaking_vertices(&h).unwrap(), g.vset_from_names(["u"]).unwrap());
        let q = g
            .quotient_graph(&AdmissiblePair::new(h, VSet::new()))
            .unwrap();
        assert_eq!(
            q.vertex_names().collect::<Vec<_>>(),
            vec!["u", "u'", "w", "x"]
        );
        let up = q.vertex_index("u'").unwrap();
        let incoming: Vec<&Bundle> = q.bundles().iter().filter(|b| b.dst == up).collect();
        assert_eq!(incoming.len(), 1); // g′ only; the ω-bundle ranges in H
        assert_eq!(incoming[0].id, "g'");
        assert!(q.is_sink(up));
    }

    #[test]
    fn admissible_pairs_examples() {
        let g2 = fixtures::g2();
        let pairs = g2.admissible_pairs();
        assert_eq!(pairs.len(), 4);
        assert!(!g2.admissible_pairs_chain().0);

        let g1 = fixtures::g1();
        assert_eq!(g1.admissible_pairs().len(), 2);
        assert!(g1.admissible_pairs_chain().0);

        let g3 = fixtures::g3();
        assert_eq!(g3.admissible_pairs().len(), 5);
        assert!(!g3.admissible_pairs_chain().0);

        let g7 = fixtures::g7();
        let pairs = g7.admissible_pairs();
        // H ∈ {∅, {v}, {w}, {v,w}, E^0}; only H={v} has a breaking vertex
        assert_eq!(pairs.len(), 6);
        assert!(pairs.contains(&AdmissiblePair::new(
            vs(&g7, &["v"]),
            vs(&g7, &["u"])
        )));
    }

    #[test]
    fn tail_cover_examples() {
        let g2 = fixtures::g2();
        let cover = g2.irredundant_tail_cover(0).unwrap();
        assert_eq!(cover.n, 2);
        assert_eq!(cover.cover, vec![vs(&g2, &["a"]), vs(&g2, &["b"])]);

        let g3 = fixtures::g3();
        let cover = g3.irredundant_tail_cover(0).unwrap();
        assert_eq!(cover.n, 1);
        assert_eq!(cover.cover, vec![g3.all_vertices()]);

        let g1 = fixtures::g1();
        let cover = g1.irredundant_tail_cover(0).unwrap();
        assert_eq!((cover.n, cover.cover.len()), (1, 1));

        assert!(g1.irredundant_tail_cover(2).is_none());
    }

    #[test]
    fn cycle_canonical_rotation_and_parsing() {
        let g3 = fixtures::g3();
        // same cycle entered from both rotations: u→v? no — use a 2-cycle
        let g = Graph::new(
            vec!["a", "b"],
            vec![
                ("e", "a", "b", Mult::Finite(1)),
                ("f", "b", "a", Mult::Finite(1)),
            ],
        )
        .unwrap();
        let c1 = Cycle::from_edges(&g, &[("e".into(), 0), ("f".into(), 0)]).unwrap();
        let c2 = Cycle::from_edges(&g, &[("f".into(), 0), ("e".into(), 0)]).unwrap();
        assert_eq!(c1, c2);
        assert_eq!(c1.base(), "a");
        assert_eq!(c1.to_string(), "e#0,f#0");

        let by_verts = Cycle::from_vertices(&g, &["b", "a"]).unwrap();
        assert_eq!(by_verts, c1);

        // not closed
        assert!(Cycle::from_edges(&g3, &[("u_v".into(), 0)]).is_err());
        // ambiguous step (double loop at u)
        assert!(Cycle::from_vertices(&g3, &["u"]).is_err());
    }

    #[test]
    fn cycle_cap_is_an_error() {
        let g3 = fixtures::g3();
        assert!(matches!(
            g3.simple_cycles(1),
            Err(Error::CycleCapExceeded(1))
        ));
    }

    #[test]
    fn dot_export_mentions_omega() {
        let g7 = fixtures::g7();
        let dot = g7.to_dot();
        assert!(dot.contains("ω"));
        assert!(dot.starts_with("digraph {"));
    }
}
