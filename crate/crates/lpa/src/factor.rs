//! Constructive factorization of ideals into products of prime and
//! semiprime ideals.
//!
//! The constructions follow the structure theorems (tail covers of the
//! quotient graph for primes; induction on the maximal irreducible
//! multiplicity for semiprimes), but the exact breaking-vertex bookkeeping
//! of the lifted factors is delegated to *verification*: every certificate
//! is re-multiplied through the ideal arithmetic and compared with the
//! input, and an unverifiable construction is a loud error, never a wrong
//! answer.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::classify::{is_prime, is_semiprime};
use crate::graph::{AdmissiblePair, Cycle, Graph, VSet};
use crate::ideal::IdealNF;
use crate::poly::Poly;
use crate::{EngineOpts, Error, Result};

/// What the factors of a certificate are claimed to be.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CertKind {
    Prime,
    Semiprime,
}

/// A factorization with a machine-checked re-multiplication witness.
#[derive(Clone, Debug)]
pub struct FactorizationCert {
    pub target: IdealNF,
    pub factors: Vec<IdealNF>,
    pub kind: CertKind,
    /// Always true for values produced by [`FactorizationCert::verify`].
    pub verified: bool,
}

impl FactorizationCert {
    /// Check a claimed factorization: every factor must be prime (resp.
    /// semiprime) and the product of the factors must equal the target
    /// exactly. Failures are errors, not `verified: false` values.
    pub fn verify(
        target: IdealNF,
        factors: Vec<IdealNF>,
        kind: CertKind,
        opts: &EngineOpts,
    ) -> Result<FactorizationCert> {
        if factors.is_empty() {
            return Err(Error::VerificationFailure("empty factor list".into()));
        }
        for (i, f) in factors.iter().enumerate() {
            let ok = match kind {
                CertKind::Prime => is_prime(f, opts)?.prime,
                CertKind::Semiprime => is_semiprime(f)?,
            };
            if !ok {
                return Err(Error::VerificationFailure(format!(
                    "factor {i} ({f}) is not {}",
                    match kind {
                        CertKind::Prime => "prime",
                        CertKind::Semiprime => "semiprime",
                    }
                )));
            }
        }
        let mut product = factors[0].clone();
        for f in &factors[1..] {
            product = product.product(f)?;
        }
        if product != target {
            return Err(Error::VerificationFailure(format!(
                "product of factors is {product}, expected {target}"
            )));
        }
        Ok(FactorizationCert {
            target,
            factors,
            kind,
            verified: true,
        })
    }
}

/// Lift the complement of a quotient-graph tail to an admissible pair of
/// the base graph.
///
/// `tail` is a maximal tail of `q = E\(H,S)`. In the quotient algebra a
/// primed vertex v′ is the coset of the breaking generator v^H and its
/// unprimed partner v the coset of v − v^H, so a partnered vertex enters
/// H′ only when both copies lie outside the tail; the breaking generator
/// itself is demanded (via S′ or H′) exactly when v′ is outside the tail,
/// and refused when v′ lies in it.
fn lift_tail_complement(
    g: &Graph,
    base: &AdmissiblePair,
    q: &Graph,
    tail: &VSet,
) -> Result<AdmissiblePair> {
    let mut h = base.h.clone();
    // vertices whose breaking generator must lie in the lifted ideal
    let mut generators: VSet = base.s.clone();
    // vertices whose breaking generator must stay out: kept out of S
    let mut excluded = VSet::new();
    let mut partnered = VSet::new();
    for qv in 0..q.n() {
        let name = q.vertex_name(qv);
        if let Some(plain) = name.strip_suffix('\'') {
            let v = g.vertex_index(plain)?;
            partnered.insert(v);
            if tail.contains(&qv) {
                excluded.insert(v);
            } else {
                generators.insert(v);
            }
        }
    }
    for qv in 0..q.n() {
        let name = q.vertex_name(qv);
        if name.ends_with('\'') || tail.contains(&qv) {
            continue;
        }
        let v = g.vertex_index(name)?;
        if !partnered.contains(&v) || generators.contains(&v) {
            h.insert(v);
        }
    }
    let mut h = g.hereditary_saturated_closure(&h);
    loop {
        let b = g.breaking_vertices(&h)?;
        // a demanded generator vertex that is neither in H nor breaking
        // emits nothing outside H, so it belongs to the ideal outright
        let absorb: Vec<usize> = generators
            .iter()
            .copied()
            .filter(|v| !h.contains(v) && !b.contains(v))
            .collect();
        if absorb.is_empty() {
            let s: VSet = b.difference(&excluded).copied().collect();
            return Ok(AdmissiblePair::new(h, s));
        }
        h.extend(absorb);
        h = g.hereditary_saturated_closure(&h);
    }
}

/// Factor a proper ideal into primes, if the tail-cover criterion admits
/// it: the quotient vertex set must be an irredundant union of maximal
/// tails, with at least as many tails as the ideal has cycles.
///
/// Returns `None` when the criterion fails; errors if a construction that
/// should work cannot be verified.
pub fn prime_factorization(i: &IdealNF, opts: &EngineOpts) -> Result<Option<FactorizationCert>> {
    if i.is_whole() {
        return Err(Error::ImproperIdeal);
    }
    if is_prime(i, opts)?.prime {
        return Ok(Some(FactorizationCert::verify(
            i.clone(),
            vec![i.clone()],
            CertKind::Prime,
            opts,
        )?));
    }
    let g: &Arc<Graph> = i.graph();
    let pair = i.pair();
    let q = g.quotient_graph(pair)?;
    let covers = q.irredundant_tail_covers();
    let Some(n) = covers.iter().map(|c| c.len()).max() else {
        return Ok(None);
    };
    if i.cyc().len() > n {
        return Ok(None);
    }

    // each cycle of the normal form determines the tail of its base vertex
    let mut cycle_tails: BTreeMap<VSet, (&Cycle, &Poly)> = BTreeMap::new();
    for (c, f) in i.cyc() {
        let base_q = q.vertex_index(c.base())?;
        cycle_tails.insert(q.m_set(base_q), (c, f));
    }

    // candidate covers must contain every cycle tail; largest first, then
    // lexicographically least, for determinism
    let mut candidates: Vec<Vec<VSet>> = covers
        .into_iter()
        .filter(|cov| cycle_tails.keys().all(|m| cov.contains(m)))
        .collect();
    candidates.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    if candidates.is_empty() {
        return Ok(None);
    }

    let mut last_err = None;
    for cover in candidates {
        let factors = match build_prime_factors(i, &q, &cover, &cycle_tails, opts) {
            Ok(f) => f,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        match FactorizationCert::verify(i.clone(), factors, CertKind::Prime, opts) {
            Ok(cert) => return Ok(Some(cert)),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| {
        Error::VerificationFailure("no candidate cover produced a verifying factorization".into())
    }))
}

fn build_prime_factors(
    i: &IdealNF,
    q: &Graph,
    cover: &[VSet],
    cycle_tails: &BTreeMap<VSet, (&Cycle, &Poly)>,
    opts: &EngineOpts,
) -> Result<Vec<IdealNF>> {
    let g = i.graph();
    let mut factors = vec![];
    for tail in cover {
        let lifted = lift_tail_complement(g, i.pair(), q, tail)?;
        match cycle_tails.get(tail) {
            Some((c, f)) => {
                // the tail of a cycle without exits is replaced by the
                // non-graded primes of its irreducible factors
                for (p, m) in f.factor_with(&opts.into())? {
                    let prime = IdealNF::make(
                        g.clone(),
                        i.field(),
                        lifted.clone(),
                        vec![((*c).clone(), p.clone())],
                    )?;
                    for _ in 0..m {
                        factors.push(prime.clone());
                    }
                }
            }
            None => {
                factors.push(IdealNF::graded(g.clone(), i.field(), lifted)?);
            }
        }
    }
    Ok(factors)
}

/// Factor a proper ideal of a finite graph into semiprime ideals, by
/// induction on the maximal multiplicity n of an irreducible factor among
/// the cycle polynomials; emits at most n factors. Never absent on finite
/// input.
pub fn semiprime_factorization(
    i: &IdealNF,
    opts: &EngineOpts,
) -> Result<Option<FactorizationCert>> {
    if i.is_whole() {
        return Err(Error::ImproperIdeal);
    }
    let factors = build_semiprime_factors(i, opts)?;
    Ok(Some(FactorizationCert::verify(
        i.clone(),
        factors,
        CertKind::Semiprime,
        opts,
    )?))
}

fn build_semiprime_factors(i: &IdealNF, opts: &EngineOpts) -> Result<Vec<IdealNF>> {
    if is_semiprime(i)? {
        return Ok(vec![i.clone()]);
    }
    let g = i.graph();

    // split cycles by whether they attain the global maximal multiplicity
    let mut factored: Vec<(Cycle, Poly, Vec<(Poly, usize)>)> = vec![];
    let mut n = 1usize;
    for (c, f) in i.cyc() {
        let fs = f.factor_with(&opts.into())?;
        n = n.max(fs.iter().map(|(_, m)| *m).max().unwrap_or(1));
        factored.push((c.clone(), f.clone(), fs));
    }
    let attains = |fs: &[(Poly, usize)]| fs.iter().any(|(_, m)| *m == n);

    // J1: the graded part absorbs the low-multiplicity cycles outright;
    // the high-multiplicity cycles keep the square-free product of their
    // maximal-multiplicity irreducibles.
    let mut low_vertices = VSet::new();
    for (c, _, fs) in &factored {
        if !attains(fs) {
            low_vertices.extend(c.vertex_set(g)?);
        }
    }
    let j1_graded = i
        .gr()
        .sum(&IdealNF::generated_by_vertices(g.clone(), i.field(), &low_vertices)?)?;
    let mut j1_parts = vec![];
    let mut j2_parts = vec![];
    for (c, f, fs) in &factored {
        if attains(fs) {
            let top: Poly = fs
                .iter()
                .filter(|(_, m)| *m == n)
                .fold(Poly::one(i.field()), |acc, (p, _)| acc.mul(p));
            j1_parts.push((c.clone(), top.clone()));
            j2_parts.push((c.clone(), f.div_exact(&top)));
        } else {
            j2_parts.push((c.clone(), f.clone()));
        }
    }
    let j1 = IdealNF::make(g.clone(), i.field(), j1_graded.pair().clone(), j1_parts)?;
    let j2 = IdealNF::make(g.clone(), i.field(), i.pair().clone(), j2_parts)?;

    let mut factors = vec![j1];
    factors.extend(build_semiprime_factors(&j2, opts)?);
    Ok(factors)
}

/// Turn an intersection of prime ideals into a verified product of primes.
pub fn intersection_to_product(
    primes: &[IdealNF],
    opts: &EngineOpts,
) -> Result<FactorizationCert> {
    let Some(first) = primes.first() else {
        return Err(Error::NotPrime("empty input list".into()));
    };
    for p in primes {
        if !is_prime(p, opts)?.prime {
            return Err(Error::NotPrime(format!("{p}")));
        }
    }
    let mut meet = first.clone();
    for p in &primes[1..] {
        meet = meet.intersect(p)?;
    }
    match prime_factorization(&meet, opts)? {
        Some(cert) => Ok(cert),
        None => Err(Error::VerificationFailure(format!(
            "intersection {meet} of primes unexpectedly fails the product criterion"
        ))),
    }
}

/// A prime whose square is not semiprime — hence not an intersection of
/// primes, even though it is a product of them.
#[derive(Clone, Debug)]
pub struct NotIntersectionWitness {
    pub prime: IdealNF,
    pub square: IdealNF,
}

/// Exhibit a product of primes that is not an intersection of primes,
/// when one exists: absent exactly when the graph satisfies Condition (K).
pub fn product_not_intersection_witness(
    g: &Arc<Graph>,
    field: crate::field::FieldSpec,
    opts: &EngineOpts,
) -> Result<Option<NotIntersectionWitness>> {
    let bad = g.cycles_without_k(opts.cycle_cap)?;
    let Some(c) = bad.first() else {
        return Ok(None); // Condition (K): products of primes are intersections
    };
    // H = vertices that do not reach the cycle; the complement is M(s(c)),
    // which is downward directed, and c is exit-free in the quotient
    let base = g.vertex_index(c.base())?;
    let h: VSet = (0..g.n()).filter(|&w| !g.reaches(w, base)).collect();
    let b = g.breaking_vertices(&h)?;
    let pair = AdmissiblePair::new(h, b);
    let p_poly = Poly::from_ints(field, &[-1, 1]); // x - 1
    let prime = IdealNF::make(g.clone(), field, pair, vec![(c.clone(), p_poly)])?;
    if !is_prime(&prime, opts)?.prime {
        return Err(Error::VerificationFailure(format!(
            "constructed witness {prime} is not prime"
        )));
    }
    let square = prime.product(&prime)?;
    if is_semiprime(&square)? {
        return Err(Error::VerificationFailure(format!(
            "square {square} of the witness is unexpectedly semiprime"
        )));
    }
    Ok(Some(NotIntersectionWitness { prime, square }))
}
