//! Per-ideal predicates (prime, semiprime, primary/prime-power) and
//! whole-algebra predicates ("every proper ideal is ..."), each returning
//! enough witness data to audit the verdict.

use std::sync::Arc;

use crate::graph::{AdmissiblePair, Cycle, Graph, VSet};
use crate::ideal::IdealNF;
use crate::poly::Poly;
use crate::{EngineOpts, Error, Result};

/// Verdict of the prime test, with the matching structural case.
#[derive(Clone, Debug)]
pub struct PrimeReport {
    pub prime: bool,
    pub case: Option<PrimeCase>,
}

/// The three shapes a prime ideal can take.
#[derive(Clone, Debug)]
pub enum PrimeCase {
    /// Graded, S = B_H, complement of H downward directed.
    GradedDirected,
    /// Graded, S = B_H ∖ {u}, complement of H equals M(u).
    GradedBreaking { vertex: String },
    /// I(H,B_H) + ⟨p(c)⟩ with c a cycle without (K) and p irreducible.
    CyclePrime { cycle: Cycle, poly: Poly },
}

/// Is the ideal prime? Matches exactly one of three structural cases.
pub fn is_prime(i: &IdealNF, opts: &EngineOpts) -> Result<PrimeReport> {
    if i.is_whole() {
        return Err(Error::ImproperIdeal);
    }
    let g = i.graph();
    let pair = i.pair();
    let b_h = g.breaking_vertices(&pair.h)?;
    let complement: VSet = (0..g.n()).filter(|v| !pair.h.contains(v)).collect();
    let s_full = pair.s == b_h;

    if i.cyc().is_empty() {
        // case 1: S = B_H and the complement is downward directed
        if s_full && g.downward_directed(&complement) {
            return Ok(PrimeReport {
                prime: true,
                case: Some(PrimeCase::GradedDirected),
            });
        }
        // case 2: S misses exactly one breaking vertex u and the
        // complement is exactly M(u)
        let missing: Vec<usize> = b_h.difference(&pair.s).copied().collect();
        if let [u] = missing.as_slice() {
            if complement == g.m_set(*u) {
                return Ok(PrimeReport {
                    prime: true,
                    case: Some(PrimeCase::GradedBreaking {
                        vertex: g.vertex_name(*u).to_string(),
                    }),
                });
            }
        }
        return Ok(PrimeReport {
            prime: false,
            case: None,
        });
    }

    // case 3: a single cycle without (K) carrying an irreducible polynomial
    if s_full && i.cyc().len() == 1 {
        let (c, p) = i.cyc().iter().next().expect("one entry");
        let base = g.vertex_index(c.base())?;
        if g.is_cycle_without_k(c, opts.cycle_cap)?
            && complement == g.m_set(base)
            && p.is_irreducible_with(&opts.into())?
        {
            return Ok(PrimeReport {
                prime: true,
                case: Some(PrimeCase::CyclePrime {
                    cycle: c.clone(),
                    poly: p.clone(),
                }),
            });
        }
    }
    Ok(PrimeReport {
        prime: false,
        case: None,
    })
}

/// Semiprime ⟺ every cycle polynomial is square-free ⟺ I = rad(I).
pub fn is_semiprime(i: &IdealNF) -> Result<bool> {
    if i.is_whole() {
        return Err(Error::ImproperIdeal);
    }
    for f in i.cyc().values() {
        if !f.is_squarefree()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Primary / quasi-primary / irreducible / prime-power are all equivalent;
/// the witness exhibits I = P^n.
#[derive(Clone, Debug)]
pub struct PrimaryReport {
    pub flag: bool,
    pub witness: Option<(IdealNF, usize)>,
}

/// The prime-power test: either I is a graded prime (n = 1), or I is the
/// n-th power of a non-graded prime obtained by replacing its single cycle
/// polynomial p^n with p.
pub fn primary_report(i: &IdealNF, opts: &EngineOpts) -> Result<PrimaryReport> {
    if i.is_whole() {
        return Err(Error::ImproperIdeal);
    }
    if i.is_graded() {
        return Ok(if is_prime(i, opts)?.prime {
            PrimaryReport {
                flag: true,
                witness: Some((i.clone(), 1)),
            }
        } else {
            PrimaryReport {
                flag: false,
                witness: None,
            }
        });
    }
    if i.cyc().len() != 1 {
        return Ok(PrimaryReport {
            flag: false,
            witness: None,
        });
    }
    let (c, f) = i.cyc().iter().next().expect("one entry");
    let factors = f.factor_with(&opts.into())?;
    let [(p, n)] = factors.as_slice() else {
        return Ok(PrimaryReport {
            flag: false,
            witness: None,
        });
    };
    let candidate = IdealNF::make(
        i.graph().clone(),
        i.field(),
        i.pair().clone(),
        vec![(c.clone(), p.clone())],
    )?;
    if is_prime(&candidate, opts)?.prime {
        Ok(PrimaryReport {
            flag: true,
            witness: Some((candidate, *n)),
        })
    } else {
        Ok(PrimaryReport {
            flag: false,
            witness: None,
        })
    }
}

/// Verdict plus failure witness for "every proper ideal is prime".
#[derive(Clone, Debug)]
pub struct EveryPrimeReport {
    pub flag: bool,
    /// A cycle without (K), when Condition (K) fails.
    pub bad_cycle: Option<Cycle>,
    /// An incomparable pair of admissible pairs, when they fail to chain.
    pub incomparable: Option<(AdmissiblePair, AdmissiblePair)>,
}

/// Every proper ideal is prime ⟺ Condition (K) holds and the admissible
/// pairs form a chain.
pub fn every_ideal_prime(g: &Graph, opts: &EngineOpts) -> Result<EveryPrimeReport> {
    let (k, bad_cycle) = g.condition_k(opts.cycle_cap)?;
    if !k {
        return Ok(EveryPrimeReport {
            flag: false,
            bad_cycle,
            incomparable: None,
        });
    }
    let (chain, incomparable) = g.admissible_pairs_chain();
    Ok(EveryPrimeReport {
        flag: chain,
        bad_cycle: None,
        incomparable,
    })
}

/// Every proper ideal is semiprime ⟺ Condition (K).
pub fn every_ideal_semiprime(g: &Graph, opts: &EngineOpts) -> Result<(bool, Option<Cycle>)> {
    g.condition_k(opts.cycle_cap)
}

/// Per-admissible-pair audit data for the product-of-primes criterion.
#[derive(Clone, Debug)]
pub struct PairCoverInfo {
    pub pair: AdmissiblePair,
    /// Maximum irredundant tail-cover size of the quotient, if any cover
    /// exists.
    pub cover_n: Option<usize>,
    /// All irredundant cover sizes found (for auditing a stricter reading).
    pub sizes: Vec<usize>,
    /// Number of cycles without exits in the quotient graph.
    pub exit_free_cycles: usize,
}

#[derive(Clone, Debug)]
pub struct ProductOfPrimesReport {
    pub flag: bool,
    pub failing_pair: Option<AdmissiblePair>,
    pub pairs: Vec<PairCoverInfo>,
}

/// Every proper ideal is a product of primes ⟺ for every admissible pair
/// with H ≠ E^0, the quotient's vertex set is an irredundant union of
/// n > 0 maximal tails and the quotient has at most n cycles without
/// exits (n maximized over irredundant covers).
pub fn every_ideal_product_of_primes(g: &Graph) -> Result<ProductOfPrimesReport> {
    let mut pairs = vec![];
    let mut failing = None;
    for pair in g.admissible_pairs() {
        if pair.h.len() == g.n() {
            continue;
        }
        let q = g.quotient_graph(&pair)?;
        let cover = q.irredundant_tail_cover(0);
        let exit_free = q.cycles_without_exits().len();
        let ok = matches!(&cover, Some(tc) if exit_free <= tc.n);
        if !ok && failing.is_none() {
            failing = Some(pair.clone());
        }
        pairs.push(PairCoverInfo {
            pair,
            cover_n: cover.as_ref().map(|tc| tc.n),
            sizes: cover
                .as_ref()
                .map(|tc| tc.sizes.iter().copied().collect())
                .unwrap_or_default(),
            exit_free_cycles: exit_free,
        });
    }
    Ok(ProductOfPrimesReport {
        flag: failing.is_none(),
        failing_pair: failing,
        pairs,
    })
}

/// Per-hereditary-saturated-set report for the product-of-semiprimes
/// criterion: the cycles disjoint from H whose every exit ranges in H.
#[derive(Clone, Debug)]
pub struct SemiprimeCycleReport {
    pub h: VSet,
    pub qualifying_cycles: Vec<Cycle>,
}

#[derive(Clone, Debug)]
pub struct ProductOfSemiprimesReport {
    /// Always true on finite input: the qualifying cycle count is finite.
    pub flag: bool,
    pub per_h: Vec<SemiprimeCycleReport>,
}

/// On a finite graph every proper ideal is a product of semiprimes; the
/// report lists, per hereditary saturated H, the cycles that become
/// exit-free modulo H (the condition set of the underlying theorem).
pub fn every_ideal_product_of_semiprimes(
    g: &Graph,
    opts: &EngineOpts,
) -> Result<ProductOfSemiprimesReport> {
    let cycles = g.simple_cycles(opts.cycle_cap)?;
    let mut per_h = vec![];
    for h in g.hereditary_saturated_sets() {
        let mut qualifying = vec![];
        for c in &cycles {
            let cv = c.vertex_set(g)?;
            if cv.iter().any(|v| h.contains(v)) {
                continue;
            }
            // every exit of c (edge off the cycle leaving a cycle vertex)
            // must range in H
            let exits_in_h = cv.iter().all(|&v| {
                g.out_bundles(v).all(|b| {
                    let on_cycle = c
                        .edges()
                        .iter()
                        .any(|e| e.bundle == b.id && b.mult == crate::graph::Mult::Finite(1));
                    on_cycle || h.contains(&b.dst)
                })
            });
            if exits_in_h {
                qualifying.push(c.clone());
            }
        }
        per_h.push(SemiprimeCycleReport {
            h,
            qualifying_cycles: qualifying,
        });
    }
    Ok(ProductOfSemiprimesReport {
        flag: true,
        per_h,
    })
}

/// Convenience wrapper: run all four global predicates on a graph.
#[derive(Clone, Debug)]
pub struct GlobalFlags {
    pub every_prime: bool,
    pub every_semiprime: bool,
    pub every_product_of_primes: bool,
    pub every_product_of_semiprimes: bool,
}

pub fn global_flags(g: &Arc<Graph>, opts: &EngineOpts) -> Result<GlobalFlags> {
    Ok(GlobalFlags {
        every_prime: every_ideal_prime(g, opts)?.flag,
        every_semiprime: every_ideal_semiprime(g, opts)?.0,
        every_product_of_primes: every_ideal_product_of_primes(g)?.flag,
        every_product_of_semiprimes: every_ideal_product_of_semiprimes(g, opts)?.flag,
    })
}
