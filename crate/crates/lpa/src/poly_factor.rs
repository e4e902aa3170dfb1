//! Irreducible factorization of univariate polynomials.
//!
//! Over F_p: distinct-degree factorization followed by Cantor-Zassenhaus
//! equal-degree splitting (trace map for p = 2). The splitting is randomized
//! but seeded, and the returned factor list is sorted, so results are
//! deterministic.
//!
//! Over ℚ: square-free decomposition, then each square-free part is factored
//! by reduction modulo a single prime larger than twice the Mignotte factor
//! bound, followed by subset recombination with symmetric lifts. Degrees are
//! capped (default 12): exceeding the cap is an explicit error, never a wrong
//! answer.

use num::bigint::{BigInt, BigUint, Sign};
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{is_prime_u64, Coeff, FieldSpec};
use crate::poly::Poly;
use crate::{Error, Result, DEFAULT_QDEG_BOUND, DEFAULT_SEED};

/// Options for irreducible factorization.
#[derive(Clone, Copy, Debug)]
pub struct FactorOpts {
    /// Maximum degree accepted for factorization over ℚ.
    pub qdeg_bound: usize,
    /// Seed for the randomized equal-degree splitting.
    pub seed: u64,
}

impl Default for FactorOpts {
    fn default() -> Self {
        FactorOpts {
            qdeg_bound: DEFAULT_QDEG_BOUND,
            seed: DEFAULT_SEED,
        }
    }
}

impl From<&crate::EngineOpts> for FactorOpts {
    fn from(opts: &crate::EngineOpts) -> Self {
        FactorOpts {
            qdeg_bound: opts.qdeg_bound,
            seed: opts.seed,
        }
    }
}

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// with exponents, sorted for determinism. Degree-0 input yields an empty
/// list.
pub fn factor(f: &Poly, opts: &FactorOpts) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let (FieldSpec::Q, Some(d)) = (f.field(), f.degree()) {
        if d > opts.qdeg_bound {
            return Err(Error::DegreeBound {
                degree: d,
                bound: opts.qdeg_bound,
            });
        }
    }
    let mut out: Vec<(Poly, usize)> = vec![];
    for (part, mult) in f.squarefree_decomposition()? {
        let irreducibles = match f.field() {
            FieldSpec::Q => factor_squarefree_q(&part, opts)?,
            FieldSpec::Fp(p) => factor_squarefree_fp(&part, p, opts.seed),
        };
        for g in irreducibles {
            out.push((g, mult));
        }
    }
    out.sort();
    debug_assert_eq!(
        out.iter()
            .fold(Poly::one(f.field()), |acc, (g, m)| acc
                .mul(&g.pow(*m as u32))),
        f.monic()
    );
    Ok(out)
}

// ---------------------------------------------------------------------------
// F_p: distinct-degree + equal-degree splitting
// ---------------------------------------------------------------------------

/// Factor a monic square-free polynomial over F_p into monic irreducibles.
fn factor_squarefree_fp(f: &Poly, p: u64, seed: u64) -> Vec<Poly> {
    let deg = match f.degree() {
        None | Some(0) => return vec![],
        Some(d) => d,
    };
    if deg == 1 {
        return vec![f.monic()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    let mut rem = f.monic();
    // Distinct-degree pass: h runs through x^(p^d) mod rem.
    let mut h = Poly::x(f.field());
    let mut d = 0usize;
    while rem.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rem.degree().unwrap() {
            // Whatever is left is irreducible.
            out.push(rem.monic());
            break;
        }
        h = poly_powmod(&h, &BigUint::from(p), &rem);
        let g = h.sub(&Poly::x(f.field())).gcd(&rem);
        if g.degree().unwrap_or(0) > 0 {
            split_equal_degree(&g, d, p, &mut rng, &mut out);
            rem = rem.div_exact(&g);
            h = h.div_rem(&rem).1;
        }
    }
    out
}

/// Split a product of distinct monic irreducibles, all of degree `d`, into
/// its irreducible factors (Cantor-Zassenhaus; trace map when p = 2).
fn split_equal_degree(f: &Poly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let deg = f.degree().unwrap();
    if deg == d {
        out.push(f.monic());
        return;
    }
    let field = f.field();
    let g = loop {
        let a = random_poly(field, deg, p, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map: a + a^2 + a^4 + ... + a^(2^(d-1)) mod f.
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..d {
                t = t.mul(&t).div_rem(f).1;
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d - 1)/2) - 1 mod f.
            let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            poly_powmod(&a, &exp, f).sub(&Poly::one(field))
        };
        let g = b.gcd(f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < deg {
            break g;
        }
    };
    split_equal_degree(&g, d, p, rng, out);
    split_equal_degree(&f.div_exact(&g), d, p, rng, out);
}

fn random_poly(field: FieldSpec, deg_lt: usize, p: u64, rng: &mut ChaCha8Rng) -> Poly {
    let coeffs = (0..deg_lt)
        .map(|_| Coeff::Fp(rng.gen_range(0..p)))
        .collect();
    Poly::from_coeffs(field, coeffs)
}

/// base^exp mod m by square-and-multiply over the exponent's bits.
fn poly_powmod(base: &Poly, exp: &BigUint, m: &Poly) -> Poly {
    let mut acc = Poly::one(base.field());
    let mut sq = base.div_rem(m).1;
    let mut e = exp.clone();
    while !e.is_zero() {
        if e.is_odd() {
            acc = acc.mul(&sq).div_rem(m).1;
        }
        sq = sq.mul(&sq).div_rem(m).1;
        e >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// ℚ: big-prime reduction + subset recombination
// ---------------------------------------------------------------------------

/// Factor a monic square-free polynomial over ℚ into monic irreducibles.
fn factor_squarefree_q(f: &Poly, opts: &FactorOpts) -> Result<Vec<Poly>> {
    let deg = match f.degree() {
        None | Some(0) => return Ok(vec![]),
        Some(d) => d,
    };
    if deg == 1 {
        return Ok(vec![f.monic()]);
    }
    // Clear denominators: primitive integer polynomial with positive lc.
    let zf = to_primitive_int(f);
    let lc = zf.last().unwrap().clone();

    // Mignotte: every integer factor of zf (times lc) has coefficients
    // bounded by 2^deg * ||zf||_2 * |lc|; the working prime must exceed
    // twice that so that symmetric lifts are exact.
    let norm2: BigInt = sqrt_ceil(&zf.iter().map(|c| c * c).sum::<BigInt>());
    let bound: BigInt = (BigInt::one() << deg) * (norm2 + BigInt::one()) * lc.abs();
    let p = find_working_prime(&zf, &(bound * 2), deg)?;

    let fp = FieldSpec::Fp(p);
    let fbar = Poly::from_coeffs(fp, zf.iter().map(|c| Coeff::Fp(int_mod(c, p))).collect());
    let modular = factor_squarefree_fp(&fbar.monic(), p, opts.seed);

    // Subset recombination: try products of modular factors, smallest
    // cardinality first, and test true divisibility over ℚ.
    let mut pool = modular;
    pool.sort();
    let mut rem = f.monic();
    let mut out = vec![];
    let mut size = 1usize;
    while 2 * size <= pool.len() {
        let mut found = None;
        'subsets: for combo in combinations(pool.len(), size) {
            let mut prod = Poly::constant(fp, Coeff::Fp(int_mod(&lc, p)));
            for &i in &combo {
                prod = prod.mul(&pool[i]);
            }
            let candidate = symmetric_lift_to_q(&prod, p);
            if candidate.divides(&rem) {
                found = Some((combo, candidate.monic()));
                break 'subsets;
            }
        }
        match found {
            Some((combo, g)) => {
                rem = rem.div_exact(&g).monic();
                out.push(g);
                let keep: Vec<Poly> = pool
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, q)| q.clone())
                    .collect();
                pool = keep;
            }
            None => size += 1,
        }
    }
    if rem.degree().unwrap_or(0) > 0 {
        out.push(rem);
    }
    out.sort();
    Ok(out)
}

/// Multiply out denominators and divide by the content; positive leading
/// coefficient. Coefficients constant-first.
fn to_primitive_int(f: &Poly) -> Vec<BigInt> {
    let rats: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Coeff::Q(r) => r.clone(),
            Coeff::Fp(_) => unreachable!("rational path"),
        })
        .collect();
    let denom_lcm = rats
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut ints: Vec<BigInt> = rats
        .iter()
        .map(|r| r.numer() * (&denom_lcm / r.denom()))
        .collect();
    let content = ints
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c))
        .max(BigInt::one());
    for c in &mut ints {
        *c /= &content;
    }
    if ints.last().unwrap().is_negative() {
        for c in &mut ints {
            *c = -&*c;
        }
    }
    ints
}

/// Smallest prime above `floor` that keeps the reduction square-free of the
/// same degree. Errors if the coefficients force a prime beyond 63 bits.
fn find_working_prime(zf: &[BigInt], floor: &BigInt, deg: usize) -> Result<u64> {
    let limit = BigInt::one() << 62;
    if floor >= &limit {
        return Err(Error::CoefficientBound);
    }
    let start: u64 = floor.try_into().map_err(|_| Error::CoefficientBound)?;
    let mut p = start.max(3) | 1;
    loop {
        if p >= (1 << 62) {
            return Err(Error::CoefficientBound);
        }
        if is_prime_u64(p) {
            let fp = FieldSpec::Fp(p);
            let fbar =
                Poly::from_coeffs(fp, zf.iter().map(|c| Coeff::Fp(int_mod(c, p))).collect());
            if fbar.degree() == Some(deg) {
                let squarefree = fbar.gcd(&fbar.derivative()).degree() == Some(0);
                if squarefree {
                    return Ok(p);
                }
            }
        }
        p += 2;
    }
}

fn int_mod(c: &BigInt, p: u64) -> u64 {
    let m = c.mod_floor(&BigInt::from(p));
    m.try_into().expect("reduced residue fits u64")
}

/// Lift a mod-p polynomial to ℚ with coefficients in (-p/2, p/2].
fn symmetric_lift_to_q(f: &Poly, p: u64) -> Poly {
    let half = p / 2;
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| {
            let v = match c {
                Coeff::Fp(v) => *v,
                Coeff::Q(_) => unreachable!("mod-p path"),
            };
            let signed = if v > half {
                BigInt::from(v) - BigInt::from(p)
            } else {
                BigInt::from(v)
            };
            Coeff::Q(BigRational::from_integer(signed))
        })
        .collect();
    Poly::from_coeffs(FieldSpec::Q, coeffs)
}

/// Ceiling of the integer square root of a nonnegative BigInt.
fn sqrt_ceil(n: &BigInt) -> BigInt {
    let r = BigInt::from_biguint(Sign::Plus, n.magnitude().sqrt());
    if &(&r * &r) < n {
        r + BigInt::one()
    } else {
        r
    }
}

/// All size-k index subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
    while let Some((prefix, start)) = stack.pop() {
        if prefix.len() == k {
            out.push(prefix);
            continue;
        }
        // Push in reverse so pops come out lexicographically.
        for i in (start..n).rev() {
            let mut next = prefix.clone();
            next.push(i);
            stack.push((next, i + 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(ints: &[i64]) -> Poly {
        Poly::from_ints(FieldSpec::Q, ints)
    }

    #[test]
    fn factor_prime_square_over_q() {
        // (x-1)^2
        let f = q(&[-1, 1]).pow(2);
        assert_eq!(f.factor().unwrap(), vec![(q(&[-1, 1]), 2)]);
    }

    #[test]
    fn irreducible_quadratic_over_q() {
        let f = q(&[1, 0, 1]); // x^2 + 1
        assert_eq!(f.factor().unwrap(), vec![(f.clone(), 1)]);
        assert!(f.is_irreducible().unwrap());
    }

    #[test]
    fn x2_plus_1_splits_mod_5() {
        let f5 = FieldSpec::fp(5).unwrap();
        let f = Poly::from_ints(f5, &[1, 0, 1]);
        let fs = f.factor().unwrap();
        assert_eq!(
            fs,
            vec![
                (Poly::from_ints(f5, &[2, 1]), 1),
                (Poly::from_ints(f5, &[3, 1]), 1)
            ]
        );
        // hand check: (x+2)(x+3) = x^2 + 5x + 6 = x^2 + 1 mod 5
        assert_eq!(fs[0].0.mul(&fs[1].0), f);
    }

    #[test]
    fn mixed_multiplicities_over_q() {
        // (x+1)^2 (x^2+1) (x-3)
        let f = q(&[1, 1]).pow(2).mul(&q(&[1, 0, 1])).mul(&q(&[-3, 1]));
        let fs = f.factor().unwrap();
        assert_eq!(
            fs,
            vec![(q(&[-3, 1]), 1), (q(&[1, 0, 1]), 1), (q(&[1, 1]), 2)]
        );
    }

    #[test]
    fn factor_multiplicative_on_coprime() {
        let a = q(&[-1, 1]).pow(2);
        let b = q(&[7, 0, 1]);
        let mut combined = a.factor().unwrap();
        combined.extend(b.factor().unwrap());
        combined.sort();
        assert_eq!(a.mul(&b).factor().unwrap(), combined);
    }

    #[test]
    fn degree_bound_is_an_error_not_a_wrong_answer() {
        let f = q(&[-1, 1]).pow(13);
        match f.factor() {
            Err(Error::DegreeBound { degree: 13, bound: 12 }) => {}
            other => panic!("expected degree-bound error, got {:?}", other),
        }
        let relaxed = FactorOpts {
            qdeg_bound: 16,
            ..FactorOpts::default()
        };
        assert_eq!(f.factor_with(&relaxed).unwrap(), vec![(q(&[-1, 1]), 13)]);
    }

    #[test]
    fn char2_trace_map_split() {
        let f2 = FieldSpec::fp(2).unwrap();
        // x^2 + x + 1 is the unique irreducible quadratic over F_2;
        // (x^2+x+1)(x+1)x = x^4 + x over F_2... use x^4 + x = x(x+1)(x^2+x+1).
        let f = Poly::from_ints(f2, &[0, 1, 0, 0, 1]);
        let fs = f.factor().unwrap();
        let expect = vec![
            (Poly::from_ints(f2, &[0, 1]), 1),
            (Poly::from_ints(f2, &[1, 1]), 1),
            (Poly::from_ints(f2, &[1, 1, 1]), 1),
        ];
        assert_eq!(fs, expect);
    }

    #[test]
    fn big_coefficients_still_exact() {
        // (x - 10^6)(x + 10^6 + 1): forces a large working prime.
        let f = q(&[-1_000_000, 1]).mul(&q(&[1_000_001, 1]));
        let fs = f.factor().unwrap();
        assert_eq!(fs, vec![(q(&[-1_000_000, 1]), 1), (q(&[1_000_001, 1]), 1)]);
    }

    #[test]
    fn rational_coefficients() {
        // (x - 1/2)(x - 1/3) = x^2 - 5/6 x + 1/6
        let half = FieldSpec::Q.from_ratio(-1, 2).unwrap();
        let third = FieldSpec::Q.from_ratio(-1, 3).unwrap();
        let a = Poly::from_coeffs(FieldSpec::Q, vec![half, FieldSpec::Q.one()]);
        let b = Poly::from_coeffs(FieldSpec::Q, vec![third, FieldSpec::Q.one()]);
        let fs = a.mul(&b).factor().unwrap();
        let mut expect = vec![(a, 1), (b, 1)];
        expect.sort();
        assert_eq!(fs, expect);
    }

    #[test]
    fn deterministic_across_calls() {
        let f7 = FieldSpec::fp(7).unwrap();
        // x^6 - 1 splits into all six linear factors over F_7.
        let f = Poly::from_ints(f7, &[-1, 0, 0, 0, 0, 0, 1]);
        let a = f.factor().unwrap();
        let b = f.factor().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        assert!(a.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }
}
