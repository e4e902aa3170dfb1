//! Dense univariate polynomials over an exact field.
//!
//! The canonical form used throughout the ideal layer is: monic, with a
//! nonzero constant term. [`Poly::normalize`] brings any nonzero polynomial
//! into this form by stripping the largest power of `x` and rescaling, which
//! turns conjugacy in the Laurent ring `K[x, x^-1]` into plain equality.

use std::fmt;

use crate::field::{Coeff, FieldSpec};
use crate::{Error, Result};

pub use crate::poly_factor::FactorOpts;
pub use crate::poly_parse::parse_poly;

/// Coefficients stored constant-first, trailing zeros trimmed; the zero
/// polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Coeff>,
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Poly {
        Poly {
            field,
            coeffs: vec![],
        }
    }

    pub fn one(field: FieldSpec) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn x(field: FieldSpec) -> Poly {
        Poly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    pub fn constant(field: FieldSpec, c: Coeff) -> Poly {
        Poly::from_coeffs(field, vec![c])
    }

    pub fn from_coeffs(field: FieldSpec, coeffs: Vec<Coeff>) -> Poly {
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    /// Convenience: build from small integers, constant first.
    pub fn from_ints(field: FieldSpec, ints: &[i64]) -> Poly {
        Poly::from_coeffs(field, ints.iter().map(|&n| field.from_i64(n)).collect())
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if self.field.is_zero(last) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Coeff {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Coeff> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, coeffs)
    }

    pub fn mul_scalar(&self, c: &Coeff) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let f = self.field;
        let d = divisor.coeffs.len();
        if self.coeffs.len() < d {
            return (Poly::zero(f), self.clone());
        }
        let lead_inv = f.inv(divisor.leading().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.coeffs.len() - d + 1];
        for i in (0..quot.len()).rev() {
            let c = f.mul(&rem[i + d - 1], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            quot[i] = c.clone();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(&rem[i + j], &f.mul(&c, b));
            }
        }
        (Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) if self.field.is_one(l) => self.clone(),
            Some(l) => self.mul_scalar(&self.field.inv(l)),
        }
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    /// Multiplicity of the root 0, i.e. the largest k with x^k | self.
    pub fn x_valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !self.field.is_zero(c))
            .unwrap_or(0)
    }

    /// Canonical form: strip the largest power of x, then rescale monic.
    /// `normalize(a * x^k * f) == normalize(f)` for any unit `a` and `k >= 0`.
    pub fn normalize(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let k = self.x_valuation();
        let f = self.field;
        Ok(Poly::from_coeffs(f, self.coeffs[k..].to_vec()).monic())
    }

    /// Canonical = monic with nonzero constant term.
    pub fn is_canonical(&self) -> bool {
        !self.is_zero()
            && self.field.is_one(self.leading().unwrap())
            && !self.field.is_zero(&self.coeff(0))
    }

    /// Monic gcd; `gcd(0, 0)` is 0 by convention.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic lcm; satisfies gcd * lcm = monic(self * other).
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let g = self.gcd(other);
        self.mul(other).div_exact(&g).monic()
    }

    /// Equality up to multiplication by a Laurent unit `a * x^k`.
    pub fn conjugate(&self, other: &Poly) -> Result<bool> {
        Ok(self.normalize()? == other.normalize()?)
    }

    /// Replace x by x^(1/n): inverse of inflation, defined when every
    /// exponent with a nonzero coefficient is a multiple of n.
    pub(crate) fn deflate(&self, n: usize) -> Poly {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .step_by(n)
            .cloned()
            .collect::<Vec<_>>();
        debug_assert!(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % n == 0 || f.is_zero(c)));
        Poly::from_coeffs(f, coeffs)
    }

    /// Square-free decomposition `f = Π part^mult` with the parts monic,
    /// square-free, and pairwise coprime. Handles p-th power collapse in
    /// characteristic p.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok(vec![]);
        }
        match self.field.characteristic() {
            0 => Ok(yun_decomposition(&f)),
            p => Ok(charp_decomposition(&f, p as usize)),
        }
    }

    /// Product of the distinct monic irreducible-free parts: `f / gcd(f, f')`
    /// in characteristic zero, with p-th power collapse handled in F_p.
    pub fn squarefree_part(&self) -> Result<Poly> {
        let parts = self.squarefree_decomposition()?;
        let mut acc = Poly::one(self.field);
        for (g, _) in parts {
            acc = acc.mul(&g);
        }
        Ok(acc.monic())
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        Ok(self
            .squarefree_decomposition()?
            .iter()
            .all(|(_, m)| *m == 1))
    }

    /// Complete factorization into monic irreducibles with exponents, sorted
    /// for determinism. See [`crate::poly_factor`] for the method.
    pub fn factor(&self) -> Result<Vec<(Poly, usize)>> {
        self.factor_with(&FactorOpts::default())
    }

    pub fn factor_with(&self, opts: &FactorOpts) -> Result<Vec<(Poly, usize)>> {
        crate::poly_factor::factor(self, opts)
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        self.is_irreducible_with(&FactorOpts::default())
    }

    pub fn is_irreducible_with(&self, opts: &FactorOpts) -> Result<bool> {
        if self.degree().unwrap_or(0) < 1 {
            return Ok(false);
        }
        let fs = self.factor_with(opts)?;
        Ok(fs.len() == 1 && fs[0].1 == 1)
    }
}

/// Yun's algorithm, characteristic zero. Input monic, degree >= 1.
fn yun_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let df = f.derivative();
    let a = f.gcd(&df);
    let mut b = f.div_exact(&a);
    let mut c = df.div_exact(&a);
    let mut out = vec![];
    let mut i = 1usize;
    loop {
        let d = c.sub(&b.derivative());
        if d.is_zero() {
            if b.degree().unwrap_or(0) >= 1 {
                out.push((b.monic(), i));
            }
            break;
        }
        let g = b.gcd(&d);
        if g.degree().unwrap_or(0) >= 1 {
            out.push((g.clone(), i));
        }
        b = b.div_exact(&g);
        c = d.div_exact(&g);
        i += 1;
    }
    out
}

/// Classical square-free decomposition in characteristic p, with recursion
/// on the deflated p-th power part.
fn charp_decomposition(f: &Poly, p: usize) -> Vec<(Poly, usize)> {
    if f.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let df = f.derivative();
    if df.is_zero() {
        // f = h(x^p) = h(x)^p over the prime field.
        let h = f.deflate(p);
        return charp_decomposition(&h.monic(), p)
            .into_iter()
            .map(|(g, e)| (g, e * p))
            .collect();
    }
    let mut t = f.gcd(&df);
    let mut w = f.div_exact(&t);
    let mut out = vec![];
    let mut i = 1usize;
    while w.degree().unwrap_or(0) >= 1 {
        let y = w.gcd(&t);
        let z = w.div_exact(&y);
        if z.degree().unwrap_or(0) >= 1 {
            out.push((z.monic(), i));
        }
        w = y;
        t = t.div_exact(&w);
        i += 1;
    }
    if t.degree().unwrap_or(0) >= 1 {
        let h = t.deflate(p);
        out.extend(
            charp_decomposition(&h.monic(), p)
                .into_iter()
                .map(|(g, e)| (g, e * p)),
        );
    }
    out.sort();
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(out, "0")?;
        } else {
            let f = self.field;
            let mut first = true;
            for (i, c) in self.coeffs.iter().enumerate().rev() {
                if f.is_zero(c) {
                    continue;
                }
                let (sign, mag) = if c.is_display_negative() {
                    ("-", f.neg(c))
                } else {
                    ("+", c.clone())
                };
                if first {
                    if sign == "-" {
                        write!(out, "-")?;
                    }
                    first = false;
                } else {
                    write!(out, " {} ", sign)?;
                }
                let show_coeff = i == 0 || !f.is_one(&mag);
                if show_coeff {
                    write!(out, "{}", f.display(&mag))?;
                }
                if i >= 1 {
                    if show_coeff {
                        write!(out, "*")?;
                    }
                    write!(out, "x")?;
                    if i > 1 {
                        write!(out, "^{}", i)?;
                    }
                }
            }
        }
        if let FieldSpec::Fp(p) = self.field {
            write!(out, " mod {}", p)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(ints: &[i64]) -> Poly {
        Poly::from_ints(FieldSpec::Q, ints)
    }

    #[test]
    fn normalize_strips_x_power_and_scales() {
        // 3x^3 + 3x^2 -> x + 1
        assert_eq!(q(&[0, 0, 3, 3]).normalize().unwrap(), q(&[1, 1]));
        // x - 1 already canonical
        assert_eq!(q(&[-1, 1]).normalize().unwrap(), q(&[-1, 1]));
        assert!(q(&[]).normalize().is_err());
    }

    #[test]
    fn normalize_over_f5() {
        let f5 = FieldSpec::fp(5).unwrap();
        // 2x^2 + 4x = 2x(x + 2) -> x + 2
        let p = Poly::from_ints(f5, &[0, 4, 2]);
        assert_eq!(p.normalize().unwrap(), Poly::from_ints(f5, &[2, 1]));
        // hand check: 2*(x+2)*x = 2x^2 + 4x in F_5
        let check = Poly::from_ints(f5, &[0, 2]).mul(&Poly::from_ints(f5, &[2, 1]));
        assert_eq!(check, p);
    }

    #[test]
    fn gcd_lcm_basics() {
        let a = q(&[1, 1]).pow(2).mul(&q(&[2, 1])); // (x+1)^2 (x+2)
        let b = q(&[1, 1]).mul(&q(&[3, 1])); // (x+1)(x+3)
        assert_eq!(a.gcd(&b), q(&[1, 1]));
        assert_eq!(q(&[1, 1]).gcd(&q(&[2, 1])), Poly::one(FieldSpec::Q));
        // gcd(f, 0) = monic(f)
        let f = q(&[2, 2]);
        assert_eq!(f.gcd(&Poly::zero(FieldSpec::Q)), q(&[1, 1]));
        // gcd * lcm = monic(a*b)
        assert_eq!(a.gcd(&b).mul(&a.lcm(&b)), a.mul(&b).monic());
    }

    #[test]
    fn squarefree_part_char0() {
        let f = q(&[1, 1]).pow(2).mul(&q(&[2, 1]));
        // (x+1)^2 (x+2) -> (x+1)(x+2) = x^2 + 3x + 2
        assert_eq!(f.squarefree_part().unwrap(), q(&[2, 3, 1]));
        assert_eq!(q(&[-1, 1]).squarefree_part().unwrap(), q(&[-1, 1]));
        // independent route: f / gcd(f, f') in characteristic 0
        let alt = f.div_exact(&f.gcd(&f.derivative())).monic();
        assert_eq!(f.squarefree_part().unwrap(), alt);
    }

    #[test]
    fn squarefree_part_f3_pth_power() {
        let f3 = FieldSpec::fp(3).unwrap();
        // x^3 + 1 = (x+1)^3 in F_3
        let f = Poly::from_ints(f3, &[1, 0, 0, 1]);
        assert_eq!(
            f.squarefree_part().unwrap(),
            Poly::from_ints(f3, &[1, 1])
        );
        let decomp = f.squarefree_decomposition().unwrap();
        assert_eq!(decomp, vec![(Poly::from_ints(f3, &[1, 1]), 3)]);
    }

    #[test]
    fn conjugate_up_to_laurent_unit() {
        // 2x^2 + 2x = 2x(x+1) ~ x+1
        assert!(q(&[0, 2, 2]).conjugate(&q(&[1, 1])).unwrap());
        assert!(!q(&[1, 1]).conjugate(&q(&[2, 1])).unwrap());
    }

    #[test]
    fn display_roundtrip_shapes() {
        assert_eq!(q(&[1, -3, 2]).to_string(), "2*x^2 - 3*x + 1");
        let f5 = FieldSpec::fp(5).unwrap();
        assert_eq!(Poly::from_ints(f5, &[3, 4, 1]).to_string(), "x^2 + 4*x + 3 mod 5");
    }
}
