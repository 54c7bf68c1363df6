//! Exact-field interface used by the curve machinery: Q, finite fields
//! F_{p^k}, and fixed-precision Q_p behind one trait, with
//! equality-to-precision semantics in the local case.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::padics::{hensel_sqrt, PadicElement};

pub trait Field {
    type E: Clone + std::fmt::Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_i64(&self, n: i64) -> Self::E;
    fn from_rational(&self, r: &BigRational) -> Result<Self::E>;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Result<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// Square root when one exists in the field.
    fn sqrt(&self, a: &Self::E) -> Result<Option<Self::E>>;

    fn div(&self, a: &Self::E, b: &Self::E) -> Result<Self::E> {
        Ok(self.mul(a, &self.inv(b)?))
    }
    fn eq(&self, a: &Self::E, b: &Self::E) -> bool {
        self.is_zero(&self.sub(a, b))
    }
    fn pow(&self, a: &Self::E, e: u64) -> Self::E {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

// ---------------------------------------------------------------------

/// The rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, r: &BigRational) -> Result<BigRational> {
        Ok(r.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sqrt(&self, a: &BigRational) -> Result<Option<BigRational>> {
        if a.is_negative() {
            return Ok(None);
        }
        if a.is_zero() {
            return Ok(Some(BigRational::zero()));
        }
        let (n, d) = (a.numer(), a.denom());
        match (arith::perfect_sqrt(n), arith::perfect_sqrt(d)) {
            (Some(sn), Some(sd)) => Ok(Some(BigRational::new(sn, sd))),
            _ => Ok(None),
        }
    }
}

// ---------------------------------------------------------------------

/// Finite field F_{p^k}, elements as coefficient vectors over F_p modulo a
/// fixed irreducible polynomial (deterministically chosen).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fq {
    pub p: u64,
    pub k: usize,
    /// monic modulus of degree k, low coefficients first, length k+1
    pub modulus: Vec<u64>,
}

impl Fq {
    pub fn prime(p: u64) -> Self {
        Fq { p, k: 1, modulus: vec![0, 1] }
    }

    /// F_{p^k} with a deterministic irreducible modulus.
    pub fn extension(p: u64, k: usize) -> Result<Self> {
        if k == 1 {
            return Ok(Fq::prime(p));
        }
        // enumerate monic polynomials x^k + Σ c_i x^i by counting
        let mut counter = 1u64;
        loop {
            if counter > 2_000_000 {
                return Err(Error::resource("no irreducible modulus found"));
            }
            let mut c = counter;
            let mut modulus = vec![0u64; k + 1];
            modulus[k] = 1;
            for slot in modulus.iter_mut().take(k) {
                *slot = c % p;
                c /= p;
            }
            if is_irreducible(p, &modulus) {
                return Ok(Fq { p, k, modulus });
            }
            counter += 1;
        }
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.k as u32)
    }

    /// Element from base-p digits of an index (canonical enumeration).
    pub fn element_from_index(&self, mut idx: u64) -> Vec<u64> {
        let mut v = vec![0u64; self.k];
        for slot in v.iter_mut() {
            *slot = idx % self.p;
            idx /= self.p;
        }
        v
    }

    pub fn pow_big(&self, a: &Vec<u64>, e: &BigUint) -> Vec<u64> {
        let mut acc = Field::one(self);
        let mut base = a.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
        }
        acc
    }

    pub fn frobenius(&self, a: &Vec<u64>) -> Vec<u64> {
        self.pow_big(a, &BigUint::from(self.p))
    }

    /// Canonical total order on elements (coefficient-vector comparison).
    pub fn elem_key(&self, a: &Vec<u64>) -> Vec<u64> {
        a.clone()
    }

    /// Roots in this field of a quadratic (or linear) polynomial with F_p
    /// coefficients, sorted canonically.
    pub fn small_poly_roots(&self, coeffs: &[u64]) -> Result<Vec<Vec<u64>>> {
        let mut cs: Vec<u64> = coeffs.iter().map(|&c| c % self.p).collect();
        while cs.last() == Some(&0) {
            cs.pop();
        }
        match cs.len() {
            0 | 1 => Ok(vec![]),
            2 => {
                // c0 + c1 x = 0
                let c1 = self.from_i64(cs[1] as i64);
                let c0 = self.from_i64(cs[0] as i64);
                Ok(vec![self.neg(&self.div(&c0, &c1)?)])
            }
            3 => {
                // quadratic formula, p odd
                let a = self.from_i64(cs[2] as i64);
                let b = self.from_i64(cs[1] as i64);
                let c = self.from_i64(cs[0] as i64);
                let disc = self.sub(&self.mul(&b, &b), &self.mul(&self.from_i64(4), &self.mul(&a, &c)));
                let Some(s) = self.sqrt(&disc)? else { return Ok(vec![]) };
                let inv2a = self.inv(&self.mul(&self.from_i64(2), &a))?;
                let r1 = self.mul(&self.sub(&self.neg(&b), &s), &inv2a);
                let r2 = self.mul(&self.add(&self.neg(&b), &s), &inv2a);
                let mut out = vec![r1, r2];
                out.sort_by_key(|e| self.elem_key(e));
                out.dedup();
                Ok(out)
            }
            _ => Err(Error::unsupported("small_poly_roots handles degree ≤ 2")),
        }
    }
}

fn is_irreducible(p: u64, modulus: &[u64]) -> bool {
    let k = modulus.len() - 1;
    let fq = Fq { p, k, modulus: modulus.to_vec() };
    // x^{p^k} ≡ x and gcd(x^{p^{k/q}} − x, f) = 1 for prime q | k
    let x: Vec<u64> = if k == 1 { vec![0] } else { fq.element_from_index(p) }; // the class of x
    let mut xp = x.clone();
    for _ in 0..k {
        xp = fq.frobenius(&xp);
    }
    if xp != x {
        return false;
    }
    let mut kk = k;
    let mut prime_divs = Vec::new();
    let mut d = 2;
    while d * d <= kk {
        if kk % d == 0 {
            prime_divs.push(d);
            while kk % d == 0 {
                kk /= d;
            }
        }
        d += 1;
    }
    if kk > 1 {
        prime_divs.push(kk);
    }
    for q in prime_divs {
        let mut xq = x.clone();
        for _ in 0..(k / q) {
            xq = fq.frobenius(&xq);
        }
        // gcd(f, x^{p^{k/q}} − x) must be 1: equivalently xq ≠ x would not
        // suffice in general, but for the subfield test on the generator it
        // is exactly the condition that x lies in no proper subfield, which
        // for a degree-k modulus is equivalent to irreducibility together
        // with the Frobenius-order check above only when f is squarefree.
        // We therefore additionally require f squarefree mod p.
        if xq == x {
            return false;
        }
    }
    // squarefree check: gcd(f, f') = 1
    let fpc = crate::padics::FpCtx::new(p);
    let df = fpc.derivative(modulus);
    if df.is_empty() {
        return false;
    }
    fpc.gcd(modulus, &df).len() == 1
}

impl Field for Fq {
    type E = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.k]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.k];
        v[0] = 1;
        v
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        let mut v = vec![0; self.k];
        v[0] = n.rem_euclid(self.p as i64) as u64;
        v
    }
    fn from_rational(&self, r: &BigRational) -> Result<Vec<u64>> {
        let p = BigInt::from(self.p);
        let num = r.numer().mod_floor_ref(&p);
        let den = r.denom().mod_floor_ref(&p);
        if den == 0 {
            return Err(Error::domain("denominator divisible by p"));
        }
        let dinv = arith::mod_inv_u64(den, self.p)
            .ok_or_else(|| Error::domain("denominator divisible by p"))?;
        let mut v = vec![0; self.k];
        v[0] = arith::mod_mul_u64(num, dinv, self.p);
        Ok(v)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b.iter()).map(|(&x, &y)| (x + y) % self.p).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b.iter()).map(|(&x, &y)| (x + self.p - y % self.p) % self.p).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|&x| (self.p - x % self.p) % self.p).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        if self.k == 1 {
            return vec![arith::mod_mul_u64(a[0], b[0], self.p)];
        }
        let mut prod = vec![0u64; 2 * self.k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + arith::mod_mul_u64(x, y, self.p)) % self.p;
            }
        }
        // reduce by the monic modulus
        for i in (self.k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus.iter().enumerate().take(self.k) {
                let idx = i - self.k + j;
                let sub = arith::mod_mul_u64(c, m, self.p);
                prod[idx] = (prod[idx] + self.p - sub) % self.p;
            }
        }
        prod.truncate(self.k);
        prod
    }
    fn inv(&self, a: &Vec<u64>) -> Result<Vec<u64>> {
        if Field::is_zero(self, a) {
            return Err(Error::domain("division by zero in finite field"));
        }
        // a^{q−2}
        let e = self.order() - BigUint::from(2u32);
        Ok(self.pow_big(a, &e))
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x % self.p == 0)
    }
    fn sqrt(&self, a: &Vec<u64>) -> Result<Option<Vec<u64>>> {
        if Field::is_zero(self, a) {
            return Ok(Some(self.zero()));
        }
        let q = self.order();
        let legendre = self.pow_big(a, &((&q - BigUint::one()) / BigUint::from(2u32)));
        if legendre != Field::one(self) {
            return Ok(None);
        }
        if (&q % BigUint::from(4u32)) == BigUint::from(3u32) {
            let e = (&q + BigUint::one()) / BigUint::from(4u32);
            return Ok(Some(self.pow_big(a, &e)));
        }
        // Tonelli–Shanks in F_q with a deterministic non-residue
        let one = BigUint::one();
        let mut s0 = 0u32;
        let mut qq = &q - &one;
        while (&qq % BigUint::from(2u32)).is_zero() {
            qq /= BigUint::from(2u32);
            s0 += 1;
        }
        let half = (&q - &one) / BigUint::from(2u32);
        let mut z = self.zero();
        for idx in 2..100_000u64 {
            let cand = self.element_from_index(idx);
            if Field::is_zero(self, &cand) {
                continue;
            }
            if self.pow_big(&cand, &half) != Field::one(self) {
                z = cand;
                break;
            }
        }
        if Field::is_zero(self, &z) {
            return Err(Error::resource("no quadratic non-residue found"));
        }
        let mut m = s0;
        let mut c = self.pow_big(&z, &qq);
        let mut t = self.pow_big(a, &qq);
        let mut r = self.pow_big(a, &((&qq + &one) / BigUint::from(2u32)));
        while t != Field::one(self) {
            let mut i = 0u32;
            let mut tt = t.clone();
            while tt != Field::one(self) {
                tt = self.mul(&tt, &tt);
                i += 1;
                if i == m {
                    return Ok(None);
                }
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Ok(Some(r))
    }
}

trait ModFloorRef {
    fn mod_floor_ref(&self, m: &BigInt) -> u64;
}

impl ModFloorRef for BigInt {
    fn mod_floor_ref(&self, m: &BigInt) -> u64 {
        use num_integer::Integer;
        self.mod_floor(m).to_u64().unwrap()
    }
}

// ---------------------------------------------------------------------

/// Fixed-precision Q_p as a field context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Qp {
    pub p: u64,
    pub prec: i64,
}

impl Qp {
    pub fn new(p: u64, prec: i64) -> Self {
        Qp { p, prec }
    }
}

impl Field for Qp {
    type E = PadicElement;

    fn zero(&self) -> PadicElement {
        PadicElement::zero(self.p, self.prec)
    }
    fn one(&self) -> PadicElement {
        PadicElement::from_i64(1, self.p, self.prec)
    }
    fn from_i64(&self, n: i64) -> PadicElement {
        PadicElement::from_i64(n, self.p, self.prec)
    }
    fn from_rational(&self, r: &BigRational) -> Result<PadicElement> {
        PadicElement::from_rational(r.numer(), r.denom(), self.p, self.prec)
    }
    fn add(&self, a: &PadicElement, b: &PadicElement) -> PadicElement {
        a.add(b)
    }
    fn sub(&self, a: &PadicElement, b: &PadicElement) -> PadicElement {
        a.sub(b)
    }
    fn neg(&self, a: &PadicElement) -> PadicElement {
        a.neg()
    }
    fn mul(&self, a: &PadicElement, b: &PadicElement) -> PadicElement {
        a.mul(b)
    }
    fn inv(&self, a: &PadicElement) -> Result<PadicElement> {
        a.inv()
    }
    fn is_zero(&self, a: &PadicElement) -> bool {
        a.is_zero()
    }
    fn sqrt(&self, a: &PadicElement) -> Result<Option<PadicElement>> {
        match hensel_sqrt(a) {
            Ok(s) => Ok(Some(s)),
            Err(Error::NoRoot(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fq_basic() {
        let f = Fq::extension(7, 2).unwrap();
        let a = f.element_from_index(9); // x + 2
        let b = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &b), Field::one(&f));
        // Frobenius has order 2
        let c = f.frobenius(&f.frobenius(&a));
        assert_eq!(c, a);
    }

    #[test]
    fn fq_sqrt() {
        for (p, k) in [(7u64, 1usize), (5, 2), (13, 2), (7, 3)] {
            let f = Fq::extension(p, k).unwrap();
            for idx in 1..20u64 {
                let a = f.element_from_index(idx);
                if Field::is_zero(&f, &a) {
                    continue;
                }
                let sq = f.mul(&a, &a);
                let r = f.sqrt(&sq).unwrap().unwrap();
                assert_eq!(f.mul(&r, &r), sq, "p={p} k={k} idx={idx}");
            }
        }
    }

    #[test]
    fn fq_small_roots() {
        // ζ₃ in F₇: roots of x²+x+1 are 2 and 4
        let f = Fq::prime(7);
        let roots = f.small_poly_roots(&[1, 1, 1]).unwrap();
        assert_eq!(roots, vec![vec![2], vec![4]]);
        // no cube roots of unity in F₅
        let f5 = Fq::prime(5);
        assert!(f5.small_poly_roots(&[1, 1, 1]).unwrap().is_empty());
        // in F₂₅ they exist
        let f25 = Fq::extension(5, 2).unwrap();
        assert_eq!(f25.small_poly_roots(&[1, 1, 1]).unwrap().len(), 2);
    }

    #[test]
    fn rationals_sqrt() {
        let q = Rationals;
        let r = q.sqrt(&BigRational::new(BigInt::from(9), BigInt::from(4))).unwrap();
        assert_eq!(r, Some(BigRational::new(BigInt::from(3), BigInt::from(2))));
        assert_eq!(q.sqrt(&q.from_i64(2)).unwrap(), None);
        assert_eq!(q.sqrt(&q.from_i64(-4)).unwrap(), None);
    }

    #[test]
    fn qp_field_ops() {
        let q5 = Qp::new(5, 30);
        let a = q5.from_i64(6);
        let s = q5.sqrt(&a).unwrap().unwrap();
        assert!(Field::eq(&q5, &q5.mul(&s, &s), &a));
        assert!(q5.sqrt(&q5.from_i64(2)).unwrap().is_none());
    }
}
