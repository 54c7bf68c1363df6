//! Dense univariate polynomials over an abstract field, plus finite-field
//! root extraction.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Fq};

/// Coefficients low degree first; trailing zeros are trimmed on demand.
#[derive(Debug, Clone)]
pub struct Poly<E> {
    pub coeffs: Vec<E>,
}

impl<E: Clone + std::fmt::Debug> Poly<E> {
    pub fn new(coeffs: Vec<E>) -> Self {
        Poly { coeffs }
    }

    pub fn constant(c: E) -> Self {
        Poly { coeffs: vec![c] }
    }
}

pub fn trim<F: Field>(f: &F, p: &mut Poly<F::E>) {
    while p.coeffs.last().map(|c| f.is_zero(c)).unwrap_or(false) {
        p.coeffs.pop();
    }
}

pub fn degree<F: Field>(f: &F, p: &Poly<F::E>) -> Option<usize> {
    p.coeffs.iter().rposition(|c| !f.is_zero(c))
}

pub fn is_zero<F: Field>(f: &F, p: &Poly<F::E>) -> bool {
    degree(f, p).is_none()
}

pub fn zero<F: Field>(_f: &F) -> Poly<F::E> {
    Poly { coeffs: vec![] }
}

pub fn one<F: Field>(f: &F) -> Poly<F::E> {
    Poly { coeffs: vec![f.one()] }
}

pub fn x<F: Field>(f: &F) -> Poly<F::E> {
    Poly { coeffs: vec![f.zero(), f.one()] }
}

pub fn from_i64<F: Field>(f: &F, cs: &[i64]) -> Poly<F::E> {
    Poly { coeffs: cs.iter().map(|&c| f.from_i64(c)).collect() }
}

pub fn add<F: Field>(f: &F, a: &Poly<F::E>, b: &Poly<F::E>) -> Poly<F::E> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
        let y = b.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
        out.push(f.add(&x, &y));
    }
    let mut p = Poly { coeffs: out };
    trim(f, &mut p);
    p
}

pub fn sub<F: Field>(f: &F, a: &Poly<F::E>, b: &Poly<F::E>) -> Poly<F::E> {
    add(f, a, &neg(f, b))
}

pub fn neg<F: Field>(f: &F, a: &Poly<F::E>) -> Poly<F::E> {
    Poly { coeffs: a.coeffs.iter().map(|c| f.neg(c)).collect() }
}

pub fn scale<F: Field>(f: &F, a: &Poly<F::E>, c: &F::E) -> Poly<F::E> {
    let mut p = Poly { coeffs: a.coeffs.iter().map(|x| f.mul(x, c)).collect() };
    trim(f, &mut p);
    p
}

pub fn mul<F: Field>(f: &F, a: &Poly<F::E>, b: &Poly<F::E>) -> Poly<F::E> {
    if a.coeffs.is_empty() || b.coeffs.is_empty() {
        return zero(f);
    }
    let mut out = vec![f.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    let mut p = Poly { coeffs: out };
    trim(f, &mut p);
    p
}

pub fn pow<F: Field>(f: &F, a: &Poly<F::E>, mut e: u64) -> Poly<F::E> {
    let mut acc = one(f);
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(f, &acc, &base);
        }
        base = mul(f, &base, &base);
        e >>= 1;
    }
    acc
}

pub fn divrem<F: Field>(f: &F, a: &Poly<F::E>, b: &Poly<F::E>) -> Result<(Poly<F::E>, Poly<F::E>)> {
    let db = degree(f, b).ok_or_else(|| Error::domain("polynomial division by zero"))?;
    let lead_inv = f.inv(&b.coeffs[db])?;
    let mut rem = a.clone();
    trim(f, &mut rem);
    if rem.coeffs.len() <= db {
        return Ok((zero(f), rem));
    }
    let mut quot = vec![f.zero(); rem.coeffs.len() - db];
    while let Some(dr) = degree(f, &rem) {
        if dr < db {
            break;
        }
        let c = f.mul(&rem.coeffs[dr], &lead_inv);
        let k = dr - db;
        quot[k] = c.clone();
        for i in 0..=db {
            let t = f.sub(&rem.coeffs[k + i], &f.mul(&c, &b.coeffs[i]));
            rem.coeffs[k + i] = t;
        }
        trim(f, &mut rem);
    }
    let mut q = Poly { coeffs: quot };
    trim(f, &mut q);
    Ok((q, rem))
}

pub fn rem<F: Field>(f: &F, a: &Poly<F::E>, b: &Poly<F::E>) -> Result<Poly<F::E>> {
    Ok(divrem(f, a, b)?.1)
}

/// Monic gcd.
pub fn gcd<F: Field>(f: &F, a: &Poly<F::E>, b: &Poly<F::E>) -> Result<Poly<F::E>> {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(f, &mut x);
    trim(f, &mut y);
    while !is_zero(f, &y) {
        let r = rem(f, &x, &y)?;
        x = y;
        y = r;
    }
    if let Some(d) = degree(f, &x) {
        let inv = f.inv(&x.coeffs[d])?;
        x = scale(f, &x, &inv);
    }
    Ok(x)
}

pub fn eval<F: Field>(f: &F, a: &Poly<F::E>, at: &F::E) -> F::E {
    let mut acc = f.zero();
    for c in a.coeffs.iter().rev() {
        acc = f.add(&f.mul(&acc, at), c);
    }
    acc
}

pub fn derivative<F: Field>(f: &F, a: &Poly<F::E>) -> Poly<F::E> {
    let mut out = Vec::new();
    for (i, c) in a.coeffs.iter().enumerate().skip(1) {
        out.push(f.mul(c, &f.from_i64(i as i64)));
    }
    let mut p = Poly { coeffs: out };
    trim(f, &mut p);
    p
}

pub fn pow_mod<F: Field>(
    f: &F,
    a: &Poly<F::E>,
    e: &BigUint,
    m: &Poly<F::E>,
) -> Result<Poly<F::E>> {
    let mut acc = one(f);
    let mut base = rem(f, a, m)?;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = rem(f, &mul(f, &acc, &base), m)?;
        }
        base = rem(f, &mul(f, &base, &base), m)?;
    }
    Ok(acc)
}

/// All roots of a polynomial in F_q: gcd with x^q − x, then seeded
/// equal-degree splitting of the product of linear factors.
pub fn roots_fq(fq: &Fq, poly: &Poly<Vec<u64>>, seed: u64) -> Result<Vec<Vec<u64>>> {
    let mut p = poly.clone();
    trim(fq, &mut p);
    let Some(d) = degree(fq, &p) else {
        return Err(Error::domain("roots of the zero polynomial"));
    };
    if d == 0 {
        return Ok(vec![]);
    }
    let q = fq.order();
    let xq = pow_mod(fq, &x(fq), &q, &p)?;
    let lin = gcd(fq, &sub(fq, &xq, &x(fq)), &p)?;
    let mut out = Vec::new();
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let mut stack = vec![lin];
    let half: BigUint = (&q - BigUint::one()) / BigUint::from(2u32);
    let mut guard = 0usize;
    while let Some(g) = stack.pop() {
        guard += 1;
        if guard > 10_000 {
            return Err(Error::resource("root splitting budget exceeded"));
        }
        let Some(dg) = degree(fq, &g) else { continue };
        if dg == 0 {
            continue;
        }
        if dg == 1 {
            // root = −c0/c1
            let r = fq.neg(&fq.div(&g.coeffs[0], &g.coeffs[1])?);
            out.push(r);
            continue;
        }
        // random affine split: gcd(g, (x + a)^{(q−1)/2} − 1)
        let a: Vec<u64> = (0..fq.k).map(|_| rng.gen_range(0..fq.p)).collect();
        let shift = Poly::new(vec![a, fq.one()]);
        let t = pow_mod(fq, &shift, &half, &g)?;
        let h = gcd(fq, &sub(fq, &t, &one(fq)), &g)?;
        let dh = degree(fq, &h).unwrap_or(0);
        if dh == 0 || dh == dg {
            stack.push(g);
            continue;
        }
        let (quot, _) = divrem(fq, &g, &h)?;
        stack.push(h);
        stack.push(quot);
    }
    out.sort_by_key(|e| fq.elem_key(e));
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn divrem_roundtrip() {
        let q = Rationals;
        let a = from_i64(&q, &[1, 0, -3, 0, 1]);
        let b = from_i64(&q, &[1, 1]);
        let (quo, r) = divrem(&q, &a, &b).unwrap();
        let back = add(&q, &mul(&q, &quo, &b), &r);
        assert_eq!(back.coeffs, a.coeffs);
    }

    #[test]
    fn gcd_of_common_factor() {
        let q = Rationals;
        let a = from_i64(&q, &[-1, 0, 1]); // (x−1)(x+1)
        let b = from_i64(&q, &[1, 2, 1]); // (x+1)²
        let g = gcd(&q, &a, &b).unwrap();
        assert_eq!(g.coeffs, from_i64(&q, &[1, 1]).coeffs);
    }

    #[test]
    fn fq_roots() {
        let f7 = Fq::prime(7);
        // x³ − x has roots 0, 1, 6 in F₇
        let p = from_i64(&f7, &[0, -1, 0, 1]);
        let roots = roots_fq(&f7, &p, 1).unwrap();
        assert_eq!(roots, vec![vec![0], vec![1], vec![6]]);
        // x² + 1 has no roots in F₇ (7 ≡ 3 mod 4)
        let p = from_i64(&f7, &[1, 0, 1]);
        assert!(roots_fq(&f7, &p, 1).unwrap().is_empty());
        // but two roots in F₄₉
        let f49 = Fq::extension(7, 2).unwrap();
        let p = from_i64(&f49, &[1, 0, 1]);
        assert_eq!(roots_fq(&f49, &p, 1).unwrap().len(), 2);
    }
}
