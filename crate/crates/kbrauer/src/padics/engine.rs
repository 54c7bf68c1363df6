//! Working context for computations in Z/p^N: polynomial arithmetic,
//! factorization mod p, Hensel lifting of coprime blocks, and
//! valuation-aware linear algebra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Arithmetic modulo p^N with BigInt representatives in [0, p^N).
#[derive(Debug, Clone)]
pub struct ZpContext {
    pub p: u64,
    pub n: i64,
    pub modulus: BigInt,
}

impl ZpContext {
    pub fn new(p: u64, n: i64) -> Self {
        ZpContext { p, n, modulus: arith::big_pow(p, n as u64) }
    }

    pub fn reduce(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.modulus)
    }

    /// Valuation of x as an element of Z/p^N; values ≥ N are reported as N.
    pub fn val(&self, x: &BigInt) -> i64 {
        let r = self.reduce(x);
        if r.is_zero() {
            return self.n;
        }
        arith::split_valuation(&r, self.p).0 as i64
    }

    /// Inverse of a unit mod p^N.
    pub fn inv(&self, x: &BigInt) -> Result<BigInt> {
        let (g, s, _) = arith::ext_gcd(&self.reduce(x), &self.modulus);
        if !g.is_one() {
            return Err(Error::internal("non-unit inverse in Z/p^N"));
        }
        Ok(s.mod_floor(&self.modulus))
    }

    /// Exact division by p^k (errors when not divisible to precision).
    pub fn divide_exact_pk(&self, x: &BigInt, k: i64) -> Result<BigInt> {
        if k == 0 {
            return Ok(self.reduce(x));
        }
        let r = self.reduce(x);
        if r.is_zero() {
            return Ok(r);
        }
        let pk = arith::big_pow(self.p, k as u64);
        let (q, rem) = r.div_rem(&pk);
        if !rem.is_zero() {
            return Err(Error::precision("inexact division by p^k"));
        }
        Ok(q)
    }

    // ----- dense polynomial arithmetic over Z/p^N (low degree first) -----

    pub fn poly_trim(&self, f: &mut Vec<BigInt>) {
        while f.last().map(|c| self.reduce(c).is_zero()).unwrap_or(false) {
            f.pop();
        }
    }

    pub fn poly_reduce(&self, f: &[BigInt]) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = f.iter().map(|c| self.reduce(c)).collect();
        self.poly_trim(&mut out);
        out
    }

    pub fn poly_add(&self, f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); f.len().max(g.len())];
        for (i, c) in f.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in g.iter().enumerate() {
            out[i] += c;
        }
        self.poly_reduce(&out)
    }

    pub fn poly_sub(&self, f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); f.len().max(g.len())];
        for (i, c) in f.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in g.iter().enumerate() {
            out[i] -= c;
        }
        self.poly_reduce(&out)
    }

    pub fn poly_mul(&self, f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        self.poly_reduce(&out)
    }

    pub fn poly_scale(&self, f: &[BigInt], c: &BigInt) -> Vec<BigInt> {
        self.poly_reduce(&f.iter().map(|a| a * c).collect::<Vec<_>>())
    }

    /// Division with remainder by a monic divisor.
    pub fn poly_divrem_monic(&self, f: &[BigInt], g: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let g = self.poly_reduce(g);
        assert!(!g.is_empty(), "division by zero polynomial");
        debug_assert!(self.reduce(&(g.last().unwrap() - BigInt::one())).is_zero(), "divisor not monic");
        let mut rem = self.poly_reduce(f);
        if rem.len() < g.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - g.len() + 1];
        while rem.len() >= g.len() {
            let k = rem.len() - g.len();
            let c = rem.last().unwrap().clone();
            quot[k] = c.clone();
            for (i, b) in g.iter().enumerate() {
                let v = &rem[k + i] - &c * b;
                rem[k + i] = self.reduce(&v);
            }
            self.poly_trim(&mut rem);
            if rem.len() >= g.len() && rem.len() + g.len() == 0 {
                break;
            }
            if rem.len() > k + g.len() {
                break; // should not happen
            }
            if rem.len() == k + g.len() {
                // leading term did not cancel: non-exact arithmetic guard
                break;
            }
        }
        (self.poly_reduce(&quot), rem)
    }

    pub fn poly_eval(&self, f: &[BigInt], x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in f.iter().rev() {
            acc = self.reduce(&(acc * x + c));
        }
        acc
    }

    pub fn poly_derivative(&self, f: &[BigInt]) -> Vec<BigInt> {
        let d: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        self.poly_reduce(&d)
    }

    /// Minimum coefficient valuation (Gauss valuation); N for the zero poly.
    pub fn poly_val(&self, f: &[BigInt]) -> i64 {
        f.iter().map(|c| self.val(c)).min().unwrap_or(self.n)
    }
}

// ----- arithmetic mod p on u64 polynomials (residue computations) -----

/// Dense polynomials over F_p, low degree first, coefficients in [0, p).
#[derive(Debug, Clone, PartialEq, Eq)]

pub struct FpCtx {
    pub p: u64,
}

impl FpCtx {
    pub fn new(p: u64) -> Self {
        FpCtx { p }
    }

    pub fn trim(&self, f: &mut Vec<u64>) {
        while f.last() == Some(&0) {
            f.pop();
        }
    }

    pub fn add(&self, f: &[u64], g: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; f.len().max(g.len())];
        for (i, &c) in f.iter().enumerate() {
            out[i] = (out[i] + c) % self.p;
        }
        for (i, &c) in g.iter().enumerate() {
            out[i] = (out[i] + c) % self.p;
        }
        self.trim(&mut out);
        out
    }

    pub fn sub(&self, f: &[u64], g: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; f.len().max(g.len())];
        for (i, &c) in f.iter().enumerate() {
            out[i] = (out[i] + c) % self.p;
        }
        for (i, &c) in g.iter().enumerate() {
            out[i] = (out[i] + self.p - c % self.p) % self.p;
        }
        self.trim(&mut out);
        out
    }

    pub fn mul(&self, f: &[u64], g: &[u64]) -> Vec<u64> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = (out[i + j] + arith::mod_mul_u64(a, b, self.p)) % self.p;
            }
        }
        self.trim(&mut out);
        out
    }

    pub fn divrem(&self, f: &[u64], g: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let mut g = g.to_vec();
        self.trim(&mut g);
        assert!(!g.is_empty());
        let lead_inv = arith::mod_inv_u64(*g.last().unwrap(), self.p).expect("leading coeff unit");
        let mut rem = f.to_vec();
        self.trim(&mut rem);
        if rem.len() < g.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![0u64; rem.len() - g.len() + 1];
        while rem.len() >= g.len() && !rem.is_empty() {
            let k = rem.len() - g.len();
            let c = arith::mod_mul_u64(*rem.last().unwrap(), lead_inv, self.p);
            quot[k] = c;
            for (i, &b) in g.iter().enumerate() {
                let sub = arith::mod_mul_u64(c, b, self.p);
                rem[k + i] = (rem[k + i] + self.p - sub) % self.p;
            }
            self.trim(&mut rem);
        }
        self.trim(&mut quot);
        (quot, rem)
    }

    pub fn gcd(&self, f: &[u64], g: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (f.to_vec(), g.to_vec());
        self.trim(&mut a);
        self.trim(&mut b);
        while !b.is_empty() {
            let (_, r) = self.divrem(&a, &b);
            a = b;
            b = r;
        }
        if let Some(&lead) = a.last() {
            let inv = arith::mod_inv_u64(lead, self.p).unwrap();
            for c in a.iter_mut() {
                *c = arith::mod_mul_u64(*c, inv, self.p);
            }
        }
        a
    }

    pub fn pow_mod(&self, f: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = self.divrem(f, m).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.divrem(&self.mul(&acc, &base), m).1;
            }
            base = self.divrem(&self.mul(&base, &base), m).1;
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self, f: &[u64]) -> Vec<u64> {
        let mut out: Vec<u64> = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| arith::mod_mul_u64(c, (i as u64) % self.p, self.p))
            .collect();
        self.trim(&mut out);
        out
    }

    /// Full factorization over F_p (Berlekamp with deterministic splitting;
    /// p is desk-small).  Returns (monic irreducible, multiplicity).
    pub fn factor(&self, f: &[u64]) -> Vec<(Vec<u64>, u32)> {
        let mut f = f.to_vec();
        self.trim(&mut f);
        assert!(!f.is_empty());
        // make monic
        let inv = arith::mod_inv_u64(*f.last().unwrap(), self.p).unwrap();
        for c in f.iter_mut() {
            *c = arith::mod_mul_u64(*c, inv, self.p);
        }
        let mut out: Vec<(Vec<u64>, u32)> = Vec::new();
        self.factor_rec(&f, 1, &mut out);
        out.sort();
        // merge duplicates
        let mut merged: Vec<(Vec<u64>, u32)> = Vec::new();
        for (g, m) in out {
            if let Some(last) = merged.last_mut() {
                if last.0 == g {
                    last.1 += m;
                    continue;
                }
            }
            merged.push((g, m));
        }
        merged
    }

    fn factor_rec(&self, f: &[u64], mult: u32, out: &mut Vec<(Vec<u64>, u32)>) {
        if f.len() <= 1 {
            return;
        }
        if f.len() == 2 {
            out.push((self.monic(f), mult));
            return;
        }
        let df = self.derivative(f);
        if df.is_empty() {
            // f = g(x^p); over F_p the p-th root just compresses exponents
            let mut g = Vec::new();
            let p = self.p as usize;
            let mut i = 0;
            while i < f.len() {
                g.push(f[i]);
                i += p;
            }
            self.factor_rec(&g, mult * self.p as u32, out);
            return;
        }
        let g = self.gcd(f, &df);
        if g.len() > 1 {
            let (q, _) = self.divrem(f, &g);
            self.factor_rec(&q, mult, out);
            // factors of g are repeated factors of f: recurse and merge
            let mut inner = Vec::new();
            self.factor_rec(&g, mult, &mut inner);
            for (h, _m) in inner {
                // each factor of g divides q-part too; adjust by counting
                let mut fm = f.to_vec();
                let mut count = 0u32;
                loop {
                    let (q2, r2) = self.divrem(&fm, &h);
                    if !r2.is_empty() {
                        break;
                    }
                    count += 1;
                    fm = q2;
                }
                // replace the entries pushed for h by the true multiplicity
                out.retain(|(hh, _)| hh != &h);
                out.push((h, mult * count));
            }
            return;
        }
        // squarefree: Berlekamp
        self.berlekamp_squarefree(f, mult, out);
    }

    fn monic(&self, f: &[u64]) -> Vec<u64> {
        let mut f = f.to_vec();
        let inv = arith::mod_inv_u64(*f.last().unwrap(), self.p).unwrap();
        for c in f.iter_mut() {
            *c = arith::mod_mul_u64(*c, inv, self.p);
        }
        f
    }

    fn berlekamp_squarefree(&self, f: &[u64], mult: u32, out: &mut Vec<(Vec<u64>, u32)>) {
        let n = f.len() - 1;
        // Berlekamp matrix: columns x^{p·i} mod f for i = 0..n
        let xp = self.pow_mod(&[0, 1], self.p, f);
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(n);
        let mut cur = vec![1u64];
        for _ in 0..n {
            let mut c = cur.clone();
            c.resize(n, 0);
            cols.push(c);
            cur = self.divrem(&self.mul(&cur, &xp), f).1;
        }
        // kernel of (Q − I) over F_p
        let mut m = vec![vec![0u64; n]; n];
        for (i, col) in cols.iter().enumerate() {
            for (j, &v) in col.iter().enumerate() {
                m[j][i] = v;
            }
            m[i][i] = (m[i][i] + self.p - 1) % self.p;
        }
        let kernel = fp_kernel(&m, self.p);
        if kernel.len() <= 1 {
            out.push((self.monic(f), mult));
            return;
        }
        // split with kernel polynomials
        let mut pieces = vec![f.to_vec()];
        for v in kernel.iter().skip(1) {
            let mut h = v.clone();
            self.trim(&mut h);
            let mut next = Vec::new();
            for piece in pieces {
                if piece.len() - 1 <= 1 {
                    next.push(piece);
                    continue;
                }
                let mut remaining = piece.clone();
                let mut split_any = false;
                for c in 0..self.p {
                    if remaining.len() <= 2 {
                        break;
                    }
                    let mut hc = h.clone();
                    if hc.is_empty() {
                        hc = vec![0];
                    }
                    hc[0] = (hc[0] + self.p - c) % self.p;
                    let g = self.gcd(&remaining, &hc);
                    if g.len() > 1 && g.len() < remaining.len() {
                        let (q, _) = self.divrem(&remaining, &g);
                        next.push(g);
                        remaining = q;
                        split_any = true;
                    }
                }
                let _ = split_any;
                next.push(remaining);
            }
            pieces = next.into_iter().filter(|g| g.len() > 1).collect();
            if pieces.len() == kernel.len() {
                break;
            }
        }
        for piece in pieces {
            out.push((self.monic(&piece), mult));
        }
    }
}

/// Kernel basis of a square matrix over F_p (rows of the matrix act on
/// column vectors); vectors returned as coefficient rows.
pub fn fp_kernel(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivot_col_of_row = vec![usize::MAX; rows];
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] % p != 0) else { continue };
        a.swap(r, pr);
        let inv = arith::mod_inv_u64(a[r][c], p).unwrap();
        for x in a[r].iter_mut() {
            *x = arith::mod_mul_u64(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let factor = a[i][c];
                for j in 0..cols {
                    let sub = arith::mod_mul_u64(factor, a[r][j], p);
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
        }
        pivot_col_of_row[r] = c;
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for c in 0..cols {
        if pivot_cols.contains(&c) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[c] = 1;
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            if pc != usize::MAX {
                v[pc] = (p - a[row][c] % p) % p;
            }
        }
        basis.push(v);
    }
    basis
}

/// Multi-factor Hensel lifting: given monic f and pairwise-coprime monic
/// blocks mod p with f ≡ ∏ blocks (mod p), lifts the blocks to mod p^N.
pub fn hensel_lift_blocks(
    ctx: &ZpContext,
    f: &[BigInt],
    blocks_mod_p: &[Vec<u64>],
) -> Result<Vec<Vec<BigInt>>> {
    if blocks_mod_p.len() == 1 {
        return Ok(vec![ctx.poly_reduce(f)]);
    }
    let fp = FpCtx::new(ctx.p);
    // split off the first block against the product of the rest
    let g0 = &blocks_mod_p[0];
    let mut h0 = vec![1u64];
    for b in &blocks_mod_p[1..] {
        h0 = fp.mul(&h0, b);
    }
    let (g, h) = hensel_lift_pair(ctx, f, g0, &h0)?;
    let mut out = vec![g];
    out.extend(hensel_lift_blocks(ctx, &h, &blocks_mod_p[1..])?);
    Ok(out)
}

/// Lift f ≡ g·h (mod p) with g, h monic coprime mod p to a factorization
/// mod p^N, digit by digit.
fn hensel_lift_pair(
    ctx: &ZpContext,
    f: &[BigInt],
    g0: &[u64],
    h0: &[u64],
) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let p = ctx.p;
    let fp = FpCtx::new(p);
    // Bézout: s·g + t·h ≡ 1 mod p
    let (s, t) = fp_bezout(&fp, g0, h0)?;
    let to_big = |v: &[u64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<BigInt>>();
    let mut g = to_big(g0);
    let mut h = to_big(h0);
    for m in 1..ctx.n {
        let pm = arith::big_pow(p, m as u64);
        let prod = ctx.poly_mul(&g, &h);
        let diff = ctx.poly_sub(f, &prod);
        if diff.is_empty() {
            continue;
        }
        // d = (f − gh)/p^m mod p
        let mut d_mod_p = Vec::with_capacity(diff.len());
        for c in &diff {
            let (q, r) = c.div_rem(&pm);
            if !r.is_zero() {
                return Err(Error::internal("hensel: nonzero below current stage"));
            }
            d_mod_p.push((q.mod_floor(&BigInt::from(p))).to_string().parse::<u64>().unwrap());
        }
        fp.trim(&mut d_mod_p);
        if d_mod_p.is_empty() {
            continue;
        }
        // solve u·h + v·g ≡ d (mod p), deg u < deg g, deg v < deg h
        let u = fp.divrem(&fp.mul(&t, &d_mod_p), g0).1;
        let v = fp.divrem(&fp.mul(&s, &d_mod_p), h0).1;
        for (i, &c) in u.iter().enumerate() {
            g[i] = ctx.reduce(&(&g[i] + BigInt::from(c) * &pm));
        }
        for (i, &c) in v.iter().enumerate() {
            h[i] = ctx.reduce(&(&h[i] + BigInt::from(c) * &pm));
        }
    }
    Ok((ctx.poly_reduce(&g), ctx.poly_reduce(&h)))
}

/// Extended Euclid over F_p[x]: returns (s, t) with s·g + t·h = 1.
fn fp_bezout(fp: &FpCtx, g: &[u64], h: &[u64]) -> Result<(Vec<u64>, Vec<u64>)> {
    let (mut r0, mut r1) = (g.to_vec(), h.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp.divrem(&r0, &r1);
        let new_s = fp.sub(&s0, &fp.mul(&q, &s1));
        let new_t = fp.sub(&t0, &fp.mul(&q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, new_s);
        (t0, t1) = (t1, new_t);
    }
    if r0.len() != 1 {
        return Err(Error::internal("blocks not coprime mod p"));
    }
    let inv = arith::mod_inv_u64(r0[0], fp.p).unwrap();
    let scale = |v: &[u64]| v.iter().map(|&c| arith::mod_mul_u64(c, inv, fp.p)).collect::<Vec<_>>();
    Ok((scale(&s0), scale(&t0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_factor_basic() {
        let fp = FpCtx::new(5);
        // x² − 6 ≡ (x−1)(x+1)·... mod 5: x²−1 = (x+1)(x+4)
        let f = vec![4u64, 0, 1];
        let fs = fp.factor(&f);
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(_, m)| *m == 1));
        // irreducible quadratic x² + 2 mod 5
        let g = vec![2u64, 0, 1];
        let gs = fp.factor(&g);
        assert_eq!(gs, vec![(vec![2, 0, 1], 1)]);
        // (x+1)^2(x+2) mod 5
        let h = fp.mul(&fp.mul(&[1, 1], &[1, 1]), &[2, 1]);
        let hs = fp.factor(&h);
        assert_eq!(hs, vec![(vec![1, 1], 2), (vec![2, 1], 1)]);
    }

    #[test]
    fn fp_factor_big_power() {
        let fp = FpCtx::new(3);
        // x^9 − x = x(x−1)(x+1)·(irreducibles): factor of x^3 − x is cube-ish
        let mut f = vec![0u64; 10];
        f[9] = 1;
        f[1] = 2;
        let fs = fp.factor(&f);
        let total: usize = fs.iter().map(|(g, m)| (g.len() - 1) * *m as usize).sum();
        assert_eq!(total, 9);
    }

    #[test]
    fn hensel_blocks_reconstruct() {
        let ctx = ZpContext::new(5, 30);
        // f = (x²−6)(x²−5·7)·(x−2) over Z: blocks mod 5
        let f1 = vec![BigInt::from(-6), BigInt::zero(), BigInt::one()];
        let f2 = vec![BigInt::from(-35), BigInt::zero(), BigInt::one()];
        let f3 = vec![BigInt::from(-2), BigInt::one()];
        let f = ctx.poly_mul(&ctx.poly_mul(&f1, &f2), &f3);
        let fp = FpCtx::new(5);
        let fbar: Vec<u64> = f.iter().map(|c| c.mod_floor(&BigInt::from(5)).to_string().parse().unwrap()).collect();
        let blocks: Vec<Vec<u64>> = fp.factor(&fbar).into_iter().map(|(g, m)| {
            let mut acc = vec![1u64];
            for _ in 0..m {
                acc = fp.mul(&acc, &g);
            }
            acc
        }).collect();
        let lifted = hensel_lift_blocks(&ctx, &f, &blocks).unwrap();
        let mut prod = vec![BigInt::one()];
        for l in &lifted {
            prod = ctx.poly_mul(&prod, l);
        }
        assert_eq!(ctx.poly_reduce(&prod), ctx.poly_reduce(&f));
    }

    #[test]
    fn kernel_mod_p() {
        // rank-1 matrix over F_5
        let m = vec![vec![1u64, 2, 3], vec![2, 4, 6 % 5], vec![0, 0, 0]];
        let k = fp_kernel(&m, 5);
        assert_eq!(k.len(), 2);
        for v in k {
            let r0 = (v[0] + 2 * v[1] + 3 * v[2]) % 5;
            assert_eq!(r0, 0);
        }
    }
}
