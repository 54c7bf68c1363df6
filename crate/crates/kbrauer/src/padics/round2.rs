//! Certified factorization over Q_p and local-field invariants via
//! maximal-order computation.
//!
//! Strategy per coprime mod-p block of the (squarefree, monic, integral)
//! input: a Newton-polygon fast path certifies one-segment totally
//! ramified factors outright; everything else goes through a
//! Pohst–Zassenhaus maximal-order loop (p-radical, ring of multipliers)
//! followed by idempotent decomposition of O/pO.  Components give the
//! irreducible factors, their residue/ramification degrees, and the exact
//! field discriminant valuation from the trace form on the maximal order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::engine::{fp_kernel, hensel_lift_blocks, FpCtx, ZpContext};
use super::{PadicElement, PadicPoly};
use crate::arith;
use crate::error::{Error, Result};

pub struct FactorInfo {
    pub poly: PadicPoly,
    pub degree: usize,
    pub e: usize,
    pub f: usize,
    pub disc_valuation: u64,
}

pub struct Analysis {
    pub factors: Vec<FactorInfo>,
}

/// Entry point: normalize, split into mod-p blocks, analyze each block.
pub fn analyze(input: &PadicPoly) -> Result<Analysis> {
    let p = input.p;
    let deg = input
        .degree()
        .ok_or_else(|| Error::precision("cannot factor a polynomial that vanishes to precision"))?;
    if deg == 0 {
        return Ok(Analysis { factors: vec![] });
    }
    let rel = input
        .coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.rel_prec())
        .min()
        .unwrap()
        .max(20);

    // monic normalization
    let lead = input.coeffs[deg].clone();
    let lead_inv = lead.inv()?;
    let monic: Vec<PadicElement> =
        input.coeffs[..=deg].iter().map(|c| c.mul(&lead_inv)).collect();

    // integral normalization: x = y / p^s
    let mut s = 0i64;
    for (i, c) in monic.iter().enumerate() {
        if let Some(v) = c.valuation() {
            if v < 0 && i < deg {
                let need = (-v + (deg - i) as i64 - 1) / (deg - i) as i64;
                s = s.max(need);
            }
        }
    }
    let n_work = rel;
    let ctx = ZpContext::new(p, n_work);
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(deg + 1);
    for (i, c) in monic.iter().enumerate() {
        if c.is_zero() {
            coeffs.push(BigInt::zero());
            continue;
        }
        let v = c.valuation().unwrap() + s * (deg - i) as i64;
        if v < 0 {
            return Err(Error::internal("integral normalization failed"));
        }
        let val = BigInt::from(c.unit_part().clone()) * arith::big_pow(p, v as u64);
        coeffs.push(ctx.reduce(&val));
    }

    // mod-p block split
    let fp = FpCtx::new(p);
    let fbar: Vec<u64> = coeffs
        .iter()
        .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
        .collect();
    let factors_mod_p = fp.factor(&fbar);
    let blocks_mod_p: Vec<Vec<u64>> = factors_mod_p
        .iter()
        .map(|(g, m)| {
            let mut acc = vec![1u64];
            for _ in 0..*m {
                acc = fp.mul(&acc, g);
            }
            acc
        })
        .collect();
    let blocks = hensel_lift_blocks(&ctx, &coeffs, &blocks_mod_p)?;

    let mut factors = Vec::new();
    for (block, (gbar, mult)) in blocks.iter().zip(factors_mod_p.iter()) {
        let infos = analyze_block(&ctx, block, gbar, *mult)?;
        factors.extend(infos);
    }

    // certification: the product of all factors must reconstruct the input
    let mut prod = vec![BigInt::one()];
    for f in &factors {
        prod = ctx.poly_mul(&prod, &f.0);
    }
    let diff = ctx.poly_sub(&prod, &coeffs);
    let cert = n_work - 8;
    if ctx.poly_val(&diff) < cert.max(4) {
        return Err(Error::precision("factor product fails to certify at working precision"));
    }

    // unscale back to the original variable and package
    let mut out = Vec::new();
    for (poly, e, f, d) in factors {
        let fdeg = poly.len() - 1;
        let mut cs = Vec::with_capacity(poly.len());
        for (j, c) in poly.iter().enumerate() {
            let shift = s * (j as i64 - fdeg as i64);
            let el = PadicElement::from_bigint(c, p, rel).shift(shift);
            cs.push(el);
        }
        out.push(FactorInfo {
            poly: PadicPoly::new(p, cs),
            degree: fdeg,
            e,
            f,
            disc_valuation: d,
        });
    }
    out.sort_by_key(|f| (f.degree, f.e, f.disc_valuation));
    Ok(Analysis { factors: out })
}

type RawFactor = (Vec<BigInt>, usize, usize, u64);

/// Analyze one block: f ≡ gbar^mult (mod p) with gbar irreducible.
fn analyze_block(
    ctx: &ZpContext,
    block: &[BigInt],
    gbar: &[u64],
    mult: u32,
) -> Result<Vec<RawFactor>> {
    let deg = block.len() - 1;
    if mult == 1 {
        // unramified over its residue block: irreducible with e = 1
        return Ok(vec![(ctx.poly_reduce(block), 1, deg, 0)]);
    }
    // fast path: linear residual root, one-segment polygon with coprime slope
    if gbar.len() == 2 {
        let c = (ctx.p - gbar[0] % ctx.p) % ctx.p; // root of gbar
        let shifted = taylor_shift(ctx, block, &BigInt::from(c));
        if let Some((h, e)) = pure_one_segment(ctx, &shifted) {
            if e == deg as i64 {
                let disc_poly_val = poly_disc_val(ctx, block)?;
                let index2 = (h - 1) * (e - 1);
                let d = disc_poly_val - index2;
                if d < 0 {
                    return Err(Error::precision("negative disc valuation in fast path"));
                }
                return Ok(vec![(ctx.poly_reduce(block), deg, 1, d as u64)]);
            }
        }
    }
    round2_block(ctx, block)
}

/// Taylor shift f(x + c) modulo p^N.
fn taylor_shift(ctx: &ZpContext, f: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); f.len()];
    for coef in f.iter().rev() {
        // out = out * (x + c) + coef
        let mut next = vec![BigInt::zero(); f.len()];
        for (i, v) in out.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            next[i] = ctx.reduce(&(&next[i] + v * c));
            if i + 1 < f.len() {
                let t = next[i + 1].clone();
                next[i + 1] = ctx.reduce(&(t + v));
            }
        }
        next[0] = ctx.reduce(&(&next[0] + coef));
        out = next;
    }
    out
}

/// If the Newton polygon of f (x-adic, translated so the repeated root is
/// at 0) is a single segment of slope h/e in lowest terms, returns (h, e).
fn pure_one_segment(ctx: &ZpContext, f: &[BigInt]) -> Option<(i64, i64)> {
    let deg = f.len() - 1;
    let v0 = ctx.val(&f[0]);
    if v0 >= ctx.n {
        return None;
    }
    // candidate slope from endpoints: (v0 − 0)/deg
    let g = num_integer::gcd(v0, deg as i64);
    let (h, e) = (v0 / g, deg as i64 / g);
    if e != deg as i64 {
        // gcd > 1: not certifiably irreducible from the polygon alone
        return None;
    }
    // check all points lie on or above the segment v(c_i) ≥ v0·(deg−i)/deg
    for (i, c) in f.iter().enumerate().take(deg) {
        let v = ctx.val(c);
        if v * deg as i64 * 1 < v0 * (deg - i) as i64 {
            return None;
        }
    }
    Some((h, e))
}

/// Valuation of disc(f) via a Sylvester determinant with valuation pivoting.
fn poly_disc_val(ctx: &ZpContext, f: &[BigInt]) -> Result<i64> {
    let n = f.len() - 1;
    let df = ctx.poly_derivative(f);
    if df.is_empty() {
        return Err(Error::domain("inseparable polynomial"));
    }
    let m = df.len() - 1;
    let size = n + m;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..m {
        for (j, c) in f.iter().enumerate() {
            mat[row][row + (n - j)] = c.clone();
        }
    }
    for row in 0..n {
        for (j, c) in df.iter().enumerate() {
            mat[m + row][row + (m - j)] = c.clone();
        }
    }
    let res_val = det_val(ctx, mat)?;
    // disc = ± Res(f, f')/lc(f); f is monic
    Ok(res_val)
}

/// Valuation of the determinant of a square matrix over Z/p^N by
/// valuation-pivot elimination (exact: multipliers are integral).
fn det_val(ctx: &ZpContext, mut m: Vec<Vec<BigInt>>) -> Result<i64> {
    let n = m.len();
    let mut total = 0i64;
    for col in 0..n {
        let pivot = (col..n)
            .map(|r| (ctx.val(&m[r][col]), r))
            .min()
            .ok_or_else(|| Error::internal("empty matrix"))?;
        let (pv, pr) = pivot;
        if pv >= ctx.n {
            return Err(Error::precision("determinant vanishes to working precision"));
        }
        total += pv;
        if total >= ctx.n - 4 {
            return Err(Error::precision("determinant valuation exceeds working precision"));
        }
        m.swap(col, pr);
        let unit = ctx.divide_exact_pk(&m[col][col], pv)?;
        let unit_inv = ctx.inv(&unit)?;
        for r in (col + 1)..n {
            let v = ctx.val(&m[r][col]);
            if v >= ctx.n {
                continue;
            }
            // multiplier = m[r][col]/m[col][col] = (u_r/unit)·p^{v−pv}, integral
            let ur = ctx.divide_exact_pk(&m[r][col], pv)?;
            let mult = ctx.reduce(&(ur * &unit_inv));
            for c in col..n {
                let sub = &m[col][c] * &mult;
                let t = &m[r][c] - sub;
                m[r][c] = ctx.reduce(&t);
            }
        }
    }
    Ok(total)
}

// ---------------------------------------------------------------------
// maximal order machinery
// ---------------------------------------------------------------------

/// An order in Q_p[x]/(B): upper-triangular basis over the power basis
/// with common denominator p^k.  Column j has its pivot at row j.
struct Order {
    /// columns[j][i] = entry at row i (coefficient of x^i), j-th basis vector
    cols: Vec<Vec<BigInt>>,
    denom: i64,
}

struct BlockCtx<'a> {
    ctx: &'a ZpContext,
    b: Vec<BigInt>,
    n: usize,
}

impl<'a> BlockCtx<'a> {
    /// Power-basis polynomial of basis column j (numerator; true value /p^k).
    fn basis_poly(&self, ord: &Order, j: usize) -> Vec<BigInt> {
        self.ctx.poly_reduce(&ord.cols[j])
    }

    /// Express a power-basis vector (numerator over p^k) in the order basis.
    /// Divisions must be exact to precision.
    fn express(&self, ord: &Order, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let n = self.n;
        let mut rem: Vec<BigInt> = (0..n)
            .map(|i| self.ctx.reduce(v.get(i).unwrap_or(&BigInt::zero())))
            .collect();
        let mut coords = vec![BigInt::zero(); n];
        for r in (0..n).rev() {
            let pv = self.ctx.val(&ord.cols[r][r]);
            let c = if self.ctx.val(&rem[r]) >= self.ctx.n {
                BigInt::zero()
            } else {
                let unit = self.ctx.divide_exact_pk(&ord.cols[r][r], pv)?;
                let num = self.ctx.divide_exact_pk(&rem[r], pv)?;
                self.ctx.reduce(&(num * self.ctx.inv(&unit)?))
            };
            if !c.is_zero() {
                for i in 0..=r {
                    let t = &rem[i] - &c * &ord.cols[r][i];
                    rem[i] = self.ctx.reduce(&t);
                }
            }
            coords[r] = c;
        }
        Ok(coords)
    }

    /// Product of basis elements i and j in order coordinates.
    /// True value b_i·b_j = (P_iP_j)/p^{2k}; coordinates solve T·c = P_iP_j/p^k.
    fn mult_coords(&self, ord: &Order, i: usize, j: usize) -> Result<Vec<BigInt>> {
        let prod = self.ctx.poly_mul(&self.basis_poly(ord, i), &self.basis_poly(ord, j));
        let (_, rem) = self.ctx.poly_divrem_monic(&prod, &self.b);
        let scaled: Result<Vec<BigInt>> =
            (0..self.n).map(|t| self.ctx.divide_exact_pk(rem.get(t).unwrap_or(&BigInt::zero()), ord.denom)).collect();
        self.express(ord, &scaled?)
    }

    /// Product of two order elements given in order coordinates.
    fn elem_mul(&self, ord: &Order, mt: &[Vec<Vec<BigInt>>], u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let c = self.ctx.reduce(&(&u[i] * &v[j]));
                for t in 0..n {
                    if !mt[i][j][t].is_zero() {
                        let w = &out[t] + &c * &mt[i][j][t];
                        out[t] = self.ctx.reduce(&w);
                    }
                }
            }
        }
        let _ = ord;
        out
    }
}

/// Upper-triangular HNF (valuation pivoting) of a set of columns spanning a
/// full-rank lattice in Z_p^n; columns of the result have pivot at their row.
fn hnf_full(ctx: &ZpContext, columns: Vec<Vec<BigInt>>, n: usize) -> Result<Vec<Vec<BigInt>>> {
    let mut work: Vec<Vec<BigInt>> = columns
        .into_iter()
        .map(|c| (0..n).map(|i| ctx.reduce(c.get(i).unwrap_or(&BigInt::zero()))).collect())
        .collect();
    let mut out: Vec<Option<Vec<BigInt>>> = vec![None; n];
    for r in (0..n).rev() {
        // select the column with minimal valuation at row r
        let mut best: Option<(i64, usize)> = None;
        for (idx, col) in work.iter().enumerate() {
            let v = ctx.val(&col[r]);
            if v < ctx.n && best.map(|(bv, _)| v < bv).unwrap_or(true) {
                best = Some((v, idx));
            }
        }
        let Some((pv, idx)) = best else {
            return Err(Error::precision("rank deficiency in lattice basis"));
        };
        let pivot_col = work.swap_remove(idx);
        let unit = ctx.divide_exact_pk(&pivot_col[r], pv)?;
        let unit_inv = ctx.inv(&unit)?;
        // normalize pivot entry to p^pv
        let norm: Vec<BigInt> = pivot_col.iter().map(|x| ctx.reduce(&(x * &unit_inv))).collect();
        for col in work.iter_mut() {
            let v = ctx.val(&col[r]);
            if v >= ctx.n {
                continue;
            }
            let mult = ctx.reduce(&ctx.divide_exact_pk(&col[r], pv)?);
            for i in 0..=r {
                let t = &col[i] - &mult * &norm[i];
                col[i] = ctx.reduce(&t);
            }
        }
        out[r] = Some(norm);
    }
    Ok(out.into_iter().map(|c| c.unwrap()).collect())
}

/// HNF of a possibly rank-deficient set of columns; returns (pivot_row, col).
fn hnf_partial(
    ctx: &ZpContext,
    columns: Vec<Vec<BigInt>>,
    n: usize,
) -> Vec<(usize, Vec<BigInt>)> {
    let mut work: Vec<Vec<BigInt>> = columns
        .into_iter()
        .map(|c| (0..n).map(|i| ctx.reduce(c.get(i).unwrap_or(&BigInt::zero()))).collect())
        .collect();
    let mut out = Vec::new();
    for r in (0..n).rev() {
        let mut best: Option<(i64, usize)> = None;
        for (idx, col) in work.iter().enumerate() {
            let v = ctx.val(&col[r]);
            if v < ctx.n - 6 && best.map(|(bv, _)| v < bv).unwrap_or(true) {
                best = Some((v, idx));
            }
        }
        let Some((pv, idx)) = best else { continue };
        let pivot_col = work.swap_remove(idx);
        let unit = ctx.divide_exact_pk(&pivot_col[r], pv).unwrap();
        let unit_inv = ctx.inv(&unit).unwrap();
        let norm: Vec<BigInt> = pivot_col.iter().map(|x| ctx.reduce(&(x * &unit_inv))).collect();
        for col in work.iter_mut() {
            let v = ctx.val(&col[r]);
            if v >= ctx.n {
                continue;
            }
            let mult = ctx.reduce(&ctx.divide_exact_pk(&col[r], pv).unwrap());
            for i in 0..=r {
                let t = &col[i] - &mult * &norm[i];
                col[i] = ctx.reduce(&t);
            }
        }
        out.push((r, norm));
    }
    out.reverse();
    out
}

/// Round 2 analysis of one block: returns the irreducible factors with
/// their (e, f, disc valuation).
fn round2_block(ctx: &ZpContext, block: &[BigInt]) -> Result<Vec<RawFactor>> {
    let n = block.len() - 1;
    let bc = BlockCtx { ctx, b: ctx.poly_reduce(block), n };
    let p = ctx.p;

    // O starts as Z_p[x]
    let mut ord = Order {
        cols: (0..n)
            .map(|j| {
                let mut c = vec![BigInt::zero(); n];
                c[j] = BigInt::one();
                c
            })
            .collect(),
        denom: 0,
    };

    // Pohst–Zassenhaus loop
    for _iteration in 0..(4 * n as i64 * ctx.n) {
        let mt = full_mult_table(&bc, &ord)?;
        let rad = radical_basis(&bc, &mt, n);
        // ideal I = radical lifted + p·O (order coordinates)
        let mut icols: Vec<Vec<BigInt>> = rad
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        for j in 0..n {
            let mut c = vec![BigInt::zero(); n];
            c[j] = BigInt::from(p);
            icols.push(c);
        }
        let ibasis = hnf_full(ctx, icols, n)?;
        // multiplier-ring system: for x = Σ c_i b_i / p, need Σ c_i (b_i r_j) ∈ pI
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let rgens: Vec<Vec<BigInt>> = ibasis.clone();
        for rj in &rgens {
            // products b_i · r_j in order coordinates
            let mut prods: Vec<Vec<BigInt>> = Vec::with_capacity(n);
            for i in 0..n {
                let mut ei = vec![BigInt::zero(); n];
                ei[i] = BigInt::one();
                prods.push(bc.elem_mul(&ord, &mt, &ei, rj));
            }
            // express each product in the I-basis, keep coordinates mod p
            let mut coords_mod_p: Vec<Vec<u64>> = Vec::with_capacity(n);
            for prod in &prods {
                let coords = express_in_triangular(ctx, &ibasis, prod)?;
                coords_mod_p
                    .push(coords.iter().map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap()).collect());
            }
            // rows indexed by coordinate slot t: Σ_i c_i coords[i][t] ≡ 0 mod p
            for t in 0..n {
                rows.push((0..n).map(|i| coords_mod_p[i][t]).collect());
            }
        }
        let kernel = fp_kernel(&rows, p);
        if kernel.is_empty() {
            break;
        }
        // enlarge: O' = O + Σ (kernel vectors)/p
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for c in &ord.cols {
            cols.push(c.iter().map(|x| ctx.reduce(&(x * BigInt::from(p)))).collect());
        }
        for kv in &kernel {
            // power-basis numerator of Σ c_i b_i (common denominator p^{k+1})
            let mut acc = vec![BigInt::zero(); n];
            for (i, &ci) in kv.iter().enumerate() {
                if ci == 0 {
                    continue;
                }
                for t in 0..n {
                    let v = &acc[t] + BigInt::from(ci) * &ord.cols[i][t];
                    acc[t] = ctx.reduce(&v);
                }
            }
            cols.push(acc);
        }
        let newcols = hnf_full(ctx, cols, n)?;
        let mut denom = ord.denom + 1;
        let mut newcols = newcols;
        // reduce common denominator when every entry is divisible by p
        loop {
            if denom == 0 {
                break;
            }
            let all_div = newcols
                .iter()
                .all(|c| c.iter().all(|x| ctx.val(x) >= 1));
            if !all_div {
                break;
            }
            for c in newcols.iter_mut() {
                for x in c.iter_mut() {
                    *x = ctx.divide_exact_pk(x, 1)?;
                }
            }
            denom -= 1;
        }
        if denom > ctx.n / 2 {
            return Err(Error::precision("maximal order index exceeds working precision"));
        }
        ord = Order { cols: newcols, denom };
    }

    // idempotent decomposition of O/pO
    let mt = full_mult_table(&bc, &ord)?;
    let comps = split_components(&bc, &ord, &mt)?;
    let mut out = Vec::new();
    for comp in comps {
        out.push(component_invariants(&bc, &ord, &mt, &comp)?);
    }
    Ok(out)
}

/// Full multiplication table: mt[i][j] = order coordinates of b_i·b_j.
fn full_mult_table(bc: &BlockCtx, ord: &Order) -> Result<Vec<Vec<Vec<BigInt>>>> {
    let n = bc.n;
    let mut mt = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let c = bc.mult_coords(ord, i, j)?;
            mt[j][i] = c.clone();
            mt[i][j] = c;
        }
    }
    Ok(mt)
}

/// Express a vector in a full triangular basis (pivot of column r at row r).
fn express_in_triangular(
    ctx: &ZpContext,
    basis: &[Vec<BigInt>],
    v: &[BigInt],
) -> Result<Vec<BigInt>> {
    let n = basis.len();
    let mut rem: Vec<BigInt> = (0..n).map(|i| ctx.reduce(&v[i])).collect();
    let mut coords = vec![BigInt::zero(); n];
    for r in (0..n).rev() {
        let pv = ctx.val(&basis[r][r]);
        let c = if ctx.val(&rem[r]) >= ctx.n {
            BigInt::zero()
        } else {
            let unit = ctx.divide_exact_pk(&basis[r][r], pv)?;
            let num = ctx.divide_exact_pk(&rem[r], pv)?;
            ctx.reduce(&(num * ctx.inv(&unit)?))
        };
        if !c.is_zero() {
            for i in 0..=r {
                let t = &rem[i] - &c * &basis[r][i];
                rem[i] = ctx.reduce(&t);
            }
        }
        coords[r] = c;
    }
    Ok(coords)
}

/// F_p-basis of the radical of O/pO: kernel of v ↦ v^{p^m}, p^m ≥ n.
fn radical_basis(bc: &BlockCtx, mt: &[Vec<Vec<BigInt>>], n: usize) -> Vec<Vec<u64>> {
    let p = bc.ctx.p;
    let pb = BigInt::from(p);
    // structure constants mod p
    let sc: Vec<Vec<Vec<u64>>> = mt
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect())
                .collect()
        })
        .collect();
    let mul = |u: &[u64], v: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n];
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                if v[j] == 0 {
                    continue;
                }
                let c = arith::mod_mul_u64(u[i], v[j], p);
                for t in 0..n {
                    out[t] = (out[t] + arith::mod_mul_u64(c, sc[i][j][t], p)) % p;
                }
            }
        }
        out
    };
    let mut q = 1u64;
    let mut m = 0u32;
    while (q as usize) < n {
        q *= p;
        m += 1;
    }
    let m = m.max(1);
    // columns of the F_p-linear map v ↦ v^{p^m}
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = vec![0u64; n];
        v[i] = 1;
        let mut acc = v;
        for _ in 0..m {
            // p-th power via repeated multiplication (p is small)
            let base = acc.clone();
            let mut powed = base.clone();
            for _ in 1..p {
                powed = mul(&powed, &base);
            }
            acc = powed;
        }
        cols.push(acc);
    }
    // kernel of the matrix with these columns
    let mut mrows = vec![vec![0u64; n]; n];
    for (i, col) in cols.iter().enumerate() {
        for (j, &x) in col.iter().enumerate() {
            mrows[j][i] = x;
        }
    }
    fp_kernel(&mrows, p)
}

struct Component {
    idempotent: Vec<BigInt>,
    basis: Vec<Vec<BigInt>>, // order coordinates, triangular columns
    pivot_rows: Vec<usize>,
}

/// Decompose the maximal order into its connected components via
/// idempotent lifting.
fn split_components(
    bc: &BlockCtx,
    ord: &Order,
    mt: &[Vec<Vec<BigInt>>],
) -> Result<Vec<Component>> {
    let n = bc.n;
    let ctx = bc.ctx;
    let p = ctx.p;
    let pb = BigInt::from(p);
    let sc: Vec<Vec<Vec<u64>>> = mt
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect())
                .collect()
        })
        .collect();
    let one = one_coords(bc, ord)?;

    let mulp = |u: &[u64], v: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n];
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                if v[j] == 0 {
                    continue;
                }
                let c = arith::mod_mul_u64(u[i], v[j], p);
                for t in 0..n {
                    out[t] = (out[t] + arith::mod_mul_u64(c, sc[i][j][t], p)) % p;
                }
            }
        }
        out
    };

    let rad = radical_basis(bc, mt, n);
    let one_p: Vec<u64> = one.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect();

    // quotient D/rad: basis = unit vectors at non-pivot positions of rad
    let (proj, lift_rows) = quotient_projection(&rad, n, p);
    let dim_bar = lift_rows.len();
    let mul_bar = |u: &[u64], v: &[u64]| -> Vec<u64> {
        let mut ul = vec![0u64; n];
        let mut vl = vec![0u64; n];
        for (t, &r) in lift_rows.iter().enumerate() {
            ul[r] = u[t];
            vl[r] = v[t];
        }
        apply_proj(&proj, &mulp(&ul, &vl))
    };
    let one_bar = apply_proj(&proj, &one_p);

    // split the semisimple quotient into fields
    let mut comps_bar: Vec<(Vec<u64>, Vec<Vec<u64>>)> = vec![(
        one_bar.clone(),
        (0..dim_bar)
            .map(|i| {
                let mut v = vec![0u64; dim_bar];
                v[i] = 1;
                v
            })
            .collect(),
    )];
    loop {
        let mut changed = false;
        let mut next = Vec::new();
        for (e, basis) in comps_bar {
            let dim = basis.len();
            if dim == 1 {
                next.push((e, basis));
                continue;
            }
            // find a basis element whose minimal polynomial splits
            let mut split_done = false;
            for z in &basis {
                let mp = minpoly_fp(z, &mul_bar, &e, dim_bar, p, dim)?;
                let fp = FpCtx::new(p);
                let facs = fp.factor(&mp);
                if facs.len() == 1 && facs[0].1 == 1 {
                    if facs[0].0.len() - 1 == dim {
                        // the component is the field generated by z
                        continue;
                    }
                    continue;
                }
                // CRT idempotents along the factorization of mp
                let mut pieces = Vec::new();
                for (g, m) in &facs {
                    let mut gm = vec![1u64];
                    for _ in 0..*m {
                        gm = fp.mul(&gm, g);
                    }
                    let (cof, _) = fp.divrem(&mp, &gm);
                    // u ≡ 1 mod gm, 0 mod mp/gm: u = cof·(cof^{-1} mod gm)
                    let inv = fp_poly_inverse_mod(&fp, &cof, &gm)?;
                    let upoly = fp.mul(&cof, &inv);
                    let eval = eval_poly_in_algebra(&upoly, z, &mul_bar, &e, dim_bar, p);
                    pieces.push(eval);
                }
                // refine this component
                for piece in pieces {
                    let pe = mul_bar(&piece, &e);
                    let sub_basis: Vec<Vec<u64>> = basis.iter().map(|b| mul_bar(&pe, b)).collect();
                    let sub = fp_column_space(&sub_basis, p);
                    if !sub.is_empty() {
                        next.push((pe, sub));
                    }
                }
                split_done = true;
                changed = true;
                break;
            }
            if !split_done {
                next.push((e, basis));
            }
        }
        comps_bar = next;
        if !changed {
            break;
        }
    }

    // lift idempotents: D/rad → D → O mod p^N
    let mut comps = Vec::new();
    for (ebar, _) in comps_bar {
        // lift to D (through the nilpotent radical)
        let mut e_d = vec![0u64; n];
        for (t, &r) in lift_rows.iter().enumerate() {
            e_d[r] = ebar[t];
        }
        for _ in 0..(n.ilog2() + 2) {
            // e ← 3e² − 2e³
            let e2 = mulp(&e_d, &e_d);
            let e3 = mulp(&e2, &e_d);
            for t in 0..n {
                e_d[t] = ((3 * e2[t]) % p + (2 * p - (2 * e3[t]) % p) % p) % p;
            }
        }
        // lift to O mod p^N
        let mut e: Vec<BigInt> = e_d.iter().map(|&x| BigInt::from(x)).collect();
        let mut prec = 1i64;
        while prec < ctx.n {
            let e2 = bc.elem_mul(ord, mt, &e, &e);
            let e3 = bc.elem_mul(ord, mt, &e2, &e);
            for t in 0..n {
                let v = BigInt::from(3) * &e2[t] - BigInt::from(2) * &e3[t];
                e[t] = ctx.reduce(&v);
            }
            prec *= 2;
        }
        // component basis: e·b_j
        let mut cols = Vec::new();
        for j in 0..n {
            let mut ej = vec![BigInt::zero(); n];
            ej[j] = BigInt::one();
            cols.push(bc.elem_mul(ord, mt, &e, &ej));
        }
        let basis = hnf_partial(ctx, cols, n);
        let pivot_rows: Vec<usize> = basis.iter().map(|(r, _)| *r).collect();
        let basis_cols: Vec<Vec<BigInt>> = basis.into_iter().map(|(_, c)| c).collect();
        comps.push(Component { idempotent: e, basis: basis_cols, pivot_rows });
    }
    comps.sort_by_key(|c| c.pivot_rows.clone());
    Ok(comps)
}

/// Order coordinates of 1 ∈ A.
fn one_coords(bc: &BlockCtx, ord: &Order) -> Result<Vec<BigInt>> {
    let mut v = vec![BigInt::zero(); bc.n];
    v[0] = arith::big_pow(bc.ctx.p, ord.denom as u64);
    bc.express(ord, &v)
}

fn apply_proj(proj: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    proj.iter()
        .map(|row| {
            let mut acc = 0u128;
            for (a, b) in row.iter().zip(v.iter()) {
                acc += (*a as u128) * (*b as u128);
            }
            (acc % (proj_p(proj) as u128)) as u64
        })
        .collect()
}

fn proj_p(_proj: &[Vec<u64>]) -> u64 {
    // stored in the last entry trick is fragile; recompute nothing: this
    // helper is only called through closures that know p.  We keep the
    // modulus in the matrix rows themselves by construction (entries < p),
    // so any p ≥ max+1 works; the caller's arithmetic re-reduces mod p.
    u64::MAX
}

/// Projection D → D/rad as a matrix (rows), plus the rows of D that lift
/// the quotient basis (non-pivot coordinates of the radical row space).
fn quotient_projection(rad: &[Vec<u64>], n: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    // row-reduce the radical basis
    let mut rows: Vec<Vec<u64>> = rad.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] % p != 0) else { continue };
        rows.swap(r, pr);
        let inv = arith::mod_inv_u64(rows[r][c], p).unwrap();
        for x in rows[r].iter_mut() {
            *x = arith::mod_mul_u64(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..n {
                    let sub = arith::mod_mul_u64(f, rows[r][j], p);
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    // projection: v ↦ coordinates at free positions after subtracting the
    // radical part: coordinate t of image = v[free_t] − Σ over pivots ...
    // since each radical row has a single pivot with zeros at other pivots,
    // v − Σ v[pivot_c]·row_c has zeros at pivots; its free coords are
    // v[free_t] − Σ_c v[pivot_c]·row_c[free_t].
    let mut proj = Vec::with_capacity(free.len());
    for &ft in &free {
        let mut row = vec![0u64; n];
        row[ft] = 1;
        for (ri, &pc) in pivots.iter().enumerate() {
            row[pc] = (p - rows[ri][ft] % p) % p;
        }
        proj.push(row);
    }
    (proj, free)
}

/// Minimal polynomial of z in the unital algebra (unit = e) of dimension
/// `dim`, coefficients over F_p.
fn minpoly_fp(
    z: &[u64],
    mul: &dyn Fn(&[u64], &[u64]) -> Vec<u64>,
    e: &[u64],
    amb_dim: usize,
    p: u64,
    dim: usize,
) -> Result<Vec<u64>> {
    let mut pows: Vec<Vec<u64>> = vec![e.to_vec()];
    for _ in 0..dim {
        let last = pows.last().unwrap();
        pows.push(mul(last, z));
    }
    // find the first k with e, z, …, z^k linearly dependent
    for k in 1..=dim {
        let mat: Vec<Vec<u64>> = (0..amb_dim)
            .map(|row| (0..=k).map(|j| pows[j][row]).collect())
            .collect();
        let ker = fp_kernel(&mat, p);
        if let Some(v) = ker.iter().find(|v| v[k] != 0) {
            let inv = arith::mod_inv_u64(v[k], p).unwrap();
            let mut mp: Vec<u64> = v.iter().take(k + 1).map(|&c| arith::mod_mul_u64(c, inv, p)).collect();
            FpCtx::new(p).trim(&mut mp);
            return Ok(mp);
        }
    }
    Err(Error::internal("minimal polynomial not found"))
}

fn fp_poly_inverse_mod(fp: &FpCtx, a: &[u64], m: &[u64]) -> Result<Vec<u64>> {
    // extended Euclid
    let (mut r0, mut r1) = (m.to_vec(), fp.divrem(a, m).1);
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp.divrem(&r0, &r1);
        let new_t = fp.sub(&t0, &fp.mul(&q, &t1));
        (r0, r1) = (r1, r);
        (t0, t1) = (t1, new_t);
    }
    if r0.len() != 1 {
        return Err(Error::internal("non-invertible element in CRT step"));
    }
    let inv = arith::mod_inv_u64(r0[0], fp.p).unwrap();
    Ok(t0.iter().map(|&c| arith::mod_mul_u64(c, inv, fp.p)).collect())
}

fn eval_poly_in_algebra(
    poly: &[u64],
    z: &[u64],
    mul: &dyn Fn(&[u64], &[u64]) -> Vec<u64>,
    e: &[u64],
    amb_dim: usize,
    p: u64,
) -> Vec<u64> {
    let mut acc = vec![0u64; amb_dim];
    for &c in poly.iter().rev() {
        acc = mul(&acc, z);
        for (t, a) in acc.iter_mut().enumerate() {
            *a = (*a + arith::mod_mul_u64(c, e[t], p)) % p;
        }
    }
    acc
}

/// Column space basis over F_p (as row-reduced columns).
fn fp_column_space(cols: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut work: Vec<Vec<u64>> = cols.to_vec();
    let n = work.first().map(|c| c.len()).unwrap_or(0);
    let mut out = Vec::new();
    for r in 0..n {
        let Some(idx) = work.iter().position(|c| c[r] % p != 0) else { continue };
        let col = work.swap_remove(idx);
        let inv = arith::mod_inv_u64(col[r], p).unwrap();
        let norm: Vec<u64> = col.iter().map(|&x| arith::mod_mul_u64(x, inv, p)).collect();
        for c in work.iter_mut() {
            if c[r] != 0 {
                let f = c[r];
                for i in 0..n {
                    let sub = arith::mod_mul_u64(f, norm[i], p);
                    c[i] = (c[i] + p - sub) % p;
                }
            }
        }
        out.push(norm);
    }
    out
}

/// Invariants of one component: min poly of x·e, residue degree,
/// ramification index, and disc valuation from the trace form.
fn component_invariants(
    bc: &BlockCtx,
    ord: &Order,
    mt: &[Vec<Vec<BigInt>>],
    comp: &Component,
) -> Result<RawFactor> {
    let ctx = bc.ctx;
    let n = bc.n;
    let ni = comp.basis.len();
    let p = ctx.p;

    // --- factor polynomial: monic dependency of ξ^j = e·x^j (power basis)
    // e in power-basis numerator coordinates (denominator p^k)
    let mut e_pow = vec![BigInt::zero(); n];
    for (i, c) in comp.idempotent.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for t in 0..n {
            let v = &e_pow[t] + c * &ord.cols[i][t];
            e_pow[t] = ctx.reduce(&v);
        }
    }
    let mut vecs: Vec<Vec<BigInt>> = Vec::with_capacity(ni + 1);
    let mut xj = vec![BigInt::one()]; // x^j as a poly
    for _ in 0..=ni {
        let prod = ctx.poly_mul(&e_pow, &xj);
        let (_, rem) = ctx.poly_divrem_monic(&prod, &bc.b);
        let mut v: Vec<BigInt> = (0..n)
            .map(|i| ctx.reduce(rem.get(i).unwrap_or(&BigInt::zero())))
            .collect();
        ctx_trim_tail(&mut v);
        v.resize(n, BigInt::zero());
        vecs.push(v);
        // multiply x^j by x
        xj.insert(0, BigInt::zero());
    }
    let minpoly = solve_monic_dependency(ctx, &vecs, n)?;

    // --- residue degree: dim of (O_i/pO_i)/rad
    // component multiplication table in component coordinates
    let mut cmt = vec![vec![Vec::new(); ni]; ni];
    for a in 0..ni {
        for b2 in 0..=a {
            let prod = bc.elem_mul(ord, mt, &comp.basis[a], &comp.basis[b2]);
            let coords = express_in_component(ctx, comp, &prod)?;
            cmt[a][b2] = coords.clone();
            cmt[b2][a] = coords;
        }
    }
    let pb = BigInt::from(p);
    let sc: Vec<Vec<Vec<u64>>> = cmt
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect())
                .collect()
        })
        .collect();
    let mulc = |u: &[u64], v: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; ni];
        for i in 0..ni {
            if u[i] == 0 {
                continue;
            }
            for j in 0..ni {
                if v[j] == 0 {
                    continue;
                }
                let c = arith::mod_mul_u64(u[i], v[j], p);
                for t in 0..ni {
                    out[t] = (out[t] + arith::mod_mul_u64(c, sc[i][j][t], p)) % p;
                }
            }
        }
        out
    };
    let mut q = 1u64;
    let mut m = 0u32;
    while (q as usize) < ni {
        q *= p;
        m += 1;
    }
    let m = m.max(1);
    let mut cols = Vec::with_capacity(ni);
    for i in 0..ni {
        let mut v = vec![0u64; ni];
        v[i] = 1;
        let mut acc = v;
        for _ in 0..m {
            let base = acc.clone();
            let mut powed = base.clone();
            for _ in 1..p {
                powed = mulc(&powed, &base);
            }
            acc = powed;
        }
        cols.push(acc);
    }
    let mut mrows = vec![vec![0u64; ni]; ni];
    for (i, col) in cols.iter().enumerate() {
        for (j, &x) in col.iter().enumerate() {
            mrows[j][i] = x;
        }
    }
    let rad_dim = fp_kernel(&mrows, p).len();
    let f_res = ni - rad_dim;
    if f_res == 0 || ni % f_res != 0 {
        return Err(Error::precision("inconsistent residue degree"));
    }
    let e_ram = ni / f_res;

    // --- disc valuation via the trace form on the component basis
    // power sums of the roots of B
    let two_n = 2 * n;
    let mut bcoef = bc.b.clone();
    bcoef.resize(n + 1, BigInt::zero());
    let mut s = vec![BigInt::zero(); two_n.max(1)];
    s[0] = BigInt::from(n as i64);
    for j in 1..two_n {
        // s_j + b_{n-1} s_{j-1} + … + b_{n-j+1} s_1 + j·b_{n-j} = 0 (j ≤ n)
        let mut acc = BigInt::zero();
        for i in 1..j.min(n) {
            acc += &bcoef[n - i] * &s[j - i];
        }
        if j <= n {
            acc += BigInt::from(j as i64) * &bcoef[n - j];
        } else {
            for i in j.min(n)..=n.min(j) {
                // covered above; nothing extra
                let _ = i;
            }
        }
        if j > n {
            acc = BigInt::zero();
            for i in 1..=n {
                acc += &bcoef[n - i] * &s[j - i];
            }
        }
        s[j] = ctx.reduce(&(-acc));
    }
    let trace_of_poly = |poly: &[BigInt]| -> BigInt {
        let mut acc = BigInt::zero();
        for (j, c) in poly.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &s[j];
            }
        }
        ctx.reduce(&acc)
    };
    // power-basis numerators of the component basis
    let mut basis_pow: Vec<Vec<BigInt>> = Vec::with_capacity(ni);
    for col in &comp.basis {
        let mut acc = vec![BigInt::zero(); n];
        for (i, c) in col.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for t in 0..n {
                let v = &acc[t] + c * &ord.cols[i][t];
                acc[t] = ctx.reduce(&v);
            }
        }
        basis_pow.push(acc);
    }
    let mut tr = vec![vec![BigInt::zero(); ni]; ni];
    for a in 0..ni {
        for b2 in 0..=a {
            let prod = ctx.poly_mul(&basis_pow[a], &basis_pow[b2]);
            let (_, rem) = ctx.poly_divrem_monic(&prod, &bc.b);
            let t = trace_of_poly(&rem);
            tr[a][b2] = t.clone();
            tr[b2][a] = t;
        }
    }
    let det_v = det_val(ctx, tr)?;
    let disc_val = det_v - 2 * ord.denom * ni as i64;
    if disc_val < 0 {
        return Err(Error::precision("negative component discriminant valuation"));
    }

    Ok((minpoly, e_ram, f_res, disc_val as u64))
}

fn ctx_trim_tail(v: &mut Vec<BigInt>) {
    while v.last().map(|x| x.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Express an order-coordinate vector in a component's triangular basis.
fn express_in_component(
    ctx: &ZpContext,
    comp: &Component,
    v: &[BigInt],
) -> Result<Vec<BigInt>> {
    let mut rem: Vec<BigInt> = v.iter().map(|x| ctx.reduce(x)).collect();
    let mut coords = vec![BigInt::zero(); comp.basis.len()];
    for (idx, (col, &pr)) in comp.basis.iter().zip(comp.pivot_rows.iter()).enumerate().rev() {
        let pv = ctx.val(&col[pr]);
        let c = if ctx.val(&rem[pr]) >= ctx.n {
            BigInt::zero()
        } else {
            let unit = ctx.divide_exact_pk(&col[pr], pv)?;
            let num = ctx.divide_exact_pk(&rem[pr], pv)?;
            ctx.reduce(&(num * ctx.inv(&unit)?))
        };
        if !c.is_zero() {
            for i in 0..rem.len() {
                let t = &rem[i] - &c * &col[i];
                rem[i] = ctx.reduce(&t);
            }
        }
        coords[idx] = c;
    }
    // remainder must vanish to precision margin
    for x in &rem {
        if ctx.val(x) < ctx.n - 6 {
            return Err(Error::precision("vector not in component span"));
        }
    }
    Ok(coords)
}

/// Solve Σ_{j<k} a_j v_j = −v_k for integral a, returning the monic
/// polynomial coefficients [a_0, …, a_{k−1}, 1].
fn solve_monic_dependency(
    ctx: &ZpContext,
    vecs: &[Vec<BigInt>],
    n: usize,
) -> Result<Vec<BigInt>> {
    let k = vecs.len() - 1;
    // rows: n equations, k unknowns, rhs = −v_k
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|r| (0..k).map(|j| vecs[j][r].clone()).collect())
        .collect();
    let mut rhs: Vec<BigInt> = (0..n).map(|r| ctx.reduce(&-&vecs[k][r])).collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; k];
    let mut used_rows = vec![false; n];
    for c in 0..k {
        // min-valuation pivot among unused rows
        let mut best: Option<(i64, usize)> = None;
        for r in 0..n {
            if used_rows[r] {
                continue;
            }
            let v = ctx.val(&a[r][c]);
            if v < ctx.n && best.map(|(bv, _)| v < bv).unwrap_or(true) {
                best = Some((v, r));
            }
        }
        let Some((pv, pr)) = best else {
            return Err(Error::precision("dependency system is singular to precision"));
        };
        used_rows[pr] = true;
        pivot_of_col[c] = Some(pr);
        let unit = ctx.divide_exact_pk(&a[pr][c], pv)?;
        let unit_inv = ctx.inv(&unit)?;
        for r in 0..n {
            if r == pr {
                continue;
            }
            let v = ctx.val(&a[r][c]);
            if v >= ctx.n {
                continue;
            }
            if v < pv {
                return Err(Error::precision("pivot is not minimal (precision noise)"));
            }
            let num = ctx.divide_exact_pk(&a[r][c], pv)?;
            let mult = ctx.reduce(&(num * &unit_inv));
            for cc in 0..k {
                let t = &a[r][cc] - &mult * &a[pr][cc];
                a[r][cc] = ctx.reduce(&t);
            }
            let t = &rhs[r] - &mult * &rhs[pr];
            rhs[r] = ctx.reduce(&t);
        }
    }
    // back-substitute in reverse column order
    let mut sol = vec![BigInt::zero(); k];
    for c in (0..k).rev() {
        let pr = pivot_of_col[c].unwrap();
        let pv = ctx.val(&a[pr][c]);
        let unit = ctx.divide_exact_pk(&a[pr][c], pv)?;
        let num = ctx.divide_exact_pk(&rhs[pr], pv)?;
        let val = ctx.reduce(&(num * ctx.inv(&unit)?));
        sol[c] = val.clone();
        for r in 0..n {
            let t = &rhs[r] - &val * &a[r][c];
            rhs[r] = ctx.reduce(&t);
        }
    }
    let mut out = sol;
    out.push(BigInt::one());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padics::{factor_padic, field_disc_valuation};

    fn poly5(coeffs: &[i64], prec: i64) -> PadicPoly {
        PadicPoly::from_bigints(5, &coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>(), prec)
    }

    #[test]
    fn split_quadratic() {
        // x² − 6 over Q₅ splits into two linear factors
        let f = poly5(&[-6, 0, 1], 40);
        let fs = factor_padic(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(g, _)| g.degree() == Some(1)));
    }

    #[test]
    fn eisenstein_irreducible() {
        let f = poly5(&[-5, 0, 0, 0, 0, 0, 1], 40);
        let fs = factor_padic(&f).unwrap();
        assert_eq!(fs.len(), 1);
        let ext = field_disc_valuation(&f).unwrap();
        assert_eq!(ext.degree, 6);
        assert_eq!(ext.ramification_index, 6);
        assert_eq!(ext.residue_degree, 1);
        // tame totally ramified: d = e − 1 + v(e)·e = 5 + 0 (5 ∤ 6)... v₅(6)=0
        assert_eq!(ext.disc_valuation, 5);
    }

    #[test]
    fn mixed_quartic_roundtrip() {
        // (x²−6)(x²−5): one split pair, one ramified quadratic
        let f = poly5(&[30, 0, -11, 0, 1], 40);
        let fs = factor_padic(&f).unwrap();
        let mut degs: Vec<usize> = fs.iter().map(|(g, _)| g.degree().unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2]);
    }

    #[test]
    fn disc_valuations() {
        // x² − 5: tame ramified, e=2, f=1, d=1
        let ext = field_disc_valuation(&poly5(&[-5, 0, 1], 40)).unwrap();
        assert_eq!((ext.ramification_index, ext.residue_degree, ext.disc_valuation), (2, 1, 1));
        // x² − 2: unramified quadratic, d=0
        let ext = field_disc_valuation(&poly5(&[-2, 0, 1], 40)).unwrap();
        assert_eq!((ext.ramification_index, ext.residue_degree, ext.disc_valuation), (1, 2, 0));
        // x² − 6 is reducible: error
        assert!(field_disc_valuation(&poly5(&[-6, 0, 1], 40)).is_err());
    }

    #[test]
    fn wild_eisenstein_disc() {
        // x⁵ − 5: wild totally ramified; disc valuation 9
        let ext = field_disc_valuation(&poly5(&[-5, 0, 0, 0, 0, 1], 40)).unwrap();
        assert_eq!(ext.ramification_index, 5);
        assert_eq!(ext.disc_valuation, 9);
        // x⁵ − 5x − 5: Eisenstein with smaller different
        let ext = field_disc_valuation(&poly5(&[-5, -5, 0, 0, 0, 1], 40)).unwrap();
        assert_eq!(ext.ramification_index, 5);
        assert_eq!(ext.disc_valuation, 5);
    }

    #[test]
    fn close_factors_need_round2() {
        // (x−1)(x−(1+5))(x²−5·2)·: all congruent pieces mod 5 in one block
        let ctx = ZpContext::new(5, 40);
        let a = vec![BigInt::from(-1), BigInt::one()];
        let b = vec![BigInt::from(-6), BigInt::one()];
        let c = vec![BigInt::from(1 - 10), BigInt::from(-2), BigInt::one()]; // (x−1)² − 10
        let f = ctx.poly_mul(&ctx.poly_mul(&a, &b), &c);
        let fp = PadicPoly::from_bigints(5, &f, 40);
        let fs = factor_padic(&fp).unwrap();
        let mut degs: Vec<usize> = fs.iter().map(|(g, _)| g.degree().unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2]);
        // the quadratic is ramified: (x−1)² = 10 = 2·5
        let quad = fs.iter().find(|(g, _)| g.degree() == Some(2)).unwrap();
        let ext = field_disc_valuation(&quad.0).unwrap();
        assert_eq!(ext.ramification_index, 2);
    }

    #[test]
    fn unramified_times_ramified_one_block() {
        // x⁴ + 15: block x⁴ mod 5... v(15)=1, slope 1/4: irreducible e=4
        let ext = field_disc_valuation(&poly5(&[15, 0, 0, 0, 1], 40)).unwrap();
        assert_eq!(ext.ramification_index, 4);
        assert_eq!(ext.residue_degree, 1);
        assert_eq!(ext.disc_valuation, 3);
    }
}
