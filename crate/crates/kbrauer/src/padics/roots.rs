//! Q_p-rational root finding: Newton-polygon valuation scaling, digit
//! exploration, and Newton certification of isolated roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Zero};

use super::engine::ZpContext;
use super::{newton_polygon, PadicElement, PadicPoly};
use crate::arith;
use crate::error::{Error, Result};

/// All roots of f in Q_p, to the working precision of the coefficients.
/// Fails with a precision error when a root cluster cannot be separated
/// at the available precision.
pub fn roots_in_qp(f: &PadicPoly) -> Result<Vec<PadicElement>> {
    let p = f.p;
    let deg = f
        .degree()
        .ok_or_else(|| Error::precision("zero polynomial to working precision"))?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let n = f
        .coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.rel_prec())
        .min()
        .unwrap_or(20)
        .max(20);
    // scale to integral coefficients
    let vmin = f
        .coeffs
        .iter()
        .filter_map(|c| c.valuation())
        .min()
        .unwrap();
    let shift = (-vmin).max(0);
    let ctx = ZpContext::new(p, n + shift);
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(deg + 1);
    let mut zero_root = false;
    for (i, c) in f.coeffs.iter().enumerate().take(deg + 1) {
        if c.is_zero() {
            if i == 0 {
                zero_root = true;
            }
            coeffs.push(BigInt::zero());
        } else {
            let v = (c.valuation().unwrap() + shift) as u64;
            coeffs.push(ctx.reduce(&(BigInt::from(c.unit_part().clone()) * arith::big_pow(p, v))));
        }
    }
    let mut out: Vec<PadicElement> = Vec::new();
    // strip x^k
    let first_nonzero = coeffs.iter().position(|c| !c.is_zero()).unwrap();
    if first_nonzero > 0 || zero_root {
        out.push(PadicElement::zero(p, n));
        coeffs.drain(0..first_nonzero);
    }
    if coeffs.len() <= 1 {
        return Ok(out);
    }
    // integer-slope segments give the candidate valuations
    let poly = PadicPoly::from_bigints(p, &coeffs, n);
    for ((num, den), _) in newton_polygon(&poly)? {
        if den != 1 {
            continue;
        }
        let s = num;
        // substitute x = p^s y, clear content, find unit roots
        let scaled: Vec<BigInt> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if s >= 0 {
                    c * arith::big_pow(p, (s as u64) * i as u64)
                } else {
                    c * arith::big_pow(p, ((-s) as u64) * (deg - i) as u64)
                }
            })
            .collect();
        let ctx2 = ZpContext::new(p, n + shift + s.unsigned_abs() as i64 * deg as i64);
        let content = scaled.iter().map(|c| ctx2.val(c)).min().unwrap();
        let prim: Result<Vec<BigInt>> =
            scaled.iter().map(|c| ctx2.divide_exact_pk(c, content)).collect();
        let prim = prim?;
        let work_n = n;
        let wctx = ZpContext::new(p, work_n);
        let prim: Vec<BigInt> = prim.iter().map(|c| wctx.reduce(c)).collect();
        for root in unit_roots(&wctx, &prim)? {
            let (rel, approx) = root;
            let mut elem = PadicElement::from_bigint(&approx, p, rel);
            elem = elem.shift(s);
            // the shift changed only the valuation; re-state known precision
            out.push(elem);
        }
    }
    Ok(out)
}

/// Unit roots (valuation 0) of a primitive integral polynomial mod p^N.
/// Roots are extracted one at a time and deflated out, so clusters of
/// nearby roots are all found; each root is finally polished against the
/// original polynomial.  Returns (certified relative precision,
/// approximation) pairs.
fn unit_roots(ctx: &ZpContext, f: &[BigInt]) -> Result<Vec<(i64, BigInt)>> {
    let mut out: Vec<(i64, BigInt)> = Vec::new();
    let mut g = ctx.poly_reduce(f);
    let df = ctx.poly_derivative(f);
    while g.len() > 1 {
        let Some(r) = find_one_unit_root(ctx, &g)? else { break };
        // deflation always proceeds (bounded by the degree); recording the
        // root requires polishing against the original polynomial
        g = deflate(ctx, &g, &r)?;
        let Ok(rv) = newton_refine(ctx, f, &df, r) else { continue };
        if ctx.val(&ctx.poly_eval(f, &rv)) < ctx.n - 2 {
            continue; // deflation drift produced a spurious root
        }
        let dv = ctx.val(&ctx.poly_eval(&df, &rv));
        let is_dup = out
            .iter()
            .any(|(_, prev)| ctx.val(&(prev - &rv)) >= (ctx.n - dv - 2).max(1));
        if !is_dup {
            out.push(((ctx.n - dv).max(1), rv));
        }
    }
    Ok(out)
}

/// One Newton-certified unit root of f, or None.
fn find_one_unit_root(ctx: &ZpContext, f: &[BigInt]) -> Result<Option<BigInt>> {
    let p = ctx.p;
    if f.len() <= 1 {
        return Ok(None);
    }
    let df = ctx.poly_derivative(f);
    let mut frontier: Vec<(BigInt, i64)> = Vec::new();
    for r in 1..p {
        if ctx.val(&ctx.poly_eval(f, &BigInt::from(r))) >= 1 {
            frontier.push((BigInt::from(r), 1));
        }
    }
    let mut guard = 0usize;
    while let Some((c, m)) = frontier.pop() {
        guard += 1;
        if guard > 40_000 {
            return Err(Error::resource("root search budget exceeded"));
        }
        let fv = ctx.val(&ctx.poly_eval(f, &c));
        let dv = ctx.val(&ctx.poly_eval(&df, &c));
        if fv >= ctx.n || fv > 2 * dv {
            let root = newton_refine(ctx, f, &df, c)?;
            return Ok(Some(root));
        }
        if m >= ctx.n - 1 {
            return Err(Error::precision("unseparated root cluster at working precision"));
        }
        let step = arith::big_pow(p, m as u64);
        for t in 0..p {
            let c2 = &c + BigInt::from(t) * &step;
            if ctx.val(&ctx.poly_eval(f, &c2)) >= m + 1 {
                frontier.push((c2, m + 1));
            }
        }
    }
    Ok(None)
}

/// Synthetic division of f by (x − r); the remainder (≡ 0 to precision)
/// is dropped.
fn deflate(ctx: &ZpContext, f: &[BigInt], r: &BigInt) -> Result<Vec<BigInt>> {
    let mut q = vec![BigInt::zero(); f.len().saturating_sub(1)];
    let mut carry = BigInt::zero();
    for i in (1..f.len()).rev() {
        carry = ctx.reduce(&(&f[i] + &carry * r));
        q[i - 1] = carry.clone();
    }
    Ok(ctx.poly_reduce(&q))
}

fn newton_refine(ctx: &ZpContext, f: &[BigInt], df: &[BigInt], mut c: BigInt) -> Result<BigInt> {
    for _ in 0..ctx.n.ilog2() + 3 {
        let fv = ctx.poly_eval(f, &c);
        if ctx.val(&fv) >= ctx.n {
            return Ok(c);
        }
        let dv = ctx.poly_eval(df, &c);
        let w = ctx.val(&dv);
        let unit = ctx.divide_exact_pk(&dv, w)?;
        let quotient = ctx.divide_exact_pk(&fv, w)?;
        let step = ctx.reduce(&(quotient * ctx.inv(&unit)?));
        c = ctx.reduce(&(&c - step));
    }
    let fv = ctx.poly_eval(f, &c);
    if ctx.val(&fv) >= ctx.n - 2 {
        Ok(c)
    } else {
        Err(Error::precision("Newton iteration failed to converge"))
    }
}

/// Convenience: roots of an exact rational polynomial in Q_p.
pub fn rational_poly_roots_qp(
    coeffs: &[num_rational::BigRational],
    p: u64,
    prec: i64,
) -> Result<Vec<PadicElement>> {
    let mut den = BigInt::from(1);
    for c in coeffs {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * num_rational::BigRational::from_integer(den.clone())).to_integer())
        .collect();
    // clearing denominators multiplies f by a constant: same roots, but a
    // p-power in `den` shifts every coefficient valuation uniformly
    let f = PadicPoly::from_bigints(p, &ints, prec);
    roots_in_qp(&f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn int_poly(p: u64, coeffs: &[i64]) -> PadicPoly {
        PadicPoly::from_bigints(p, &coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>(), 40)
    }

    #[test]
    fn simple_unit_roots() {
        // x² − 6 over Q₅: roots ±√6, residues 1 and 4
        let f = int_poly(5, &[-6, 0, 1]);
        let roots = roots_in_qp(&f).unwrap();
        assert_eq!(roots.len(), 2);
        let mut residues: Vec<u64> = roots.iter().map(|r| r.residue().unwrap()).collect();
        residues.sort();
        assert_eq!(residues, vec![1, 4]);
        for r in &roots {
            assert!(f.eval(r).is_zero());
        }
    }

    #[test]
    fn no_rational_roots() {
        // x² − 5 (ramified) and x² − 2 (inert) have no Q₅-roots
        assert!(roots_in_qp(&int_poly(5, &[-5, 0, 1])).unwrap().is_empty());
        assert!(roots_in_qp(&int_poly(5, &[-2, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn valuation_scaled_roots() {
        // (x − 5)(x − 1/5)·5 = 5x² − 26x + 5: roots with valuations ±1
        let f = int_poly(5, &[5, -26, 5]);
        let mut roots = roots_in_qp(&f).unwrap();
        roots.sort_by_key(|r| r.valuation().unwrap());
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].valuation(), Some(-1));
        assert_eq!(roots[1].valuation(), Some(1));
    }

    #[test]
    fn multiple_close_roots_separate() {
        // (x−1)(x−(1+5³)) separates at depth 3
        let a = BigInt::from(1);
        let b = BigInt::from(1 + 125);
        let coeffs = vec![&a * &b, -(&a + &b), BigInt::from(1)];
        let f = PadicPoly::from_bigints(5, &coeffs, 40);
        let roots = roots_in_qp(&f).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn roots_at_p2() {
        // x² − 17 has two 2-adic roots (17 ≡ 1 mod 8)
        let f = int_poly(2, &[-17, 0, 1]);
        assert_eq!(roots_in_qp(&f).unwrap().len(), 2);
        // x² − 3 has none
        let g = int_poly(2, &[-3, 0, 1]);
        assert!(roots_in_qp(&g).unwrap().is_empty());
        // x³ − x + 2: check against direct residue analysis mod 8
        let h = int_poly(2, &[2, -1, 0, 1]);
        let roots = roots_in_qp(&h).unwrap();
        for r in &roots {
            assert!(h.eval(r).is_zero());
        }
    }

    #[test]
    fn rational_coefficient_roots() {
        // (x − 1/5)(x − 2) with rational coefficients
        let half = BigRational::new(BigInt::from(1), BigInt::from(5));
        let two = BigRational::from_integer(BigInt::from(2));
        let coeffs = vec![&half * &two, -(&half + &two), BigRational::from_integer(BigInt::from(1))];
        let roots = rational_poly_roots_qp(&coeffs, 5, 40).unwrap();
        assert_eq!(roots.len(), 2);
        let vals: Vec<i64> = {
            let mut v: Vec<i64> = roots.iter().map(|r| r.valuation().unwrap()).collect();
            v.sort();
            v
        };
        assert_eq!(vals, vec![-1, 0]);
    }
}
