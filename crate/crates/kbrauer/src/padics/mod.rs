//! Fixed-precision p-adic arithmetic, Hensel lifting, Newton polygons,
//! polynomial factorization over Q_p, and discriminant valuations of the
//! resulting local field extensions.
//!
//! Precision semantics: two elements are equal iff their difference has
//! valuation at least the smaller of the two absolute precisions.  Every
//! operation carries certified precision; routines that run out return
//! `Error::Precision` and callers retry at doubled precision.

mod engine;
mod roots;
mod round2;

pub use engine::{FpCtx, ZpContext};
pub use roots::{rational_poly_roots_qp, roots_in_qp};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Default relative working precision (p-adic digits).
pub const DEFAULT_PRECISION: i64 = 60;
/// Hard cap for doubling-on-failure.
pub const MAX_PRECISION: i64 = 480;

/// Reads the working precision: KBRAUER_PRECISION when set, else the default.
pub fn working_precision() -> i64 {
    std::env::var("KBRAUER_PRECISION")
        .ok()
        .and_then(|s| s.parse::<i64>().ok())
        .filter(|&n| n >= 20)
        .unwrap_or(DEFAULT_PRECISION)
}

/// Retry a precision-dependent computation with doubling-on-failure.
pub fn with_precision_retry<T>(
    start: i64,
    mut run: impl FnMut(i64) -> Result<T>,
) -> Result<T> {
    let mut n = start.max(20);
    loop {
        match run(n) {
            Err(Error::Precision(_)) if n < MAX_PRECISION => n = (2 * n).min(MAX_PRECISION),
            other => return other,
        }
    }
}

/// A p-adic number p^val · unit with the unit known modulo p^rel_prec.
/// Zero-to-precision is encoded as a zero unit with `val` holding the
/// absolute precision bound.
#[derive(Debug, Clone)]
pub struct PadicElement {
    p: u64,
    val: i64,
    unit: BigUint,
    rel_prec: i64,
}

impl PadicElement {
    /// Zero known to absolute precision `abs_prec` (valuation ≥ abs_prec).
    pub fn zero(p: u64, abs_prec: i64) -> Self {
        PadicElement { p, val: abs_prec, unit: BigUint::zero(), rel_prec: 0 }
    }

    pub fn from_bigint(n: &BigInt, p: u64, rel_prec: i64) -> Self {
        if n.is_zero() {
            // an exact integer zero: treat as zero to a generous bound
            return PadicElement::zero(p, rel_prec);
        }
        let (v, unit) = arith::split_valuation(&n.abs(), p);
        let modulus = arith::big_pow(p, rel_prec as u64).to_biguint().unwrap();
        let mut u = unit.to_biguint().unwrap() % &modulus;
        if n.is_negative() {
            u = (&modulus - u) % &modulus;
        }
        PadicElement { p, val: v as i64, unit: u, rel_prec }
    }

    pub fn from_i64(n: i64, p: u64, rel_prec: i64) -> Self {
        PadicElement::from_bigint(&BigInt::from(n), p, rel_prec)
    }

    pub fn from_rational(num: &BigInt, den: &BigInt, p: u64, rel_prec: i64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        let a = PadicElement::from_bigint(num, p, rel_prec + 4);
        let b = PadicElement::from_bigint(den, p, rel_prec + 4);
        a.div(&b)?.truncate(rel_prec)
    }

    fn truncate(&self, rel_prec: i64) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let rel = rel_prec.min(self.rel_prec);
        let modulus = arith::big_pow(self.p, rel as u64).to_biguint().unwrap();
        Ok(PadicElement { p: self.p, val: self.val, unit: &self.unit % &modulus, rel_prec: rel })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Valuation; None when the element is zero to its precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Absolute precision: the valuation below which digits are certified.
    pub fn abs_prec(&self) -> i64 {
        if self.is_zero() {
            self.val
        } else {
            self.val + self.rel_prec
        }
    }

    pub fn rel_prec(&self) -> i64 {
        self.rel_prec
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn unit_part(&self) -> &BigUint {
        &self.unit
    }

    /// The value as an integer p^val·unit (exact for what is known).
    pub fn lift(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let v = self.val.max(0) as u64;
        let base = BigInt::from(self.unit.clone()) * arith::big_pow(self.p, v);
        base
    }

    /// Residue mod p (requires val ≥ 0; zero-to-precision gives 0).
    pub fn residue(&self) -> Result<u64> {
        if self.is_zero() {
            return Ok(0);
        }
        if self.val < 0 {
            return Err(Error::domain("negative valuation has no residue"));
        }
        if self.val > 0 {
            return Ok(0);
        }
        Ok((&self.unit % self.p).to_u64().unwrap())
    }

    pub fn add(&self, other: &PadicElement) -> PadicElement {
        assert_eq!(self.p, other.p);
        let p = self.p;
        if self.is_zero() && other.is_zero() {
            return PadicElement::zero(p, self.val.min(other.val));
        }
        if self.is_zero() {
            return other.cap_abs(self.val);
        }
        if other.is_zero() {
            return self.cap_abs(other.val);
        }
        let abs = self.abs_prec().min(other.abs_prec());
        let v0 = self.val.min(other.val);
        if abs <= v0 {
            return PadicElement::zero(p, abs);
        }
        let digits = (abs - v0) as u64;
        let modulus = arith::big_pow(p, digits).to_biguint().unwrap();
        let a = (&self.unit * arith::big_pow(p, (self.val - v0) as u64).to_biguint().unwrap()) % &modulus;
        let b = (&other.unit * arith::big_pow(p, (other.val - v0) as u64).to_biguint().unwrap()) % &modulus;
        let s = (a + b) % &modulus;
        if s.is_zero() {
            return PadicElement::zero(p, abs);
        }
        let (dv, u) = arith::split_valuation(&BigInt::from(s), p);
        PadicElement {
            p,
            val: v0 + dv as i64,
            unit: u.to_biguint().unwrap(),
            rel_prec: abs - v0 - dv as i64,
        }
    }

    fn cap_abs(&self, abs: i64) -> PadicElement {
        if self.is_zero() {
            return PadicElement::zero(self.p, self.val.min(abs));
        }
        if self.val >= abs {
            return PadicElement::zero(self.p, abs);
        }
        let rel = (abs - self.val).min(self.rel_prec);
        let modulus = arith::big_pow(self.p, rel as u64).to_biguint().unwrap();
        PadicElement { p: self.p, val: self.val, unit: &self.unit % modulus, rel_prec: rel }
    }

    pub fn neg(&self) -> PadicElement {
        if self.is_zero() {
            return self.clone();
        }
        let modulus = arith::big_pow(self.p, self.rel_prec as u64).to_biguint().unwrap();
        PadicElement {
            p: self.p,
            val: self.val,
            unit: (&modulus - &self.unit % &modulus) % &modulus,
            rel_prec: self.rel_prec,
        }
    }

    pub fn sub(&self, other: &PadicElement) -> PadicElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PadicElement) -> PadicElement {
        assert_eq!(self.p, other.p);
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            // v(xy) ≥ v(x) + v(y); for zero-to-precision use the bound
            let va = self.valuation().unwrap_or(self.val);
            let vb = other.valuation().unwrap_or(other.val);
            return PadicElement::zero(p, va + vb);
        }
        let rel = self.rel_prec.min(other.rel_prec);
        let modulus = arith::big_pow(p, rel as u64).to_biguint().unwrap();
        PadicElement {
            p,
            val: self.val + other.val,
            unit: (&self.unit * &other.unit) % &modulus,
            rel_prec: rel,
        }
    }

    pub fn inv(&self) -> Result<PadicElement> {
        if self.is_zero() {
            return Err(Error::precision(
                "inverting an element that is zero to working precision",
            ));
        }
        let modulus = arith::big_pow(self.p, self.rel_prec as u64);
        let (g, x, _) = arith::ext_gcd(&BigInt::from(self.unit.clone()), &modulus);
        if !g.is_one() {
            return Err(Error::internal("unit not invertible"));
        }
        let inv = x.mod_floor(&modulus).to_biguint().unwrap();
        Ok(PadicElement { p: self.p, val: -self.val, unit: inv, rel_prec: self.rel_prec })
    }

    pub fn div(&self, other: &PadicElement) -> Result<PadicElement> {
        Ok(self.mul(&other.inv()?))
    }

    /// Equality to the shared precision.
    pub fn eq_prec(&self, other: &PadicElement) -> bool {
        self.sub(other).is_zero()
    }

    pub fn pow(&self, e: u64) -> PadicElement {
        let mut acc = PadicElement::from_i64(1, self.p, self.rel_prec.max(1));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiply by p^k (exact shift).
    pub fn shift(&self, k: i64) -> PadicElement {
        let mut out = self.clone();
        out.val += k;
        out
    }
}

impl std::fmt::Display for PadicElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            write!(f, "O({}^{})", self.p, self.val)
        } else {
            write!(f, "{}^{}*{} + O({}^{})", self.p, self.val, self.unit, self.p, self.abs_prec())
        }
    }
}

/// Square root of u by Hensel lifting (p odd).  The canonical branch has
/// reduction in {1, …, (p−1)/2}.  Even valuations are allowed; odd
/// valuations and non-residues yield NoRoot.
pub fn hensel_sqrt(u: &PadicElement) -> Result<PadicElement> {
    let p = u.p;
    if p == 2 {
        return Err(Error::unsupported("2-adic square roots not implemented"));
    }
    if u.is_zero() {
        return Err(Error::precision("square root of zero-to-precision element"));
    }
    if u.val % 2 != 0 {
        return Err(Error::no_root(format!("odd valuation {}", u.val)));
    }
    let r0 = (&u.unit % p).to_u64().unwrap();
    let mut r = arith::sqrt_mod_p(r0, p)
        .ok_or_else(|| Error::no_root(format!("{r0} is not a square mod {p}")))?;
    if r > (p - 1) / 2 {
        r = p - r;
    }
    // Newton iteration on the unit: s ← (s + u/s)/2
    let n = u.rel_prec;
    let unit = PadicElement { p, val: 0, unit: u.unit.clone(), rel_prec: n };
    let mut s = PadicElement::from_i64(r as i64, p, n);
    let half = PadicElement::from_i64(2, p, n).inv()?;
    let mut known = 1i64;
    while known < n {
        s = s.add(&unit.div(&s)?).mul(&half);
        known *= 2;
    }
    // fix the canonical branch
    if s.residue()? > (p - 1) / 2 {
        s = s.neg();
    }
    let mut out = s;
    out.val = u.val / 2;
    debug_assert!(out.mul(&out).eq_prec(u));
    Ok(out)
}

/// A polynomial with p-adic coefficients, low degree first.
#[derive(Debug, Clone)]
pub struct PadicPoly {
    pub p: u64,
    pub coeffs: Vec<PadicElement>,
}

impl PadicPoly {
    pub fn new(p: u64, coeffs: Vec<PadicElement>) -> Self {
        PadicPoly { p, coeffs }
    }

    /// From integer coefficients, low degree first.
    pub fn from_bigints(p: u64, coeffs: &[BigInt], rel_prec: i64) -> Self {
        PadicPoly {
            p,
            coeffs: coeffs.iter().map(|c| PadicElement::from_bigint(c, p, rel_prec)).collect(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &PadicElement) -> PadicElement {
        let mut acc = PadicElement::zero(self.p, i64::MAX / 4);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> PadicPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&PadicElement::from_i64(i as i64, self.p, c.rel_prec().max(1))))
            .collect();
        PadicPoly { p: self.p, coeffs }
    }
}

/// Invariants of a finite extension of Q_p cut out by an irreducible
/// polynomial: degree n = e·f and the valuation of the field discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalFieldExtension {
    pub degree: u32,
    pub ramification_index: u32,
    pub residue_degree: u32,
    pub disc_valuation: u64,
}

/// Newton polygon: the lower convex hull of (i, v(c_i)), reported as
/// (root valuation as (num, den), horizontal length) with slopes ascending.
pub fn newton_polygon(f: &PadicPoly) -> Result<Vec<((i64, i64), u32)>> {
    let pts: Vec<(i64, i64)> = f
        .coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|v| (i as i64, v)))
        .collect();
    if pts.is_empty() {
        return Err(Error::precision("all coefficients are zero to precision"));
    }
    let deg = f
        .degree()
        .ok_or_else(|| Error::precision("leading coefficient zero to precision"))?;
    // lower hull from left to right (Andrew's monotone chain, lower part)
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &(x, y) in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // pop if (x2,y2) is above or on the segment (x1,y1)-(x,y)
            if (y2 - y1) * (x - x1) >= (y - y1) * (x2 - x1) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    // keep only hull up to the degree point
    let mut segments = Vec::new();
    for w in hull.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        if x2 > deg as i64 {
            break;
        }
        // root valuation = −(hull slope) = (y1 − y2)/(x2 − x1)
        let num = y1 - y2;
        let den = x2 - x1;
        let g = num_integer::gcd(num.abs(), den);
        let g = if g == 0 { 1 } else { g };
        segments.push(((num / g, den / g), (x2 - x1) as u32));
    }
    // ascending root valuations
    segments.sort_by(|a, b| (a.0 .0 * b.0 .1).cmp(&(b.0 .0 * a.0 .1)));
    Ok(segments)
}

/// Factor a squarefree monic-normalizable polynomial over Q_p into
/// irreducible factors (multiplicity 1 each for squarefree input).
pub fn factor_padic(f: &PadicPoly) -> Result<Vec<(PadicPoly, u32)>> {
    let analysis = round2::analyze(f)?;
    Ok(analysis.factors.into_iter().map(|fc| (fc.poly, 1)).collect())
}

/// Ramification and discriminant data of Q_p[x]/(f) for irreducible f.
pub fn field_disc_valuation(f: &PadicPoly) -> Result<LocalFieldExtension> {
    let analysis = round2::analyze(f)?;
    if analysis.factors.len() != 1 {
        return Err(Error::domain(format!(
            "polynomial is reducible ({} factors); disc valuation needs an irreducible input",
            analysis.factors.len()
        )));
    }
    let fc = &analysis.factors[0];
    Ok(LocalFieldExtension {
        degree: fc.degree as u32,
        ramification_index: fc.e as u32,
        residue_degree: fc.f as u32,
        disc_valuation: fc.disc_valuation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5(n: i64) -> PadicElement {
        PadicElement::from_i64(n, 5, 30)
    }

    #[test]
    fn element_arithmetic() {
        let a = q5(50);
        assert_eq!(a.valuation(), Some(2));
        let b = q5(-50);
        assert!(a.add(&b).is_zero());
        let c = a.mul(&q5(3));
        assert_eq!(c.valuation(), Some(2));
        assert_eq!(c.residue().unwrap(), 0);
        let d = q5(7).inv().unwrap();
        assert!(d.mul(&q5(7)).eq_prec(&q5(1)));
        // rationals: 1/5 has valuation −1
        let r = PadicElement::from_rational(&BigInt::from(1), &BigInt::from(5), 5, 30).unwrap();
        assert_eq!(r.valuation(), Some(-1));
    }

    #[test]
    fn precision_tracking() {
        let a = q5(1).shift(10); // 5^10, known to 30 digits
        let b = q5(-1).shift(10);
        let z = a.add(&b);
        assert!(z.is_zero());
        assert_eq!(z.abs_prec(), 40);
        // adding a high-precision number keeps the min absolute precision
        let c = z.add(&q5(1));
        assert_eq!(c.residue().unwrap(), 1);
    }

    #[test]
    fn sqrt_examples() {
        // √(1+5) exists in Q₅
        let s = hensel_sqrt(&q5(6)).unwrap();
        assert!(s.mul(&s).eq_prec(&q5(6)));
        assert_eq!(s.residue().unwrap(), 1); // canonical branch
        // 2 is a non-residue mod 5
        assert!(matches!(hensel_sqrt(&q5(2)), Err(Error::NoRoot(_))));
        // √1 = 1
        let one = hensel_sqrt(&q5(1)).unwrap();
        assert!(one.eq_prec(&q5(1)));
        // even valuation: √25 = 5 up to branch
        let s = hensel_sqrt(&q5(25)).unwrap();
        assert_eq!(s.valuation(), Some(1));
    }

    #[test]
    fn polygon_examples() {
        let f = PadicPoly::from_bigints(5, &[BigInt::from(-5), BigInt::from(0), BigInt::from(1)], 30);
        assert_eq!(newton_polygon(&f).unwrap(), vec![((1, 2), 2)]);
        let g = PadicPoly::from_bigints(5, &[BigInt::from(-6), BigInt::from(0), BigInt::from(1)], 30);
        assert_eq!(newton_polygon(&g).unwrap(), vec![((0, 1), 2)]);
        let h = PadicPoly::from_bigints(
            5,
            &[-5, 0, 0, 0, 0, 0, 1].iter().map(|&n| BigInt::from(n)).collect::<Vec<_>>(),
            30,
        );
        assert_eq!(newton_polygon(&h).unwrap(), vec![((1, 6), 6)]);
        // (x²−6)(x²−5) = x⁴ − 11x² + 30: slopes 0 and 1/2
        let m = PadicPoly::from_bigints(
            5,
            &[30, 0, -11, 0, 1].iter().map(|&n| BigInt::from(n)).collect::<Vec<_>>(),
            30,
        );
        assert_eq!(newton_polygon(&m).unwrap(), vec![((0, 1), 2), ((1, 2), 2)]);
    }

    #[test]
    fn eisenstein_polygon_slope() {
        // Eisenstein of degree n has polygon [(1/n, n)]
        for n in [2usize, 3, 5, 7] {
            let mut coeffs = vec![BigInt::from(5)];
            coeffs.extend(std::iter::repeat(BigInt::zero()).take(n - 1));
            coeffs.push(BigInt::one());
            let f = PadicPoly::from_bigints(5, &coeffs, 30);
            assert_eq!(newton_polygon(&f).unwrap(), vec![((1, n as i64), n as u32)]);
        }
    }
}
