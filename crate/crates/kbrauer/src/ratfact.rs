//! Exact arithmetic on factored rationals, power-coset membership in
//! Q^×/Q^×n, Kronecker symbols, and ring class field degrees.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// A nonzero rational as sign · ∏ p^e with all exponents nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredRational {
    sign: i8,
    factors: BTreeMap<u64, i64>,
}

impl FactoredRational {
    pub fn one() -> Self {
        FactoredRational { sign: 1, factors: BTreeMap::new() }
    }

    pub fn minus_one() -> Self {
        FactoredRational { sign: -1, factors: BTreeMap::new() }
    }

    /// Build from a sign and (prime, exponent) pairs; zero exponents are
    /// dropped, repeated primes accumulated.
    pub fn from_parts(sign: i8, parts: &[(u64, i64)]) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::domain("sign must be ±1"));
        }
        let mut factors = BTreeMap::new();
        for &(p, e) in parts {
            if !arith::is_prime_u64(p) {
                return Err(Error::domain(format!("{p} is not prime")));
            }
            let entry = factors.entry(p).or_insert(0i64);
            *entry += e;
        }
        factors.retain(|_, e| *e != 0);
        Ok(FactoredRational { sign, factors })
    }

    pub fn from_integer(n: i64) -> Result<Self> {
        factorize(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    pub fn exponent_of(&self, p: u64) -> i64 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.factors.is_empty()
    }

    /// Exact reconstruction as a rational.
    pub fn to_rational(&self) -> BigRational {
        let mut num = BigInt::from(self.sign);
        let mut den = BigInt::one();
        for (&p, &e) in &self.factors {
            if e > 0 {
                num *= arith::big_pow(p, e as u64);
            } else {
                den *= arith::big_pow(p, (-e) as u64);
            }
        }
        BigRational::new(num, den)
    }

    pub fn mul(&self, other: &FactoredRational) -> FactoredRational {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            *factors.entry(p).or_insert(0) += e;
        }
        factors.retain(|_, e| *e != 0);
        FactoredRational { sign: self.sign * other.sign, factors }
    }

    pub fn inv(&self) -> FactoredRational {
        FactoredRational {
            sign: self.sign,
            factors: self.factors.iter().map(|(&p, &e)| (p, -e)).collect(),
        }
    }

    pub fn div(&self, other: &FactoredRational) -> FactoredRational {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> FactoredRational {
        if k == 0 {
            return FactoredRational::one();
        }
        let sign = if self.sign == -1 && k % 2 != 0 { -1 } else { 1 };
        FactoredRational {
            sign,
            factors: self.factors.iter().map(|(&p, &e)| (p, e * k)).collect(),
        }
    }

    pub fn neg(&self) -> FactoredRational {
        FactoredRational { sign: -self.sign, factors: self.factors.clone() }
    }

    /// True iff self ∈ Q^×n (for even n the sign must be +).
    pub fn is_nth_power(&self, n: u32) -> bool {
        if n % 2 == 0 && self.sign == -1 {
            return false;
        }
        self.factors.values().all(|e| e % (n as i64) == 0)
    }

    /// Squarefree part (sign kept, exponents reduced mod 2 to {0,1}).
    pub fn squarefree_part(&self) -> FactoredRational {
        FactoredRational {
            sign: self.sign,
            factors: self
                .factors
                .iter()
                .filter(|(_, &e)| e.rem_euclid(2) == 1)
                .map(|(&p, _)| (p, 1))
                .collect(),
        }
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

impl FromStr for FactoredRational {
    type Err = Error;

    /// Parses "±num/den" or "±num" in base 10.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| Error::domain(format!("bad rational: {s}")))?;
        let den = BigInt::from_str(den).map_err(|_| Error::domain(format!("bad rational: {s}")))?;
        if den.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        factorize(&BigRational::new(num, den))
    }
}

/// Exact factorization of a nonzero rational.  Trial division to 10^6 and
/// then Pollard rho; cofactors beyond 64 bits are rejected.
pub fn factorize(x: &BigRational) -> Result<FactoredRational> {
    if x.is_zero() {
        return Err(Error::domain("cannot factor zero"));
    }
    let sign = if x.is_negative() { -1 } else { 1 };
    let mut factors: BTreeMap<u64, i64> = BTreeMap::new();
    for (value, dir) in [(x.numer().abs(), 1i64), (x.denom().abs(), -1i64)] {
        let mut m: BigUint = value.to_biguint().unwrap();
        // peel small primes first so that huge smooth numbers still pass
        for p in [2u64, 3, 5, 7, 11, 13] {
            let bp = BigUint::from(p);
            while (&m % &bp).is_zero() {
                m /= &bp;
                *factors.entry(p).or_insert(0) += dir;
            }
        }
        let m64 = m.to_u64().ok_or_else(|| {
            Error::resource(format!("cofactor beyond factorization bound: {m}"))
        })?;
        for (p, e) in arith::factor_u64(m64) {
            *factors.entry(p).or_insert(0) += dir * e as i64;
        }
    }
    factors.retain(|_, e| *e != 0);
    Ok(FactoredRational { sign, factors })
}

/// A finitely generated subgroup of Q^×/Q^×n, given by its generators.
#[derive(Debug, Clone)]
pub struct CosetSubgroup {
    modulus: u32,
    generators: Vec<FactoredRational>,
}

impl CosetSubgroup {
    pub fn new(modulus: u32, generators: Vec<FactoredRational>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        Ok(CosetSubgroup { modulus, generators })
    }

    /// ⟨−27⟩ mod 6th powers.
    pub fn minus_27_mod_6() -> Self {
        CosetSubgroup {
            modulus: 6,
            generators: vec![FactoredRational::from_parts(-1, &[(3, 3)]).unwrap()],
        }
    }

    /// ⟨−4⟩ mod 4th powers.
    pub fn minus_4_mod_4() -> Self {
        CosetSubgroup {
            modulus: 4,
            generators: vec![FactoredRational::from_parts(-1, &[(2, 2)]).unwrap()],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// All elements of the generated subgroup of Q^×/Q^×n, as
    /// representatives.  Each generator has order dividing n, so the
    /// enumeration is a product over exponent vectors in [0, n)^k.
    fn elements(&self) -> Vec<FactoredRational> {
        let n = self.modulus as i64;
        let mut elems = vec![FactoredRational::one()];
        for g in &self.generators {
            let mut next = Vec::new();
            for e in 0..n {
                let ge = g.pow(e);
                for h in &elems {
                    next.push(h.mul(&ge));
                }
            }
            elems = next;
        }
        elems
    }
}

/// True iff x ∈ H · Q^×n.
pub fn coset_member(x: &FactoredRational, h: &CosetSubgroup) -> bool {
    let n = h.modulus;
    h.elements().iter().any(|g| x.div(g).is_nth_power(n))
}

/// Kronecker symbol (Δ/p) for prime p: the Legendre symbol for odd p, and
/// for p = 2 the rule 0 if 2 | Δ, +1 if Δ ≡ 1 (mod 8), −1 if Δ ≡ 5 (mod 8).
pub fn kronecker(delta: i64, p: u64) -> Result<i8> {
    if !arith::is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if p == 2 {
        return match delta.rem_euclid(8) {
            0 | 2 | 4 | 6 => Ok(0),
            1 => Ok(1),
            5 => Ok(-1),
            r => Err(Error::domain(format!(
                "({delta}/2) undefined: residue {r} mod 8 is not a discriminant"
            ))),
        };
    }
    let a = (delta.rem_euclid(p as i64)) as u64;
    if a == 0 {
        return Ok(0);
    }
    Ok(if arith::mod_pow_u64(a, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Data of an imaginary quadratic field K = Q(√−d) of class number one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldData {
    /// squarefree positive d with K = Q(√−d)
    pub d: u64,
    pub discriminant: i64,
    pub class_number: u64,
    /// order of the unit group O_K^× (6 for d = 3, 4 for d = 1, else 2)
    pub unit_order: u64,
}

impl FieldData {
    pub fn new(d: u64) -> Result<Self> {
        const CLASS_NUMBER_ONE: [u64; 9] = [1, 2, 3, 7, 11, 19, 43, 67, 163];
        if !CLASS_NUMBER_ONE.contains(&d) {
            return Err(Error::domain(format!(
                "Q(sqrt(-{d})) is not a class-number-one field supported here"
            )));
        }
        let md = -(d as i64);
        let discriminant = if md.rem_euclid(4) == 1 { md } else { 4 * md };
        let unit_order = match d {
            3 => 6,
            1 => 4,
            _ => 2,
        };
        Ok(FieldData { d, discriminant, class_number: 1, unit_order })
    }

    pub fn zeta3() -> Self {
        FieldData::new(3).unwrap()
    }

    pub fn gauss() -> Self {
        FieldData::new(1).unwrap()
    }
}

/// Degree [K_c : K] of the ring class field of the order Z + cO_K:
/// h_K · c / [O_K^× : O_c^×] · ∏_{p|c} (1 − (Δ_K/p)/p).
/// The unit index is 1 for c = 1 and w/2 for c > 1.
pub fn ring_class_degree(k: &FieldData, c: u64) -> Result<u64> {
    if c == 0 {
        return Err(Error::domain("conductor must be ≥ 1"));
    }
    if c == 1 {
        return Ok(k.class_number);
    }
    let unit_index = k.unit_order / 2;
    let mut num = BigInt::from(k.class_number) * BigInt::from(c);
    let mut den = BigInt::from(unit_index);
    for (p, _) in arith::factor_u64(c) {
        let chi = kronecker(k.discriminant, p)?;
        // (1 - chi/p) = (p - chi)/p
        num *= BigInt::from(p as i64 - chi as i64);
        den *= BigInt::from(p);
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    if !r.is_zero() {
        return Err(Error::internal(format!(
            "ring class degree for c={c} is not an integer"
        )));
    }
    q.to_u64()
        .ok_or_else(|| Error::resource("ring class degree overflow".to_string()))
}

/// Largest t with [K_{ℓ^t} : K] ≤ degL — an upper bound for the largest t
/// such that K_{ℓ^t} embeds into a degree-degL extension L of K.
pub fn n_of_ell_bound(k: &FieldData, deg_l: u64, ell: u64) -> Result<u64> {
    if deg_l == 0 {
        return Err(Error::domain("degL must be ≥ 1"));
    }
    if !arith::is_prime_u64(ell) {
        return Err(Error::domain(format!("{ell} is not prime")));
    }
    let mut t = 0u64;
    loop {
        let c = (ell as u128).checked_pow(t as u32 + 1);
        let Some(c) = c.and_then(|c| u64::try_from(c).ok()) else {
            return Ok(t);
        };
        if ring_class_degree(k, c)? <= deg_l {
            t += 1;
        } else {
            return Ok(t);
        }
    }
}

/// Degree of Q(t^{1/6})/Q together with whether the field is Q(ζ₃)
/// (degree 2 and t ∈ −27·Q^×6).  x^6 − t is reducible exactly when
/// t ∈ Q^×2 or t ∈ Q^×3; the degree of a root is 1, 2, 3 or 6.
pub fn sixth_root_degree(t: &FactoredRational) -> (u32, bool) {
    let in_q6 = t.is_nth_power(6);
    let in_q3 = t.is_nth_power(3);
    let in_q2 = t.is_nth_power(2);
    if in_q6 {
        return (1, false);
    }
    if in_q3 {
        // t = u^3, root of x^2 − u
        let minus_27 = FactoredRational::from_parts(-1, &[(3, 3)]).unwrap();
        let is_zeta3 = t.div(&minus_27).is_nth_power(6);
        return (2, is_zeta3);
    }
    if in_q2 {
        return (3, false);
    }
    (6, false)
}

/// Degree of Q(t^{1/4})/Q together with whether the field is Q(i)
/// (degree 2 and t ∈ −4·Q^×4).  x^4 − t is reducible exactly when
/// t ∈ Q^×2 or t ∈ −4·Q^×4.
pub fn fourth_root_degree(t: &FactoredRational) -> (u32, bool) {
    if t.is_nth_power(4) {
        return (1, false);
    }
    if t.is_nth_power(2) {
        return (2, false);
    }
    let minus_4 = FactoredRational::from_parts(-1, &[(2, 2)]).unwrap();
    if t.div(&minus_4).is_nth_power(4) {
        return (2, true);
    }
    (4, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(s: &str) -> FactoredRational {
        s.parse().unwrap()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(fr("1"), FactoredRational::one());
        assert_eq!(fr("-36"), FactoredRational::from_parts(-1, &[(2, 2), (3, 2)]).unwrap());
        assert_eq!(
            fr("50/27"),
            FactoredRational::from_parts(1, &[(2, 1), (5, 2), (3, -3)]).unwrap()
        );
        assert!(factorize(&BigRational::zero()).is_err());
    }

    #[test]
    fn reconstruction_round_trip() {
        for s in ["7/12", "-1", "360", "-50/27", "1"] {
            let f = fr(s);
            assert_eq!(f.to_rational(), s.parse::<BigRational>().unwrap());
        }
    }

    #[test]
    fn coset_examples() {
        let h6 = CosetSubgroup::minus_27_mod_6();
        // 2^6·5^6 is itself a 6th power
        assert!(coset_member(&fr("1000000"), &h6));
        assert!(coset_member(&fr("-27"), &h6));
        // 80 = 2^4·5 is not in ⟨−27⟩Q^×6
        assert!(!coset_member(&fr("80"), &h6));
        let h4 = CosetSubgroup::minus_4_mod_4();
        assert!(coset_member(&fr("81"), &h4));
        assert!(!coset_member(&fr("3"), &h4));
    }

    #[test]
    fn coset_invariance_under_nth_powers() {
        let h = CosetSubgroup::minus_27_mod_6();
        let xs = ["5", "-12", "7/3", "250", "-1/80"];
        let ts = ["2", "-3", "10/7"];
        for x in xs {
            for t in ts {
                let x = fr(x);
                let t6 = fr(t).pow(6);
                assert_eq!(coset_member(&x, &h), coset_member(&x.mul(&t6), &h));
            }
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-3, 2).unwrap(), -1);
        assert_eq!(kronecker(-8, 2).unwrap(), 0);
        assert_eq!(kronecker(-8, 3).unwrap(), 1);
        assert_eq!(kronecker(-4, 5).unwrap(), 1);
        assert_eq!(kronecker(-3, 5).unwrap(), -1);
        assert!(kronecker(-3, 6).is_err());
    }

    #[test]
    fn kronecker_multiplicative_in_delta() {
        // for fixed odd p and discriminant-like arguments
        for p in [3u64, 5, 7, 13, 31] {
            for a in [-3i64, -4, -8, -11, 5, 12] {
                for b in [-3i64, -4, 8, 9] {
                    let lhs = kronecker(a * b, p).unwrap();
                    let rhs = kronecker(a, p).unwrap() * kronecker(b, p).unwrap();
                    assert_eq!(lhs, rhs, "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn ring_class_degrees() {
        let zeta3 = FieldData::zeta3();
        assert_eq!(ring_class_degree(&zeta3, 27).unwrap(), 9);
        assert_eq!(ring_class_degree(&zeta3, 8).unwrap(), 4);
        let sqrt2 = FieldData::new(2).unwrap();
        assert_eq!(ring_class_degree(&sqrt2, 9).unwrap(), 6);
        assert_eq!(ring_class_degree(&zeta3, 1).unwrap(), 1);
    }

    #[test]
    fn ring_class_degree_multiplicative_w2() {
        // for w = 2 fields and coprime squarefree conductors > 1
        for d in [2u64, 11, 19, 43] {
            let k = FieldData::new(d).unwrap();
            for (c1, c2) in [(5u64, 7u64), (3, 10), (6, 35), (11, 13)] {
                let lhs = ring_class_degree(&k, c1 * c2).unwrap();
                let rhs = ring_class_degree(&k, c1).unwrap() * ring_class_degree(&k, c2).unwrap();
                assert_eq!(lhs, rhs, "d={d} c1={c1} c2={c2}");
            }
        }
    }

    #[test]
    fn n_of_ell_examples() {
        let zeta3 = FieldData::zeta3();
        assert_eq!(n_of_ell_bound(&zeta3, 6, 5).unwrap(), 1);
        assert_eq!(n_of_ell_bound(&zeta3, 6, 7).unwrap(), 1);
        let sqrt2 = FieldData::new(2).unwrap();
        assert_eq!(n_of_ell_bound(&sqrt2, 2, 5).unwrap(), 0);
        for d in [1u64, 2, 3, 7, 11] {
            assert_eq!(n_of_ell_bound(&FieldData::new(d).unwrap(), 1, 5).unwrap(), 0);
        }
    }

    #[test]
    fn sixth_root_degrees() {
        assert_eq!(sixth_root_degree(&fr("64")), (1, false));
        assert_eq!(sixth_root_degree(&fr("-27")), (2, true));
        assert_eq!(sixth_root_degree(&fr("8")), (2, false));
        assert_eq!(sixth_root_degree(&fr("4")), (3, false));
        assert_eq!(sixth_root_degree(&fr("5")), (6, false));
        assert_eq!(sixth_root_degree(&fr("1/5")), (6, false));
    }

    #[test]
    fn sixth_root_degree_iff_sixth_power() {
        for s in ["64", "-27", "8", "4", "5", "729", "-729", "1000000"] {
            let t = fr(s);
            assert_eq!(sixth_root_degree(&t).0 == 1, t.is_nth_power(6), "{s}");
        }
    }

    #[test]
    fn fourth_root_degrees() {
        assert_eq!(fourth_root_degree(&fr("16")), (1, false));
        assert_eq!(fourth_root_degree(&fr("-4")), (2, true));
        assert_eq!(fourth_root_degree(&fr("9")), (2, false));
        assert_eq!(fourth_root_degree(&fr("3")), (4, false));
        assert_eq!(fourth_root_degree(&fr("-64")), (2, true));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<FactoredRational>().is_err());
        assert!("1/0".parse::<FactoredRational>().is_err());
        assert!("x".parse::<FactoredRational>().is_err());
    }
}
