//! Arithmetic in imaginary quadratic orders of class number one: norms,
//! conjugation, E-primary normalization, sextic residue symbols,
//! reciprocity verification, and Cornacchia-style splitting of primes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Euclid, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::ratfact::{kronecker, FactoredRational, FieldData};

/// Element a + b·ω of the maximal order of an imaginary quadratic field,
/// where ω is ζ₃ for d = 3, i for d = 1, √−d when −d ≡ 2,3 (mod 4) and
/// (1+√−d)/2 when −d ≡ 1 (mod 4).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadInt {
    pub field: FieldData,
    pub a: BigInt,
    pub b: BigInt,
}

/// Trace and norm of ω, so that ω² = t·ω − n.
fn omega_trace_norm(field: &FieldData) -> (i64, i64) {
    match field.d {
        3 => (-1, 1), // ζ₃: x² + x + 1
        1 => (0, 1),  // i: x² + 1
        d if (-(d as i64)).rem_euclid(4) == 1 => (1, (1 + d as i64) / 4),
        d => (0, d as i64), // √−d
    }
}

impl QuadInt {
    pub fn new(field: FieldData, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { field, a: a.into(), b: b.into() }
    }

    pub fn zeta3_elem(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt::new(FieldData::zeta3(), a, b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> QuadInt {
        let (t, _) = omega_trace_norm(&self.field);
        QuadInt { field: self.field, a: &self.a + BigInt::from(t) * &self.b, b: -&self.b }
    }

    pub fn norm(&self) -> BigInt {
        let (t, n) = omega_trace_norm(&self.field);
        &self.a * &self.a + BigInt::from(t) * &self.a * &self.b + BigInt::from(n) * &self.b * &self.b
    }

    pub fn mul(&self, other: &QuadInt) -> QuadInt {
        assert_eq!(self.field, other.field, "mixed fields");
        let (t, n) = omega_trace_norm(&self.field);
        let ac = &self.a * &other.a;
        let bd = &self.b * &other.b;
        let mixed = &self.a * &other.b + &self.b * &other.a;
        QuadInt {
            field: self.field,
            a: ac - BigInt::from(n) * &bd,
            b: mixed + BigInt::from(t) * bd,
        }
    }

    pub fn neg(&self) -> QuadInt {
        QuadInt { field: self.field, a: -&self.a, b: -&self.b }
    }

    /// The six units of Z[ζ₃]: ±1, ±ζ₃, ±ζ₃².
    pub fn zeta3_units() -> Vec<QuadInt> {
        let f = FieldData::zeta3();
        vec![
            QuadInt::new(f, 1, 0),
            QuadInt::new(f, -1, 0),
            QuadInt::new(f, 0, 1),
            QuadInt::new(f, 0, -1),
            QuadInt::new(f, -1, -1), // ζ₃²
            QuadInt::new(f, 1, 1),   // −ζ₃²
        ]
    }

    /// True iff this element is prime in O_K: either its norm is a rational
    /// prime (split or ramified) or it is a unit multiple of an inert
    /// rational prime.
    pub fn is_prime(&self) -> bool {
        let n = self.norm();
        let Some(n) = n.to_u64() else { return false };
        if arith::is_prime_u64(n) {
            return true;
        }
        // unit·q for an inert rational prime q with N = q²
        if let Some(q) = arith::perfect_sqrt(&BigInt::from(n)).and_then(|r| r.to_u64()) {
            if arith::is_prime_u64(q) {
                let qb = BigInt::from(q);
                return (&self.a % &qb).is_zero()
                    && (&self.b % &qb).is_zero()
                    && kronecker(self.field.discriminant, q) == Ok(-1);
            }
        }
        false
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*w[d={}]", self.a, self.b, self.field.d)
    }
}

/// A sixth root of unity ζ₆^k in Z[ζ₃], with ζ₆ = 1 + ζ₃.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootOfUnity6 {
    k: u8,
}

impl RootOfUnity6 {
    pub fn new(k: i64) -> Self {
        RootOfUnity6 { k: k.rem_euclid(6) as u8 }
    }

    pub fn one() -> Self {
        RootOfUnity6 { k: 0 }
    }

    pub fn exponent(&self) -> u8 {
        self.k
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    pub fn mul(&self, other: &RootOfUnity6) -> RootOfUnity6 {
        RootOfUnity6::new(self.k as i64 + other.k as i64)
    }

    pub fn pow(&self, e: i64) -> RootOfUnity6 {
        RootOfUnity6::new(self.k as i64 * e)
    }

    pub fn inv(&self) -> RootOfUnity6 {
        self.pow(-1)
    }

    /// As an element of Z[ζ₃].
    pub fn to_quadint(&self) -> QuadInt {
        // ζ₆^k for k = 0..5: 1, 1+ζ₃, ζ₃, −1, −1−ζ₃, −ζ₃
        let (a, b) = match self.k {
            0 => (1, 0),
            1 => (1, 1),
            2 => (0, 1),
            3 => (-1, 0),
            4 => (-1, -1),
            _ => (0, -1),
        };
        QuadInt::zeta3_elem(a, b)
    }
}

impl fmt::Display for RootOfUnity6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // canonical ±ζ₃^j form
        let s = match self.k {
            0 => "1",
            1 => "-zeta3^2",
            2 => "zeta3",
            3 => "-1",
            4 => "zeta3^2",
            _ => "-zeta3",
        };
        write!(f, "{s}")
    }
}

/// E-primary test for z = a + bζ₃: b ≡ 0 (mod 3), and the mod-4 condition
/// depending on the parities of a and b.
pub fn is_e_primary(z: &QuadInt) -> Result<bool> {
    if z.field.d != 3 {
        return Err(Error::domain("E-primary is defined in Z[zeta3]"));
    }
    if z.is_zero() {
        return Err(Error::domain("E-primary test of zero"));
    }
    let a4 = (&z.a).rem_euclid(&BigInt::from(4)).to_i64().unwrap();
    let b4 = (&z.b).rem_euclid(&BigInt::from(4)).to_i64().unwrap();
    let b3 = (&z.b).rem_euclid(&BigInt::from(3)).to_i64().unwrap();
    if b3 != 0 {
        return Ok(false);
    }
    let a_even = a4 % 2 == 0;
    let b_even = b4 % 2 == 0;
    Ok(if b_even {
        (a4 + b4) % 4 == 1
    } else if a_even {
        b4 == 1
    } else {
        a4 == 3
    })
}

/// The unique E-primary unit multiple of z (requires N(z) coprime to 6).
pub fn e_primary_associate(z: &QuadInt) -> Result<QuadInt> {
    if z.field.d != 3 {
        return Err(Error::domain("E-primary is defined in Z[zeta3]"));
    }
    let mut found = None;
    for u in QuadInt::zeta3_units() {
        let w = u.mul(z);
        if is_e_primary(&w)? {
            if found.is_some() {
                return Err(Error::internal(format!("multiple E-primary associates of {z}")));
            }
            found = Some(w);
        }
    }
    found.ok_or_else(|| Error::domain(format!("{z} has no E-primary associate (norm not coprime to 6)")))
}

/// Residue field of Z[ζ₃]/(π).  Elements are x + y·ζ̄ with ζ̄ the image of
/// ζ₃; for split π this is F_p with ζ̄ a scalar, for inert π = unit·q it is
/// F_{q²} represented as pairs modulo x² + x + 1.
enum ResidueField {
    Split { p: u64, zeta: u64 },
    Inert { q: u64 },
}

impl ResidueField {
    fn new(pi: &QuadInt) -> Result<ResidueField> {
        if pi.field.d != 3 {
            return Err(Error::domain("sextic symbols live in Z[zeta3]"));
        }
        if !pi.is_prime() {
            return Err(Error::domain(format!("{pi} is not prime")));
        }
        let n = pi.norm().to_u64().ok_or_else(|| Error::resource("norm too large"))?;
        if arith::is_prime_u64(n) {
            if n == 3 {
                return Err(Error::domain("norm 3 is ramified; N(pi) must be 1 mod 6"));
            }
            // a + b·ζ ≡ 0 mod π  ⇒  ζ ≡ −a/b
            let p = n;
            let a = pi.a.rem_euclid(&BigInt::from(p)).to_u64().unwrap();
            let b = pi.b.rem_euclid(&BigInt::from(p)).to_u64().unwrap();
            let binv = arith::mod_inv_u64(b, p)
                .ok_or_else(|| Error::internal("split prime with b ≡ 0"))?;
            let zeta = arith::mod_mul_u64((p - a) % p, binv, p);
            Ok(ResidueField::Split { p, zeta })
        } else {
            let q = arith::perfect_sqrt(&BigInt::from(n))
                .and_then(|r| r.to_u64())
                .ok_or_else(|| Error::domain("norm is neither prime nor a prime square"))?;
            Ok(ResidueField::Inert { q })
        }
    }

    fn order(&self) -> u64 {
        match self {
            ResidueField::Split { p, .. } => *p,
            ResidueField::Inert { q } => q * q,
        }
    }

    /// Image of a + b·ζ₃; (x, y) coordinates with y = 0 in the split case.
    fn embed(&self, z: &QuadInt) -> (u64, u64) {
        match self {
            ResidueField::Split { p, zeta } => {
                let a = z.a.rem_euclid(&BigInt::from(*p)).to_u64().unwrap();
                let b = z.b.rem_euclid(&BigInt::from(*p)).to_u64().unwrap();
                ((a + arith::mod_mul_u64(b, *zeta, *p)) % p, 0)
            }
            ResidueField::Inert { q } => (
                z.a.rem_euclid(&BigInt::from(*q)).to_u64().unwrap(),
                z.b.rem_euclid(&BigInt::from(*q)).to_u64().unwrap(),
            ),
        }
    }

    fn mul(&self, u: (u64, u64), v: (u64, u64)) -> (u64, u64) {
        match self {
            ResidueField::Split { p, .. } => (arith::mod_mul_u64(u.0, v.0, *p), 0),
            ResidueField::Inert { q } => {
                // (a + bζ)(c + dζ) with ζ² = −1 − ζ
                let q = *q;
                let ac = arith::mod_mul_u64(u.0, v.0, q);
                let bd = arith::mod_mul_u64(u.1, v.1, q);
                let mixed = (arith::mod_mul_u64(u.0, v.1, q) + arith::mod_mul_u64(u.1, v.0, q)) % q;
                ((ac + q - bd % q) % q, (mixed + q - bd % q) % q)
            }
        }
    }

    fn pow(&self, mut base: (u64, u64), mut e: u64) -> (u64, u64) {
        let mut acc = (1u64, 0u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Sextic residue symbol (λ/π)₆: the unique sixth root of unity congruent
/// to λ^{(N(π)−1)/6} modulo π.
pub fn residue_symbol6(lambda: &QuadInt, pi: &QuadInt) -> Result<RootOfUnity6> {
    let rf = ResidueField::new(pi)?;
    let n = rf.order();
    if n % 6 != 1 {
        return Err(Error::domain(format!("N(pi) = {n} is not 1 mod 6")));
    }
    let lam = rf.embed(lambda);
    if lam == (0, 0) {
        return Err(Error::domain("lambda is not coprime to pi"));
    }
    let s = rf.pow(lam, (n - 1) / 6);
    for k in 0..6i64 {
        let u = RootOfUnity6::new(k);
        if rf.embed(&u.to_quadint()) == s {
            return Ok(u);
        }
    }
    Err(Error::internal("power residue did not land on a sixth root of unity"))
}

/// Sextic symbol of a factored rational: multiplicative extension of
/// residue_symbol6 over sign and prime factors (negative exponents invert).
pub fn symbol6_of_rational(t: &FactoredRational, pi: &QuadInt) -> Result<RootOfUnity6> {
    let mut acc = RootOfUnity6::one();
    if t.sign() == -1 {
        acc = acc.mul(&residue_symbol6(&QuadInt::zeta3_elem(-1, 0), pi)?);
    }
    for (&p, &e) in t.factors() {
        let s = residue_symbol6(&QuadInt::zeta3_elem(p as i64, 0), pi)?;
        acc = acc.mul(&s.pow(e));
    }
    Ok(acc)
}

/// Verifies the sextic reciprocity law for a pair of coprime E-primary
/// primes: (β/γ)₆ = (−1)^{(N(β)−1)/2 · (N(γ)−1)/2} (γ/β)₆.
pub fn reciprocity_check(beta: &QuadInt, gamma: &QuadInt) -> Result<bool> {
    if !is_e_primary(beta)? || !is_e_primary(gamma)? {
        return Err(Error::domain("reciprocity requires E-primary inputs"));
    }
    if !beta.is_prime() || !gamma.is_prime() {
        return Err(Error::domain("reciprocity check restricted to primes"));
    }
    let nb = beta.norm();
    let ng = gamma.norm();
    // coprimality: distinct primes up to units ⇔ distinct prime ideals here;
    // equal norms with equal ideals is the disallowed case
    let bg = residue_symbol6(beta, gamma);
    let gb = residue_symbol6(gamma, beta);
    let (bg, gb) = match (bg, gb) {
        (Ok(x), Ok(y)) => (x, y),
        _ => return Err(Error::domain("inputs are not coprime")),
    };
    let exp_b: BigInt = (&nb - 1) / 2;
    let exp_g: BigInt = (&ng - 1) / 2;
    let sign_odd: BigInt = (exp_b % 2) * (exp_g % 2);
    let sign = if sign_odd.is_zero() { RootOfUnity6::one() } else { RootOfUnity6::new(3) };
    Ok(bg == sign.mul(&gb))
}

/// Splits a rational prime in O_K when possible: returns π with N(π) = p
/// for split p, None for inert p, and an error for ramified p.
/// Uses the modified Cornacchia algorithm on u² + |Δ|v² = 4p.
pub fn split_prime(k: &FieldData, p: u64) -> Result<Option<QuadInt>> {
    if !arith::is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let disc = k.discriminant;
    if (disc.rem_euclid(p as i64)) == 0 {
        return Err(Error::domain(format!("{p} ramifies in Q(sqrt(-{}))", k.d)));
    }
    if kronecker(disc, p)? == -1 {
        return Ok(None);
    }
    let abs_d = disc.unsigned_abs();
    let (u, v) = if p == 2 {
        // only Δ ≡ 1 (mod 8) splits 2; then u² + |Δ| = 8 with v = 1
        let r = 8i64 - abs_d as i64;
        let u = arith::perfect_sqrt(&BigInt::from(r))
            .ok_or_else(|| Error::internal("2 expected to split"))?;
        (u.to_u64().unwrap(), 1u64)
    } else {
        let mut x0 = arith::sqrt_mod_p((disc.rem_euclid(p as i64)) as u64, p)
            .ok_or_else(|| Error::internal("kronecker said split but no sqrt"))?;
        if (x0 % 2) != (abs_d % 2) {
            x0 = p - x0;
        }
        let mut a = 2 * p;
        let mut b = x0;
        let l = (2.0 * (p as f64).sqrt()) as u64;
        while b > l {
            (a, b) = (b, a % b);
        }
        let c = 4 * p - b * b;
        if c % abs_d != 0 {
            return Err(Error::internal("Cornacchia failed in a class-number-one field"));
        }
        let v = arith::perfect_sqrt(&BigInt::from(c / abs_d))
            .ok_or_else(|| Error::internal("Cornacchia: non-square cofactor"))?;
        (b, v.to_u64().unwrap())
    };
    // reconstruct a + bω with norm p from u² + |Δ|v² = 4p
    let (u, v) = (u as i64, v as i64);
    let pi = match k.d {
        3 => QuadInt::new(*k, (u + v) / 2, v), // ω = ζ₃, 2a − b = u
        1 => QuadInt::new(*k, u / 2, v),
        d if (-(d as i64)).rem_euclid(4) == 1 => QuadInt::new(*k, (u - v) / 2, v),
        _ => QuadInt::new(*k, u / 2, v),
    };
    if pi.norm() != BigInt::from(p) {
        return Err(Error::internal(format!("split of {p}: norm mismatch for {pi}")));
    }
    Ok(Some(pi))
}

/// Deterministic sampler of E-primary split primes of Z[ζ₃], avoiding a
/// set of forbidden rational primes.  Iterates rational primes p ≡ 1
/// (mod 3) upward from a seeded random start.
pub struct EPrimarySampler {
    next_candidate: u64,
    forbidden: Vec<u64>,
}

impl EPrimarySampler {
    pub fn new(seed: u64, forbidden: Vec<u64>) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let start: u64 = rng.gen_range(7..100_000);
        EPrimarySampler { next_candidate: start, forbidden }
    }

    /// Start from the smallest primes (used where reproducing fixed small
    /// witnesses matters more than randomization).
    pub fn from_start(start: u64, forbidden: Vec<u64>) -> Self {
        EPrimarySampler { next_candidate: start.max(7), forbidden }
    }

    pub fn next_prime(&mut self) -> Result<QuadInt> {
        let mut budget = 2_000_000u64;
        loop {
            let p = self.next_candidate;
            self.next_candidate += 1;
            budget = budget.checked_sub(1).ok_or_else(|| Error::resource("prime sampler exhausted"))?;
            if p % 3 != 1 || !arith::is_prime_u64(p) || self.forbidden.contains(&p) {
                continue;
            }
            let pi = split_prime(&FieldData::zeta3(), p)?
                .ok_or_else(|| Error::internal("p ≡ 1 mod 3 must split in Z[zeta3]"))?;
            return e_primary_associate(&pi);
        }
    }
}

/// Sampling oracle for the order-ℓ membership criteria: samples E-primary
/// primes π and returns true iff the sextic symbol of the criterion
/// argument (2⁴·5·cd for ℓ = 5, −2⁴·7⁻¹·cd for ℓ = 7) is trivial at every
/// sampled π.
pub fn character_criterion_sample(
    ell: u64,
    cd: &FactoredRational,
    trials: u32,
    seed: u64,
) -> Result<bool> {
    if trials == 0 {
        return Err(Error::domain("trials must be ≥ 1"));
    }
    let argument = criterion_argument(ell, cd)?;
    let mut forbidden = vec![2, 3, ell];
    forbidden.extend(argument.factors().keys().copied());
    let mut sampler = EPrimarySampler::new(seed, forbidden);
    for _ in 0..trials {
        let pi = sampler.next_prime()?;
        if !symbol6_of_rational(&argument, &pi)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The membership-test argument of the order-ℓ criterion.
pub fn criterion_argument(ell: u64, cd: &FactoredRational) -> Result<FactoredRational> {
    match ell {
        5 => Ok(FactoredRational::from_parts(1, &[(2, 4), (5, 1)])?.mul(cd)),
        7 => Ok(FactoredRational::from_parts(-1, &[(2, 4), (7, -1)])?.mul(cd)),
        _ => Err(Error::domain(format!("criterion only defined for ell in {{5,7}}, got {ell}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfact::coset_member;
    use crate::ratfact::CosetSubgroup;

    #[test]
    fn norms_and_conjugation() {
        let z = QuadInt::zeta3_elem(3, 1);
        assert_eq!(z.norm(), BigInt::from(7));
        assert_eq!(z.mul(&z.conj()).a, BigInt::from(7));
        assert!(z.mul(&z.conj()).b.is_zero());
        let w = QuadInt::new(FieldData::new(11).unwrap(), 0, 1);
        assert_eq!(w.norm(), BigInt::from(3));
        let c = w.conj();
        assert_eq!(c, QuadInt::new(FieldData::new(11).unwrap(), 1, -1));
        // conj is an involution
        assert_eq!(c.conj(), w);
    }

    #[test]
    fn e_primary_examples() {
        let varpi = QuadInt::zeta3_elem(-1, -3);
        assert!(is_e_primary(&varpi).unwrap());
        let m = QuadInt::zeta3_elem(-2, -3); // −conj(ϖ)
        assert_eq!(varpi.conj().neg(), m);
        assert!(is_e_primary(&m).unwrap());
        assert!(!is_e_primary(&QuadInt::zeta3_elem(1, 1)).unwrap());
    }

    #[test]
    fn e_primary_associate_examples() {
        let z = QuadInt::zeta3_elem(-1, -3);
        assert_eq!(e_primary_associate(&z).unwrap(), z);
        // norm 3 (ramified): no associate
        assert!(e_primary_associate(&QuadInt::zeta3_elem(1, -1)).is_err());
        // norm 7: exactly one of the six unit multiples is E-primary
        let z = QuadInt::zeta3_elem(3, 1);
        let w = e_primary_associate(&z).unwrap();
        assert!(is_e_primary(&w).unwrap());
        let count = QuadInt::zeta3_units()
            .iter()
            .filter(|u| is_e_primary(&u.mul(&z)).unwrap())
            .count();
        assert_eq!(count, 1);
    }

    #[test]
    fn unique_e_primary_associate_sampled() {
        for (a, b) in [(5i64, 3i64), (4, -3), (10, 9), (-7, -12), (1, -6), (8, 3)] {
            let z = QuadInt::zeta3_elem(a, b);
            if num_integer::gcd(z.norm(), BigInt::from(6)) != BigInt::from(1) {
                continue;
            }
            let count = QuadInt::zeta3_units()
                .iter()
                .filter(|u| is_e_primary(&u.mul(&z)).unwrap())
                .count();
            assert_eq!(count, 1, "z = {a}+{b}w");
        }
    }

    #[test]
    fn residue_symbol_examples() {
        let pi = QuadInt::zeta3_elem(-1, 3);
        assert_eq!(pi.norm(), BigInt::from(13));
        let one = residue_symbol6(&QuadInt::zeta3_elem(1, 0), &pi).unwrap();
        assert!(one.is_one());
        // (2/π)₆ = −ζ₃ for π = −1+3ζ₃
        let s = residue_symbol6(&QuadInt::zeta3_elem(2, 0), &pi).unwrap();
        assert_eq!(format!("{s}"), "-zeta3");
        // multiplicativity in the numerator
        let l1 = QuadInt::zeta3_elem(2, 1);
        let l2 = QuadInt::zeta3_elem(4, -1);
        let s12 = residue_symbol6(&l1.mul(&l2), &pi).unwrap();
        let s1 = residue_symbol6(&l1, &pi).unwrap();
        let s2 = residue_symbol6(&l2, &pi).unwrap();
        assert_eq!(s12, s1.mul(&s2));
    }

    #[test]
    fn residue_symbol_has_order_dividing_6() {
        let mut sampler = EPrimarySampler::from_start(7, vec![]);
        for _ in 0..20 {
            let pi = sampler.next_prime().unwrap();
            for l in [2i64, 5, 6, 11] {
                let lam = QuadInt::zeta3_elem(l, 0);
                if residue_symbol6(&lam, &pi).is_err() {
                    continue;
                }
                let s = residue_symbol6(&lam, &pi).unwrap();
                assert!(s.pow(6).is_one());
            }
        }
    }

    #[test]
    fn split_prime_examples() {
        let s2 = FieldData::new(2).unwrap();
        let pi = split_prime(&s2, 3).unwrap().unwrap();
        assert_eq!(pi.norm(), BigInt::from(3));
        let z3 = FieldData::zeta3();
        let pi7 = split_prime(&z3, 7).unwrap().unwrap();
        assert_eq!(pi7.norm(), BigInt::from(7));
        // up to units, π₇ is ϖ = −1−3ζ₃
        let varpi = e_primary_associate(&pi7).unwrap();
        let target = QuadInt::zeta3_elem(-1, -3);
        assert!(varpi == target || varpi == target.conj().neg() || varpi == target.conj());
        assert_eq!(split_prime(&z3, 5).unwrap(), None);
        assert!(split_prime(&z3, 3).is_err()); // ramified
        let s11 = FieldData::new(11).unwrap();
        let pi3 = split_prime(&s11, 3).unwrap().unwrap();
        assert_eq!(pi3.norm(), BigInt::from(3));
    }

    #[test]
    fn split_prime_norm_exact_sampled() {
        for d in [1u64, 2, 3, 11] {
            let k = FieldData::new(d).unwrap();
            for p in arith::primes_from(5).take(40) {
                if (k.discriminant.rem_euclid(p as i64)) == 0 {
                    continue;
                }
                if let Some(pi) = split_prime(&k, p).unwrap() {
                    assert_eq!(pi.norm(), BigInt::from(p), "d={d} p={p}");
                }
            }
        }
    }

    #[test]
    fn reciprocity_small_sample() {
        let mut sampler = EPrimarySampler::from_start(7, vec![]);
        let primes: Vec<QuadInt> = (0..8).map(|_| sampler.next_prime().unwrap()).collect();
        for i in 0..primes.len() {
            for j in (i + 1)..primes.len() {
                assert!(
                    reciprocity_check(&primes[i], &primes[j]).unwrap(),
                    "law failed for {} and {}",
                    primes[i],
                    primes[j]
                );
                // symmetry
                assert!(reciprocity_check(&primes[j], &primes[i]).unwrap());
            }
        }
        // non-coprime pair is a domain error
        assert!(reciprocity_check(&primes[0], &primes[0]).is_err());
    }

    #[test]
    fn reciprocity_with_inert_prime() {
        // −11 is an inert E-primary prime (11 ≡ 2 mod 3, −11 ≡ 1 mod 4)
        let q = QuadInt::zeta3_elem(-11, 0);
        assert!(is_e_primary(&q).unwrap());
        assert!(q.is_prime());
        let mut sampler = EPrimarySampler::from_start(7, vec![11]);
        for _ in 0..5 {
            let pi = sampler.next_prime().unwrap();
            assert!(reciprocity_check(&q, &pi).unwrap());
        }
    }

    #[test]
    fn character_criterion_examples() {
        // cd = 2²·5⁵ makes the ℓ=5 argument a sixth power: all symbols 1
        let cd = FactoredRational::from_parts(1, &[(2, 2), (5, 5)]).unwrap();
        assert!(character_criterion_sample(5, &cd, 40, 1).unwrap());
        // cd = 1: argument 80 is not in ⟨−27⟩Q^×6, a witness shows up fast
        let cd = FactoredRational::one();
        assert!(!character_criterion_sample(5, &cd, 200, 1).unwrap());
        // ℓ=7, cd = −2²·7: argument is 2⁶
        let cd = FactoredRational::from_parts(-1, &[(2, 2), (7, 1)]).unwrap();
        assert!(character_criterion_sample(7, &cd, 40, 1).unwrap());
    }

    #[test]
    fn criterion_matches_coset_membership() {
        // the sampling oracle agrees with exact membership in ⟨−27⟩Q^×6
        let h = CosetSubgroup::minus_27_mod_6();
        let cases = [
            (5u64, FactoredRational::from_parts(1, &[(2, 2), (5, 5)]).unwrap()),
            (5, FactoredRational::one()),
            (5, FactoredRational::from_parts(-1, &[(3, 3), (2, -4), (5, -1)]).unwrap()),
            (7, FactoredRational::from_parts(-1, &[(2, 2), (7, 1)]).unwrap()),
            (7, FactoredRational::from_parts(1, &[(3, 1)]).unwrap()),
        ];
        for (ell, cd) in cases {
            let arg = criterion_argument(ell, &cd).unwrap();
            let exact = coset_member(&arg, &h);
            let sampled = character_criterion_sample(ell, &cd, 120, 42).unwrap();
            assert_eq!(exact, sampled, "ell={ell} cd={cd}");
        }
    }
}
