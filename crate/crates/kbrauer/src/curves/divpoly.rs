//! Division polynomials in the odd/even split representation: for odd n,
//! ψ_n is a polynomial in x; for even n, ψ_n = ψ̃_n·ψ₂ with ψ₂² = S(x) =
//! 4x³ + b₂x² + 2b₄x + b₆.

use crate::error::Result;
use crate::field::Field;
use crate::poly::{self, Poly};

use super::Model;

pub struct DivisionPolys<E> {
    /// ψ̃_0, ψ̃_1, …: ψ_n = ψ̃_n for odd n, ψ̃_n·ψ₂ for even n
    tilde: Vec<Poly<E>>,
    /// S = ψ₂² as a polynomial in x
    pub s: Poly<E>,
}

impl<E: Clone + std::fmt::Debug> DivisionPolys<E> {
    /// Builds ψ̃_0 … ψ̃_max (max ≥ 2).
    pub fn new<F: Field<E = E>>(f: &F, m: &Model<E>, max: usize) -> Result<Self> {
        let (b2, b4, b6, b8) = m.b_invariants(f);
        let s = Poly::new(vec![
            b6.clone(),
            f.mul(&f.from_i64(2), &b4),
            b2.clone(),
            f.from_i64(4),
        ]);
        let mut tilde: Vec<Poly<E>> = Vec::with_capacity(max + 3);
        tilde.push(poly::zero(f)); // ψ̃_0
        tilde.push(poly::one(f)); // ψ̃_1
        tilde.push(poly::one(f)); // ψ̃_2 (ψ₂ = 1·ψ₂)
        // ψ₃ = 3x⁴ + b₂x³ + 3b₄x² + 3b₆x + b₈
        tilde.push(Poly::new(vec![
            b8.clone(),
            f.mul(&f.from_i64(3), &b6),
            f.mul(&f.from_i64(3), &b4),
            b2.clone(),
            f.from_i64(3),
        ]));
        // ψ₄/ψ₂ = 2x⁶ + b₂x⁵ + 5b₄x⁴ + 10b₆x³ + 10b₈x² + (b₂b₈−b₄b₆)x + (b₄b₈−b₆²)
        tilde.push(Poly::new(vec![
            f.sub(&f.mul(&b4, &b8), &f.mul(&b6, &b6)),
            f.sub(&f.mul(&b2, &b8), &f.mul(&b4, &b6)),
            f.mul(&f.from_i64(10), &b8),
            f.mul(&f.from_i64(10), &b6),
            f.mul(&f.from_i64(5), &b4),
            b2.clone(),
            f.from_i64(2),
        ]));
        let s2 = poly::mul(f, &s, &s);
        for n in 5..=max.max(4) {
            let t = if n % 2 == 1 {
                let m2 = (n - 1) / 2;
                // ψ_{2m+1} = ψ_{m+2}ψ_m³ − ψ_{m−1}ψ_{m+1}³
                let a = poly::mul(f, &tilde[m2 + 2], &poly::pow(f, &tilde[m2], 3));
                let b = poly::mul(f, &tilde[m2 - 1], &poly::pow(f, &tilde[m2 + 1], 3));
                if m2 % 2 == 0 {
                    poly::sub(f, &poly::mul(f, &s2, &a), &b)
                } else {
                    poly::sub(f, &a, &poly::mul(f, &s2, &b))
                }
            } else {
                let m2 = n / 2;
                // ψ̃_{2m} = ψ̃_m(ψ̃_{m+2}ψ̃_{m−1}² − ψ̃_{m−2}ψ̃_{m+1}²)
                let a = poly::mul(
                    f,
                    &tilde[m2 + 2],
                    &poly::mul(f, &tilde[m2 - 1], &tilde[m2 - 1]),
                );
                let b = poly::mul(
                    f,
                    &tilde[m2 - 2],
                    &poly::mul(f, &tilde[m2 + 1], &tilde[m2 + 1]),
                );
                poly::mul(f, &tilde[m2], &poly::sub(f, &a, &b))
            };
            tilde.push(t);
        }
        Ok(DivisionPolys { tilde, s })
    }

    pub fn tilde(&self, n: usize) -> &Poly<E> {
        &self.tilde[n]
    }

    /// ψ_n² as a polynomial in x.
    pub fn psi_squared<F: Field<E = E>>(&self, f: &F, n: usize) -> Poly<E> {
        let t2 = poly::mul(f, &self.tilde[n], &self.tilde[n]);
        if n % 2 == 0 {
            poly::mul(f, &t2, &self.s)
        } else {
            t2
        }
    }

    /// φ_n = x·ψ_n² − ψ_{n+1}ψ_{n−1} as a polynomial in x.
    pub fn phi<F: Field<E = E>>(&self, f: &F, n: usize) -> Poly<E> {
        let xpsi2 = poly::mul(f, &poly::x(f), &self.psi_squared(f, n));
        let cross = poly::mul(f, &self.tilde[n + 1], &self.tilde[n - 1]);
        // for odd n both neighbours are even: ψ_{n+1}ψ_{n−1} = ψ̃ψ̃·S
        let cross = if n % 2 == 1 {
            poly::mul(f, &cross, &self.s)
        } else {
            cross
        };
        poly::sub(f, &xpsi2, &cross)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{model_of, scalar_mul, CurveSpec, Point};
    use crate::field::{Field, Fq, Rationals};
    use crate::poly::{degree, eval};

    #[test]
    fn psi3_matches_textbook() {
        // y² = x³ + Ax + B: ψ₃ = 3x⁴ + 6Ax² + 12Bx − A²
        let q = Rationals;
        let a = 5i64;
        let b = 7i64;
        let m = Model {
            a1: q.from_i64(0),
            a2: q.from_i64(0),
            a3: q.from_i64(0),
            a4: q.from_i64(a),
            a6: q.from_i64(b),
        };
        let dp = DivisionPolys::new(&q, &m, 4).unwrap();
        let expect = poly::from_i64(&q, &[-a * a, 12 * b, 6 * a, 0, 3]);
        assert_eq!(dp.tilde(3).coeffs, expect.coeffs);
    }

    #[test]
    fn degrees() {
        let q = Rationals;
        let m = model_of(&CurveSpec::zeta3(5).unwrap()).over(&q).unwrap();
        let dp = DivisionPolys::new(&q, &m, 8).unwrap();
        // deg ψ_n = (n²−1)/2 for odd n; deg φ_n = n²
        assert_eq!(degree(&q, dp.tilde(5)), Some(12));
        assert_eq!(degree(&q, dp.tilde(7)), Some(24));
        assert_eq!(degree(&q, &dp.phi(&q, 5)), Some(25));
        assert_eq!(degree(&q, &dp.phi(&q, 3)), Some(9));
        assert_eq!(degree(&q, dp.tilde(1)), Some(0));
    }

    #[test]
    fn multiplication_formula_over_fp() {
        // x([n]P) = φ_n/ψ_n² on random points over F_p
        for p in [7u64, 13, 31] {
            let fq = Fq::prime(p);
            let spec = CurveSpec::zeta3(3).unwrap();
            let wm = model_of(&spec);
            let m = wm.reduce_mod_p(p).unwrap();
            let dp = DivisionPolys::new(&fq, &m, 8).unwrap();
            for xi in 0..p {
                let x = vec![xi];
                let rhs = m.rhs(&fq, &x);
                let Some(y) = fq.sqrt(&rhs).unwrap() else { continue };
                let pt = Point::Affine(x.clone(), y);
                if !m.contains(&fq, &pt) {
                    continue;
                }
                for n in [3usize, 5, 7] {
                    let npt = scalar_mul(&fq, &m, n as i64, &pt).unwrap();
                    let psi2 = eval(&fq, &dp.psi_squared(&fq, n), &x);
                    let phi = eval(&fq, &dp.phi(&fq, n), &x);
                    match npt {
                        Point::Infinity => assert!(fq.is_zero(&psi2), "p={p} x={xi} n={n}"),
                        Point::Affine(nx, _) => {
                            assert!(!fq.is_zero(&psi2));
                            let expect = fq.div(&phi, &psi2).unwrap();
                            assert_eq!(nx, expect, "p={p} x={xi} n={n}");
                        }
                    }
                }
            }
        }
    }
}
