//! The expanded scalar polynomial systems, kept as hand-written polynomial
//! evaluations so they cross-validate the matrix forms in `msc`:
//! the 12-equation associativity system, the 8-equation automorphism system,
//! and the five dialgebra axiom systems (12/16/12/16/12 equations).
//!
//! Axiom 1 coincides with the associativity system of the left product and
//! axiom 5 with that of the right product (the corresponding matrix identity
//! is B(B (x) I) = B(I (x) B)).

use crate::field::Elem;
use crate::msc::{Mat2, Msc};
use crate::{Error, Result};

/// Labeled residuals of one named scalar system; all-zero iff satisfied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualVector {
    pub system: &'static str,
    pub residuals: Vec<Elem>,
}

impl ResidualVector {
    pub fn is_zero(&self) -> bool {
        self.residuals.iter().all(Elem::is_zero)
    }
    /// 1-based indices of the equations that fail.
    pub fn failing(&self) -> Vec<usize> {
        self.residuals
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(i, _)| i + 1)
            .collect()
    }
}


/// The twelve associativity equations in the structure constants.
pub fn gse_residuals(a: &Msc) -> ResidualVector {
    ResidualVector { system: "GSEAs", residuals: gse_values(a) }
}

fn gse_values(m: &Msc) -> Vec<Elem> {
    let c = m.ctx();
    let mul = |x: &Elem, y: &Elem| c.mul(x, y).unwrap();
    let sub = |x: &Elem, y: &Elem| c.sub(x, y).unwrap();
    let e = m.entries();
    let (a1, a2, a3, a4) = (&e[0], &e[1], &e[2], &e[3]);
    let (b1, b2, b3, b4) = (&e[4], &e[5], &e[6], &e[7]);
    vec![
        mul(b1, &sub(a2, a3)),
        sub(&mul(a2, b2), &mul(a4, b1)),
        sub(&mul(&sub(a1, b3), a2), &mul(a3, &sub(a1, b2))),
        sub(&mul(&sub(a1, b2), a4), &mul(a2, &sub(a2, b4))),
        sub(&mul(a3, b3), &mul(a4, b1)),
        mul(a4, &sub(b2, b3)),
        sub(&mul(&sub(a1, b3), a4), &mul(a3, &sub(a3, b4))),
        mul(a4, &sub(a2, a3)),
        mul(b1, &sub(b2, b3)),
        sub(&mul(&sub(a2, b4), b1), &mul(b2, &sub(a1, b2))),
        sub(&mul(&sub(a3, b4), b1), &mul(b3, &sub(a1, b3))),
        sub(&mul(&sub(a3, b4), b2), &mul(b3, &sub(a2, b4))),
    ]
}

/// The eight automorphism equations in the candidate entries (x y / z t).
/// The candidate need not be invertible; all-zero residuals plus a nonzero
/// determinant is equivalent to membership in Aut(A).
pub fn aut_residuals(g: &Mat2, a: &Msc) -> Result<ResidualVector> {
    if g.ctx() != a.ctx() {
        return Err(Error::CtxMismatch);
    }
    let c = a.ctx();
    let mul = |x: &Elem, y: &Elem| c.mul(x, y).unwrap();
    let add = |x: &Elem, y: &Elem| c.add(x, y).unwrap();
    let sub = |x: &Elem, y: &Elem| c.sub(x, y).unwrap();
    let e = a.entries();
    let (a1, a2, a3, a4) = (&e[0], &e[1], &e[2], &e[3]);
    let (b1, b2, b3, b4) = (&e[4], &e[5], &e[6], &e[7]);
    let ge = g.entries();
    let (x, y, z, t) = (&ge[0], &ge[1], &ge[2], &ge[3]);
    let one = c.one();
    let residuals = vec![
        // a1 x^2 + ((a2+a3) z - a1) x + a4 z^2 - b1 y
        sub(
            &add(
                &add(
                    &mul(a1, &mul(x, x)),
                    &mul(&sub(&mul(&add(a2, a3), z), a1), x),
                ),
                &mul(a4, &mul(z, z)),
            ),
            &mul(b1, y),
        ),
        // (a1 y + a2 (t-1)) x + (a3 z - b2) y + a4 t z
        add(
            &add(
                &mul(&add(&mul(a1, y), &mul(a2, &sub(t, &one))), x),
                &mul(&sub(&mul(a3, z), b2), y),
            ),
            &mul(a4, &mul(t, z)),
        ),
        // (a1 y + a3 (t-1)) x + (a2 z - b3) y + a4 t z
        add(
            &add(
                &mul(&add(&mul(a1, y), &mul(a3, &sub(t, &one))), x),
                &mul(&sub(&mul(a2, z), b3), y),
            ),
            &mul(a4, &mul(t, z)),
        ),
        // a1 y^2 + ((a2+a3) t - b4) y + a4 (t^2 - x)
        add(
            &add(
                &mul(a1, &mul(y, y)),
                &mul(&sub(&mul(&add(a2, a3), t), b4), y),
            ),
            &mul(a4, &sub(&mul(t, t), x)),
        ),
        // b4 z^2 + ((b2+b3) x - a1) z + b1 (x^2 - t)
        add(
            &add(
                &mul(b4, &mul(z, z)),
                &mul(&sub(&mul(&add(b2, b3), x), a1), z),
            ),
            &mul(b1, &sub(&mul(x, x), t)),
        ),
        // (b4 z + b2 (x-1)) t + (b3 y - a2) z + b1 x y
        add(
            &add(
                &mul(&add(&mul(b4, z), &mul(b2, &sub(x, &one))), t),
                &mul(&sub(&mul(b3, y), a2), z),
            ),
            &mul(b1, &mul(x, y)),
        ),
        // (b4 z + b3 (x-1)) t + (b2 y - a3) z + b1 x y
        add(
            &add(
                &mul(&add(&mul(b4, z), &mul(b3, &sub(x, &one))), t),
                &mul(&sub(&mul(b2, y), a3), z),
            ),
            &mul(b1, &mul(x, y)),
        ),
        // b4 t^2 + ((b2+b3) y - b4) t + b1 y^2 - a4 z
        sub(
            &add(
                &add(
                    &mul(b4, &mul(t, t)),
                    &mul(&sub(&mul(&add(b2, b3), y), b4), t),
                ),
                &mul(b1, &mul(y, y)),
            ),
            &mul(a4, z),
        ),
    ];
    Ok(ResidualVector { system: "SEAut3", residuals })
}

/// Residuals of one of the five dialgebra axiom systems. The left MSC
/// supplies a1..a4/b1..b4 and the right MSC g1..g4/d1..d4.
pub fn dia_residuals(a: &Msc, b: &Msc, axiom: u8) -> Result<ResidualVector> {
    if a.ctx() != b.ctx() {
        return Err(Error::CtxMismatch);
    }
    let c = a.ctx();
    let mul = |x: &Elem, y: &Elem| c.mul(x, y).unwrap();
    let add = |x: &Elem, y: &Elem| c.add(x, y).unwrap();
    let sub = |x: &Elem, y: &Elem| c.sub(x, y).unwrap();
    let ae = a.entries();
    let be = b.entries();
    match axiom {
        1 => Ok(ResidualVector { system: "AXIOM1", residuals: gse_values(a) }),
        5 => Ok(ResidualVector { system: "AXIOM5", residuals: gse_values(b) }),
        2 => {
            // entries of A (I (x) (A - B)), row 1 then row 2
            let mut residuals = Vec::with_capacity(16);
            let diff: Vec<Elem> = (0..8).map(|i| sub(&ae[i], &be[i])).collect();
            for row in 0..2 {
                for half in 0..2 {
                    let l = &ae[row * 4 + half * 2];
                    let r = &ae[row * 4 + half * 2 + 1];
                    for col in 0..4 {
                        residuals.push(add(&mul(l, &diff[col]), &mul(r, &diff[4 + col])));
                    }
                }
            }
            Ok(ResidualVector { system: "AXIOM2", residuals })
        }
        3 => {
            let (a1, a2, a3, a4) = (&ae[0], &ae[1], &ae[2], &ae[3]);
            let (b1, b2, b3, b4) = (&ae[4], &ae[5], &ae[6], &ae[7]);
            let (g1, g2, g3, g4) = (&be[0], &be[1], &be[2], &be[3]);
            let (d1, d2, d3, d4) = (&be[4], &be[5], &be[6], &be[7]);
            let residuals = vec![
                sub(&mul(a3, d1), &mul(b1, g2)),
                sub(&mul(a4, d1), &mul(b2, g2)),
                add(&mul(&sub(d2, g1), a3), &mul(g2, &sub(a1, b3))),
                add(&mul(&sub(d2, g1), a4), &mul(g2, &sub(a2, b4))),
                sub(&mul(a3, d3), &mul(b1, g4)),
                sub(&mul(a4, d3), &mul(b2, g4)),
                sub(&mul(&sub(g3, d4), a3), &mul(g4, &sub(a1, b3))),
                sub(&mul(&sub(g3, d4), a4), &mul(g4, &sub(a2, b4))),
                sub(&mul(&sub(g1, d2), b1), &mul(d1, &sub(a1, b3))),
                sub(&mul(&sub(g1, d2), b2), &mul(d1, &sub(a2, b4))),
                sub(&mul(b1, &sub(g3, d4)), &mul(d3, &sub(a1, b3))),
                sub(&mul(&sub(g3, d4), b2), &mul(d3, &sub(a2, b4))),
            ];
            Ok(ResidualVector { system: "AXIOM3", residuals })
        }
        4 => {
            // entries of B ((A - B) (x) I), row 1 then row 2
            let mut residuals = Vec::with_capacity(16);
            let diff: Vec<Elem> = (0..8).map(|i| sub(&ae[i], &be[i])).collect();
            for row in 0..2 {
                let l = &be[row * 4];
                let m1 = &be[row * 4 + 1];
                let m2 = &be[row * 4 + 2];
                let r = &be[row * 4 + 3];
                for col in 0..4 {
                    residuals.push(add(&mul(l, &diff[col]), &mul(m2, &diff[4 + col])));
                    residuals.push(add(&mul(m1, &diff[col]), &mul(r, &diff[4 + col])));
                }
            }
            Ok(ResidualVector { system: "AXIOM4", residuals })
        }
        _ => Err(Error::Unsupported(format!("axiom index {axiom} (must be 1..=5)"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::msc::{aut_check, Gl2};

    fn f(spec: &str) -> FieldCtx {
        FieldCtx::parse(spec).unwrap()
    }

    #[test]
    fn gse_known_algebras() {
        let c = f("GF(5)");
        assert!(gse_residuals(&Msc::zero(&c)).is_zero());
        assert!(gse_residuals(&Msc::from_ints(&c, [1, 0, 0, 0, 0, 0, 0, 0])).is_zero());
        let bad = Msc::from_ints(&c, [0, 1, 1, 0, 1, 0, 1, -1]);
        assert!(!gse_residuals(&bad).is_zero());
        assert!(!gse_residuals(&bad).failing().is_empty());
    }

    #[test]
    fn gse_matches_matrix_form() {
        let c = f("GF(7)");
        for seed in 0..4000u64 {
            let mut v = [0i64; 8];
            let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15);
            for slot in v.iter_mut() {
                *slot = (s % 7) as i64;
                s /= 7;
            }
            let a = Msc::from_ints(&c, v);
            assert_eq!(gse_residuals(&a).is_zero(), a.assoc_matrix_check(), "{v:?}");
        }
    }

    #[test]
    fn aut_residuals_examples() {
        let c = f("GF(11)");
        let a = Msc::from_ints(&c, [0, 0, 0, 0, 1, 0, 0, 0]);
        let g = Mat2::from_ints(&c, [2, 0, 7, 4]); // t = x^2
        assert!(aut_residuals(&g, &a).unwrap().is_zero());
        let any = Msc::from_ints(&c, [3, 1, 4, 1, 5, 9, 2, 6]);
        assert!(aut_residuals(&Mat2::identity(&c), &any).unwrap().is_zero());
        // over GF(2), As3,2^6 forces y = 0
        let c2 = f("GF(2)");
        let a = Msc::from_ints(&c2, [1, 0, 0, 0, 0, 1, 0, 0]);
        let g = Mat2::from_ints(&c2, [1, 1, 0, 1]);
        assert!(!aut_residuals(&g, &a).unwrap().is_zero());
    }

    #[test]
    fn aut_residuals_match_aut_check() {
        let c = f("GF(5)");
        for seed in 0..3000u64 {
            let mut digs = [0i64; 12];
            let mut s = seed.wrapping_mul(0x2545f4914f6cdd1d).wrapping_add(11);
            for d in digs.iter_mut() {
                *d = (s % 5) as i64;
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                s >>= 3;
            }
            let a = Msc::from_ints(&c, digs[..8].try_into().unwrap());
            let g = Mat2::from_ints(&c, digs[8..].try_into().unwrap());
            let res = aut_residuals(&g, &a).unwrap();
            let invertible = !g.det().unwrap().is_zero();
            let scalar = res.is_zero() && invertible;
            let matrix = invertible && aut_check(&Gl2::new(g.clone()).unwrap(), &a).unwrap();
            assert_eq!(scalar, matrix);
        }
    }

    #[test]
    fn dia_residual_lengths() {
        let c = f("GF(5)");
        let z = Msc::zero(&c);
        for (axiom, len) in [(1u8, 12), (2, 16), (3, 12), (4, 16), (5, 12)] {
            let r = dia_residuals(&z, &z, axiom).unwrap();
            assert_eq!(r.residuals.len(), len);
            assert!(r.is_zero());
        }
        assert!(dia_residuals(&z, &z, 0).is_err());
        assert!(dia_residuals(&z, &z, 6).is_err());
    }

    #[test]
    fn dia_examples() {
        let c = f("GF(5)");
        let a13 = Msc::from_ints(&c, [0, 0, 0, 0, 1, 0, 0, 0]);
        let b = Msc::from_ints(&c, [0, 0, 0, 0, 3, 0, 0, 0]);
        for axiom in 1..=5 {
            assert!(dia_residuals(&a13, &b, axiom).unwrap().is_zero(), "axiom {axiom}");
        }
        let bad = Msc::from_ints(&c, [1, 0, 0, 0, 0, 0, 0, 0]);
        assert!(!dia_residuals(&a13, &bad, 2).unwrap().is_zero());
    }

    #[test]
    fn axioms_one_and_five_are_associativity() {
        let c = f("GF(3)");
        let a = Msc::from_ints(&c, [1, 0, 0, 0, 0, 1, 0, 0]);
        let b = Msc::from_ints(&c, [2, 1, 0, 1, 0, 2, 2, 0]);
        assert_eq!(
            dia_residuals(&a, &b, 1).unwrap().residuals,
            gse_residuals(&a).residuals
        );
        assert_eq!(
            dia_residuals(&a, &b, 5).unwrap().residuals,
            gse_residuals(&b).residuals
        );
    }

    #[test]
    fn dia_residuals_match_matrix_forms() {
        // axioms 2-4 vanish iff the corresponding 2x8 matrix identities hold
        let c = f("GF(3)");
        for seed in 0..2500u64 {
            let mut v = [0i64; 16];
            let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(7);
            for slot in v.iter_mut() {
                *slot = (s % 3) as i64;
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                s >>= 2;
            }
            let a = Msc::from_ints(&c, v[..8].try_into().unwrap());
            let b = Msc::from_ints(&c, v[8..].try_into().unwrap());
            let ax2 = a.times_kron_identity_left(&a).unwrap()
                == a.times_kron_identity_left(&b).unwrap();
            let ax3 = a.times_kron_identity_right(&b).unwrap()
                == b.times_kron_identity_left(&a).unwrap();
            let ax4 = b.times_kron_identity_right(&a).unwrap()
                == b.times_kron_identity_right(&b).unwrap();
            assert_eq!(dia_residuals(&a, &b, 2).unwrap().is_zero(), ax2);
            assert_eq!(dia_residuals(&a, &b, 3).unwrap().is_zero(), ax3);
            assert_eq!(dia_residuals(&a, &b, 4).unwrap().is_zero(), ax4);
        }
    }
}
