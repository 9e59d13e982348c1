//! The dialgebra pair type: two structure-constant matrices for the two
//! products, the full diassociativity predicate, and the simultaneous basis
//! change. The pair is kept as an ordered pair because the five axioms treat
//! the two matrices asymmetrically.

use crate::axioms::{dia_residuals, ResidualVector};
use crate::field::FieldCtx;
use crate::msc::{transform, Gl2, Msc};
use crate::{Error, Result};

/// An ordered pair of MSCs: `left` for the first product, `right` for the
/// second.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiMsc {
    left: Msc,
    right: Msc,
}

impl DiMsc {
    pub fn new(left: Msc, right: Msc) -> Result<DiMsc> {
        if left.ctx() != right.ctx() {
            return Err(Error::CtxMismatch);
        }
        Ok(DiMsc { left, right })
    }
    pub fn zero(ctx: &FieldCtx) -> DiMsc {
        DiMsc { left: Msc::zero(ctx), right: Msc::zero(ctx) }
    }
    pub fn from_ints(ctx: &FieldCtx, left: [i64; 8], right: [i64; 8]) -> DiMsc {
        DiMsc { left: Msc::from_ints(ctx, left), right: Msc::from_ints(ctx, right) }
    }
    pub fn left(&self) -> &Msc {
        &self.left
    }
    pub fn right(&self) -> &Msc {
        &self.right
    }
    pub fn ctx(&self) -> &FieldCtx {
        self.left.ctx()
    }
    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }

    /// All five axiom residual systems, in order.
    pub fn residuals(&self) -> Vec<ResidualVector> {
        (1..=5)
            .map(|ax| dia_residuals(&self.left, &self.right, ax).expect("valid axiom index"))
            .collect()
    }

    /// True iff all five residual systems vanish.
    pub fn dia_check(&self) -> bool {
        (1..=5).all(|ax| {
            dia_residuals(&self.left, &self.right, ax)
                .expect("valid axiom index")
                .is_zero()
        })
    }
}

/// Simultaneous basis change: the same g acts on both matrices.
pub fn dia_transform(g: &Gl2, d: &DiMsc) -> Result<DiMsc> {
    Ok(DiMsc {
        left: transform(g, &d.left)?,
        right: transform(g, &d.right)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::msc::Mat2;

    fn f(spec: &str) -> FieldCtx {
        FieldCtx::parse(spec).unwrap()
    }

    #[test]
    fn dia_check_examples() {
        let c = f("GF(5)");
        assert!(DiMsc::zero(&c).dia_check());
        // the diagonal pair over an associative algebra is diassociative
        let d34 = DiMsc::from_ints(&c, [1, 0, 0, 0, 0, 1, 0, 0], [1, 0, 0, 0, 0, 1, 0, 0]);
        assert!(d34.dia_check());
        let bad = DiMsc::from_ints(&c, [1, 0, 0, 0, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0, 1, 0]);
        assert!(!bad.dia_check());
    }

    #[test]
    fn dia_check_implies_both_parts_associative() {
        let c = f("GF(2)");
        let mut checked = 0;
        for seed in 0..6000u32 {
            let mut v = [0i64; 16];
            for (i, slot) in v.iter_mut().enumerate() {
                *slot = ((seed >> (i % 16)) & 1) as i64;
            }
            let d = DiMsc::from_ints(
                &c,
                v[..8].try_into().unwrap(),
                v[8..].try_into().unwrap(),
            );
            if d.dia_check() {
                assert!(d.left().assoc_matrix_check());
                assert!(d.right().assoc_matrix_check());
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn dia_transform_preserves_check() {
        let c = f("GF(5)");
        let d = DiMsc::from_ints(&c, [3, 0, 0, 0, 0, 0, 3, 0], [3, 0, 0, 0, 2, 0, 0, 0]);
        assert!(d.dia_check());
        let id = Gl2::identity(&c);
        assert_eq!(dia_transform(&id, &d).unwrap(), d);
        for (m, n) in [([1, 0, 2, 1], [2, 1, 3, 1]), ([0, 1, 1, 0], [1, 2, 0, 3])] {
            let g = Gl2::new(Mat2::from_ints(&c, m)).unwrap();
            let h = Gl2::new(Mat2::from_ints(&c, n)).unwrap();
            let moved = dia_transform(&g, &d).unwrap();
            assert!(moved.dia_check());
            // simultaneous action law
            let lhs = dia_transform(&g, &dia_transform(&h, &d).unwrap()).unwrap();
            let rhs = dia_transform(&h.matmul(&g).unwrap(), &d).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dia_check_matches_triple_products() {
        // the five axioms hold iff the corresponding identities hold on all
        // basis triples evaluated through mul_vec
        use crate::msc::Vec2;
        let c = f("GF(3)");
        for seed in 0..1500u64 {
            let mut v = [0i64; 16];
            let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(3);
            for slot in v.iter_mut() {
                *slot = (s % 3) as i64;
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                s >>= 2;
            }
            let d = DiMsc::from_ints(
                &c,
                v[..8].try_into().unwrap(),
                v[8..].try_into().unwrap(),
            );
            let a = d.left();
            let b = d.right();
            let mut triple = true;
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        let (x, y, z) =
                            (Vec2::basis(&c, i), Vec2::basis(&c, j), Vec2::basis(&c, k));
                        let l = |u: &Vec2, v: &Vec2| a.mul_vec(u, v).unwrap();
                        let r = |u: &Vec2, v: &Vec2| b.mul_vec(u, v).unwrap();
                        triple &= l(&l(&x, &y), &z) == l(&x, &l(&y, &z));
                        triple &= l(&x, &l(&y, &z)) == l(&x, &r(&y, &z));
                        triple &= l(&r(&x, &y), &z) == r(&x, &l(&y, &z));
                        triple &= r(&l(&x, &y), &z) == r(&r(&x, &y), &z);
                        triple &= r(&r(&x, &y), &z) == r(&x, &r(&y, &z));
                    }
                }
            }
            assert_eq!(d.dia_check(), triple);
        }
    }
}
