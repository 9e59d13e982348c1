//! The 2x4 matrix of structure constants, the Kronecker-product evaluation
//! of the bilinear product, the matrix-form associativity check, and the
//! GL2 action realizing isomorphism and automorphism.
//!
//! Conventions (pinned by tests): an MSC is stored row-major as
//! (a1 a2 a3 a4 / b1 b2 b3 b4) with columns e1e1, e1e2, e2e1, e2e2; the
//! Kronecker square of g = (x y / z t) is the block matrix
//! [x*g, y*g; z*g, t*g]; a basis change acts by A -> g^-1 A (g (x) g).

use crate::field::{Elem, FieldCtx};
use crate::{Error, Result};

/// Column coordinate vector of length 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vec2 {
    ctx: FieldCtx,
    e: [Elem; 2],
}

/// Column coordinate vector of length 4 (a Kronecker product lives here).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vec4 {
    ctx: FieldCtx,
    e: [Elem; 4],
}

/// A raw 2x2 matrix (x y / z t), not necessarily invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    ctx: FieldCtx,
    e: [Elem; 4],
}

/// An invertible 2x2 matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gl2(Mat2);

/// The 2x4 matrix of structure constants of one bilinear product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Msc {
    ctx: FieldCtx,
    e: [Elem; 8],
}

impl Vec2 {
    pub fn new(ctx: &FieldCtx, e: [Elem; 2]) -> Vec2 {
        Vec2 { ctx: ctx.clone(), e }
    }
    pub fn basis(ctx: &FieldCtx, i: usize) -> Vec2 {
        let mut e = [ctx.zero(), ctx.zero()];
        e[i] = ctx.one();
        Vec2 { ctx: ctx.clone(), e }
    }
    pub fn entries(&self) -> &[Elem; 2] {
        &self.e
    }
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Elem::is_zero)
    }
    pub fn scale(&self, a: &Elem) -> Result<Vec2> {
        Ok(Vec2 {
            ctx: self.ctx.clone(),
            e: [self.ctx.mul(a, &self.e[0])?, self.ctx.mul(a, &self.e[1])?],
        })
    }
    pub fn add(&self, other: &Vec2) -> Result<Vec2> {
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch);
        }
        Ok(Vec2 {
            ctx: self.ctx.clone(),
            e: [
                self.ctx.add(&self.e[0], &other.e[0])?,
                self.ctx.add(&self.e[1], &other.e[1])?,
            ],
        })
    }
}

impl Vec4 {
    pub fn entries(&self) -> &[Elem; 4] {
        &self.e
    }
}

/// Kronecker (tensor) product of two coordinate vectors:
/// (x1y1, x1y2, x2y1, x2y2).
pub fn kron2(x: &Vec2, y: &Vec2) -> Result<Vec4> {
    if x.ctx != y.ctx {
        return Err(Error::CtxMismatch);
    }
    let c = &x.ctx;
    Ok(Vec4 {
        ctx: c.clone(),
        e: [
            c.mul(&x.e[0], &y.e[0])?,
            c.mul(&x.e[0], &y.e[1])?,
            c.mul(&x.e[1], &y.e[0])?,
            c.mul(&x.e[1], &y.e[1])?,
        ],
    })
}

impl Mat2 {
    pub fn new(ctx: &FieldCtx, e: [Elem; 4]) -> Mat2 {
        Mat2 { ctx: ctx.clone(), e }
    }
    pub fn from_ints(ctx: &FieldCtx, v: [i64; 4]) -> Mat2 {
        Mat2::new(ctx, std::array::from_fn(|i| ctx.from_int(v[i])))
    }
    pub fn identity(ctx: &FieldCtx) -> Mat2 {
        Mat2::new(ctx, [ctx.one(), ctx.zero(), ctx.zero(), ctx.one()])
    }
    pub fn entries(&self) -> &[Elem; 4] {
        &self.e
    }
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn det(&self) -> Result<Elem> {
        let c = &self.ctx;
        c.sub(&c.mul(&self.e[0], &self.e[3])?, &c.mul(&self.e[1], &self.e[2])?)
    }
    pub fn matmul(&self, other: &Mat2) -> Result<Mat2> {
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch);
        }
        let c = &self.ctx;
        let m = |i: usize, j: usize, k: usize, l: usize| -> Result<Elem> {
            c.add(
                &c.mul(&self.e[i], &other.e[j])?,
                &c.mul(&self.e[k], &other.e[l])?,
            )
        };
        Ok(Mat2 {
            ctx: self.ctx.clone(),
            e: [m(0, 0, 1, 2)?, m(0, 1, 1, 3)?, m(2, 0, 3, 2)?, m(2, 1, 3, 3)?],
        })
    }
    pub fn apply(&self, v: &Vec2) -> Result<Vec2> {
        if self.ctx != v.ctx {
            return Err(Error::CtxMismatch);
        }
        let c = &self.ctx;
        Ok(Vec2 {
            ctx: self.ctx.clone(),
            e: [
                c.add(&c.mul(&self.e[0], &v.e[0])?, &c.mul(&self.e[1], &v.e[1])?)?,
                c.add(&c.mul(&self.e[2], &v.e[0])?, &c.mul(&self.e[3], &v.e[1])?)?,
            ],
        })
    }
    /// Kronecker square as a 4x4 row-major matrix [x*g, y*g; z*g, t*g].
    pub fn kron_self(&self) -> Result<[Elem; 16]> {
        let c = &self.ctx;
        let g = &self.e;
        let mut out: Vec<Elem> = Vec::with_capacity(16);
        for bi in 0..2 {
            for ri in 0..2 {
                for bj in 0..2 {
                    for rj in 0..2 {
                        out.push(c.mul(&g[bi * 2 + bj], &g[ri * 2 + rj])?);
                    }
                }
            }
        }
        Ok(out.try_into().unwrap())
    }
}

impl Gl2 {
    pub fn new(m: Mat2) -> Result<Gl2> {
        if m.det()?.is_zero() {
            return Err(Error::Field("matrix is singular".into()));
        }
        Ok(Gl2(m))
    }
    pub fn identity(ctx: &FieldCtx) -> Gl2 {
        Gl2(Mat2::identity(ctx))
    }
    pub fn mat(&self) -> &Mat2 {
        &self.0
    }
    pub fn ctx(&self) -> &FieldCtx {
        self.0.ctx()
    }
    /// Exact inverse via the 2x2 adjugate.
    pub fn inverse(&self) -> Result<Gl2> {
        let c = self.ctx();
        let d = self.0.det()?;
        let di = c.inv(&d)?;
        let e = &self.0.e;
        Ok(Gl2(Mat2 {
            ctx: c.clone(),
            e: [
                c.mul(&di, &e[3])?,
                c.neg(&c.mul(&di, &e[1])?)?,
                c.neg(&c.mul(&di, &e[2])?)?,
                c.mul(&di, &e[0])?,
            ],
        }))
    }
    pub fn matmul(&self, other: &Gl2) -> Result<Gl2> {
        Ok(Gl2(self.0.matmul(&other.0)?))
    }
}

impl Msc {
    /// Entries row-major: (a1 a2 a3 a4 / b1 b2 b3 b4).
    pub fn new(ctx: &FieldCtx, e: [Elem; 8]) -> Msc {
        Msc { ctx: ctx.clone(), e }
    }
    pub fn zero(ctx: &FieldCtx) -> Msc {
        Msc::new(
            ctx,
            std::array::from_fn(|_| ctx.zero()),
        )
    }
    pub fn from_ints(ctx: &FieldCtx, v: [i64; 8]) -> Msc {
        Msc::new(ctx, std::array::from_fn(|i| ctx.from_int(v[i])))
    }
    pub fn entries(&self) -> &[Elem; 8] {
        &self.e
    }
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Elem::is_zero)
    }

    /// Evaluate the product x*y = A (x (x) y).
    pub fn mul_vec(&self, x: &Vec2, y: &Vec2) -> Result<Vec2> {
        if self.ctx != *x.ctx() || self.ctx != *y.ctx() {
            return Err(Error::CtxMismatch);
        }
        let k = kron2(x, y)?;
        let c = &self.ctx;
        let mut out = [c.zero(), c.zero()];
        for (row, slot) in out.iter_mut().enumerate() {
            let mut acc = c.zero();
            for i in 0..4 {
                acc = c.add(&acc, &c.mul(&self.e[row * 4 + i], &k.e[i])?)?;
            }
            *slot = acc;
        }
        Ok(Vec2 { ctx: self.ctx.clone(), e: out })
    }

    /// A (x) I as a 4x8 row-major matrix.
    fn kron_with_identity_right(&self) -> Vec<Elem> {
        let c = &self.ctx;
        let mut out = vec![c.zero(); 32];
        for r in 0..2 {
            for col in 0..4 {
                for k in 0..2 {
                    out[(r * 2 + k) * 8 + col * 2 + k] = self.e[r * 4 + col].clone();
                }
            }
        }
        out
    }

    /// I (x) A as a 4x8 row-major matrix (block diagonal).
    fn kron_with_identity_left(&self) -> Vec<Elem> {
        let c = &self.ctx;
        let mut out = vec![c.zero(); 32];
        for b in 0..2 {
            for r in 0..2 {
                for col in 0..4 {
                    out[(b * 2 + r) * 8 + b * 4 + col] = self.e[r * 4 + col].clone();
                }
            }
        }
        out
    }

    /// Multiply this 2x4 MSC by a 4x8 matrix, giving 2x8.
    fn mul_2x4_4x8(&self, m: &[Elem]) -> Result<Vec<Elem>> {
        let c = &self.ctx;
        let mut out = vec![c.zero(); 16];
        for r in 0..2 {
            for col in 0..8 {
                let mut acc = c.zero();
                for k in 0..4 {
                    acc = c.add(&acc, &c.mul(&self.e[r * 4 + k], &m[k * 8 + col])?)?;
                }
                out[r * 8 + col] = acc;
            }
        }
        Ok(out)
    }

    /// A (A (x) I) as a 2x8 matrix.
    pub fn times_self_kron_identity(&self) -> Result<Vec<Elem>> {
        self.mul_2x4_4x8(&self.kron_with_identity_right())
    }

    /// A (I (x) A) as a 2x8 matrix.
    pub fn times_identity_kron_self(&self) -> Result<Vec<Elem>> {
        self.mul_2x4_4x8(&self.kron_with_identity_left())
    }

    /// Left side of a mixed product: self (other (x) I), 2x8.
    pub fn times_kron_identity_right(&self, other: &Msc) -> Result<Vec<Elem>> {
        self.mul_2x4_4x8(&other.kron_with_identity_right())
    }

    /// Left side of a mixed product: self (I (x) other), 2x8.
    pub fn times_kron_identity_left(&self, other: &Msc) -> Result<Vec<Elem>> {
        self.mul_2x4_4x8(&other.kron_with_identity_left())
    }

    /// Matrix-form associativity: A (A (x) I) == A (I (x) A).
    pub fn assoc_matrix_check(&self) -> bool {
        let lhs = self.times_self_kron_identity().expect("same ctx");
        let rhs = self.times_identity_kron_self().expect("same ctx");
        lhs == rhs
    }
}

/// Basis change: the MSC of the same product in the basis transformed by g,
/// i.e. g^-1 A (g (x) g).
pub fn transform(g: &Gl2, a: &Msc) -> Result<Msc> {
    if g.ctx() != a.ctx() {
        return Err(Error::CtxMismatch);
    }
    let c = a.ctx();
    let gg = g.mat().kron_self()?; // 4x4
    // A (g (x) g): 2x4
    let mut ag = vec![c.zero(); 8];
    for r in 0..2 {
        for col in 0..4 {
            let mut acc = c.zero();
            for k in 0..4 {
                acc = c.add(&acc, &c.mul(&a.e[r * 4 + k], &gg[k * 4 + col])?)?;
            }
            ag[r * 4 + col] = acc;
        }
    }
    let gi = g.inverse()?;
    let gi = gi.mat().entries();
    let mut out: Vec<Elem> = Vec::with_capacity(8);
    for r in 0..2 {
        for col in 0..4 {
            let acc = c.add(
                &c.mul(&gi[r * 2], &ag[col])?,
                &c.mul(&gi[r * 2 + 1], &ag[4 + col])?,
            )?;
            out.push(acc);
        }
    }
    Ok(Msc { ctx: c.clone(), e: out.try_into().unwrap() })
}

/// Automorphism condition g A = A (g (x) g), checked entrywise.
pub fn aut_check(g: &Gl2, a: &Msc) -> Result<bool> {
    if g.ctx() != a.ctx() {
        return Err(Error::CtxMismatch);
    }
    let c = a.ctx();
    let ge = g.mat().entries();
    // gA: 2x4
    let mut ga = vec![c.zero(); 8];
    for r in 0..2 {
        for col in 0..4 {
            ga[r * 4 + col] = c.add(
                &c.mul(&ge[r * 2], &a.e[col])?,
                &c.mul(&ge[r * 2 + 1], &a.e[4 + col])?,
            )?;
        }
    }
    let gg = g.mat().kron_self()?;
    for r in 0..2 {
        for col in 0..4 {
            let mut acc = c.zero();
            for k in 0..4 {
                acc = c.add(&acc, &c.mul(&a.e[r * 4 + k], &gg[k * 4 + col])?)?;
            }
            if acc != ga[r * 4 + col] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
