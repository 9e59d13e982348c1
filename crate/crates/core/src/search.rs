//! Brute-force group machinery over finite fields: GL(2,q) enumeration,
//! isomorphism witnesses, automorphism groups, canonical orbit keys, and
//! classification of arbitrary inputs against the catalog.
//!
//! MSCs over GF(q) are packed into integers digit-by-digit (row-major, the
//! a1 slot most significant), so integer order on encodings is the row-major
//! lexicographic order on entries. Orbit keys are encoding minima over the
//! full GL(2,q) action; the whole group is applied rather than anything
//! cleverer, which is exact and cheap at these sizes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::catalog::{self, AlgKind, CanonicalLabel, CharClass, Rep};
use crate::dialgebra::DiMsc;
use crate::field::{Elem, FieldCtx, Tables};
use crate::msc::{Gl2, Mat2, Msc};
use crate::{Error, Result};

/// Largest field order accepted for GL(2,q) brute force.
const SEARCH_MAX_Q: u64 = 64;

/// The minimal encoded orbit element; equal keys mean isomorphic inputs
/// (over the finite field where they were computed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitKey {
    Alg(u64),
    Dia(u64, u64),
}

pub(crate) fn require_tables(ctx: &FieldCtx) -> Result<&Tables> {
    let q = ctx
        .order()
        .ok_or_else(|| Error::Unsupported("brute-force search needs a finite field".into()))?;
    if q > SEARCH_MAX_Q {
        return Err(Error::Budget(format!(
            "GL(2,{q}) brute force exceeds the search budget (q <= {SEARCH_MAX_Q})"
        )));
    }
    ctx.tables()
        .ok_or_else(|| Error::Unsupported("field too large for table arithmetic".into()))
}

/// Precomputed data for one invertible matrix: the matrix, its inverse, and
/// its Kronecker square, all as element indices.
pub(crate) struct GlData {
    pub g: [u32; 4],
    pub inv: [u32; 4],
    pub kron: [u32; 16],
}

/// All of GL(2,q) in encoding order (x, y, z, t), with precomputed data.
pub(crate) fn gl_data(t: &Tables) -> Vec<GlData> {
    let q = t.q;
    let mut out = Vec::with_capacity(((q * q) as usize - q as usize) * ((q * q) as usize - 1));
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                for tt in 0..q {
                    let det = t.sub(t.mul(x, tt), t.mul(y, z));
                    if det == 0 {
                        continue;
                    }
                    let di = t.inv[det as usize];
                    let g = [x, y, z, tt];
                    let inv = [
                        t.mul(tt, di),
                        t.mul(t.neg[y as usize], di),
                        t.mul(t.neg[z as usize], di),
                        t.mul(x, di),
                    ];
                    let mut kron = [0u32; 16];
                    for bi in 0..2 {
                        for ri in 0..2 {
                            for bj in 0..2 {
                                for rj in 0..2 {
                                    kron[(bi * 2 + ri) * 4 + bj * 2 + rj] =
                                        t.mul(g[bi * 2 + bj], g[ri * 2 + rj]);
                                }
                            }
                        }
                    }
                    out.push(GlData { g, inv, kron });
                }
            }
        }
    }
    out
}

#[inline]
pub(crate) fn transform_digits(t: &Tables, gd: &GlData, a: &[u32; 8]) -> [u32; 8] {
    let mut ag = [0u32; 8];
    for r in 0..2 {
        for c in 0..4 {
            let mut acc = 0u32;
            for k in 0..4 {
                acc = t.add(acc, t.mul(a[r * 4 + k], gd.kron[k * 4 + c]));
            }
            ag[r * 4 + c] = acc;
        }
    }
    let mut out = [0u32; 8];
    for c in 0..4 {
        out[c] = t.add(t.mul(gd.inv[0], ag[c]), t.mul(gd.inv[1], ag[4 + c]));
        out[4 + c] = t.add(t.mul(gd.inv[2], ag[c]), t.mul(gd.inv[3], ag[4 + c]));
    }
    out
}

#[inline]
pub(crate) fn encode_digits(q: u64, d: &[u32; 8]) -> u64 {
    let mut acc = 0u64;
    for &x in d {
        acc = acc * q + x as u64;
    }
    acc
}

pub(crate) fn decode_enc(q: u64, mut enc: u64) -> [u32; 8] {
    let mut d = [0u32; 8];
    for i in (0..8).rev() {
        d[i] = (enc % q) as u32;
        enc /= q;
    }
    d
}

pub(crate) fn msc_digits(a: &Msc) -> [u32; 8] {
    let mut d = [0u32; 8];
    for (i, e) in a.entries().iter().enumerate() {
        d[i] = e.fin();
    }
    d
}

pub(crate) fn msc_from_digits(ctx: &FieldCtx, d: &[u32; 8]) -> Msc {
    Msc::new(ctx, std::array::from_fn(|i| Elem::Fin(d[i])))
}

fn gl2_from_data(ctx: &FieldCtx, gd: &GlData) -> Gl2 {
    let m = Mat2::new(ctx, std::array::from_fn(|i| Elem::Fin(gd.g[i])));
    Gl2::new(m).expect("nonzero determinant by construction")
}

/// Every invertible 2x2 matrix exactly once, in encoding order;
/// count = (q^2-1)(q^2-q).
pub fn gl2_elements(ctx: &FieldCtx) -> Result<Vec<Gl2>> {
    let t = require_tables(ctx)?;
    Ok(gl_data(t).iter().map(|gd| gl2_from_data(ctx, gd)).collect())
}

/// A witness g with transform(g, b) = a, or None. The first witness in
/// encoding order is returned, so output is deterministic.
pub fn isomorphic(a: &Msc, b: &Msc) -> Result<Option<Gl2>> {
    if a.ctx() != b.ctx() {
        return Err(Error::CtxMismatch);
    }
    let ctx = a.ctx();
    let t = require_tables(ctx)?;
    let ad = msc_digits(a);
    let bd = msc_digits(b);
    for gd in gl_data(t) {
        if transform_digits(t, &gd, &bd) == ad {
            return Ok(Some(gl2_from_data(ctx, &gd)));
        }
    }
    Ok(None)
}

/// A witness g with dia_transform(g, e) = d, or None.
pub fn dia_isomorphic(d: &DiMsc, e: &DiMsc) -> Result<Option<Gl2>> {
    if d.ctx() != e.ctx() {
        return Err(Error::CtxMismatch);
    }
    let ctx = d.ctx();
    let t = require_tables(ctx)?;
    let dl = msc_digits(d.left());
    let dr = msc_digits(d.right());
    let el = msc_digits(e.left());
    let er = msc_digits(e.right());
    for gd in gl_data(t) {
        if transform_digits(t, &gd, &el) == dl && transform_digits(t, &gd, &er) == dr {
            return Ok(Some(gl2_from_data(ctx, &gd)));
        }
    }
    Ok(None)
}

/// All g fixing the input (both matrices at once for a dialgebra), in
/// encoding order.
pub fn automorphism_group(x: &Rep) -> Result<Vec<Gl2>> {
    let ctx = x.ctx();
    let t = require_tables(ctx)?;
    let mut out = Vec::new();
    match x {
        Rep::Alg(a) => {
            let ad = msc_digits(a);
            for gd in gl_data(t) {
                if transform_digits(t, &gd, &ad) == ad {
                    out.push(gl2_from_data(ctx, &gd));
                }
            }
        }
        Rep::Dia(d) => {
            let dl = msc_digits(d.left());
            let dr = msc_digits(d.right());
            for gd in gl_data(t) {
                if transform_digits(t, &gd, &dl) == dl && transform_digits(t, &gd, &dr) == dr {
                    out.push(gl2_from_data(ctx, &gd));
                }
            }
        }
    }
    Ok(out)
}

/// Minimum encoded orbit element over the full GL(2,q) action.
pub fn orbit_key(x: &Rep) -> Result<OrbitKey> {
    let ctx = x.ctx();
    let t = require_tables(ctx)?;
    let q = t.q as u64;
    Ok(match x {
        Rep::Alg(a) => {
            let ad = msc_digits(a);
            let mut best = u64::MAX;
            for gd in gl_data(t) {
                let enc = encode_digits(q, &transform_digits(t, &gd, &ad));
                best = best.min(enc);
            }
            OrbitKey::Alg(best)
        }
        Rep::Dia(d) => {
            let dl = msc_digits(d.left());
            let dr = msc_digits(d.right());
            let mut best = (u64::MAX, u64::MAX);
            for gd in gl_data(t) {
                let pair = (
                    encode_digits(q, &transform_digits(t, &gd, &dl)),
                    encode_digits(q, &transform_digits(t, &gd, &dr)),
                );
                best = best.min(pair);
            }
            OrbitKey::Dia(best.0, best.1)
        }
    })
}

/// Precomputed orbit keys of every catalog instance for one (field, kind),
/// built once and then shared read-only.
pub struct LabelIndex {
    pub kind: AlgKind,
    map: HashMap<OrbitKey, CanonicalLabel>,
    /// every catalog instance with its orbit key, in catalog order
    pub instances: Vec<(CanonicalLabel, Rep, OrbitKey)>,
}

impl LabelIndex {
    fn build(ctx: &FieldCtx, kind: AlgKind) -> Result<LabelIndex> {
        let class = CharClass::of(ctx);
        let mut map: HashMap<OrbitKey, CanonicalLabel> = HashMap::new();
        let mut instances = Vec::new();
        for (label, rep) in catalog::representatives(class, kind, ctx)? {
            let key = orbit_key(&rep)?;
            // distinct normalized instances may share an orbit only for
            // families with an unresolved equivalence; keep the first
            // (minimal-parameter) label as the canonical name
            map.entry(key).or_insert_with(|| label.clone());
            instances.push((label, rep, key));
        }
        Ok(LabelIndex { kind, map, instances })
    }

    pub fn lookup(&self, key: &OrbitKey) -> Option<&CanonicalLabel> {
        self.map.get(key)
    }
}

type CacheKey = (FieldCtx, AlgKind);
static LABEL_CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<LabelIndex>>>> = OnceLock::new();

/// The shared per-(field, kind) orbit-key index.
pub fn label_index(ctx: &FieldCtx, kind: AlgKind) -> Result<Arc<LabelIndex>> {
    let cache = LABEL_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().unwrap();
        if let Some(idx) = guard.get(&(ctx.clone(), kind)) {
            return Ok(idx.clone());
        }
    }
    let built = Arc::new(LabelIndex::build(ctx, kind)?);
    let mut guard = cache.lock().unwrap();
    Ok(guard.entry((ctx.clone(), kind)).or_insert(built).clone())
}

/// Classify an algebra or dialgebra over a finite field: axiom check, orbit
/// key, catalog lookup. A satisfying input that matches no catalog class is
/// a falsification signal and surfaces as `Error::ClassificationGap`.
pub fn classify(x: &Rep) -> Result<CanonicalLabel> {
    let ctx = x.ctx();
    match x {
        Rep::Alg(a) => {
            if !a.assoc_matrix_check() {
                return Err(Error::AxiomFailed("associative"));
            }
            if a.is_zero() {
                return Ok(CanonicalLabel::zero(ctx));
            }
        }
        Rep::Dia(d) => {
            if !d.dia_check() {
                return Err(Error::AxiomFailed("diassociative"));
            }
            if d.is_zero() {
                return Ok(CanonicalLabel::zero(ctx));
            }
        }
    }
    let kind = match x {
        Rep::Alg(_) => AlgKind::Associative,
        Rep::Dia(_) => AlgKind::Diassociative,
    };
    let idx = label_index(ctx, kind)?;
    let key = orbit_key(x)?;
    idx.lookup(&key).cloned().ok_or_else(|| {
        let what = match x {
            Rep::Alg(a) => format!("{:?}", a.entries()),
            Rep::Dia(d) => format!("{:?} | {:?}", d.left().entries(), d.right().entries()),
        };
        Error::ClassificationGap(what)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::msc::transform;

    fn f(spec: &str) -> FieldCtx {
        FieldCtx::parse(spec).unwrap()
    }

    #[test]
    fn gl2_counts() {
        // |GL(2,q)| = (q^2-1)(q^2-q), cross-checked below by a raw det scan
        for (spec, expect) in [("GF(2)", 6), ("GF(3)", 48), ("GF(4)", 180), ("GF(5)", 480)] {
            let ctx = f(spec);
            let els = gl2_elements(&ctx).unwrap();
            assert_eq!(els.len(), expect);
            let q = ctx.order().unwrap();
            assert_eq!(els.len() as u64, (q * q - 1) * (q * q - q));
            let mut naive = 0;
            for x in ctx.elements().unwrap() {
                for y in ctx.elements().unwrap() {
                    for z in ctx.elements().unwrap() {
                        for t in ctx.elements().unwrap() {
                            let m = Mat2::new(&ctx, [x.clone(), y.clone(), z.clone(), t]);
                            if !m.det().unwrap().is_zero() {
                                naive += 1;
                            }
                        }
                    }
                }
            }
            assert_eq!(naive, expect);
        }
    }

    #[test]
    fn iso_finds_witness_in_same_orbit() {
        let ctx = f("GF(5)");
        let a = Msc::from_ints(&ctx, [3, 0, 0, 1, 0, 3, 3, 0]);
        let g = Gl2::new(Mat2::from_ints(&ctx, [2, 1, 1, 1])).unwrap();
        let moved = transform(&g, &a).unwrap();
        let w = isomorphic(&moved, &a).unwrap().expect("same orbit");
        assert_eq!(transform(&w, &a).unwrap(), moved);
    }

    #[test]
    fn iso_distinguishes_classes() {
        let ctx = f("GF(5)");
        let as3_2 = Msc::from_ints(&ctx, [1, 0, 0, 0, 0, 0, 0, 0]);
        let as3_3 = Msc::from_ints(&ctx, [1, 0, 0, 0, 0, 1, 0, 0]);
        assert!(isomorphic(&as3_2, &as3_3).unwrap().is_none());
        // distinct square classes of a4
        let a1 = Msc::from_ints(&ctx, [3, 0, 0, 1, 0, 3, 3, 0]);
        let a2 = Msc::from_ints(&ctx, [3, 0, 0, 2, 0, 3, 3, 0]);
        assert!(isomorphic(&a1, &a2).unwrap().is_none());
        // same square class: 3 = 2*4 ~ 2
        let a3 = Msc::from_ints(&ctx, [3, 0, 0, 3, 0, 3, 3, 0]);
        assert!(isomorphic(&a3, &a2).unwrap().is_some());
    }

    #[test]
    fn orbit_key_invariance() {
        let ctx = f("GF(3)");
        let a = Msc::from_ints(&ctx, [2, 0, 0, 1, 0, 2, 2, 0]);
        let k = orbit_key(&Rep::Alg(a.clone())).unwrap();
        for g in gl2_elements(&ctx).unwrap().iter().step_by(7) {
            let moved = transform(g, &a).unwrap();
            assert_eq!(orbit_key(&Rep::Alg(moved)).unwrap(), k);
        }
        let z = Msc::zero(&ctx);
        assert_eq!(orbit_key(&Rep::Alg(z)).unwrap(), OrbitKey::Alg(0));
    }

    #[test]
    fn witness_exists_iff_orbit_keys_equal() {
        let ctx = f("GF(3)");
        // a spread of associative and non-associative matrices
        let mut pool: Vec<Msc> = Vec::new();
        for seed in 0..40u64 {
            let mut v = [0i64; 8];
            let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(5);
            for slot in v.iter_mut() {
                *slot = (s % 3) as i64;
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                s >>= 2;
            }
            pool.push(Msc::from_ints(&ctx, v));
        }
        for a in &pool {
            for b in &pool {
                let witness = isomorphic(a, b).unwrap();
                let same_key = orbit_key(&Rep::Alg(a.clone())).unwrap()
                    == orbit_key(&Rep::Alg(b.clone())).unwrap();
                assert_eq!(witness.is_some(), same_key);
                if let Some(g) = witness {
                    assert_eq!(transform(&g, b).unwrap(), *a);
                }
            }
        }
    }

    #[test]
    fn automorphism_group_orders() {
        // brute-force orders; the As6,2^3 and As3,3^4 values are the
        // machine-verified ones
        let cases = [
            ("GF(2)", [1, 0, 0, 0, 0, 0, 1, 0], 2),  // As6,2^3
            ("GF(2)", [0, 0, 0, 0, 1, 0, 0, 0], 2),  // As12,2^1
            ("GF(3)", [2, 0, 0, 0, 0, 0, 2, 0], 6),  // As3,3^4
            ("GF(3)", [0, 0, 0, 0, 1, 0, 0, 0], 6),  // As13,3^1
            ("GF(5)", [0, 0, 0, 0, 1, 0, 0, 0], 20), // As13^1
            ("GF(5)", [1, 0, 0, 0, 0, 0, 0, 0], 4),  // As3^2
            ("GF(5)", [3, 0, 0, 1, 0, 3, 3, 0], 2),  // As3^5(1)
        ];
        for (spec, m, expect) in cases {
            let ctx = f(spec);
            let a = Msc::from_ints(&ctx, m);
            let group = automorphism_group(&Rep::Alg(a)).unwrap();
            assert_eq!(group.len(), expect, "{spec} {m:?}");
        }
        // the zero algebra is fixed by all of GL(2,2)
        let ctx = f("GF(2)");
        assert_eq!(automorphism_group(&Rep::Alg(Msc::zero(&ctx))).unwrap().len(), 6);
    }

    #[test]
    fn automorphism_group_is_a_group() {
        let ctx = f("GF(3)");
        let a = Msc::from_ints(&ctx, [1, 0, 0, 0, 0, 1, 0, 0]);
        let group = automorphism_group(&Rep::Alg(a)).unwrap();
        let set: std::collections::HashSet<_> =
            group.iter().map(|g| g.mat().entries().clone()).collect();
        assert!(set.contains(Gl2::identity(&ctx).mat().entries()));
        for g in &group {
            assert!(set.contains(g.inverse().unwrap().mat().entries()));
            for h in &group {
                assert!(set.contains(g.matmul(h).unwrap().mat().entries()));
            }
        }
    }

    #[test]
    fn classify_examples() {
        let ctx = f("GF(5)");
        let a = Msc::from_ints(&ctx, [1, 0, 0, 0, 0, 0, 0, 0]);
        let label = classify(&Rep::Alg(a.clone())).unwrap();
        assert_eq!(label.family, "As3^2");
        // labels are isomorphism-invariant
        let g = Gl2::new(Mat2::from_ints(&ctx, [1, 2, 3, 2])).unwrap();
        let moved = transform(&g, &a).unwrap();
        assert_eq!(classify(&Rep::Alg(moved)).unwrap().family, "As3^2");
        // normalized parameter comes back
        let a = Msc::from_ints(&ctx, [3, 0, 0, 3, 0, 3, 3, 0]);
        let label = classify(&Rep::Alg(a)).unwrap();
        assert_eq!(label.family, "As3^5");
        assert_eq!(label.params, vec![ctx.from_int(2)]);
        assert_eq!(
            classify(&Rep::Alg(Msc::zero(&ctx))).unwrap().family,
            "zero"
        );
        let non_assoc = Msc::from_ints(&ctx, [0, 1, 1, 0, 1, 1, 1, -1]);
        assert!(matches!(
            classify(&Rep::Alg(non_assoc)),
            Err(Error::AxiomFailed(_))
        ));
    }

    #[test]
    fn classify_dia_examples() {
        let ctx = f("GF(5)");
        let d = DiMsc::from_ints(&ctx, [0, 0, 0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 3, 0, 0, 0]);
        let label = classify(&Rep::Dia(d)).unwrap();
        assert_eq!(label.family, "D13^1");
        assert_eq!(label.params, vec![ctx.from_int(3)]);
        // zero-left dialgebra lands in the catalog
        let d = DiMsc::from_ints(&ctx, [0; 8], [0, 0, 0, 0, 2, 0, 0, 0]);
        assert_eq!(classify(&Rep::Dia(d)).unwrap().family, "D0^9");
    }

    #[test]
    fn orbit_stabilizer_for_reps() {
        for spec in ["GF(2)", "GF(3)", "GF(5)"] {
            let ctx = f(spec);
            let q = ctx.order().unwrap();
            let gl_order = (q * q - 1) * (q * q - q);
            let class = CharClass::of(&ctx);
            for kind in [AlgKind::Associative, AlgKind::Diassociative] {
                for (label, rep) in catalog::representatives(class, kind, &ctx).unwrap() {
                    let aut = automorphism_group(&rep).unwrap().len() as u64;
                    // orbit size by direct enumeration
                    let mut orbit: std::collections::HashSet<(u64, u64)> = Default::default();
                    let t = ctx.tables().unwrap();
                    match &rep {
                        Rep::Alg(a) => {
                            let ad = msc_digits(a);
                            for gd in gl_data(t) {
                                let e = encode_digits(q, &transform_digits(t, &gd, &ad));
                                orbit.insert((e, 0));
                            }
                        }
                        Rep::Dia(d) => {
                            let dl = msc_digits(d.left());
                            let dr = msc_digits(d.right());
                            for gd in gl_data(t) {
                                orbit.insert((
                                    encode_digits(q, &transform_digits(t, &gd, &dl)),
                                    encode_digits(q, &transform_digits(t, &gd, &dr)),
                                ));
                            }
                        }
                    }
                    assert_eq!(
                        orbit.len() as u64 * aut,
                        gl_order,
                        "{spec} {}",
                        label.render(&ctx)
                    );
                }
            }
        }
    }
}
