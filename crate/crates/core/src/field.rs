//! Exact arithmetic over the supported base fields: Q, GF(p), and GF(p^n)
//! with an explicit (or built-in default) modulus polynomial.
//!
//! Finite-field elements are stored as indices. For GF(p) the index is the
//! residue; for GF(p^n) the coefficient vector (c0, .., c_{n-1}), constant
//! term first, is packed with c0 as the most significant base-p digit, so
//! integer order on indices coincides with lexicographic order on
//! coefficient vectors. That ordering is the total encoding order used for
//! canonical representatives throughout the crate.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Largest field order for which full arithmetic tables are materialized.
const TABLE_MAX: u64 = 4096;
/// Largest order accepted for brute-force element enumeration.
const ENUM_MAX: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    /// Modulus coefficients c0..cn, constant term first, cn = 1.
    Extension { p: u64, n: u32, modulus: Vec<u64> },
}

pub(crate) struct Tables {
    pub q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    pub neg: Vec<u32>,
    pub inv: Vec<u32>, // inv[0] unused
    pub one: u32,
}

impl Tables {
    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a as usize) * self.q as usize + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a as usize) * self.q as usize + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }
}

struct Inner {
    kind: FieldKind,
    tables: Option<Tables>,
}

/// A base-field description plus its arithmetic. Cheap to clone and share.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.kind == other.0.kind
    }
}
impl Eq for FieldCtx {}
impl Hash for FieldCtx {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state)
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.descriptor())
    }
}

/// A field element in canonical representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Fin(u32),
    Rat(BigRational),
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Fin(i) => *i == 0,
            Elem::Rat(r) => r.is_zero(),
        }
    }
    pub(crate) fn fin(&self) -> u32 {
        match self {
            Elem::Fin(i) => *i,
            Elem::Rat(_) => panic!("finite element expected"),
        }
    }
}

/// Total encoding order: finite elements by index (residue for GF(p),
/// lexicographic coefficient vector for GF(p^n)); rationals by numerator
/// magnitude, then denominator, then sign (positive first).
impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Elem::Fin(a), Elem::Fin(b)) => a.cmp(b),
            (Elem::Rat(a), Elem::Rat(b)) => {
                let ka = (a.numer().abs(), a.denom().clone(), a.numer().is_negative());
                let kb = (b.numer().abs(), b.denom().clone(), b.numer().is_negative());
                ka.cmp(&kb)
            }
            (Elem::Fin(_), Elem::Rat(_)) => Ordering::Less,
            (Elem::Rat(_), Elem::Fin(_)) => Ordering::Greater,
        }
    }
}
impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    // deterministic Miller-Rabin for u64
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Multiply two polynomials (coeff vectors, ascending) over GF(p) and reduce
/// by the monic modulus.
fn polymul_mod(u: &[u64], v: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let n = modulus.len() - 1;
    let mut out = vec![0u64; u.len() + v.len() - 1];
    for (i, &a) in u.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in v.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    while out.len() > n {
        let lead = out.pop().unwrap();
        if lead != 0 {
            let deg = out.len(); // degree of the popped term
            for (k, &m) in modulus.iter().take(n).enumerate() {
                let pos = deg - n + k;
                let sub = (lead * m) % p;
                out[pos] = (out[pos] + p - sub) % p;
            }
        }
    }
    out.resize(n, 0);
    out
}

fn idx_to_vec(i: u64, p: u64, n: u32) -> Vec<u64> {
    // c0 is the most significant digit
    let mut v = vec![0u64; n as usize];
    let mut rem = i;
    for k in 0..n as usize {
        let pw = p.pow(n - 1 - k as u32);
        v[k] = rem / pw;
        rem %= pw;
    }
    v
}

fn vec_to_idx(v: &[u64], p: u64) -> u64 {
    let n = v.len() as u32;
    v.iter()
        .enumerate()
        .map(|(k, &c)| c * p.pow(n - 1 - k as u32))
        .sum()
}

fn build_prime_tables(p: u64) -> Tables {
    let q = p as usize;
    let mut add = vec![0u32; q * q];
    let mut mul = vec![0u32; q * q];
    for a in 0..q {
        for b in 0..q {
            add[a * q + b] = ((a + b) % q) as u32;
            mul[a * q + b] = ((a * b) % q) as u32;
        }
    }
    finish_tables(p, add, mul)
}

fn build_ext_tables(p: u64, n: u32, modulus: &[u64]) -> Tables {
    let q = p.pow(n) as usize;
    let mut add = vec![0u32; q * q];
    let mut mul = vec![0u32; q * q];
    for a in 0..q {
        let va = idx_to_vec(a as u64, p, n);
        for b in 0..q {
            let vb = idx_to_vec(b as u64, p, n);
            let vs: Vec<u64> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = vec_to_idx(&vs, p) as u32;
            let vm = polymul_mod(&va, &vb, modulus, p);
            mul[a * q + b] = vec_to_idx(&vm, p) as u32;
        }
    }
    finish_tables(q as u64, add, mul)
}

fn finish_tables(q: u64, add: Vec<u32>, mul: Vec<u32>) -> Tables {
    let q = q as usize;
    let mut neg = vec![0u32; q];
    for a in 0..q {
        for b in 0..q {
            if add[a * q + b] == 0 {
                neg[a] = b as u32;
            }
        }
    }
    let mut one = 0u32;
    'outer: for e in 0..q {
        for x in 0..q {
            if mul[e * q + x] != x as u32 {
                continue 'outer;
            }
        }
        one = e as u32;
        break;
    }
    let mut inv = vec![0u32; q];
    for a in 1..q {
        for b in 1..q {
            if mul[a * q + b] == one {
                inv[a] = b as u32;
            }
        }
    }
    Tables { q: q as u32, add, mul, neg, inv, one }
}

/// Irreducibility over GF(p): no roots (complete for degree <= 3), and for
/// higher degree no monic factor of degree <= n/2 (trial division).
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let n = modulus.len() - 1;
    let eval = |t: u64| -> u64 {
        let mut acc = 0u64;
        for &c in modulus.iter().rev() {
            acc = (acc * t + c) % p;
        }
        acc
    };
    for t in 0..p {
        if eval(t) == 0 {
            return false;
        }
    }
    if n <= 3 {
        return true;
    }
    // trial division by all monic polynomials of degree 2..=n/2
    for d in 2..=n / 2 {
        let count = p.pow(d as u32);
        for mask in 0..count {
            let mut div = idx_to_vec(mask, p, d as u32);
            div.reverse(); // ascending c0..c_{d-1}
            div.push(1); // monic of degree d
            if poly_divides(&div, modulus, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(div: &[u64], num: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = num.to_vec();
    let d = div.len() - 1;
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - d;
            for (k, &c) in div.iter().enumerate() {
                let idx = shift + k;
                rem[idx] = (rem[idx] + p * p - (lead * c) % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

impl FieldCtx {
    pub fn rationals() -> FieldCtx {
        FieldCtx(Arc::new(Inner { kind: FieldKind::Rationals, tables: None }))
    }

    pub fn prime(p: u64) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        let tables = if p <= TABLE_MAX { Some(build_prime_tables(p)) } else { None };
        Ok(FieldCtx(Arc::new(Inner { kind: FieldKind::Prime(p), tables })))
    }

    pub fn extension(p: u64, n: u32, modulus: Vec<u64>) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if n < 2 {
            return Err(Error::Field("extension degree must be >= 2".into()));
        }
        if modulus.len() != n as usize + 1 {
            return Err(Error::Field(format!(
                "modulus must have {} coefficients (degree {n}, constant term first)",
                n + 1
            )));
        }
        let modulus: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if *modulus.last().unwrap() != 1 {
            return Err(Error::Field("modulus must be monic".into()));
        }
        if p.checked_pow(n).filter(|&q| q <= TABLE_MAX).is_none() {
            return Err(Error::Unsupported(format!(
                "extension field order p^n exceeds {TABLE_MAX}"
            )));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::Field(format!(
                "modulus {modulus:?} is reducible over GF({p})"
            )));
        }
        let tables = Some(build_ext_tables(p, n, &modulus));
        Ok(FieldCtx(Arc::new(Inner { kind: FieldKind::Extension { p, n, modulus }, tables })))
    }

    /// Parse a field descriptor: `Q` | `GF(p)` | `GF(p^n)` | `GF(p^n:c0,c1,...,cn)`.
    pub fn parse(spec: &str) -> Result<FieldCtx> {
        let s = spec.trim();
        if s == "Q" {
            return Ok(FieldCtx::rationals());
        }
        let body = s
            .strip_prefix("GF(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Field(format!("bad field descriptor `{s}`")))?;
        let (head, modulus) = match body.split_once(':') {
            Some((h, m)) => (h, Some(m)),
            None => (body, None),
        };
        let parse_u64 = |t: &str| -> Result<u64> {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Field(format!("bad number `{t}` in field descriptor")))
        };
        if let Some((ps, ns)) = head.split_once('^') {
            let p = parse_u64(ps)?;
            let n = parse_u64(ns)? as u32;
            let coeffs = match modulus {
                Some(m) => m.split(',').map(parse_u64).collect::<Result<Vec<_>>>()?,
                None => match p.checked_pow(n) {
                    Some(4) => vec![1, 1, 1],
                    Some(8) => vec![1, 1, 0, 1],
                    Some(9) => vec![1, 0, 1],
                    _ => {
                        return Err(Error::Unsupported(format!(
                            "no built-in modulus for GF({p}^{n}); pass GF({p}^{n}:c0,...,cn)"
                        )))
                    }
                },
            };
            FieldCtx::extension(p, n, coeffs)
        } else {
            if modulus.is_some() {
                return Err(Error::Field("modulus given for a prime field".into()));
            }
            let q = parse_u64(head)?;
            match q {
                4 => FieldCtx::extension(2, 2, vec![1, 1, 1]),
                8 => FieldCtx::extension(2, 3, vec![1, 1, 0, 1]),
                9 => FieldCtx::extension(3, 2, vec![1, 0, 1]),
                _ => FieldCtx::prime(q),
            }
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    pub fn descriptor(&self) -> String {
        match &self.0.kind {
            FieldKind::Rationals => "Q".into(),
            FieldKind::Prime(p) => format!("GF({p})"),
            FieldKind::Extension { p, n, modulus } => {
                let coeffs: Vec<String> = modulus.iter().map(|c| c.to_string()).collect();
                format!("GF({p}^{n}:{})", coeffs.join(","))
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.kind {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Extension { p, .. } => *p,
        }
    }

    /// Field order, `None` for Q.
    pub fn order(&self) -> Option<u64> {
        match &self.0.kind {
            FieldKind::Rationals => None,
            FieldKind::Prime(p) => Some(*p),
            FieldKind::Extension { p, n, .. } => Some(p.pow(*n)),
        }
    }

    pub(crate) fn tables(&self) -> Option<&Tables> {
        self.0.tables.as_ref()
    }

    pub fn zero(&self) -> Elem {
        match &self.0.kind {
            FieldKind::Rationals => Elem::Rat(BigRational::zero()),
            _ => Elem::Fin(0),
        }
    }

    pub fn one(&self) -> Elem {
        match &self.0.kind {
            FieldKind::Rationals => Elem::Rat(BigRational::one()),
            FieldKind::Prime(_) => Elem::Fin(self.0.tables.as_ref().map_or(1, |t| t.one)),
            FieldKind::Extension { .. } => Elem::Fin(self.0.tables.as_ref().unwrap().one),
        }
    }

    pub fn from_int(&self, k: i64) -> Elem {
        match &self.0.kind {
            FieldKind::Rationals => Elem::Rat(BigRational::from(BigInt::from(k))),
            FieldKind::Prime(p) => {
                let r = k.rem_euclid(*p as i64) as u64;
                Elem::Fin(r as u32)
            }
            FieldKind::Extension { p, n, .. } => {
                let r = k.rem_euclid(*p as i64) as u64;
                Elem::Fin((r * p.pow(n - 1)) as u32)
            }
        }
    }

    fn check_fin(&self, x: &Elem) -> Result<u32> {
        match (x, &self.0.kind) {
            (Elem::Fin(i), FieldKind::Prime(p)) if (*i as u64) < *p => Ok(*i),
            (Elem::Fin(i), FieldKind::Extension { .. })
                if (*i as u64) < self.order().unwrap() =>
            {
                Ok(*i)
            }
            _ => Err(Error::CtxMismatch),
        }
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        match (&self.0.kind, x, y) {
            (FieldKind::Rationals, Elem::Rat(a), Elem::Rat(b)) => Ok(Elem::Rat(a + b)),
            (FieldKind::Prime(p), ..) => {
                let (a, b) = (self.check_fin(x)?, self.check_fin(y)?);
                if let Some(t) = self.tables() {
                    Ok(Elem::Fin(t.add(a, b)))
                } else {
                    Ok(Elem::Fin(((a as u64 + b as u64) % p) as u32))
                }
            }
            (FieldKind::Extension { .. }, ..) => {
                let (a, b) = (self.check_fin(x)?, self.check_fin(y)?);
                Ok(Elem::Fin(self.tables().unwrap().add(a, b)))
            }
            _ => Err(Error::CtxMismatch),
        }
    }

    pub fn neg(&self, x: &Elem) -> Result<Elem> {
        match (&self.0.kind, x) {
            (FieldKind::Rationals, Elem::Rat(a)) => Ok(Elem::Rat(-a)),
            (FieldKind::Prime(p), _) => {
                let a = self.check_fin(x)?;
                if let Some(t) = self.tables() {
                    Ok(Elem::Fin(t.neg[a as usize]))
                } else {
                    Ok(Elem::Fin(if a == 0 { 0 } else { (*p - a as u64) as u32 }))
                }
            }
            (FieldKind::Extension { .. }, _) => {
                let a = self.check_fin(x)?;
                Ok(Elem::Fin(self.tables().unwrap().neg[a as usize]))
            }
            _ => Err(Error::CtxMismatch),
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        let ny = self.neg(y)?;
        self.add(x, &ny)
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        match (&self.0.kind, x, y) {
            (FieldKind::Rationals, Elem::Rat(a), Elem::Rat(b)) => Ok(Elem::Rat(a * b)),
            (FieldKind::Prime(p), ..) => {
                let (a, b) = (self.check_fin(x)?, self.check_fin(y)?);
                if let Some(t) = self.tables() {
                    Ok(Elem::Fin(t.mul(a, b)))
                } else {
                    Ok(Elem::Fin(((a as u128 * b as u128) % *p as u128) as u32))
                }
            }
            (FieldKind::Extension { .. }, ..) => {
                let (a, b) = (self.check_fin(x)?, self.check_fin(y)?);
                Ok(Elem::Fin(self.tables().unwrap().mul(a, b)))
            }
            _ => Err(Error::CtxMismatch),
        }
    }

    pub fn inv(&self, x: &Elem) -> Result<Elem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (&self.0.kind, x) {
            (FieldKind::Rationals, Elem::Rat(a)) => Ok(Elem::Rat(a.recip())),
            (FieldKind::Prime(p), _) => {
                let a = self.check_fin(x)?;
                if let Some(t) = self.tables() {
                    Ok(Elem::Fin(t.inv[a as usize]))
                } else {
                    Ok(Elem::Fin(powmod(a as u64, *p - 2, *p) as u32))
                }
            }
            (FieldKind::Extension { .. }, _) => {
                let a = self.check_fin(x)?;
                Ok(Elem::Fin(self.tables().unwrap().inv[a as usize]))
            }
            _ => Err(Error::CtxMismatch),
        }
    }

    pub fn div(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        let iy = self.inv(y)?;
        self.mul(x, &iy)
    }

    /// All field elements in encoding order (finite fields only).
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let q = self
            .order()
            .ok_or_else(|| Error::Unsupported("element enumeration over an infinite field".into()))?;
        if q > ENUM_MAX {
            return Err(Error::Budget(format!("field too large to enumerate ({q} elements)")));
        }
        Ok((0..q as u32).map(Elem::Fin).collect())
    }

    /// Canonical representative of the square class {a^2 x : a != 0}
    /// (minimal under the encoding order; 0 for x = 0).
    pub fn square_class_rep(&self, x: &Elem) -> Result<Elem> {
        if x.is_zero() {
            return Ok(self.zero());
        }
        match &self.0.kind {
            FieldKind::Rationals => {
                let Elem::Rat(r) = x else { return Err(Error::CtxMismatch) };
                let negative = r.is_negative();
                let uv = r.numer().abs().to_biguint().unwrap() * r.denom().abs().to_biguint().unwrap();
                let sf = squarefree_part(&uv)?;
                let mut rep = BigRational::from(BigInt::from(sf));
                if negative {
                    rep = -rep;
                }
                Ok(Elem::Rat(rep))
            }
            FieldKind::Prime(p) if self.tables().is_none() => {
                // Euler criterion; class minimum is 1 for squares, else the
                // smallest non-residue.
                let a = self.check_fin(x)? as u64;
                if powmod(a, (*p - 1) / 2, *p) == 1 {
                    Ok(Elem::Fin(1))
                } else {
                    let mut k = 2u64;
                    loop {
                        if powmod(k, (*p - 1) / 2, *p) != 1 {
                            return Ok(Elem::Fin(k as u32));
                        }
                        k += 1;
                    }
                }
            }
            _ => {
                let t = self.tables().unwrap();
                let a = self.check_fin(x)?;
                let mut best = u32::MAX;
                for s in 1..t.q {
                    let v = t.mul(t.mul(s, s), a);
                    best = best.min(v);
                }
                Ok(Elem::Fin(best))
            }
        }
    }

    /// True iff some t in the field is a root of the polynomial with the
    /// given coefficients (constant term first). Exhaustive over finite
    /// fields; rational-root test over Q (degree <= 3).
    pub fn polynomial_has_root(&self, coeffs: &[Elem]) -> Result<bool> {
        let mut cs: Vec<Elem> = coeffs.to_vec();
        while cs.len() > 1 && cs.last().map_or(false, |c| c.is_zero()) {
            cs.pop();
        }
        if cs.iter().all(|c| c.is_zero()) {
            return Ok(true); // zero polynomial vanishes everywhere
        }
        if cs.len() == 1 {
            return Ok(false); // nonzero constant
        }
        match &self.0.kind {
            FieldKind::Rationals => self.rational_root_exists(&cs),
            _ => {
                let q = self.order().unwrap();
                if q > ENUM_MAX {
                    return Err(Error::Budget(format!(
                        "root search over GF({q}) exceeds the enumeration budget"
                    )));
                }
                for t in 0..q as u32 {
                    let tv = Elem::Fin(t);
                    let mut acc = self.zero();
                    for c in cs.iter().rev() {
                        acc = self.add(&self.mul(&acc, &tv)?, c)?;
                    }
                    if acc.is_zero() {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    fn rational_root_exists(&self, cs: &[Elem]) -> Result<bool> {
        if cs.len() > 4 {
            return Err(Error::Unsupported(
                "rational root search is limited to degree <= 3".into(),
            ));
        }
        let rats: Vec<&BigRational> = cs
            .iter()
            .map(|c| match c {
                Elem::Rat(r) => Ok(r),
                _ => Err(Error::CtxMismatch),
            })
            .collect::<Result<_>>()?;
        // clear denominators
        let mut lcm = BigInt::one();
        for r in &rats {
            lcm = num_integer::lcm(lcm, r.denom().clone());
        }
        let ints: Vec<BigInt> = rats.iter().map(|r| (*r * &lcm).to_integer()).collect();
        if ints[0].is_zero() {
            return Ok(true); // t = 0
        }
        let a0 = ints[0].abs().to_biguint().unwrap();
        let an = ints.last().unwrap().abs().to_biguint().unwrap();
        let eval = |t: &BigRational| -> bool {
            let mut acc = BigRational::zero();
            for c in ints.iter().rev() {
                acc = acc * t + BigRational::from(c.clone());
            }
            acc.is_zero()
        };
        for num in divisors(&a0)? {
            for den in divisors(&an)? {
                let t = BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()));
                if eval(&t) || eval(&(-t.clone())) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Parse an element literal: integer (reduced mod p), `a/b` over Q,
    /// `[c0,c1,...]` coefficient vector over an extension field.
    pub fn parse_literal(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let bad = |msg: &str| Error::Field(format!("bad element literal `{s}`: {msg}"));
        if let Some(body) = s.strip_prefix('[') {
            let body = body.strip_suffix(']').ok_or_else(|| bad("missing `]`"))?;
            let FieldKind::Extension { p, n, .. } = &self.0.kind else {
                return Err(bad("coefficient vectors need an extension field"));
            };
            let mut cs: Vec<u64> = Vec::new();
            for part in body.split(',') {
                let v: i64 = part.trim().parse().map_err(|_| bad("bad coefficient"))?;
                cs.push(v.rem_euclid(*p as i64) as u64);
            }
            if cs.len() > *n as usize {
                return Err(bad("too many coefficients"));
            }
            cs.resize(*n as usize, 0);
            return Ok(Elem::Fin(vec_to_idx(&cs, *p) as u32));
        }
        if let Some((num, den)) = s.split_once('/') {
            if !matches!(self.0.kind, FieldKind::Rationals) {
                return Err(bad("fractions are only valid over Q"));
            }
            let n: BigInt = num.trim().parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = den.trim().parse().map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            return Ok(Elem::Rat(BigRational::new(n, d)));
        }
        if matches!(self.0.kind, FieldKind::Rationals) {
            let n: BigInt = s.parse().map_err(|_| bad("bad integer"))?;
            return Ok(Elem::Rat(BigRational::from(n)));
        }
        let v: i64 = s.parse().map_err(|_| bad("bad integer"))?;
        Ok(self.from_int(v))
    }

    /// Render an element in the literal syntax accepted by `parse_literal`.
    pub fn literal(&self, x: &Elem) -> String {
        match (x, &self.0.kind) {
            (Elem::Rat(r), _) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            (Elem::Fin(i), FieldKind::Extension { p, n, .. }) => {
                let v = idx_to_vec(*i as u64, *p, *n);
                let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
            (Elem::Fin(i), _) => i.to_string(),
        }
    }
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

const FACTOR_BUDGET: u64 = 1_000_000;

/// Squarefree part of a positive integer by trial division.
fn squarefree_part(n: &BigUint) -> Result<BigUint> {
    let mut n = n.clone();
    let mut out = BigUint::one();
    let mut d = BigUint::from(2u32);
    let mut steps = 0u64;
    while &d * &d <= n {
        steps += 1;
        if steps > FACTOR_BUDGET {
            return Err(Error::Unsupported(
                "numerator/denominator too large to factor for the square-class oracle".into(),
            ));
        }
        let mut mult = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            mult += 1;
        }
        if mult % 2 == 1 {
            out *= &d;
        }
        d += 1u32;
    }
    if n > BigUint::one() {
        out *= n;
    }
    Ok(out)
}

/// All positive divisors, by trial division.
fn divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    let mut out = Vec::new();
    let mut d = BigUint::one();
    let mut steps = 0u64;
    while &d * &d <= *n {
        steps += 1;
        if steps > FACTOR_BUDGET {
            return Err(Error::Unsupported(
                "coefficient too large for the rational-root test".into(),
            ));
        }
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1u32;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    #[test]
    fn descriptor_parsing() {
        assert_eq!(FieldCtx::parse("Q").unwrap().characteristic(), 0);
        let f5 = FieldCtx::parse("GF(5)").unwrap();
        assert_eq!(f5.characteristic(), 5);
        assert_eq!(f5.order(), Some(5));
        let f4 = FieldCtx::parse("GF(4)").unwrap();
        assert_eq!(f4.characteristic(), 2);
        assert_eq!(f4.order(), Some(4));
        let f9 = FieldCtx::parse("GF(3^2)").unwrap();
        assert_eq!(f9.order(), Some(9));
        let custom = FieldCtx::parse("GF(2^2:1,1,1)").unwrap();
        assert_eq!(custom.order(), Some(4));
        assert!(FieldCtx::parse("GF(6)").is_err());
        assert!(FieldCtx::parse("GF(2^2:1,0,1)").is_err()); // t^2+1 = (t+1)^2 over GF(2)
        assert!(FieldCtx::parse("GF(2^5)").is_err()); // no built-in modulus
    }

    #[test]
    fn prime_arithmetic() {
        let f5 = FieldCtx::parse("GF(5)").unwrap();
        let two = f5.from_int(2);
        assert_eq!(f5.inv(&two).unwrap(), f5.from_int(3));
        let f3 = FieldCtx::parse("GF(3)").unwrap();
        assert_eq!(f3.mul(&f3.from_int(2), &f3.from_int(2)).unwrap(), f3.one());
        assert!(matches!(f5.inv(&f5.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rational_arithmetic() {
        let ctx = q();
        let half = ctx.parse_literal("1/2").unwrap();
        let third = ctx.parse_literal("1/3").unwrap();
        let sum = ctx.add(&half, &third).unwrap();
        assert_eq!(sum, ctx.parse_literal("5/6").unwrap());
    }

    #[test]
    fn gf4_default_modulus_has_no_root() {
        // t^2+t+1 over GF(2): evaluates to 1 at both elements
        let f2 = FieldCtx::parse("GF(2)").unwrap();
        let coeffs = vec![f2.one(), f2.one(), f2.one()];
        assert!(!f2.polynomial_has_root(&coeffs).unwrap());
    }

    #[test]
    fn extension_field_axioms() {
        for spec in ["GF(4)", "GF(8)", "GF(9)"] {
            let f = FieldCtx::parse(spec).unwrap();
            let els = f.elements().unwrap();
            for a in &els {
                for b in &els {
                    // commutativity and distributivity spot checks
                    assert_eq!(f.mul(a, b).unwrap(), f.mul(b, a).unwrap());
                    for c in &els {
                        let lhs = f.mul(a, &f.add(b, c).unwrap()).unwrap();
                        let rhs = f.add(&f.mul(a, b).unwrap(), &f.mul(a, c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs, "{spec}");
                    }
                }
                if !a.is_zero() {
                    assert_eq!(f.mul(a, &f.inv(a).unwrap()).unwrap(), f.one(), "{spec}");
                }
            }
        }
    }

    #[test]
    fn square_class_reps() {
        let f5 = FieldCtx::parse("GF(5)").unwrap();
        // class {2a^2} = {2,3}; min is 2
        assert_eq!(f5.square_class_rep(&f5.from_int(3)).unwrap(), f5.from_int(2));
        assert_eq!(f5.square_class_rep(&f5.zero()).unwrap(), f5.zero());
        let ctx = q();
        let x = ctx.parse_literal("4/9").unwrap();
        assert_eq!(ctx.square_class_rep(&x).unwrap(), ctx.one());
        let y = ctx.parse_literal("-8/3").unwrap(); // -8*3 = -24, sf(24) = 6
        assert_eq!(ctx.square_class_rep(&y).unwrap(), ctx.parse_literal("-6").unwrap());
    }

    #[test]
    fn square_class_invariance() {
        for spec in ["GF(5)", "GF(7)", "GF(4)", "GF(9)"] {
            let f = FieldCtx::parse(spec).unwrap();
            for x in f.elements().unwrap() {
                let rep = f.square_class_rep(&x).unwrap();
                assert_eq!(f.square_class_rep(&rep).unwrap(), rep);
                for a in f.elements().unwrap() {
                    if a.is_zero() {
                        continue;
                    }
                    let scaled = f.mul(&f.mul(&a, &a).unwrap(), &x).unwrap();
                    assert_eq!(f.square_class_rep(&scaled).unwrap(), rep, "{spec}");
                }
            }
        }
    }

    #[test]
    fn roots_finite() {
        let f7 = FieldCtx::parse("GF(7)").unwrap();
        // 2 - t^3: cubes in GF(7) are {0,1,6}
        let coeffs = vec![f7.from_int(2), f7.zero(), f7.zero(), f7.from_int(-1)];
        assert!(!f7.polynomial_has_root(&coeffs).unwrap());
        let f5 = FieldCtx::parse("GF(5)").unwrap();
        let coeffs = vec![f5.one(), f5.zero(), f5.one()]; // t^2 + 1
        assert!(f5.polynomial_has_root(&coeffs).unwrap());
        let coeffs = vec![f5.from_int(-1), f5.one()]; // t - 1
        assert!(f5.polynomial_has_root(&coeffs).unwrap());
    }

    #[test]
    fn roots_rational() {
        let ctx = q();
        // t^2 - 2 has no rational root
        let c = |s: &str| ctx.parse_literal(s).unwrap();
        assert!(!ctx.polynomial_has_root(&[c("-2"), c("0"), c("1")]).unwrap());
        // 2t^3 - 3t^2 + 1 has root t = 1
        assert!(ctx.polynomial_has_root(&[c("1"), c("0"), c("-3"), c("2")]).unwrap());
        // 4t - 6 has root 3/2
        assert!(ctx.polynomial_has_root(&[c("-6"), c("4")]).unwrap());
        assert!(ctx
            .polynomial_has_root(&[c("1"), c("0"), c("0"), c("0"), c("1")])
            .is_err());
    }

    #[test]
    fn literal_roundtrip() {
        let f9 = FieldCtx::parse("GF(9)").unwrap();
        for x in f9.elements().unwrap() {
            let s = f9.literal(&x);
            assert_eq!(f9.parse_literal(&s).unwrap(), x);
        }
        let ctx = q();
        for s in ["0", "7", "-3/4", "22/7"] {
            let x = ctx.parse_literal(s).unwrap();
            assert_eq!(ctx.parse_literal(&ctx.literal(&x)).unwrap(), x);
        }
    }

    #[test]
    fn encoding_order_extension_is_lexicographic() {
        // GF(4) with t^2+t+1: indices are (c0,c1) packed c0-first
        let f4 = FieldCtx::parse("GF(4)").unwrap();
        assert_eq!(f4.parse_literal("[0,0]").unwrap(), Elem::Fin(0));
        assert_eq!(f4.parse_literal("[0,1]").unwrap(), Elem::Fin(1));
        assert_eq!(f4.parse_literal("[1,0]").unwrap(), Elem::Fin(2));
        assert_eq!(f4.one(), Elem::Fin(2));
    }
}
