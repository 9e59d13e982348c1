//! The classification tables as machine-readable data: representative
//! families for general, associative and diassociative algebras in each of
//! the three characteristic regimes, together with parameter domains,
//! root-freeness side conditions, parameter equivalences, and automorphism
//! group shapes.
//!
//! Family templates are affine in their parameters; side-condition
//! polynomials live in one variable t with coefficients that are (at most
//! quadratic) polynomials in a single parameter. Everything instantiates
//! exactly over any supported field of the right characteristic.

use serde::Serialize;

use crate::dialgebra::DiMsc;
use crate::field::{Elem, FieldCtx};
use crate::msc::{Gl2, Msc};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CharClass {
    #[serde(rename = "not23")]
    Not23,
    #[serde(rename = "char2")]
    Char2,
    #[serde(rename = "char3")]
    Char3,
}

impl CharClass {
    pub fn of(ctx: &FieldCtx) -> CharClass {
        match ctx.characteristic() {
            2 => CharClass::Char2,
            3 => CharClass::Char3,
            _ => CharClass::Not23,
        }
    }
    pub fn name(&self) -> &'static str {
        match self {
            CharClass::Not23 => "not23",
            CharClass::Char2 => "char2",
            CharClass::Char3 => "char3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AlgKind {
    #[serde(rename = "general")]
    General,
    #[serde(rename = "assoc")]
    Associative,
    #[serde(rename = "dia")]
    Diassociative,
}

impl AlgKind {
    pub fn name(&self) -> &'static str {
        match self {
            AlgKind::General => "general",
            AlgKind::Associative => "assoc",
            AlgKind::Diassociative => "dia",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Param {
    pub name: &'static str,
    pub nonzero: bool,
}

/// One template entry: num/den + sum of coeff * param.
#[derive(Debug, Clone, Copy)]
pub struct TEntry {
    num: i64,
    den: i64,
    terms: &'static [(usize, i64)],
}

const fn e0() -> TEntry {
    TEntry { num: 0, den: 1, terms: &[] }
}
const fn ec(num: i64) -> TEntry {
    TEntry { num, den: 1, terms: &[] }
}
const fn ed(num: i64, den: i64) -> TEntry {
    TEntry { num, den, terms: &[] }
}
const fn ep(i: usize) -> TEntry {
    TEntry { num: 0, den: 1, terms: PARAM_TERMS[i] }
}
const fn ea(num: i64, terms: &'static [(usize, i64)]) -> TEntry {
    TEntry { num, den: 1, terms }
}
// small interned term lists so `ep` can stay const
const PARAM_TERMS: [&[(usize, i64)]; 4] = [&[(0, 1)], &[(1, 1)], &[(2, 1)], &[(3, 1)]];

/// Coefficient of a side-condition polynomial: c + lin*b + quad*b^2 where b
/// is the referenced parameter.
#[derive(Debug, Clone, Copy)]
pub struct SideCoeff {
    pub c: i64,
    pub lin: i64,
    pub quad: i64,
}

const fn sc(c: i64) -> SideCoeff {
    SideCoeff { c, lin: 0, quad: 0 }
}
const fn sl(lin: i64) -> SideCoeff {
    SideCoeff { c: 0, lin, quad: 0 }
}
const fn sq(quad: i64) -> SideCoeff {
    SideCoeff { c: 0, lin: 0, quad }
}
const fn scl(c: i64, lin: i64) -> SideCoeff {
    SideCoeff { c, lin, quad: 0 }
}

/// A polynomial in t that must have no root in the field.
#[derive(Debug, Clone, Copy)]
pub struct SidePoly {
    pub param: usize,
    pub coeffs: &'static [SideCoeff],
}

/// The stated parameter identification of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    None,
    /// p ~ a^2 p for a != 0.
    SquareScale { param: usize },
    /// p ~ a^3 p and p ~ a^3 p^-1 for a != 0 (p != 0 by domain).
    CubeScaleInv { param: usize },
    /// p ~ p + (1 + other) a + a^2 for every a.
    ArtinShift { param: usize, other: Option<usize> },
    /// p ~ b^2 (p + a^2) for b != 0, any a.
    SquareAffine { param: usize },
    /// p ~ num(a)^2 / den(a)^3 at every a where den(a) != 0.
    RationalMap { param: usize, map: RMap },
    /// Not restated by the source tables; the census resolves it per field.
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RMap {
    /// num = p^2 a^3 + 6 p a^2 + 3 p a + p - 2, den = p a^2 + p a + 1.
    A10Not23,
    /// num = p^2 a^3 + p a + p, den = p a^2 + p a + 1.
    A8Char2,
    /// num = p^2 a^3 + p - 2, den = p a^2 + p a + 1.
    A9Char3,
}

#[derive(Debug, Clone, Copy)]
pub struct Family {
    pub id: &'static str,
    pub char_class: CharClass,
    pub kind: AlgKind,
    pub params: &'static [Param],
    left: [TEntry; 8],
    right: Option<[TEntry; 8]>,
    pub side: &'static [SidePoly],
    pub equivalence: Equivalence,
}

/// A concrete catalog instance: an algebra or a dialgebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rep {
    Alg(Msc),
    Dia(DiMsc),
}

impl Rep {
    pub fn ctx(&self) -> &FieldCtx {
        match self {
            Rep::Alg(a) => a.ctx(),
            Rep::Dia(d) => d.ctx(),
        }
    }
}

/// A classification verdict: family identifier, characteristic class and
/// normalized parameters. The trivial algebra gets the family id "zero".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalLabel {
    pub family: &'static str,
    pub params: Vec<Elem>,
    pub char_class: CharClass,
}

impl CanonicalLabel {
    pub fn zero(ctx: &FieldCtx) -> CanonicalLabel {
        CanonicalLabel { family: "zero", params: vec![], char_class: CharClass::of(ctx) }
    }
    pub fn render(&self, ctx: &FieldCtx) -> String {
        if self.params.is_empty() {
            self.family.to_string()
        } else {
            let ps: Vec<String> = self.params.iter().map(|p| ctx.literal(p)).collect();
            format!("{}({})", self.family, ps.join(","))
        }
    }
}

const fn par(name: &'static str) -> Param {
    Param { name, nonzero: false }
}
const fn par_nz(name: &'static str) -> Param {
    Param { name, nonzero: true }
}

// ---------------------------------------------------------------- templates

const Z8: [TEntry; 8] = [e0(), e0(), e0(), e0(), e0(), e0(), e0(), e0()];
const NIL: [TEntry; 8] = [e0(), e0(), e0(), e0(), ec(1), e0(), e0(), e0()];

static GENERAL_NOT23: &[Family] = &[
    Family {
        id: "A1",
        char_class: CharClass::Not23,
        kind: AlgKind::General,
        params: &[par("a1"), par("a2"), par("a4"), par("b1")],
        left: [ep(0), ep(1), ea(1, &[(1, 1)]), ep(2), ep(3), ea(0, &[(0, -1)]), ea(1, &[(0, -1)]), ea(0, &[(1, -1)])],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A2",
        char_class: CharClass::Not23,
        kind: AlgKind::General,
        params: &[par("a1"), par_nz("a4"), par("b2")],
        left: [ep(0), e0(), e0(), ep(1), ec(1), ep(2), ea(1, &[(0, -1)]), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A3",
        char_class: CharClass::Not23,
        kind: AlgKind::General,
        params: &[par("a1"), par("a4"), par("b2")],
        left: [ep(0), e0(), e0(), ep(1), e0(), ep(2), ea(1, &[(0, -1)]), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::SquareScale { param: 1 },
    },
    Family {
        id: "A4",
        char_class: CharClass::Not23,
        kind: AlgKind::General,
        params: &[par("b1"), par("b2")],
        left: [e0(), ec(1), ec(1), e0(), ep(0), ep(1), ec(1), ec(-1)],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A5",
        char_class: CharClass::Not23,
        kind: AlgKind::General,
        params: &[par("a1")],
        left: [ep(0), e0(), e0(), e0(), ec(1), ea(-1, &[(0, 2)]), ea(1, &[(0, -1)]), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A6",
        char_class: CharClass::Not23,
        kind: AlgKind::General,
        params: &[par("a1"), par_nz("a4")],
        left: [ep(0), e0(), e0(), ep(1), ec(1), ea(1, &[(0, -1)]), ea(0, &[(0, -1)]), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A7",
        char_class: CharClass::Not23,
        kind: AlgKind::General,
        params: &[par("a1"), par("a4")],
        left: [ep(0), e0(), e0(), ep(1), e0(), ea(1, &[(0, -1)]), ea(0, &[(0, -1)]), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::SquareScale { param: 1 },
    },
    Family {
        id: "A8",
        char_class: CharClass::Not23,
        kind: AlgKind::General,
        params: &[par("b1")],
        left: [e0(), ec(1), ec(1), e0(), ep(0), ec(1), e0(), ec(-1)],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A9",
        char_class: CharClass::Not23,
        kind: AlgKind::General,
        params: &[],
        left: [ed(1, 3), e0(), e0(), e0(), ec(1), ed(2, 3), ed(-1, 3), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A10",
        char_class: CharClass::Not23,
        kind: AlgKind::General,
        params: &[par("b1")],
        left: [e0(), ec(1), ec(1), ec(1), ep(0), e0(), e0(), ec(-1)],
        right: None,
        side: &[
            // b1 t^3 - 3t - 1
            SidePoly { param: 0, coeffs: &[sc(-1), sc(-3), sc(0), sl(1)] },
            // b1 t^2 + b1 t + 1
            SidePoly { param: 0, coeffs: &[sc(1), sl(1), sl(1)] },
            // b1^2 t^3 + 6 b1 t^2 + 3 b1 t + b1 - 2
            SidePoly { param: 0, coeffs: &[scl(-2, 1), sl(3), sl(6), sq(1)] },
        ],
        equivalence: Equivalence::RationalMap { param: 0, map: RMap::A10Not23 },
    },
    Family {
        id: "A11",
        char_class: CharClass::Not23,
        kind: AlgKind::General,
        params: &[par_nz("b1")],
        left: [e0(), e0(), e0(), ec(1), ep(0), e0(), e0(), e0()],
        right: None,
        side: &[SidePoly { param: 0, coeffs: &[sl(1), sc(0), sc(0), sc(-1)] }], // b1 - t^3
        equivalence: Equivalence::CubeScaleInv { param: 0 },
    },
    Family {
        id: "A12",
        char_class: CharClass::Not23,
        kind: AlgKind::General,
        params: &[par("b1")],
        left: [e0(), ec(1), ec(1), e0(), ep(0), e0(), e0(), ec(-1)],
        right: None,
        side: &[],
        equivalence: Equivalence::SquareScale { param: 0 },
    },
    Family {
        id: "A13",
        char_class: CharClass::Not23,
        kind: AlgKind::General,
        params: &[],
        left: NIL,
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
];

static GENERAL_CHAR2: &[Family] = &[
    Family {
        id: "A1,2",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[par("a1"), par("a2"), par("a4"), par("b1")],
        left: [ep(0), ep(1), ea(1, &[(1, 1)]), ep(2), ep(3), ep(0), ea(1, &[(0, 1)]), ep(1)],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A2,2",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[par("a1"), par_nz("a4"), par("b2")],
        left: [ep(0), e0(), e0(), ep(1), ec(1), ep(2), ea(1, &[(0, 1)]), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A2,2(a1,0,1)",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[par("a1")],
        left: [ep(0), e0(), e0(), e0(), ec(1), ec(1), ea(1, &[(0, 1)]), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A3,2",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[par("a1"), par("a4"), par("b2")],
        left: [ep(0), e0(), e0(), ep(1), e0(), ep(2), ea(1, &[(0, 1)]), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::SquareScale { param: 1 },
    },
    Family {
        id: "A4,2",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[par("a1"), par("b1"), par("b2")],
        left: [ep(0), ec(1), ec(1), e0(), ep(1), ep(2), ea(1, &[(0, 1)]), ec(1)],
        right: None,
        side: &[],
        equivalence: Equivalence::ArtinShift { param: 1, other: Some(2) },
    },
    Family {
        id: "A5,2",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[par("a1"), par_nz("a4")],
        left: [ep(0), e0(), e0(), ep(1), ec(1), ea(1, &[(0, 1)]), ep(0), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A5,2(1,0)",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), ec(1), e0(), ec(1), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A6,2",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[par("a1"), par("a4")],
        left: [ep(0), e0(), e0(), ep(1), e0(), ea(1, &[(0, 1)]), ep(0), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::SquareScale { param: 1 },
    },
    Family {
        id: "A7,2",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[par("a1"), par("b1")],
        left: [ep(0), ec(1), ec(1), e0(), ep(1), ea(1, &[(0, 1)]), ep(0), ec(1)],
        right: None,
        side: &[],
        equivalence: Equivalence::ArtinShift { param: 1, other: Some(0) },
    },
    Family {
        id: "A8,2",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[par("b1")],
        left: [e0(), ec(1), ec(1), ec(1), ep(0), e0(), e0(), ec(1)],
        right: None,
        side: &[
            // b1 t^3 + t + 1
            SidePoly { param: 0, coeffs: &[sc(1), sc(1), sc(0), sl(1)] },
            // b1 t^2 + b1 t + 1
            SidePoly { param: 0, coeffs: &[sc(1), sl(1), sl(1)] },
        ],
        equivalence: Equivalence::RationalMap { param: 0, map: RMap::A8Char2 },
    },
    Family {
        id: "A9,2",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[par("b1")],
        left: [e0(), e0(), e0(), ec(1), ep(0), e0(), e0(), e0()],
        right: None,
        side: &[SidePoly { param: 0, coeffs: &[sl(1), sc(0), sc(0), sc(1)] }], // b1 + t^3
        equivalence: Equivalence::CubeScaleInv { param: 0 },
    },
    Family {
        id: "A10,2",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[par("b1")],
        left: [ec(1), ec(1), ec(1), e0(), ep(0), ec(1), ec(1), ec(1)],
        right: None,
        side: &[],
        equivalence: Equivalence::ArtinShift { param: 0, other: None },
    },
    Family {
        id: "A11,2",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[par("b1")],
        left: [e0(), ec(1), ec(1), e0(), ep(0), e0(), e0(), ec(1)],
        right: None,
        side: &[],
        equivalence: Equivalence::SquareAffine { param: 0 },
    },
    Family {
        id: "A12,2",
        char_class: CharClass::Char2,
        kind: AlgKind::General,
        params: &[],
        left: NIL,
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
];

static GENERAL_CHAR3: &[Family] = &[
    Family {
        id: "A1,3",
        char_class: CharClass::Char3,
        kind: AlgKind::General,
        params: &[par("a1"), par("a2"), par("a4"), par("b1")],
        left: [ep(0), ep(1), ea(1, &[(1, 1)]), ep(2), ep(3), ea(0, &[(0, -1)]), ea(1, &[(0, -1)]), ea(0, &[(1, -1)])],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A2,3",
        char_class: CharClass::Char3,
        kind: AlgKind::General,
        params: &[par("a1"), par_nz("a4"), par("b2")],
        left: [ep(0), e0(), e0(), ep(1), ec(1), ep(2), ea(1, &[(0, -1)]), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A3,3",
        char_class: CharClass::Char3,
        kind: AlgKind::General,
        params: &[par("a1"), par("a4"), par("b2")],
        left: [ep(0), e0(), e0(), ep(1), e0(), ep(2), ea(1, &[(0, -1)]), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::SquareScale { param: 1 },
    },
    Family {
        id: "A4,3",
        char_class: CharClass::Char3,
        kind: AlgKind::General,
        params: &[par("b1"), par("b2")],
        left: [e0(), ec(1), ec(1), e0(), ep(0), ep(1), ec(1), ec(-1)],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A5,3",
        char_class: CharClass::Char3,
        kind: AlgKind::General,
        params: &[par("a1")],
        left: [ep(0), e0(), e0(), e0(), ec(1), ea(-1, &[(0, 2)]), ea(1, &[(0, -1)]), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A6,3",
        char_class: CharClass::Char3,
        kind: AlgKind::General,
        params: &[par("a1"), par_nz("a4")],
        left: [ep(0), e0(), e0(), ep(1), ec(1), ea(1, &[(0, -1)]), ea(0, &[(0, -1)]), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A7,3",
        char_class: CharClass::Char3,
        kind: AlgKind::General,
        params: &[par("a1"), par("a4")],
        left: [ep(0), e0(), e0(), ep(1), e0(), ea(1, &[(0, -1)]), ea(0, &[(0, -1)]), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::SquareScale { param: 1 },
    },
    Family {
        id: "A8,3",
        char_class: CharClass::Char3,
        kind: AlgKind::General,
        params: &[par("b1")],
        left: [e0(), ec(1), ec(1), e0(), ep(0), ec(1), e0(), ec(-1)],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A9,3",
        char_class: CharClass::Char3,
        kind: AlgKind::General,
        params: &[par("b1")],
        left: [e0(), ec(1), ec(1), ec(1), ep(0), e0(), e0(), ec(-1)],
        right: None,
        side: &[
            // b1 - t^3
            SidePoly { param: 0, coeffs: &[sl(1), sc(0), sc(0), sc(-1)] },
            // b1 t^2 + b1 t + 1
            SidePoly { param: 0, coeffs: &[sc(1), sl(1), sl(1)] },
            // b1^2 t^3 + b1 - 2
            SidePoly { param: 0, coeffs: &[scl(-2, 1), sc(0), sc(0), sq(1)] },
        ],
        equivalence: Equivalence::RationalMap { param: 0, map: RMap::A9Char3 },
    },
    Family {
        id: "A10,3",
        char_class: CharClass::Char3,
        kind: AlgKind::General,
        params: &[par_nz("b1")],
        left: [e0(), e0(), e0(), ec(1), ep(0), e0(), e0(), e0()],
        right: None,
        side: &[SidePoly { param: 0, coeffs: &[sl(1), sc(0), sc(0), sc(-1)] }], // b1 - t^3
        equivalence: Equivalence::CubeScaleInv { param: 0 },
    },
    Family {
        id: "A11,3",
        char_class: CharClass::Char3,
        kind: AlgKind::General,
        params: &[par("b1")],
        left: [e0(), ec(1), ec(1), e0(), ep(0), e0(), e0(), ec(-1)],
        right: None,
        side: &[],
        equivalence: Equivalence::SquareScale { param: 0 },
    },
    Family {
        id: "A12,3",
        char_class: CharClass::Char3,
        kind: AlgKind::General,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), ec(1), ec(-1), ec(-1), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "A13,3",
        char_class: CharClass::Char3,
        kind: AlgKind::General,
        params: &[],
        left: NIL,
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
];

static ASSOC_NOT23: &[Family] = &[
    Family {
        id: "As13^1",
        char_class: CharClass::Not23,
        kind: AlgKind::Associative,
        params: &[],
        left: NIL,
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "As3^2",
        char_class: CharClass::Not23,
        kind: AlgKind::Associative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), e0(), e0(), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "As3^3",
        char_class: CharClass::Not23,
        kind: AlgKind::Associative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), ec(1), e0(), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "As3^4",
        char_class: CharClass::Not23,
        kind: AlgKind::Associative,
        params: &[],
        left: [ed(1, 2), e0(), e0(), e0(), e0(), e0(), ed(1, 2), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "As3^5",
        char_class: CharClass::Not23,
        kind: AlgKind::Associative,
        params: &[par("a4")],
        left: [ed(1, 2), e0(), e0(), ep(0), e0(), ed(1, 2), ed(1, 2), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::SquareScale { param: 0 },
    },
];

static ASSOC_CHAR2: &[Family] = &[
    Family {
        id: "As12,2^1",
        char_class: CharClass::Char2,
        kind: AlgKind::Associative,
        params: &[],
        left: NIL,
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "As11,2^2",
        char_class: CharClass::Char2,
        kind: AlgKind::Associative,
        params: &[par("b1")],
        left: [e0(), ec(1), ec(1), e0(), ep(0), e0(), e0(), ec(1)],
        right: None,
        side: &[],
        equivalence: Equivalence::SquareAffine { param: 0 },
    },
    Family {
        id: "As6,2^3",
        char_class: CharClass::Char2,
        kind: AlgKind::Associative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), e0(), ec(1), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "As4,2^4",
        char_class: CharClass::Char2,
        kind: AlgKind::Associative,
        params: &[par("b1")],
        left: [ec(1), ec(1), ec(1), e0(), ep(0), e0(), e0(), ec(1)],
        right: None,
        side: &[],
        equivalence: Equivalence::ArtinShift { param: 0, other: None },
    },
    Family {
        id: "As3,2^5",
        char_class: CharClass::Char2,
        kind: AlgKind::Associative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), e0(), e0(), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "As3,2^6",
        char_class: CharClass::Char2,
        kind: AlgKind::Associative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), ec(1), e0(), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
];

static ASSOC_CHAR3: &[Family] = &[
    Family {
        id: "As13,3^1",
        char_class: CharClass::Char3,
        kind: AlgKind::Associative,
        params: &[],
        left: NIL,
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "As3,3^2",
        char_class: CharClass::Char3,
        kind: AlgKind::Associative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), e0(), e0(), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "As3,3^3",
        char_class: CharClass::Char3,
        kind: AlgKind::Associative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), ec(1), e0(), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "As3,3^4",
        char_class: CharClass::Char3,
        kind: AlgKind::Associative,
        params: &[],
        left: [ec(2), e0(), e0(), e0(), e0(), e0(), ec(2), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "As3,3^5",
        char_class: CharClass::Char3,
        kind: AlgKind::Associative,
        params: &[par("a4")],
        left: [ec(2), e0(), e0(), ep(0), e0(), ec(2), ec(2), e0()],
        right: None,
        side: &[],
        equivalence: Equivalence::SquareScale { param: 0 },
    },
];

static DIA_NOT23: &[Family] = &[
    Family {
        id: "D13^1",
        char_class: CharClass::Not23,
        kind: AlgKind::Diassociative,
        params: &[par("d1")],
        left: NIL,
        right: Some([e0(), e0(), e0(), e0(), ep(0), e0(), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::Unresolved,
    },
    Family {
        id: "D3^2",
        char_class: CharClass::Not23,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), e0(), e0(), e0()],
        right: Some([ec(1), e0(), e0(), e0(), e0(), e0(), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D3^3",
        char_class: CharClass::Not23,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), e0(), e0(), e0()],
        right: Some([ec(1), e0(), e0(), e0(), e0(), ec(1), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D3^4",
        char_class: CharClass::Not23,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), ec(1), e0(), e0()],
        right: Some([ec(1), e0(), e0(), e0(), e0(), ec(1), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D3^5",
        char_class: CharClass::Not23,
        kind: AlgKind::Diassociative,
        params: &[par("d1")],
        left: [ed(1, 2), e0(), e0(), e0(), e0(), e0(), ed(1, 2), e0()],
        right: Some([ed(1, 2), e0(), e0(), e0(), ep(0), e0(), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::Unresolved,
    },
    Family {
        id: "D3^6",
        char_class: CharClass::Not23,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ed(1, 2), e0(), e0(), e0(), e0(), e0(), ed(1, 2), e0()],
        right: Some([ed(1, 2), e0(), e0(), e0(), e0(), ed(1, 2), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D3^7",
        char_class: CharClass::Not23,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ed(1, 2), e0(), e0(), e0(), e0(), e0(), ed(1, 2), e0()],
        right: Some([ed(1, 2), e0(), e0(), e0(), e0(), e0(), ed(1, 2), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D3^8",
        char_class: CharClass::Not23,
        kind: AlgKind::Diassociative,
        params: &[par("a4")],
        left: [ed(1, 2), e0(), e0(), ep(0), e0(), ed(1, 2), ed(1, 2), e0()],
        right: Some([ed(1, 2), e0(), e0(), ep(0), e0(), ed(1, 2), ed(1, 2), e0()]),
        side: &[],
        equivalence: Equivalence::Unresolved,
    },
    Family {
        id: "D0^9",
        char_class: CharClass::Not23,
        kind: AlgKind::Diassociative,
        params: &[],
        left: Z8,
        right: Some(NIL),
        side: &[],
        equivalence: Equivalence::None,
    },
];

static DIA_CHAR2: &[Family] = &[
    Family {
        id: "D12,2^1",
        char_class: CharClass::Char2,
        kind: AlgKind::Diassociative,
        params: &[par("d1")],
        left: NIL,
        right: Some([e0(), e0(), e0(), e0(), ep(0), e0(), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::Unresolved,
    },
    Family {
        id: "D11,2^2",
        char_class: CharClass::Char2,
        kind: AlgKind::Diassociative,
        params: &[par("b1")],
        left: [e0(), ec(1), ec(1), e0(), ep(0), e0(), e0(), ec(1)],
        right: Some([e0(), ec(1), ec(1), e0(), ep(0), e0(), e0(), ec(1)]),
        side: &[],
        equivalence: Equivalence::Unresolved,
    },
    Family {
        id: "D6,2^3",
        char_class: CharClass::Char2,
        kind: AlgKind::Diassociative,
        params: &[par("b1")],
        left: [ec(1), e0(), e0(), e0(), e0(), e0(), ec(1), e0()],
        right: Some([ec(1), e0(), e0(), e0(), ep(0), e0(), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::Unresolved,
    },
    Family {
        id: "D6,2^4",
        char_class: CharClass::Char2,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), e0(), ec(1), e0()],
        right: Some([ec(1), e0(), e0(), e0(), e0(), ec(1), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D6,2^5",
        char_class: CharClass::Char2,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), e0(), ec(1), e0()],
        right: Some([ec(1), e0(), e0(), e0(), e0(), e0(), ec(1), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D4,2^6",
        char_class: CharClass::Char2,
        kind: AlgKind::Diassociative,
        params: &[par("b1")],
        left: [ec(1), ec(1), ec(1), e0(), ep(0), e0(), e0(), ec(1)],
        right: Some([ec(1), ec(1), ec(1), e0(), ep(0), e0(), e0(), ec(1)]),
        side: &[],
        equivalence: Equivalence::Unresolved,
    },
    Family {
        id: "D3,2^7",
        char_class: CharClass::Char2,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), e0(), e0(), e0()],
        right: Some([ec(1), e0(), e0(), e0(), e0(), e0(), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D3,2^8",
        char_class: CharClass::Char2,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), e0(), e0(), e0()],
        right: Some([ec(1), e0(), e0(), e0(), e0(), ec(1), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D3,2^9",
        char_class: CharClass::Char2,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), ec(1), e0(), e0()],
        right: Some([ec(1), e0(), e0(), e0(), e0(), ec(1), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D0,2^10",
        char_class: CharClass::Char2,
        kind: AlgKind::Diassociative,
        params: &[],
        left: Z8,
        right: Some(NIL),
        side: &[],
        equivalence: Equivalence::None,
    },
];

static DIA_CHAR3: &[Family] = &[
    Family {
        id: "D13,3^1",
        char_class: CharClass::Char3,
        kind: AlgKind::Diassociative,
        params: &[par("d1")],
        left: NIL,
        right: Some([e0(), e0(), e0(), e0(), ep(0), e0(), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::Unresolved,
    },
    Family {
        id: "D3,3^2",
        char_class: CharClass::Char3,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), e0(), e0(), e0()],
        right: Some([ec(1), e0(), e0(), e0(), e0(), e0(), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D3,3^3",
        char_class: CharClass::Char3,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), e0(), e0(), e0()],
        right: Some([ec(1), e0(), e0(), e0(), e0(), ec(1), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D3,3^4",
        char_class: CharClass::Char3,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ec(1), e0(), e0(), e0(), e0(), ec(1), e0(), e0()],
        right: Some([ec(1), e0(), e0(), e0(), e0(), ec(1), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D3,3^5",
        char_class: CharClass::Char3,
        kind: AlgKind::Diassociative,
        params: &[par("d1")],
        left: [ec(2), e0(), e0(), e0(), e0(), e0(), ec(2), e0()],
        right: Some([ec(2), e0(), e0(), e0(), ep(0), e0(), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::Unresolved,
    },
    Family {
        id: "D3,3^6",
        char_class: CharClass::Char3,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ec(2), e0(), e0(), e0(), e0(), e0(), ec(2), e0()],
        right: Some([ec(2), e0(), e0(), e0(), e0(), ec(2), e0(), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D3,3^7",
        char_class: CharClass::Char3,
        kind: AlgKind::Diassociative,
        params: &[],
        left: [ec(2), e0(), e0(), e0(), e0(), e0(), ec(2), e0()],
        right: Some([ec(2), e0(), e0(), e0(), e0(), e0(), ec(2), e0()]),
        side: &[],
        equivalence: Equivalence::None,
    },
    Family {
        id: "D3,3^8",
        char_class: CharClass::Char3,
        kind: AlgKind::Diassociative,
        params: &[par("a4")],
        left: [ec(2), e0(), e0(), ep(0), e0(), ec(2), ec(2), e0()],
        right: Some([ec(2), e0(), e0(), ep(0), e0(), ec(2), ec(2), e0()]),
        side: &[],
        equivalence: Equivalence::Unresolved,
    },
    Family {
        id: "D0,3^9",
        char_class: CharClass::Char3,
        kind: AlgKind::Diassociative,
        params: &[],
        left: Z8,
        right: Some(NIL),
        side: &[],
        equivalence: Equivalence::None,
    },
];

/// All families of one characteristic class and kind, in table order.
pub fn families(char_class: CharClass, kind: AlgKind) -> &'static [Family] {
    match (char_class, kind) {
        (CharClass::Not23, AlgKind::General) => GENERAL_NOT23,
        (CharClass::Char2, AlgKind::General) => GENERAL_CHAR2,
        (CharClass::Char3, AlgKind::General) => GENERAL_CHAR3,
        (CharClass::Not23, AlgKind::Associative) => ASSOC_NOT23,
        (CharClass::Char2, AlgKind::Associative) => ASSOC_CHAR2,
        (CharClass::Char3, AlgKind::Associative) => ASSOC_CHAR3,
        (CharClass::Not23, AlgKind::Diassociative) => DIA_NOT23,
        (CharClass::Char2, AlgKind::Diassociative) => DIA_CHAR2,
        (CharClass::Char3, AlgKind::Diassociative) => DIA_CHAR3,
    }
}

pub fn family(id: &str) -> Result<&'static Family> {
    for class in [CharClass::Not23, CharClass::Char2, CharClass::Char3] {
        for kind in [AlgKind::General, AlgKind::Associative, AlgKind::Diassociative] {
            if let Some(f) = families(class, kind).iter().find(|f| f.id == id) {
                return Ok(f);
            }
        }
    }
    Err(Error::UnknownFamily(id.to_string()))
}

impl Family {
    fn eval_entry(&self, ctx: &FieldCtx, entry: &TEntry, params: &[Elem]) -> Result<Elem> {
        let num = ctx.from_int(entry.num);
        let mut acc = if entry.den == 1 {
            num
        } else {
            ctx.div(&num, &ctx.from_int(entry.den))?
        };
        for &(idx, coeff) in entry.terms {
            let term = ctx.mul(&ctx.from_int(coeff), &params[idx])?;
            acc = ctx.add(&acc, &term)?;
        }
        Ok(acc)
    }

    fn eval_template(&self, ctx: &FieldCtx, t: &[TEntry; 8], params: &[Elem]) -> Result<Msc> {
        let mut out: Vec<Elem> = Vec::with_capacity(8);
        for entry in t {
            out.push(self.eval_entry(ctx, entry, params)?);
        }
        Ok(Msc::new(ctx, out.try_into().unwrap()))
    }

    fn check_char(&self, ctx: &FieldCtx) -> Result<()> {
        if CharClass::of(ctx) != self.char_class {
            return Err(Error::Field(format!(
                "family {} needs characteristic class {}, got characteristic {}",
                self.id,
                self.char_class.name(),
                ctx.characteristic()
            )));
        }
        Ok(())
    }

    /// Instantiate the template at the given parameter values.
    pub fn instantiate(&self, ctx: &FieldCtx, params: &[Elem]) -> Result<Rep> {
        self.check_char(ctx)?;
        if params.len() != self.params.len() {
            return Err(Error::Inadmissible(self.id));
        }
        let left = self.eval_template(ctx, &self.left, params)?;
        match &self.right {
            None => Ok(Rep::Alg(left)),
            Some(r) => {
                let right = self.eval_template(ctx, r, params)?;
                Ok(Rep::Dia(DiMsc::new(left, right)?))
            }
        }
    }

    /// Nonzero-domain constraints plus all root-freeness side conditions.
    pub fn admissible(&self, ctx: &FieldCtx, params: &[Elem]) -> Result<bool> {
        for (p, v) in self.params.iter().zip(params) {
            if p.nonzero && v.is_zero() {
                return Ok(false);
            }
        }
        self.side_condition_ok(ctx, params)
    }

    /// True iff every side-condition polynomial is root-free in the field.
    pub fn side_condition_ok(&self, ctx: &FieldCtx, params: &[Elem]) -> Result<bool> {
        for sp in self.side {
            let b = &params[sp.param];
            let b2 = ctx.mul(b, b)?;
            let mut coeffs = Vec::with_capacity(sp.coeffs.len());
            for co in sp.coeffs {
                let mut v = ctx.from_int(co.c);
                if co.lin != 0 {
                    v = ctx.add(&v, &ctx.mul(&ctx.from_int(co.lin), b)?)?;
                }
                if co.quad != 0 {
                    v = ctx.add(&v, &ctx.mul(&ctx.from_int(co.quad), &b2)?)?;
                }
                coeffs.push(v);
            }
            if ctx.polynomial_has_root(&coeffs)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One-step images of the parameter vector under the stated equivalence
    /// (finite fields).
    fn equivalence_images(&self, ctx: &FieldCtx, params: &[Elem]) -> Result<Vec<Vec<Elem>>> {
        let mut out = Vec::new();
        let els = ctx.elements()?;
        let nonzero = || els.iter().filter(|a| !a.is_zero());
        match self.equivalence {
            Equivalence::None | Equivalence::Unresolved => {}
            Equivalence::SquareScale { param } => {
                for a in nonzero() {
                    let a2 = ctx.mul(a, a)?;
                    let mut p = params.to_vec();
                    p[param] = ctx.mul(&a2, &p[param])?;
                    out.push(p);
                }
            }
            Equivalence::CubeScaleInv { param } => {
                for a in nonzero() {
                    let a3 = ctx.mul(&ctx.mul(a, a)?, a)?;
                    let mut p = params.to_vec();
                    p[param] = ctx.mul(&a3, &params[param])?;
                    out.push(p);
                    if !params[param].is_zero() {
                        let mut p = params.to_vec();
                        p[param] = ctx.mul(&a3, &ctx.inv(&params[param])?)?;
                        out.push(p);
                    }
                }
            }
            Equivalence::ArtinShift { param, other } => {
                for a in &els {
                    let mut factor = ctx.one();
                    if let Some(o) = other {
                        factor = ctx.add(&factor, &params[o])?;
                    }
                    let shift = ctx.add(&ctx.mul(&factor, a)?, &ctx.mul(a, a)?)?;
                    let mut p = params.to_vec();
                    p[param] = ctx.add(&params[param], &shift)?;
                    out.push(p);
                }
            }
            Equivalence::SquareAffine { param } => {
                for a in &els {
                    let a2 = ctx.mul(a, a)?;
                    for b in nonzero() {
                        let b2 = ctx.mul(b, b)?;
                        let mut p = params.to_vec();
                        p[param] = ctx.mul(&b2, &ctx.add(&params[param], &a2)?)?;
                        out.push(p);
                    }
                }
            }
            Equivalence::RationalMap { param, map } => {
                let b = &params[param];
                let b2 = ctx.mul(b, b)?;
                for a in &els {
                    let a2 = ctx.mul(a, a)?;
                    let a3 = ctx.mul(&a2, a)?;
                    let den = ctx.add(
                        &ctx.add(&ctx.mul(b, &a2)?, &ctx.mul(b, a)?)?,
                        &ctx.one(),
                    )?;
                    if den.is_zero() {
                        continue;
                    }
                    let num = match map {
                        RMap::A10Not23 => {
                            let mut n = ctx.mul(&b2, &a3)?;
                            n = ctx.add(&n, &ctx.mul(&ctx.from_int(6), &ctx.mul(b, &a2)?)?)?;
                            n = ctx.add(&n, &ctx.mul(&ctx.from_int(3), &ctx.mul(b, a)?)?)?;
                            n = ctx.add(&n, b)?;
                            ctx.add(&n, &ctx.from_int(-2))?
                        }
                        RMap::A8Char2 => {
                            let mut n = ctx.mul(&b2, &a3)?;
                            n = ctx.add(&n, &ctx.mul(b, a)?)?;
                            ctx.add(&n, b)?
                        }
                        RMap::A9Char3 => {
                            let mut n = ctx.mul(&b2, &a3)?;
                            n = ctx.add(&n, b)?;
                            ctx.add(&n, &ctx.from_int(-2))?
                        }
                    };
                    let num2 = ctx.mul(&num, &num)?;
                    let den3 = ctx.mul(&ctx.mul(&den, &den)?, &den)?;
                    let mut p = params.to_vec();
                    p[param] = ctx.div(&num2, &den3)?;
                    out.push(p);
                }
            }
        }
        Ok(out)
    }

    /// Solve template == target for the parameters. Every template entry
    /// carries at most one parameter, so parameters are read off directly
    /// and the full template is then verified; `None` means no match.
    pub fn solve_params(&self, ctx: &FieldCtx, target: &Rep) -> Result<Option<Vec<Elem>>> {
        let (target_entries, templates): (Vec<&Elem>, Vec<&[TEntry; 8]>) =
            match (target, &self.right) {
                (Rep::Alg(a), None) => (a.entries().iter().collect(), vec![&self.left]),
                (Rep::Dia(d), Some(r)) => (
                    d.left().entries().iter().chain(d.right().entries().iter()).collect(),
                    vec![&self.left, r],
                ),
                _ => return Ok(None),
            };
        let entries: Vec<&TEntry> = templates.iter().flat_map(|t| t.iter()).collect();
        let mut params: Vec<Option<Elem>> = vec![None; self.params.len()];
        for (entry, tv) in entries.iter().zip(&target_entries) {
            if let [(idx, coeff)] = entry.terms {
                if params[*idx].is_none() {
                    let base = self.eval_entry(
                        ctx,
                        &TEntry { num: entry.num, den: entry.den, terms: &[] },
                        &[],
                    )?;
                    let diff = ctx.sub(tv, &base)?;
                    params[*idx] = Some(ctx.div(&diff, &ctx.from_int(*coeff))?);
                }
            }
        }
        let params: Vec<Elem> = match params.into_iter().collect::<Option<_>>() {
            Some(p) => p,
            None => return Ok(None),
        };
        for (entry, tv) in entries.iter().zip(&target_entries) {
            if self.eval_entry(ctx, entry, &params)? != **tv {
                return Ok(None);
            }
        }
        Ok(Some(params))
    }

    /// Canonical fixed point of the parameter vector: the minimal admissible
    /// vector (encoding order) reachable via the stated equivalence maps.
    pub fn normalize_params(&self, ctx: &FieldCtx, params: &[Elem]) -> Result<Vec<Elem>> {
        if params.len() != self.params.len() {
            return Err(Error::Inadmissible(self.id));
        }
        if !self.admissible(ctx, params)? {
            return Err(Error::Inadmissible(self.id));
        }
        if ctx.order().is_none() {
            // over Q only the square-class identification is computable
            return match self.equivalence {
                Equivalence::None | Equivalence::Unresolved => Ok(params.to_vec()),
                Equivalence::SquareScale { param } => {
                    let mut p = params.to_vec();
                    p[param] = ctx.square_class_rep(&p[param])?;
                    Ok(p)
                }
                _ => Err(Error::Unsupported(format!(
                    "parameter normalization for {} over an infinite field",
                    self.id
                ))),
            };
        }
        // orbit closure, then keep admissible members, then take the minimum
        let mut seen: std::collections::BTreeSet<Vec<Elem>> = Default::default();
        let mut frontier = vec![params.to_vec()];
        seen.insert(params.to_vec());
        while let Some(p) = frontier.pop() {
            for img in self.equivalence_images(ctx, &p)? {
                if seen.insert(img.clone()) {
                    frontier.push(img);
                }
            }
        }
        seen.into_iter()
            .filter(|p| self.admissible(ctx, p).unwrap_or(false))
            .next()
            .ok_or(Error::Inadmissible(self.id))
    }
}

/// One instance per isomorphism class of every family in the given class and
/// kind: parameters enumerated, filtered by side conditions, reduced modulo
/// the stated equivalence, normalized. Finite fields only.
pub fn representatives(
    char_class: CharClass,
    kind: AlgKind,
    ctx: &FieldCtx,
) -> Result<Vec<(CanonicalLabel, Rep)>> {
    if CharClass::of(ctx) != char_class {
        return Err(Error::Field(format!(
            "characteristic {} does not match class {}",
            ctx.characteristic(),
            char_class.name()
        )));
    }
    if ctx.order().is_none() {
        return Err(Error::Unsupported(
            "parameter enumeration over an infinite field (use the symbolic templates)".into(),
        ));
    }
    let els = ctx.elements()?;
    let mut out = Vec::new();
    for fam in families(char_class, kind) {
        let mut normalized: Vec<Vec<Elem>> = Vec::new();
        let mut stack: Vec<Vec<Elem>> = vec![vec![]];
        for _ in 0..fam.params.len() {
            let mut next = Vec::new();
            for partial in &stack {
                for e in &els {
                    let mut p = partial.clone();
                    p.push(e.clone());
                    next.push(p);
                }
            }
            stack = next;
        }
        for params in stack {
            if !fam.admissible(ctx, &params)? {
                continue;
            }
            let norm = fam.normalize_params(ctx, &params)?;
            if !normalized.contains(&norm) {
                normalized.push(norm);
            }
        }
        normalized.sort();
        for params in normalized {
            let rep = fam.instantiate(ctx, &params)?;
            let label =
                CanonicalLabel { family: fam.id, params, char_class };
            out.push((label, rep));
        }
    }
    Ok(out)
}

/// Symbolic family metadata for infinite fields (template listing).
#[derive(Debug, Serialize)]
pub struct FamilyInfo {
    pub family: &'static str,
    pub char_class: CharClass,
    pub kind: AlgKind,
    pub params: Vec<String>,
    pub msc: Option<Vec<Vec<String>>>,
    pub dimsc: Option<[Vec<Vec<String>>; 2]>,
    pub side_conditions: Vec<String>,
    pub symbolic: bool,
}

fn render_template(t: &[TEntry; 8], fam: &Family) -> Vec<Vec<String>> {
    let render_entry = |e: &TEntry| -> String {
        let mut parts: Vec<String> = Vec::new();
        if e.num != 0 || e.terms.is_empty() {
            if e.den == 1 {
                parts.push(format!("{}", e.num));
            } else {
                parts.push(format!("{}/{}", e.num, e.den));
            }
        }
        for &(idx, coeff) in e.terms {
            let name = fam.params[idx].name;
            match coeff {
                1 => parts.push(name.to_string()),
                -1 => parts.push(format!("-{name}")),
                c => parts.push(format!("{c}*{name}")),
            }
        }
        let mut s = parts.join("+");
        while let Some(pos) = s.find("+-") {
            s.replace_range(pos..pos + 2, "-");
        }
        s
    };
    vec![
        t[..4].iter().map(render_entry).collect(),
        t[4..].iter().map(render_entry).collect(),
    ]
}

fn render_side(fam: &Family) -> Vec<String> {
    fam.side
        .iter()
        .map(|sp| {
            let b = fam.params[sp.param].name;
            let mut terms: Vec<String> = Vec::new();
            for (i, co) in sp.coeffs.iter().enumerate() {
                let mut coeff_parts: Vec<String> = Vec::new();
                if co.c != 0 {
                    coeff_parts.push(co.c.to_string());
                }
                if co.lin != 0 {
                    coeff_parts.push(if co.lin == 1 {
                        b.to_string()
                    } else {
                        format!("{}*{b}", co.lin)
                    });
                }
                if co.quad != 0 {
                    coeff_parts.push(if co.quad == 1 {
                        format!("{b}^2")
                    } else {
                        format!("{}*{b}^2", co.quad)
                    });
                }
                if coeff_parts.is_empty() {
                    continue;
                }
                let coeff = coeff_parts.join("+");
                let coeff =
                    if coeff_parts.len() > 1 { format!("({coeff})") } else { coeff };
                let term = match i {
                    0 => coeff,
                    1 => format!("{coeff}*t"),
                    _ => format!("{coeff}*t^{i}"),
                };
                terms.push(term);
            }
            format!("{} has no root", terms.join(" + "))
        })
        .collect()
}

/// Template listing (used for `reps` over infinite fields).
pub fn templates(char_class: CharClass, kind: AlgKind) -> Vec<FamilyInfo> {
    families(char_class, kind)
        .iter()
        .map(|fam| {
            let left = render_template(&fam.left, fam);
            let (msc, dimsc) = match &fam.right {
                None => (Some(left), None),
                Some(r) => (None, Some([left, render_template(r, fam)])),
            };
            FamilyInfo {
                family: fam.id,
                char_class: fam.char_class,
                kind: fam.kind,
                params: fam
                    .params
                    .iter()
                    .map(|p| {
                        if p.nonzero {
                            format!("{} != 0", p.name)
                        } else {
                            p.name.to_string()
                        }
                    })
                    .collect(),
                msc,
                dimsc,
                side_conditions: render_side(fam),
                symbolic: true,
            }
        })
        .collect()
}

// ---------------------------------------------------------------- aut shapes

/// Parametric automorphism-group membership for the associative families.
#[derive(Debug, Clone, Copy)]
pub struct AutShape {
    pub family: &'static str,
    kind: ShapeKind,
}

#[derive(Debug, Clone, Copy)]
enum ShapeKind {
    /// {(x 0 / z x^2) : x != 0}
    XZXSquare,
    /// {(1 0 / 0 t) : t != 0}
    DiagT,
    /// {(1 0 / z t) : t != 0}
    LowerZT,
    /// {(1 0 / 0 t) : t != 0} when the parameter is 0, else {diag(1, +-1)}
    DiagTOrPmOne,
    /// {(x 0 / z 1) : x != 0, z^2 = b1 (x+1)^2}
    SquareAffineZ,
    /// {(1 0 / z 1) : z^2 = z}
    UnipotentZ,
}

/// The automorphism-group shape of an associative catalog family.
pub fn aut_shape(family_id: &str) -> Result<AutShape> {
    let kind = match family_id {
        "As13^1" | "As12,2^1" | "As13,3^1" => ShapeKind::XZXSquare,
        "As3^2" | "As3,2^5" | "As3,3^2" => ShapeKind::DiagT,
        "As3^3" | "As3^4" | "As6,2^3" | "As3,2^6" | "As3,3^3" | "As3,3^4" => ShapeKind::LowerZT,
        "As3^5" | "As3,3^5" => ShapeKind::DiagTOrPmOne,
        "As11,2^2" => ShapeKind::SquareAffineZ,
        "As4,2^4" => ShapeKind::UnipotentZ,
        _ => return Err(Error::UnknownFamily(family_id.to_string())),
    };
    let family = family(family_id)?.id;
    Ok(AutShape { family, kind })
}

impl AutShape {
    /// Membership predicate on an invertible matrix, given the family
    /// parameters.
    pub fn member(&self, ctx: &FieldCtx, params: &[Elem], g: &Gl2) -> Result<bool> {
        let e = g.mat().entries();
        let (x, y, z, t) = (&e[0], &e[1], &e[2], &e[3]);
        let one = ctx.one();
        if !y.is_zero() {
            return Ok(false);
        }
        Ok(match self.kind {
            ShapeKind::XZXSquare => *t == ctx.mul(x, x)?,
            ShapeKind::DiagT => *x == one && z.is_zero(),
            ShapeKind::LowerZT => *x == one,
            ShapeKind::DiagTOrPmOne => {
                if params[0].is_zero() {
                    *x == one && z.is_zero()
                } else {
                    *x == one && z.is_zero() && ctx.mul(t, t)? == one
                }
            }
            ShapeKind::SquareAffineZ => {
                let xp1 = ctx.add(x, &one)?;
                *t == one
                    && ctx.mul(z, z)? == ctx.mul(&params[0], &ctx.mul(&xp1, &xp1)?)?
            }
            ShapeKind::UnipotentZ => *x == one && *t == one && ctx.mul(z, z)? == *z,
        })
    }

    /// Group order over GF(q).
    pub fn order(&self, params: &[Elem], q: u64) -> u64 {
        match self.kind {
            ShapeKind::XZXSquare | ShapeKind::LowerZT => q * (q - 1),
            ShapeKind::DiagT | ShapeKind::SquareAffineZ => q - 1,
            ShapeKind::DiagTOrPmOne => {
                if params[0].is_zero() {
                    q - 1
                } else {
                    2
                }
            }
            ShapeKind::UnipotentZ => 2,
        }
    }
}
