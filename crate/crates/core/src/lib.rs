//! Exact classification toolkit for two-dimensional algebras and dialgebras.
//!
//! A bilinear product on a 2-dimensional space over a field is captured by a
//! 2x4 matrix of structure constants ([`Msc`]); a dialgebra by an ordered pair
//! of them ([`DiMsc`]). This crate provides exact arithmetic over Q, GF(p) and
//! small GF(p^n) ([`field`]), the Kronecker-product machinery for products,
//! associativity and basis changes ([`msc`]), the expanded scalar axiom
//! systems kept as an independent cross-check ([`axioms`]), machine-readable
//! classification tables ([`catalog`]), brute-force isomorphism and
//! automorphism search over finite fields ([`search`]), and an exhaustive
//! census engine that verifies completeness and disjointness of the tables
//! ([`census`]).

pub mod axioms;
pub mod catalog;
pub mod census;
pub mod dialgebra;
pub mod doc;
pub mod field;
pub mod msc;
pub mod search;

pub use dialgebra::DiMsc;
pub use field::{Elem, FieldCtx, FieldKind};
pub use msc::{Gl2, Mat2, Msc, Vec2, Vec4};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid field: {0}")]
    Field(String),
    #[error("field context mismatch")]
    CtxMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("not {0} (axiom check failed)")]
    AxiomFailed(&'static str),
    #[error("CLASSIFICATION-GAP: {0} satisfies the axioms but matches no catalog class")]
    ClassificationGap(String),
    #[error("unknown family id: {0}")]
    UnknownFamily(String),
    #[error("inadmissible parameters for family {0}")]
    Inadmissible(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
