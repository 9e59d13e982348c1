//! Parser for algebra description files and the matching renderer.
//!
//! ```text
//! # an algebra in matrix form
//! field GF(5)
//! msc 0 0 0 0 | 1 0 0 0
//!
//! # the same product as a multiplication table
//! field GF(5)
//! table
//! e1*e1 = e2
//!
//! # a dialgebra (two products)
//! field GF(2)
//! dialgebra
//! left  0 1 1 0 | 1 0 0 1
//! right 0 1 1 0 | 1 0 0 1
//! ```
//!
//! Table statements accept linear combinations on the right-hand side
//! (`e1*e2 = 1/2 e1 + 3 e2`, or `0`); unstated products default to zero and
//! duplicate statements are an error. Dialgebra tables prefix each
//! statement with `left` or `right`.

use crate::catalog::Rep;
use crate::dialgebra::DiMsc;
use crate::field::{Elem, FieldCtx};
use crate::msc::Msc;
use crate::{Error, Result};

/// A parsed algebra document: the field plus one or two MSC blocks.
#[derive(Debug, Clone)]
pub struct AlgebraDoc {
    pub ctx: FieldCtx,
    pub content: Rep,
}

#[derive(Debug)]
struct Tok {
    col: usize, // 1-based
    s: String,
}

fn tokenize(line: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let bytes: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_whitespace() {
            i += 1;
            continue;
        }
        if bytes[i] == '#' {
            break;
        }
        let start = i;
        if bytes[i] == '[' {
            while i < bytes.len() && bytes[i] != ']' {
                i += 1;
            }
            if i < bytes.len() {
                i += 1; // include ']'
            }
        } else if bytes[i] == '|' || bytes[i] == '+' {
            i += 1;
        } else {
            while i < bytes.len()
                && !bytes[i].is_whitespace()
                && bytes[i] != '|'
                && bytes[i] != '#'
                && bytes[i] != '+'
            {
                i += 1;
            }
        }
        out.push(Tok { col: start + 1, s: bytes[start..i].iter().collect() });
    }
    out
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

struct Lines<'a> {
    rows: Vec<(usize, Vec<Tok>)>,
    text: std::marker::PhantomData<&'a str>,
}

fn meaningful_lines(text: &str) -> Lines<'_> {
    let rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokenize(l)))
        .filter(|(_, toks)| !toks.is_empty())
        .collect();
    Lines { rows, text: std::marker::PhantomData }
}

fn parse_row(
    ctx: &FieldCtx,
    lineno: usize,
    toks: &[Tok],
) -> Result<[Elem; 8]> {
    let mut entries: Vec<Elem> = Vec::new();
    let mut seen_bar = false;
    for t in toks {
        if t.s == "|" {
            if seen_bar {
                return Err(perr(lineno, t.col, "more than one `|` in a matrix row"));
            }
            if entries.len() != 4 {
                return Err(perr(
                    lineno,
                    t.col,
                    format!("expected 4 entries before `|`, found {}", entries.len()),
                ));
            }
            seen_bar = true;
            continue;
        }
        let e = ctx
            .parse_literal(&t.s)
            .map_err(|e| perr(lineno, t.col, e.to_string()))?;
        entries.push(e);
    }
    if !seen_bar || entries.len() != 8 {
        let col = toks.last().map_or(1, |t| t.col);
        return Err(perr(
            lineno,
            col,
            "matrix form needs 8 entries as `a1 a2 a3 a4 | b1 b2 b3 b4`",
        ));
    }
    Ok(entries.try_into().unwrap())
}

/// Parse `eI*eJ` into the MSC column index.
fn parse_product_lhs(lineno: usize, t: &Tok) -> Result<usize> {
    let s = t.s.replace(' ', "");
    let bad = || perr(lineno, t.col, format!("expected a product like e1*e2, found `{}`", t.s));
    let (l, r) = s.split_once('*').ok_or_else(bad)?;
    let idx = |side: &str| -> Result<usize> {
        match side {
            "e1" => Ok(0),
            "e2" => Ok(1),
            _ => Err(bad()),
        }
    };
    Ok(idx(l)? * 2 + idx(r)?)
}

/// Parse the right-hand side of a table statement into (e1-coeff, e2-coeff).
fn parse_rhs(ctx: &FieldCtx, lineno: usize, toks: &[Tok]) -> Result<(Elem, Elem)> {
    let mut c1 = ctx.zero();
    let mut c2 = ctx.zero();
    if toks.len() == 1 && toks[0].s == "0" {
        return Ok((c1, c2));
    }
    let mut pending: Option<Elem> = None; // coefficient awaiting its basis vector
    let mut negate = false;
    let mut expect_term = true;
    for t in toks {
        let s = t.s.as_str();
        if s == "+" || s == "-" {
            if expect_term || pending.is_some() {
                return Err(perr(lineno, t.col, "misplaced operator"));
            }
            negate = s == "-";
            expect_term = true;
            continue;
        }
        // a term token: basis vector, possibly with attached minus, or a coefficient
        let (neg_attached, body) = match s.strip_prefix('-') {
            Some(rest) if rest.starts_with('e') => (true, rest),
            _ => (false, s),
        };
        if body == "e1" || body == "e2" {
            let mut coeff = pending.take().unwrap_or_else(|| ctx.one());
            if negate || neg_attached {
                coeff = ctx.neg(&coeff).map_err(|e| perr(lineno, t.col, e.to_string()))?;
            }
            let slot = if body == "e1" { &mut c1 } else { &mut c2 };
            *slot = ctx.add(slot, &coeff).map_err(|e| perr(lineno, t.col, e.to_string()))?;
            negate = false;
            expect_term = false;
        } else {
            if pending.is_some() {
                return Err(perr(lineno, t.col, "expected e1 or e2 after coefficient"));
            }
            let lit = ctx
                .parse_literal(s)
                .map_err(|e| perr(lineno, t.col, e.to_string()))?;
            pending = Some(lit);
            expect_term = false;
        }
    }
    if let Some(_) = pending {
        let col = toks.last().map_or(1, |t| t.col);
        return Err(perr(lineno, col, "dangling coefficient without e1 or e2"));
    }
    if expect_term {
        let col = toks.last().map_or(1, |t| t.col);
        return Err(perr(lineno, col, "empty term"));
    }
    Ok((c1, c2))
}

struct TableAcc {
    entries: [Option<(Elem, Elem)>; 4],
}

impl TableAcc {
    fn new() -> TableAcc {
        TableAcc { entries: [None, None, None, None] }
    }
    fn set(&mut self, lineno: usize, col: usize, idx: usize, v: (Elem, Elem)) -> Result<()> {
        if self.entries[idx].is_some() {
            return Err(perr(lineno, col, "product stated twice"));
        }
        self.entries[idx] = Some(v);
        Ok(())
    }
    fn into_msc(self, ctx: &FieldCtx) -> Msc {
        let mut e: Vec<Elem> = vec![ctx.zero(); 8];
        for (i, slot) in self.entries.into_iter().enumerate() {
            if let Some((c1, c2)) = slot {
                e[i] = c1;
                e[4 + i] = c2;
            }
        }
        Msc::new(ctx, e.try_into().unwrap())
    }
}

/// Parse an algebra description into the field context and its content.
pub fn parse_algebra(text: &str) -> Result<AlgebraDoc> {
    let lines = meaningful_lines(text);
    let mut it = lines.rows.into_iter().peekable();

    let (lineno, toks) = it
        .next()
        .ok_or_else(|| perr(1, 1, "empty document; expected `field <descriptor>`"))?;
    if toks[0].s != "field" {
        return Err(perr(lineno, toks[0].col, "expected `field <descriptor>`"));
    }
    if toks.len() != 2 {
        return Err(perr(lineno, toks[0].col, "field line is `field <descriptor>`"));
    }
    let ctx = FieldCtx::parse(&toks[1].s)
        .map_err(|e| perr(lineno, toks[1].col, e.to_string()))?;

    let mut dialgebra = false;
    if let Some((_, toks)) = it.peek() {
        match toks[0].s.as_str() {
            "algebra" => {
                it.next();
            }
            "dialgebra" => {
                dialgebra = true;
                it.next();
            }
            _ => {}
        }
    }

    let (lineno, toks) = it
        .next()
        .ok_or_else(|| perr(lineno, 1, "missing body (msc/table/left/right)"))?;
    let head = toks[0].s.as_str();

    if !dialgebra {
        match head {
            "msc" => {
                let entries = parse_row(&ctx, lineno, &toks[1..])?;
                if let Some((l, t)) = it.next() {
                    return Err(perr(l, t[0].col, "unexpected content after msc row"));
                }
                Ok(AlgebraDoc { ctx: ctx.clone(), content: Rep::Alg(Msc::new(&ctx, entries)) })
            }
            "table" => {
                let mut acc = TableAcc::new();
                for (l, toks) in it {
                    let eq = toks
                        .iter()
                        .position(|t| t.s == "=")
                        .ok_or_else(|| perr(l, toks[0].col, "table statement needs `=`"))?;
                    if eq != 1 {
                        return Err(perr(l, toks[0].col, "expected `eI*eJ = ...`"));
                    }
                    let idx = parse_product_lhs(l, &toks[0])?;
                    let rhs = parse_rhs(&ctx, l, &toks[eq + 1..])?;
                    acc.set(l, toks[0].col, idx, rhs)?;
                }
                Ok(AlgebraDoc { ctx: ctx.clone(), content: Rep::Alg(acc.into_msc(&ctx)) })
            }
            _ => Err(perr(lineno, toks[0].col, "algebra body starts with `msc` or `table`")),
        }
    } else {
        match head {
            "left" | "right" => {
                let mut left: Option<[Elem; 8]> = None;
                let mut right: Option<[Elem; 8]> = None;
                let mut handle = |l: usize, toks: &[Tok]| -> Result<()> {
                    let slot = match toks[0].s.as_str() {
                        "left" => &mut left,
                        "right" => &mut right,
                        _ => return Err(perr(l, toks[0].col, "expected `left` or `right` row")),
                    };
                    if slot.is_some() {
                        return Err(perr(l, toks[0].col, "duplicate matrix row"));
                    }
                    *slot = Some(parse_row(&ctx, l, &toks[1..])?);
                    Ok(())
                };
                handle(lineno, &toks)?;
                for (l, toks) in it {
                    handle(l, &toks)?;
                }
                match (left, right) {
                    (Some(l), Some(r)) => {
                        let d = DiMsc::new(Msc::new(&ctx, l), Msc::new(&ctx, r))?;
                        Ok(AlgebraDoc { ctx, content: Rep::Dia(d) })
                    }
                    _ => Err(perr(lineno, 1, "dialgebra needs both `left` and `right` rows")),
                }
            }
            "table" => {
                let mut laccum = TableAcc::new();
                let mut raccum = TableAcc::new();
                for (l, toks) in it {
                    if toks.len() < 2 {
                        return Err(perr(l, toks[0].col, "expected `left|right eI*eJ = ...`"));
                    }
                    let acc = match toks[0].s.as_str() {
                        "left" => &mut laccum,
                        "right" => &mut raccum,
                        _ => {
                            return Err(perr(
                                l,
                                toks[0].col,
                                "dialgebra table statements start with `left` or `right`",
                            ))
                        }
                    };
                    let eq = toks
                        .iter()
                        .position(|t| t.s == "=")
                        .ok_or_else(|| perr(l, toks[0].col, "table statement needs `=`"))?;
                    if eq != 2 {
                        return Err(perr(l, toks[0].col, "expected `left eI*eJ = ...`"));
                    }
                    let idx = parse_product_lhs(l, &toks[1])?;
                    let rhs = parse_rhs(&ctx, l, &toks[eq + 1..])?;
                    acc.set(l, toks[1].col, idx, rhs)?;
                }
                let d = DiMsc::new(laccum.into_msc(&ctx), raccum.into_msc(&ctx))?;
                Ok(AlgebraDoc { ctx, content: Rep::Dia(d) })
            }
            _ => Err(perr(
                lineno,
                toks[0].col,
                "dialgebra body starts with `left`/`right` rows or `table`",
            )),
        }
    }
}

fn render_row(ctx: &FieldCtx, a: &Msc) -> String {
    let e = a.entries();
    let lit: Vec<String> = e.iter().map(|x| ctx.literal(x)).collect();
    format!("{} | {}", lit[..4].join(" "), lit[4..].join(" "))
}

/// Render a document in matrix form; parse(render(parse(x))) == parse(x).
pub fn render_doc(doc: &AlgebraDoc) -> String {
    let field = doc.ctx.descriptor();
    match &doc.content {
        Rep::Alg(a) => format!("field {field}\nmsc {}\n", render_row(&doc.ctx, a)),
        Rep::Dia(d) => format!(
            "field {field}\ndialgebra\nleft {}\nright {}\n",
            render_row(&doc.ctx, d.left()),
            render_row(&doc.ctx, d.right())
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_msc_form() {
        let doc = parse_algebra("field GF(5)\nmsc 0 0 0 0 | 1 0 0 0\n").unwrap();
        let Rep::Alg(a) = &doc.content else { panic!() };
        assert_eq!(*a, Msc::from_ints(&doc.ctx, [0, 0, 0, 0, 1, 0, 0, 0]));
    }

    #[test]
    fn parse_table_form() {
        let doc = parse_algebra("field Q\ntable\ne1*e1 = e2\n").unwrap();
        let Rep::Alg(a) = &doc.content else { panic!() };
        assert_eq!(*a, Msc::from_ints(&doc.ctx, [0, 0, 0, 0, 1, 0, 0, 0]));
        // linear combination with rational coefficients
        let doc =
            parse_algebra("field Q\ntable\ne1*e2 = 1/2 e1 + 3 e2\ne2*e2 = -e1\n").unwrap();
        let Rep::Alg(a) = &doc.content else { panic!() };
        let c = &doc.ctx;
        let expect = Msc::new(
            c,
            [
                c.zero(),
                c.parse_literal("1/2").unwrap(),
                c.zero(),
                c.from_int(-1),
                c.zero(),
                c.from_int(3),
                c.zero(),
                c.zero(),
            ],
        );
        assert_eq!(*a, expect);
    }

    #[test]
    fn table_matches_msc_form() {
        let t = parse_algebra("field GF(3)\ntable\ne1*e1 = e1 + 2 e2\ne2*e1 = e2\n").unwrap();
        let m = parse_algebra("field GF(3)\nmsc 1 0 0 0 | 2 0 1 0\n").unwrap();
        let (Rep::Alg(ta), Rep::Alg(ma)) = (&t.content, &m.content) else { panic!() };
        assert_eq!(ta, ma);
    }

    #[test]
    fn parse_dialgebra() {
        let doc = parse_algebra(
            "field GF(2)\ndialgebra\nleft 0 1 1 0 | 1 0 0 1\nright 0 1 1 0 | 1 0 0 1\n",
        )
        .unwrap();
        let Rep::Dia(d) = &doc.content else { panic!() };
        assert_eq!(*d.left(), *d.right());
        assert!(d.dia_check());
        // table form, either order
        let doc2 = parse_algebra(
            "field GF(2)\ndialgebra\ntable\nright e1*e1 = e2\nleft e1*e1 = e2\n",
        )
        .unwrap();
        let Rep::Dia(d2) = &doc2.content else { panic!() };
        assert_eq!(d2.left(), d2.right());
    }

    #[test]
    fn duplicate_product_is_an_error() {
        let r = parse_algebra("field Q\ntable\ne1*e1 = e2\ne1*e1 = e1\n");
        assert!(matches!(r, Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn errors_carry_position() {
        let r = parse_algebra("field GF(5)\nmsc 0 0 0 0 | 1 0 0\n");
        assert!(matches!(r, Err(Error::Parse { line: 2, .. })));
        let r = parse_algebra("field GF(6)\nmsc 0 0 0 0 | 1 0 0 0\n");
        assert!(matches!(r, Err(Error::Parse { line: 1, .. })));
        let r = parse_algebra("feld GF(5)");
        assert!(matches!(r, Err(Error::Parse { line: 1, col: 1, .. })));
    }

    #[test]
    fn extension_field_literals() {
        let doc = parse_algebra("field GF(4)\nmsc [1,1] 0 0 0 | 0 [0,1] 0 0\n").unwrap();
        let Rep::Alg(a) = &doc.content else { panic!() };
        assert_eq!(a.entries()[0], doc.ctx.parse_literal("[1,1]").unwrap());
    }

    #[test]
    fn roundtrip() {
        for text in [
            "field GF(5)\nmsc 0 0 0 0 | 1 0 0 0\n",
            "field Q\nmsc 1/2 0 0 -3 | 0 1/2 1/2 0\n",
            "field GF(4)\ndialgebra\nleft [1,0] 0 0 0 | 0 0 [1,0] 0\nright [1,0] 0 0 0 | [0,1] 0 0 0\n",
        ] {
            let doc = parse_algebra(text).unwrap();
            let rendered = render_doc(&doc);
            let doc2 = parse_algebra(&rendered).unwrap();
            assert_eq!(doc.ctx, doc2.ctx);
            match (&doc.content, &doc2.content) {
                (Rep::Alg(a), Rep::Alg(b)) => assert_eq!(a, b),
                (Rep::Dia(a), Rep::Dia(b)) => assert_eq!(a, b),
                _ => panic!("kind changed in roundtrip"),
            }
        }
    }
}
