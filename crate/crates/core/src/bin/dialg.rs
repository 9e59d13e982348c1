//! Command-line interface: associativity/diassociativity checks,
//! classification, automorphism groups, isomorphism witnesses, censuses,
//! and catalog listings.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input error,
//! 3 budget/unsupported, 4 classification gap.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dialg::axioms::gse_residuals;
use dialg::catalog::{self, AlgKind, CharClass, Rep};
use dialg::census::{self, LabelOut};
use dialg::doc::{parse_algebra, AlgebraDoc};
use dialg::field::FieldCtx;
use dialg::msc::Gl2;
use dialg::{search, Error};

#[derive(Parser)]
#[command(name = "dialg", version, about = "two-dimensional algebra and dialgebra classification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusKind {
    Assoc,
    Dia,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepsKind {
    General,
    Assoc,
    Dia,
}

#[derive(Subcommand)]
enum Cmd {
    /// Associativity verdict plus the failing scalar equation indices.
    CheckAssoc { file: PathBuf },
    /// The five per-axiom diassociativity verdicts.
    CheckDia { file: PathBuf },
    /// Classify against the catalog (finite fields; over Q, axiom verdicts
    /// plus an exact template match when one exists).
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Automorphism group: exact order, plus the elements (listing capped).
    Aut {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Isomorphism witness between two inputs, or "not isomorphic".
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exhaustive census over a small finite field, reconciled against the
    /// catalog.
    Census {
        #[arg(long)]
        field: String,
        #[arg(long, value_enum)]
        kind: CensusKind,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Catalog representatives over a field (symbolic templates over Q).
    Reps {
        #[arg(long)]
        field: String,
        #[arg(long, value_enum)]
        kind: RepsKind,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_GAP: u8 = 4;

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Field(_) | Error::CtxMismatch | Error::DivisionByZero
        | Error::UnknownFamily(_) | Error::Inadmissible(_) => EXIT_INPUT,
        Error::Unsupported(_) | Error::Budget(_) => EXIT_BUDGET,
        Error::ClassificationGap(_) => EXIT_GAP,
        Error::AxiomFailed(_) => EXIT_NEGATIVE,
    }
}

fn load(path: &PathBuf) -> Result<AlgebraDoc, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Field(format!("cannot read {}: {e}", path.display())))?;
    parse_algebra(&text)
}

fn gl2_rows(ctx: &FieldCtx, g: &Gl2) -> [Vec<String>; 2] {
    let e = g.mat().entries();
    [
        vec![ctx.literal(&e[0]), ctx.literal(&e[1])],
        vec![ctx.literal(&e[2]), ctx.literal(&e[3])],
    ]
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::CheckAssoc { file } => {
            let doc = load(&file)?;
            let Rep::Alg(a) = &doc.content else {
                return Err(Error::Field("check-assoc expects a single algebra".into()));
            };
            let res = gse_residuals(a);
            if res.is_zero() {
                println!("associative: true");
                Ok(0)
            } else {
                let failing: Vec<String> =
                    res.failing().iter().map(|i| i.to_string()).collect();
                println!("associative: false");
                println!("failing equations: {}", failing.join(","));
                Ok(EXIT_NEGATIVE)
            }
        }
        Cmd::CheckDia { file } => {
            let doc = load(&file)?;
            let Rep::Dia(d) = &doc.content else {
                return Err(Error::Field("check-dia expects a dialgebra".into()));
            };
            let mut all = true;
            for r in d.residuals() {
                let ok = r.is_zero();
                all &= ok;
                println!("{}: {}", r.system, ok);
            }
            println!("diassociative: {all}");
            Ok(if all { 0 } else { EXIT_NEGATIVE })
        }
        Cmd::Classify { file, format } => {
            let doc = load(&file)?;
            if doc.ctx.order().is_some() {
                let label = search::classify(&doc.content)?;
                let out = LabelOut {
                    label: label.family.to_string(),
                    params: label.params.iter().map(|p| doc.ctx.literal(p)).collect(),
                    char_class: label.char_class,
                };
                match format {
                    Format::Json => println!("{}", serde_json::to_string(&out).unwrap()),
                    Format::Text => println!("class: {}", label.render(&doc.ctx)),
                }
                Ok(0)
            } else {
                classify_over_q(&doc, format)
            }
        }
        Cmd::Aut { file, format } => {
            let doc = load(&file)?;
            let group = search::automorphism_group(&doc.content)?;
            let order = group.len();
            let cap = 100;
            let ctx = &doc.ctx;
            match format {
                Format::Json => {
                    let elems: Vec<_> =
                        group.iter().take(cap).map(|g| gl2_rows(ctx, g)).collect();
                    let out = json!({
                        "order": order,
                        "elements": elems,
                        "truncated": order > cap,
                    });
                    println!("{out}");
                }
                Format::Text => {
                    println!("automorphism group order: {order}");
                    for g in group.iter().take(cap) {
                        let e = g.mat().entries();
                        println!(
                            "  ({} {} / {} {})",
                            ctx.literal(&e[0]),
                            ctx.literal(&e[1]),
                            ctx.literal(&e[2]),
                            ctx.literal(&e[3])
                        );
                    }
                    if order > cap {
                        println!("  ... ({} more)", order - cap);
                    }
                }
            }
            Ok(0)
        }
        Cmd::Iso { file1, file2, format } => {
            let d1 = load(&file1)?;
            let d2 = load(&file2)?;
            if d1.ctx != d2.ctx {
                return Err(Error::CtxMismatch);
            }
            let witness = match (&d1.content, &d2.content) {
                (Rep::Alg(a), Rep::Alg(b)) => search::isomorphic(a, b)?,
                (Rep::Dia(a), Rep::Dia(b)) => search::dia_isomorphic(a, b)?,
                _ => {
                    return Err(Error::Field(
                        "iso needs two algebras or two dialgebras".into(),
                    ))
                }
            };
            match witness {
                Some(g) => {
                    match format {
                        Format::Json => println!(
                            "{}",
                            json!({ "isomorphic": true, "witness": gl2_rows(&d1.ctx, &g) })
                        ),
                        Format::Text => {
                            let e = g.mat().entries();
                            println!(
                                "isomorphic via g = ({} {} / {} {})",
                                d1.ctx.literal(&e[0]),
                                d1.ctx.literal(&e[1]),
                                d1.ctx.literal(&e[2]),
                                d1.ctx.literal(&e[3])
                            );
                        }
                    }
                    Ok(0)
                }
                None => {
                    match format {
                        Format::Json => println!("{}", json!({ "isomorphic": false })),
                        Format::Text => println!("not isomorphic"),
                    }
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Cmd::Census { field, kind, jobs, format } => {
            let ctx = FieldCtx::parse(&field)?;
            let report = match kind {
                CensusKind::Assoc => census::census_associative(&ctx, jobs)?,
                CensusKind::Dia => census::census_diassociative(&ctx, jobs)?,
            };
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_table()),
            }
            if report.reconciliation.complete && report.reconciliation.disjoint {
                Ok(0)
            } else {
                Ok(EXIT_GAP)
            }
        }
        Cmd::Reps { field, kind, format } => {
            let ctx = FieldCtx::parse(&field)?;
            let kind = match kind {
                RepsKind::General => AlgKind::General,
                RepsKind::Assoc => AlgKind::Associative,
                RepsKind::Dia => AlgKind::Diassociative,
            };
            let class = CharClass::of(&ctx);
            if ctx.order().is_some() {
                let reps = catalog::representatives(class, kind, &ctx)?;
                let records: Vec<serde_json::Value> = reps
                    .iter()
                    .map(|(label, rep)| {
                        let mut v = json!({
                            "family": label.family,
                            "char_class": label.char_class,
                            "kind": kind,
                            "params": label.params.iter().map(|p| ctx.literal(p)).collect::<Vec<_>>(),
                            "side_conditions": side_strings(label.family),
                        });
                        let body = match rep {
                            Rep::Alg(a) => json!({ "msc": rows(&ctx, a) }),
                            Rep::Dia(d) => json!({
                                "dimsc": [rows(&ctx, d.left()), rows(&ctx, d.right())]
                            }),
                        };
                        v.as_object_mut().unwrap().extend(
                            body.as_object().unwrap().clone(),
                        );
                        v
                    })
                    .collect();
                match format {
                    Format::Json => {
                        println!("{}", serde_json::to_string_pretty(&records).unwrap())
                    }
                    Format::Text => {
                        for (label, _) in &reps {
                            println!("{}", label.render(&ctx));
                        }
                    }
                }
            } else {
                let infos = catalog::templates(class, kind);
                match format {
                    Format::Json => {
                        println!("{}", serde_json::to_string_pretty(&infos).unwrap())
                    }
                    Format::Text => {
                        for i in &infos {
                            println!("{} (symbolic; params: {})", i.family, i.params.join(", "));
                        }
                    }
                }
            }
            Ok(0)
        }
    }
}

fn rows(ctx: &FieldCtx, a: &dialg::Msc) -> [Vec<String>; 2] {
    let e = a.entries();
    [
        e[..4].iter().map(|x| ctx.literal(x)).collect(),
        e[4..].iter().map(|x| ctx.literal(x)).collect(),
    ]
}

fn side_strings(family: &str) -> Vec<String> {
    catalog::family(family)
        .ok()
        .map(|f| {
            catalog::templates(f.char_class, f.kind)
                .into_iter()
                .find(|i| i.family == family)
                .map(|i| i.side_conditions)
                .unwrap_or_default()
        })
        .unwrap_or_default()
}

/// Over Q there is no orbit search; report axiom verdicts plus an exact
/// template match after normalization, when the input literally equals a
/// catalog instance.
fn classify_over_q(doc: &AlgebraDoc, format: Format) -> Result<u8, Error> {
    let ctx = &doc.ctx;
    let (kind, ok) = match &doc.content {
        Rep::Alg(a) => (AlgKind::Associative, a.assoc_matrix_check()),
        Rep::Dia(d) => (AlgKind::Diassociative, d.dia_check()),
    };
    if !ok {
        match format {
            Format::Json => println!(
                "{}",
                json!({ "axioms": false, "kind": kind.name(), "match": null })
            ),
            Format::Text => println!("axioms: false ({})", kind.name()),
        }
        return Ok(EXIT_NEGATIVE);
    }
    let matched = exact_template_match(doc, kind)?;
    match format {
        Format::Json => {
            let m = matched.as_ref().map(|l| {
                json!({
                    "label": l.family,
                    "params": l.params.iter().map(|p| ctx.literal(p)).collect::<Vec<_>>(),
                    "char_class": l.char_class,
                })
            });
            println!("{}", json!({ "axioms": true, "kind": kind.name(), "match": m }));
        }
        Format::Text => {
            println!("axioms: true ({})", kind.name());
            match &matched {
                Some(l) => println!("exact template match: {}", l.render(ctx)),
                None => println!("exact template match: none"),
            }
        }
    }
    Ok(0)
}

/// Solve template == input for the parameters (templates are affine with
/// each parameter readable from a designated slot), then verify.
fn exact_template_match(
    doc: &AlgebraDoc,
    kind: AlgKind,
) -> Result<Option<catalog::CanonicalLabel>, Error> {
    let ctx = &doc.ctx;
    let zero_label = catalog::CanonicalLabel::zero(ctx);
    match &doc.content {
        Rep::Alg(a) if a.is_zero() => return Ok(Some(zero_label)),
        Rep::Dia(d) if d.is_zero() => return Ok(Some(zero_label)),
        _ => {}
    }
    for fam in catalog::families(CharClass::Not23, kind) {
        if let Some(params) = fam.solve_params(ctx, &doc.content)? {
            if fam.admissible(ctx, &params)? {
                // the label carries the normalized parameters
                let params = fam.normalize_params(ctx, &params)?;
                return Ok(Some(catalog::CanonicalLabel {
                    family: fam.id,
                    params,
                    char_class: CharClass::Not23,
                }));
            }
        }
    }
    Ok(None)
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. `dialg census ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
