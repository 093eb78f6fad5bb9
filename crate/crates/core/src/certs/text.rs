//! S-expression text format for certificates.
//!
//! ```text
//! cert := (lift aprf) | (conje fm fm cert) | (disje fm fm cert cert) | (conv fm cprf cert)
//! aprf := (assm lit) | (refl var) | (trans aprf aprf) | (antisym aprf aprf)
//!       | (eqe1 lit) | (eqe2 lit) | (contr lit aprf)
//! cprf := lessle | nlessle | nle | nless | allconv | (atom cprf) | (arg cprf)
//!       | (binop cprf cprf) | (then cprf cprf) | negatom | negneg | negand | negor
//!       | andorl | andorr
//! fm   := (atom lit) | (and fm fm) | (or fm fm) | (neg fm)
//! lit  := (pol kind var var)    pol := + | -    kind := le | lt | eq    var := v<digits>
//! ```

use std::fmt::Write;

use super::{CertProof, ConvProof, PropProof};
use crate::lang::{Formula, Literal, OrderAtom, VarId};
use crate::sexp::{self, Sexp};

pub use crate::sexp::SyntaxError;

pub fn serialize_cert(p: &PropProof) -> String {
    let mut out = String::new();
    write_cert(&mut out, p);
    out
}

pub fn serialize_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_fm(&mut out, f);
    out
}

pub fn serialize_conv(c: &ConvProof) -> String {
    let mut out = String::new();
    write_conv(&mut out, c);
    out
}

pub fn parse_cert(text: &str) -> Result<PropProof, SyntaxError> {
    read_cert(&sexp::parse(text)?)
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    read_fm(&sexp::parse(text)?)
}

pub fn parse_conv(text: &str) -> Result<ConvProof, SyntaxError> {
    read_conv(&sexp::parse(text)?)
}

pub(crate) fn write_lit(out: &mut String, l: Literal) {
    let (x, y) = l.vars();
    let pol = if l.pos { '+' } else { '-' };
    let _ = write!(out, "({pol} {} {x} {y})", l.atom.kind_name());
}

pub(crate) fn write_fm(out: &mut String, f: &Formula) {
    match f {
        Formula::Atom(l) => {
            out.push_str("(atom ");
            write_lit(out, *l);
            out.push(')');
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            out.push_str(if matches!(f, Formula::And(..)) { "(and " } else { "(or " });
            write_fm(out, a);
            out.push(' ');
            write_fm(out, b);
            out.push(')');
        }
        Formula::Neg(a) => {
            out.push_str("(neg ");
            write_fm(out, a);
            out.push(')');
        }
    }
}

fn write_aprf(out: &mut String, p: &CertProof) {
    match p {
        CertProof::AssmP(l) | CertProof::EQE1P(l) | CertProof::EQE2P(l) => {
            out.push_str(match p {
                CertProof::AssmP(_) => "(assm ",
                CertProof::EQE1P(_) => "(eqe1 ",
                _ => "(eqe2 ",
            });
            write_lit(out, *l);
            out.push(')');
        }
        CertProof::ReflP(x) => {
            let _ = write!(out, "(refl {x})");
        }
        CertProof::TransP(a, b) | CertProof::AntisymP(a, b) => {
            out.push_str(if matches!(p, CertProof::TransP(..)) { "(trans " } else { "(antisym " });
            write_aprf(out, a);
            out.push(' ');
            write_aprf(out, b);
            out.push(')');
        }
        CertProof::ContrP(l, q) => {
            out.push_str("(contr ");
            write_lit(out, *l);
            out.push(' ');
            write_aprf(out, q);
            out.push(')');
        }
    }
}

pub(crate) fn write_conv(out: &mut String, c: &ConvProof) {
    match c {
        ConvProof::AtomConv(p) | ConvProof::ArgConv(p) => {
            let _ = write!(out, "({} ", c.name());
            write_conv(out, p);
            out.push(')');
        }
        ConvProof::BinopConv(p, q) | ConvProof::ThenConv(p, q) => {
            let _ = write!(out, "({} ", c.name());
            write_conv(out, p);
            out.push(' ');
            write_conv(out, q);
            out.push(')');
        }
        _ => out.push_str(c.name()),
    }
}

fn write_cert(out: &mut String, p: &PropProof) {
    match p {
        PropProof::Lift(q) => {
            out.push_str("(lift ");
            write_aprf(out, q);
            out.push(')');
        }
        PropProof::ConjE(c, d, q) => {
            out.push_str("(conje ");
            write_fm(out, c);
            out.push(' ');
            write_fm(out, d);
            out.push(' ');
            write_cert(out, q);
            out.push(')');
        }
        PropProof::DisjE(c, d, q1, q2) => {
            out.push_str("(disje ");
            write_fm(out, c);
            out.push(' ');
            write_fm(out, d);
            out.push(' ');
            write_cert(out, q1);
            out.push(' ');
            write_cert(out, q2);
            out.push(')');
        }
        PropProof::ConvRule(f, cp, q) => {
            out.push_str("(conv ");
            write_fm(out, f);
            out.push(' ');
            write_conv(out, cp);
            out.push(' ');
            write_cert(out, q);
            out.push(')');
        }
    }
}

fn arity<'a>(e: &'a Sexp, head: &str, args: &'a [Sexp], n: usize) -> Result<&'a [Sexp], SyntaxError> {
    if args.len() == n {
        Ok(args)
    } else {
        Err(e.error(format!("{head} expects {n} arguments, got {}", args.len())))
    }
}

pub(crate) fn read_var(e: &Sexp) -> Result<VarId, SyntaxError> {
    e.as_sym()
        .and_then(|s| s.strip_prefix('v'))
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
        .and_then(|d| d.parse().ok())
        .map(VarId)
        .ok_or_else(|| e.error("expected a variable like v0"))
}

pub(crate) fn read_lit(e: &Sexp) -> Result<Literal, SyntaxError> {
    let items = match e {
        Sexp::List(items, _) if items.len() == 4 => items,
        _ => return Err(e.error("expected a literal (pol kind var var)")),
    };
    let pos = match items[0].as_sym() {
        Some("+") => true,
        Some("-") => false,
        _ => return Err(items[0].error("expected polarity + or -")),
    };
    let x = read_var(&items[2])?;
    let y = read_var(&items[3])?;
    let atom = match items[1].as_sym() {
        Some("le") => OrderAtom::Le(x, y),
        Some("lt") => OrderAtom::Lt(x, y),
        Some("eq") => OrderAtom::Eq(x, y),
        _ => return Err(items[1].error("expected kind le, lt or eq")),
    };
    Ok(Literal::new(pos, atom))
}

pub(crate) fn read_fm(e: &Sexp) -> Result<Formula, SyntaxError> {
    let (head, args) = e.as_call().ok_or_else(|| e.error("expected a formula"))?;
    match head {
        "atom" => Ok(Formula::Atom(read_lit(&arity(e, head, args, 1)?[0])?)),
        "and" | "or" => {
            let a = arity(e, head, args, 2)?;
            let (l, r) = (read_fm(&a[0])?, read_fm(&a[1])?);
            Ok(if head == "and" { Formula::and(l, r) } else { Formula::or(l, r) })
        }
        "neg" => Ok(Formula::neg(read_fm(&arity(e, head, args, 1)?[0])?)),
        _ => Err(e.error(format!("unknown formula constructor {head}"))),
    }
}

fn read_aprf(e: &Sexp) -> Result<CertProof, SyntaxError> {
    let (head, args) = e.as_call().ok_or_else(|| e.error("expected an atom proof"))?;
    match head {
        "assm" => Ok(CertProof::AssmP(read_lit(&arity(e, head, args, 1)?[0])?)),
        "eqe1" => Ok(CertProof::EQE1P(read_lit(&arity(e, head, args, 1)?[0])?)),
        "eqe2" => Ok(CertProof::EQE2P(read_lit(&arity(e, head, args, 1)?[0])?)),
        "refl" => Ok(CertProof::ReflP(read_var(&arity(e, head, args, 1)?[0])?)),
        "trans" | "antisym" => {
            let a = arity(e, head, args, 2)?;
            let (p, q) = (read_aprf(&a[0])?, read_aprf(&a[1])?);
            Ok(if head == "trans" { CertProof::trans(p, q) } else { CertProof::antisym(p, q) })
        }
        "contr" => {
            let a = arity(e, head, args, 2)?;
            Ok(CertProof::contr(read_lit(&a[0])?, read_aprf(&a[1])?))
        }
        _ => Err(e.error(format!("unknown atom proof rule {head}"))),
    }
}

pub(crate) fn read_conv(e: &Sexp) -> Result<ConvProof, SyntaxError> {
    if let Some(name) = e.as_sym() {
        return Ok(match name {
            "lessle" => ConvProof::LessLe,
            "nlessle" => ConvProof::NlessLe,
            "nle" => ConvProof::NleConv,
            "nless" => ConvProof::NlessConv,
            "allconv" => ConvProof::AllConv,
            "negatom" => ConvProof::NegAtomConv,
            "negneg" => ConvProof::NegNegConv,
            "negand" => ConvProof::NegAndConv,
            "negor" => ConvProof::NegOrConv,
            "andorl" => ConvProof::AndOrLConv,
            "andorr" => ConvProof::AndOrRConv,
            _ => return Err(e.error(format!("unknown conversion {name}"))),
        });
    }
    let (head, args) = e.as_call().ok_or_else(|| e.error("expected a conversion"))?;
    match head {
        "atom" => Ok(ConvProof::atom(read_conv(&arity(e, head, args, 1)?[0])?)),
        "arg" => Ok(ConvProof::arg(read_conv(&arity(e, head, args, 1)?[0])?)),
        "binop" | "then" => {
            let a = arity(e, head, args, 2)?;
            let (p, q) = (read_conv(&a[0])?, read_conv(&a[1])?);
            Ok(if head == "binop" {
                ConvProof::binop(p, q)
            } else {
                ConvProof::ThenConv(Box::new(p), Box::new(q))
            })
        }
        _ => Err(e.error(format!("unknown conversion combinator {head}"))),
    }
}

fn read_cert(e: &Sexp) -> Result<PropProof, SyntaxError> {
    let (head, args) = e.as_call().ok_or_else(|| e.error("expected a certificate"))?;
    match head {
        "lift" => Ok(PropProof::Lift(read_aprf(&arity(e, head, args, 1)?[0])?)),
        "conje" => {
            let a = arity(e, head, args, 3)?;
            Ok(PropProof::conj_e(read_fm(&a[0])?, read_fm(&a[1])?, read_cert(&a[2])?))
        }
        "disje" => {
            let a = arity(e, head, args, 4)?;
            Ok(PropProof::disj_e(
                read_fm(&a[0])?,
                read_fm(&a[1])?,
                read_cert(&a[2])?,
                read_cert(&a[3])?,
            ))
        }
        "conv" => {
            let a = arity(e, head, args, 3)?;
            Ok(PropProof::conv(read_fm(&a[0])?, read_conv(&a[1])?, read_cert(&a[2])?))
        }
        _ => Err(e.error(format!("unknown certificate rule {head}"))),
    }
}
