//! Text form of proof terms.
//!
//! ```text
//! prf := (pthm name) | (bound trm) | (appp prf prf) | (absp trm prf)
//!      | (appt prf trm) | (convp trm prf prf)
//! trm := v<digits> | name | (app trm trm)
//! ```

use std::fmt::Write;

use super::{GPrf, GTrm};
use crate::certs::text::read_var;
use crate::sexp::{self, Sexp, SyntaxError};

pub fn serialize_gtrm(t: &GTrm) -> String {
    let mut out = String::new();
    write_trm(&mut out, t);
    out
}

pub fn serialize_gprf(p: &GPrf) -> String {
    let mut out = String::new();
    write_prf(&mut out, p);
    out
}

pub fn parse_gtrm(text: &str) -> Result<GTrm, SyntaxError> {
    read_trm(&sexp::parse(text)?)
}

pub fn parse_gprf(text: &str) -> Result<GPrf, SyntaxError> {
    read_prf(&sexp::parse(text)?)
}

fn write_trm(out: &mut String, t: &GTrm) {
    match t {
        GTrm::Const(c) => out.push_str(c.as_ref()),
        GTrm::Var(v) => {
            let _ = write!(out, "{v}");
        }
        GTrm::App(f, a) => {
            out.push_str("(app ");
            write_trm(out, f);
            out.push(' ');
            write_trm(out, a);
            out.push(')');
        }
    }
}

fn write_prf(out: &mut String, p: &GPrf) {
    match p {
        GPrf::PThm(c) => {
            let _ = write!(out, "(pthm {c})");
        }
        GPrf::Bound(t) => {
            out.push_str("(bound ");
            write_trm(out, t);
            out.push(')');
        }
        GPrf::AppP(f, a) => {
            out.push_str("(appp ");
            write_prf(out, f);
            out.push(' ');
            write_prf(out, a);
            out.push(')');
        }
        GPrf::AbsP(t, q) => {
            out.push_str("(absp ");
            write_trm(out, t);
            out.push(' ');
            write_prf(out, q);
            out.push(')');
        }
        GPrf::Appt(q, t) => {
            out.push_str("(appt ");
            write_prf(out, q);
            out.push(' ');
            write_trm(out, t);
            out.push(')');
        }
        GPrf::ConvP(t, c, q) => {
            out.push_str("(convp ");
            write_trm(out, t);
            out.push(' ');
            write_prf(out, c);
            out.push(' ');
            write_prf(out, q);
            out.push(')');
        }
    }
}

fn is_var_token(s: &str) -> bool {
    s.strip_prefix('v')
        .is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
}

fn args<'a>(e: &'a Sexp, head: &str, args: &'a [Sexp], n: usize) -> Result<&'a [Sexp], SyntaxError> {
    if args.len() == n {
        Ok(args)
    } else {
        Err(e.error(format!("{head} takes {n} arguments, got {}", args.len())))
    }
}

fn read_trm(e: &Sexp) -> Result<GTrm, SyntaxError> {
    if let Some(s) = e.as_sym() {
        return if is_var_token(s) {
            read_var(e).map(GTrm::Var)
        } else {
            Ok(GTrm::Const(s.to_owned().into()))
        };
    }
    match e.as_call() {
        Some(("app", rest)) => {
            let a = args(e, "app", rest, 2)?;
            Ok(GTrm::app(read_trm(&a[0])?, read_trm(&a[1])?))
        }
        _ => Err(e.error("expected a term")),
    }
}

fn read_name(e: &Sexp) -> Result<String, SyntaxError> {
    match e.as_sym() {
        Some(s) if !is_var_token(s) => Ok(s.to_owned()),
        _ => Err(e.error("expected a constant name")),
    }
}

fn read_prf(e: &Sexp) -> Result<GPrf, SyntaxError> {
    let (head, rest) = e.as_call().ok_or_else(|| e.error("expected a proof term"))?;
    match head {
        "pthm" => Ok(GPrf::PThm(read_name(&args(e, head, rest, 1)?[0])?)),
        "bound" => Ok(GPrf::Bound(read_trm(&args(e, head, rest, 1)?[0])?)),
        "appp" => {
            let a = args(e, head, rest, 2)?;
            Ok(GPrf::app(read_prf(&a[0])?, read_prf(&a[1])?))
        }
        "absp" => {
            let a = args(e, head, rest, 2)?;
            Ok(GPrf::abs(read_trm(&a[0])?, read_prf(&a[1])?))
        }
        "appt" => {
            let a = args(e, head, rest, 2)?;
            Ok(GPrf::appt(read_prf(&a[0])?, read_trm(&a[1])?))
        }
        "convp" => {
            let a = args(e, head, rest, 3)?;
            Ok(GPrf::conv(read_trm(&a[0])?, read_prf(&a[1])?, read_prf(&a[2])?))
        }
        _ => Err(e.error(format!("unknown proof constructor {head}"))),
    }
}
