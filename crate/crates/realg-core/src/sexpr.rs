//! S-expression syntax for λ-terms, formulas and L-subjects.
//!
//! ```text
//! (lam x (app x x))      (par 2)
//! (forall X (arr X (neg X)))
//! calculus par
//! (var x X) (covar a X) (hint (par 1))
//! (cmd x (mut y (cmd y a)))
//! ```

use lexpr::Value;

use crate::calculi::syntax::{Command, Context, Subject, Term};
use crate::calculi::typing::{Judgment, TypedSequent};
use crate::calculi::Polarity;
use crate::encodings::{Formula, LambdaTerm};
use crate::text::ParseError;

fn lexpr_error(e: lexpr::parse::Error) -> ParseError {
    match e.location() {
        Some(loc) => ParseError::new(loc.line(), loc.column() + 1, e.to_string()),
        None => ParseError::new(1, 1, e.to_string()),
    }
}

/// Errors inside a well-formed s-expression carry the offending form; the
/// position is that of the enclosing top-level form.
fn bad(at: (usize, usize), v: &Value, what: &str) -> ParseError {
    ParseError::new(at.0, at.1, format!("expected {what}, found `{v}`"))
}

fn read_all(text: &str) -> Result<Vec<((usize, usize), Value)>, ParseError> {
    let mut p = lexpr::Parser::from_str(text);
    let mut out = Vec::new();
    loop {
        match p.next_datum() {
            Ok(Some(d)) => {
                let start = d.span().start();
                out.push(((start.line(), start.column() + 1), d.value().clone()));
            }
            Ok(None) => return Ok(out),
            Err(e) => return Err(lexpr_error(e)),
        }
    }
}

fn read_one(text: &str) -> Result<((usize, usize), Value), ParseError> {
    let mut all = read_all(text)?;
    match all.len() {
        1 => Ok(all.pop().expect("one form")),
        0 => Err(ParseError::new(1, 1, "empty input")),
        _ => Err(ParseError::new(all[1].0 .0, all[1].0 .1, "trailing input after the first form")),
    }
}

/// Head symbol and arguments of a list form.
fn form(v: &Value) -> Option<(&str, Vec<&Value>)> {
    let mut it = v.list_iter()?;
    let head = it.next()?.as_symbol()?;
    Some((head, it.collect()))
}

fn symbol<'v>(at: (usize, usize), v: &'v Value) -> Result<&'v str, ParseError> {
    v.as_symbol().ok_or_else(|| bad(at, v, "a name"))
}

fn number(at: (usize, usize), v: &Value) -> Result<usize, ParseError> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| bad(at, v, "an element id"))
}

fn arity(at: (usize, usize), v: &Value, args: &[&Value], n: usize) -> Result<(), ParseError> {
    if args.len() == n {
        Ok(())
    } else {
        Err(bad(at, v, &format!("a form with {n} arguments")))
    }
}

// ---------------------------------------------------------------------------
// λ-terms

fn lambda(at: (usize, usize), v: &Value, scope: &mut Vec<String>) -> Result<LambdaTerm, ParseError> {
    if let Some(x) = v.as_symbol() {
        return scope
            .iter()
            .rev()
            .position(|y| y == x)
            .map(LambdaTerm::Var)
            .ok_or_else(|| ParseError::new(at.0, at.1, format!("unbound variable `{x}`")));
    }
    let (head, args) = form(v).ok_or_else(|| bad(at, v, "a λ-term"))?;
    match head {
        "par" => {
            arity(at, v, &args, 1)?;
            Ok(LambdaTerm::Param(number(at, args[0])?))
        }
        "lam" => {
            if args.len() < 2 {
                return Err(bad(at, v, "(lam x ... body)"));
            }
            let names = args[..args.len() - 1].iter().map(|a| symbol(at, a).map(str::to_string)).collect::<Result<Vec<_>, _>>()?;
            let depth = scope.len();
            scope.extend(names.iter().cloned());
            let body = lambda(at, args[args.len() - 1], scope);
            scope.truncate(depth);
            Ok(names.iter().fold(body?, |b, _| LambdaTerm::lam(b)))
        }
        "app" => {
            if args.len() < 2 {
                return Err(bad(at, v, "(app f a ...)"));
            }
            let mut acc = lambda(at, args[0], scope)?;
            for a in &args[1..] {
                acc = LambdaTerm::app(acc, lambda(at, a, scope)?);
            }
            Ok(acc)
        }
        _ => Err(bad(at, v, "lam, app or par")),
    }
}

pub fn parse_lambda(text: &str) -> Result<LambdaTerm, ParseError> {
    let (at, v) = read_one(text)?;
    lambda(at, &v, &mut Vec::new())
}

// ---------------------------------------------------------------------------
// formulas

fn formula(at: (usize, usize), v: &Value) -> Result<Formula, ParseError> {
    if let Some(x) = v.as_symbol() {
        return Ok(Formula::Var(x.to_string()));
    }
    let (head, args) = form(v).ok_or_else(|| bad(at, v, "a formula"))?;
    let bin = |mk: fn(Formula, Formula) -> Formula| -> Result<Formula, ParseError> {
        arity(at, v, &args, 2)?;
        Ok(mk(formula(at, args[0])?, formula(at, args[1])?))
    };
    let quant = |mk: fn(&str, Formula) -> Formula| -> Result<Formula, ParseError> {
        arity(at, v, &args, 2)?;
        Ok(mk(symbol(at, args[0])?, formula(at, args[1])?))
    };
    match head {
        "par" => {
            arity(at, v, &args, 1)?;
            Ok(Formula::Param(number(at, args[0])?))
        }
        "neg" => {
            arity(at, v, &args, 1)?;
            Ok(Formula::neg(formula(at, args[0])?))
        }
        "parr" => bin(Formula::par),
        "tens" => bin(Formula::tens),
        "arr" => bin(Formula::arrow),
        "forall" => quant(Formula::forall),
        "exists" => quant(Formula::exists),
        _ => Err(bad(at, v, "par, neg, parr, tens, arr, forall or exists")),
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let (at, v) = read_one(text)?;
    formula(at, &v)
}

// ---------------------------------------------------------------------------
// L-subjects

fn term(at: (usize, usize), v: &Value) -> Result<Term, ParseError> {
    if let Some(x) = v.as_symbol() {
        return Ok(Term::var(x));
    }
    let (head, args) = form(v).ok_or_else(|| bad(at, v, "a term"))?;
    Ok(match head {
        "par" => {
            arity(at, v, &args, 1)?;
            Term::Param(number(at, args[0])?)
        }
        "mu" => {
            arity(at, v, &args, 2)?;
            Term::mu(symbol(at, args[0])?, command(at, args[1])?)
        }
        "pair" => {
            arity(at, v, &args, 2)?;
            Term::pair(term(at, args[0])?, term(at, args[1])?)
        }
        "box" => {
            arity(at, v, &args, 1)?;
            Term::boxed(context(at, args[0])?)
        }
        "mupair" => {
            arity(at, v, &args, 3)?;
            Term::mu_pair(symbol(at, args[0])?, symbol(at, args[1])?, command(at, args[2])?)
        }
        "mubox" => {
            arity(at, v, &args, 2)?;
            Term::mu_box(symbol(at, args[0])?, command(at, args[1])?)
        }
        _ => return Err(bad(at, v, "a term form")),
    })
}

fn context(at: (usize, usize), v: &Value) -> Result<Context, ParseError> {
    if let Some(x) = v.as_symbol() {
        return Ok(Context::covar(x));
    }
    let (head, args) = form(v).ok_or_else(|| bad(at, v, "a context"))?;
    Ok(match head {
        "par" => {
            arity(at, v, &args, 1)?;
            Context::Param(number(at, args[0])?)
        }
        "mut" => {
            arity(at, v, &args, 2)?;
            Context::mu(symbol(at, args[0])?, command(at, args[1])?)
        }
        "pair" => {
            arity(at, v, &args, 2)?;
            Context::pair(context(at, args[0])?, context(at, args[1])?)
        }
        "box" => {
            arity(at, v, &args, 1)?;
            Context::boxed(term(at, args[0])?)
        }
        "mupair" => {
            arity(at, v, &args, 3)?;
            Context::mu_pair(symbol(at, args[0])?, symbol(at, args[1])?, command(at, args[2])?)
        }
        "mubox" => {
            arity(at, v, &args, 2)?;
            Context::mu_box(symbol(at, args[0])?, command(at, args[1])?)
        }
        _ => return Err(bad(at, v, "a context form")),
    })
}

fn command(at: (usize, usize), v: &Value) -> Result<Command, ParseError> {
    match form(v) {
        Some(("cmd", args)) if args.len() == 2 || args.len() == 3 => {
            let c = Command { term: term(at, args[0])?, ctx: context(at, args[1])?, cut: None };
            match args.get(2) {
                Some(a) => Ok(c.with_cut(formula(at, a)?)),
                None => Ok(c),
            }
        }
        _ => Err(bad(at, v, "(cmd t e [A])")),
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let (at, v) = read_one(text)?;
    term(at, &v)
}

pub fn parse_context(text: &str) -> Result<Context, ParseError> {
    let (at, v) = read_one(text)?;
    context(at, &v)
}

pub fn parse_command(text: &str) -> Result<Command, ParseError> {
    let (at, v) = read_one(text)?;
    command(at, &v)
}

/// A calculus file: `calculus par|tens` header, optional `(var x A)`,
/// `(covar a A)` and `(hint A)` declarations, then one subject given as
/// `(cmd ...)`, `(term t A)` or `(context e A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CalcFile {
    pub polarity: Polarity,
    pub sequent: TypedSequent,
}

pub fn parse_calc_file(text: &str) -> Result<CalcFile, ParseError> {
    let (header_line, header) = text
        .lines()
        .enumerate()
        .find(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with(';')
        })
        .ok_or_else(|| ParseError::new(1, 1, "expected `calculus par|tens`"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let polarity = match words.as_slice() {
        ["calculus", p] => p.parse::<Polarity>().map_err(|e| ParseError::new(header_line + 1, 1, e))?,
        _ => return Err(ParseError::new(header_line + 1, 1, "expected `calculus par|tens`")),
    };
    let body: String = text.lines().skip(header_line + 1).collect::<Vec<_>>().join("\n");
    let forms = read_all(&body)?;
    let (mut gamma, mut delta) = (Vec::new(), Vec::new());
    let mut hints = Vec::new();
    let mut subject = None;
    for ((line, col), v) in forms {
        let at = (line + header_line + 1, col);
        let (head, args) = form(&v).ok_or_else(|| bad(at, &v, "a declaration or subject"))?;
        match head {
            "var" | "covar" => {
                arity(at, &v, &args, 2)?;
                let entry = (symbol(at, args[0])?.to_string(), formula(at, args[1])?);
                if head == "var" {
                    gamma.push(entry)
                } else {
                    delta.push(entry)
                }
            }
            "hint" => {
                arity(at, &v, &args, 1)?;
                hints.push(formula(at, args[0])?);
            }
            "cmd" | "term" | "context" if subject.is_some() => {
                return Err(ParseError::new(at.0, at.1, "a calculus file holds a single subject"));
            }
            "cmd" => subject = Some((Subject::Command(command(at, &v)?), None)),
            "term" => {
                arity(at, &v, &args, 2)?;
                subject = Some((Subject::Term(term(at, args[0])?), Some(formula(at, args[1])?)));
            }
            "context" => {
                arity(at, &v, &args, 2)?;
                subject = Some((Subject::Context(context(at, args[0])?), Some(formula(at, args[1])?)));
            }
            _ => return Err(bad(at, &v, "var, covar, hint, cmd, term or context")),
        }
    }
    let (subject, ty) = subject.ok_or_else(|| ParseError::new(header_line + 1, 1, "no subject in the file"))?;
    let judgment = Judgment { gamma, delta, subject, ty };
    Ok(CalcFile { polarity, sequent: TypedSequent { polarity, judgment, hints } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_round_trip() {
        let t = parse_lambda("(lam x y (app x y (par 1)))").unwrap();
        assert_eq!(parse_lambda(&t.to_string()).unwrap(), t);
        assert!(parse_lambda("(lam x y)").is_err());
    }

    #[test]
    fn subjects_round_trip() {
        let c = parse_command("(cmd (mu a (cmd (pair x (box b)) a)) (mut y (cmd y c)) (arr X X))").unwrap();
        assert_eq!(parse_command(&c.to_string()).unwrap(), c);
        let f = parse_formula("(forall X (exists Y (tens (parr X Y) (neg (par 0)))))").unwrap();
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn calc_file() {
        let f = parse_calc_file("calculus tens\n(var x X)\n(covar a X)\n(cmd x a)\n").unwrap();
        assert_eq!(f.polarity, Polarity::Tens);
        assert_eq!(f.sequent.judgment.gamma.len(), 1);
        let err = parse_calc_file("calculus tens\n(cmd x a)\n(cmd x a)\n").unwrap_err();
        assert_eq!(err.line, 3);
    }
}
