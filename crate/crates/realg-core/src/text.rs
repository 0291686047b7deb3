//! Line-oriented file formats for lattices, structures and separators.
//!
//! Blank lines and `#` comments are ignored. Writers emit canonical files:
//! covering pairs and table rows in lexicographic order.

use std::fmt;

use thiserror::Error;

use crate::lattice::{Elem, FiniteLattice, LatticeError};
use crate::separators::{algebra, generated_algebra, Algebra, SeparatorError};
use crate::structures::{
    axiom_verdicts, check_conjunctive, check_disjunctive, check_implicative, Axiom, Kind, Structure, StructureError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Separator(#[from] SeparatorError),
}

struct Line<'t> {
    number: usize,
    words: Vec<(usize, &'t str)>,
}

impl<'t> Line<'t> {
    fn keyword(&self) -> &'t str {
        self.words[0].1
    }

    fn err(&self, word: usize, msg: impl Into<String>) -> ParseError {
        let col = self.words.get(word).map_or(1, |w| w.0);
        ParseError::new(self.number, col, msg)
    }

    fn numbers(&self, arity: usize) -> Result<Vec<usize>, ParseError> {
        if self.words.len() != arity + 1 {
            return Err(self.err(0, format!("`{}` takes {arity} arguments", self.keyword())));
        }
        (1..=arity)
            .map(|i| self.words[i].1.parse::<usize>().map_err(|_| self.err(i, format!("expected a number, found `{}`", self.words[i].1))))
            .collect()
    }

    /// `key=value` attribute of a header line.
    fn attr(&self, key: &str) -> Result<&'t str, ParseError> {
        self.words[1..]
            .iter()
            .find_map(|(_, w)| w.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
            .ok_or_else(|| self.err(0, format!("header needs `{key}=`")))
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut words = Vec::new();
            let mut offset = 0;
            for w in content.split_whitespace() {
                let at = content[offset..].find(w).map_or(offset, |p| p + offset);
                words.push((at + 1, w));
                offset = at + w.len();
            }
            (!words.is_empty()).then_some(Line { number: i + 1, words })
        })
        .collect()
}

fn parse_attr<T: std::str::FromStr>(line: &Line<'_>, key: &str) -> Result<T, ParseError>
where
    T::Err: fmt::Display,
{
    let v = line.attr(key)?;
    v.parse().map_err(|e: T::Err| line.err(0, format!("bad `{key}`: {e}")))
}

fn eof(text: &str, msg: &str) -> ParseError {
    ParseError::new(text.lines().count().max(1), 1, msg)
}

/// Splits a lattice block off the front of `ls`: its size and `le` pairs.
fn lattice_block<'a, 't>(text: &str, ls: &'a [Line<'t>]) -> Result<(usize, Vec<(Elem, Elem)>, &'a [Line<'t>]), ParseError> {
    let head = ls.first().ok_or_else(|| eof(text, "expected a `lattice` header"))?;
    if head.keyword() != "lattice" {
        return Err(head.err(0, format!("expected `lattice n=<N>`, found `{}`", head.keyword())));
    }
    let n: usize = parse_attr(head, "n")?;
    let mut pairs = Vec::new();
    let mut rest = &ls[1..];
    while let Some(l) = rest.first() {
        if l.keyword() != "le" {
            break;
        }
        let v = l.numbers(2)?;
        if v[0] >= n || v[1] >= n {
            return Err(l.err(1, format!("element outside 0..{n}")));
        }
        pairs.push((v[0], v[1]));
        rest = &rest[1..];
    }
    Ok((n, pairs, rest))
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice, LoadError> {
    let ls = lines(text);
    let (n, pairs, rest) = lattice_block(text, &ls)?;
    if let Some(l) = rest.first() {
        return Err(l.err(0, format!("unexpected `{}`", l.keyword())).into());
    }
    Ok(FiniteLattice::from_pairs(n, &pairs)?)
}

pub fn write_lattice(l: &FiniteLattice) -> String {
    l.to_text()
}

/// A structure file before its axioms are checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawStructure {
    pub kind: Kind,
    pub lattice: FiniteLattice,
    /// Arrow, par or tensor table, row-major.
    pub binary: Vec<Elem>,
    pub neg: Vec<Elem>,
}

impl RawStructure {
    pub fn check(self) -> Result<Structure, StructureError> {
        Ok(match self.kind {
            Kind::Implicative => check_implicative(self.lattice, self.binary)?.into(),
            Kind::Disjunctive => check_disjunctive(self.lattice, self.binary, self.neg)?.into(),
            Kind::Conjunctive => check_conjunctive(self.lattice, self.binary, self.neg)?.into(),
        })
    }

    pub fn verdicts(&self) -> Result<Vec<(Axiom, Option<Vec<Elem>>)>, StructureError> {
        axiom_verdicts(self.kind, self.lattice.clone(), self.binary.clone(), self.neg.clone())
    }
}

fn binary_keyword(kind: Kind) -> &'static str {
    match kind {
        Kind::Implicative => "arrow",
        Kind::Disjunctive => "par",
        Kind::Conjunctive => "tensor",
    }
}

fn structure_block<'a, 't>(text: &str, ls: &'a [Line<'t>]) -> Result<(RawStructure, &'a [Line<'t>]), LoadError> {
    let head = ls.first().ok_or_else(|| eof(text, "expected a `structure` header"))?;
    if head.keyword() != "structure" {
        return Err(head.err(0, format!("expected `structure kind=<kind>`, found `{}`", head.keyword())).into());
    }
    let kind: Kind = parse_attr(head, "kind")?;
    let (n, pairs, mut rest) = lattice_block(text, &ls[1..])?;
    let lattice = FiniteLattice::from_pairs(n, &pairs)?;
    let bin_kw = binary_keyword(kind);
    let mut binary: Vec<Option<Elem>> = vec![None; n * n];
    let mut neg: Vec<Option<Elem>> = vec![None; n];
    while let Some(l) = rest.first() {
        let kw = l.keyword();
        if kw == bin_kw {
            let v = l.numbers(3)?;
            if v.iter().any(|&x| x >= n) {
                return Err(l.err(1, format!("element outside 0..{n}")).into());
            }
            if binary[v[0] * n + v[1]].replace(v[2]).is_some() {
                return Err(l.err(0, format!("duplicate entry for ({}, {})", v[0], v[1])).into());
            }
        } else if kw == "neg" && kind != Kind::Implicative {
            let v = l.numbers(2)?;
            if v.iter().any(|&x| x >= n) {
                return Err(l.err(1, format!("element outside 0..{n}")).into());
            }
            if neg[v[0]].replace(v[1]).is_some() {
                return Err(l.err(0, format!("duplicate entry for {}", v[0])).into());
            }
        } else if kw == "separator" {
            break;
        } else {
            return Err(l.err(0, format!("unexpected `{kw}` in a {kind} structure")).into());
        }
        rest = &rest[1..];
    }
    let missing = |what: &str, i: usize| eof(text, &format!("{what} table has no entry for {i}"));
    let binary = binary
        .iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| missing(bin_kw, i)))
        .collect::<Result<Vec<_>, _>>()?;
    let neg = if kind == Kind::Implicative {
        Vec::new()
    } else {
        neg.iter().enumerate().map(|(i, v)| v.ok_or_else(|| missing("neg", i))).collect::<Result<Vec<_>, _>>()?
    };
    Ok((RawStructure { kind, lattice, binary, neg }, rest))
}

pub fn parse_raw_structure(text: &str) -> Result<RawStructure, LoadError> {
    let ls = lines(text);
    let (raw, rest) = structure_block(text, &ls)?;
    if let Some(l) = rest.first() {
        return Err(l.err(0, format!("unexpected `{}`", l.keyword())).into());
    }
    Ok(raw)
}

pub fn parse_structure(text: &str) -> Result<Structure, LoadError> {
    Ok(parse_raw_structure(text)?.check()?)
}

pub fn write_structure(s: &Structure) -> String {
    let l = s.lattice();
    let n = l.size();
    let mut out = format!("structure kind={}\n", s.kind());
    out.push_str(&l.to_text());
    let (kw, table, neg): (_, &[Elem], &[Elem]) = match s {
        Structure::Implicative(i) => ("arrow", i.arrow_table(), &[]),
        Structure::Disjunctive(d) => ("par", d.par_table(), d.neg_table()),
        Structure::Conjunctive(c) => ("tensor", c.tensor_table(), c.neg_table()),
    };
    for a in 0..n {
        for b in 0..n {
            out.push_str(&format!("{kw} {a} {b} {}\n", table[a * n + b]));
        }
    }
    for (a, v) in neg.iter().enumerate() {
        out.push_str(&format!("neg {a} {v}\n"));
    }
    out
}

/// A separator file: explicit members or generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorSpec {
    pub kind: Kind,
    pub classical: bool,
    pub generators: Vec<Elem>,
    pub members: Vec<Elem>,
}

impl SeparatorSpec {
    pub fn is_explicit(&self) -> bool {
        !self.members.is_empty()
    }
}

fn separator_block(text: &str, ls: &[Line<'_>]) -> Result<SeparatorSpec, ParseError> {
    let head = ls.first().ok_or_else(|| eof(text, "expected a `separator` header"))?;
    if head.keyword() != "separator" {
        return Err(head.err(0, format!("expected `separator kind=<kind> classical=<bool>`, found `{}`", head.keyword())));
    }
    let kind: Kind = parse_attr(head, "kind")?;
    let classical: bool = parse_attr(head, "classical")?;
    let mut spec = SeparatorSpec { kind, classical, generators: Vec::new(), members: Vec::new() };
    for l in &ls[1..] {
        let v = match l.keyword() {
            "gen" => &mut spec.generators,
            "member" => &mut spec.members,
            other => return Err(l.err(0, format!("unexpected `{other}` in a separator"))),
        };
        v.push(l.numbers(1)?[0]);
    }
    if !spec.generators.is_empty() && !spec.members.is_empty() {
        return Err(head.err(0, "a separator lists either `gen` or `member` lines, not both"));
    }
    Ok(spec)
}

pub fn parse_separator(text: &str) -> Result<SeparatorSpec, ParseError> {
    separator_block(text, &lines(text))
}

pub fn write_separator(alg: &Algebra) -> String {
    let sep = &alg.separator;
    let mut out = format!("separator kind={} classical={}\n", sep.kind(), sep.is_classical());
    for m in sep.members() {
        out.push_str(&format!("member {m}\n"));
    }
    out
}

/// A structure file followed by a separator block.
pub fn parse_algebra(text: &str) -> Result<Algebra, LoadError> {
    let ls = lines(text);
    let (raw, rest) = structure_block(text, &ls)?;
    let spec = separator_block(text, rest)?;
    if spec.kind != raw.kind {
        return Err(rest[0].err(0, format!("separator kind {} does not match structure kind {}", spec.kind, raw.kind)).into());
    }
    let s = raw.check()?;
    Ok(if spec.is_explicit() {
        algebra(s, &spec.members, spec.classical)?
    } else {
        generated_algebra(s, &spec.generators, spec.classical)?
    })
}

/// A structure file with an optional separator block, neither checked.
pub fn parse_raw_algebra(text: &str) -> Result<(RawStructure, Option<SeparatorSpec>), LoadError> {
    let ls = lines(text);
    let (raw, rest) = structure_block(text, &ls)?;
    if rest.is_empty() {
        return Ok((raw, None));
    }
    let spec = separator_block(text, rest)?;
    if spec.kind != raw.kind {
        return Err(rest[0].err(0, format!("separator kind {} does not match structure kind {}", spec.kind, raw.kind)).into());
    }
    Ok((raw, Some(spec)))
}

pub fn write_algebra(alg: &Algebra) -> String {
    write_structure(&alg.structure) + &write_separator(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::boolean_algebra;
    use crate::structures::boolean_disjunctive;

    #[test]
    fn structure_round_trip() {
        let b = boolean_algebra(2).unwrap();
        let s: Structure = boolean_disjunctive(&b).unwrap().into();
        let text = write_structure(&s);
        assert_eq!(write_structure(&parse_structure(&text).unwrap()), text);
    }

    #[test]
    fn bad_header_reports_position() {
        match parse_lattice("\n  latice n=2\n") {
            Err(LoadError::Parse(e)) => assert_eq!((e.line, e.column), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn closure_taken_on_load() {
        let l = parse_lattice("lattice n=3\nle 0 1\nle 1 2\n").unwrap();
        assert!(l.le(0, 2));
        assert_eq!(l.to_text(), "lattice n=3\nle 0 1\nle 1 2\n");
    }
}
