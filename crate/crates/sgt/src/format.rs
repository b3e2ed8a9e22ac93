//! The `.sgt` text format.
//!
//! ```text
//! # any line may end in a comment
//! kind: semigroup          # or "group"
//! elements: a b c
//! table:
//! a b c
//! b c a
//! c a b
//! ```
//!
//! Sections appear in that order. Row x, column y of the table is x*y.
//! `kind: group` additionally certifies the group axioms after parsing.

use std::path::Path;
use std::sync::Arc;

use crate::table::{certify_group, ElementId, SemigroupTable, TableRef};
use crate::{Error, ParseError, ParseErrorKind, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Semigroup,
    Group,
}

impl Kind {
    pub fn label(self) -> &'static str {
        match self {
            Kind::Semigroup => "semigroup",
            Kind::Group => "group",
        }
    }
}

/// A parsed file: the table plus its declared kind. For `kind: group` the
/// group axioms have already been checked.
#[derive(Debug)]
pub struct Parsed {
    pub kind: Kind,
    pub table: TableRef,
}

struct Tok<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Lines stripped of comments and split into whitespace tokens, with 1-based
/// positions retained for error reports.
fn tokenize(src: &str) -> Vec<Vec<Tok<'_>>> {
    let mut out = Vec::new();
    for (li, raw) in src.lines().enumerate() {
        let body = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let mut toks = Vec::new();
        let mut col = 0;
        for piece in body.split_inclusive(char::is_whitespace) {
            let trimmed = piece.trim_end_matches(char::is_whitespace);
            if !trimmed.is_empty() {
                toks.push(Tok {
                    text: trimmed,
                    line: li + 1,
                    column: col + 1,
                });
            }
            col += piece.chars().count();
        }
        if !toks.is_empty() {
            out.push(toks);
        }
    }
    out
}

fn err(line: usize, column: usize, kind: ParseErrorKind, detail: impl Into<String>) -> Error {
    Error::Parse(ParseError {
        line,
        column,
        kind,
        detail: detail.into(),
    })
}

pub fn parse(src: &str) -> Result<Parsed> {
    let lines = tokenize(src);
    let mut it = lines.iter();

    let kind_line = it
        .next()
        .ok_or_else(|| err(1, 1, ParseErrorKind::MissingSection, "empty file, expected 'kind:'"))?;
    if kind_line[0].text != "kind:" {
        return Err(err(
            kind_line[0].line,
            kind_line[0].column,
            ParseErrorKind::BadHeader,
            format!("expected 'kind:', found {:?}", kind_line[0].text),
        ));
    }
    let kind = match kind_line.get(1).map(|t| t.text) {
        Some("semigroup") => Kind::Semigroup,
        Some("group") => Kind::Group,
        Some(other) => {
            return Err(err(
                kind_line[1].line,
                kind_line[1].column,
                ParseErrorKind::BadHeader,
                format!("kind must be 'semigroup' or 'group', found {other:?}"),
            ))
        }
        None => {
            return Err(err(
                kind_line[0].line,
                kind_line[0].column,
                ParseErrorKind::BadHeader,
                "'kind:' takes a value",
            ))
        }
    };
    if kind_line.len() > 2 {
        return Err(err(
            kind_line[2].line,
            kind_line[2].column,
            ParseErrorKind::BadHeader,
            "unexpected token after the kind",
        ));
    }

    let elems_line = it.next().ok_or_else(|| {
        err(
            kind_line[0].line + 1,
            1,
            ParseErrorKind::MissingSection,
            "expected 'elements:'",
        )
    })?;
    if elems_line[0].text != "elements:" {
        return Err(err(
            elems_line[0].line,
            elems_line[0].column,
            ParseErrorKind::BadHeader,
            format!("expected 'elements:', found {:?}", elems_line[0].text),
        ));
    }
    let decl = &elems_line[1..];
    if decl.is_empty() {
        return Err(err(
            elems_line[0].line,
            elems_line[0].column,
            ParseErrorKind::BadHeader,
            "'elements:' lists at least one name",
        ));
    }
    let mut names: Vec<String> = Vec::with_capacity(decl.len());
    for tok in decl {
        if names.iter().any(|n| n == tok.text) {
            return Err(err(
                tok.line,
                tok.column,
                ParseErrorKind::DuplicateName,
                format!("{:?} is declared twice", tok.text),
            ));
        }
        names.push(tok.text.to_string());
    }
    let n = names.len();

    let table_line = it.next().ok_or_else(|| {
        err(
            elems_line[0].line + 1,
            1,
            ParseErrorKind::MissingSection,
            "expected 'table:'",
        )
    })?;
    if table_line[0].text != "table:" || table_line.len() > 1 {
        return Err(err(
            table_line[0].line,
            table_line[0].column,
            ParseErrorKind::BadHeader,
            format!("expected 'table:' on its own line, found {:?}", table_line[0].text),
        ));
    }

    let lookup = |tok: &Tok<'_>| -> Result<ElementId> {
        names
            .iter()
            .position(|name| name == tok.text)
            .map(ElementId)
            .ok_or_else(|| {
                err(
                    tok.line,
                    tok.column,
                    ParseErrorKind::UnknownName,
                    format!("{:?} is not a declared element", tok.text),
                )
            })
    };

    let mut rows: Vec<Vec<ElementId>> = Vec::with_capacity(n);
    let mut last_line = table_line[0].line;
    for _ in 0..n {
        let row_line = it.next().ok_or_else(|| {
            err(
                last_line + 1,
                1,
                ParseErrorKind::WrongArity,
                format!("table has {} rows, expected {n}", rows.len()),
            )
        })?;
        if row_line.len() != n {
            let tok = row_line.last().unwrap();
            return Err(err(
                tok.line,
                tok.column,
                ParseErrorKind::WrongArity,
                format!("row has {} entries, expected {n}", row_line.len()),
            ));
        }
        rows.push(row_line.iter().map(&lookup).collect::<Result<_>>()?);
        last_line = row_line[0].line;
    }
    if let Some(extra) = it.next() {
        return Err(err(
            extra[0].line,
            extra[0].column,
            ParseErrorKind::WrongArity,
            format!("unexpected content after the {n} table rows"),
        ));
    }

    let table = Arc::new(SemigroupTable::new(names, rows)?);
    if kind == Kind::Group {
        certify_group(&table)?;
    }
    Ok(Parsed { kind, table })
}

pub fn parse_file(path: &Path) -> Result<Parsed> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidTable(format!("cannot read {}: {e}", path.display())))?;
    parse(&src)
}

/// Renders a table back to the format. `parse(render(t)).table` equals `t`.
pub fn render(kind: Kind, t: &SemigroupTable) -> String {
    let mut out = String::new();
    out.push_str("kind: ");
    out.push_str(kind.label());
    out.push('\n');
    out.push_str("elements:");
    for x in t.elements() {
        out.push(' ');
        out.push_str(t.name(x));
    }
    out.push_str("\ntable:\n");
    let widths: Vec<usize> = t.elements().map(|x| t.name(x).chars().count()).collect();
    let col: Vec<usize> = (0..t.order())
        .map(|j| {
            t.elements()
                .map(|i| widths[t.product(i, ElementId(j)).0])
                .max()
                .unwrap()
        })
        .collect();
    for x in t.elements() {
        for y in t.elements() {
            if y.0 > 0 {
                out.push(' ');
            }
            let name = t.name(t.product(x, y));
            out.push_str(name);
            if y.0 + 1 < t.order() {
                for _ in name.chars().count()..col[y.0] {
                    out.push(' ');
                }
            }
        }
        out.push('\n');
    }
    out
}
