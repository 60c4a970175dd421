//! The line-oriented algebra file format:
//!
//! ```text
//! # comment
//! algebra diamond
//! size 4
//! op join 2
//! 0 1 2 3
//! 1 1 3 3
//! 2 3 2 3
//! 3 3 3 3
//! ```
//!
//! Tables are row-major with the leftmost argument slowest and may be broken
//! across lines freely. A nullary operation takes one integer.

use std::fmt::Write;

use crate::algebra::{AlgebraDraft, FiniteAlgebra, OpDraft};
use crate::error::{Error, Result};

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut rest = line;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
            out.push(Token {
                text: &tail[..len],
                line: i + 1,
                column: line.len() - tail.len() + 1,
            });
            rest = &tail[len..];
        }
    }
    out
}

fn integer(tok: &Token<'_>, what: &str) -> Result<usize> {
    tok.text
        .parse()
        .map_err(|_| Error::syntax(tok.line, tok.column, format!("expected {what}, found `{}`", tok.text)))
}

/// Parses the file into a draft without checking table lengths or ranges.
pub fn parse_draft(text: &str) -> Result<AlgebraDraft> {
    let tokens = tokenize(text);
    let mut it = tokens.iter().peekable();
    let mut name: Option<String> = None;
    let mut size: Option<usize> = None;
    let mut ops: Vec<OpDraft> = Vec::new();
    let end = |what: &str| {
        let (line, column) = tokens
            .last()
            .map_or((1, 1), |t| (t.line, t.column + t.text.len()));
        Error::syntax(line, column, format!("unexpected end of input, expected {what}"))
    };
    while let Some(tok) = it.next() {
        match tok.text {
            "algebra" => {
                if name.is_some() {
                    return Err(Error::syntax(tok.line, tok.column, "duplicate `algebra` line"));
                }
                name = Some(it.next().ok_or_else(|| end("an algebra name"))?.text.to_string());
            }
            "size" => {
                if size.is_some() {
                    return Err(Error::syntax(tok.line, tok.column, "duplicate `size` line"));
                }
                let t = it.next().ok_or_else(|| end("a size"))?;
                let n = integer(t, "a size")?;
                if n == 0 {
                    return Err(Error::syntax(t.line, t.column, "size must be positive"));
                }
                size = Some(n);
            }
            "op" => {
                if name.is_none() || size.is_none() {
                    return Err(Error::syntax(
                        tok.line,
                        tok.column,
                        "`algebra` and `size` must precede the first `op`",
                    ));
                }
                let op_name = it.next().ok_or_else(|| end("an operation name"))?.text.to_string();
                let arity = integer(it.next().ok_or_else(|| end("an arity"))?, "an arity")?;
                let mut table = Vec::new();
                while let Some(t) = it.next_if(|t| !matches!(t.text, "op" | "algebra" | "size")) {
                    table.push(integer(t, "a table entry or `op`")?);
                }
                ops.push(OpDraft {
                    name: op_name,
                    arity,
                    table,
                });
            }
            other => {
                return Err(Error::syntax(
                    tok.line,
                    tok.column,
                    format!("expected `algebra`, `size` or `op`, found `{other}`"),
                ))
            }
        }
    }
    Ok(AlgebraDraft {
        name: name.ok_or_else(|| end("an `algebra` line"))?,
        size: size.ok_or_else(|| end("a `size` line"))?,
        ops,
    })
}

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    parse_draft(text)?.build()
}

/// The file form of `alg`, one table row per line.
pub fn serialize_algebra(alg: &FiniteAlgebra) -> String {
    let n = alg.size();
    let mut out = format!("algebra {}\nsize {n}\n", alg.name());
    for (_, sym, table) in alg.ops() {
        writeln!(out, "op {} {}", sym.name, sym.arity).expect("writing to a String");
        let width = if sym.arity == 0 { 1 } else { n };
        for row in table.chunks(width) {
            let row: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}
