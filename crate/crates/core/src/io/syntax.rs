//! Partition syntax `0|1 2 3` and term syntax `join(x,join(y,x))`.

use crate::algebra::{Element, Signature};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::term::Term;

/// Blocks separated by `|`, elements by spaces or commas.
pub fn parse_partition(text: &str, n: usize) -> Result<Partition> {
    let blocks = text
        .split('|')
        .map(|block| {
            let elems = block
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<Element>()
                        .map_err(|_| Error::InvalidPartition(format!("`{s}` is not an element")))
                })
                .collect::<Result<Vec<_>>>()?;
            if elems.is_empty() {
                return Err(Error::InvalidPartition(format!("empty block in `{text}`")));
            }
            Ok(elems)
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::from_blocks(n, &blocks)
}

/// `op NAME ARITY` entries separated by `;`, e.g. `op f 2; op c 0`.
pub fn parse_signature(text: &str) -> Result<Signature> {
    let mut symbols = Vec::new();
    for (i, entry) in text.split(';').enumerate() {
        let words: Vec<&str> = entry.split_whitespace().collect();
        let bad = || Error::Signature(format!("entry {} `{}` is not `op NAME ARITY`", i + 1, entry.trim()));
        match words[..] {
            ["op", name, arity] => symbols.push((name, arity.parse::<usize>().map_err(|_| bad())?)),
            [] if i > 0 => {}
            _ => return Err(bad()),
        }
    }
    Signature::new(symbols)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::syntax(1, self.src[..self.pos].chars().count() + 1, message)
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.find(|c| !f(c)).unwrap_or(rest.len());
        self.pos += len;
        &self.src[start..start + len]
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                digits
                    .parse()
                    .map(Term::Const)
                    .map_err(|_| self.err("element literal too large"))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_').to_string();
                if self.peek() == Some('(') {
                    self.pos += 1;
                    let mut args = Vec::new();
                    if self.peek() == Some(')') {
                        self.pos += 1;
                    } else {
                        loop {
                            args.push(self.term()?);
                            match self.peek() {
                                Some(',') => self.pos += 1,
                                Some(')') => {
                                    self.pos += 1;
                                    break;
                                }
                                _ => return Err(self.err("expected `,` or `)`")),
                            }
                        }
                    }
                    return Ok(Term::app(name, args));
                }
                match variable(&name) {
                    Some(i) => Ok(Term::Var(i)),
                    // bare symbol: a nullary operation
                    None => Ok(Term::app(name, Vec::new())),
                }
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of term")),
        }
    }
}

/// `x`, `y`, `z` are variables 0, 1, 2; `x<i>` is variable `i`.
fn variable(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => {
            let digits = name.strip_prefix('x')?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            digits.parse().ok()
        }
    }
}

/// Parses a term and checks it against `sig`. Decimal integers are element
/// literals; a bare identifier that is not a variable is a nullary symbol.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term> {
    let mut p = Parser { src: text, pos: 0 };
    let t = p.term()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected input after term"));
    }
    t.check(sig)?;
    Ok(t)
}
