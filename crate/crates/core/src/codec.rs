//! Text encoding of oriented link diagrams and JSONL catalogs.
//!
//! A diagram record is a list of crossing terms. Each term names the four arc
//! labels meeting at a crossing by role:
//!
//! ```text
//! X(under_in, over_in, under_out, over_out)    positive crossing
//! Xm(under_in, over_in, under_out, over_out)   negative crossing
//! ```
//!
//! Terms are separated by whitespace or commas and the whole record may be
//! wrapped in `PD[...]`. Arc labels must be exactly `1..=2c`, each used once as
//! an incoming end and once as an outgoing end.

use std::fmt;
use std::io::BufRead;

use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// One crossing term: arc labels by role plus the crossing sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PdCrossing {
    pub under_in: u32,
    pub over_in: u32,
    pub under_out: u32,
    pub over_out: u32,
    pub sign: Sign,
}

impl PdCrossing {
    pub fn new(labels: [u32; 4], sign: Sign) -> Self {
        let [under_in, over_in, under_out, over_out] = labels;
        PdCrossing {
            under_in,
            over_in,
            under_out,
            over_out,
            sign,
        }
    }

    pub fn labels(&self) -> [u32; 4] {
        [self.under_in, self.over_in, self.under_out, self.over_out]
    }
}

/// A validated oriented PD code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OrientedPDCode {
    crossings: Vec<PdCrossing>,
}

impl OrientedPDCode {
    /// Validates the label invariants and wraps the crossings.
    pub fn new(crossings: Vec<PdCrossing>) -> Result<Self> {
        validate(&crossings)?;
        Ok(OrientedPDCode { crossings })
    }

    /// The 0-crossing unknot.
    pub fn empty() -> Self {
        OrientedPDCode::default()
    }

    pub fn crossings(&self) -> &[PdCrossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Reflection in the plane: roles kept, every sign negated.
    pub fn mirror(&self) -> Self {
        OrientedPDCode {
            crossings: self
                .crossings
                .iter()
                .map(|x| PdCrossing {
                    sign: x.sign.flipped(),
                    ..*x
                })
                .collect(),
        }
    }

    /// Renames arc labels through `map` (indexed by `label - 1`).
    pub fn relabel(&self, map: &[u32]) -> Result<Self> {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let l = x.labels().map(|a| map[(a - 1) as usize]);
                PdCrossing::new(l, x.sign)
            })
            .collect();
        OrientedPDCode::new(crossings)
    }
}

impl fmt::Display for PdCrossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.sign {
            Sign::Positive => "X",
            Sign::Negative => "Xm",
        };
        write!(
            f,
            "{tag}({},{},{},{})",
            self.under_in, self.over_in, self.under_out, self.over_out
        )
    }
}

impl fmt::Display for OrientedPDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_pd(self))
    }
}

impl std::str::FromStr for OrientedPDCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

fn validate(crossings: &[PdCrossing]) -> Result<()> {
    let c = crossings.len();
    let max = 2 * c as u32;
    let mut ins = vec![0u32; 2 * c + 1];
    let mut outs = vec![0u32; 2 * c + 1];
    for (i, x) in crossings.iter().enumerate() {
        for label in x.labels() {
            if label == 0 || label > max {
                return Err(Error::Label(format!(
                    "crossing {i}: label {label} outside 1..={max}"
                )));
            }
        }
        ins[x.under_in as usize] += 1;
        ins[x.over_in as usize] += 1;
        outs[x.under_out as usize] += 1;
        outs[x.over_out as usize] += 1;
    }
    for label in 1..=max as usize {
        if ins[label] != 1 || outs[label] != 1 {
            return Err(Error::Label(format!(
                "label {label} used {} times as incoming and {} times as outgoing",
                ins[label], outs[label]
            )));
        }
    }
    for (i, x) in crossings.iter().enumerate() {
        if x.under_in == x.under_out {
            return Err(Error::Degenerate {
                crossing: i,
                message: format!("under strand closes on itself through label {}", x.under_in),
            });
        }
        if x.over_in == x.over_out {
            return Err(Error::Degenerate {
                crossing: i,
                message: format!("over strand closes on itself through label {}", x.over_in),
            });
        }
    }
    Ok(())
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn skip_separators(&mut self) {
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_whitespace() || self.src[self.pos] == b',')
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == b => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.err(format!("expected '{}', found '{}'", b as char, got as char)),
            None => self.err(format!("expected '{}', found end of input", b as char)),
        }
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a positive integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<u32>().or_else(|_| {
            self.pos = start;
            self.err(format!("integer {text} out of range"))
        })
    }

    fn term(&mut self) -> Result<PdCrossing> {
        self.expect(b'X')?;
        let sign = if self.src.get(self.pos) == Some(&b'm') {
            self.pos += 1;
            Sign::Negative
        } else {
            Sign::Positive
        };
        self.expect(b'(')?;
        let mut labels = [0u32; 4];
        for (k, slot) in labels.iter_mut().enumerate() {
            if k > 0 {
                self.expect(b',')?;
            }
            *slot = self.int()?;
        }
        self.expect(b')')?;
        Ok(PdCrossing::new(labels, sign))
    }
}

/// Parses one diagram record.
pub fn parse_pd(text: &str) -> Result<OrientedPDCode> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut crossings = Vec::new();
    let wrapped = lx.src[lx.pos..]
        .iter()
        .position(|b| !b.is_ascii_whitespace())
        .is_some_and(|i| lx.src[lx.pos + i..].starts_with(b"PD["));
    if wrapped {
        lx.skip_ws();
        lx.pos += 3;
        loop {
            lx.skip_separators();
            match lx.peek() {
                Some(b']') => {
                    lx.pos += 1;
                    break;
                }
                Some(_) => crossings.push(lx.term()?),
                None => return lx.err("unterminated PD[ ... ]"),
            }
        }
        if lx.peek().is_some() {
            return lx.err("trailing input after PD[ ... ]");
        }
    } else {
        loop {
            lx.skip_separators();
            if lx.peek().is_none() {
                break;
            }
            crossings.push(lx.term()?);
        }
    }
    OrientedPDCode::new(crossings)
}

/// Canonical text form: space separated terms, no wrapper.
pub fn serialize_pd(code: &OrientedPDCode) -> String {
    code.crossings
        .iter()
        .map(PdCrossing::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub code: OrientedPDCode,
    /// 1-based line number in the source.
    pub line: usize,
}

/// A per-record problem found while loading a catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Deserialize)]
struct RawRecord {
    name: String,
    pd: String,
}

/// Reads a JSONL catalog. Blank lines are ignored; malformed records are
/// collected as diagnostics and the remaining records are still returned.
pub fn load_catalog<R: BufRead>(stream: R) -> Result<Catalog> {
    let mut catalog = Catalog::default();
    for (i, line) in stream.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record: RawRecord = match serde_json::from_str(&line) {
            Ok(r) => r,
            Err(e) => {
                catalog.diagnostics.push(Diagnostic {
                    line: lineno,
                    message: format!("invalid record: {e}"),
                });
                continue;
            }
        };
        match parse_pd(&record.pd) {
            Ok(code) => catalog.entries.push(CatalogEntry {
                name: record.name,
                code,
                line: lineno,
            }),
            Err(e) => catalog.diagnostics.push(Diagnostic {
                line: lineno,
                message: format!("{}: {e}", record.name),
            }),
        }
    }
    Ok(catalog)
}

/// The catalog bundled with the crate.
pub fn bundled_catalog() -> Catalog {
    load_catalog(BUNDLED_CATALOG.as_bytes()).expect("reading from memory")
}

pub const BUNDLED_CATALOG: &str = include_str!("../data/links.jsonl");
