//! Weighted Mirkin instances and the `.mirk` text format.
//!
//! ```text
//! c optional comments
//! p mirk <n> <lines>
//! k <budget>            (optional)
//! <bitstring> [<multiplicity>]
//! ```

use std::fmt::Write as _;

use crate::bitstring::{hamming, BitString};
use crate::error::{Error, Result};
use crate::num::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub string: BitString,
    pub multiplicity: u64,
}

/// A nonempty multiset of equal-length strings with an optional budget `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirkinInstance {
    entries: Vec<Entry>,
    n: usize,
    total: u64,
    budget: Option<u64>,
}

impl MirkinInstance {
    pub fn new(entries: Vec<(BitString, u64)>, budget: Option<u64>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::InvalidParameter("instance has no strings".into()))?;
        let n = first.0.len();
        if n == 0 {
            return Err(Error::InvalidParameter("strings must have length >= 1".into()));
        }
        let mut total = 0u64;
        for (s, w) in &entries {
            if s.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: s.len(),
                });
            }
            if *w == 0 {
                return Err(Error::InvalidParameter(format!(
                    "multiplicity of {s} must be positive"
                )));
            }
            total = total
                .checked_add(*w)
                .ok_or_else(|| Error::overflow("total multiplicity"))?;
        }
        Ok(MirkinInstance {
            entries: entries
                .into_iter()
                .map(|(string, multiplicity)| Entry {
                    string,
                    multiplicity,
                })
                .collect(),
            n,
            total,
            budget,
        })
    }

    /// Every string with multiplicity one.
    pub fn unweighted<I: IntoIterator<Item = BitString>>(strings: I) -> Result<Self> {
        Self::new(strings.into_iter().map(|s| (s, 1)).collect(), None)
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Common string length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Multiplicity-weighted string count.
    pub fn m(&self) -> u64 {
        self.total
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    /// Serializes to the `.mirk` format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p mirk {} {}", self.n, self.entries.len()).unwrap();
        if let Some(k) = self.budget {
            writeln!(out, "k {k}").unwrap();
        }
        for e in &self.entries {
            if e.multiplicity == 1 {
                writeln!(out, "{}", e.string).unwrap();
            } else {
                writeln!(out, "{} {}", e.string, e.multiplicity).unwrap();
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut budget = None;
        let mut entries = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let head = tokens.next().unwrap();
            match head {
                "p" => {
                    if header.is_some() {
                        return Err(Error::parse(line_no, "duplicate header"));
                    }
                    if tokens.next() != Some("mirk") {
                        return Err(Error::parse(line_no, "expected 'p mirk <n> <lines>'"));
                    }
                    let n = parse_num::<usize>(tokens.next(), line_no, "n")?;
                    let count = parse_num::<usize>(tokens.next(), line_no, "line count")?;
                    if tokens.next().is_some() {
                        return Err(Error::parse(line_no, "trailing tokens in header"));
                    }
                    header = Some((n, count));
                }
                "k" => {
                    if header.is_none() {
                        return Err(Error::parse(line_no, "budget before header"));
                    }
                    if budget.is_some() || !entries.is_empty() {
                        return Err(Error::parse(line_no, "budget must precede strings, once"));
                    }
                    budget = Some(parse_num::<u64>(tokens.next(), line_no, "budget")?);
                    if tokens.next().is_some() {
                        return Err(Error::parse(line_no, "trailing tokens after budget"));
                    }
                }
                bits => {
                    let (n, _) =
                        header.ok_or_else(|| Error::parse(line_no, "string before header"))?;
                    let s: BitString = bits
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad bitstring {bits:?}")))?;
                    if s.len() != n {
                        return Err(Error::parse(
                            line_no,
                            format!("string length {} differs from header n={n}", s.len()),
                        ));
                    }
                    let w = match tokens.next() {
                        Some(t) => parse_num::<u64>(Some(t), line_no, "multiplicity")?,
                        None => 1,
                    };
                    if w == 0 {
                        return Err(Error::parse(line_no, "multiplicity must be positive"));
                    }
                    if tokens.next().is_some() {
                        return Err(Error::parse(line_no, "trailing tokens after multiplicity"));
                    }
                    entries.push((s, w));
                }
            }
        }
        let (_, count) = header.ok_or_else(|| Error::parse(last_line.max(1), "missing header"))?;
        if count != entries.len() {
            return Err(Error::parse(
                last_line.max(1),
                format!("header announces {count} lines, found {}", entries.len()),
            ));
        }
        Self::new(entries, budget).map_err(|e| Error::parse(last_line.max(1), e.to_string()))
    }
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what}")))
}

/// Multiplicity-weighted sum of Mirkin distances from `candidate`.
pub fn mirkin_total<C: Scalar>(candidate: &BitString, inst: &MirkinInstance) -> Result<C> {
    if candidate.len() != inst.n() {
        return Err(Error::LengthMismatch {
            left: candidate.len(),
            right: inst.n(),
        });
    }
    let n = inst.n() as u64;
    let mut total = C::zero();
    for e in inst.entries() {
        let d = hamming(candidate, &e.string)? as u64;
        let pair = C::from_u64_checked(d * (n - d))?;
        let w = C::from_u64_checked(e.multiplicity)?;
        total = total.add_checked(pair.mul_checked(w)?)?;
    }
    Ok(total)
}
