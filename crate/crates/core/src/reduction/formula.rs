//! Three-literal formulas under ordinary and not-all-equal semantics, with
//! DIMACS-style text I/O (`p cnf` / `p nae` headers).

use std::fmt::{self, Write as _};
use std::marker::PhantomData;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    var: u32,
    positive: bool,
}

impl Literal {
    pub fn new(var: u32, positive: bool) -> Result<Self> {
        if var == 0 {
            return Err(Error::InvalidParameter("variable index must be >= 1".into()));
        }
        Ok(Literal { var, positive })
    }

    pub fn pos(var: u32) -> Self {
        Self::new(var, true).expect("variable index >= 1")
    }

    pub fn neg(var: u32) -> Self {
        Self::new(var, false).expect("variable index >= 1")
    }

    /// From a signed DIMACS integer.
    pub fn from_dimacs(v: i64) -> Result<Self> {
        let var = u32::try_from(v.unsigned_abs())
            .map_err(|_| Error::InvalidParameter(format!("variable {v} too large")))?;
        Self::new(var, v > 0)
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negate(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// Truth value under `assignment`, indexed from variable 1 at slot 0.
    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var as usize - 1] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "-{}", self.var)
        }
    }
}

pub type Clause = [Literal; 3];

pub trait Semantics: Clone + fmt::Debug + PartialEq + Eq {
    const HEADER: &'static str;
    fn clause_satisfied(values: [bool; 3]) -> bool;
}

/// At least one true literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf;

/// At least one true and at least one false literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nae;

impl Semantics for Cnf {
    const HEADER: &'static str = "cnf";
    fn clause_satisfied(v: [bool; 3]) -> bool {
        v[0] || v[1] || v[2]
    }
}

impl Semantics for Nae {
    const HEADER: &'static str = "nae";
    fn clause_satisfied(v: [bool; 3]) -> bool {
        !(v[0] == v[1] && v[1] == v[2])
    }
}

/// Ordered clauses of exactly three literals on pairwise distinct variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula<S: Semantics> {
    num_vars: u32,
    clauses: Vec<Clause>,
    _semantics: PhantomData<S>,
}

pub type CnfFormula = Formula<Cnf>;
pub type NaeFormula = Formula<Nae>;

/// Exhaustive satisfiability search is limited to this many variables.
pub const MAX_TRUTH_TABLE_VARS: u32 = 30;

impl<S: Semantics> Formula<S> {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Self> {
        for (j, c) in clauses.iter().enumerate() {
            check_clause(c, num_vars).map_err(|m| {
                Error::InvalidParameter(format!("clause {}: {m}", j + 1))
            })?;
        }
        Ok(Formula {
            num_vars,
            clauses,
            _semantics: PhantomData,
        })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause_satisfied(clause: &Clause, assignment: &[bool]) -> bool {
        S::clause_satisfied(clause.map(|l| l.eval(assignment)))
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.num_vars as usize);
        self.clauses
            .iter()
            .all(|c| Self::clause_satisfied(c, assignment))
    }

    /// First satisfying assignment in counting order, by truth table.
    pub fn satisfying_assignment(&self) -> Result<Option<Vec<bool>>> {
        if self.num_vars > MAX_TRUTH_TABLE_VARS {
            return Err(Error::InstanceTooLarge {
                what: "variables",
                value: self.num_vars as usize,
                cap: MAX_TRUTH_TABLE_VARS as usize,
            });
        }
        let n = self.num_vars as usize;
        for mask in 0u64..1 << n {
            let a: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            if self.is_satisfied_by(&a) {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }

    pub fn is_satisfiable(&self) -> Result<bool> {
        Ok(self.satisfying_assignment()?.is_some())
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p {} {} {}", S::HEADER, self.num_vars, self.clauses.len()).unwrap();
        for c in &self.clauses {
            writeln!(out, "{} {} {} 0", c[0], c[1], c[2]).unwrap();
        }
        out
    }

    /// Parses DIMACS text whose header kind must match the semantics.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(u32, usize)> = None;
        let mut clauses = Vec::new();
        let mut pending: Vec<Literal> = Vec::new();
        let mut pending_line = 0;
        let mut last_line = 1;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(Error::parse(line_no, "duplicate header"));
                }
                header = Some(parse_header(line, S::HEADER, line_no)?);
                continue;
            }
            let (num_vars, _) =
                header.ok_or_else(|| Error::parse(line_no, "clause before header"))?;
            for tok in line.split_whitespace() {
                let v: i64 = tok
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("invalid literal {tok:?}")))?;
                if pending.is_empty() {
                    pending_line = line_no;
                }
                if v == 0 {
                    let clause: Clause = pending.as_slice().try_into().map_err(|_| {
                        Error::parse(
                            pending_line,
                            format!("clause has {} literals, expected 3", pending.len()),
                        )
                    })?;
                    check_clause(&clause, num_vars).map_err(|m| Error::parse(pending_line, m))?;
                    clauses.push(clause);
                    pending.clear();
                } else {
                    let lit = Literal::from_dimacs(v).map_err(|e| Error::parse(line_no, e.to_string()))?;
                    if lit.var() > num_vars {
                        return Err(Error::parse(
                            line_no,
                            format!("variable {} exceeds declared {num_vars}", lit.var()),
                        ));
                    }
                    pending.push(lit);
                }
            }
        }
        let (num_vars, count) = header.ok_or_else(|| Error::parse(last_line, "missing header"))?;
        if !pending.is_empty() {
            return Err(Error::parse(pending_line, "clause not terminated by 0"));
        }
        if clauses.len() != count {
            return Err(Error::parse(
                last_line,
                format!("header announces {count} clauses, found {}", clauses.len()),
            ));
        }
        Ok(Formula {
            num_vars,
            clauses,
            _semantics: PhantomData,
        })
    }
}

fn parse_header(line: &str, kind: &str, line_no: usize) -> Result<(u32, usize)> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    match toks.as_slice() {
        ["p", k, vars, clauses] if *k == kind => {
            let vars = vars
                .parse()
                .map_err(|_| Error::parse(line_no, "invalid variable count"))?;
            let clauses = clauses
                .parse()
                .map_err(|_| Error::parse(line_no, "invalid clause count"))?;
            Ok((vars, clauses))
        }
        _ => Err(Error::parse(
            line_no,
            format!("malformed header, expected 'p {kind} <vars> <clauses>'"),
        )),
    }
}

fn check_clause(c: &Clause, num_vars: u32) -> std::result::Result<(), String> {
    for l in c {
        if l.var() > num_vars {
            return Err(format!("variable {} exceeds declared {num_vars}", l.var()));
        }
    }
    if c[0].var() == c[1].var() || c[0].var() == c[2].var() || c[1].var() == c[2].var() {
        return Err(format!("repeated variable in clause {} {} {}", c[0], c[1], c[2]));
    }
    Ok(())
}
