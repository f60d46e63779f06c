use std::fmt::Write as _;

use indexmap::IndexMap;
use sha2::{Digest, Sha256};

use super::formula::{Clause, NaeFormula};
use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::gadget;
use crate::instance::{mirkin_total, MirkinInstance};

/// Doubles every bit: `e1 e2 … ↦ e1 e1 e2 e2 …`.
pub fn gamma(s: &BitString) -> BitString {
    BitString::from_bits(s.iter().flat_map(|b| [b, b]))
}

/// Smallest `n' = 2^ℓ + 1` with `ℓ >= 2` and `n' >= n`. Returns `(ℓ, n')`.
pub fn padded_size(n: u32) -> (u32, u32) {
    let mut ell = 2;
    while (1u64 << ell) + 1 < n as u64 {
        ell += 1;
    }
    (ell, (1 << ell) + 1)
}

/// Variable gadget `S_r`: for each member `s` of the `2^(ℓ+1)` family,
/// `s` and its complement with `11` inserted at position `2r − 1`.
pub fn variable_gadget(r: u32, ell: u32) -> Result<Vec<BitString>> {
    let n = (1u64 << ell) + 1;
    if r == 0 || r as u64 > n {
        return Err(Error::InvalidParameter(format!(
            "variable index {r} outside 1..={n}"
        )));
    }
    let family = gadget::build(ell + 1)?;
    let marker: BitString = "11".parse()?;
    let pos = 2 * r as usize - 1;
    let mut out = Vec::with_capacity(2 * family.len());
    for s in family.strings() {
        out.push(s.insert(&marker, pos)?);
        out.push(s.complement().insert(&marker, pos)?);
    }
    Ok(out)
}

/// The three clause strings of length `2n`. In `t^(z)` the block of the
/// `z`-th literal encodes it as true (`11` for `x`, `00` for `¬x`), the
/// other two clause blocks encode their literal as false, and every other
/// block is `01`.
pub fn clause_triple(clause: &Clause, n: u32) -> Result<[BitString; 3]> {
    if let Some(l) = clause.iter().find(|l| l.var() > n) {
        return Err(Error::InvalidParameter(format!(
            "clause variable {} exceeds n = {n}",
            l.var()
        )));
    }
    let build = |z: usize| {
        let mut bits = vec![false; 2 * n as usize];
        for i in 0..n as usize {
            bits[2 * i + 1] = true;
        }
        for (y, lit) in clause.iter().enumerate() {
            let value = if y == z {
                lit.is_positive()
            } else {
                !lit.is_positive()
            };
            let i = lit.var() as usize - 1;
            bits[2 * i] = value;
            bits[2 * i + 1] = value;
        }
        BitString::from_bits(bits)
    };
    Ok([build(0), build(1), build(2)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarMapping {
    pub variable: u32,
    /// First position of the variable's two-bit block.
    pub block: usize,
    pub padding: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub digest: String,
    pub source_vars: u32,
    pub source_clauses: usize,
    pub ell: u32,
    pub n_padded: u32,
    /// Copies `L` of every variable gadget.
    pub copies: u64,
    /// Distance of a doubled-block candidate to one variable gadget.
    pub base_cost: u64,
    /// Extra distance to a gadget whose block is `01` or `10`.
    pub gap: u64,
    pub budget: u64,
    pub variables: Vec<VarMapping>,
}

impl ReductionCertificate {
    /// `key value` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: &dyn std::fmt::Display| writeln!(out, "{k} {v}").unwrap();
        kv("digest", &self.digest);
        kv("source_vars", &self.source_vars);
        kv("source_clauses", &self.source_clauses);
        kv("ell", &self.ell);
        kv("n_padded", &self.n_padded);
        kv("L", &self.copies);
        kv("B00", &self.base_cost);
        kv("gap", &self.gap);
        kv("k", &self.budget);
        for v in &self.variables {
            let key = if v.padding { "pad" } else { "var" };
            writeln!(out, "{key}.{} {}", v.variable, v.block).unwrap();
        }
        out
    }
}

/// Builds the weighted instance whose optimum is at most the certificate
/// budget iff `psi` is NAE-satisfiable.
pub fn reduce_nae_to_mirkin(psi: &NaeFormula) -> Result<(MirkinInstance, ReductionCertificate)> {
    let m = psi.clauses().len() as u64;
    if m == 0 {
        return Err(Error::InvalidParameter(
            "formula has no clauses; the budget is undefined".into(),
        ));
    }
    let (ell, n) = padded_size(psi.num_vars());
    let n64 = n as u64;
    let sq = n64 * n64;
    let copies = m
        .checked_mul(3 * sq)
        .ok_or_else(|| Error::overflow("gadget copies L"))?;

    let mut merged: IndexMap<BitString, u64> = IndexMap::new();
    let mut first_gadget = Vec::new();
    for r in 1..=n {
        let gadget = variable_gadget(r, ell)?;
        for s in &gadget {
            let w = merged.entry(s.clone()).or_insert(0);
            *w = w.checked_add(copies).ok_or_else(|| Error::overflow("multiplicity"))?;
        }
        if r == 1 {
            first_gadget = gadget;
        }
    }
    for c in psi.clauses() {
        for t in clause_triple(c, n)? {
            let w = merged.entry(t).or_insert(0);
            *w = w.checked_add(1).ok_or_else(|| Error::overflow("multiplicity"))?;
        }
    }

    let s1 = MirkinInstance::unweighted(first_gadget)?;
    let doubled = gamma(&BitString::zeros(n as usize));
    let base = mirkin_total::<i128>(&doubled, &s1)?;
    let mut split = doubled.clone();
    split.set(2, true)?;
    let gap = mirkin_total::<i128>(&split, &s1)? - base;
    let to_u64 = |v: i128, what: &str| u64::try_from(v).map_err(|_| Error::overflow(what.to_string()));
    let base_cost = to_u64(base, "B00")?;
    let gap = to_u64(gap, "gap")?;

    let budget = copies
        .checked_mul(n64)
        .and_then(|v| v.checked_mul(base_cost))
        .and_then(|v| v.checked_add(m * (3 * sq - 11)))
        .ok_or_else(|| Error::overflow("budget k"))?;

    let instance = MirkinInstance::new(merged.into_iter().collect(), Some(budget))?;
    let certificate = ReductionCertificate {
        digest: format!("{:x}", Sha256::digest(psi.to_dimacs().as_bytes())),
        source_vars: psi.num_vars(),
        source_clauses: psi.clauses().len(),
        ell,
        n_padded: n,
        copies,
        base_cost,
        gap,
        budget,
        variables: (1..=n)
            .map(|v| VarMapping {
                variable: v,
                block: 2 * v as usize - 1,
                padding: v > psi.num_vars(),
            })
            .collect(),
    };
    Ok((instance, certificate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::Literal;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn clause(lits: [i64; 3]) -> Clause {
        lits.map(|v| Literal::from_dimacs(v).unwrap())
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&bs("0")), bs("00"));
        assert_eq!(gamma(&bs("01")), bs("0011"));
        assert_eq!(gamma(&bs("101")), bs("110011"));
    }

    #[test]
    fn padding_targets() {
        assert_eq!(padded_size(1), (2, 5));
        assert_eq!(padded_size(3), (2, 5));
        assert_eq!(padded_size(5), (2, 5));
        assert_eq!(padded_size(6), (3, 9));
        assert_eq!(padded_size(9), (3, 9));
        assert_eq!(padded_size(10), (4, 17));
    }

    #[test]
    fn variable_gadget_layout() {
        let g = variable_gadget(1, 1).unwrap();
        assert_eq!(g.len(), 8);
        assert_eq!(g[0], bs("110000"));
        assert_eq!(g[1], bs("111111"));
        for r in 1..=5 {
            let g = variable_gadget(r, 2).unwrap();
            assert_eq!(g.len(), 16);
            let p = 2 * r as usize - 1;
            assert!(g.iter().all(|s| s.len() == 10 && s.bit(p) && s.bit(p + 1)));
        }
        assert!(variable_gadget(0, 2).is_err());
        assert!(variable_gadget(6, 2).is_err());
    }

    #[test]
    fn clause_triple_worked_example() {
        let [t1, t2, t3] = clause_triple(&clause([-1, 2, -3]), 5).unwrap();
        assert_eq!(t1, bs("0000110101"));
        assert_eq!(t2, bs("1111110101"));
        assert_eq!(t3, bs("1100000101"));
    }

    #[test]
    fn clause_triple_positive_clause() {
        let [t1, t2, t3] = clause_triple(&clause([1, 2, 3]), 4).unwrap();
        assert_eq!(t1, bs("11000001"));
        assert_eq!(t2, bs("00110001"));
        assert_eq!(t3, bs("00001101"));
        assert!(clause_triple(&clause([1, 2, 6]), 5).is_err());
    }

    #[test]
    fn three_variable_clause_instance() {
        let psi = NaeFormula::new(3, vec![clause([1, 2, 3])]).unwrap();
        let (inst, cert) = reduce_nae_to_mirkin(&psi).unwrap();
        assert_eq!(cert.ell, 2);
        assert_eq!(cert.n_padded, 5);
        assert_eq!(cert.copies, 75);
        assert_eq!(cert.gap, 16);
        // (C(8,2) + 2·8)·8
        assert_eq!(cert.base_cost, 352);
        assert_eq!(cert.budget, 75 * 5 * 352 + 64);
        assert_eq!(inst.n(), 10);
        assert_eq!(inst.m(), 5 * 16 * 75 + 3);
        assert_eq!(inst.budget(), Some(cert.budget));
        let clause_lines = inst.entries().iter().filter(|e| e.multiplicity == 1).count();
        assert_eq!(clause_lines, 3);
        assert!(cert.variables[3].padding && !cert.variables[2].padding);
    }

    #[test]
    fn rejects_empty_formula() {
        let psi = NaeFormula::new(3, vec![]).unwrap();
        assert!(matches!(
            reduce_nae_to_mirkin(&psi),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn output_is_deterministic() {
        let psi = NaeFormula::new(4, vec![clause([1, -2, 4]), clause([2, 3, -4])]).unwrap();
        let (a, ca) = reduce_nae_to_mirkin(&psi).unwrap();
        let (b, cb) = reduce_nae_to_mirkin(&psi).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(ca.to_text(), cb.to_text());
    }
}
