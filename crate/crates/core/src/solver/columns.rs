use indexmap::IndexMap;

use crate::bitstring::BitString;
use crate::instance::MirkinInstance;

/// Columns grouped by type: two columns share a type when every input
/// string has the same bit in both. Types are numbered in order of first
/// occurrence, so column 1 always has type 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnTypeSummary {
    /// Distinct column vectors, read top to bottom over the instance entries.
    pub types: Vec<BitString>,
    /// Number of columns per type.
    pub counts: Vec<u64>,
    /// Type index of each column.
    pub column_type: Vec<usize>,
    /// Ones in each entry's string.
    pub ones: Vec<u64>,
    pub multiplicities: Vec<u64>,
    pub n: usize,
}

impl ColumnTypeSummary {
    pub fn n_types(&self) -> usize {
        self.types.len()
    }

    pub fn entries(&self) -> usize {
        self.ones.len()
    }

    /// Bit of entry `i` in columns of type `j`, both 0-based.
    pub fn bit(&self, i: usize, j: usize) -> bool {
        self.types[j].bit(i + 1)
    }

    /// `1 − 2·bit`: +1 where the entry has a zero, −1 where it has a one.
    pub fn sign(&self, i: usize, j: usize) -> i64 {
        if self.bit(i, j) {
            -1
        } else {
            1
        }
    }

    /// Expands a per-type assignment into a full string.
    pub fn decode(&self, x: &[bool]) -> BitString {
        assert_eq!(x.len(), self.n_types());
        BitString::from_bits(self.column_type.iter().map(|&t| x[t]))
    }

    /// Expands a per-type assignment packed into bits (type `j` at bit `j`).
    pub fn decode_mask(&self, mask: u64) -> BitString {
        BitString::from_bits(self.column_type.iter().map(|&t| mask >> t & 1 == 1))
    }

    /// Rebuilds entry `i` from the type table.
    pub fn reconstruct(&self, i: usize) -> BitString {
        BitString::from_bits(self.column_type.iter().map(|&t| self.bit(i, t)))
    }
}

pub fn column_types(inst: &MirkinInstance) -> ColumnTypeSummary {
    let entries = inst.entries();
    let mut index: IndexMap<BitString, usize> = IndexMap::new();
    let mut counts = Vec::new();
    let mut column_type = Vec::with_capacity(inst.n());
    for pos in 1..=inst.n() {
        let col = BitString::from_bits(entries.iter().map(|e| e.string.bit(pos)));
        let next = index.len();
        let t = *index.entry(col).or_insert(next);
        if t == counts.len() {
            counts.push(0);
        }
        counts[t] += 1;
        column_type.push(t);
    }
    ColumnTypeSummary {
        types: index.into_keys().collect(),
        counts,
        column_type,
        ones: entries.iter().map(|e| e.string.count_ones() as u64).collect(),
        multiplicities: entries.iter().map(|e| e.multiplicity).collect(),
        n: inst.n(),
    }
}
