//! The balanced pair gadget: `2^ℓ` strings of length `2^ℓ` such that for
//! every two positions exactly half of the strings agree on them.

use crate::bitstring::{hamming, BitString};
use crate::error::{Error, Result};
use crate::report::PropertyReport;

pub const DEFAULT_MAX_ELL: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetFamily {
    ell: u32,
    strings: Vec<BitString>,
}

impl GadgetFamily {
    /// Wraps an arbitrary family of `2^ℓ` strings of length `2^ℓ`.
    pub fn from_strings(strings: Vec<BitString>) -> Result<Self> {
        let count = strings.len();
        if count < 2 || !count.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "family size {count} is not a power of two >= 2"
            )));
        }
        if let Some(bad) = strings.iter().find(|s| s.len() != count) {
            return Err(Error::LengthMismatch {
                left: count,
                right: bad.len(),
            });
        }
        Ok(GadgetFamily {
            ell: count.trailing_zeros(),
            strings,
        })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn strings(&self) -> &[BitString] {
        &self.strings
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    /// Column `pos` read across the family, as a string of length `|S|`.
    fn column(&self, pos: usize) -> BitString {
        BitString::from_bits(self.strings.iter().map(|s| s.bit(pos)))
    }

    /// `(agree, differ)` counts of members on positions `i` and `j`.
    pub fn pair_split(&self, i: usize, j: usize) -> Result<(usize, usize)> {
        let width = self.len();
        for p in [i, j] {
            if p == 0 || p > width {
                return Err(Error::PositionOutOfRange { pos: p, len: width });
            }
        }
        let differ = hamming(&self.column(i), &self.column(j))?;
        Ok((width - differ, differ))
    }
}

pub fn build(ell: u32) -> Result<GadgetFamily> {
    build_capped(ell, DEFAULT_MAX_ELL)
}

pub fn build_capped(ell: u32, max_ell: u32) -> Result<GadgetFamily> {
    if ell < 1 || ell > max_ell {
        return Err(Error::InvalidParameter(format!(
            "ell must lie in 1..={max_ell}, got {ell}"
        )));
    }
    let mut strings: Vec<BitString> = vec!["00".parse()?, "01".parse()?];
    for _ in 1..ell {
        strings = strings
            .iter()
            .flat_map(|s| [s.concat(s), s.concat(&s.complement())])
            .collect();
    }
    Ok(GadgetFamily { ell, strings })
}

/// Checks that every position pair splits the family exactly in half.
pub fn check_half_half(fam: &GadgetFamily) -> PropertyReport {
    let mut report = PropertyReport::new(format!("half-half ell={}", fam.ell()));
    let width = fam.len();
    let columns: Vec<BitString> = (1..=width).map(|p| fam.column(p)).collect();
    let half = width / 2;
    for i in 1..=width {
        for j in i + 1..=width {
            let differ = hamming(&columns[i - 1], &columns[j - 1]).expect("equal columns");
            let agree = width - differ;
            let ok = report.record("half-half", agree == half, || {
                (
                    format!("ell={} pair={{{i},{j}}}", fam.ell()),
                    format!("{agree}/{differ}"),
                    format!("{half}/{half}"),
                )
            });
            if !ok {
                return report;
            }
        }
    }
    report
}
