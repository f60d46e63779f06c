//! Hardness reductions: 3SAT to NAE-3SAT, and NAE-3SAT to weighted Mirkin
//! distance minimization.

mod formula;
mod mirkin;

pub use formula::{
    Clause, Cnf, CnfFormula, Formula, Literal, Nae, NaeFormula, Semantics, MAX_TRUTH_TABLE_VARS,
};
pub use mirkin::{
    clause_triple, gamma, padded_size, reduce_nae_to_mirkin, variable_gadget, ReductionCertificate,
    VarMapping,
};

use crate::error::{Error, Result};

/// For clause `j` with literals `(a, b, c)` emits `(a, b, y_j)` and
/// `(c, z, ¬y_j)`, where `y_j = n + j` and `z = n + m + 1`.
pub fn reduce_3sat_to_nae(phi: &CnfFormula) -> Result<NaeFormula> {
    let n = phi.num_vars();
    let m = u32::try_from(phi.clauses().len())
        .map_err(|_| Error::overflow("clause count"))?;
    let z_var = n
        .checked_add(m)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::overflow("variable count"))?;
    let z = Literal::pos(z_var);
    let mut clauses = Vec::with_capacity(2 * phi.clauses().len());
    for (j, c) in phi.clauses().iter().enumerate() {
        let y = Literal::pos(n + j as u32 + 1);
        clauses.push([c[0], c[1], y]);
        clauses.push([c[2], z, y.negate()]);
    }
    NaeFormula::new(z_var, clauses)
}

/// Maps a NAE assignment of the image back to the source variables:
/// `x_i` is true iff it differs from `z`.
pub fn nae_to_sat_assignment(nae_assignment: &[bool], source_vars: u32) -> Vec<bool> {
    let z = *nae_assignment.last().expect("image has at least the z variable");
    nae_assignment[..source_vars as usize]
        .iter()
        .map(|&x| x != z)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(lits: [i64; 3]) -> Clause {
        lits.map(|v| Literal::from_dimacs(v).unwrap())
    }

    #[test]
    fn single_clause_image() {
        let phi = CnfFormula::new(3, vec![clause([1, 2, 3])]).unwrap();
        let psi = reduce_3sat_to_nae(&phi).unwrap();
        assert_eq!(psi.num_vars(), 5);
        assert_eq!(psi.clauses(), &[clause([1, 2, 4]), clause([3, 5, -4])]);
    }

    #[test]
    fn dimacs_image_matches_expected_text() {
        let phi = CnfFormula::parse_dimacs("p cnf 3 1\n1 -2 3 0\n").unwrap();
        let psi = reduce_3sat_to_nae(&phi).unwrap();
        assert_eq!(psi.to_dimacs(), "p nae 5 2\n1 -2 4 0\n3 5 -4 0\n");
    }

    #[test]
    fn empty_formula_gains_only_z() {
        let phi = CnfFormula::new(4, vec![]).unwrap();
        let psi = reduce_3sat_to_nae(&phi).unwrap();
        assert_eq!(psi.num_vars(), 5);
        assert!(psi.clauses().is_empty());
    }

    #[test]
    fn satisfiability_preserved_on_every_single_clause() {
        for signs in 0..8 {
            for perm in [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]] {
                let lits = [0, 1, 2].map(|k| if signs >> k & 1 == 1 { -perm[k] } else { perm[k] });
                let phi = CnfFormula::new(3, vec![clause(lits)]).unwrap();
                let psi = reduce_3sat_to_nae(&phi).unwrap();
                assert_eq!(phi.is_satisfiable().unwrap(), psi.is_satisfiable().unwrap());
                let a = psi.satisfying_assignment().unwrap().unwrap();
                assert!(phi.is_satisfied_by(&nae_to_sat_assignment(&a, 3)));
            }
        }
    }
}
