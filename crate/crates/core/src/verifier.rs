//! Executable checks of the structural facts the solvers and reductions
//! rely on, each producing a [`PropertyReport`].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::gadget::{build, check_half_half};
use crate::instance::{mirkin_total, MirkinInstance};
use crate::num::Scalar;
use crate::reduction::{
    clause_triple, gamma, nae_to_sat_assignment, reduce_3sat_to_nae, reduce_nae_to_mirkin,
    variable_gadget, Clause, CnfFormula, Literal, NaeFormula,
};
use crate::report::PropertyReport;
use crate::solver::{
    build_ilp, column_types, solve_brute, solve_ilp, solve_types, Decision, SolveOptions,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform strings of uniform length `1..=max_n`, `1..=max_m` of them, with
/// multiplicities uniform in `1..=3`.
pub fn random_instance<R: Rng>(rng: &mut R, max_n: usize, max_m: usize) -> MirkinInstance {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    let entries = (0..m)
        .map(|_| {
            let s = BitString::from_bits((0..n).map(|_| rng.gen_bool(0.5)));
            (s, rng.gen_range(1..=3))
        })
        .collect();
    MirkinInstance::new(entries, None).expect("well-formed random instance")
}

/// Random clause on three distinct variables of `1..=num_vars` with random
/// signs and literal order.
pub fn random_clause<R: Rng>(rng: &mut R, num_vars: u32) -> Clause {
    let vars: Vec<u32> = (1..=num_vars).collect();
    let mut picked: Vec<u32> = vars.choose_multiple(rng, 3).copied().collect();
    picked.shuffle(rng);
    [0, 1, 2].map(|k| Literal::new(picked[k], rng.gen_bool(0.5)).expect("index >= 1"))
}

/// All `3`-literal clauses over `(x1, x2, x3)` in variable order.
pub fn sign_patterns() -> Vec<Clause> {
    (0..8u32)
        .map(|signs| [0, 1, 2].map(|k| Literal::new(k + 1, signs >> k & 1 == 0).unwrap()))
        .collect()
}

/// Every sequence of at most two clauses drawn from [`sign_patterns`].
pub fn small_cnf_formulas() -> Vec<CnfFormula> {
    let pats = sign_patterns();
    let mut out = vec![CnfFormula::new(3, vec![]).unwrap()];
    for a in &pats {
        out.push(CnfFormula::new(3, vec![*a]).unwrap());
    }
    for a in &pats {
        for b in &pats {
            out.push(CnfFormula::new(3, vec![*a, *b]).unwrap());
        }
    }
    out
}

pub fn random_cnf<R: Rng>(rng: &mut R, num_vars: u32, clauses: usize) -> CnfFormula {
    let cs = (0..clauses).map(|_| random_clause(rng, num_vars)).collect();
    CnfFormula::new(num_vars, cs).expect("valid random formula")
}

pub fn verify_gadget(max_ell: u32) -> PropertyReport {
    let mut report = PropertyReport::new("gadget");
    for ell in 1..=max_ell {
        match build(ell) {
            Ok(fam) => {
                let sub = check_half_half(&fam);
                report.constant(format!("pairs.ell{ell}"), sub.checks_run());
                report.absorb(sub);
            }
            Err(e) => {
                report.record("build", false, || (format!("ell={ell}"), e.to_string(), "family".into()));
            }
        }
    }
    report
}

/// Checks the variable gadget's two-value behavior, the clause triple's
/// minimum, and that the gadget penalty dominates the clause budget.
pub fn verify_claims(ell: u32, trials: usize, seed: u64) -> Result<PropertyReport> {
    if ell < 2 {
        return Err(Error::InvalidParameter(format!("ell must be >= 2, got {ell}")));
    }
    let mut rng = rng(seed);
    let mut report = PropertyReport::new(format!("claims ell={ell}"));
    let n = (1u32 << ell) + 1;
    let width = 2 * n as usize;
    let n64 = n as i64;
    let clause_opt = 3 * n64 * n64 - 11;

    // Variable gadgets.
    let mut base: Option<i64> = None;
    let mut size = 0;
    for r in 1..=n {
        let gadget = variable_gadget(r, ell)?;
        size = gadget.len() as i64;
        let inst = MirkinInstance::unweighted(gadget)?;
        let doubled = gamma(&BitString::zeros(n as usize));
        let b = mirkin_total::<i64>(&doubled, &inst)?;
        let reference = *base.get_or_insert(b);
        report.record("gadget-base-independent-of-r", b == reference, || {
            (format!("r={r}"), b.to_string(), reference.to_string())
        });
        let p = 2 * r as usize - 1;
        let mut split = doubled.clone();
        split.set(p, true)?;
        let mut candidates = vec![doubled, split];
        candidates.extend(
            (0..trials).map(|_| BitString::from_bits((0..width).map(|_| rng.gen_bool(0.5)))),
        );
        for cand in candidates {
            let v = mirkin_total::<i64>(&cand, &inst)?;
            let uniform = cand.bit(p) == cand.bit(p + 1);
            let expected = if uniform { reference } else { reference + size };
            report.record("gadget-two-values", v == expected, || {
                (format!("r={r} ell={ell} s*={cand}"), v.to_string(), expected.to_string())
            });
        }
    }
    let base = base.expect("n >= 5");
    report.record("gadget-gap-is-size", size == 1 << (ell + 2), || {
        ("|S_r|".into(), size.to_string(), (1i64 << (ell + 2)).to_string())
    });
    report.constant("n_padded", n);
    report.constant("gadget_size", size);
    report.constant("B00", base);
    report.constant("gap", size);

    // Clause triples, exhaustive over assignments and clauses.
    let all_equal = 3 * n64 * n64 - 3;
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for signs in 0..8u32 {
                    let clause: Clause = [a, b, c]
                        .iter()
                        .enumerate()
                        .map(|(k, &v)| Literal::new(v, signs >> k & 1 == 0).unwrap())
                        .collect::<Vec<_>>()
                        .try_into()
                        .unwrap();
                    let triple = MirkinInstance::unweighted(clause_triple(&clause, n)?)?;
                    for mask in 0u64..1 << n {
                        let s = BitString::from_bits((0..n).map(|i| mask >> i & 1 == 1));
                        let assignment: Vec<bool> = s.iter().collect();
                        let nae = NaeFormula::clause_satisfied(&clause, &assignment);
                        let v = mirkin_total::<i64>(&gamma(&s), &triple)?;
                        let expected = if nae { clause_opt } else { all_equal };
                        report.record("clause-triple-value", v == expected, || {
                            (
                                format!("clause=({} {} {}) s={s}", clause[0], clause[1], clause[2]),
                                v.to_string(),
                                expected.to_string(),
                            )
                        });
                        report.record("clause-triple-lower-bound", v >= clause_opt, || {
                            (format!("s={s}"), v.to_string(), format!(">= {clause_opt}"))
                        });
                    }
                }
            }
        }
    }
    report.constant("clause_optimum", clause_opt);

    let copies = 3 * n64 * n64;
    report.record("budget-dominance", copies * size > clause_opt, || {
        ("m=1".into(), (copies * size).to_string(), format!("> {clause_opt}"))
    });
    Ok(report)
}

/// Exhaustively compares the linear objective with forced products against
/// the direct distance, for every type assignment.
pub fn check_linearization<C: Scalar>(inst: &MirkinInstance) -> Result<bool> {
    let model = build_ilp::<C>(inst, None)?;
    let k = model.n_types();
    for mask in 0u64..1 << k {
        let x: Vec<bool> = (0..k).map(|j| mask >> j & 1 == 1).collect();
        let y = model.forced_y(&x);
        if !model.is_feasible(&x, &y)? {
            return Ok(false);
        }
        if model.objective(&x, &y)? != mirkin_total::<C>(&model.decode(&x), inst)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cross-checks the three backends on one instance.
pub fn compare_backends(report: &mut PropertyReport, inst: &MirkinInstance, label: &str) -> Result<()> {
    let opts = SolveOptions::default();
    let brute = solve_brute::<i64>(inst, &opts)?;
    let types = solve_types::<i64>(inst, &opts)?;
    let ilp = solve_ilp(&build_ilp::<i64>(inst, None)?, &opts)?;
    let witness = || format!("{label} instance=[{}]", render_entries(inst));
    report.record("values-agree", brute.value == types.value && types.value == ilp.value, || {
        (
            witness(),
            format!("brute={} types={} ilp={}", brute.value, types.value, ilp.value),
            "equal".into(),
        )
    });
    report.record("argmins-agree", brute.argmin == types.argmin && types.argmin == ilp.argmin, || {
        (
            witness(),
            format!("brute={} types={} ilp={}", brute.argmin, types.argmin, ilp.argmin),
            "equal".into(),
        )
    });
    // Type restriction: the type-constant minimum is the global minimum.
    report.record("type-restriction-exact", types.value == brute.value, || {
        (witness(), types.value.to_string(), brute.value.to_string())
    });
    let expected_brute = 1u64 << (inst.n() - 1);
    report.record("brute-candidates", brute.candidates == expected_brute, || {
        (witness(), brute.candidates.to_string(), expected_brute.to_string())
    });
    let expected_types = 1u64 << column_types(inst).n_types();
    report.record("types-candidates", types.candidates == expected_types, || {
        (witness(), types.candidates.to_string(), expected_types.to_string())
    });
    if column_types(inst).n_types() <= 10 {
        let ok = check_linearization::<i64>(inst)?;
        report.record("linearization", ok, || (witness(), "mismatch".into(), "identity".into()));
    }
    Ok(())
}

fn render_entries(inst: &MirkinInstance) -> String {
    inst.entries()
        .iter()
        .map(|e| format!("{}x{}", e.string, e.multiplicity))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn verify_backends(instances: usize, max_n: usize, max_m: usize, seed: u64) -> Result<PropertyReport> {
    if max_n > crate::solver::DEFAULT_MAX_N {
        return Err(Error::InvalidParameter(format!(
            "max_n {max_n} exceeds brute-force cap {}",
            crate::solver::DEFAULT_MAX_N
        )));
    }
    let mut rng = rng(seed);
    let mut report = PropertyReport::new("backends");
    for t in 0..instances {
        let inst = random_instance(&mut rng, max_n, max_m);
        compare_backends(&mut report, &inst, &format!("seed={seed} trial={t}"))?;
    }
    Ok(report)
}

/// Decodes doubled blocks `s[2i−1] = s[2i]` into an assignment of the
/// first `vars` variables; `None` if some block of the whole string is split.
pub fn read_back(s: &BitString, vars: u32) -> Option<Vec<bool>> {
    let blocks = s.len() / 2;
    let bits: Vec<bool> = (1..=blocks)
        .map(|i| (s.bit(2 * i - 1) == s.bit(2 * i)).then(|| s.bit(2 * i)))
        .collect::<Option<_>>()?;
    Some(bits[..vars as usize].to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaeOutcome {
    pub nae_satisfiable: bool,
    pub optimum: i64,
    pub budget: u64,
    pub decision: Decision,
    /// Read-back succeeded and, on YES, NAE-satisfies the formula.
    pub read_back_ok: bool,
    pub assignment: Option<Vec<bool>>,
}

/// Reduces `psi` to a weighted instance and decides it by brute force.
pub fn decide_nae_via_mirkin(psi: &NaeFormula, opts: &SolveOptions) -> Result<NaeOutcome> {
    let (inst, cert) = reduce_nae_to_mirkin(psi)?;
    let sol = solve_brute::<i64>(&inst, opts)?;
    let decision = sol.decision.expect("reduced instance carries a budget");
    let assignment = read_back(&sol.argmin, psi.num_vars());
    let read_back_ok = match decision {
        Decision::Yes => assignment.as_ref().is_some_and(|a| psi.is_satisfied_by(a)),
        Decision::No => true,
    };
    Ok(NaeOutcome {
        nae_satisfiable: psi.is_satisfiable()?,
        optimum: sol.value,
        budget: cert.budget,
        decision,
        read_back_ok,
        assignment,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOutcome {
    pub sat: bool,
    pub nae: bool,
    /// `None` when the image has no clauses and no budget exists.
    pub mirkin: Option<NaeOutcome>,
    /// A YES answer maps back to a satisfying assignment of the source.
    pub sat_read_back_ok: bool,
}

impl PipelineOutcome {
    pub fn consistent(&self) -> bool {
        self.sat == self.nae
            && self.sat_read_back_ok
            && self.mirkin.as_ref().is_none_or(|m| {
                m.read_back_ok && (m.decision == Decision::Yes) == self.nae && m.nae_satisfiable == self.nae
            })
    }
}

/// 3SAT → NAE-3SAT → Mirkin, answering each stage independently.
pub fn run_pipeline(phi: &CnfFormula, opts: &SolveOptions) -> Result<PipelineOutcome> {
    let psi = reduce_3sat_to_nae(phi)?;
    let sat = phi.is_satisfiable()?;
    let nae = psi.is_satisfiable()?;
    let mirkin = if psi.clauses().is_empty() {
        None
    } else {
        Some(decide_nae_via_mirkin(&psi, opts)?)
    };
    let sat_read_back_ok = match mirkin.as_ref().and_then(|m| m.assignment.as_ref()) {
        Some(a) if mirkin.as_ref().unwrap().decision == Decision::Yes => {
            phi.is_satisfied_by(&nae_to_sat_assignment(a, phi.num_vars()))
        }
        _ => true,
    };
    Ok(PipelineOutcome {
        sat,
        nae,
        mirkin,
        sat_read_back_ok,
    })
}

/// Four clauses over three variables that rule out every assignment.
pub fn nae_unsatisfiable_example() -> NaeFormula {
    let c = |a: i64, b: i64, d: i64| [a, b, d].map(|v| Literal::from_dimacs(v).unwrap());
    NaeFormula::new(3, vec![c(1, 2, 3), c(1, 2, -3), c(1, -2, 3), c(-1, 2, 3)]).unwrap()
}

pub fn verify_reductions(seed: u64) -> Result<PropertyReport> {
    let mut rng = rng(seed);
    let mut report = PropertyReport::new("reductions");
    let opts = SolveOptions::default();

    let mut cnfs = small_cnf_formulas();
    cnfs.extend((0..50).map(|_| random_cnf(&mut rng, 4, 3)));
    for phi in &cnfs {
        let psi = reduce_3sat_to_nae(phi)?;
        let (sat, nae) = (phi.is_satisfiable()?, psi.is_satisfiable()?);
        report.record("sat-iff-nae", sat == nae, || {
            (phi.to_dimacs().replace('\n', " / "), nae.to_string(), sat.to_string())
        });
    }

    let mut naes: Vec<NaeFormula> = Vec::new();
    for perm in [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]] {
        for signs in 0..8u32 {
            let clause = [0, 1, 2].map(|k| Literal::new(perm[k], signs >> k & 1 == 0).unwrap());
            naes.push(NaeFormula::new(3, vec![clause]).unwrap());
        }
    }
    naes.push(nae_unsatisfiable_example());
    for _ in 0..20 {
        let m = rng.gen_range(2..=6);
        naes.push(NaeFormula::new(4, (0..m).map(|_| random_clause(&mut rng, 4)).collect()).unwrap());
    }
    for psi in &naes {
        let out = decide_nae_via_mirkin(psi, &opts)?;
        let witness = || psi.to_dimacs().replace('\n', " / ");
        report.record(
            "nae-iff-mirkin",
            (out.decision == Decision::Yes) == out.nae_satisfiable,
            || (witness(), format!("opt={} k={}", out.optimum, out.budget), out.nae_satisfiable.to_string()),
        );
        if out.decision == Decision::Yes {
            report.record("optimizer-doubled", out.assignment.is_some(), || {
                (witness(), "split block".into(), "doubled blocks".into())
            });
        }
        report.record("read-back", out.read_back_ok, || {
            (witness(), format!("{:?}", out.assignment), "NAE-satisfying".into())
        });
    }

    for phi in small_cnf_formulas().iter().filter(|f| f.clauses().len() == 1) {
        let out = run_pipeline(phi, &opts)?;
        report.record("pipeline", out.consistent(), || {
            (phi.to_dimacs().replace('\n', " / "), format!("{out:?}"), "consistent".into())
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadget_suite_counts_pairs() {
        let r = verify_gadget(6);
        assert!(r.passed(), "{r}");
        assert!(r.constants.contains(&("pairs.ell6".into(), "2016".into())));
        let one = verify_gadget(1);
        assert_eq!(one.checks_run(), 1);
    }

    #[test]
    fn mutated_family_is_caught() {
        let fam = build(3).unwrap();
        let mut strings = fam.strings().to_vec();
        let flipped = !strings[2].bit(4);
        strings[2].set(4, flipped).unwrap();
        let mutated = crate::gadget::GadgetFamily::from_strings(strings).unwrap();
        let r = check_half_half(&mutated);
        assert!(!r.passed());
        assert!(r.failures[0].witness.contains("pair="));
    }

    #[test]
    fn gadget_and_clause_values_at_five_variables() {
        let r = verify_claims(2, 100, 7).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.constants.contains(&("clause_optimum".into(), "64".into())));
        assert!(r.constants.contains(&("B00".into(), "352".into())));
        assert!(verify_claims(1, 1, 0).is_err());
    }

    #[test]
    fn clause_triple_spot_values() {
        let n = 5i64;
        let clause = [Literal::pos(1), Literal::pos(2), Literal::pos(3)];
        let triple = MirkinInstance::unweighted(clause_triple(&clause, 5).unwrap()).unwrap();
        let all_true = gamma(&"11100".parse().unwrap());
        assert_eq!(mirkin_total::<i64>(&all_true, &triple).unwrap(), 3 * n * n - 3);
        let nae = gamma(&"10000".parse().unwrap());
        assert_eq!(
            mirkin_total::<i64>(&nae, &triple).unwrap(),
            2 * (n * n - 1) + (n * n - 9)
        );
    }

    #[test]
    fn backend_spot_instances() {
        let mut r = PropertyReport::new("spot");
        let same = MirkinInstance::unweighted(vec!["0110".parse::<BitString>().unwrap(); 3]).unwrap();
        compare_backends(&mut r, &same, "identical").unwrap();
        let pair = MirkinInstance::unweighted(["01".parse().unwrap(), "10".parse().unwrap()]).unwrap();
        compare_backends(&mut r, &pair, "complement").unwrap();
        assert!(r.passed(), "{r}");
        let sol = solve_brute::<i64>(&pair, &SolveOptions::default()).unwrap();
        assert_eq!((sol.value, sol.argmin.to_string().as_str()), (0, "01"));
    }

    #[test]
    fn backends_small_run() {
        let r = verify_backends(60, 10, 5, 3).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn unsatisfiable_nae_maps_above_budget() {
        let out = decide_nae_via_mirkin(&nae_unsatisfiable_example(), &SolveOptions::default()).unwrap();
        assert!(!out.nae_satisfiable);
        assert_eq!(out.decision, Decision::No);
        assert!(out.optimum as u64 > out.budget);
    }

    #[test]
    fn positive_clause_answers_yes() {
        let psi = NaeFormula::new(3, vec![[Literal::pos(1), Literal::pos(2), Literal::pos(3)]]).unwrap();
        let out = decide_nae_via_mirkin(&psi, &SolveOptions::default()).unwrap();
        assert_eq!(out.decision, Decision::Yes);
        assert!(out.read_back_ok);
    }

    #[test]
    fn reductions_suite_passes() {
        let r = verify_reductions(11).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn read_back_rejects_split_blocks() {
        assert_eq!(read_back(&"110011".parse().unwrap(), 2), Some(vec![true, false]));
        assert_eq!(read_back(&"100011".parse().unwrap(), 2), None);
    }

    #[test]
    fn reports_are_deterministic() {
        assert_eq!(verify_backends(20, 8, 4, 5).unwrap(), verify_backends(20, 8, 4, 5).unwrap());
        assert_eq!(verify_claims(2, 10, 1).unwrap(), verify_claims(2, 10, 1).unwrap());
    }
}
