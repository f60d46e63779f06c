//! Reads exported LP files back with a minimal independent parser and
//! evaluates them against the direct objective.

use std::collections::BTreeMap;

use mirkin::solver::{build_ilp, column_types, export_lp};
use mirkin::verifier::{random_instance, rng};
use mirkin::{mirkin_total, BitString, MirkinInstance};

struct Lp {
    constant: i64,
    objective: BTreeMap<String, i64>,
    rows: Vec<(BTreeMap<String, i64>, i64)>,
    binaries: Vec<String>,
}

fn parse_terms(s: &str) -> BTreeMap<String, i64> {
    let mut out = BTreeMap::new();
    let mut sign = 1;
    let mut coef: Option<i64> = None;
    for tok in s.split_whitespace() {
        match tok {
            "+" => sign = 1,
            "-" => sign = -1,
            t if t.chars().all(|c| c.is_ascii_digit()) => coef = Some(t.parse().unwrap()),
            var => {
                *out.entry(var.to_string()).or_insert(0) += sign * coef.take().unwrap_or(1);
                sign = 1;
            }
        }
    }
    out
}

fn parse_lp(text: &str) -> Lp {
    let mut lp = Lp {
        constant: 0,
        objective: BTreeMap::new(),
        rows: Vec::new(),
        binaries: Vec::new(),
    };
    let mut section = "";
    for line in text.lines() {
        if let Some(c) = line.strip_prefix("\\ objective constant: ") {
            lp.constant = c.parse().unwrap();
            continue;
        }
        if line.starts_with('\\') {
            continue;
        }
        match line {
            "Minimize" | "Subject To" | "Binary" | "End" => {
                section = line;
                continue;
            }
            _ => {}
        }
        let body = line.split_once(':').map_or(line, |(_, b)| b);
        match section {
            "Minimize" => lp.objective = parse_terms(body),
            "Subject To" => {
                let (lhs, rhs) = body.split_once("<=").unwrap();
                lp.rows.push((parse_terms(lhs), rhs.trim().parse().unwrap()));
            }
            "Binary" => lp.binaries.push(line.trim().to_string()),
            _ => panic!("unexpected line {line:?}"),
        }
    }
    lp
}

fn eval(terms: &BTreeMap<String, i64>, values: &BTreeMap<String, i64>) -> i64 {
    terms.iter().map(|(v, c)| c * values[v]).sum()
}

fn check_instance(inst: &MirkinInstance) {
    let model = build_ilp::<i64>(inst, None).unwrap();
    let lp = parse_lp(&export_lp(&model).unwrap());
    let summary = column_types(inst);
    let k = summary.n_types();
    assert_eq!(lp.binaries.len(), k + k * (k - 1) / 2);
    assert_eq!(lp.rows.len(), 3 * k * (k - 1) / 2);

    for mask in 0u32..1 << k {
        let mut values = BTreeMap::new();
        for j in 0..k {
            values.insert(format!("x{}", j + 1), (mask >> j & 1) as i64);
        }
        for a in 0..k {
            for b in a + 1..k {
                let y = (mask >> a & 1) * (mask >> b & 1);
                values.insert(format!("y_{}_{}", a + 1, b + 1), y as i64);
            }
        }
        for (row, rhs) in &lp.rows {
            assert!(eval(row, &values) <= *rhs);
        }
        // Candidate: every column takes the value of its type's variable.
        let candidate = BitString::from_bits(
            summary.column_type.iter().map(|&t| mask >> t & 1 == 1),
        );
        let direct = mirkin_total::<i64>(&candidate, inst).unwrap();
        assert_eq!(lp.constant + eval(&lp.objective, &values), direct, "mask {mask:b}");
    }
}

#[test]
fn example_lp_round_trip() {
    let inst = MirkinInstance::unweighted(["0000", "0001", "1110"].map(|s| s.parse().unwrap())).unwrap();
    check_instance(&inst);
}

#[test]
fn random_lp_round_trips() {
    let mut r = rng(11);
    for _ in 0..60 {
        let inst = random_instance(&mut r, 10, 4);
        if column_types(&inst).n_types() <= 8 {
            check_instance(&inst);
        }
    }
}

#[test]
fn wrong_product_is_cut_off() {
    let inst = MirkinInstance::unweighted(["0011", "0101"].map(|s| s.parse().unwrap())).unwrap();
    let lp = parse_lp(&export_lp(&build_ilp::<i64>(&inst, None).unwrap()).unwrap());
    let mut values: BTreeMap<String, i64> = lp.binaries.iter().map(|b| (b.clone(), 0)).collect();
    values.insert("y_1_2".into(), 1);
    assert!(lp.rows.iter().any(|(row, rhs)| eval(row, &values) > *rhs));
    values.insert("x1".into(), 1);
    values.insert("x2".into(), 1);
    values.insert("y_1_2".into(), 0);
    assert!(lp.rows.iter().any(|(row, rhs)| eval(row, &values) > *rhs));
}
