use std::collections::BTreeMap;

use dashu_int::IBig;
use rayon::prelude::*;
use serde::Serialize;

use super::{Analysis, BasedAlgebra};
use crate::exact_arith::BiLaurentPoly;

/// Outcome of one axiom over every index tuple it quantifies over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub pass: bool,
    /// Number of index tuples examined.
    pub checked: u64,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub dim: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub(crate) struct Tally {
    name: &'static str,
    checked: u64,
    witness: Option<String>,
}

impl Tally {
    pub(crate) fn new(name: &'static str) -> Self {
        Self { name, checked: 0, witness: None }
    }

    pub(crate) fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub(crate) fn finish(self) -> AxiomCheck {
        AxiomCheck { name: self.name.into(), pass: self.witness.is_none(), checked: self.checked, witness: self.witness }
    }
}

/// Checks the antiautomorphism property of `!` and Q1–Q11, each exhaustively.
pub fn verify_axioms(alg: &BasedAlgebra, an: &Analysis) -> AxiomReport {
    type Check = fn(&BasedAlgebra, &Analysis) -> AxiomCheck;
    let checks: Vec<Check> = vec![antiautomorphism, q1, q2, q3, q4, q5, q6, q7, q8, q9, q10, q11];
    let checks = checks.par_iter().map(|f| f(alg, an)).collect();
    AxiomReport { algebra: alg.name().to_string(), dim: alg.dim(), checks }
}

fn antiautomorphism(alg: &BasedAlgebra, _: &Analysis) -> AxiomCheck {
    let mut t = Tally::new("antiautomorphism");
    let dim = alg.dim();
    for i in 0..dim {
        for ip in 0..dim {
            // h_{i!,i'!,j!} = h_{i',i,j}
            let lhs = alg.row(alg.bang(i), alg.bang(ip));
            let rhs = alg.row(ip, i);
            let mut mapped: Vec<_> = rhs.iter().map(|(j, f)| (alg.bang(*j), f.clone())).collect();
            mapped.sort_by_key(|x| x.0);
            t.check(*lhs == mapped, || {
                format!("b_{}♭ b_{}♭ ≠ (b_{} b_{})♭", alg.label(i), alg.label(ip), alg.label(ip), alg.label(i))
            });
        }
    }
    t.finish()
}

fn q1(alg: &BasedAlgebra, an: &Analysis) -> AxiomCheck {
    let mut t = Tally::new("Q1");
    for (i, ip, j, _) in an.jring.hstar_entries() {
        if alg.in_i0(j) {
            t.check(ip == alg.bang(i), || format!("h*({}, {}, {}) ≠ 0 with {} ≠ {}!", alg.label(i), alg.label(ip), alg.label(j), alg.label(ip), alg.label(i)));
        }
    }
    t.finish()
}

fn q2(alg: &BasedAlgebra, an: &Analysis) -> AxiomCheck {
    let mut t = Tally::new("Q2");
    for i in 0..alg.dim() {
        let hits: Vec<usize> = alg.i0().filter(|&j| an.jring.hstar(alg.bang(i), i, j) != IBig::ZERO).collect();
        t.check(hits.len() == 1, || format!("{} has {} elements j ∈ I₀ with h*({}!, {}, j) ≠ 0", alg.label(i), hits.len(), alg.label(i), alg.label(i)));
    }
    t.finish()
}

fn q3(alg: &BasedAlgebra, an: &Analysis) -> AxiomCheck {
    let mut t = Tally::new("Q3");
    let c = &an.cells;
    for i in 0..alg.dim() {
        for ip in 0..alg.dim() {
            if c.leq(ip, i) {
                t.check(c.a[ip] >= c.a[i], || format!("{} ⪯ {} but a = {} < {}", alg.label(ip), alg.label(i), c.a[ip], c.a[i]));
            }
        }
    }
    t.finish()
}

fn q4(alg: &BasedAlgebra, an: &Analysis) -> AxiomCheck {
    let mut t = Tally::new("Q4");
    for i in 0..alg.dim() {
        for j in alg.i0() {
            let v = an.jring.hstar(alg.bang(i), i, j);
            if v != IBig::ZERO {
                t.check(v == IBig::ONE, || format!("h*({}!, {}, {}) = {v}", alg.label(i), alg.label(i), alg.label(j)));
            }
        }
    }
    t.finish()
}

fn q5(alg: &BasedAlgebra, an: &Analysis) -> AxiomCheck {
    let mut t = Tally::new("Q5");
    // Every nonzero value is compared with its rotation, which covers the
    // cases where only one side of the equality vanishes.
    for (i, j, k, v) in an.jring.hstar_entries() {
        let rot = an.jring.hstar(j, k, i);
        t.check(v == rot, || format!("h*({}, {}, {}) = {v} but h*({}, {}, {}) = {rot}", alg.label(i), alg.label(j), alg.label(k), alg.label(j), alg.label(k), alg.label(i)));
    }
    t.finish()
}

fn q6(alg: &BasedAlgebra, an: &Analysis) -> AxiomCheck {
    let mut t = Tally::new("Q6");
    let c = &an.cells;
    for (i, j, k, _) in an.jring.hstar_entries() {
        let ok = c.same_left_cell(i, alg.bang(j)) && c.same_left_cell(j, alg.bang(k)) && c.same_left_cell(k, alg.bang(i));
        t.check(ok, || format!("h*({}, {}, {}) ≠ 0 but the left cells do not match", alg.label(i), alg.label(j), alg.label(k)));
    }
    t.finish()
}

fn q7(alg: &BasedAlgebra, an: &Analysis) -> AxiomCheck {
    let mut t = Tally::new("Q7");
    let c = &an.cells;
    for i in 0..alg.dim() {
        for ip in 0..alg.dim() {
            if c.left_leq(ip, i) && c.a[ip] == c.a[i] {
                t.check(c.same_left_cell(ip, i), || format!("{} ⪯_L {} with equal a but not in one left cell", alg.label(ip), alg.label(i)));
            }
        }
    }
    t.finish()
}

fn q8(alg: &BasedAlgebra, an: &Analysis) -> AxiomCheck {
    let mut t = Tally::new("Q8");
    let c = &an.cells;
    for i in 0..alg.dim() {
        for ip in 0..alg.dim() {
            if c.leq(ip, i) && c.a[ip] == c.a[i] {
                t.check(c.same_two_sided_cell(ip, i), || format!("{} ⪯ {} with equal a but not in one two-sided cell", alg.label(ip), alg.label(i)));
            }
        }
    }
    t.finish()
}

fn q9(alg: &BasedAlgebra, an: &Analysis) -> AxiomCheck {
    let mut t = Tally::new("Q9");
    for cell in &an.cells.left_cells {
        let d: Vec<usize> = cell.iter().copied().filter(|&j| alg.in_i0(j)).collect();
        t.check(d.len() == 1, || format!("the left cell of {} meets I₀ in {} elements", alg.label(cell[0]), d.len()));
        if let [j] = d[..] {
            for &i in cell {
                let v = an.jring.hstar(alg.bang(i), i, j);
                t.check(v == IBig::ONE, || format!("h*({}!, {}, {}) = {v}", alg.label(i), alg.label(i), alg.label(j)));
            }
        }
    }
    t.finish()
}

fn q10(alg: &BasedAlgebra, an: &Analysis) -> AxiomCheck {
    let mut t = Tally::new("Q10");
    for i in 0..alg.dim() {
        t.check(an.cells.same_two_sided_cell(i, alg.bang(i)), || format!("{} and {}! lie in different two-sided cells", alg.label(i), alg.label(i)));
    }
    t.finish()
}

/// For all `i, i', j, k` with `a(j) = a(k)`:
/// `sum_{j'} h'_{k,i',j'} h_{i,j',j} = sum_{j'} h_{i,k,j'} h'_{j',i',j}`,
/// as polynomials in the independent variables `v` and `v'`.
fn q11(alg: &BasedAlgebra, an: &Analysis) -> AxiomCheck {
    let dim = alg.dim();
    let a = &an.cells.a;
    let results: Vec<(u64, Option<String>)> = (0..dim)
        .into_par_iter()
        .map(|i| {
            let mut checked = 0u64;
            for k in 0..dim {
                for ip in 0..dim {
                    // Left side: sum_{j'} h'_{k,i',j'} h_{i,j',j}.
                    let mut lhs: BTreeMap<usize, BiLaurentPoly> = BTreeMap::new();
                    for (jp, f) in alg.row(k, ip) {
                        for (j, g) in alg.row(i, *jp) {
                            lhs.entry(*j).or_default().add_tensor(g, f);
                        }
                    }
                    // Right side: sum_{j'} h_{i,k,j'} h'_{j',i',j}.
                    let mut rhs: BTreeMap<usize, BiLaurentPoly> = BTreeMap::new();
                    for (jp, f) in alg.row(i, k) {
                        for (j, g) in alg.row(*jp, ip) {
                            rhs.entry(*j).or_default().add_tensor(f, g);
                        }
                    }
                    for j in 0..dim {
                        if a[j] != a[k] {
                            continue;
                        }
                        checked += 1;
                        let zero = BiLaurentPoly::zero();
                        let l = lhs.get(&j).unwrap_or(&zero);
                        let r = rhs.get(&j).unwrap_or(&zero);
                        if l != r {
                            let w = format!(
                                "i = {}, i' = {}, j = {}, k = {}",
                                alg.label(i),
                                alg.label(ip),
                                alg.label(j),
                                alg.label(k)
                            );
                            return (checked, Some(w));
                        }
                    }
                }
            }
            (checked, None)
        })
        .collect();
    let checked = results.iter().map(|r| r.0).sum();
    let witness = results.into_iter().find_map(|r| r.1);
    AxiomCheck { name: "Q11".into(), pass: witness.is_none(), checked, witness }
}
