//! The ten acceptance criteria, one line of output each.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{kl_oracle, space, FLAVORS, PRESETS};
use monohecke::cells_jring::*;
use monohecke::exact_arith::IBig;
use monohecke::hecke::HeckeAlgebra;
use monohecke::reps::*;
use monohecke::torus_chars::CharSpace;
use monohecke::weyl::Flavor;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const SEED: u64 = 0x5eed;
const CAP: usize = DEFAULT_GROUP_CAP;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn full_hecke(sp: &Arc<CharSpace>) -> (HeckeAlgebra, BasedAlgebra) {
    let h = HeckeAlgebra::new(sp.clone());
    let alg = hecke_full(&h, h.h_table()).unwrap();
    (h, alg)
}

/// Every algebra of criterion 2 for one configuration: H_λ, H'_λ, 1_λH1_λ,
/// E and H_𝔬 for each orbit (H_𝔬 both transported and cut out of H), and H.
fn small_algebras(sp: &Arc<CharSpace>) -> Vec<BasedAlgebra> {
    let (_, full) = full_hecke(sp);
    let mut out = Vec::new();
    for o in sp.orbits() {
        let chain = MatrixChain::new(sp, o[0]).unwrap();
        out.push(chain.transported(sp).unwrap());
        out.push(hecke_orbit(sp, &full, &o).unwrap());
        out.extend([chain.coxeter, chain.extended, chain.corner, chain.matrix]);
    }
    out.push(full);
    out
}

fn small_configs() -> Vec<(&'static str, Flavor, u32)> {
    let mut v = Vec::new();
    for t in ["A1", "A2", "B2"] {
        for f in FLAVORS {
            for n in [1, 2] {
                v.push((t, f, n));
            }
        }
    }
    v
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (mut subgroups, mut pairs) = (0, 0);
    for t in ["A1", "A2", "A3", "A4", "B2", "B3", "G2"] {
        for f in FLAVORS {
            for n in 1..=3 {
                let sp = space(t, f, n);
                let masks: BTreeSet<_> = sp.iter().map(|l| sp.r_lambda(l)).collect();
                for m in masks {
                    let wl = sp.reflection_subgroup(m);
                    let k = wl.kl();
                    pairs += kl_oracle(wl.coxeter(), |y, w| k.p_v(y, w)).map_err(|e| format!("{t} {f:?} n={n}: {e}"))?;
                    subgroups += 1;
                }
            }
        }
    }
    let took = start.elapsed();
    ensure(took <= Duration::from_secs(300), || format!("took {took:?}"))?;
    Ok(format!("{subgroups} reflection subgroups, {pairs} Bruhat pairs, {took:.1?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (mut algebras, mut tuples) = (0, 0u64);
    for (t, f, n) in small_configs() {
        let sp = space(t, f, n);
        for alg in small_algebras(&sp) {
            let an = alg.analyze();
            let rep = verify_axioms(&alg, &an);
            for c in &rep.checks {
                ensure(c.pass, || format!("{t} {f:?} n={n} {}: {} fails at {:?}", alg.name(), c.name, c.witness))?;
                tuples += c.checked;
            }
            let d = an.distinguished_from_hstar(&alg);
            ensure((0..alg.dim()).all(|i| d[i] == alg.in_i0(i)), || format!("{t} {f:?} n={n} {}: I₀ disagrees with the h* characterisation", alg.name()))?;
            algebras += 1;
        }
    }
    let took = start.elapsed();
    ensure(took <= Duration::from_secs(900), || format!("took {took:?}"))?;
    Ok(format!("{algebras} algebras, {tuples} index tuples, {took:.1?}"))
}

fn random_elt(rng: &mut ChaCha8Rng, dim: usize) -> JElt {
    let terms = rng.gen_range(1..=4);
    (0..terms).map(|_| (rng.gen_range(0..dim), IBig::from(rng.gen_range(-3i64..=3)))).collect()
}

fn criterion_3() -> Outcome {
    let mut rings = Vec::new();
    for (t, f, n) in small_configs() {
        rings.extend(small_algebras(&space(t, f, n)));
    }
    for t in PRESETS {
        rings.push(coxeter_hecke(&space(t, Flavor::Adjoint, 1).w_lambda(0)).unwrap());
    }
    for t in ["G2", "A3"] {
        rings.push(full_hecke(&space(t, Flavor::SimplyConnected, 2)).1);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut pairs, mut random) = (0u64, 0u64);
    for alg in &rings {
        let j = alg.analyze().jring;
        let dim = j.dim();
        for i in 0..dim {
            for k in 0..dim {
                let tau = j.tau(&j.mul(&j.basis(i), &j.basis(k)));
                let expect = IBig::from(u8::from(k == j.bang(i)));
                ensure(tau == expect, || format!("{}: τ(t_{} t_{}) = {tau}", alg.name(), alg.label(i), alg.label(k)))?;
                pairs += 1;
            }
        }
        for _ in 0..10_000 {
            let (x, y) = (random_elt(&mut rng, dim), random_elt(&mut rng, dim));
            ensure(j.tau(&j.mul(&x, &y)) == j.tau(&j.mul(&y, &x)), || format!("{}: τ(ξξ') ≠ τ(ξ'ξ) for {x:?}, {y:?}", alg.name()))?;
            random += 1;
        }
    }
    Ok(format!("{} J-rings, {pairs} basis pairs, {random} random pairs", rings.len()))
}

fn triples_in_cells(an: &Analysis, rng: &mut ChaCha8Rng, samples: usize) -> Vec<(usize, [usize; 3])> {
    let mut out = Vec::new();
    for (c, members) in an.cells.two_sided_cells.iter().enumerate() {
        for _ in 0..samples {
            let mut pick = || members[rng.gen_range(0..members.len())];
            out.push((c, [pick(), pick(), pick()]));
        }
    }
    out
}

fn check_truncation(name: &str, alg: &BasedAlgebra, an: &Analysis, products: &Products, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let triples = triples_in_cells(an, rng, 200);
    for (c, seq) in &triples {
        let coeffs = products(seq);
        an.check_product_bounds(seq, &coeffs).map_err(|e| format!("{name}: {e}"))?;
        let via_h = an.truncate(*c, 3, &coeffs);
        let via_j: JElt = an.jring.product(seq).into_iter().filter(|(_, x)| *x != IBig::ZERO).collect();
        ensure(via_h == via_j, || format!("{name}: t_{} t_{} t_{} disagrees: {via_j:?} vs {via_h:?}", alg.label(seq[0]), alg.label(seq[1]), alg.label(seq[2])))?;
        let pair = products(&seq[..2]);
        an.check_product_bounds(&seq[..2], &pair).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(triples.len())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut triples = 0;
    for t in ["A1", "A2", "B2", "G2"] {
        for f in FLAVORS {
            for n in [1, 2] {
                let sp = space(t, f, n);
                let (h, alg) = full_hecke(&sp);
                let an = alg.analyze();
                let products = hecke_products(&h, &alg);
                triples += check_truncation(&format!("{t} {f:?} n={n}"), &alg, &an, &products, &mut rng)?;
            }
        }
    }
    for t in ["A3", "B3", "C3", "A4", "D4"] {
        let alg = coxeter_hecke(&space(t, Flavor::Adjoint, 1).w_lambda(0)).unwrap();
        let an = alg.analyze();
        let products = |seq: &[usize]| alg.product_coefficients(seq);
        triples += check_truncation(t, &alg, &an, &products, &mut rng)?;
    }
    Ok(format!("{triples} triples; products in H for A1/A2/B2/G2 n ≤ 2, from structure constants for A3/B3/C3/A4/D4"))
}

fn palindromic(name: &str, alg: &BasedAlgebra, rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..100 {
        let (i, k) = (rng.gen_range(0..alg.dim()), rng.gen_range(0..alg.dim()));
        for (j, m) in alg.product_coefficients(&[i, k]) {
            for (e, c) in &m {
                let mirror = m.get(&-e).cloned().unwrap_or(IBig::ZERO);
                ensure(*c >= IBig::ZERO && mirror == *c, || format!("{name}: N({}, {e}) = {c}, N({}, {}) = {mirror} in c_{} c_{}", alg.label(j), alg.label(j), -e, alg.label(i), alg.label(k)))?;
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut count = 0;
    for t in PRESETS {
        for f in FLAVORS {
            let alg = coxeter_hecke(&space(t, f, 1).w_lambda(0)).unwrap();
            palindromic(t, &alg, &mut rng)?;
            count += 1;
        }
    }
    for t in ["A1", "A2", "B2", "G2", "A3"] {
        for f in FLAVORS {
            let (_, alg) = full_hecke(&space(t, f, 2));
            palindromic(&format!("{t} {f:?} n=2"), &alg, &mut rng)?;
            count += 1;
        }
    }
    Ok(format!("100 random pairs in each of {count} algebras"))
}

fn criterion_6() -> Outcome {
    let mut orbits = 0;
    for t in ["A1", "A2"] {
        let sp = space(t, Flavor::SimplyConnected, 2);
        let h = HeckeAlgebra::new(sp.clone());
        for o in sp.orbits() {
            let rep = MatrixChain::new(&sp, o[0]).unwrap().verify(&h);
            ensure(rep.all_pass(), || format!("{t} orbit {o:?}: {:?}", rep.witness))?;
            if sp.w_lambda(o[0]).size() < sp.group().order() {
                orbits += 1;
            }
        }
    }
    ensure(orbits > 0, || "no nontrivial orbit".into())?;
    Ok(format!("Ψ checked on every orbit, {orbits} with λ not W-invariant"))
}

const C7_CHECKS: [&str; 5] = ["cell uniqueness", "a below b of sign twist", "special per cell", "coinvariant top degree", "special dimension"];

fn rep_checks(name: &str, model: &RepModel, names: &[&str]) -> Result<(), String> {
    let checks = rep_identities(model);
    for want in names {
        let c = checks.iter().find(|c| c.name == *want).ok_or_else(|| format!("{name}: {want} not reached"))?;
        ensure(c.pass, || format!("{name}: {want} fails: {:?}", c.witness))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut groups = 0;
    for t in PRESETS {
        for f in FLAVORS {
            rep_checks(&format!("W({t})"), &RepModel::reflection(space(t, f, 1), 0, CAP).unwrap(), &C7_CHECKS)?;
            groups += 1;
            let sp = space(t, f, 2);
            for o in sp.orbits() {
                let m = RepModel::stabilizer(sp.clone(), o[0], CAP).unwrap();
                rep_checks(&format!("W'_λ {t} {f:?} λ={:?}", sp.coords(o[0])), &m, &C7_CHECKS)?;
                let ext = extension_identities(&sp, o[0], CAP).unwrap();
                ensure(ext.pass, || format!("{t} {f:?}: {:?}", ext.witness))?;
                groups += 1;
            }
        }
    }
    let mut full = vec![];
    for t in ["A1", "A2", "B2", "G2"] {
        full.extend(FLAVORS.map(|f| (t, f)));
    }
    full.extend(["A3", "B3", "C3"].map(|t| (t, Flavor::Adjoint)));
    for (t, f) in full {
        let sp = space(t, f, 2);
        let (h, alg) = full_hecke(&sp);
        let m = RepModel::full(sp, &h, alg, CAP).unwrap();
        rep_checks(&format!("{t} {f:?} ⋉ T_2"), &m, &C7_CHECKS)?;
        groups += 1;
    }
    Ok(format!("{groups} groups: W for every preset, W'_λ at n = 2, W ⋉ T_2 for A1/A2/B2/G2 and A3/B3/C3 adjoint"))
}

fn criterion_8() -> Outcome {
    let mut cells = 0;
    for (t, f, n) in small_configs() {
        let sp = space(t, f, n);
        let (h, alg) = full_hecke(&sp);
        let m = RepModel::full(sp, &h, alg, CAP).unwrap();
        rep_checks(&format!("{t} {f:?} n={n}"), &m, &["left cell multiplicity"])?;
        cells += m.analysis().cells.left_cells.len();
    }
    Ok(format!("{cells} left cells decomposed"))
}

fn quadruples(name: &str, alg: &BasedAlgebra, sp: &CharSpace) -> Result<usize, String> {
    let an = alg.analyze();
    let mut pairs = 0;
    for cell in &an.cells.two_sided_cells {
        let smile: Vec<usize> = cell.iter().copied().filter(|&i| smile_sector(sp, alg.label(i)).is_some()).collect();
        for &i in &smile {
            for &ip in &smile {
                let a = n_prime(alg, &an, sp, i, ip).map_err(|e| e.to_string())?;
                let b = n_double_prime(alg, &an, sp, i, ip).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("{name}: N' = {a}, N'' = {b} at ({}, {})", alg.label(i), alg.label(ip)))?;
                let h1 = hom_dimension_formula(alg, &an, sp, i, ip).map_err(|e| e.to_string())?;
                let h2 = hom_dimension_formula(alg, &an, sp, ip, i).map_err(|e| e.to_string())?;
                ensure(h1 == h2, || format!("{name}: hom not symmetric at ({}, {})", alg.label(i), alg.label(ip)))?;
                pairs += 1;
            }
        }
    }
    Ok(pairs)
}

fn criterion_9() -> Outcome {
    let mut pairs = 0;
    for t in PRESETS {
        let sp = space(t, Flavor::Adjoint, 1);
        pairs += quadruples(t, &coxeter_hecke(&sp.w_lambda(0)).unwrap(), &sp)?;
    }
    for t in ["A1", "A2", "B2", "G2"] {
        for f in FLAVORS {
            for n in [1, 2] {
                let sp = space(t, f, n);
                pairs += quadruples(&format!("{t} {f:?} n={n}"), &full_hecke(&sp).1, &sp)?;
            }
        }
    }
    Ok(format!("{pairs} pairs; Hecke algebra of W for every preset, full H for A1/A2/B2/G2 n ≤ 2"))
}

fn criterion_10() -> Outcome {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_monohecke"))
            .args(["identities", "--type", "B2", "--n", "2", "--threads", threads])
            .env_remove("MONOHECKE_CACHE_DIR")
            .env("RUST_LOG", "off")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(!out.stdout.is_empty(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
        Ok::<_, String>(out.stdout)
    };
    let (one, eight) = (run("1")?, run("8")?);
    ensure(one == eight, || "outputs differ".into())?;
    serde_json::from_slice::<serde_json::Value>(&one).map_err(|e| e.to_string())?;
    Ok(format!("{} identical bytes of JSON", one.len()))
}

/// Written to the process stdout directly so the lines survive the test
/// harness's output capture.
fn report(line: String) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("KL oracle equivalence", criterion_1),
        ("axiom suite", criterion_2),
        ("tau duality", criterion_3),
        ("truncated products", criterion_4),
        ("palindromicity and positivity", criterion_5),
        ("matrix isomorphism", criterion_6),
        ("representation invariants", criterion_7),
        ("left-cell multiplicity", criterion_8),
        ("N' = N''", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()));
        let took = start.elapsed();
        match res {
            Ok(detail) => report(format!("criterion {:>2} PASS  {name}: {detail} [{took:.1?}]", k + 1)),
            Err(e) => {
                report(format!("criterion {:>2} FAIL  {name}: {e} [{took:.1?}]", k + 1));
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
