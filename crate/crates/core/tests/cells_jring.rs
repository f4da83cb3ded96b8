mod common;

use common::{space, FLAVORS};
use monohecke::cells_jring::*;
use monohecke::exact_arith::IBig;
use monohecke::hecke::HeckeAlgebra;
use monohecke::weyl::Flavor;
use proptest::prelude::*;

fn same_table(x: &BasedAlgebra, y: &BasedAlgebra) -> bool {
    x.labels() == y.labels() && (0..x.dim()).all(|i| (0..x.dim()).all(|j| x.row(i, j) == y.row(i, j)))
}

fn assert_axioms(alg: &BasedAlgebra, an: &Analysis) {
    let rep = verify_axioms(alg, an);
    for c in &rep.checks {
        assert!(c.pass, "{}: {} fails: {:?}", alg.name(), c.name, c.witness);
    }
    assert_eq!(an.distinguished_from_hstar(alg), (0..alg.dim()).map(|i| alg.in_i0(i)).collect::<Vec<_>>(), "{}", alg.name());
}

#[test]
fn small_algebras_and_orbit_isomorphism() {
    for t in ["A1", "A2", "B2"] {
        for f in FLAVORS {
            for n in [1, 2] {
                let sp = space(t, f, n);
                let h = HeckeAlgebra::new(sp.clone());
                let full = hecke_full(&h, h.h_table()).unwrap();
                assert_axioms(&full, &full.analyze());
                for o in sp.orbits() {
                    let chain = MatrixChain::new(&sp, o[0]).unwrap();
                    let transported = chain.transported(&sp).unwrap();
                    assert!(same_table(&transported, &hecke_orbit(&sp, &full, &o).unwrap()), "{t} {f:?} n={n} orbit {o:?}");
                    assert!(same_table(&chain.corner, &hecke_corner(&sp, &full, o[0]).unwrap()));
                    let rep = chain.verify(&h);
                    assert!(rep.all_pass(), "{t} {f:?} n={n}: {:?}", rep.witness);
                    for alg in [&chain.coxeter, &chain.extended, &chain.corner, &chain.matrix, &transported] {
                        assert_axioms(alg, &alg.analyze());
                    }
                }
            }
        }
    }
}

#[test]
fn two_sided_cell_counts() {
    // Type A: partitions of rank + 1. B3: 6 families, D4: 11, G2: 3.
    for (t, cells) in [("A1", 2), ("A2", 3), ("A3", 5), ("A4", 7), ("B2", 3), ("B3", 6), ("G2", 3), ("D4", 11)] {
        let sp = space(t, Flavor::Adjoint, 1);
        let alg = coxeter_hecke(&sp.w_lambda(0)).unwrap();
        let an = alg.analyze();
        assert_eq!(an.cells.two_sided_cells.len(), cells, "{t}");
        assert_eq!(an.distinguished_from_hstar(&alg), (0..alg.dim()).map(|i| alg.in_i0(i)).collect::<Vec<_>>());
        let lefts = an.cells.left_cells.len();
        assert_eq!(alg.i0().count(), lefts, "{t}: one distinguished involution per left cell");
    }
}

#[test]
fn corrupted_table_fails_q5() {
    let sp = space("A2", Flavor::Adjoint, 1);
    let alg = coxeter_hecke(&sp.w_lambda(0)).unwrap();
    let an = alg.analyze();
    let (i, ip, j, _) = an.jring.hstar_entries().into_iter().find(|&(i, ip, j, _)| !(i == ip && ip == j)).unwrap();
    let jb = alg.bang(j);
    let bad = alg.corrupted(i, ip, jb, alg.h(i, ip, jb).scale(&IBig::from(2)));
    let rep = verify_axioms(&bad, &bad.analyze());
    assert!(!rep.get("Q5").unwrap().pass);
    assert!(rep.get("Q5").unwrap().witness.is_some());
}

#[test]
fn sign_cell_has_longest_element() {
    let sp = space("B3", Flavor::Adjoint, 1);
    let alg = coxeter_hecke(&sp.w_lambda(0)).unwrap();
    let an = alg.analyze();
    let g = sp.group();
    let w0 = alg.index_of(Label::Coxeter { w: g.longest() }).unwrap();
    assert_eq!(an.a(w0) as usize, g.nu());
    let one = alg.index_of(Label::Coxeter { w: g.identity() }).unwrap();
    assert_eq!(an.a(one), 0);
}

fn jring() -> (BasedAlgebra, Analysis) {
    let sp = space("A2", Flavor::SimplyConnected, 2);
    let h = HeckeAlgebra::new(sp.clone());
    let alg = hecke_full(&h, h.h_table()).unwrap();
    let an = alg.analyze();
    (alg, an)
}

fn elt(dim: usize) -> impl Strategy<Value = JElt> {
    prop::collection::btree_map(0..dim, (-3i64..4).prop_map(IBig::from), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jring_identities((x, y, z) in (elt(24), elt(24), elt(24))) {
        let (_, an) = &*JRING;
        let j = &an.jring;
        prop_assert_eq!(j.mul(&j.mul(&x, &y), &z), j.mul(&x, &j.mul(&y, &z)));
        prop_assert_eq!(j.tau(&j.mul(&x, &y)), j.tau(&j.mul(&y, &x)));
        prop_assert_eq!(j.flat(&j.mul(&x, &y)), j.mul(&j.flat(&y), &j.flat(&x)));
        let u = j.unit();
        let clean = |e: JElt| -> JElt { e.into_iter().filter(|(_, c)| *c != IBig::ZERO).collect() };
        prop_assert_eq!(clean(j.mul(&u, &x)), clean(x.clone()));
    }

    #[test]
    fn products_are_palindromic_and_nonnegative(i in 0usize..24, k in 0usize..24) {
        let (alg, _) = &*JRING;
        for m in alg.product_coefficients(&[i, k]).values() {
            for (e, c) in m {
                prop_assert!(*c >= IBig::ZERO);
                prop_assert_eq!(m.get(&-e).cloned().unwrap_or(IBig::ZERO), c.clone());
            }
        }
    }
}

static JRING: std::sync::LazyLock<(BasedAlgebra, Analysis)> = std::sync::LazyLock::new(jring);

#[test]
fn jring_dimension() {
    assert_eq!(JRING.0.dim(), 24);
}
