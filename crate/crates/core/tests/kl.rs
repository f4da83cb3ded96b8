mod common;

use std::collections::BTreeSet;

use common::{kl_oracle, space, FLAVORS};
use monohecke::exact_arith::LaurentPoly;
use monohecke::weyl::{Flavor, RootDatum, WeylGroup};

#[test]
fn kl_matches_bar_fixed_point_oracle() {
    let mut subgroups = 0;
    let mut pairs = 0;
    for t in ["A1", "A2", "A3", "A4", "B2", "B3", "G2"] {
        for f in FLAVORS {
            for n in 1..=3 {
                let sp = space(t, f, n);
                let masks: BTreeSet<_> = sp.iter().map(|l| sp.r_lambda(l)).collect();
                for m in masks {
                    let wl = sp.reflection_subgroup(m);
                    let k = wl.kl();
                    pairs += kl_oracle(wl.coxeter(), |y, w| k.p_v(y, w)).unwrap_or_else(|e| panic!("{t} {f:?} n={n}: {e}"));
                    subgroups += 1;
                }
            }
        }
    }
    assert!(subgroups > 42 && pairs > 0);
}

#[test]
fn oracle_rejects_naive_basis() {
    let g = WeylGroup::new(RootDatum::preset("A3", Flavor::Adjoint).unwrap()).unwrap();
    let cox = g.coxeter();
    let naive = |y: usize, w: usize| {
        if cox.bruhat_leq(y, w) {
            LaurentPoly::monomial(1, cox.length(y) as i32 - cox.length(w) as i32)
        } else {
            LaurentPoly::zero()
        }
    };
    assert!(kl_oracle(cox, naive).is_err());
}

#[test]
fn dihedral_polys_are_trivial() {
    let g = WeylGroup::new(RootDatum::preset("G2", Flavor::Adjoint).unwrap()).unwrap();
    let cox = g.coxeter();
    let k = monohecke::kl::KlTable::new(cox);
    for w in 0..cox.size() {
        for y in cox.lower_interval(w) {
            assert!(k.p(y, w).is_one());
        }
    }
}
