mod common;

use std::sync::Arc;

use common::{space, FLAVORS, PRESETS};
use monohecke::cells_jring::hecke_full;
use monohecke::exact_arith::{CycloNum, IBig};
use monohecke::hecke::{GroupAlgebra, HeckeAlgebra};
use monohecke::reps::*;
use monohecke::weyl::Flavor;
use proptest::prelude::*;

const CAP: usize = DEFAULT_GROUP_CAP;

fn degrees_of(table: &CharacterTable) -> Vec<i64> {
    let mut d: Vec<i64> = table.chars().iter().map(|c| i64::try_from(c.degree().unwrap()).unwrap()).collect();
    d.sort();
    d
}

#[test]
fn symmetric_group_degrees() {
    let sp = space("A2", Flavor::Adjoint, 1);
    let m = RepModel::reflection(sp, 0, CAP).unwrap();
    assert_eq!(degrees_of(m.table()), vec![1, 1, 2]);
    // W ⋉ T_2 for the weight lattice of A2 is S4.
    let sp = space("A2", Flavor::SimplyConnected, 2);
    let h = HeckeAlgebra::new(sp.clone());
    let alg = hecke_full(&h, h.h_table()).unwrap();
    let m = RepModel::full(sp, &h, alg, CAP).unwrap();
    assert_eq!(m.group().order(), 24);
    assert_eq!(degrees_of(m.table()), vec![1, 1, 2, 3, 3]);
}

#[test]
fn clifford_count_and_degrees() {
    for (t, f) in [("A1", Flavor::SimplyConnected), ("A1", Flavor::Adjoint), ("B2", Flavor::SimplyConnected), ("G2", Flavor::Adjoint)] {
        let sp = space(t, f, 2);
        let ga = Arc::new(GroupAlgebra::new(&sp));
        let full = FiniteGroup::semidirect(ga.clone(), CAP).unwrap();
        let table = CharacterTable::compute(&full).unwrap();
        let mut induced = Vec::new();
        for o in sp.orbits() {
            let stab = FiniteGroup::stabilizer_torus(ga.clone(), &sp, o[0], CAP).unwrap();
            let w_prime = FiniteGroup::stabilizer(ga.clone(), &sp, o[0], CAP).unwrap();
            for chi in CharacterTable::compute(&w_prime).unwrap().chars() {
                let inflated = stab.twist_by_character(&extend_trivially(&w_prime, &stab, chi), &stab, &sp, o[0]).unwrap();
                let ind = full.induce(&inflated, &stab).unwrap();
                let k = table.position(&ind).unwrap_or_else(|| panic!("{t} {f:?}: induced character is not irreducible"));
                assert_eq!(ind.degree().unwrap(), chi.degree().unwrap() * IBig::from(o.len()));
                induced.push(k);
            }
        }
        induced.sort();
        assert_eq!(induced, (0..table.len()).collect::<Vec<_>>(), "{t} {f:?}");
    }
}

/// A character of `W'_λ` as a class function on `W'_λ ⋉ T_n` trivial on `T_n`.
fn extend_trivially(w_prime: &FiniteGroup, stab: &FiniteGroup, chi: &ClassFunction) -> ClassFunction {
    let values = (0..stab.num_classes())
        .map(|c| {
            let (w, _) = stab.element(stab.class_rep(c));
            let k = w_prime.local_index((w, 0)).unwrap();
            chi.values[w_prime.class_of(k)].clone()
        })
        .collect();
    ClassFunction { values }
}

#[test]
fn trivial_and_sign_b_values() {
    for t in PRESETS {
        let sp = space(t, Flavor::Adjoint, 1);
        let nu = sp.group().nu();
        let m = RepModel::reflection(sp, 0, CAP).unwrap();
        let invs = m.invariants().unwrap();
        let g = m.group();
        let triv = m.table().position(&g.trivial_character()).unwrap();
        let sign = m.table().position(&g.sign_character()).unwrap();
        assert_eq!((invs[triv].b, invs[triv].a as usize, invs[triv].b_sign), (0, nu, nu), "{t}");
        assert_eq!((invs[sign].b, invs[sign].a, invs[sign].b_sign), (nu, 0, 0), "{t}");
        assert!(invs[triv].special && invs[sign].special);
    }
}

fn series_of_degrees(degrees: &[usize], top: usize) -> Vec<IBig> {
    let mut s = vec![IBig::ZERO; top + 1];
    s[0] = IBig::ONE;
    for &d in degrees {
        for i in d..=top {
            let prev = s[i - d].clone();
            s[i] += prev;
        }
    }
    s
}

#[test]
fn molien_of_trivial_is_invariant_ring() {
    for (t, degrees) in [("A2", vec![2, 3]), ("B3", vec![2, 4, 6]), ("G2", vec![2, 6]), ("D4", vec![2, 4, 4, 6]), ("A4", vec![2, 3, 4, 5])] {
        let sp = space(t, Flavor::Adjoint, 1);
        let m = RepModel::reflection(sp, 0, CAP).unwrap();
        let triv = m.group().trivial_character();
        let s = m.symmetric_series(&triv, 14).unwrap();
        assert_eq!(s.coeffs, series_of_degrees(&degrees, 14), "{t}");
    }
}

#[test]
fn coinvariants_are_graded_regular() {
    for t in PRESETS {
        let sp = space(t, Flavor::Adjoint, 1);
        let nu = sp.group().nu();
        let poincare = sp.group().coxeter().poincare();
        let m = RepModel::reflection(sp, 0, CAP).unwrap();
        let invs = m.invariants().unwrap();
        let mut total = vec![IBig::ZERO; nu + 1];
        for r in &invs {
            for (i, c) in r.fake_degree.iter().enumerate() {
                total[i] += c * IBig::from(r.dim);
            }
            // Poincaré duality: the top degree pairs E with E ⊗ σ.
            let twin = m.table().position(&m.group().tensor_sign(m.table().get(r.index))).unwrap();
            for i in 0..=nu {
                let c = r.fake_degree.get(i).cloned().unwrap_or(IBig::ZERO);
                let d = invs[twin].fake_degree.get(nu - i).cloned().unwrap_or(IBig::ZERO);
                assert_eq!(c, d, "{t}: E{} degree {i}", r.index);
            }
        }
        let expect: Vec<IBig> = poincare.iter().map(|&x| IBig::from(x)).collect();
        assert_eq!(total, expect, "{t}");
    }
}

#[test]
fn twisted_molien_direct_and_by_reciprocity() {
    for (t, f) in [("A2", Flavor::SimplyConnected), ("B2", Flavor::Adjoint)] {
        let sp = space(t, f, 2);
        let h = HeckeAlgebra::new(sp.clone());
        let alg = hecke_full(&h, h.h_table()).unwrap();
        let m = RepModel::full(sp, &h, alg, CAP).unwrap();
        // Q[T_n] = Q[(W ⋉ T_n)/W] as a permutation module.
        let g = m.group();
        let ga = g.ambient();
        let field = m.table().field();
        let perm = ClassFunction {
            values: (0..g.num_classes())
                .map(|c| {
                    let (w, t) = g.element(g.class_rep(c));
                    let e = ga.weyl().identity();
                    let fixed = (0..ga.torus_order())
                        .filter(|&x| {
                            let image = ga.mul_elt((w, t), (e, x));
                            (0..ga.weyl().order()).any(|u| ga.mul_elt((e, x), (u, 0)) == image)
                        })
                        .count();
                    CycloNum::from_int(1, fixed as i64).embed(field)
                })
                .collect(),
        };
        for chi in m.table().chars() {
            let via_w = m.symmetric_series(chi, 8).unwrap();
            let direct = molien_sv(g, &chi.tensor(&perm), 8).unwrap();
            assert_eq!(via_w.coeffs, direct.coeffs, "{t} {f:?}");
        }
    }
}

#[test]
fn models_build_for_every_preset() {
    for t in PRESETS {
        for f in FLAVORS {
            let sp = space(t, f, 2);
            for o in sp.orbits() {
                let m = RepModel::stabilizer(sp.clone(), o[0], CAP).unwrap();
                let invs = m.invariants().unwrap();
                let order: i64 = invs.iter().map(|r| r.dim * r.dim).sum();
                assert_eq!(order as usize, m.group().order(), "{t} {f:?}");
            }
        }
    }
}

static A2_GROUPS: std::sync::LazyLock<(Arc<monohecke::torus_chars::CharSpace>, FiniteGroup, CharacterTable, Vec<(FiniteGroup, CharacterTable)>)> = std::sync::LazyLock::new(|| {
    let sp = space("A2", Flavor::SimplyConnected, 2);
    let ga = Arc::new(GroupAlgebra::new(&sp));
    let full = FiniteGroup::semidirect(ga.clone(), CAP).unwrap();
    let table = CharacterTable::compute(&full).unwrap();
    let subs = sp
        .orbits()
        .iter()
        .map(|o| {
            let s = FiniteGroup::stabilizer_torus(ga.clone(), &sp, o[0], CAP).unwrap();
            let t = CharacterTable::compute(&s).unwrap();
            (s, t)
        })
        .collect();
    (sp, full, table, subs)
});

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frobenius_reciprocity(k in 0usize..8, e in 0usize..8, sub in 0usize..2) {
        let (_, full, table, subs) = &*A2_GROUPS;
        let (s, st) = &subs[sub % subs.len()];
        let chi = st.get(k % st.len());
        let psi = table.get(e % table.len());
        let lhs = full.inner(&full.induce(chi, s).unwrap(), psi);
        let rhs = s.inner(chi, &full.restrict(psi, s).unwrap());
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert!(lhs.to_integer().is_some_and(|x| x >= IBig::ZERO));
    }

    #[test]
    fn character_orthogonality(a in 0usize..8, b in 0usize..8) {
        let (_, full, table, _) = &*A2_GROUPS;
        let (a, b) = (a % table.len(), b % table.len());
        let ip = full.inner(table.get(a), table.get(b));
        prop_assert_eq!(ip, CycloNum::from_int(1, i64::from(a == b)).embed(table.field()));
    }
}
