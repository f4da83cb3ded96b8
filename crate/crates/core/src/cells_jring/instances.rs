use std::collections::HashMap;

use dashu_int::IBig;
use rayon::prelude::*;

use super::{a_values, BasedAlgebra, ConnectingSequences, Label};
use crate::exact_arith::LaurentPoly;
use crate::hecke::{HRow, HeckeAlgebra};
use crate::kl::KlTable;
use crate::torus_chars::{CharSpace, ReflectionSubgroup, TorusChar};
use crate::weyl::CoxeterSystem;
use crate::{Error, Result};

fn sparse(v: Vec<LaurentPoly>) -> HRow {
    v.into_iter().enumerate().filter(|(_, f)| !f.is_zero()).collect()
}

/// Structure constants of the Hecke algebra of a finite Coxeter system in
/// its canonical basis, from the left multiplication rule
/// `c_s c_w = (v + v⁻¹) c_w` if `sw < w`, and otherwise
/// `c_s c_w = c_{sw} + sum_{z < w, sz < z} μ(z, w) c_z`.
pub fn coxeter_h_table(cox: &CoxeterSystem, kl: &KlTable) -> Vec<HRow> {
    let size = cox.size();
    let v_plus = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
    let cs_times = |s: usize, x: &[LaurentPoly]| -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(); size];
        for (w, f) in x.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            if cox.is_left_descent(s, w) {
                out[w] += &(f * &v_plus);
            } else {
                out[cox.lmul(s, w)] += f;
                for (z, m) in kl.mu_row(w) {
                    let z = *z as usize;
                    if cox.is_left_descent(s, z) {
                        out[z] += &f.scale(m);
                    }
                }
            }
        }
        out
    };
    let columns: Vec<Vec<HRow>> = (0..size)
        .into_par_iter()
        .map(|y| {
            // prods[x] = c_x c_y, built up along x = s x' with s x' > x'.
            let mut prods: Vec<Vec<LaurentPoly>> = Vec::with_capacity(size);
            let mut unit = vec![LaurentPoly::zero(); size];
            unit[y] = LaurentPoly::one();
            prods.push(unit);
            for x in 1..size {
                let s = cox.first_left_descent(x).expect("non-identity");
                let xp = cox.lmul(s, x);
                let mut acc = cs_times(s, &prods[xp]);
                for (z, m) in kl.mu_row(xp) {
                    let z = *z as usize;
                    if cox.is_left_descent(s, z) {
                        for (k, f) in prods[z].iter().enumerate() {
                            if !f.is_zero() {
                                acc[k] -= &f.scale(m);
                            }
                        }
                    }
                }
                prods.push(acc);
            }
            prods.into_iter().map(sparse).collect()
        })
        .collect();
    let mut table = vec![HRow::new(); size * size];
    for (y, col) in columns.into_iter().enumerate() {
        for (x, row) in col.into_iter().enumerate() {
            table[x * size + y] = row;
        }
    }
    table
}

/// `z` is distinguished when `z² = 1` and `p_{1,z}` has a nonzero
/// coefficient at `v^{-a(z)}`.
fn p_criterion(cox: &CoxeterSystem, kl: &KlTable, z: usize, a: u32) -> bool {
    cox.inverse(z) == z && kl.p_v(0, z).coeff(-(a as i32)) != IBig::ZERO
}

/// The Hecke algebra of `W_λ` with its canonical basis, indexed by local
/// indices of the subgroup; `I₀` is the set of distinguished involutions.
pub fn coxeter_hecke(sub: &ReflectionSubgroup) -> Result<BasedAlgebra> {
    let cox = sub.coxeter();
    let kl = sub.kl();
    let h = coxeter_h_table(cox, kl);
    let size = cox.size();
    let a = a_values(&h, size);
    let labels = (0..size).map(|k| Label::Coxeter { w: sub.element(k) }).collect();
    let bang = (0..size).map(|k| cox.inverse(k)).collect();
    let i0 = (0..size).map(|z| p_criterion(cox, kl, z, a[z])).collect();
    BasedAlgebra::new(format!("H_W(rank {})", cox.n_gens()), labels, h, bang, i0)
}

/// `H'_λ = H_λ ⊗ A[Ω_λ]` with `(c_w ⊗ x)(c_{w'} ⊗ x') = c_w c_{x w' x⁻¹} ⊗ x x'`,
/// built from the algebra `hl` returned by [`coxeter_hecke`] for `W_λ`.
pub fn extended(space: &CharSpace, lam: TorusChar, hl: &BasedAlgebra) -> Result<BasedAlgebra> {
    let group = space.group();
    let subs = space.subgroups(lam);
    let wl = &subs.w_lambda;
    let omega = &subs.omega;
    let m = omega.len();
    let size = wl.size();
    if hl.dim() != size {
        return Err(Error::DimensionMismatch { expected: size, got: hl.dim() });
    }
    let dim = size * m;
    let idx = |w: usize, xi: usize| w * m + xi;
    let om = |x| subs.omega_index(x).expect("Ω_λ is a group");
    let mut h = vec![HRow::new(); dim * dim];
    for w in 0..size {
        for (xi, &x) in omega.iter().enumerate() {
            for wp in 0..size {
                let wc = wl.conjugate(group, x, wp);
                for (xpi, &xp) in omega.iter().enumerate() {
                    let target = om(group.mul(x, xp));
                    h[idx(w, xi) * dim + idx(wp, xpi)] = hl.row(w, wc).iter().map(|(j, f)| (idx(*j, target), f.clone())).collect();
                }
            }
        }
    }
    for row in h.iter_mut() {
        row.sort_by_key(|t| t.0);
    }
    let mut labels = Vec::with_capacity(dim);
    let mut bang = Vec::with_capacity(dim);
    let mut i0 = Vec::with_capacity(dim);
    let e = om(group.identity());
    for w in 0..size {
        for &x in omega.iter() {
            labels.push(Label::Extended { w: wl.element(w), x });
            let xi = group.inverse(x);
            bang.push(idx(wl.conjugate(group, xi, hl.bang(w)), om(xi)));
            i0.push(hl.in_i0(w) && om(x) == e);
        }
    }
    BasedAlgebra::new(format!("H'_λ{lam}"), labels, h, bang, i0)
}

/// `I₀` for an algebra labelled by `w·λ`: the `w·λ` with `w` a
/// distinguished involution of `W_λ`, judged with the algebra's own `a`.
fn hecke_i0(space: &CharSpace, labels: &[Label], a: &[u32]) -> Vec<bool> {
    labels
        .iter()
        .zip(a)
        .map(|(l, &a)| match *l {
            Label::Hecke { w, lam } => {
                let wl = space.w_lambda(lam);
                wl.local(w).is_some_and(|z| p_criterion(wl.coxeter(), wl.kl(), z, a))
            }
            _ => false,
        })
        .collect()
}

fn hecke_algebra_from(space: &CharSpace, name: String, labels: Vec<Label>, h: Vec<HRow>) -> Result<BasedAlgebra> {
    let dim = labels.len();
    let pos: HashMap<Label, usize> = labels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
    let bang = labels
        .iter()
        .map(|l| match *l {
            Label::Hecke { w, lam } => {
                let (w2, l2) = (space.group().inverse(w), space.act(w, lam));
                pos.get(&Label::Hecke { w: w2, lam: l2 }).copied().ok_or_else(|| Error::Precondition("index set not closed under !".into()))
            }
            _ => Err(Error::Precondition("expected w·λ labels".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    let a = a_values(&h, dim);
    let i0 = hecke_i0(space, &labels, &a);
    BasedAlgebra::new(name, labels, h, bang, i0)
}

/// The whole algebra with basis `c_{w·λ}`, from a table produced by
/// [`HeckeAlgebra::h_table`].
pub fn hecke_full(h: &HeckeAlgebra, table: Vec<HRow>) -> Result<BasedAlgebra> {
    let labels = (0..h.dim()).map(|i| {
        let (w, lam) = h.unindex(i);
        Label::Hecke { w, lam }
    });
    let space = h.space();
    hecke_algebra_from(space, format!("H(n={})", space.n()), labels.collect(), table)
}

/// The subalgebra spanned by the basis elements whose labels satisfy `keep`.
fn restrict(space: &CharSpace, full: &BasedAlgebra, name: String, keep: impl Fn(Label) -> bool) -> Result<BasedAlgebra> {
    let kept: Vec<usize> = (0..full.dim()).filter(|&i| keep(full.label(i))).collect();
    let mut new_index = vec![usize::MAX; full.dim()];
    for (k, &i) in kept.iter().enumerate() {
        new_index[i] = k;
    }
    let dim = kept.len();
    let mut h = vec![HRow::new(); dim * dim];
    for (a, &i) in kept.iter().enumerate() {
        for (b, &ip) in kept.iter().enumerate() {
            let mut row = HRow::new();
            for (j, f) in full.row(i, ip) {
                if new_index[*j] == usize::MAX {
                    return Err(Error::Precondition(format!("{name} is not closed under multiplication")));
                }
                row.push((new_index[*j], f.clone()));
            }
            h[a * dim + b] = row;
        }
    }
    let labels = kept.iter().map(|&i| full.label(i)).collect();
    hecke_algebra_from(space, name, labels, h)
}

/// `1_λ H 1_λ` with basis `c_{w·λ}`, `w ∈ W'_λ`.
pub fn hecke_corner(space: &CharSpace, full: &BasedAlgebra, lam: TorusChar) -> Result<BasedAlgebra> {
    restrict(space, full, format!("1_λ{lam} H 1_λ{lam}"), |l| matches!(l, Label::Hecke { w, lam: m } if m == lam && space.act(w, lam) == lam))
}

/// `H_𝔬` with basis `c_{w·λ}`, `λ ∈ 𝔬`.
pub fn hecke_orbit(space: &CharSpace, full: &BasedAlgebra, orbit: &[TorusChar]) -> Result<BasedAlgebra> {
    restrict(space, full, format!("H_𝔬(λ{})", orbit[0]), |l| matches!(l, Label::Hecke { lam, .. } if orbit.contains(&lam)))
}

/// `1_λ H 1_λ` obtained from `H'_λ` through `(wx)·λ ↔ c_w ⊗ x`.
pub fn corner_from_extended(space: &CharSpace, lam: TorusChar, ext: &BasedAlgebra) -> Result<BasedAlgebra> {
    let group = space.group();
    let mut order: Vec<(usize, usize)> = (0..ext.dim())
        .map(|k| match ext.label(k) {
            Label::Extended { w, x } => Ok((group.mul(w, x), k)),
            _ => Err(Error::Precondition("expected c_w ⊗ x labels".into())),
        })
        .collect::<Result<_>>()?;
    order.sort_unstable();
    let mut new_index = vec![0; ext.dim()];
    for (k, &(_, old)) in order.iter().enumerate() {
        new_index[old] = k;
    }
    let dim = ext.dim();
    let mut h = vec![HRow::new(); dim * dim];
    for i in 0..dim {
        for ip in 0..dim {
            let mut row: HRow = ext.row(i, ip).iter().map(|(j, f)| (new_index[*j], f.clone())).collect();
            row.sort_by_key(|t| t.0);
            h[new_index[i] * dim + new_index[ip]] = row;
        }
    }
    let labels = order.iter().map(|&(w, _)| Label::Hecke { w, lam }).collect();
    hecke_algebra_from(space, format!("1_λ{lam} H 1_λ{lam} via H'"), labels, h)
}

/// The matrix algebra `𝔼` over `1_{λ₀} H 1_{λ₀}` indexed by `𝔬 × 𝔬`, with
/// `b_{w,λ₁,λ₂} b_{w',λ₂,λ₃} = sum_{w''} h_{w,w',w''} b_{w'',λ₁,λ₃}`.
pub fn matrix_algebra(corner: &BasedAlgebra, orbit: &[TorusChar]) -> Result<BasedAlgebra> {
    let m = corner.dim();
    let k = orbit.len();
    let dim = m * k * k;
    let idx = |w: usize, l1: usize, l2: usize| (w * k + l1) * k + l2;
    let mut h = vec![HRow::new(); dim * dim];
    for w in 0..m {
        for wp in 0..m {
            for l1 in 0..k {
                for l2 in 0..k {
                    for l3 in 0..k {
                        h[idx(w, l1, l2) * dim + idx(wp, l2, l3)] =
                            corner.row(w, wp).iter().map(|(j, f)| (idx(*j, l1, l3), f.clone())).collect();
                    }
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(dim);
    let mut bang = Vec::with_capacity(dim);
    let mut i0 = Vec::with_capacity(dim);
    for w in 0..m {
        let Label::Hecke { w: amb, .. } = corner.label(w) else {
            return Err(Error::Precondition("expected w·λ₀ labels".into()));
        };
        for l1 in 0..k {
            for l2 in 0..k {
                labels.push(Label::Matrix { w: amb, from: orbit[l1], to: orbit[l2] });
                bang.push(idx(corner.bang(w), l2, l1));
                i0.push(corner.in_i0(w) && l1 == l2);
            }
        }
    }
    BasedAlgebra::new(format!("E(λ{})", orbit[0]), labels, h, bang, i0)
}

/// `H_𝔬` obtained from `𝔼` by relabelling `b_{w,λ₁,λ₂}` as
/// `c_{[𝐬_{λ₁}]⁻¹ w [𝐬_{λ₂}]·λ₂}`.
pub fn transport_orbit(space: &CharSpace, e: &BasedAlgebra, seqs: &ConnectingSequences) -> Result<BasedAlgebra> {
    let mut order: Vec<(Label, usize)> = (0..e.dim())
        .map(|k| match e.label(k) {
            Label::Matrix { w, from, to } => {
                let (u, lam) = seqs.hecke_label(space, w, from, to);
                Ok((Label::Hecke { w: u, lam }, k))
            }
            _ => Err(Error::Precondition("expected matrix labels".into())),
        })
        .collect::<Result<_>>()?;
    order.sort_unstable_by_key(|&(l, _)| match l {
        Label::Hecke { w, lam } => (w, lam),
        _ => unreachable!(),
    });
    let dim = e.dim();
    let mut new_index = vec![0; dim];
    for (k, &(_, old)) in order.iter().enumerate() {
        new_index[old] = k;
    }
    for pair in order.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(Error::Internal(format!("two matrix units map to {}", pair[0].0)));
        }
    }
    let mut h = vec![HRow::new(); dim * dim];
    for i in 0..dim {
        for ip in 0..dim {
            let mut row: HRow = e.row(i, ip).iter().map(|(j, f)| (new_index[*j], f.clone())).collect();
            row.sort_by_key(|t| t.0);
            h[new_index[i] * dim + new_index[ip]] = row;
        }
    }
    let labels = order.into_iter().map(|(l, _)| l).collect();
    hecke_algebra_from(space, format!("H_𝔬(λ{}) via E", seqs.lam0()), labels, h)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::weyl::{Flavor, RootDatum, WeylGroup};

    fn space(t: &str, f: Flavor, n: u32) -> Arc<CharSpace> {
        let g = Arc::new(WeylGroup::new(RootDatum::preset(t, f).unwrap()).unwrap());
        Arc::new(CharSpace::new(g, n).unwrap())
    }

    #[test]
    fn mu_recursion_matches_generic_products() {
        for t in ["A2", "B2"] {
            let sp = space(t, Flavor::Adjoint, 1);
            let h = HeckeAlgebra::new(sp.clone());
            let full = hecke_full(&h, h.h_table()).unwrap();
            let cox = coxeter_hecke(&sp.w_lambda(0)).unwrap();
            assert_eq!(cox.dim(), full.dim());
            for i in 0..full.dim() {
                let Label::Coxeter { w } = cox.label(i) else { panic!() };
                assert_eq!(full.label(i), Label::Hecke { w, lam: 0 });
            }
            assert_eq!(cox.rows(), full.rows());
            assert_eq!((0..cox.dim()).map(|i| cox.in_i0(i)).collect::<Vec<_>>(), (0..full.dim()).map(|i| full.in_i0(i)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn a2_distinguished_involutions() {
        let sp = space("A2", Flavor::Adjoint, 1);
        let alg = coxeter_hecke(&sp.w_lambda(0)).unwrap();
        // e, s1, s2, w0.
        assert_eq!(alg.i0().count(), 4);
        assert_eq!(alg.a_values(), vec![0, 1, 1, 1, 1, 3]);
    }
}
