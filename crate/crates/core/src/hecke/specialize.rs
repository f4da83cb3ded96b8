use std::collections::BTreeMap;
use std::sync::Arc;

use dashu_ratio::RBig;

use super::{Basis, HeckeElt};
use crate::exact_arith::CycloNum;
use crate::torus_chars::CharSpace;
use crate::weyl::{WeylElt, WeylGroup};

/// The semidirect product `W ⋉ T_n` with `T_n ≅ Y/nY`, and its group algebra
/// over `Q(ζ_n)`.
///
/// Group elements `w t` are indexed by `w * n^ρ + t` with `t` in the same
/// mixed-radix coordinates as characters.
#[derive(Debug)]
pub struct GroupAlgebra {
    group: Arc<WeylGroup>,
    n: u32,
    count: usize,
    y_act: Vec<u32>,
}

/// An element of the group algebra of `W ⋉ T_n`.
pub type GroupAlgebraElt = BTreeMap<(WeylElt, usize), CycloNum>;

impl GroupAlgebra {
    pub fn new(space: &CharSpace) -> Self {
        let group = space.group().clone();
        let n = space.n();
        let count = space.len();
        let r = group.rank();
        let mut y_act = vec![0u32; group.order() * count];
        for w in 0..group.order() {
            let m = group.y_matrix(w);
            for t in 0..count {
                let y = space.coords(t);
                let image: Vec<i64> = (0..r).map(|a| (0..r).map(|b| m[a * r + b] * y[b] as i64).sum()).collect();
                y_act[w * count + t] = space.index_of(&image) as u32;
            }
        }
        Self { group, n, count, y_act }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn torus_order(&self) -> usize {
        self.count
    }

    pub fn order(&self) -> usize {
        self.group.order() * self.count
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.group
    }

    fn coords(&self, t: usize) -> Vec<i64> {
        let r = self.group.rank();
        let n = self.n as usize;
        let mut out = vec![0i64; r];
        let mut x = t;
        for k in (0..r).rev() {
            out[k] = (x % n) as i64;
            x /= n;
        }
        out
    }

    fn index_of(&self, c: &[i64]) -> usize {
        c.iter().fold(0usize, |acc, &x| acc * self.n as usize + x.rem_euclid(self.n as i64) as usize)
    }

    /// `w(t)` for `t ∈ Y/nY`.
    pub fn act(&self, w: WeylElt, t: usize) -> usize {
        self.y_act[w * self.count + t] as usize
    }

    pub fn torus_add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let c: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        self.index_of(&c)
    }

    pub fn torus_neg(&self, a: usize) -> usize {
        let c: Vec<i64> = self.coords(a).iter().map(|x| -x).collect();
        self.index_of(&c)
    }

    /// `(w t)(w' t') = w w' · w'⁻¹(t) t'`.
    pub fn mul_elt(&self, a: (WeylElt, usize), b: (WeylElt, usize)) -> (WeylElt, usize) {
        let w = self.group.mul(a.0, b.0);
        let t = self.torus_add(self.act(self.group.inverse(b.0), a.1), b.1);
        (w, t)
    }

    pub fn inverse_elt(&self, a: (WeylElt, usize)) -> (WeylElt, usize) {
        // (w t)⁻¹ = t⁻¹ w⁻¹ = w⁻¹ · w(t)⁻¹
        (self.group.inverse(a.0), self.torus_neg(self.act(a.0, a.1)))
    }

    pub fn elt_index(&self, a: (WeylElt, usize)) -> usize {
        a.0 * self.count + a.1
    }

    pub fn elt_of(&self, i: usize) -> (WeylElt, usize) {
        (i / self.count, i % self.count)
    }

    /// `⟨λ, t⟩ mod n`.
    pub fn pairing(&self, space: &CharSpace, lam: usize, t: usize) -> i64 {
        let l = space.coords(lam);
        let c = self.coords(t);
        l.iter().zip(&c).map(|(&a, &b)| a as i64 * b).sum::<i64>().rem_euclid(self.n as i64)
    }

    /// `λ(t) = ζ_n^{⟨λ,t⟩}`.
    pub fn char_value(&self, space: &CharSpace, lam: usize, t: usize) -> CycloNum {
        CycloNum::root_of_unity(self.n, self.pairing(space, lam, t))
    }

    pub fn mul(&self, a: &GroupAlgebraElt, b: &GroupAlgebraElt) -> GroupAlgebraElt {
        let mut out: GroupAlgebraElt = BTreeMap::new();
        for (&x, f) in a {
            for (&y, g) in b {
                let z = self.mul_elt(x, y);
                let prod = f * g;
                let slot = out.entry(z).or_insert_with(|| CycloNum::zero(self.n));
                *slot = &*slot + &prod;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// The image of `a` under `v ↦ 1`, rewritten in the group basis by
    /// inverting `w t ↦ sum_λ λ(t) T_w 1_λ`:
    /// `T_w 1_λ = n^{-ρ} sum_t λ(t)⁻¹ w t`.
    pub fn specialize(&self, space: &CharSpace, a: &HeckeElt) -> GroupAlgebraElt {
        assert_eq!(a.basis(), Basis::T);
        let scale = RBig::from_parts(1.into(), (self.count as u64).into());
        let mut out: GroupAlgebraElt = BTreeMap::new();
        for (&(w, lam), f) in a.terms() {
            let c = f.eval_one();
            if c == dashu_int::IBig::ZERO {
                continue;
            }
            let c = RBig::from(c) * &scale;
            for t in 0..self.count {
                let val = self.char_value(space, lam, t).conj().scale(&c);
                let slot = out.entry((w, t)).or_insert_with(|| CycloNum::zero(self.n));
                *slot = &*slot + &val;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `w t ↦ sum_λ λ(t) T_w 1_λ`, with the coefficients of `T_w 1_λ` returned.
    pub fn to_specialized_hecke(&self, space: &CharSpace, a: &GroupAlgebraElt) -> BTreeMap<(WeylElt, usize), CycloNum> {
        let mut out: BTreeMap<(WeylElt, usize), CycloNum> = BTreeMap::new();
        for (&(w, t), f) in a {
            for lam in space.iter() {
                let val = &self.char_value(space, lam, t) * f;
                let slot = out.entry((w, lam)).or_insert_with(|| CycloNum::zero(self.n));
                *slot = &*slot + &val;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::LaurentPoly;
    use crate::hecke::HeckeAlgebra;
    use crate::weyl::{Flavor, RootDatum};

    #[test]
    fn unit_goes_to_unit() {
        let g = Arc::new(WeylGroup::new(RootDatum::preset("A1", Flavor::SimplyConnected).unwrap()).unwrap());
        let space = Arc::new(CharSpace::new(g, 2).unwrap());
        let h = HeckeAlgebra::new(space.clone());
        let ga = GroupAlgebra::new(&space);
        let img = ga.specialize(&space, &h.one());
        assert_eq!(img.len(), 1);
        assert_eq!(img[&(0, 0)], CycloNum::one(2));
    }

    #[test]
    fn group_element_round_trip() {
        let g = Arc::new(WeylGroup::new(RootDatum::preset("A2", Flavor::Adjoint).unwrap()).unwrap());
        let space = Arc::new(CharSpace::new(g, 3).unwrap());
        let ga = GroupAlgebra::new(&space);
        let mut x: GroupAlgebraElt = BTreeMap::new();
        x.insert((3, 5), CycloNum::one(3));
        let img = ga.to_specialized_hecke(&space, &x);
        // Re-specializing needs integer coefficients; check the inverse
        // transform directly instead.
        let mut back: GroupAlgebraElt = BTreeMap::new();
        for (&(w, lam), c) in &img {
            for t in 0..ga.torus_order() {
                let val = &(&ga.char_value(&space, lam, t).conj() * c).scale(&RBig::from_parts(1.into(), 9u8.into()));
                let slot = back.entry((w, t)).or_insert_with(|| CycloNum::zero(3));
                *slot = &*slot + val;
            }
        }
        back.retain(|_, c| !c.is_zero());
        assert_eq!(back, x);
        let _ = LaurentPoly::one();
    }
}
