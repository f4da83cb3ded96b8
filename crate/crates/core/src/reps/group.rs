use std::collections::VecDeque;
use std::sync::Arc;

use crate::exact_arith::lcm;
use crate::hecke::GroupAlgebra;
use crate::torus_chars::{CharSpace, TorusChar};
use crate::weyl::WeylElt;
use crate::{Error, Result};

/// Default bound on the order of groups whose character table is computed.
pub const DEFAULT_GROUP_CAP: usize = 20_000;

/// A subgroup of `W ⋉ T_n`, with its conjugacy classes.
///
/// Elements are pairs `(w, t)` as in [`GroupAlgebra`], listed in increasing
/// ambient order so that the identity comes first.
#[derive(Debug)]
pub struct FiniteGroup {
    name: String,
    ambient: Arc<GroupAlgebra>,
    elements: Vec<(WeylElt, usize)>,
    /// Ambient index to local index, `u32::MAX` outside the subgroup.
    local: Vec<u32>,
    inverse: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    element_order: Vec<u32>,
    exponent: u32,
}

impl FiniteGroup {
    /// The subgroup of `W ⋉ T_n` cut out by `keep`, which must describe a
    /// subgroup.
    pub fn new(name: impl Into<String>, ambient: Arc<GroupAlgebra>, keep: impl Fn(WeylElt, usize) -> bool, cap: usize) -> Result<Self> {
        let total = ambient.order();
        let mut elements = Vec::new();
        let mut local = vec![u32::MAX; total];
        for i in 0..total {
            let (w, t) = ambient.elt_of(i);
            if keep(w, t) {
                if elements.len() == cap {
                    return Err(Error::EnumerationCap { cap });
                }
                local[i] = elements.len() as u32;
                elements.push((w, t));
            }
        }
        if elements.first() != Some(&(ambient.weyl().identity(), 0)) {
            return Err(Error::Precondition("the subset does not contain the identity".into()));
        }
        let mut g = Self {
            name: name.into(),
            ambient,
            elements,
            local,
            inverse: Vec::new(),
            class_of: Vec::new(),
            classes: Vec::new(),
            element_order: Vec::new(),
            exponent: 1,
        };
        g.inverse = (0..g.order()).map(|i| g.index(g.ambient.inverse_elt(g.elements[i]))).collect::<Result<_>>()?;
        let gens = g.generators()?;
        g.build_classes(&gens)?;
        g.element_order = (0..g.order()).map(|i| g.compute_order(i)).collect::<Result<_>>()?;
        g.exponent = g.element_order.iter().fold(1u64, |acc, &m| lcm(acc, m as u64)) as u32;
        Ok(g)
    }

    /// `W ⋉ T_n`.
    pub fn semidirect(ambient: Arc<GroupAlgebra>, cap: usize) -> Result<Self> {
        let name = format!("W⋉T_{}", ambient.n());
        Self::new(name, ambient, |_, _| true, cap)
    }

    /// `W`, embedded as the elements with trivial torus part.
    pub fn weyl(ambient: Arc<GroupAlgebra>, cap: usize) -> Result<Self> {
        Self::new("W", ambient, |_, t| t == 0, cap)
    }

    /// `W'_λ`, the stabilizer of `λ` in `W`.
    pub fn stabilizer(ambient: Arc<GroupAlgebra>, space: &CharSpace, lam: TorusChar, cap: usize) -> Result<Self> {
        Self::new(format!("W'_λ{lam}"), ambient, |w, t| t == 0 && space.act(w, lam) == lam, cap)
    }

    /// `W_λ`, the reflection subgroup attached to `λ`.
    pub fn reflection(ambient: Arc<GroupAlgebra>, space: &CharSpace, lam: TorusChar, cap: usize) -> Result<Self> {
        let wl = space.w_lambda(lam);
        Self::new(format!("W_λ{lam}"), ambient, |w, t| t == 0 && wl.contains(w), cap)
    }

    /// `W'_λ ⋉ T_n`.
    pub fn stabilizer_torus(ambient: Arc<GroupAlgebra>, space: &CharSpace, lam: TorusChar, cap: usize) -> Result<Self> {
        Self::new(format!("W'_λ{lam}⋉T"), ambient, |w, _| space.act(w, lam) == lam, cap)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> &Arc<GroupAlgebra> {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> (WeylElt, usize) {
        self.elements[i]
    }

    pub fn elements(&self) -> &[(WeylElt, usize)] {
        &self.elements
    }

    /// Local index of an ambient element, if it lies in the subgroup.
    pub fn local_index(&self, x: (WeylElt, usize)) -> Option<usize> {
        let k = self.local[self.ambient.elt_index(x)];
        (k != u32::MAX).then_some(k as usize)
    }

    fn index(&self, x: (WeylElt, usize)) -> Result<usize> {
        self.local_index(x).ok_or_else(|| Error::Precondition(format!("{} is not closed under multiplication", self.name)))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index(self.ambient.mul_elt(self.elements[a], self.elements[b])).expect("closed")
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: u32) -> usize {
        let mut out = 0;
        for _ in 0..k {
            out = self.mul(out, a);
        }
        out
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    /// The least element of a class.
    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn element_order(&self, i: usize) -> u32 {
        self.element_order[i]
    }

    /// The least common multiple of the element orders.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// The class of the inverses of the elements of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of[self.inverse[self.class_rep(c)]]
    }

    /// `sign(w)` for `w t`.
    pub fn sign(&self, i: usize) -> i64 {
        self.ambient.weyl().sign(self.elements[i].0)
    }

    /// A generating set, chosen greedily in element order.
    fn generators(&self) -> Result<Vec<usize>> {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0usize];
        let mut gens = Vec::new();
        for g in 0..n {
            if inside[g] {
                continue;
            }
            gens.push(g);
            // Close up under right multiplication by all generators so far.
            let mut queue: VecDeque<usize> = members.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &s in &gens {
                    let y = self.index(self.ambient.mul_elt(self.elements[x], self.elements[s]))?;
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(gens)
    }

    fn build_classes(&mut self, gens: &[usize]) -> Result<()> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            class_of[start] = c;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &s in gens {
                    let sx = self.ambient.mul_elt(self.elements[s], self.elements[x]);
                    let y = self.index(self.ambient.mul_elt(sx, self.elements[self.inverse[s]]))?;
                    if class_of[y] == usize::MAX {
                        class_of[y] = c;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.class_of = class_of;
        self.classes = classes;
        Ok(())
    }

    fn compute_order(&self, i: usize) -> Result<u32> {
        let mut x = i;
        let mut k = 1u32;
        while x != 0 {
            x = self.index(self.ambient.mul_elt(self.elements[x], self.elements[i]))?;
            k += 1;
            if k as usize > self.order() {
                return Err(Error::Internal("element of unbounded order".into()));
            }
        }
        Ok(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{Flavor, RootDatum, WeylGroup};

    fn ambient(t: &str, flavor: Flavor, n: u32) -> (Arc<CharSpace>, Arc<GroupAlgebra>) {
        let g = Arc::new(WeylGroup::new(RootDatum::preset(t, flavor).unwrap()).unwrap());
        let space = Arc::new(CharSpace::new(g, n).unwrap());
        let ga = Arc::new(GroupAlgebra::new(&space));
        (space, ga)
    }

    #[test]
    fn class_equation() {
        let (_, ga) = ambient("B2", Flavor::Adjoint, 2);
        let g = FiniteGroup::semidirect(ga, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 32);
        let total: usize = (0..g.num_classes()).map(|c| g.class_size(c)).sum();
        assert_eq!(total, 32);
        assert_eq!(g.classes()[0], vec![0]);
    }

    #[test]
    fn symmetric_group_classes() {
        let (_, ga) = ambient("A3", Flavor::Adjoint, 1);
        let g = FiniteGroup::weyl(ga, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 24);
        let mut sizes: Vec<usize> = (0..g.num_classes()).map(|c| g.class_size(c)).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(g.exponent(), 12);
    }

    #[test]
    fn cap_is_enforced() {
        let (_, ga) = ambient("A3", Flavor::Adjoint, 1);
        assert!(matches!(FiniteGroup::weyl(ga, 10), Err(Error::EnumerationCap { cap: 10 })));
    }

    #[test]
    fn stabilizers_are_subgroups() {
        let (space, ga) = ambient("A1", Flavor::SimplyConnected, 2);
        for lam in space.iter() {
            let s = FiniteGroup::stabilizer(ga.clone(), &space, lam, DEFAULT_GROUP_CAP).unwrap();
            let r = FiniteGroup::reflection(ga.clone(), &space, lam, DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(s.order() % r.order(), 0);
        }
    }
}
