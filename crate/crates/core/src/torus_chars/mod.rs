//! Characters of the `n`-torsion of the torus, identified with `X/nX`, and
//! the subgroups `W_λ ⊆ W'_λ` attached to each of them.

mod subgroup;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub use subgroup::{CharSubgroups, ReflectionSubgroup};

use crate::error::{Error, Result};
use crate::weyl::{WeylElt, WeylGroup};

/// Index of a character in its [`CharSpace`]; characters are ordered
/// lexicographically by their coordinates in `X/nX`.
pub type TorusChar = usize;

/// Bitmask over the root list of a Weyl group.
pub type RootMask = u128;

/// The set `X/nX` with its `W`-action.
#[derive(Debug)]
pub struct CharSpace {
    group: Arc<WeylGroup>,
    n: u32,
    count: usize,
    act: Vec<u32>,
    root_masks: Vec<RootMask>,
    reflection_subgroups: Mutex<HashMap<RootMask, Arc<ReflectionSubgroup>>>,
    subgroups: Vec<OnceLock<Arc<CharSubgroups>>>,
}

impl CharSpace {
    pub fn new(group: Arc<WeylGroup>, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        if group.roots().len() > RootMask::BITS as usize {
            return Err(Error::Precondition("root system too large for root bitmasks".into()));
        }
        let r = group.rank();
        let count = (n as usize).checked_pow(r as u32).ok_or(Error::EnumerationCap { cap: usize::MAX })?;
        let mut space = Self {
            group,
            n,
            count,
            act: Vec::new(),
            root_masks: Vec::new(),
            reflection_subgroups: Mutex::new(HashMap::new()),
            subgroups: (0..count).map(|_| OnceLock::new()).collect(),
        };
        let size = space.group.order();
        let mut act = vec![0u32; size * count];
        for w in 0..size {
            let m = space.group.x_matrix(w);
            for lam in 0..count {
                let x = space.coords(lam);
                let image: Vec<i64> =
                    (0..r).map(|a| (0..r).map(|b| m[a * r + b] * x[b] as i64).sum()).collect();
                act[w * count + lam] = space.index_of(&image) as u32;
            }
        }
        space.act = act;
        space.root_masks = (0..count)
            .map(|lam| {
                let x: Vec<i64> = space.coords(lam).iter().map(|&c| c as i64).collect();
                let mut mask: RootMask = 0;
                for (k, _) in space.group.roots().iter().enumerate() {
                    if space.group.pair_with_coroot(&x, k).rem_euclid(n as i64) == 0 {
                        mask |= 1 << k;
                    }
                }
                mask
            })
            .collect();
        Ok(space)
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `#𝔰 = n^ρ`.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn iter(&self) -> std::ops::Range<TorusChar> {
        0..self.count
    }

    /// The trivial character.
    pub fn trivial(&self) -> TorusChar {
        0
    }

    pub fn coords(&self, lam: TorusChar) -> Vec<u32> {
        let r = self.group.rank();
        let n = self.n as usize;
        let mut out = vec![0u32; r];
        let mut x = lam;
        for k in (0..r).rev() {
            out[k] = (x % n) as u32;
            x /= n;
        }
        out
    }

    /// The character with the given coordinates, reduced mod `n`.
    pub fn index_of(&self, coords: &[i64]) -> TorusChar {
        let n = self.n as i64;
        coords.iter().fold(0usize, |acc, &c| acc * self.n as usize + c.rem_euclid(n) as usize)
    }

    pub fn checked_index(&self, coords: &[i64]) -> Result<TorusChar> {
        let r = self.group.rank();
        if coords.len() != r {
            return Err(Error::DimensionMismatch { expected: r, got: coords.len() });
        }
        Ok(self.index_of(coords))
    }

    /// `w(λ)`.
    pub fn act(&self, w: WeylElt, lam: TorusChar) -> TorusChar {
        self.act[w * self.count + lam] as usize
    }

    /// `λ⁻¹`, coordinate negation.
    pub fn inv(&self, lam: TorusChar) -> TorusChar {
        let c: Vec<i64> = self.coords(lam).iter().map(|&x| -(x as i64)).collect();
        self.index_of(&c)
    }

    /// Product of characters, coordinate addition.
    pub fn add(&self, a: TorusChar, b: TorusChar) -> TorusChar {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let c: Vec<i64> = ca.iter().zip(&cb).map(|(&x, &y)| x as i64 + y as i64).collect();
        self.index_of(&c)
    }

    /// `<λ, α̌>` mod `n` for the root with index `beta`.
    pub fn pairing(&self, lam: TorusChar, beta: usize) -> u32 {
        let x: Vec<i64> = self.coords(lam).iter().map(|&c| c as i64).collect();
        self.group.pair_with_coroot(&x, beta).rem_euclid(self.n as i64) as u32
    }

    /// `R_λ` as a bitmask over the root list.
    pub fn r_lambda(&self, lam: TorusChar) -> RootMask {
        self.root_masks[lam]
    }

    pub fn r_lambda_roots(&self, lam: TorusChar) -> Vec<usize> {
        let mask = self.root_masks[lam];
        (0..self.group.roots().len()).filter(|&k| mask >> k & 1 == 1).collect()
    }

    /// `W`-orbit of `λ`, sorted.
    pub fn orbit(&self, lam: TorusChar) -> Vec<TorusChar> {
        let mut o: Vec<TorusChar> = (0..self.group.order()).map(|w| self.act(w, lam)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// All orbits, each sorted, listed by their least element.
    pub fn orbits(&self) -> Vec<Vec<TorusChar>> {
        let mut seen = vec![false; self.count];
        let mut out = Vec::new();
        for lam in self.iter() {
            if !seen[lam] {
                let o = self.orbit(lam);
                for &m in &o {
                    seen[m] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn reflection_subgroup(&self, mask: RootMask) -> Arc<ReflectionSubgroup> {
        if let Some(s) = self.reflection_subgroups.lock().unwrap().get(&mask) {
            return s.clone();
        }
        let sub = Arc::new(ReflectionSubgroup::new(&self.group, mask));
        self.reflection_subgroups.lock().unwrap().entry(mask).or_insert(sub).clone()
    }

    /// `W_λ`, `W'_λ` and `Ω_λ` for `λ`, cached.
    pub fn subgroups(&self, lam: TorusChar) -> Arc<CharSubgroups> {
        self.subgroups[lam]
            .get_or_init(|| {
                let wl = self.reflection_subgroup(self.root_masks[lam]);
                Arc::new(CharSubgroups::new(self, lam, wl))
            })
            .clone()
    }

    /// `W_λ` alone.
    pub fn w_lambda(&self, lam: TorusChar) -> Arc<ReflectionSubgroup> {
        self.reflection_subgroup(self.root_masks[lam])
    }

    /// `z = min(wW_λ)` and `w' ∈ W_λ` with `w = z w'`.
    pub fn min_coset_rep(&self, w: WeylElt, lam: TorusChar) -> (WeylElt, WeylElt) {
        self.w_lambda(lam).min_coset_rep(&self.group, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{Flavor, RootDatum};

    fn space(t: &str, f: Flavor, n: u32) -> CharSpace {
        let g = Arc::new(WeylGroup::new(RootDatum::preset(t, f).unwrap()).unwrap());
        CharSpace::new(g, n).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(space("A1", Flavor::Adjoint, 1).len(), 1);
        assert_eq!(space("B2", Flavor::SimplyConnected, 3).len(), 9);
        assert_eq!(space("A3", Flavor::Adjoint, 2).len(), 8);
    }

    #[test]
    fn adjoint_a1_mod_2_is_fixed() {
        let s = space("A1", Flavor::Adjoint, 2);
        assert_eq!(s.orbits(), vec![vec![0], vec![1]]);
        assert_eq!(s.r_lambda_roots(1), vec![0, 1]);
    }

    #[test]
    fn sc_a1_mod_2() {
        let s = space("A1", Flavor::SimplyConnected, 2);
        assert!(s.r_lambda_roots(1).is_empty());
        let sub = s.subgroups(1);
        assert_eq!(sub.w_lambda.size(), 1);
        assert_eq!(sub.w_prime, vec![0, 1]);
        assert_eq!(sub.omega, vec![0, 1]);
    }

    #[test]
    fn trivial_char() {
        let s = space("B2", Flavor::Adjoint, 2);
        let sub = s.subgroups(s.trivial());
        assert_eq!(sub.w_lambda.size(), 8);
        assert_eq!(sub.omega, vec![0]);
        for w in 0..8 {
            assert_eq!(s.min_coset_rep(w, 0), (0, w));
        }
    }
}
