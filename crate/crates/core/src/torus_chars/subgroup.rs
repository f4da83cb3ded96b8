use std::sync::{Arc, OnceLock};

use super::{CharSpace, RootMask, TorusChar};
use crate::kl::KlTable;
use crate::weyl::{sort_canonically, CoxeterSystem, WeylElt, WeylGroup};

/// The reflection subgroup generated by a closed set of roots, with its own
/// Coxeter structure.
///
/// Local indices `0..size` follow the usual canonical order for the simple
/// system `Σ`: by `|·|_λ`, then by least reduced word in `Σ`.
#[derive(Debug)]
pub struct ReflectionSubgroup {
    pub mask: RootMask,
    /// Positive roots of the subsystem, as ambient root indices.
    pub positive_roots: Vec<usize>,
    /// The simple system `Σ`, as ambient positive root indices in increasing order.
    pub simple_roots: Vec<usize>,
    elements: Vec<WeylElt>,
    local: Vec<u32>,
    coxeter: CoxeterSystem,
    kl: OnceLock<KlTable>,
}

impl ReflectionSubgroup {
    pub fn new(group: &WeylGroup, mask: RootMask) -> Self {
        let nu = group.nu();
        let positive_roots: Vec<usize> = (0..nu).filter(|&b| mask >> b & 1 == 1).collect();
        // β is simple iff s_β makes exactly one positive root of the subsystem negative.
        let simple_roots: Vec<usize> = positive_roots
            .iter()
            .copied()
            .filter(|&b| {
                let s = group.reflection(b);
                positive_roots.iter().filter(|&&g| group.act_on_root(s, g) >= nu).count() == 1
            })
            .collect();
        let gens: Vec<WeylElt> = simple_roots.iter().map(|&b| group.reflection(b)).collect();

        let mut local = vec![u32::MAX; group.order()];
        let mut elements = vec![group.identity()];
        let mut dist = vec![0u32];
        local[group.identity()] = 0;
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head];
            for &s in &gens {
                let y = group.mul(s, x);
                if local[y] == u32::MAX {
                    local[y] = elements.len() as u32;
                    elements.push(y);
                    dist.push(dist[head] + 1);
                }
            }
            head += 1;
        }
        let length: Vec<u32> = elements
            .iter()
            .map(|&w| positive_roots.iter().filter(|&&b| group.act_on_root(w, b) >= nu).count() as u32)
            .collect();
        assert_eq!(length, dist, "root-count length disagrees with word length in the subgroup");
        let table = |f: &dyn Fn(WeylElt, WeylElt) -> WeylElt| -> Vec<Vec<u32>> {
            gens.iter().map(|&s| elements.iter().map(|&x| local[f(s, x)]).collect()).collect()
        };
        let left = table(&|s, x| group.mul(s, x));
        let right = table(&|s, x| group.mul(x, s));
        let (coxeter, order) = sort_canonically(left, right, length);
        let elements: Vec<WeylElt> = order.iter().map(|&old| elements[old]).collect();
        for (k, &w) in elements.iter().enumerate() {
            local[w] = k as u32;
        }
        Self { mask, positive_roots, simple_roots, elements, local, coxeter, kl: OnceLock::new() }
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn coxeter(&self) -> &CoxeterSystem {
        &self.coxeter
    }

    /// Kazhdan–Lusztig polynomials of the subgroup, in local indices.
    pub fn kl(&self) -> &KlTable {
        self.kl.get_or_init(|| KlTable::new(&self.coxeter))
    }

    /// Ambient element of local index `k`.
    pub fn element(&self, k: usize) -> WeylElt {
        self.elements[k]
    }

    pub fn elements(&self) -> &[WeylElt] {
        &self.elements
    }

    pub fn local(&self, w: WeylElt) -> Option<usize> {
        match self.local[w] {
            u32::MAX => None,
            k => Some(k as usize),
        }
    }

    pub fn contains(&self, w: WeylElt) -> bool {
        self.local[w] != u32::MAX
    }

    /// `|w|_λ` for any `w ∈ W`: the number of positive roots of the
    /// subsystem made negative by `w`.
    pub fn lambda_length(&self, group: &WeylGroup, w: WeylElt) -> u32 {
        let nu = group.nu();
        self.positive_roots.iter().filter(|&&b| group.act_on_root(w, b) >= nu).count() as u32
    }

    /// `|w|_λ` counted along a reduced expression `w = s_1 ... s_r`: the
    /// number of `i` with `s_r ... s_{i+1} s_i s_{i+1} ... s_r` in the subgroup.
    pub fn lambda_length_by_word(&self, group: &WeylGroup, w: WeylElt) -> u32 {
        let word = group.reduced_word(w);
        let mut count = 0;
        for i in 0..word.len() {
            let tail = group.from_word(&word[i + 1..]);
            let t = group.mul(group.mul(group.inverse(tail), group.simple_reflection(word[i])), tail);
            if self.contains(t) {
                count += 1;
            }
        }
        count
    }

    /// `(z, w')` with `z` the minimal element of `wW_λ` and `w = z w'`.
    pub fn min_coset_rep(&self, group: &WeylGroup, w: WeylElt) -> (WeylElt, WeylElt) {
        let nu = group.nu();
        let mut z = w;
        while let Some(&b) = self.simple_roots.iter().find(|&&b| group.act_on_root(z, b) >= nu) {
            z = group.mul(z, group.reflection(b));
        }
        (z, group.mul(group.inverse(z), w))
    }

    /// Local index of `x y x⁻¹` for an ambient `x` normalizing the subgroup.
    pub fn conjugate(&self, group: &WeylGroup, x: WeylElt, y_local: usize) -> usize {
        let y = self.elements[y_local];
        let c = group.mul(group.mul(x, y), group.inverse(x));
        self.local(c).expect("conjugating element normalizes the subgroup")
    }
}

/// `W_λ ⊆ W'_λ` and `Ω_λ` for one character.
#[derive(Debug)]
pub struct CharSubgroups {
    pub lambda: TorusChar,
    pub w_lambda: Arc<ReflectionSubgroup>,
    /// Stabilizer of `λ`, ascending.
    pub w_prime: Vec<WeylElt>,
    /// Elements of the stabilizer that keep the positive roots of `R_λ` positive.
    pub omega: Vec<WeylElt>,
}

impl CharSubgroups {
    pub(super) fn new(space: &CharSpace, lambda: TorusChar, w_lambda: Arc<ReflectionSubgroup>) -> Self {
        let group = space.group();
        let nu = group.nu();
        let w_prime: Vec<WeylElt> = (0..group.order()).filter(|&w| space.act(w, lambda) == lambda).collect();
        let omega: Vec<WeylElt> = w_prime
            .iter()
            .copied()
            .filter(|&x| w_lambda.positive_roots.iter().all(|&b| group.act_on_root(x, b) < nu))
            .collect();
        Self { lambda, w_lambda, w_prime, omega }
    }

    /// Local index of `x` in `Ω_λ`.
    pub fn omega_index(&self, x: WeylElt) -> Option<usize> {
        self.omega.binary_search(&x).ok()
    }

    /// Splits `w ∈ W'_λ` as `w = y x` with `y ∈ W_λ`, `x ∈ Ω_λ`.
    pub fn split(&self, group: &WeylGroup, w: WeylElt) -> Option<(WeylElt, WeylElt)> {
        if !self.w_prime.contains(&w) {
            return None;
        }
        let (z, y) = self.w_lambda.min_coset_rep(group, group.inverse(w));
        // w⁻¹ = z y  ⇒  w = y⁻¹ z⁻¹
        Some((group.inverse(y), group.inverse(z)))
    }
}
