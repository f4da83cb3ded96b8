//! The algebra with basis `T_w 1_λ`, its bar involution, the `♭` and `˜`
//! maps, the canonical basis and structure constants.

mod elt;
mod specialize;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use dashu_int::IBig;
use rayon::prelude::*;

pub use elt::{Basis, HeckeElt};
pub use specialize::{GroupAlgebra, GroupAlgebraElt};

use crate::exact_arith::LaurentPoly;
use crate::torus_chars::{CharSpace, TorusChar};
use crate::weyl::{WeylElt, WeylGroup};

/// Sparse row of structure constants: `(j, h_{i,i',j})` pairs sorted by `j`.
pub type HRow = Vec<(usize, LaurentPoly)>;

/// The algebra attached to a root datum and `n`.
///
/// Basis indices are `w * #𝔰 + λ`, which orders them by length, then by least
/// reduced word, then by the coordinates of `λ`.
#[derive(Debug)]
pub struct HeckeAlgebra {
    space: Arc<CharSpace>,
    canonical: Vec<OnceLock<Vec<(WeylElt, LaurentPoly)>>>,
}

impl HeckeAlgebra {
    pub fn new(space: Arc<CharSpace>) -> Self {
        space.group().ensure_mul_table();
        let dim = space.group().order() * space.len();
        Self { space, canonical: (0..dim).map(|_| OnceLock::new()).collect() }
    }

    pub fn space(&self) -> &Arc<CharSpace> {
        &self.space
    }

    pub fn group(&self) -> &WeylGroup {
        self.space.group()
    }

    pub fn dim(&self) -> usize {
        self.canonical.len()
    }

    pub fn index(&self, w: WeylElt, lam: TorusChar) -> usize {
        w * self.space.len() + lam
    }

    pub fn unindex(&self, i: usize) -> (WeylElt, TorusChar) {
        (i / self.space.len(), i % self.space.len())
    }

    /// Whether the simple reflection `s` lies in `W_λ`.
    pub fn simple_in_w_lambda(&self, s: usize, lam: TorusChar) -> bool {
        self.space.r_lambda(lam) >> s & 1 == 1
    }

    /// The unit `T_1 = sum_λ 1_λ`.
    pub fn one(&self) -> HeckeElt {
        let mut e = HeckeElt::zero(Basis::T);
        for lam in self.space.iter() {
            e.add_term(0, lam, &LaurentPoly::one());
        }
        e
    }

    pub fn t_hat(&self, w: WeylElt, lam: TorusChar) -> HeckeElt {
        HeckeElt::basis_elt(Basis::T, w, lam)
    }

    /// The unnormalized `T_w 1_λ = v^{|w|} T̂_w 1_λ`.
    pub fn t(&self, w: WeylElt, lam: TorusChar) -> HeckeElt {
        let mut e = HeckeElt::zero(Basis::T);
        e.add_term(w, lam, &LaurentPoly::monomial(1, self.group().length(w) as i32));
        e
    }

    /// `T̂_s · x` for a vector `x` in the right sector `1_μ`.
    fn ts_left(&self, s: usize, x: &[LaurentPoly], mu: TorusChar, inverse: bool) -> Vec<LaurentPoly> {
        let g = self.group();
        let cox = g.coxeter();
        let mut out = vec![LaurentPoly::zero(); x.len()];
        let vv = LaurentPoly::v_minus_v_inv();
        for (y, f) in x.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let sy = cox.lmul(s, y);
            out[sy] += f;
            if cox.length(sy) < cox.length(y) && self.simple_in_w_lambda(s, self.space.act(sy, mu)) {
                out[y] += &(f * &vv);
            }
            if inverse && self.simple_in_w_lambda(s, self.space.act(y, mu)) {
                out[y] -= &(f * &vv);
            }
        }
        out
    }

    /// `T̂_w · x` for every `w ∈ W`, for a vector `x` in the right sector `1_μ`.
    pub fn left_orbit(&self, x: &[LaurentPoly], mu: TorusChar) -> Vec<Vec<LaurentPoly>> {
        let g = self.group();
        let cox = g.coxeter();
        let mut out: Vec<Vec<LaurentPoly>> = Vec::with_capacity(g.order());
        out.push(x.to_vec());
        for w in 1..g.order() {
            let s = cox.first_left_descent(w).expect("non-identity");
            let next = self.ts_left(s, &out[cox.lmul(s, w)], mu, false);
            out.push(next);
        }
        out
    }

    fn sectors(&self, a: &HeckeElt) -> BTreeMap<TorusChar, Vec<LaurentPoly>> {
        let size = self.group().order();
        let mut out: BTreeMap<TorusChar, Vec<LaurentPoly>> = BTreeMap::new();
        for (&(w, lam), f) in a.terms() {
            out.entry(lam).or_insert_with(|| vec![LaurentPoly::zero(); size])[w] += f;
        }
        out
    }

    fn from_sectors(&self, sectors: BTreeMap<TorusChar, Vec<LaurentPoly>>) -> HeckeElt {
        let mut terms = BTreeMap::new();
        for (lam, vec) in sectors {
            for (w, f) in vec.into_iter().enumerate() {
                if !f.is_zero() {
                    terms.insert((w, lam), f);
                }
            }
        }
        HeckeElt::from_map(Basis::T, terms)
    }

    /// Product of two elements in the normalized standard basis.
    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        assert_eq!((a.basis(), b.basis()), (Basis::T, Basis::T), "multiply in the T basis");
        let g = self.group();
        let cox = g.coxeter();
        let a_sectors = self.sectors(a);
        let mut out: BTreeMap<TorusChar, Vec<LaurentPoly>> = BTreeMap::new();
        for (mu, bvec) in self.sectors(b) {
            let mut acc = vec![LaurentPoly::zero(); g.order()];
            for (wp, gcoef) in bvec.iter().enumerate() {
                if gcoef.is_zero() {
                    continue;
                }
                let Some(avec) = a_sectors.get(&self.space.act(wp, mu)) else { continue };
                // T̂_w T̂_{w'} 1_μ for every w in the support of a, sharing prefixes.
                let mut memo: BTreeMap<WeylElt, Vec<LaurentPoly>> = BTreeMap::new();
                let mut start = vec![LaurentPoly::zero(); g.order()];
                start[wp] = gcoef.clone();
                memo.insert(0, start);
                for (w, f) in avec.iter().enumerate() {
                    if f.is_zero() {
                        continue;
                    }
                    let word = cox.reduced_word(w);
                    // w = s_1 ... s_k; build suffixes s_j ... s_k.
                    let mut cur = 0;
                    for j in (0..word.len()).rev() {
                        let next = cox.lmul(word[j], cur);
                        if !memo.contains_key(&next) {
                            let v = self.ts_left(word[j], &memo[&cur], mu, false);
                            memo.insert(next, v);
                        }
                        cur = next;
                    }
                    for (k, c) in memo[&w].iter().enumerate() {
                        if !c.is_zero() {
                            acc[k] += &(c * f);
                        }
                    }
                }
            }
            out.insert(mu, acc);
        }
        self.from_sectors(out)
    }

    /// The bar involution: `f T̂_w 1_λ ↦ f̄ (T̂_{w⁻¹})⁻¹ 1_λ`.
    pub fn bar(&self, a: &HeckeElt) -> HeckeElt {
        assert_eq!(a.basis(), Basis::T);
        let g = self.group();
        let cox = g.coxeter();
        let mut out = BTreeMap::new();
        for (mu, vec) in self.sectors(a) {
            let top = vec.iter().rposition(|f| !f.is_zero()).unwrap_or(0);
            let mut images: Vec<Vec<LaurentPoly>> = Vec::with_capacity(top + 1);
            let mut unit = vec![LaurentPoly::zero(); g.order()];
            unit[0] = LaurentPoly::one();
            images.push(unit);
            for w in 1..=top {
                let s = cox.first_left_descent(w).expect("non-identity");
                let next = self.ts_left(s, &images[cox.lmul(s, w)], mu, true);
                images.push(next);
            }
            let mut acc = vec![LaurentPoly::zero(); g.order()];
            for (w, f) in vec.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                let fb = f.bar();
                for (k, c) in images[w].iter().enumerate() {
                    if !c.is_zero() {
                        acc[k] += &(c * &fb);
                    }
                }
            }
            out.insert(mu, acc);
        }
        self.from_sectors(out)
    }

    /// `♭`: the antiautomorphism `T_w 1_λ ↦ 1_λ T_{w⁻¹} = T_{w⁻¹} 1_{w(λ)}`.
    pub fn flat(&self, a: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero(a.basis());
        for (&(w, lam), f) in a.terms() {
            let (w2, l2) = self.flat_index(w, lam);
            out.add_term(w2, l2, f);
        }
        out
    }

    /// `w·λ ↦ w⁻¹·w(λ)`, the index permutation underlying `♭`.
    pub fn flat_index(&self, w: WeylElt, lam: TorusChar) -> (WeylElt, TorusChar) {
        (self.group().inverse(w), self.space.act(w, lam))
    }

    /// `˜`: the automorphism `T_w 1_λ ↦ T_w 1_{λ⁻¹}`.
    pub fn tilde(&self, a: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero(a.basis());
        for (&(w, lam), f) in a.terms() {
            out.add_term(w, self.space.inv(lam), f);
        }
        out
    }

    /// The terms of `c_{w·λ}` in the normalized standard basis, all in sector `λ`.
    pub fn canonical_terms(&self, w: WeylElt, lam: TorusChar) -> &[(WeylElt, LaurentPoly)] {
        self.canonical[self.index(w, lam)].get_or_init(|| {
            let g = self.group();
            let wl = self.space.w_lambda(lam);
            let (z, wp) = wl.min_coset_rep(g, w);
            let wp_local = wl.local(wp).expect("coset part lies in W_λ");
            let kl = wl.kl();
            let mut terms: Vec<(WeylElt, LaurentPoly)> = wl
                .coxeter()
                .lower_interval(wp_local)
                .into_iter()
                .map(|y| (g.mul(z, wl.element(y)), kl.p_v(y, wp_local)))
                .collect();
            terms.sort_by_key(|t| t.0);
            terms
        })
    }

    /// `c_{w·λ} = sum_{y' ∈ W_λ} p^λ_{y',w'} T̂_{zy'} 1_λ` with `w = zw'`.
    pub fn canonical(&self, w: WeylElt, lam: TorusChar) -> HeckeElt {
        let mut e = HeckeElt::zero(Basis::T);
        for (u, f) in self.canonical_terms(w, lam) {
            e.add_term(*u, lam, f);
        }
        e
    }

    /// `|w'|_λ` for the decomposition `w = z w'`, the triangularity key of
    /// the canonical basis.
    fn c_key(&self, w: WeylElt, lam: TorusChar) -> u32 {
        let wl = self.space.w_lambda(lam);
        let (_, wp) = wl.min_coset_rep(self.group(), w);
        wl.coxeter().length(wl.local(wp).expect("in W_λ"))
    }

    /// Rewrites an element of the normalized standard basis in the canonical basis.
    pub fn expand_in_c(&self, a: &HeckeElt) -> HeckeElt {
        assert_eq!(a.basis(), Basis::T);
        let mut out = HeckeElt::zero(Basis::C);
        for (lam, mut vec) in self.sectors(a) {
            let mut order: Vec<(u32, WeylElt)> = (0..vec.len())
                .filter(|&w| !vec[w].is_zero())
                .map(|w| (self.c_key(w, lam), w))
                .collect();
            order.sort_by(|a, b| b.cmp(a));
            // c-terms only reach positions with smaller key in the same coset,
            // so a single pass over the support suffices once it is closed
            // under those positions.
            let mut pending: std::collections::BinaryHeap<(u32, WeylElt)> = order.into_iter().collect();
            let mut seen = std::collections::HashSet::new();
            while let Some((_, u)) = pending.pop() {
                if !seen.insert(u) {
                    continue;
                }
                let f = std::mem::take(&mut vec[u]);
                if f.is_zero() {
                    continue;
                }
                out.add_term(u, lam, &f);
                for (y, p) in self.canonical_terms(u, lam) {
                    if *y == u {
                        continue;
                    }
                    vec[*y] -= &(p * &f);
                    if !seen.contains(y) {
                        pending.push((self.c_key(*y, lam), *y));
                    }
                }
            }
        }
        out
    }

    /// Converts a canonical-basis expansion back to the standard basis.
    pub fn from_c(&self, a: &HeckeElt) -> HeckeElt {
        assert_eq!(a.basis(), Basis::C);
        let mut out = HeckeElt::zero(Basis::T);
        for (&(w, lam), f) in a.terms() {
            for (u, p) in self.canonical_terms(w, lam) {
                out.add_term(*u, lam, &(p * f));
            }
        }
        out
    }

    /// `h_{x·λ, y·λ', ·}`: the canonical-basis expansion of `c_{x·λ} c_{y·λ'}`.
    pub fn h_constants(&self, x: (WeylElt, TorusChar), y: (WeylElt, TorusChar)) -> HeckeElt {
        let prod = self.mul(&self.canonical(x.0, x.1), &self.canonical(y.0, y.1));
        self.expand_in_c(&prod)
    }

    /// Coefficients `N(w·λ, k)` of `v^k c_{w·λ}` in `c_{w_1·λ_1} ... c_{w_r·λ_r}`.
    pub fn product_coefficients(&self, seq: &[(WeylElt, TorusChar)]) -> BTreeMap<(WeylElt, TorusChar), BTreeMap<i32, IBig>> {
        assert!(!seq.is_empty(), "empty product");
        let mut acc = self.canonical(seq[0].0, seq[0].1);
        for &(w, lam) in &seq[1..] {
            acc = self.mul(&acc, &self.canonical(w, lam));
        }
        self.expand_in_c(&acc)
            .terms()
            .map(|(&k, f)| (k, f.terms().map(|(e, c)| (e, c.clone())).collect()))
            .collect()
    }

    /// The complete table of structure constants in the canonical basis:
    /// entry `[i * dim + i']` is the sparse row of `h_{i,i',·}`.
    pub fn h_table(&self) -> Vec<HRow> {
        let dim = self.dim();
        let g = self.group();
        // For each right factor c_{y·λ'}, precompute T̂_u c_{y·λ'} for all u.
        let columns: Vec<Vec<(usize, HRow)>> = (0..dim)
            .into_par_iter()
            .map(|ip| {
                let (y, lp) = self.unindex(ip);
                let mut start = vec![LaurentPoly::zero(); g.order()];
                for (u, p) in self.canonical_terms(y, lp) {
                    start[*u] = p.clone();
                }
                let orbit = self.left_orbit(&start, lp);
                let lam = self.space.act(y, lp);
                (0..g.order())
                    .map(|x| {
                        let mut acc = vec![LaurentPoly::zero(); g.order()];
                        for (u, p) in self.canonical_terms(x, lam) {
                            for (k, c) in orbit[*u].iter().enumerate() {
                                if !c.is_zero() {
                                    acc[k] += &(c * p);
                                }
                            }
                        }
                        let mut sectors = BTreeMap::new();
                        sectors.insert(lp, acc);
                        let c = self.expand_in_c(&self.from_sectors(sectors));
                        let row: HRow = c.terms().map(|(&(w, l), f)| (self.index(w, l), f.clone())).collect();
                        (self.index(x, lam), row)
                    })
                    .collect()
            })
            .collect();
        let mut table = vec![HRow::new(); dim * dim];
        for (ip, col) in columns.into_iter().enumerate() {
            for (i, row) in col {
                table[i * dim + ip] = row;
            }
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{Flavor, RootDatum};

    fn algebra(t: &str, f: Flavor, n: u32) -> HeckeAlgebra {
        let g = Arc::new(WeylGroup::new(RootDatum::preset(t, f).unwrap()).unwrap());
        HeckeAlgebra::new(Arc::new(CharSpace::new(g, n).unwrap()))
    }

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn quadratic_relation() {
        let h = algebra("A1", Flavor::Adjoint, 2);
        // W_λ = W for both characters of the adjoint A1 mod 2.
        for lam in 0..2 {
            let ts = h.t(1, lam);
            let sq = h.mul(&ts, &ts);
            let mut expect = HeckeElt::zero(Basis::T);
            expect.add_term(0, lam, &lp(&[(2, 1)]));
            expect.add_term(1, lam, &(&lp(&[(2, 1), (0, -1)]) * &LaurentPoly::v()));
            assert_eq!(sq, expect);
        }
        let h = algebra("A1", Flavor::SimplyConnected, 2);
        let ts = h.t(1, 1);
        let mut expect = HeckeElt::zero(Basis::T);
        expect.add_term(0, 1, &lp(&[(2, 1)]));
        assert_eq!(h.mul(&ts, &ts), expect);
    }

    #[test]
    fn small_canonical_elements() {
        let h = algebra("A2", Flavor::Adjoint, 1);
        let c = h.canonical(1, 0);
        let mut expect = h.t_hat(1, 0);
        expect.add_term(0, 0, &LaurentPoly::v_inv());
        assert_eq!(c, expect);
        assert_eq!(h.bar(&c), c);
        let e = h.expand_in_c(&h.t_hat(1, 0));
        let mut expect = HeckeElt::basis_elt(Basis::C, 1, 0);
        expect.add_term(0, 0, &-LaurentPoly::v_inv());
        assert_eq!(e, expect);
    }

    #[test]
    fn a1_h_constant() {
        let h = algebra("A1", Flavor::Adjoint, 1);
        let c = h.h_constants((1, 0), (1, 0));
        assert_eq!(c.coeff(1, 0), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn h_table_matches_direct_products() {
        let h = algebra("B2", Flavor::SimplyConnected, 2);
        let table = h.h_table();
        let dim = h.dim();
        for i in (0..dim).step_by(5) {
            for ip in (0..dim).step_by(3) {
                let direct = h.h_constants(h.unindex(i), h.unindex(ip));
                let row: HRow = direct.terms().map(|(&(w, l), f)| (h.index(w, l), f.clone())).collect();
                assert_eq!(table[i * dim + ip], row);
            }
        }
    }
}
