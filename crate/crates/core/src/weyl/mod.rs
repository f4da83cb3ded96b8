//! Root data, root systems and Weyl groups.

mod coxeter;
mod datum;

use std::collections::HashMap;
use std::sync::OnceLock;

pub use coxeter::{degrees_from_poincare, sort_canonically, CoxeterSystem};
pub use datum::{cartan_matrix, Flavor, RootDatum};

use crate::error::{Error, Result};
use datum::dot;

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Index of an element in its [`WeylGroup`]. Indices are canonical: two
/// indices are equal iff the elements are.
pub type WeylElt = usize;

/// A root together with its coroot, in several coordinate systems.
#[derive(Clone, Debug)]
pub struct Root {
    /// Coordinates in the basis of simple roots.
    pub simple: Vec<i64>,
    /// Coordinates of the root in `X`.
    pub x: Vec<i64>,
    /// Coordinates of the coroot in `Y`.
    pub coroot: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }
}

/// The Weyl group of a root datum, with every element stored as its
/// permutation of the full root list.
///
/// Roots `0..ν` are the positive roots ordered by height (simple roots
/// first, in node order) and `ν + k` is the negative of root `k`.
/// Elements are ordered by length and then by their lexicographically least
/// reduced word.
#[derive(Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    roots: Vec<Root>,
    nu: usize,
    perms: Vec<Vec<u16>>,
    x_mats: Vec<Vec<i64>>,
    y_mats: Vec<Vec<i64>>,
    inverse: Vec<u32>,
    reflections: Vec<WeylElt>,
    coxeter: CoxeterSystem,
    mul_table: OnceLock<Vec<u32>>,
}

impl WeylGroup {
    pub fn new(datum: RootDatum) -> Result<Self> {
        Self::with_cap(datum, DEFAULT_CAP)
    }

    pub fn with_cap(datum: RootDatum, cap: usize) -> Result<Self> {
        datum.validate()?;
        let roots = generate_roots(&datum, cap)?;
        let nu = roots.len() / 2;
        let r = datum.rank();
        let n_roots = roots.len();
        let root_index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(k, root)| (root.simple.clone(), k)).collect();

        // Simple reflections as root permutations.
        let simple_perms: Vec<Vec<u16>> = (0..r)
            .map(|i| {
                roots
                    .iter()
                    .map(|root| {
                        let image = reflect_simple(&datum.cartan, i, &root.simple);
                        root_index[&image] as u16
                    })
                    .collect()
            })
            .collect();

        // Breadth-first closure under left multiplication.
        let identity: Vec<u16> = (0..n_roots as u16).collect();
        let mut index: HashMap<Vec<u16>, u32> = HashMap::new();
        let mut perms = vec![identity.clone()];
        index.insert(identity, 0);
        let mut left: Vec<Vec<u32>> = vec![Vec::new(); r];
        let mut head = 0;
        while head < perms.len() {
            for (g, sp) in simple_perms.iter().enumerate() {
                let image: Vec<u16> = perms[head].iter().map(|&b| sp[b as usize]).collect();
                let k = match index.get(&image) {
                    Some(&k) => k,
                    None => {
                        if perms.len() >= cap {
                            return Err(Error::EnumerationCap { cap });
                        }
                        let k = perms.len() as u32;
                        index.insert(image.clone(), k);
                        perms.push(image);
                        k
                    }
                };
                left[g].push(k);
            }
            head += 1;
        }
        drop(index);
        let size = perms.len();
        let length: Vec<u32> =
            perms.iter().map(|p| p[..nu].iter().filter(|&&b| b as usize >= nu).count() as u32).collect();

        // Canonical order: (length, lexicographically least reduced word).
        let word = |mut x: usize| {
            let mut w = Vec::new();
            while let Some(g) = (0..r).find(|&g| length[left[g][x] as usize] < length[x]) {
                w.push(g);
                x = left[g][x] as usize;
            }
            w
        };
        let mut order: Vec<usize> = (0..size).collect();
        let words: Vec<Vec<usize>> = (0..size).map(word).collect();
        order.sort_by(|&a, &b| length[a].cmp(&length[b]).then_with(|| words[a].cmp(&words[b])));
        let mut new_of = vec![0u32; size];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new as u32;
        }
        let perms: Vec<Vec<u16>> = order.iter().map(|&old| perms[old].clone()).collect();
        let length: Vec<u32> = order.iter().map(|&old| length[old]).collect();
        let left: Vec<Vec<u32>> = left
            .iter()
            .map(|row| order.iter().map(|&old| new_of[row[old] as usize]).collect())
            .collect();

        let perm_index: HashMap<&[u16], u32> =
            perms.iter().enumerate().map(|(k, p)| (p.as_slice(), k as u32)).collect();
        let right: Vec<Vec<u32>> = simple_perms
            .iter()
            .map(|sp| {
                perms
                    .iter()
                    .map(|p| {
                        let image: Vec<u16> = sp.iter().map(|&b| p[b as usize]).collect();
                        perm_index[image.as_slice()]
                    })
                    .collect()
            })
            .collect();
        let inverse: Vec<u32> = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0u16; p.len()];
                for (b, &img) in p.iter().enumerate() {
                    inv[img as usize] = b as u16;
                }
                perm_index[inv.as_slice()]
            })
            .collect();
        drop(perm_index);

        let coxeter = CoxeterSystem::new(left, right, length);
        let (x_mats, y_mats) = lattice_matrices(&datum, &coxeter);

        let mut group = Self {
            datum,
            roots,
            nu,
            perms,
            x_mats,
            y_mats,
            inverse,
            reflections: Vec::new(),
            coxeter,
            mul_table: OnceLock::new(),
        };
        group.reflections = group.compute_reflections();
        Ok(group)
    }

    fn compute_reflections(&self) -> Vec<WeylElt> {
        // s_{w(α)} = w s_α w^{-1}; walk down to a simple root.
        (0..self.nu)
            .map(|b| {
                let mut w = 0;
                let mut beta = b;
                loop {
                    if beta < self.rank() {
                        let s = self.coxeter.generator(beta);
                        return self.mul(self.mul(w, s), self.inverse(w));
                    }
                    let g = (0..self.rank())
                        .find(|&g| {
                            let img = self.perms[self.coxeter.generator(g)][beta] as usize;
                            img < self.nu && self.roots[img].height() < self.roots[beta].height()
                        })
                        .expect("non-simple positive root has a lowering simple reflection");
                    let s = self.coxeter.generator(g);
                    w = self.mul(w, s);
                    beta = self.perms[s][beta] as usize;
                }
            })
            .collect()
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// Number of positive roots.
    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn coxeter(&self) -> &CoxeterSystem {
        &self.coxeter
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn is_positive_root(&self, k: usize) -> bool {
        k < self.nu
    }

    pub fn negate_root(&self, k: usize) -> usize {
        (k + self.nu) % (2 * self.nu)
    }

    /// The permutation of the root list induced by `w`.
    pub fn perm(&self, w: WeylElt) -> &[u16] {
        &self.perms[w]
    }

    /// Index of the root `w(β)`.
    pub fn act_on_root(&self, w: WeylElt, beta: usize) -> usize {
        self.perms[w][beta] as usize
    }

    /// Reflection in the positive root `beta`.
    pub fn reflection(&self, beta: usize) -> WeylElt {
        self.reflections[beta % self.nu.max(1)]
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElt {
        self.coxeter.generator(i)
    }

    pub fn identity(&self) -> WeylElt {
        0
    }

    pub fn longest(&self) -> WeylElt {
        self.coxeter.longest()
    }

    pub fn length(&self, w: WeylElt) -> u32 {
        self.coxeter.length(w)
    }

    pub fn inverse(&self, w: WeylElt) -> WeylElt {
        self.inverse[w] as usize
    }

    pub fn reduced_word(&self, w: WeylElt) -> Vec<usize> {
        self.coxeter.reduced_word(w)
    }

    pub fn from_word(&self, word: &[usize]) -> WeylElt {
        self.coxeter.from_word(word)
    }

    pub fn mul(&self, a: WeylElt, b: WeylElt) -> WeylElt {
        if let Some(table) = self.mul_table.get() {
            return table[a * self.order() + b] as usize;
        }
        self.mul_by_word(a, b)
    }

    fn mul_by_word(&self, a: WeylElt, b: WeylElt) -> WeylElt {
        self.coxeter.reduced_word(a).iter().rev().fold(b, |x, &g| self.coxeter.lmul(g, x))
    }

    /// Precomputes the full multiplication table when the group is small
    /// enough for it to pay off.
    pub fn ensure_mul_table(&self) {
        let n = self.order();
        if n <= 4096 {
            self.mul_table.get_or_init(|| {
                let mut t = vec![0u32; n * n];
                for a in 0..n {
                    for b in 0..n {
                        t[a * n + b] = self.mul_by_word(a, b) as u32;
                    }
                }
                t
            });
        }
    }

    pub fn bruhat_leq(&self, y: WeylElt, w: WeylElt) -> bool {
        self.coxeter.bruhat_leq(y, w)
    }

    /// Matrix of `w` on `X`, row-major, so that `w(x)_a = sum_b M[a][b] x_b`.
    pub fn x_matrix(&self, w: WeylElt) -> &[i64] {
        &self.x_mats[w]
    }

    pub fn y_matrix(&self, w: WeylElt) -> &[i64] {
        &self.y_mats[w]
    }

    pub fn act_on_x(&self, w: WeylElt, x: &[i64]) -> Result<Vec<i64>> {
        check_dim(self.rank(), x.len())?;
        Ok(apply(&self.x_mats[w], x))
    }

    pub fn act_on_y(&self, w: WeylElt, y: &[i64]) -> Result<Vec<i64>> {
        check_dim(self.rank(), y.len())?;
        Ok(apply(&self.y_mats[w], y))
    }

    /// Fundamental degrees, from the factorization of the Poincaré polynomial.
    pub fn degrees(&self) -> Result<Vec<u32>> {
        degrees_from_poincare(&self.coxeter.poincare(), self.rank())
            .ok_or_else(|| Error::Internal("Poincaré polynomial does not factor".into()))
    }

    /// Determinant of `w` on the reflection representation.
    pub fn sign(&self, w: WeylElt) -> i64 {
        if self.length(w) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `<x, α̌>` for `x` in `X` and the coroot of root `beta`.
    pub fn pair_with_coroot(&self, x: &[i64], beta: usize) -> i64 {
        dot(x, &self.roots[beta].coroot)
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

fn apply(m: &[i64], x: &[i64]) -> Vec<i64> {
    let r = x.len();
    (0..r).map(|a| (0..r).map(|b| m[a * r + b] * x[b]).sum()).collect()
}

fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0i64; r * r];
    for i in 0..r {
        for k in 0..r {
            let aik = a[i * r + k];
            if aik != 0 {
                for j in 0..r {
                    out[i * r + j] += aik * b[k * r + j];
                }
            }
        }
    }
    out
}

fn reflect_simple(cartan: &[Vec<i64>], i: usize, beta: &[i64]) -> Vec<i64> {
    // s_i(β) = β - <β, α̌_i> α_i in simple-root coordinates.
    let pairing: i64 = beta.iter().enumerate().map(|(j, &b)| b * cartan[j][i]).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

fn generate_roots(datum: &RootDatum, cap: usize) -> Result<Vec<Root>> {
    let r = datum.rank();
    let c = &datum.cartan;
    // Roots in simple-root coordinates, coroots in simple-coroot coordinates.
    let mut found: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    for i in 0..r {
        let e: Vec<i64> = (0..r).map(|j| i64::from(i == j)).collect();
        found.insert(e.clone(), e.clone());
        queue.push((e.clone(), e));
    }
    while let Some((beta, cobeta)) = queue.pop() {
        for i in 0..r {
            let image = reflect_simple(c, i, &beta);
            if found.contains_key(&image) {
                continue;
            }
            // s_i(β̌) = β̌ - <α_i, β̌> α̌_i
            let pairing: i64 = cobeta.iter().enumerate().map(|(j, &b)| c[i][j] * b).sum();
            let mut co = cobeta.clone();
            co[i] -= pairing;
            if found.len() >= cap {
                return Err(Error::EnumerationCap { cap });
            }
            found.insert(image.clone(), co.clone());
            queue.push((image, co));
        }
    }
    let mut positive: Vec<(Vec<i64>, Vec<i64>)> = found
        .into_iter()
        .filter(|(b, _)| b.iter().all(|&x| x >= 0))
        .collect();
    positive.sort_by(|a, b| {
        let ha: i64 = a.0.iter().sum();
        let hb: i64 = b.0.iter().sum();
        ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
    });
    let to_x = |s: &[i64]| -> Vec<i64> {
        (0..r).map(|a| (0..r).map(|i| s[i] * datum.simple_roots[i][a]).sum()).collect()
    };
    let to_y = |s: &[i64]| -> Vec<i64> {
        (0..r).map(|a| (0..r).map(|i| s[i] * datum.simple_coroots[i][a]).sum()).collect()
    };
    let mut roots: Vec<Root> = positive
        .iter()
        .map(|(s, co)| Root { simple: s.clone(), x: to_x(s), coroot: to_y(co) })
        .collect();
    let negatives: Vec<Root> = roots
        .iter()
        .map(|root| Root {
            simple: root.simple.iter().map(|x| -x).collect(),
            x: root.x.iter().map(|x| -x).collect(),
            coroot: root.coroot.iter().map(|x| -x).collect(),
        })
        .collect();
    roots.extend(negatives);
    Ok(roots)
}

fn lattice_matrices(datum: &RootDatum, cox: &CoxeterSystem) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let r = datum.rank();
    let ident: Vec<i64> = (0..r * r).map(|k| i64::from(k / r == k % r)).collect();
    let sx: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let (a, ac) = (&datum.simple_roots[i], &datum.simple_coroots[i]);
            (0..r * r).map(|k| ident[k] - a[k / r] * ac[k % r]).collect()
        })
        .collect();
    let sy: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let (a, ac) = (&datum.simple_roots[i], &datum.simple_coroots[i]);
            (0..r * r).map(|k| ident[k] - ac[k / r] * a[k % r]).collect()
        })
        .collect();
    let mut xm = vec![ident.clone()];
    let mut ym = vec![ident];
    for w in 1..cox.size() {
        let g = cox.first_left_descent(w).expect("non-identity element has a descent");
        let rest = cox.lmul(g, w);
        xm.push(mat_mul(&sx[g], &xm[rest], r));
        ym.push(mat_mul(&sy[g], &ym[rest], r));
    }
    (xm, ym)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(t: &str, f: Flavor) -> WeylGroup {
        WeylGroup::new(RootDatum::preset(t, f).unwrap()).unwrap()
    }

    #[test]
    fn small_orders() {
        let a1 = group("A1", Flavor::Adjoint);
        assert_eq!(a1.order(), 2);
        assert_eq!(a1.coxeter().lengths(), &[0, 1]);
        let a2 = group("A2", Flavor::Adjoint);
        assert_eq!((a2.order(), a2.nu()), (6, 3));
        let b2 = group("B2", Flavor::SimplyConnected);
        assert_eq!(b2.order(), 8);
        assert_eq!(b2.length(b2.longest()), 4);
        for (t, n) in [("A3", 24), ("A4", 120), ("B3", 48), ("C3", 48), ("D4", 192), ("G2", 12)] {
            assert_eq!(group(t, Flavor::Adjoint).order(), n, "{t}");
        }
    }

    #[test]
    fn degrees_match() {
        assert_eq!(group("A1", Flavor::Adjoint).degrees().unwrap(), vec![2]);
        assert_eq!(group("A2", Flavor::Adjoint).degrees().unwrap(), vec![2, 3]);
        assert_eq!(group("B2", Flavor::Adjoint).degrees().unwrap(), vec![2, 4]);
        assert_eq!(group("D4", Flavor::Adjoint).degrees().unwrap(), vec![2, 4, 4, 6]);
        assert_eq!(group("G2", Flavor::Adjoint).degrees().unwrap(), vec![2, 6]);
    }

    #[test]
    fn simple_reflection_negates_its_root() {
        let g = group("B3", Flavor::SimplyConnected);
        for i in 0..g.rank() {
            let alpha = g.roots()[i].x.clone();
            let img = g.act_on_x(g.simple_reflection(i), &alpha).unwrap();
            assert_eq!(img, alpha.iter().map(|x| -x).collect::<Vec<_>>());
        }
        assert!(g.act_on_x(0, &[1, 2]).is_err());
    }

    #[test]
    fn a2_bruhat_examples() {
        let g = group("A2", Flavor::Adjoint);
        let s1 = g.from_word(&[0]);
        let s2 = g.from_word(&[1]);
        let s1s2 = g.from_word(&[0, 1]);
        assert!(g.bruhat_leq(s1, s1s2));
        assert!(!g.bruhat_leq(s2, s1));
        assert_eq!(g.reduced_word(g.longest()), vec![0, 1, 0]);
    }

    #[test]
    fn reflections_fix_their_hyperplane() {
        let g = group("G2", Flavor::Adjoint);
        for b in 0..g.nu() {
            let s = g.reflection(b);
            assert_eq!(g.mul(s, s), 0);
            assert_eq!(g.act_on_root(s, b), g.negate_root(b));
        }
    }
}
