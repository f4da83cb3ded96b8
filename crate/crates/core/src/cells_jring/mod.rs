//! Based algebras: the `a`-function, leading coefficients `h*`, left and
//! two-sided cells, the asymptotic ring with its trace `τ`, the map `ψ`,
//! truncated products, and the axioms Q1–Q11.

mod axioms;
mod chain;
mod instances;

use std::collections::BTreeMap;
use std::fmt;

use dashu_int::IBig;
use serde::Serialize;

pub use axioms::{verify_axioms, AxiomCheck, AxiomReport};
pub(crate) use axioms::Tally;
pub use chain::{ChainReport, ConnectingSequences, MatrixChain};
pub use instances::{
    corner_from_extended, coxeter_h_table, coxeter_hecke, extended, hecke_corner, hecke_full, hecke_orbit, matrix_algebra, transport_orbit,
};

use crate::exact_arith::{LaurentPoly, RBig, RMatrix};
use crate::hecke::HRow;
use crate::weyl::WeylElt;
use crate::{Error, Result};

/// What a basis index stands for in one of the standard instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Label {
    /// `c_w` in the Hecke algebra of a reflection subgroup; `w` is ambient.
    Coxeter { w: WeylElt },
    /// `c_w ⊗ x` with `w ∈ W_λ`, `x ∈ Ω_λ`.
    Extended { w: WeylElt, x: WeylElt },
    /// `c_{w·λ}`.
    Hecke { w: WeylElt, lam: usize },
    /// `b_{w,λ₁,λ₂}` in the matrix algebra over `1_{λ₀} H 1_{λ₀}`.
    Matrix { w: WeylElt, from: usize, to: usize },
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Coxeter { w } => write!(f, "w{w}"),
            Label::Extended { w, x } => write!(f, "w{w}⊗x{x}"),
            Label::Hecke { w, lam } => write!(f, "w{w}·λ{lam}"),
            Label::Matrix { w, from, to } => write!(f, "w{w}[{from},{to}]"),
        }
    }
}

/// An algebra with a finite basis `b_i`, structure constants
/// `b_i b_{i'} = sum_j h_{i,i',j} b_j`, an involution `i ↦ i!` inducing an
/// antiautomorphism, and a subset `I₀` of its fixed points.
#[derive(Clone, Debug)]
pub struct BasedAlgebra {
    name: String,
    labels: Vec<Label>,
    /// `h[i * dim + i']` is the sparse row of `h_{i,i',·}`, sorted by `j`.
    h: Vec<HRow>,
    bang: Vec<usize>,
    i0: Vec<bool>,
}

impl BasedAlgebra {
    pub fn new(name: impl Into<String>, labels: Vec<Label>, h: Vec<HRow>, bang: Vec<usize>, i0: Vec<bool>) -> Result<Self> {
        let dim = labels.len();
        if h.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: h.len() });
        }
        if bang.len() != dim || i0.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: bang.len().min(i0.len()) });
        }
        for i in 0..dim {
            if bang[i] >= dim || bang[bang[i]] != i {
                return Err(Error::Precondition(format!("! is not an involution at {}", labels[i])));
            }
            if i0[i] && bang[i] != i {
                return Err(Error::Precondition(format!("{} lies in I₀ but is not fixed by !", labels[i])));
            }
        }
        Ok(Self { name: name.into(), labels, h, bang, i0 })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn bang(&self, i: usize) -> usize {
        self.bang[i]
    }

    pub fn in_i0(&self, i: usize) -> bool {
        self.i0[i]
    }

    pub fn i0(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(|&i| self.i0[i])
    }

    /// The sparse row `h_{i,i',·}`.
    pub fn row(&self, i: usize, ip: usize) -> &HRow {
        &self.h[i * self.dim() + ip]
    }

    pub fn h(&self, i: usize, ip: usize, j: usize) -> LaurentPoly {
        let row = self.row(i, ip);
        match row.binary_search_by_key(&j, |t| t.0) {
            Ok(k) => row[k].1.clone(),
            Err(_) => LaurentPoly::zero(),
        }
    }

    pub(crate) fn rows(&self) -> &[HRow] {
        &self.h
    }

    /// The indices `U` with `1 = sum_{i ∈ U} b_i`, if the unit has that form.
    pub fn unit_support(&self) -> Option<Vec<usize>> {
        let dim = self.dim();
        let one = LaurentPoly::one();
        let partial = |i: usize| (0..dim).all(|ip| {
            let row = self.row(i, ip);
            row.is_empty() || (row.len() == 1 && row[0].0 == ip && row[0].1 == one)
        });
        let support: Vec<usize> = (0..dim).filter(|&i| partial(i)).collect();
        let is_unit = (0..dim).all(|j| {
            let hits = |left: bool| {
                support.iter().filter(|&&u| !if left { self.row(u, j) } else { self.row(j, u) }.is_empty()).count()
            };
            hits(true) == 1
                && hits(false) == 1
                && support.iter().all(|&u| self.row(j, u).iter().all(|(k, f)| *k == j && *f == one))
        });
        is_unit.then_some(support)
    }

    /// Replaces `I₀`, keeping the same table.
    pub fn with_i0(mut self, i0: Vec<bool>) -> Result<Self> {
        for (i, &b) in i0.iter().enumerate() {
            if b && self.bang[i] != i {
                return Err(Error::Precondition(format!("{} lies in I₀ but is not fixed by !", self.labels[i])));
            }
        }
        self.i0 = i0;
        Ok(self)
    }

    /// `a(j)`: the least `m ≥ 0` with every `h_{i,i',j} ∈ v^{-m} Z[v]`.
    pub fn a_values(&self) -> Vec<u32> {
        a_values(&self.h, self.dim())
    }

    /// The expansion of `b_{i_1} ... b_{i_r}` in the basis, computed from the
    /// structure constants alone: `N(i, k)` is the coefficient of `v^k b_i`.
    pub fn product_coefficients(&self, seq: &[usize]) -> BTreeMap<usize, BTreeMap<i32, IBig>> {
        assert!(!seq.is_empty(), "empty product");
        let mut acc: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        acc.insert(seq[0], LaurentPoly::one());
        for &next in &seq[1..] {
            let mut out: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
            for (&j, f) in &acc {
                for (k, g) in self.row(j, next) {
                    *out.entry(*k).or_default() += &(f * g);
                }
            }
            out.retain(|_, f| !f.is_zero());
            acc = out;
        }
        acc.into_iter().map(|(k, f)| (k, f.terms().map(|(e, c)| (e, c.clone())).collect())).collect()
    }

    /// The same algebra with one structure constant replaced, for negative
    /// controls.
    pub fn corrupted(&self, i: usize, ip: usize, j: usize, value: LaurentPoly) -> Self {
        let mut out = self.clone();
        let dim = self.dim();
        let row = &mut out.h[i * dim + ip];
        row.retain(|t| t.0 != j);
        if !value.is_zero() {
            row.push((j, value));
            row.sort_by_key(|t| t.0);
        }
        out.name = format!("{} (corrupted)", self.name);
        out
    }

    /// Computes the `a`-function, cells and the asymptotic ring.
    pub fn analyze(&self) -> Analysis {
        let a = self.a_values();
        let cells = CellPartition::new(self, a);
        let jring = JRing::new(self, &cells.a);
        Analysis { cells, jring }
    }
}

pub(crate) fn a_values(h: &[HRow], dim: usize) -> Vec<u32> {
    let mut a = vec![0u32; dim];
    for row in h {
        for (j, f) in row {
            if let Some(m) = f.min_exp() {
                if m < 0 {
                    a[*j] = a[*j].max((-m) as u32);
                }
            }
        }
    }
    a
}

/// Reachability in a preorder, one bitset per source.
#[derive(Clone, Debug)]
struct Reach {
    words: usize,
    bits: Vec<u64>,
}

impl Reach {
    /// `edges[i]` lists the `j` with `j ⪯ i` in one generating step; the
    /// result has `j` in row `i` iff `j ⪯ i`.
    fn closure(dim: usize, edges: &[Vec<usize>]) -> Self {
        let words = dim.div_ceil(64).max(1);
        let mut bits = vec![0u64; dim * words];
        let mut stack = Vec::new();
        for i in 0..dim {
            let row = &mut bits[i * words..(i + 1) * words];
            row[i / 64] |= 1 << (i % 64);
            stack.push(i);
            while let Some(x) = stack.pop() {
                for &y in &edges[x] {
                    if row[y / 64] >> (y % 64) & 1 == 0 {
                        row[y / 64] |= 1 << (y % 64);
                        stack.push(y);
                    }
                }
            }
        }
        Self { words, bits }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Classes of mutual reachability, each sorted, ordered by least member.
    fn classes(&self, dim: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut of = vec![usize::MAX; dim];
        let mut classes = Vec::new();
        for i in 0..dim {
            if of[i] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let class: Vec<usize> = (i..dim).filter(|&j| of[j] == usize::MAX && self.get(i, j) && self.get(j, i)).collect();
            for &j in &class {
                of[j] = id;
            }
            classes.push(class);
        }
        (classes, of)
    }
}

/// Left and two-sided cells with the `a`-function and both preorders.
#[derive(Clone, Debug)]
pub struct CellPartition {
    pub a: Vec<u32>,
    pub left_cells: Vec<Vec<usize>>,
    pub two_sided_cells: Vec<Vec<usize>>,
    pub left_cell_of: Vec<usize>,
    pub two_sided_cell_of: Vec<usize>,
    left: Reach,
    two_sided: Reach,
}

impl CellPartition {
    pub fn new(alg: &BasedAlgebra, a: Vec<u32>) -> Self {
        let dim = alg.dim();
        let mut left_edges = vec![Vec::new(); dim];
        let mut edges = vec![Vec::new(); dim];
        for i in 0..dim {
            for ip in 0..dim {
                for (j, _) in alg.row(i, ip) {
                    // h_{i,i',j} ≠ 0 gives j ⪯_L i' and j ⪯ i, j ⪯ i'.
                    left_edges[ip].push(*j);
                    edges[ip].push(*j);
                    edges[i].push(*j);
                }
            }
        }
        for e in left_edges.iter_mut().chain(edges.iter_mut()) {
            e.sort_unstable();
            e.dedup();
        }
        let left = Reach::closure(dim, &left_edges);
        let two_sided = Reach::closure(dim, &edges);
        let (left_cells, left_cell_of) = left.classes(dim);
        let (two_sided_cells, two_sided_cell_of) = two_sided.classes(dim);
        Self { a, left_cells, two_sided_cells, left_cell_of, two_sided_cell_of, left, two_sided }
    }

    /// `j ⪯_L i`.
    pub fn left_leq(&self, j: usize, i: usize) -> bool {
        self.left.get(i, j)
    }

    /// `j ⪯ i`.
    pub fn leq(&self, j: usize, i: usize) -> bool {
        self.two_sided.get(i, j)
    }

    pub fn same_left_cell(&self, i: usize, j: usize) -> bool {
        self.left_cell_of[i] == self.left_cell_of[j]
    }

    pub fn same_two_sided_cell(&self, i: usize, j: usize) -> bool {
        self.two_sided_cell_of[i] == self.two_sided_cell_of[j]
    }

    /// `i ⪯ 𝔠`: `i ⪯ i'` for some `i'` in the cell.
    pub fn below_cell(&self, i: usize, cell: usize) -> bool {
        self.two_sided_cells[cell].iter().any(|&ip| self.leq(i, ip))
    }

    /// The `a`-value of a two-sided cell, if it is constant there.
    pub fn cell_a(&self, cell: usize) -> Option<u32> {
        let c = &self.two_sided_cells[cell];
        let a = self.a[c[0]];
        c.iter().all(|&i| self.a[i] == a).then_some(a)
    }

    /// Whether every two-sided cell is a union of left cells.
    pub fn two_sided_are_unions_of_left(&self) -> bool {
        self.left_cells.iter().all(|lc| lc.iter().all(|&i| self.two_sided_cell_of[i] == self.two_sided_cell_of[lc[0]]))
    }
}

/// An element of the asymptotic ring: integer coefficients on `t_i`.
pub type JElt = BTreeMap<usize, IBig>;

/// An element of `A ⊗ J`: Laurent polynomial coefficients on `t_i`.
pub type JPolyElt = BTreeMap<usize, LaurentPoly>;

/// The ring with basis `t_i` and `t_i t_{i'} = sum_j h*_{i,i',j!} t_j`.
#[derive(Clone, Debug)]
pub struct JRing {
    dim: usize,
    /// `rows[i * dim + i']` lists `(j, c)` with `t_i t_{i'} = sum c t_j`.
    rows: Vec<Vec<(usize, IBig)>>,
    bang: Vec<usize>,
    i0: Vec<bool>,
}

impl JRing {
    pub fn new(alg: &BasedAlgebra, a: &[u32]) -> Self {
        let dim = alg.dim();
        let rows = alg
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(j, f)| {
                        let c = f.coeff(-(a[*j] as i32));
                        (c != IBig::ZERO).then_some((*j, c))
                    })
                    .collect()
            })
            .collect();
        Self { dim, rows, bang: alg.bang.clone(), i0: alg.i0.clone() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bang(&self, i: usize) -> usize {
        self.bang[i]
    }

    pub fn in_i0(&self, i: usize) -> bool {
        self.i0[i]
    }

    /// `t_i t_{i'}`.
    pub fn mul_basis(&self, i: usize, ip: usize) -> &[(usize, IBig)] {
        &self.rows[i * self.dim + ip]
    }

    /// `h*_{i,i',j}`, the coefficient of `t_{j!}` in `t_i t_{i'}`.
    pub fn hstar(&self, i: usize, ip: usize, j: usize) -> IBig {
        let target = self.bang[j];
        let row = self.mul_basis(i, ip);
        match row.binary_search_by_key(&target, |t| t.0) {
            Ok(k) => row[k].1.clone(),
            Err(_) => IBig::ZERO,
        }
    }

    /// All nonzero `h*_{i,i',j}` as `(i, i', j, value)`, sorted.
    pub fn hstar_entries(&self) -> Vec<(usize, usize, usize, IBig)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for ip in 0..self.dim {
                for (k, c) in self.mul_basis(i, ip) {
                    out.push((i, ip, self.bang[*k], c.clone()));
                }
            }
        }
        out.sort();
        out
    }

    pub fn basis(&self, i: usize) -> JElt {
        JElt::from([(i, IBig::ONE)])
    }

    /// `sum_{d ∈ I₀} t_d`.
    pub fn unit(&self) -> JElt {
        (0..self.dim).filter(|&i| self.i0[i]).map(|i| (i, IBig::ONE)).collect()
    }

    pub fn mul(&self, x: &JElt, y: &JElt) -> JElt {
        let mut out = JElt::new();
        for (&i, a) in x {
            for (&j, b) in y {
                let ab = a * b;
                for (k, c) in self.mul_basis(i, j) {
                    *out.entry(*k).or_insert(IBig::ZERO) += &ab * c;
                }
            }
        }
        out.retain(|_, c| *c != IBig::ZERO);
        out
    }

    pub fn mul_poly(&self, x: &JPolyElt, y: &JPolyElt) -> JPolyElt {
        let mut out = JPolyElt::new();
        for (&i, a) in x {
            for (&j, b) in y {
                let ab = a * b;
                for (k, c) in self.mul_basis(i, j) {
                    *out.entry(*k).or_default() += &ab.scale(c);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `t_{i_1} ... t_{i_r}` by iterated multiplication.
    pub fn product(&self, seq: &[usize]) -> JElt {
        assert!(!seq.is_empty(), "empty product");
        seq[1..].iter().fold(self.basis(seq[0]), |acc, &i| self.mul(&acc, &self.basis(i)))
    }

    /// `τ(x) = sum_{d ∈ I₀} x_d`.
    pub fn tau(&self, x: &JElt) -> IBig {
        x.iter().filter(|(i, _)| self.i0[**i]).map(|(_, c)| c.clone()).sum()
    }

    /// `t_i ↦ t_{i!}`, extended linearly.
    pub fn flat(&self, x: &JElt) -> JElt {
        x.iter().map(|(&i, c)| (self.bang[i], c.clone())).collect()
    }
}

/// Everything derived from the structure constants of a based algebra.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub cells: CellPartition,
    pub jring: JRing,
}

impl Analysis {
    pub fn a(&self, i: usize) -> u32 {
        self.cells.a[i]
    }

    /// `ψ(b_i) = sum_{i', d ∈ I₀, a(i') = a(d)} h_{i,d,i'} t_{i'}`.
    pub fn psi(&self, alg: &BasedAlgebra, i: usize) -> JPolyElt {
        let mut out = JPolyElt::new();
        for d in alg.i0() {
            for (ip, f) in alg.row(i, d) {
                if self.cells.a[*ip] == self.cells.a[d] {
                    *out.entry(*ip).or_default() += f;
                }
            }
        }
        out.retain(|_, f| !f.is_zero());
        out
    }

    /// Checks `ψ(b_i) ψ(b_{i'}) = sum_j h_{i,i',j} ψ(b_j)` and `ψ(1) = 1` on
    /// the given pairs; returns the first failing pair.
    pub fn check_psi(&self, alg: &BasedAlgebra, pairs: &[(usize, usize)]) -> std::result::Result<(), String> {
        let dim = alg.dim();
        let psis: Vec<JPolyElt> = (0..dim).map(|i| self.psi(alg, i)).collect();
        let Some(support) = alg.unit_support() else {
            return Err("the unit is not a sum of basis elements".into());
        };
        let mut unit = JPolyElt::new();
        for &u in &support {
            for (k, f) in &psis[u] {
                *unit.entry(*k).or_default() += f;
            }
        }
        unit.retain(|_, f| !f.is_zero());
        let expected_unit: JPolyElt = alg.i0().map(|d| (d, LaurentPoly::one())).collect();
        if unit != expected_unit {
            return Err("ψ does not preserve the unit".into());
        }
        for &(i, ip) in pairs {
            let lhs = self.jring.mul_poly(&psis[i], &psis[ip]);
            let mut rhs = JPolyElt::new();
            for (j, f) in alg.row(i, ip) {
                for (k, g) in &psis[*j] {
                    *rhs.entry(*k).or_default() += &(f * g);
                }
            }
            rhs.retain(|_, f| !f.is_zero());
            if lhs != rhs {
                return Err(format!("ψ(b_{}) ψ(b_{}) ≠ ψ(b_{} b_{})", alg.label(i), alg.label(ip), alg.label(i), alg.label(ip)));
            }
        }
        Ok(())
    }

    /// The matrix of `ψ` at `v = 1`: row `i` holds the coefficients of `ψ¹(b_i)`.
    pub fn psi1_matrix(&self, alg: &BasedAlgebra) -> RMatrix {
        let dim = alg.dim();
        let mut m = RMatrix::zeros(dim, dim);
        for i in 0..dim {
            for (k, f) in self.psi(alg, i) {
                m.set(i, k, RBig::from(f.eval_one()));
            }
        }
        m
    }

    /// `t_{i_1} ... t_{i_r}` read off from the coefficients `N(i, k)` of a
    /// product `b_{i_1} ... b_{i_r}` as `sum_{i ∈ 𝔠} N(i, -(r-1)a) t_i`.
    pub fn truncate(&self, cell: usize, r: usize, coeffs: &BTreeMap<usize, BTreeMap<i32, IBig>>) -> JElt {
        let a = self.cells.a[self.cells.two_sided_cells[cell][0]] as i32;
        let k = -((r as i32 - 1) * a);
        coeffs
            .iter()
            .filter(|(i, _)| self.cells.two_sided_cell_of[**i] == cell)
            .filter_map(|(i, m)| m.get(&k).map(|c| (*i, c.clone())))
            .filter(|(_, c)| *c != IBig::ZERO)
            .collect()
    }

    /// The degree and support statements for a product `b_{i_1} ... b_{i_r}`:
    /// for `i ∈ 𝔠`, `N(i,k) ≠ 0` forces `k ≥ -(r-1)a`, with equality only if
    /// all factors lie in `𝔠`; and if some factor lies in `𝔠` then every `i`
    /// with `N(i,k) ≠ 0` lies in `𝔠` or strictly below it.
    pub fn check_product_bounds(&self, seq: &[usize], coeffs: &BTreeMap<usize, BTreeMap<i32, IBig>>) -> std::result::Result<(), String> {
        let r = seq.len() as i32;
        let cells = &self.cells;
        for (&i, m) in coeffs {
            let c = cells.two_sided_cell_of[i];
            let a = cells.a[i] as i32;
            let bound = -(r - 1) * a;
            for (&k, n) in m {
                if *n == IBig::ZERO {
                    continue;
                }
                if k < bound {
                    return Err(format!("N({i}, {k}) ≠ 0 below the bound {bound}"));
                }
                if k == bound && seq.iter().any(|&u| cells.two_sided_cell_of[u] != c) {
                    return Err(format!("N({i}, {k}) ≠ 0 at the bound with a factor outside the cell"));
                }
            }
            for &u in seq {
                let cu = cells.two_sided_cell_of[u];
                if cu != c && !cells.below_cell(i, cu) {
                    return Err(format!("{i} lies neither in the cell of {u} nor below it"));
                }
            }
        }
        Ok(())
    }

    /// The distinguished elements as seen from the leading coefficients:
    /// `j = j!` such that `h*_{i!,i,j} ≠ 0` for every `i` in the left cell of `j`.
    pub fn distinguished_from_hstar(&self, alg: &BasedAlgebra) -> Vec<bool> {
        let dim = alg.dim();
        (0..dim)
            .map(|j| {
                alg.bang(j) == j
                    && self.cells.left_cells[self.cells.left_cell_of[j]]
                        .iter()
                        .all(|&i| self.jring.hstar(alg.bang(i), i, j) != IBig::ZERO)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The Hecke algebra of `W(A1)` written down by hand: `c_s c_s = (v + v⁻¹) c_s`.
    fn a1() -> BasedAlgebra {
        let one = LaurentPoly::one();
        let h = vec![
            vec![(0, one.clone())],
            vec![(1, one.clone())],
            vec![(1, one.clone())],
            vec![(1, LaurentPoly::from_terms([(1, 1), (-1, 1)]))],
        ];
        let labels = vec![Label::Coxeter { w: 0 }, Label::Coxeter { w: 1 }];
        BasedAlgebra::new("A1", labels, h, vec![0, 1], vec![true, true]).unwrap()
    }

    #[test]
    fn a1_cells_and_j_ring() {
        let alg = a1();
        let an = alg.analyze();
        assert_eq!(an.cells.a, vec![0, 1]);
        assert_eq!(an.cells.two_sided_cells, vec![vec![0], vec![1]]);
        assert_eq!(an.jring.hstar(1, 1, 1), IBig::ONE);
        let unit = an.jring.unit();
        for i in 0..2 {
            assert_eq!(an.jring.mul(&unit, &an.jring.basis(i)), an.jring.basis(i));
        }
        assert_eq!(an.distinguished_from_hstar(&alg), vec![true, true]);
        an.check_psi(&alg, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(an.psi1_matrix(&alg).rank(), 2);
    }

    #[test]
    fn bang_must_be_an_involution() {
        let alg = a1();
        let err = BasedAlgebra::new("bad", alg.labels().to_vec(), alg.rows().to_vec(), vec![1, 1], vec![false, false]);
        assert!(err.is_err());
    }
}
