use std::sync::Arc;

use dashu_int::IBig;
use rayon::prelude::*;
use serde::Serialize;

use super::{molien_coinvariant, molien_sv, CharacterTable, ClassFunction, FiniteGroup, GradedMultiplicity};
use crate::cells_jring::{coxeter_hecke, extended, Analysis, BasedAlgebra, Label};
use crate::exact_arith::{lcm, CycloNum, RBig, RMatrix};
use crate::hecke::{GroupAlgebra, HeckeAlgebra};
use crate::torus_chars::{CharSpace, TorusChar};
use crate::{Error, Result};

/// Which group `𝒲` the model describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "group", rename_all = "snake_case")]
pub enum ModelKind {
    /// `W ⋉ T_n`, with the whole algebra `H`.
    Full,
    /// `W'_λ`, with `H'_λ`.
    Stabilizer { lam: TorusChar },
    /// `W_λ`, with `H_λ`.
    Reflection { lam: TorusChar },
}

/// A based algebra `𝔄` with `𝔄¹ = Q[𝒲]`, the character table of `𝒲`, and
/// the traces of the `t_i` on the modules `E^∞`.
#[derive(Debug)]
pub struct RepModel {
    kind: ModelKind,
    space: Arc<CharSpace>,
    group: FiniteGroup,
    /// `W` inside `W ⋉ T_n`, for the full model.
    weyl: Option<FiniteGroup>,
    table: CharacterTable,
    algebra: BasedAlgebra,
    analysis: Analysis,
    psi1: RMatrix,
    /// `b_k` at `v = 1` in the group basis.
    specialized: Vec<Vec<(usize, CycloNum)>>,
    /// `chars_of_basis[E][k] = χ_E(b_k¹)`.
    chars_of_basis: Vec<Vec<CycloNum>>,
    /// `traces[E][i] = tr(t_i, E^∞)`.
    traces: Vec<Vec<CycloNum>>,
}

/// `𝔠_E`, `a_E`, and the traces of the `t_i` on `E^∞`.
#[derive(Clone, Debug)]
pub struct JInvariants {
    pub cell: usize,
    pub a: u32,
    pub traces: Vec<CycloNum>,
}

/// One row of the invariant table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepInvariants {
    pub index: usize,
    pub dim: i64,
    pub cell: usize,
    pub a: u32,
    pub b: usize,
    pub b_sign: usize,
    pub special: bool,
    pub univalent: bool,
    /// Graded multiplicity in the coinvariant algebra.
    #[serde(serialize_with = "crate::exact_arith::ibig_seq::serialize")]
    pub fake_degree: Vec<IBig>,
}

/// The left ideal of `J` spanned by a left cell, decomposed into simple modules.
#[derive(Clone, Debug, Serialize)]
pub struct LeftCellModule {
    pub members: Vec<usize>,
    pub distinguished: usize,
    /// `tr(t_i, [Λ]^∞)` for every `i`.
    #[serde(skip)]
    pub traces: Vec<IBig>,
    /// Multiplicity of each `E^∞`, from Schur orthogonality for `τ`.
    #[serde(serialize_with = "crate::exact_arith::ibig_seq::serialize")]
    pub multiplicities: Vec<IBig>,
    /// `tr(t_z, E^∞)` for the distinguished `z`.
    #[serde(serialize_with = "crate::exact_arith::ibig_seq::serialize")]
    pub distinguished_traces: Vec<IBig>,
}

impl RepModel {
    /// `W ⋉ T_n` and the algebra `H` with basis `c_{w·λ}`.
    pub fn full(space: Arc<CharSpace>, hecke: &HeckeAlgebra, algebra: BasedAlgebra, cap: usize) -> Result<Self> {
        let ga = Arc::new(GroupAlgebra::new(&space));
        let group = FiniteGroup::semidirect(ga.clone(), cap)?;
        let weyl = FiniteGroup::weyl(ga.clone(), cap)?;
        let field = ga.n();
        let specialized = algebra
            .labels()
            .iter()
            .map(|l| match *l {
                Label::Hecke { w, lam } => Ok(ga
                    .specialize(&space, &hecke.canonical(w, lam))
                    .into_iter()
                    .map(|(x, c)| (group.local_index(x).expect("all of W ⋉ T_n"), c.embed(field)))
                    .collect()),
                _ => Err(Error::Precondition("the full model needs w·λ labels".into())),
            })
            .collect::<Result<_>>()?;
        Self::assemble(ModelKind::Full, space, group, Some(weyl), algebra, specialized)
    }

    /// `W'_λ` and `H'_λ = H_λ ⊗ A[Ω_λ]`; `c_w ⊗ x` specializes to
    /// `sum_y P_{y,w}(1) y x`.
    pub fn stabilizer(space: Arc<CharSpace>, lam: TorusChar, cap: usize) -> Result<Self> {
        let ga = Arc::new(GroupAlgebra::new(&space));
        let group = FiniteGroup::stabilizer(ga, &space, lam, cap)?;
        let wl = space.w_lambda(lam);
        let algebra = extended(&space, lam, &coxeter_hecke(&wl)?)?;
        let weyl = space.group();
        let specialized = algebra
            .labels()
            .iter()
            .map(|l| match *l {
                Label::Extended { w, x } => {
                    let wloc = wl.local(w).expect("in W_λ");
                    Ok((0..wl.size())
                        .filter_map(|y| {
                            let c = wl.kl().p(y, wloc).eval_one();
                            (c != IBig::ZERO).then(|| (group.local_index((weyl.mul(wl.element(y), x), 0)).expect("in W'_λ"), CycloNum::from_rational(1, RBig::from(c))))
                        })
                        .collect())
                }
                _ => Err(Error::Precondition("expected c_w ⊗ x labels".into())),
            })
            .collect::<Result<_>>()?;
        Self::assemble(ModelKind::Stabilizer { lam }, space, group, None, algebra, specialized)
    }

    /// `W_λ` and its Hecke algebra `H_λ`.
    pub fn reflection(space: Arc<CharSpace>, lam: TorusChar, cap: usize) -> Result<Self> {
        let ga = Arc::new(GroupAlgebra::new(&space));
        let group = FiniteGroup::reflection(ga, &space, lam, cap)?;
        let wl = space.w_lambda(lam);
        let algebra = coxeter_hecke(&wl)?;
        let specialized = (0..wl.size())
            .map(|w| {
                (0..wl.size())
                    .filter_map(|y| {
                        let c = wl.kl().p(y, w).eval_one();
                        (c != IBig::ZERO).then(|| (group.local_index((wl.element(y), 0)).expect("in W_λ"), CycloNum::from_rational(1, RBig::from(c))))
                    })
                    .collect()
            })
            .collect();
        Self::assemble(ModelKind::Reflection { lam }, space, group, None, algebra, specialized)
    }

    fn assemble(
        kind: ModelKind,
        space: Arc<CharSpace>,
        group: FiniteGroup,
        weyl: Option<FiniteGroup>,
        algebra: BasedAlgebra,
        specialized: Vec<Vec<(usize, CycloNum)>>,
    ) -> Result<Self> {
        if algebra.dim() != group.order() {
            return Err(Error::DimensionMismatch { expected: group.order(), got: algebra.dim() });
        }
        let analysis = algebra.analyze();
        let psi1 = analysis.psi1_matrix(&algebra);
        let inv = psi1.inverse().ok_or_else(|| Error::Internal("ψ¹ is not invertible".into()))?;
        let table = CharacterTable::compute(&group)?;
        let dim = algebra.dim();
        let chars_of_basis: Vec<Vec<CycloNum>> = table
            .chars()
            .par_iter()
            .map(|chi| {
                specialized
                    .iter()
                    .map(|terms| terms.iter().fold(CycloNum::zero(1), |acc, (g, c)| &acc + &(c * &chi.values[group.class_of(*g)])))
                    .collect()
            })
            .collect();
        // t_i = sum_k (ψ¹)⁻¹[i][k] ψ¹(b_k), so tr(t_i, E^∞) = sum_k (ψ¹)⁻¹[i][k] χ_E(b_k¹).
        let traces: Vec<Vec<CycloNum>> = chars_of_basis
            .par_iter()
            .map(|x| {
                (0..dim)
                    .map(|i| {
                        let mut s = CycloNum::zero(1);
                        for (k, xk) in x.iter().enumerate() {
                            let c = inv.get(i, k);
                            if *c != RBig::ZERO && !xk.is_zero() {
                                s = &s + &xk.scale(c);
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        Ok(Self { kind, space, group, weyl, table, algebra, analysis, psi1, specialized, chars_of_basis, traces })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn space(&self) -> &Arc<CharSpace> {
        &self.space
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn algebra(&self) -> &BasedAlgebra {
        &self.algebra
    }

    pub fn analysis(&self) -> &Analysis {
        &self.analysis
    }

    pub fn specialized(&self, k: usize) -> &[(usize, CycloNum)] {
        &self.specialized[k]
    }

    /// `tr(t_i, E^∞)`.
    pub fn trace(&self, e: usize, i: usize) -> &CycloNum {
        &self.traces[e][i]
    }

    /// `tr(b_k, E^v)|_{v=1}` computed through `ψ¹` and the traces of the
    /// `t_i`, against `χ_E` evaluated on the specialization of `b_k`.
    pub fn check_psi1_naturality(&self) -> std::result::Result<(), String> {
        let dim = self.algebra.dim();
        for (e, tr) in self.traces.iter().enumerate() {
            for k in 0..dim {
                let mut s = CycloNum::zero(1);
                for (i, t) in tr.iter().enumerate() {
                    let c = self.psi1.get(k, i);
                    if *c != RBig::ZERO {
                        s = &s + &t.scale(c);
                    }
                }
                if s != self.chars_of_basis[e][k] {
                    return Err(format!("E{e}: trace of b_{} differs from the character value", self.algebra.label(k)));
                }
            }
        }
        Ok(())
    }

    /// `𝔠_E` is the unique two-sided cell whose unit acts on `E^∞` with
    /// trace `dim E`, all other `t_i` having zero trace.
    pub fn j_invariants(&self, e: usize) -> Result<JInvariants> {
        let cells = &self.analysis.cells;
        let traces = self.traces[e].clone();
        let dim = self.table.get(e).values[0].clone();
        let mut hit = Vec::new();
        for (c, members) in cells.two_sided_cells.iter().enumerate() {
            let nonzero = members.iter().any(|&i| !traces[i].is_zero());
            let unit = members.iter().filter(|&&i| self.algebra.in_i0(i)).fold(CycloNum::zero(1), |acc, &i| &acc + &traces[i]);
            match (nonzero, unit == dim) {
                (true, true) => hit.push(c),
                (false, false) => {}
                _ => return Err(Error::Internal(format!("E{e}: the unit of cell {c} acts with trace {unit} on a module of dimension {dim}"))),
            }
        }
        match hit[..] {
            [cell] => Ok(JInvariants { cell, a: cells.cell_a(cell).expect("nonempty cell"), traces }),
            _ => Err(Error::Internal(format!("E{e} is supported on {} two-sided cells", hit.len()))),
        }
    }

    /// `sum_i dim Hom(E, 𝔖̄^i V) q^i`; for `W ⋉ T_n` the module is
    /// `𝔖̄V ⊗ Q[T_n]`, reduced to `W` by Frobenius reciprocity.
    pub fn coinvariant_series(&self, chi: &ClassFunction) -> Result<GradedMultiplicity> {
        match &self.weyl {
            Some(w) => molien_coinvariant(w, &self.group.restrict(chi, w)?),
            None => molien_coinvariant(&self.group, chi),
        }
    }

    /// `sum_i dim Hom(E, S^i V) q^i` up to `max_degree`, reduced to `W` for
    /// the full model as above.
    pub fn symmetric_series(&self, chi: &ClassFunction, max_degree: usize) -> Result<GradedMultiplicity> {
        match &self.weyl {
            Some(w) => molien_sv(w, &self.group.restrict(chi, w)?, max_degree),
            None => molien_sv(&self.group, chi, max_degree),
        }
    }

    /// `W` inside `W ⋉ T_n`, for the full model.
    pub fn weyl_subgroup(&self) -> Option<&FiniteGroup> {
        self.weyl.as_ref()
    }

    /// The invariant table: `dim E`, `𝔠_E`, `a_E`, `b_E`, `b_{E⊗σ}`,
    /// specialness (`a_E = b_{E⊗σ}`) and univalence.
    pub fn invariants(&self) -> Result<Vec<RepInvariants>> {
        (0..self.table.len())
            .into_par_iter()
            .map(|e| {
                let chi = self.table.get(e);
                let j = self.j_invariants(e)?;
                let series = self.coinvariant_series(chi)?;
                let sign_series = self.coinvariant_series(&self.group.tensor_sign(chi))?;
                let b = series.lowest().ok_or_else(|| Error::Internal(format!("E{e} does not occur in the coinvariants")))?;
                let b_sign = sign_series.lowest().ok_or_else(|| Error::Internal(format!("E{e}⊗σ does not occur in the coinvariants")))?;
                let dim = chi.degree().and_then(|d| i64::try_from(d).ok()).ok_or_else(|| Error::Internal("non-integral degree".into()))?;
                Ok(RepInvariants {
                    index: e,
                    dim,
                    cell: j.cell,
                    a: j.a,
                    b,
                    b_sign,
                    special: j.a as usize == b_sign,
                    univalent: series.coeff(b) == IBig::ONE,
                    fake_degree: series.coeffs,
                })
            })
            .collect()
    }

    /// For each two-sided cell, the unique `E` with `𝔠_E = 𝔠` and
    /// `a_E = b_{E⊗σ}`; an error if there is none or more than one, or if
    /// `E ⊗ σ` is not univalent.
    pub fn special_reps(&self, invs: &[RepInvariants]) -> Result<Vec<usize>> {
        let cells = &self.analysis.cells;
        (0..cells.two_sided_cells.len())
            .map(|c| {
                let cand: Vec<usize> = invs.iter().filter(|r| r.cell == c && r.special).map(|r| r.index).collect();
                let [e] = cand[..] else {
                    return Err(Error::Internal(format!("cell {c} has {} special representations", cand.len())));
                };
                let sign = self.group.tensor_sign(self.table.get(e));
                let es = self.table.position(&sign).ok_or_else(|| Error::Internal("E⊗σ is not in the table".into()))?;
                if !invs[es].univalent {
                    return Err(Error::Internal(format!("E{e}⊗σ is not univalent")));
                }
                Ok(e)
            })
            .collect()
    }

    /// The left ideals `[Λ]^∞` of `J`, with the multiplicity of each `E^∞`
    /// obtained from `Σ_i tr(t_i, M) tr(t_{i!}, E^∞) = m_E Σ_i tr(t_i, E^∞) tr(t_{i!}, E^∞)`.
    pub fn left_cell_modules(&self) -> Result<Vec<LeftCellModule>> {
        let alg = &self.algebra;
        let jr = &self.analysis.jring;
        let dim = alg.dim();
        let nchars = self.table.len();
        let gram: Vec<CycloNum> = (0..nchars)
            .map(|e| (0..dim).fold(CycloNum::zero(1), |acc, i| &acc + &(&self.traces[e][i] * &self.traces[e][alg.bang(i)])))
            .collect();
        self.analysis
            .cells
            .left_cells
            .par_iter()
            .map(|members| {
                let d: Vec<usize> = members.iter().copied().filter(|&i| alg.in_i0(i)).collect();
                let [z] = d[..] else {
                    return Err(Error::Internal(format!("a left cell meets I₀ in {} elements", d.len())));
                };
                let traces: Vec<IBig> = (0..dim)
                    .map(|i| {
                        members.iter().fold(IBig::ZERO, |acc, &j| {
                            let coeff = jr.mul_basis(i, j).iter().find(|(k, _)| *k == j).map_or(IBig::ZERO, |(_, c)| c.clone());
                            acc + coeff
                        })
                    })
                    .collect();
                let mut multiplicities = Vec::with_capacity(nchars);
                let mut distinguished_traces = Vec::with_capacity(nchars);
                for e in 0..nchars {
                    let mut s = CycloNum::zero(1);
                    for (i, t) in traces.iter().enumerate() {
                        if *t != IBig::ZERO {
                            s = &s + &self.traces[e][alg.bang(i)].scale(&RBig::from(t.clone()));
                        }
                    }
                    let m = quotient(&s, &gram[e]).ok_or_else(|| Error::Internal("non-integral multiplicity in a left cell module".into()))?;
                    multiplicities.push(m);
                    let tz = self.traces[e][z].to_integer().ok_or_else(|| Error::Internal("non-integral trace of a distinguished element".into()))?;
                    distinguished_traces.push(tz);
                }
                let total: IBig = multiplicities.iter().zip(self.table.chars()).map(|(m, chi)| m * chi.degree().expect("integral")).sum();
                if total != IBig::from(members.len()) {
                    return Err(Error::Internal("left cell module dimension does not match its decomposition".into()));
                }
                Ok(LeftCellModule { members: members.clone(), distinguished: z, traces, multiplicities, distinguished_traces })
            })
            .collect()
    }
}

/// `a / b` when it is an integer.
fn quotient(a: &CycloNum, b: &CycloNum) -> Option<IBig> {
    let m = lcm(a.order() as u64, b.order() as u64) as u32;
    let (a, b) = (a.embed(m), b.embed(m));
    let k = b.coords().iter().position(|c| *c != RBig::ZERO)?;
    let q = a.coords()[k].clone() / b.coords()[k].clone();
    if b.scale(&q) != a {
        return None;
    }
    let (num, den) = q.into_parts();
    (den == dashu_int::UBig::ONE).then_some(num)
}
