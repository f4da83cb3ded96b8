use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::instances::{corner_from_extended, coxeter_hecke, extended, matrix_algebra, transport_orbit};
use super::BasedAlgebra;
use crate::hecke::{Basis, HeckeAlgebra, HeckeElt};
use crate::torus_chars::{CharSpace, TorusChar};
use crate::weyl::WeylElt;
use crate::{Error, Result};

/// For each `λ` in the orbit of `λ₀`, a sequence `(s_1, ..., s_r)` of simple
/// reflections with `λ₀ ≠ s_1 λ₀ ≠ s_2 s_1 λ₀ ≠ ... ≠ s_r ... s_1 λ₀ = λ`.
///
/// Found by breadth-first search trying simple reflections in increasing
/// order, so the choice is deterministic.
#[derive(Clone, Debug, Serialize)]
pub struct ConnectingSequences {
    lam0: TorusChar,
    orbit: Vec<TorusChar>,
    sequences: Vec<Vec<usize>>,
    /// `[𝐬_λ] = s_1 s_2 ... s_r`.
    elements: Vec<WeylElt>,
}

impl ConnectingSequences {
    pub fn new(space: &CharSpace, lam0: TorusChar) -> Result<Self> {
        let group = space.group();
        let orbit = space.orbit(lam0);
        let pos = |l: TorusChar| orbit.binary_search(&l).ok();
        let mut sequences: Vec<Option<Vec<usize>>> = vec![None; orbit.len()];
        sequences[pos(lam0).expect("λ₀ lies in its orbit")] = Some(Vec::new());
        let mut queue = VecDeque::from([lam0]);
        while let Some(mu) = queue.pop_front() {
            let seq = sequences[pos(mu).unwrap()].clone().unwrap();
            for s in 0..group.rank() {
                let nu = space.act(group.simple_reflection(s), mu);
                let p = pos(nu).expect("orbit is W-stable");
                if nu != mu && sequences[p].is_none() {
                    let mut next = seq.clone();
                    next.push(s);
                    sequences[p] = Some(next);
                    queue.push_back(nu);
                }
            }
        }
        let sequences: Vec<Vec<usize>> = sequences
            .into_iter()
            .enumerate()
            .map(|(k, s)| s.ok_or_else(|| Error::Internal(format!("no connecting sequence reaches λ{}", orbit[k]))))
            .collect::<Result<_>>()?;
        let elements = sequences.iter().map(|s| group.from_word(s)).collect();
        Ok(Self { lam0, orbit, sequences, elements })
    }

    pub fn lam0(&self) -> TorusChar {
        self.lam0
    }

    pub fn orbit(&self) -> &[TorusChar] {
        &self.orbit
    }

    fn position(&self, lam: TorusChar) -> usize {
        self.orbit.binary_search(&lam).expect("character outside the orbit")
    }

    pub fn sequence(&self, lam: TorusChar) -> &[usize] {
        &self.sequences[self.position(lam)]
    }

    /// `[𝐬_λ]`.
    pub fn element(&self, lam: TorusChar) -> WeylElt {
        self.elements[self.position(lam)]
    }

    /// The label `([𝐬_{λ₁}]⁻¹ w [𝐬_{λ₂}], λ₂)` of the basis element that
    /// `Ψ⁻¹` assigns to `b_{w,λ₁,λ₂}`.
    pub fn hecke_label(&self, space: &CharSpace, w: WeylElt, l1: TorusChar, l2: TorusChar) -> (WeylElt, TorusChar) {
        let g = space.group();
        (g.mul(g.mul(g.inverse(self.element(l1)), w), self.element(l2)), l2)
    }

    /// The inverse assignment: `c_{u·λ₂}` with `λ₁ = u(λ₂)` is sent to
    /// `b_{[𝐬_{λ₁}] u [𝐬_{λ₂}]⁻¹, λ₁, λ₂}`.
    pub fn matrix_label(&self, space: &CharSpace, u: WeylElt, l2: TorusChar) -> (WeylElt, TorusChar, TorusChar) {
        let g = space.group();
        let l1 = space.act(u, l2);
        (g.mul(g.mul(self.element(l1), u), g.inverse(self.element(l2))), l1, l2)
    }
}

/// `H'_{λ₀}`, the matrix algebra `𝔼` over `1_{λ₀} H 1_{λ₀}`, and the map
/// `Ψ: H_𝔬 → 𝔼` given by `Ψ(h)_{λ₁,λ₂} = τ_{λ₁} 1_{λ₁} h 1_{λ₂} τ_{λ₂}^♭`.
#[derive(Debug)]
pub struct MatrixChain {
    pub sequences: ConnectingSequences,
    pub coxeter: BasedAlgebra,
    pub extended: BasedAlgebra,
    pub corner: BasedAlgebra,
    pub matrix: BasedAlgebra,
}

/// Results of checking `Ψ` on every basis element and every pair.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub lam0: TorusChar,
    pub orbit: Vec<TorusChar>,
    pub sequences: Vec<Vec<usize>>,
    pub basis_to_basis: bool,
    pub bijective: bool,
    pub multiplicative: bool,
    pub unit: bool,
    pub flat_to_diamond: bool,
    pub pairs_checked: usize,
    pub witness: Option<String>,
}

impl ChainReport {
    pub fn all_pass(&self) -> bool {
        self.basis_to_basis && self.bijective && self.multiplicative && self.unit && self.flat_to_diamond
    }
}

type Matrix = BTreeMap<(TorusChar, TorusChar), HeckeElt>;

impl MatrixChain {
    /// Builds the chain from the Hecke algebra of `W_{λ₀}` alone.
    pub fn new(space: &CharSpace, lam0: TorusChar) -> Result<Self> {
        let sequences = ConnectingSequences::new(space, lam0)?;
        let coxeter = coxeter_hecke(&space.w_lambda(lam0))?;
        let extended = extended(space, lam0, &coxeter)?;
        let corner = corner_from_extended(space, lam0, &extended)?;
        let matrix = matrix_algebra(&corner, sequences.orbit())?;
        Ok(Self { sequences, coxeter, extended, corner, matrix })
    }

    /// `H_𝔬` with its structure constants carried over from `𝔼`.
    pub fn transported(&self, space: &CharSpace) -> Result<BasedAlgebra> {
        transport_orbit(space, &self.matrix, &self.sequences)
    }

    /// `τ_λ 1_λ = T̂_{s_1} ... T̂_{s_r} 1_λ`.
    fn tau(&self, h: &HeckeAlgebra, lam: TorusChar) -> HeckeElt {
        let g = h.group();
        let mut acc = HeckeElt::basis_elt(Basis::T, 0, lam);
        for &s in self.sequences.sequence(lam).iter().rev() {
            let mut ts = HeckeElt::zero(Basis::T);
            for mu in h.space().iter() {
                ts = &ts + &h.t_hat(g.simple_reflection(s), mu);
            }
            acc = h.mul(&ts, &acc);
        }
        acc
    }

    /// `Ψ(x)` for `x ∈ H_𝔬` in the normalized standard basis.
    pub fn psi(&self, h: &HeckeAlgebra, x: &HeckeElt) -> Matrix {
        let orbit = self.sequences.orbit();
        let left: Vec<HeckeElt> = orbit.iter().map(|&l| self.tau(h, l)).collect();
        let right: Vec<HeckeElt> = left.iter().map(|t| h.flat(t)).collect();
        let mut out = Matrix::new();
        for (a, &l1) in orbit.iter().enumerate() {
            let lx = h.mul(&left[a], x);
            if lx.is_zero() {
                continue;
            }
            for (b, &l2) in orbit.iter().enumerate() {
                let y = h.mul(&lx, &right[b]);
                if !y.is_zero() {
                    out.insert((l1, l2), y);
                }
            }
        }
        out
    }

    fn mat_mul(h: &HeckeAlgebra, x: &Matrix, y: &Matrix) -> Matrix {
        let mut out = Matrix::new();
        for (&(a, b), f) in x {
            for (&(c, d), g) in y {
                if b != c {
                    continue;
                }
                let p = h.mul(f, g);
                let slot = out.entry((a, d)).or_insert_with(|| HeckeElt::zero(Basis::T));
                *slot = &*slot + &p;
            }
        }
        out.retain(|_, e| !e.is_zero());
        out
    }

    /// `(X^◊)_{λ₁,λ₂} = (X_{λ₂,λ₁})^♭`.
    fn diamond(h: &HeckeAlgebra, x: &Matrix) -> Matrix {
        x.iter().map(|(&(a, b), f)| ((b, a), h.flat(f))).collect()
    }

    /// Checks that `Ψ` sends each `c_{u·λ}` to the predicted matrix unit,
    /// that this is a bijection of bases, that `Ψ` is multiplicative on all
    /// pairs and preserves `1`, and that `Ψ(h♭) = Ψ(h)^◊`.
    pub fn verify(&self, h: &HeckeAlgebra) -> ChainReport {
        let space = h.space();
        let g = h.group();
        let orbit = self.sequences.orbit().to_vec();
        let lam0 = self.sequences.lam0();
        let mut report = ChainReport {
            lam0,
            orbit: orbit.clone(),
            sequences: orbit.iter().map(|&l| self.sequences.sequence(l).to_vec()).collect(),
            basis_to_basis: true,
            bijective: true,
            multiplicative: true,
            unit: true,
            flat_to_diamond: true,
            pairs_checked: 0,
            witness: None,
        };
        let fail = |flag: &mut bool, witness: &mut Option<String>, msg: String| {
            *flag = false;
            if witness.is_none() {
                *witness = Some(msg);
            }
        };
        let basis: Vec<(WeylElt, TorusChar)> =
            (0..g.order()).flat_map(|w| orbit.iter().map(move |&l| (w, l))).collect();
        let images: Vec<Matrix> = basis.iter().map(|&(w, l)| self.psi(h, &h.canonical(w, l))).collect();

        let mut targets = std::collections::BTreeSet::new();
        for (k, &(u, l2)) in basis.iter().enumerate() {
            let (w0, l1, _) = self.sequences.matrix_label(space, u, l2);
            let in_wprime = space.act(w0, lam0) == lam0;
            let mut expected = Matrix::new();
            expected.insert((l1, l2), h.canonical(w0, lam0));
            if !in_wprime || images[k] != expected {
                fail(&mut report.basis_to_basis, &mut report.witness, format!("Ψ(c_{{w{u}·λ{l2}}}) is not b_{{w{w0},λ{l1},λ{l2}}}"));
            }
            targets.insert((w0, l1, l2));
        }
        let wprime = space.subgroups(lam0).w_prime.len();
        if targets.len() != basis.len() || targets.len() != wprime * orbit.len() * orbit.len() {
            fail(&mut report.bijective, &mut report.witness, "basis correspondence is not a bijection".into());
        }

        let mut unit = HeckeElt::zero(Basis::T);
        for &l in &orbit {
            unit.add_term(0, l, &crate::exact_arith::LaurentPoly::one());
        }
        let id: Matrix = orbit.iter().map(|&l| ((l, l), HeckeElt::basis_elt(Basis::T, 0, lam0))).collect();
        if self.psi(h, &unit) != id {
            fail(&mut report.unit, &mut report.witness, "Ψ(1) is not the identity matrix".into());
        }

        for (k, &(u, l)) in basis.iter().enumerate() {
            let c = h.canonical(u, l);
            if self.psi(h, &h.flat(&c)) != Self::diamond(h, &images[k]) {
                fail(&mut report.flat_to_diamond, &mut report.witness, format!("Ψ(c♭) ≠ Ψ(c)^◊ at w{u}·λ{l}"));
            }
        }

        let canon: Vec<HeckeElt> = basis.iter().map(|&(w, l)| h.canonical(w, l)).collect();
        for (a, x) in canon.iter().enumerate() {
            for (b, y) in canon.iter().enumerate() {
                report.pairs_checked += 1;
                let lhs = self.psi(h, &h.mul(x, y));
                let rhs = Self::mat_mul(h, &images[a], &images[b]);
                if lhs != rhs {
                    let (wa, la) = basis[a];
                    let (wb, lb) = basis[b];
                    fail(&mut report.multiplicative, &mut report.witness, format!("Ψ(c_{{w{wa}·λ{la}}} c_{{w{wb}·λ{lb}}}) ≠ Ψ(·)Ψ(·)"));
                }
            }
        }
        report
    }
}
