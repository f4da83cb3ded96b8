use dashu_int::IBig;
use serde::Serialize;

use super::FiniteGroup;
use crate::exact_arith::{CycloNum, RBig};
use crate::hecke::GroupAlgebra;
use crate::torus_chars::{CharSpace, TorusChar};
use crate::{Error, Result};

/// A class function, with one value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<CycloNum>,
}

impl ClassFunction {
    /// The value at the identity class, when it is an integer.
    pub fn degree(&self) -> Option<IBig> {
        self.values[0].to_integer()
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        Self { values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    /// Pointwise product.
    pub fn tensor(&self, other: &Self) -> Self {
        Self { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { values: self.values.iter().map(|v| v.conj()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

impl Serialize for ClassFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.values.iter().map(|v| v.to_string()))
    }
}

impl FiniteGroup {
    pub fn trivial_character(&self) -> ClassFunction {
        ClassFunction { values: vec![CycloNum::one(1); self.num_classes()] }
    }

    /// `σ`, the sign of `W` composed with `w t ↦ w`.
    pub fn sign_character(&self) -> ClassFunction {
        ClassFunction { values: (0..self.num_classes()).map(|c| CycloNum::from_int(1, self.sign(self.class_rep(c)))).collect() }
    }

    pub fn regular_character(&self) -> ClassFunction {
        let mut values = vec![CycloNum::zero(1); self.num_classes()];
        values[0] = CycloNum::from_int(1, self.order() as i64);
        ClassFunction { values }
    }

    /// `E ⊗ σ`.
    pub fn tensor_sign(&self, chi: &ClassFunction) -> ClassFunction {
        chi.tensor(&self.sign_character())
    }

    /// `|G|⁻¹ sum_g χ(g) conj(ψ(g))`.
    pub fn inner(&self, chi: &ClassFunction, psi: &ClassFunction) -> CycloNum {
        let mut s = CycloNum::zero(1);
        for c in 0..self.num_classes() {
            let term = (&chi.values[c] * &psi.values[c].conj()).scale(&RBig::from(self.class_size(c)));
            s = &s + &term;
        }
        s.scale(&RBig::from_parts(1.into(), (self.order() as u64).into()))
    }

    /// `⟨χ, E⟩` as an integer; an error if it is not one.
    pub fn multiplicity(&self, irr: &ClassFunction, chi: &ClassFunction) -> Result<IBig> {
        self.inner(chi, irr).to_integer().ok_or_else(|| Error::Internal("non-integral multiplicity".into()))
    }

    /// Restriction to a subgroup on the same ambient group.
    pub fn restrict(&self, chi: &ClassFunction, sub: &FiniteGroup) -> Result<ClassFunction> {
        let values = (0..sub.num_classes())
            .map(|c| {
                let x = sub.element(sub.class_rep(c));
                let k = self.local_index(x).ok_or_else(|| Error::Precondition(format!("{} is not a subgroup of {}", sub.name(), self.name())))?;
                Ok(chi.values[self.class_of(k)].clone())
            })
            .collect::<Result<_>>()?;
        Ok(ClassFunction { values })
    }

    /// Induction from a subgroup: `Ind χ(g) = |G| / (|H| |C_g|) · sum_{h ∈ H ∩ C_g} χ(h)`.
    pub fn induce(&self, chi: &ClassFunction, sub: &FiniteGroup) -> Result<ClassFunction> {
        let mut sums = vec![CycloNum::zero(1); self.num_classes()];
        for h in 0..sub.order() {
            let k = self.local_index(sub.element(h)).ok_or_else(|| Error::Precondition(format!("{} is not a subgroup of {}", sub.name(), self.name())))?;
            let c = self.class_of(k);
            sums[c] = &sums[c] + &chi.values[sub.class_of(h)];
        }
        let values = sums
            .into_iter()
            .enumerate()
            .map(|(c, s)| s.scale(&RBig::from_parts((self.order() as u64).into(), ((sub.order() * self.class_size(c)) as u64).into())))
            .collect();
        Ok(ClassFunction { values })
    }

    /// `E₁ ⊗ λ` on `W'_λ ⋉ T_n` (this group), from a class function `E₁` on
    /// `W'_λ`: the value at `w t` is `E₁(w) λ(t)`.
    pub fn twist_by_character(&self, chi: &ClassFunction, stab: &FiniteGroup, space: &CharSpace, lam: TorusChar) -> Result<ClassFunction> {
        let ga: &GroupAlgebra = self.ambient();
        let values = (0..self.num_classes())
            .map(|c| {
                let (w, t) = self.element(self.class_rep(c));
                let k = stab.local_index((w, 0)).ok_or_else(|| Error::Precondition(format!("w{w} does not fix λ{lam}")))?;
                Ok(&chi.values[stab.class_of(k)] * &ga.char_value(space, lam, t))
            })
            .collect::<Result<_>>()?;
        Ok(ClassFunction { values })
    }

    /// The character of `1_λ E` on `W'_λ`:
    /// `w ↦ |T_n|⁻¹ sum_t conj(λ(t)) E(w t)`.
    pub fn idempotent_part(&self, chi: &ClassFunction, stab: &FiniteGroup, space: &CharSpace, lam: TorusChar) -> Result<ClassFunction> {
        let ga: &GroupAlgebra = self.ambient();
        let count = ga.torus_order();
        let scale = RBig::from_parts(1.into(), (count as u64).into());
        let values = (0..stab.num_classes())
            .map(|c| {
                let (w, _) = stab.element(stab.class_rep(c));
                let mut s = CycloNum::zero(1);
                for t in 0..count {
                    let k = self.local_index((w, t)).ok_or_else(|| Error::Precondition("the torus is not contained in the group".into()))?;
                    s = &s + &(&chi.values[self.class_of(k)] * &ga.char_value(space, lam, t).conj());
                }
                Ok(s.scale(&scale))
            })
            .collect::<Result<_>>()?;
        Ok(ClassFunction { values })
    }
}
