use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use crate::exact_arith::LaurentPoly;
use crate::torus_chars::TorusChar;
use crate::weyl::WeylElt;

/// Which basis a [`HeckeElt`] is expanded in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// The normalized standard basis `T̂_w 1_λ = v^{-|w|} T_w 1_λ`.
    T,
    /// The canonical basis `c_{w·λ}`.
    C,
}

/// A finitely supported element of the algebra, keyed by `(w, λ)`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElt {
    basis: Basis,
    terms: BTreeMap<(WeylElt, TorusChar), LaurentPoly>,
}

impl HeckeElt {
    pub fn zero(basis: Basis) -> Self {
        Self { basis, terms: BTreeMap::new() }
    }

    pub fn basis_elt(basis: Basis, w: WeylElt, lam: TorusChar) -> Self {
        let mut e = Self::zero(basis);
        e.terms.insert((w, lam), LaurentPoly::one());
        e
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: WeylElt, lam: TorusChar) -> LaurentPoly {
        self.terms.get(&(w, lam)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(WeylElt, TorusChar), &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: WeylElt, lam: TorusChar, f: &LaurentPoly) {
        if f.is_zero() {
            return;
        }
        let slot = self.terms.entry((w, lam)).or_default();
        *slot += f;
        if slot.is_zero() {
            self.terms.remove(&(w, lam));
        }
    }

    pub fn scale(&self, f: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.basis);
        if f.is_zero() {
            return out;
        }
        for (k, c) in &self.terms {
            out.terms.insert(*k, c * f);
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut out = Self::zero(self.basis);
        for (k, c) in &self.terms {
            out.add_term(k.0, k.1, &f(c));
        }
        out
    }

    pub(crate) fn from_map(basis: Basis, terms: BTreeMap<(WeylElt, TorusChar), LaurentPoly>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Self { basis, terms }
    }
}

impl Add<&HeckeElt> for &HeckeElt {
    type Output = HeckeElt;
    fn add(self, rhs: &HeckeElt) -> HeckeElt {
        assert_eq!(self.basis, rhs.basis, "adding elements in different bases");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.0, k.1, c);
        }
        out
    }
}

impl Sub<&HeckeElt> for &HeckeElt {
    type Output = HeckeElt;
    fn sub(self, rhs: &HeckeElt) -> HeckeElt {
        assert_eq!(self.basis, rhs.basis, "subtracting elements in different bases");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.0, k.1, &-c);
        }
        out
    }
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.basis {
            Basis::T => "T",
            Basis::C => "c",
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((w, l), c)| format!("({c}){name}[{w},{l}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
