use std::collections::BTreeMap;
use std::ops::AddAssign;

use dashu_int::IBig;

use super::LaurentPoly;

/// Laurent polynomial in two independent variables `v` and `v'`, keyed by the
/// exponent pair `(deg_v, deg_v')`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiLaurentPoly {
    terms: BTreeMap<(i32, i32), IBig>,
}

impl BiLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The product `a(v) * b(v')`.
    pub fn tensor(a: &LaurentPoly, b: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_tensor(a, b);
        out
    }

    /// Adds `a(v) * b(v')` into `self`.
    pub fn add_tensor(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        for (ea, ca) in a.terms() {
            for (eb, cb) in b.terms() {
                let slot = self.terms.entry((ea, eb)).or_insert(IBig::ZERO);
                *slot += ca * cb;
            }
        }
        self.terms.retain(|_, c| *c != IBig::ZERO);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &IBig)> {
        self.terms.iter()
    }
}

impl AddAssign<&BiLaurentPoly> for BiLaurentPoly {
    fn add_assign(&mut self, rhs: &BiLaurentPoly) {
        for (k, c) in &rhs.terms {
            *self.terms.entry(*k).or_insert(IBig::ZERO) += c;
        }
        self.terms.retain(|_, c| *c != IBig::ZERO);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_keeps_variables_apart() {
        let a = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
        let t = BiLaurentPoly::tensor(&a, &LaurentPoly::v());
        let swapped = BiLaurentPoly::tensor(&LaurentPoly::v(), &a);
        assert_ne!(t, swapped);
        let mut s = t.clone();
        s += &t;
        assert_eq!(s.terms().count(), 2);
    }
}
