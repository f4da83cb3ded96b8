use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use dashu_int::IBig;
use serde::ser::{Serialize, SerializeSeq, Serializer};

/// Integer Laurent polynomial in one variable, stored as a sparse sorted list
/// of `(exponent, coefficient)` pairs with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, IBig)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(IBig::ONE, 0)
    }

    /// The variable `v` itself.
    pub fn v() -> Self {
        Self::monomial(IBig::ONE, 1)
    }

    pub fn v_inv() -> Self {
        Self::monomial(IBig::ONE, -1)
    }

    pub fn constant(c: impl Into<IBig>) -> Self {
        Self::monomial(c.into(), 0)
    }

    pub fn monomial(c: impl Into<IBig>, exp: i32) -> Self {
        let c = c.into();
        if c == IBig::ZERO {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<IBig>,
    {
        let mut v: Vec<(i32, IBig)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, IBig)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| t.1 != IBig::ZERO);
        Self { terms: out }
    }

    /// `v - v^{-1}`, the recurring constant of the quadratic relation.
    pub fn v_minus_v_inv() -> Self {
        Self::from_terms([(-1, -1), (1, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1 == IBig::ONE
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &IBig)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `v^j`; zero outside the support.
    pub fn coeff(&self, j: i32) -> IBig {
        match self.terms.binary_search_by_key(&j, |t| t.0) {
            Ok(pos) => self.terms[pos].1.clone(),
            Err(_) => IBig::ZERO,
        }
    }

    /// The involution `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        let terms = self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect();
        Self { terms }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect();
        Self { terms }
    }

    /// Substitution `v -> v^k` for `k != 0`.
    pub fn substitute_power(&self, k: i32) -> Self {
        assert!(k != 0, "substitution by v^0 is not invertible");
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn scale(&self, c: &IBig) -> Self {
        if *c == IBig::ZERO {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, x)| (*e, x * c)).collect();
        Self { terms }
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> IBig {
        self.terms.iter().fold(IBig::ZERO, |acc, t| acc + &t.1)
    }

    /// Keeps only the terms with exponent strictly below `bound`.
    pub fn truncate_below(&self, bound: i32) -> Self {
        let terms = self.terms.iter().filter(|t| t.0 < bound).cloned().collect();
        Self { terms }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.iter().all(|t| t.1 > IBig::ZERO)
    }

    /// Adds `c * v^k * other` into `self`.
    pub fn add_scaled_shifted(&mut self, other: &Self, c: &IBig, k: i32) {
        if other.is_zero() || *c == IBig::ZERO {
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let eb = b.get(j).map(|t| t.0 + k);
            match (a.get(i), eb) {
                (Some(x), Some(e)) if x.0 < e => {
                    out.push(x.clone());
                    i += 1;
                }
                (Some(x), Some(e)) if x.0 == e => {
                    let s = &x.1 + &b[j].1 * c;
                    if s != IBig::ZERO {
                        out.push((e, s));
                    }
                    i += 1;
                    j += 1;
                }
                (_, Some(e)) => {
                    out.push((e, &b[j].1 * c));
                    j += 1;
                }
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        self.terms = out;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut dense = vec![IBig::ZERO; (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                dense[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != IBig::ZERO)
            .map(|(i, c)| (lo + i as i32, c))
            .collect();
        Self { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled_shifted(rhs, &IBig::ONE, 0);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled_shifted(rhs, &IBig::NEG_ONE, 0);
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.mul_ref(&rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        LaurentPoly { terms }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Renders like `v^2 + 2 + v^-2`, highest exponent first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = *c < IBig::ZERO;
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = mag == IBig::ONE;
            match (*e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{mag}v")?,
                (e, true) => write!(f, "v^{e}")?,
                (e, false) => write!(f, "{mag}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Serialized as a list of `[exponent, coefficient]` pairs in increasing
/// exponent order; coefficients outside the `i64` range become strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            match i64::try_from(c) {
                Ok(x) => seq.serialize_element(&(e, x))?,
                Err(_) => seq.serialize_element(&(e, c.to_string()))?,
            }
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn square_of_v_plus_v_inv() {
        let a = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(&a * &a, lp(&[(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn zero_absorbs() {
        let a = lp(&[(3, 5), (-2, 1)]);
        let z = &a * &LaurentPoly::zero();
        assert!(z.is_zero());
        assert_eq!(z.min_exp(), None);
    }

    #[test]
    fn difference_of_squares() {
        let a = lp(&[(2, 1), (0, -1)]);
        let b = lp(&[(2, 1), (0, 1)]);
        assert_eq!(&a * &b, lp(&[(4, 1), (0, -1)]));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(lp(&[(2, 1), (0, -1)]).bar(), lp(&[(-2, 1), (0, -1)]));
        assert_eq!(LaurentPoly::one().bar(), LaurentPoly::one());
        let sym = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(sym.bar(), sym);
    }

    #[test]
    fn coefficients() {
        let a = lp(&[(2, 1), (0, 2)]);
        assert_eq!(a.coeff(0), IBig::from(2));
        assert_eq!(a.coeff(5), IBig::ZERO);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = lp(&[(1, 3), (0, 1)]);
        let b = lp(&[(1, 3)]);
        let d = &a - &b;
        assert_eq!(d, LaurentPoly::one());
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn display_format() {
        assert_eq!(lp(&[(2, 1), (0, 2), (-2, 1)]).to_string(), "v^2 + 2 + v^-2");
        assert_eq!(lp(&[(-1, -3)]).to_string(), "-3v^-1");
    }
}
