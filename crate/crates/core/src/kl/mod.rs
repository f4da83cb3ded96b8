//! Kazhdan–Lusztig polynomials of finite Coxeter systems.

use dashu_int::IBig;
use rayon::prelude::*;

use crate::exact_arith::LaurentPoly;
use crate::weyl::CoxeterSystem;

/// All polynomials `P_{y,w}` of a Coxeter system, stored in the variable `q`.
#[derive(Debug)]
pub struct KlTable {
    size: usize,
    length: Vec<u32>,
    /// Row-major: `p[w * size + y]`.
    p: Vec<LaurentPoly>,
    /// For each `w`, the pairs `(z, μ(z, w))` with `z < w` and `μ ≠ 0`.
    mu: Vec<Vec<(u32, IBig)>>,
}

impl KlTable {
    /// Builds the table by the descent recursion, one length stratum at a time.
    pub fn new(cox: &CoxeterSystem) -> Self {
        let size = cox.size();
        let length = cox.lengths().to_vec();
        let mut p = vec![LaurentPoly::zero(); size * size];
        let mut mu: Vec<Vec<(u32, IBig)>> = vec![Vec::new(); size];
        p[0] = LaurentPoly::one();
        let top = length.last().copied().unwrap_or(0);
        let mut start = 1;
        for l in 1..=top {
            let end = start + length[start..].iter().take_while(|&&x| x == l).count();
            let rows: Vec<(Vec<LaurentPoly>, Vec<(u32, IBig)>)> = (start..end)
                .into_par_iter()
                .map(|w| Self::row(cox, &length, &p, &mu, size, w))
                .collect();
            for (k, (row, m)) in rows.into_iter().enumerate() {
                let w = start + k;
                for (y, poly) in row.into_iter().enumerate() {
                    p[w * size + y] = poly;
                }
                mu[w] = m;
            }
            start = end;
        }
        Self { size, length, p, mu }
    }

    fn row(
        cox: &CoxeterSystem,
        length: &[u32],
        p: &[LaurentPoly],
        mu: &[Vec<(u32, IBig)>],
        size: usize,
        w: usize,
    ) -> (Vec<LaurentPoly>, Vec<(u32, IBig)>) {
        let s = cox.first_left_descent(w).expect("w is not the identity");
        let v = cox.lmul(s, w);
        let pv = |x: usize| &p[v * size + x];
        let corrections: Vec<(usize, &IBig)> = mu[v]
            .iter()
            .filter(|(z, _)| cox.is_left_descent(s, *z as usize))
            .map(|(z, m)| (*z as usize, m))
            .collect();
        let mut row = vec![LaurentPoly::zero(); size];
        for x in cox.lower_interval(w) {
            let sx = cox.lmul(s, x);
            let c = i32::from(length[sx] < length[x]);
            let mut acc = pv(sx).shift(1 - c);
            acc += &pv(x).shift(c);
            for &(z, m) in &corrections {
                let pxz = &p[z * size + x];
                if !pxz.is_zero() {
                    let e = ((length[w] - length[z]) / 2) as i32;
                    acc.add_scaled_shifted(pxz, &-m.clone(), e);
                }
            }
            row[x] = acc;
        }
        let mut m = Vec::new();
        for (z, poly) in row.iter().enumerate() {
            if poly.is_zero() || z == w {
                continue;
            }
            let d = length[w] - length[z];
            if d % 2 == 1 {
                let c = poly.coeff(((d - 1) / 2) as i32);
                if c != IBig::ZERO {
                    m.push((z as u32, c));
                }
            }
        }
        (row, m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `P_{y,w}` as a polynomial in `q`; zero unless `y ≤ w`.
    pub fn p(&self, y: usize, w: usize) -> &LaurentPoly {
        &self.p[w * self.size + y]
    }

    /// `p_{y,w} = v^{-|w|+|y|} P_{y,w}(v²)`.
    pub fn p_v(&self, y: usize, w: usize) -> LaurentPoly {
        let shift = self.length[y] as i32 - self.length[w] as i32;
        self.p(y, w).substitute_power(2).shift(shift)
    }

    /// `μ(y, w)`, the coefficient of `q^{(|w|-|y|-1)/2}` in `P_{y,w}`.
    pub fn mu(&self, y: usize, w: usize) -> IBig {
        self.mu[w]
            .iter()
            .find(|(z, _)| *z as usize == y)
            .map(|(_, m)| m.clone())
            .unwrap_or(IBig::ZERO)
    }

    /// Pairs `(z, μ(z, w))` with `z < w` and nonzero `μ`.
    pub fn mu_row(&self, w: usize) -> &[(u32, IBig)] {
        &self.mu[w]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{Flavor, RootDatum, WeylGroup};

    fn table(t: &str) -> (WeylGroup, KlTable) {
        let g = WeylGroup::new(RootDatum::preset(t, Flavor::Adjoint).unwrap()).unwrap();
        let k = KlTable::new(g.coxeter());
        (g, k)
    }

    #[test]
    fn a3_singular_pair() {
        let (g, k) = table("A3");
        let y = g.from_word(&[1]);
        let w = g.from_word(&[1, 0, 2, 1]);
        assert_eq!(k.p(y, w), &LaurentPoly::from_terms([(0, 1), (1, 1)]));
        assert_eq!(k.p(0, w), &LaurentPoly::from_terms([(0, 1), (1, 1)]));
    }

    #[test]
    fn normalization_and_small_gaps() {
        let (g, k) = table("B3");
        let cox = g.coxeter();
        for w in 0..g.order() {
            assert!(k.p(w, w).is_one());
            for y in 0..g.order() {
                let leq = cox.bruhat_leq(y, w);
                assert_eq!(leq, !k.p(y, w).is_zero());
                if leq && cox.length(w) - cox.length(y) <= 2 {
                    assert!(k.p(y, w).is_one());
                }
            }
        }
        let s = g.simple_reflection(0);
        assert_eq!(k.p_v(0, s), LaurentPoly::v_inv());
    }
}
