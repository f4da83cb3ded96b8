#![allow(dead_code)]

use std::sync::Arc;

use monohecke::exact_arith::LaurentPoly;
use monohecke::torus_chars::CharSpace;
use monohecke::weyl::{CoxeterSystem, Flavor, RootDatum, WeylGroup};

pub const PRESETS: [&str; 9] = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"];
pub const FLAVORS: [Flavor; 2] = [Flavor::Adjoint, Flavor::SimplyConnected];

pub fn space(t: &str, f: Flavor, n: u32) -> Arc<CharSpace> {
    let g = Arc::new(WeylGroup::new(RootDatum::preset(t, f).unwrap()).unwrap());
    Arc::new(CharSpace::new(g, n).unwrap())
}

/// Elements of the Hecke algebra of a Coxeter system in the standard basis,
/// with `T_s² = 1 + (v - v⁻¹) T_s`. Written independently of the library's
/// Hecke arithmetic.
pub struct THecke<'a> {
    cox: &'a CoxeterSystem,
    bar_t: Vec<Vec<LaurentPoly>>,
}

impl<'a> THecke<'a> {
    pub fn new(cox: &'a CoxeterSystem) -> Self {
        let n = cox.size();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&w| cox.length(w));
        let mut bar_t = vec![Vec::new(); n];
        let mut h = Self { cox, bar_t: Vec::new() };
        for w in order {
            bar_t[w] = match cox.first_left_descent(w) {
                None => h.basis(w),
                Some(s) => h.lmul_inv(s, &bar_t[cox.lmul(s, w)]),
            };
        }
        h.bar_t = bar_t;
        h
    }

    pub fn basis(&self, w: usize) -> Vec<LaurentPoly> {
        let mut x = vec![LaurentPoly::zero(); self.cox.size()];
        x[w] = LaurentPoly::one();
        x
    }

    /// `T_s x`.
    pub fn lmul(&self, s: usize, x: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(); x.len()];
        for (y, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sy = self.cox.lmul(s, y);
            out[sy] += c;
            if self.cox.length(sy) < self.cox.length(y) {
                out[y] += &(c * &LaurentPoly::v_minus_v_inv());
            }
        }
        out
    }

    /// `T_s⁻¹ x = (T_s - (v - v⁻¹)) x`.
    pub fn lmul_inv(&self, s: usize, x: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let mut out = self.lmul(s, x);
        for (o, c) in out.iter_mut().zip(x) {
            *o -= &(c * &LaurentPoly::v_minus_v_inv());
        }
        out
    }

    pub fn bar(&self, x: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(); x.len()];
        for (y, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cb = c.bar();
            for (z, d) in self.bar_t[y].iter().enumerate() {
                if !d.is_zero() {
                    out[z] += &(&cb * d);
                }
            }
        }
        out
    }
}

/// The KL basis is characterised by `c̄_w = c_w` and
/// `c_w ∈ T_w + Σ_{y} v⁻¹Z[v⁻¹] T_y`; checks the table against this
/// on every pair and returns the number of Bruhat pairs seen.
pub fn kl_oracle(cox: &CoxeterSystem, p_v: impl Fn(usize, usize) -> LaurentPoly) -> Result<usize, String> {
    let h = THecke::new(cox);
    let mut pairs = 0;
    for w in 0..cox.size() {
        let c: Vec<LaurentPoly> = (0..cox.size()).map(|y| p_v(y, w)).collect();
        for (y, p) in c.iter().enumerate() {
            if y == w {
                if !p.is_one() {
                    return Err(format!("p({w},{w}) = {p}"));
                }
            } else if p.max_exp().is_some_and(|e| e >= 0) {
                return Err(format!("p({y},{w}) = {p} has a nonnegative power"));
            }
            if !p.is_zero() != cox.bruhat_leq(y, w) {
                return Err(format!("support of p(·,{w}) differs from the Bruhat interval at {y}"));
            }
            pairs += usize::from(cox.bruhat_leq(y, w));
        }
        if h.bar(&c) != c {
            return Err(format!("c_{w} is not bar invariant"));
        }
    }
    Ok(pairs)
}
