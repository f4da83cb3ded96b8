use dashu_int::IBig;
use serde::Serialize;

use super::{ClassFunction, FiniteGroup};
use crate::exact_arith::{CycloNum, RBig};
use crate::{Error, Result};

/// `sum_i dim Hom(E, M^i) q^i` for a graded module `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedMultiplicity {
    /// Coefficient of `q^i` at position `i`.
    #[serde(serialize_with = "crate::exact_arith::ibig_seq::serialize")]
    pub coeffs: Vec<IBig>,
    /// Set when the series was cut off rather than being a polynomial.
    pub truncated: bool,
}

impl GradedMultiplicity {
    pub fn coeff(&self, i: usize) -> IBig {
        self.coeffs.get(i).cloned().unwrap_or(IBig::ZERO)
    }

    /// The least degree with a nonzero coefficient.
    pub fn lowest(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| *c != IBig::ZERO)
    }

    /// The largest degree with a nonzero coefficient.
    pub fn highest(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != IBig::ZERO)
    }
}

/// `det(1 − q g)` for `g` acting on `V = X ⊗ Q` through its `W`-part,
/// lowest degree first.
pub fn det_one_minus_q(group: &FiniteGroup, i: usize) -> Vec<i64> {
    let weyl = group.ambient().weyl();
    let r = weyl.rank();
    let m = weyl.x_matrix(group.element(i).0);
    let entries: Vec<Vec<Vec<i64>>> = (0..r).map(|a| (0..r).map(|b| vec![i64::from(a == b), -m[a * r + b]]).collect()).collect();
    poly_det(&entries)
}

/// Determinant of a square matrix of integer polynomials by cofactor expansion.
fn poly_det(m: &[Vec<Vec<i64>>]) -> Vec<i64> {
    let r = m.len();
    if r == 0 {
        return vec![1];
    }
    let mut out = vec![0i64; 1];
    for c in 0..r {
        if m[0][c].iter().all(|&x| x == 0) {
            continue;
        }
        let minor: Vec<Vec<Vec<i64>>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect()).collect();
        let term = poly_mul(&m[0][c], &poly_det(&minor));
        let sign = if c % 2 == 0 { 1 } else { -1 };
        if out.len() < term.len() {
            out.resize(term.len(), 0);
        }
        for (k, t) in term.iter().enumerate() {
            out[k] += sign * t;
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Power series `num / den` up to degree `deg`, for `den(0) = 1`.
fn series_div(num: &[i64], den: &[i64], deg: usize) -> Vec<i64> {
    debug_assert_eq!(den[0], 1);
    let mut out = vec![0i64; deg + 1];
    for k in 0..=deg {
        let mut c = num.get(k).copied().unwrap_or(0);
        for j in 1..den.len().min(k + 1) {
            c -= den[j] * out[k - j];
        }
        out[k] = c;
    }
    out
}

/// `sum_i ⟨χ_i, E⟩ q^i` where `chi_series[c]` is the graded character at class `c`.
fn pair_with_series(group: &FiniteGroup, chi: &ClassFunction, series: &[Vec<i64>], len: usize) -> Result<Vec<IBig>> {
    let scale = RBig::from_parts(1.into(), (group.order() as u64).into());
    (0..len)
        .map(|i| {
            let mut s = CycloNum::zero(1);
            for c in 0..group.num_classes() {
                let f = series[c][i] * group.class_size(c) as i64;
                if f != 0 {
                    s = &s + &chi.values[c].conj().scale(&RBig::from(f));
                }
            }
            let v = s.scale(&scale).to_integer().ok_or_else(|| Error::Internal(format!("non-integral multiplicity in degree {i}")))?;
            if v < IBig::ZERO {
                return Err(Error::Internal(format!("negative multiplicity in degree {i}")));
            }
            Ok(v)
        })
        .collect()
}

/// Molien series of `E` in `SV`, up to degree `max_degree`:
/// `|G|⁻¹ sum_g conj(χ_E(g)) / det(1 − q g)`.
pub fn molien_sv(group: &FiniteGroup, chi: &ClassFunction, max_degree: usize) -> Result<GradedMultiplicity> {
    let series: Vec<Vec<i64>> = (0..group.num_classes()).map(|c| series_div(&[1], &det_one_minus_q(group, group.class_rep(c)), max_degree)).collect();
    Ok(GradedMultiplicity { coeffs: pair_with_series(group, chi, &series, max_degree + 1)?, truncated: true })
}

/// Graded multiplicity of `E` in the coinvariant algebra: the Molien
/// series times `prod_j (1 − q^{d_j})`, a polynomial of degree `ν`.
pub fn molien_coinvariant(group: &FiniteGroup, chi: &ClassFunction) -> Result<GradedMultiplicity> {
    let weyl = group.ambient().weyl();
    let degrees = weyl.degrees()?;
    let nu = weyl.nu();
    let mut num = vec![1i64];
    for &d in &degrees {
        let mut f = vec![0i64; d as usize + 1];
        f[0] = 1;
        f[d as usize] = -1;
        num = poly_mul(&num, &f);
    }
    let mut series = Vec::with_capacity(group.num_classes());
    for c in 0..group.num_classes() {
        let den = det_one_minus_q(group, group.class_rep(c));
        let q = series_div(&num, &den, nu);
        let mut back = poly_mul(&q, &den);
        back.resize(num.len().max(back.len()), 0);
        let mut padded = num.clone();
        padded.resize(back.len(), 0);
        if back != padded {
            return Err(Error::Internal("graded coinvariant character is not a polynomial".into()));
        }
        series.push(q);
    }
    Ok(GradedMultiplicity { coeffs: pair_with_series(group, chi, &series, nu + 1)?, truncated: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_of_polynomial_matrix() {
        // det [[1 − q, q], [0, 1 + q]] = 1 − q²
        let m = vec![vec![vec![1, -1], vec![0, 1]], vec![vec![0], vec![1, 1]]];
        assert_eq!(poly_det(&m), vec![1, 0, -1]);
    }

    #[test]
    fn geometric_series() {
        assert_eq!(series_div(&[1], &[1, -1], 4), vec![1, 1, 1, 1, 1]);
        assert_eq!(series_div(&[1, 0, -1], &[1, -1], 3), vec![1, 1, 0, 0]);
    }
}
