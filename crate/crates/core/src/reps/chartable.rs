use dashu_int::IBig;
use rayon::prelude::*;

use super::{ClassFunction, FiniteGroup};
use crate::exact_arith::{CycloNum, RBig};
use crate::{Error, Result};

/// The irreducible characters of a [`FiniteGroup`], with values in
/// `Q(ζ_e)` for `e` the exponent of the group.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    field: u32,
    chars: Vec<ClassFunction>,
}

impl CharacterTable {
    /// Dixon's method: common eigenvectors of the class matrices modulo a
    /// prime `p ≡ 1 mod e`, lifted to exact values through the eigenvalue
    /// multiplicities of each element; validated by exact orthogonality.
    pub fn compute(group: &FiniteGroup) -> Result<Self> {
        let e = group.exponent() as u64;
        let order = group.order() as u64;
        let consts = class_constants(group);
        let mut p = 2 * (order as f64).sqrt() as u64 + 2;
        p += (e + 1 - p % e) % e;
        let mut attempts = 0;
        loop {
            while !is_prime(p) {
                p += e;
            }
            if let Ok(chars) = dixon(group, &consts, p) {
                let table = Self { field: group.exponent(), chars: sort_chars(chars) };
                if table.validate(group).is_ok() {
                    return Ok(table);
                }
            }
            attempts += 1;
            if attempts == 20 {
                return Err(Error::Internal(format!("no prime split the class matrices of {}", group.name())));
            }
            p += e;
        }
    }

    pub fn field(&self) -> u32 {
        self.field
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn chars(&self) -> &[ClassFunction] {
        &self.chars
    }

    pub fn get(&self, k: usize) -> &ClassFunction {
        &self.chars[k]
    }

    /// The position of an irreducible character in the table.
    pub fn position(&self, chi: &ClassFunction) -> Option<usize> {
        self.chars.iter().position(|c| c == chi)
    }

    /// Multiplicities of the irreducibles in a character.
    pub fn decompose(&self, group: &FiniteGroup, chi: &ClassFunction) -> Result<Vec<IBig>> {
        self.chars.iter().map(|e| group.multiplicity(e, chi)).collect()
    }

    /// Row and column orthogonality and `sum dim² = |G|`, all exact.
    pub fn validate(&self, group: &FiniteGroup) -> Result<()> {
        let r = group.num_classes();
        if self.chars.len() != r {
            return Err(Error::Internal(format!("{} characters for {r} classes", self.chars.len())));
        }
        let dims: IBig = self.chars.iter().map(|c| c.degree().map(|d| &d * &d)).sum::<Option<IBig>>().ok_or_else(|| Error::Internal("non-integral degree".into()))?;
        if dims != IBig::from(group.order()) {
            return Err(Error::Internal("sum of squared degrees differs from the group order".into()));
        }
        let rows_ok = (0..r).into_par_iter().all(|a| {
            (a..r).all(|b| {
                let ip = group.inner(&self.chars[a], &self.chars[b]);
                let expected = if a == b { CycloNum::one(self.field) } else { CycloNum::zero(self.field) };
                ip == expected
            })
        });
        if !rows_ok {
            return Err(Error::Internal("row orthogonality fails".into()));
        }
        let cols_ok = (0..r).into_par_iter().all(|c1| {
            (c1..r).all(|c2| {
                let mut s = CycloNum::zero(self.field);
                for chi in &self.chars {
                    s = &s + &(&chi.values[c1] * &chi.values[c2].conj());
                }
                let expected = if c1 == c2 { group.order() / group.class_size(c1) } else { 0 };
                s == CycloNum::from_int(self.field, expected as i64)
            })
        });
        if !cols_ok {
            return Err(Error::Internal("column orthogonality fails".into()));
        }
        Ok(())
    }
}

/// Trivial character first, then by degree, then by the printed values.
fn sort_chars(mut chars: Vec<ClassFunction>) -> Vec<ClassFunction> {
    chars.sort_by_cached_key(|c| {
        let trivial = c.values.iter().all(|v| *v == CycloNum::one(v.order()));
        (!trivial, c.degree(), c.values.iter().map(|v| v.to_string()).collect::<Vec<_>>())
    });
    chars
}

/// `consts[j][l][k] = #{(x, y) ∈ C_j × C_l : x y = g_k}` for the class
/// representative `g_k`.
fn class_constants(group: &FiniteGroup) -> Vec<Vec<Vec<u64>>> {
    let r = group.num_classes();
    let per_k: Vec<Vec<Vec<u64>>> = (0..r)
        .into_par_iter()
        .map(|k| {
            let g = group.class_rep(k);
            let mut m = vec![vec![0u64; r]; r];
            for x in 0..group.order() {
                let y = group.mul(group.inv(x), g);
                m[group.class_of(x)][group.class_of(y)] += 1;
            }
            m
        })
        .collect();
    (0..r).map(|j| (0..r).map(|l| (0..r).map(|k| per_k[k][j][l]).collect()).collect()).collect()
}

fn dixon(group: &FiniteGroup, consts: &[Vec<Vec<u64>>], p: u64) -> Result<Vec<ClassFunction>> {
    let r = group.num_classes();
    let fail = || Error::Internal(format!("the prime {p} does not separate the characters"));
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity(r)];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split(&space, &consts[j], p));
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(fail());
    }
    let e = group.exponent() as u64;
    let zeta = pow_mod(primitive_root(p), (p - 1) / e, p);
    let order = group.order() as u64;
    let mut out = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(fail());
        }
        let inv0 = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|x| x * inv0 % p).collect();
        // dim² · sum_j ω_j ω_{j*} / |C_j| = |G|.
        let mut s = 0u64;
        for c in 0..r {
            let t = omega[c] * omega[group.inverse_class(c)] % p;
            s = (s + t * inv_mod(group.class_size(c) as u64 % p, p)) % p;
        }
        if s == 0 {
            return Err(fail());
        }
        let d2 = (order % p) * inv_mod(s, p) % p;
        let dims: Vec<u64> = (1..).take_while(|d| d * d <= order).filter(|d| d * d % p == d2 && order % d == 0).collect();
        let [dim] = dims[..] else {
            return Err(fail());
        };
        let modular: Vec<u64> = (0..r).map(|c| omega[c] * (dim % p) % p * inv_mod(group.class_size(c) as u64 % p, p) % p).collect();
        let mut values = Vec::with_capacity(r);
        for c in 0..r {
            values.push(lift(group, &modular, c, dim, zeta, p).ok_or_else(fail)?);
        }
        out.push(ClassFunction { values });
    }
    Ok(out)
}

/// `χ(g) = sum_k μ_k ζ_m^k` where `μ_k` is the multiplicity of the
/// eigenvalue `ζ_m^k` of `g`, recovered modulo `p` from `χ(g^l)`.
fn lift(group: &FiniteGroup, modular: &[u64], c: usize, dim: u64, zeta_e: u64, p: u64) -> Option<CycloNum> {
    let e = group.exponent();
    let g = group.class_rep(c);
    let m = group.element_order(g);
    let zeta = pow_mod(zeta_e, (e / m) as u64, p);
    let mut powers = Vec::with_capacity(m as usize);
    let mut x = 0;
    for _ in 0..m {
        powers.push(modular[group.class_of(x)]);
        x = group.mul(x, g);
    }
    let inv_m = inv_mod(m as u64 % p, p);
    let mut value = CycloNum::zero(e);
    for k in 0..m as u64 {
        let mut mu = 0u64;
        for (l, &chi) in powers.iter().enumerate() {
            let exp = (m as u64 - (k * l as u64) % m as u64) % m as u64;
            mu = (mu + chi * pow_mod(zeta, exp, p)) % p;
        }
        mu = mu * inv_m % p;
        if mu > dim {
            return None;
        }
        if mu != 0 {
            let root = CycloNum::root_of_unity(e, (k * (e / m) as u64) as i64);
            value = &value + &root.scale(&RBig::from(mu));
        }
    }
    Some(value)
}

/// Splits an invariant subspace (rows in reduced echelon form) into the
/// eigenspaces of `x ↦ M x`, `M[l][k] = consts[l][k]`.
fn split(space: &[Vec<u64>], consts: &[Vec<u64>], p: u64) -> Vec<Vec<Vec<u64>>> {
    let d = space.len();
    let r = space[0].len();
    let pivots: Vec<usize> = space.iter().map(|b| b.iter().position(|&x| x != 0).expect("nonzero basis vector")).collect();
    let images: Vec<Vec<u64>> = space.iter().map(|b| (0..r).map(|l| (0..r).fold(0, |acc, k| (acc + consts[l][k] % p * b[k]) % p)).collect()).collect();
    // restricted[c'][c] = coordinate of M b_c along b_{c'}.
    let restricted: Vec<Vec<u64>> = (0..d).map(|cp| (0..d).map(|c| images[c][pivots[cp]]).collect()).collect();
    let poly = charpoly(&restricted, p);
    let mut out = Vec::new();
    for x in 0..p {
        if eval(&poly, x, p) != 0 {
            continue;
        }
        let shifted: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|j| if i == j { (restricted[i][j] + p - x) % p } else { restricted[i][j] }).collect()).collect();
        let kernel = nullspace(&shifted, p);
        let vectors: Vec<Vec<u64>> = kernel.iter().map(|y| (0..r).map(|k| (0..d).fold(0, |acc, c| (acc + y[c] * space[c][k]) % p)).collect()).collect();
        let mut v = vectors;
        rref(&mut v, p);
        out.push(v);
    }
    out
}

fn identity(r: usize) -> Vec<Vec<u64>> {
    (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).unwrap_or(1)
}

fn eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Characteristic polynomial `det(x − A)` (coefficients from degree 0) via
/// reduction to upper Hessenberg form.
fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let d = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for k in 0..d.saturating_sub(2) {
        let Some(piv) = (k + 1..d).find(|&i| h[i][k] != 0) else {
            continue;
        };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = inv_mod(h[k + 1][k], p);
        for i in k + 2..d {
            let f = h[i][k] * inv % p;
            if f == 0 {
                continue;
            }
            for j in 0..d {
                h[i][j] = (h[i][j] + p - f * h[k + 1][j] % p) % p;
            }
            for row in h.iter_mut() {
                row[k + 1] = (row[k + 1] + f * row[i]) % p;
            }
        }
    }
    // p_0 = 1; p_m = (x − h_mm) p_{m−1} − sum_{i<m} h_{i,m} (prod_{k=i+1}^{m} h_{k,k−1}) p_{i−1}.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..d {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = (next[k] + p - c * h[m][m] % p) % p;
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = prod * h[i + 1][i] % p;
            let f = h[i][m] * prod % p;
            if f == 0 {
                continue;
            }
            for (k, &c) in polys[i].iter().enumerate() {
                next[k] = (next[k] + p - f * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(piv, r);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn nullspace(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = a.first().map_or(0, |r| r.len());
    let mut m = a.to_vec();
    let pivots = rref(&mut m, p);
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; d];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_companion() {
        // x² − 3x + 2 over F_7.
        let a = vec![vec![0, 5], vec![1, 3]];
        assert_eq!(charpoly(&a, 7), vec![2, 4, 1]);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(7), 3);
        assert_eq!(pow_mod(primitive_root(13), 12, 13), 1);
    }
}
