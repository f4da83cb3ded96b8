use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use dashu_int::IBig;
use dashu_ratio::RBig;

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest degree
/// first. Cached per order.
pub fn cyclotomic_poly(m: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(m >= 1, "cyclotomic order must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by every Phi_d with d | m, d < m.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let den = cyclotomic_poly(d);
            num = exact_monic_div(&num, &den);
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(m, p.clone());
    p
}

fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact cyclotomic division");
    q
}

pub fn euler_phi(m: u32) -> usize {
    cyclotomic_poly(m).len() - 1
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Element of the cyclotomic field `Q(zeta_m)`, stored as rational coordinates
/// on the power basis `1, zeta, ..., zeta^{phi(m)-1}`.
#[derive(Clone)]
pub struct CycloNum {
    order: u32,
    coords: Vec<RBig>,
}

impl CycloNum {
    pub fn zero(m: u32) -> Self {
        Self { order: m, coords: vec![RBig::ZERO; euler_phi(m)] }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, RBig::ONE)
    }

    pub fn from_int(m: u32, c: i64) -> Self {
        Self::from_rational(m, RBig::from(c))
    }

    pub fn from_rational(m: u32, r: RBig) -> Self {
        let mut x = Self::zero(m);
        x.coords[0] = r;
        x
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![RBig::ZERO; e + 1];
        poly[e] = RBig::ONE;
        Self::reduce(m, poly)
    }

    /// Builds `sum_k coeffs[k] zeta_m^k` from a coefficient list of any length.
    pub fn from_power_coeffs(m: u32, coeffs: &[i64]) -> Self {
        let mut poly = vec![RBig::ZERO; m as usize];
        for (k, &c) in coeffs.iter().enumerate() {
            poly[k % m as usize] += RBig::from(c);
        }
        Self::reduce(m, poly)
    }

    fn reduce(m: u32, mut poly: Vec<RBig>) -> Self {
        let phi = cyclotomic_poly(m);
        let d = phi.len() - 1;
        if poly.len() > d {
            for k in (d..poly.len()).rev() {
                let c = std::mem::replace(&mut poly[k], RBig::ZERO);
                if c == RBig::ZERO {
                    continue;
                }
                for (j, &pj) in phi.iter().enumerate().take(d) {
                    if pj != 0 {
                        poly[k - d + j] -= &c * RBig::from(pj);
                    }
                }
            }
            poly.truncate(d);
        }
        poly.resize(d, RBig::ZERO);
        Self { order: m, coords: poly }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[RBig] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| *c == RBig::ZERO)
    }

    /// The rational value when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<RBig> {
        if self.coords.iter().skip(1).all(|c| *c == RBig::ZERO) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// The integer value when the element lies in `Z`.
    pub fn to_integer(&self) -> Option<IBig> {
        let r = self.to_rational()?;
        let (num, den) = r.into_parts();
        if den == dashu_int::UBig::ONE {
            Some(num)
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(zeta_target)`; `target` must be a
    /// multiple of the current order.
    pub fn embed(&self, target: u32) -> Self {
        assert!(target % self.order == 0, "cannot embed Q(zeta_{}) in Q(zeta_{target})", self.order);
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![RBig::ZERO; (self.coords.len().max(1) - 1) * step + 1];
        for (k, c) in self.coords.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Self::reduce(target, poly)
    }

    fn harmonize(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.order as u64, b.order as u64) as u32;
        (a.embed(m), b.embed(m))
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut poly = vec![RBig::ZERO; m];
        for (k, c) in self.coords.iter().enumerate() {
            poly[(m - k) % m] += c;
        }
        Self::reduce(self.order, poly)
    }

    pub fn scale(&self, r: &RBig) -> Self {
        Self { order: self.order, coords: self.coords.iter().map(|c| c * r).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.order);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Galois automorphism `zeta -> zeta^k` for `k` prime to the order.
    pub fn galois(&self, k: i64) -> Self {
        let m = self.order as i64;
        assert_eq!(gcd(k.rem_euclid(m) as u64, m as u64), 1, "exponent must be a unit");
        let mut poly = vec![RBig::ZERO; m as usize];
        for (j, c) in self.coords.iter().enumerate() {
            poly[((j as i64) * k).rem_euclid(m) as usize] += c;
        }
        Self::reduce(self.order, poly)
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coords == other.coords;
        }
        let (a, b) = Self::harmonize(self, other);
        a.coords == b.coords
    }
}

impl Eq for CycloNum {}

impl Add<&CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        if self.order != rhs.order {
            let (a, b) = CycloNum::harmonize(self, rhs);
            return &a + &b;
        }
        let coords = self.coords.iter().zip(&rhs.coords).map(|(x, y)| x + y).collect();
        CycloNum { order: self.order, coords }
    }
}

impl Sub<&CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self + &(-rhs)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { order: self.order, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Mul<&CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        if self.order != rhs.order {
            let (a, b) = CycloNum::harmonize(self, rhs);
            return &a * &b;
        }
        let n = self.coords.len();
        let mut poly = vec![RBig::ZERO; (2 * n).saturating_sub(1).max(1)];
        for (i, a) in self.coords.iter().enumerate() {
            if *a == RBig::ZERO {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if *b != RBig::ZERO {
                    poly[i + j] += a * b;
                }
            }
        }
        CycloNum::reduce(self.order, poly)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if *c == RBig::ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ if *c == RBig::ONE => write!(f, "z{}^{k}", self.order)?,
                _ => write!(f, "({c})*z{}^{k}", self.order)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({self})", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(60), 16);
    }

    #[test]
    fn cube_root_cubed() {
        let z = CycloNum::root_of_unity(3, 1);
        assert_eq!(&(&z * &z) * &z, CycloNum::one(3));
    }

    #[test]
    fn conj_of_i() {
        let i = CycloNum::root_of_unity(4, 1);
        assert_eq!(i.conj(), -&i);
        assert_eq!(i.conj().conj(), i);
    }

    #[test]
    fn sum_of_cube_roots_vanishes() {
        let z = CycloNum::root_of_unity(3, 1);
        let s = &(&CycloNum::one(3) + &z) + &z.pow(2);
        assert!(s.is_zero());
    }

    #[test]
    fn embedding_is_compatible() {
        let z3 = CycloNum::root_of_unity(3, 1);
        let z6 = CycloNum::root_of_unity(6, 2);
        assert_eq!(z3, z6);
        let w = &z3 * &CycloNum::root_of_unity(4, 1);
        assert_eq!(w, CycloNum::root_of_unity(12, 4 + 3));
    }

    #[test]
    fn integer_detection() {
        let z = CycloNum::root_of_unity(5, 2);
        let s = &(&z + &z.conj()) + &(&CycloNum::root_of_unity(5, 1) + &CycloNum::root_of_unity(5, 4));
        // zeta^2 + zeta^3 + zeta + zeta^4 = -1
        assert_eq!(s.to_integer(), Some(IBig::from(-1)));
    }
}
