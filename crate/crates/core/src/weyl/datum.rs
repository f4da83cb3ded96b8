use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which lattice the preset's character group `X` is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `X` is the root lattice.
    Adjoint,
    /// `X` is the weight lattice.
    #[serde(rename = "sc")]
    SimplyConnected,
}

/// A semisimple root datum of rank `ρ` with `dim X = ρ`.
///
/// `simple_roots[i]` lives in `X` and `simple_coroots[j]` in `Y = Hom(X, Z)`,
/// both in the standard coordinates of `Z^ρ`; `cartan[i][j]` is the pairing
/// `<α_i, α̌_j>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub name: String,
    pub cartan: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Builds a preset from a Cartan type such as `"B2"` and a lattice flavor.
    pub fn preset(cartan_type: &str, flavor: Flavor) -> Result<Self> {
        let cartan = cartan_matrix(cartan_type)?;
        let r = cartan.len();
        let (simple_roots, simple_coroots) = match flavor {
            Flavor::Adjoint => {
                let roots = identity(r);
                let coroots = (0..r).map(|j| (0..r).map(|i| cartan[i][j]).collect()).collect();
                (roots, coroots)
            }
            Flavor::SimplyConnected => (cartan.clone(), identity(r)),
        };
        let suffix = match flavor {
            Flavor::Adjoint => "ad",
            Flavor::SimplyConnected => "sc",
        };
        let datum = Self {
            name: format!("{}_{suffix}", cartan_type.to_ascii_uppercase()),
            cartan,
            simple_roots,
            simple_coroots,
        };
        datum.validate()?;
        Ok(datum)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let datum: Self = serde_json::from_str(text)?;
        datum.validate()?;
        Ok(datum)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.rank();
        if r == 0 {
            return Err(Error::InvalidDatum("rank must be positive".into()));
        }
        if self.cartan.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidDatum("cartan matrix must be square".into()));
        }
        if self.simple_roots.len() != r || self.simple_coroots.len() != r {
            return Err(Error::InvalidDatum(format!("expected {r} simple roots and coroots")));
        }
        for v in self.simple_roots.iter().chain(&self.simple_coroots) {
            if v.len() != r {
                return Err(Error::DimensionMismatch { expected: r, got: v.len() });
            }
        }
        for i in 0..r {
            for j in 0..r {
                let pairing = dot(&self.simple_roots[i], &self.simple_coroots[j]);
                if pairing != self.cartan[i][j] {
                    return Err(Error::InvalidDatum(format!(
                        "<alpha_{i}, coroot_{j}> = {pairing} but cartan entry is {}",
                        self.cartan[i][j]
                    )));
                }
            }
            if self.cartan[i][i] != 2 {
                return Err(Error::InvalidDatum(format!("cartan diagonal entry {i} is not 2")));
            }
        }
        if determinant(&self.simple_roots) == 0 {
            return Err(Error::InvalidDatum("simple roots must span X rationally".into()));
        }
        Ok(())
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn identity(r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
}

fn determinant(m: &[Vec<i64>]) -> i64 {
    // Bareiss fraction-free elimination.
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Cartan matrix `C[i][j] = <α_i, α̌_j>` with Bourbaki node numbering.
pub fn cartan_matrix(cartan_type: &str) -> Result<Vec<Vec<i64>>> {
    let unknown = || Error::UnknownPreset(cartan_type.to_string());
    let t = cartan_type.trim().to_ascii_uppercase();
    let (letter, rank) = t.split_at(1);
    let r: usize = rank.parse().map_err(|_| unknown())?;
    let chain = |r: usize| {
        let mut c = vec![vec![0i64; r]; r];
        for i in 0..r {
            c[i][i] = 2;
            if i + 1 < r {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        }
        c
    };
    let c = match (letter, r) {
        ("A", 1..=8) => chain(r),
        ("B", 2..=8) => {
            let mut c = chain(r);
            c[r - 2][r - 1] = -2;
            c
        }
        ("C", 2..=8) => {
            let mut c = chain(r);
            c[r - 1][r - 2] = -2;
            c
        }
        ("D", 4..=8) => {
            let mut c = chain(r);
            c[r - 2][r - 1] = 0;
            c[r - 1][r - 2] = 0;
            c[r - 3][r - 1] = -1;
            c[r - 1][r - 3] = -1;
            c
        }
        ("G", 2) => vec![vec![2, -1], vec![-3, 2]],
        _ => return Err(unknown()),
    };
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for t in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"] {
            for f in [Flavor::Adjoint, Flavor::SimplyConnected] {
                RootDatum::preset(t, f).unwrap();
            }
        }
        assert!(matches!(RootDatum::preset("E9", Flavor::Adjoint), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn bad_pairing_rejected() {
        let mut d = RootDatum::preset("A2", Flavor::Adjoint).unwrap();
        d.simple_coroots[0][1] = 0;
        assert!(d.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = RootDatum::preset("G2", Flavor::SimplyConnected).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(RootDatum::from_json(&text).unwrap(), d);
    }

    #[test]
    fn d4_center_node() {
        let c = cartan_matrix("D4").unwrap();
        assert_eq!(c[1], vec![-1, 2, -1, -1]);
    }
}
