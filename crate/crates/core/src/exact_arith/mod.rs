//! Exact scalars: integer Laurent polynomials in `v`, a bivariate variant for
//! two-parameter identities, and cyclotomic numbers for character values.

mod bivariate;
mod cyclo;
mod laurent;
mod linalg;

pub use bivariate::BiLaurentPoly;
pub use cyclo::{cyclotomic_poly, euler_phi, gcd, lcm, CycloNum};
pub use laurent::LaurentPoly;
pub use linalg::RMatrix;

pub use dashu_int::IBig;
pub use dashu_ratio::RBig;

/// Serde helper writing a sequence of big integers as decimal strings.
pub mod ibig_seq {
    use dashu_int::IBig;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &[IBig], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }
}
