//! Characters of `W`, `W_λ`, `W'_λ` and `W ⋉ T_n`; the invariants `𝔠_E`,
//! `a_E`, `b_E` of their irreducible representations; special
//! representations, left cell modules and the trace identities of the
//! asymptotic ring.

mod chartable;
mod classfn;
mod group;
mod identities;
mod model;
mod molien;

pub use chartable::CharacterTable;
pub use classfn::ClassFunction;
pub use group::{FiniteGroup, DEFAULT_GROUP_CAP};
pub use identities::{
    correspondence_identities, extension_identities, hecke_identities, hecke_products, hom_dimension_formula, hom_table, jring_identities, n_double_prime, n_prime, rep_identities, smile_sector,
    IdentityCheck, IdentityOptions, Products, IDENTITY_NAMES,
};
pub use model::{JInvariants, LeftCellModule, ModelKind, RepInvariants, RepModel};
pub use molien::{det_one_minus_q, molien_coinvariant, molien_sv, GradedMultiplicity};
