//! Exact character table of `G = H_1(q) ⋊ Sp(2,q)` for odd prime powers q.
//!
//! Values live in the cyclotomic field `Q(zeta_N)`, `N = lcm(p, q-1, q+1)`,
//! and are checked against orthogonality and brute-force oracles in
//! [`verify`].

pub mod charsums;
pub mod chartab;
pub mod classes;
pub mod cyclo;
pub mod ffield;
pub mod heisgroup;
pub mod output;
pub mod verify;

use thiserror::Error;

pub use charsums::CharConvention;
pub use chartab::{build_table, CharacterId, CharacterTable, SlCharacter};
pub use classes::{class_representatives, ClassRep, Family};
pub use cyclo::{CycloCtx, CycloNum};
pub use ffield::{FieldCtx, FieldElement};
pub use heisgroup::{Group, GroupElement, Sp2Element};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] ffield::FieldError),
    #[error(transparent)]
    Cyclo(#[from] cyclo::CycloError),
    #[error(transparent)]
    Group(#[from] heisgroup::GroupError),
    #[error(transparent)]
    Table(#[from] chartab::TableError),
    #[error(transparent)]
    Verify(#[from] verify::VerifyError),
}
