//! Exterior algebra over polynomial coefficients, scalar prefactors in half
//! powers, and the `AlphaForm` container.

mod alpha_form;
mod diffform;
mod prefactor;

pub use alpha_form::{latex_poly, AlphaForm};
pub use diffform::{shuffle_sign, DiffForm, Generator, Word};
pub use prefactor::ScalarPrefactor;
pub(crate) use diffform::merge_sign;

use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("forms live in different variable registries")]
    RegistryMismatch,
    #[error("prefactors refer to different special polynomials")]
    PrefactorMismatch,
    #[error("prefactor exponent of a_{0} is odd and cannot be absorbed")]
    OddParameterPower(usize),
    #[error("generator map is missing {0}")]
    UnmappedGenerator(Generator),
}
