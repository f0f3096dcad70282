//! Convolution sums of divisor functions: brute-force evaluation, closed
//! forms derived from basis expansions, and identity verification.

pub mod brute;
pub mod closed_form;
pub mod formulas;
pub mod identities;

pub use brute::{reflection_residual, w_brute, w_weighted_brute};
pub use closed_form::{ClosedForm, CoefficientTable, Func, Poly};
pub use formulas::{derive_closed_form, expand_atoms};
pub use identities::{verify_identity, Identity, IdentityCatalog, IdentityKind, Status, VerificationReport};
