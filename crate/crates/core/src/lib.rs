//! Numerical monodromy of one-parameter complex polynomial families.
//!
//! Roots of `p_a(z)` are continued along closed loops of the parameter `a`;
//! the induced root permutations generate the monodromy group, whose derived
//! series decides how many nested root extractions a radical formula for the
//! family would need.
//!
//! Composition of permutations is right-to-left throughout: `s.compose(&t)`
//! applies `t` first.

pub mod certify;
pub mod expr;
pub mod family;
pub mod format;
pub mod path;
pub mod permgroup;
pub mod poly;
pub mod radical;
pub mod scalar;
pub mod tracker;

pub use scalar::Real;

/// Complex scalar used by the `f64` front end.
pub type Complex = num_complex::Complex<f64>;
/// Complex polynomial over `f64`.
pub type ComplexPoly = poly::Poly<f64>;

pub use family::{BranchSet, FamilyError, PolyFamily};
pub use poly::{min_separation, PolyError};

/// Parameter-plane path over `f64`.
pub type ParamPath = path::Path<f64>;
pub type PathSegment = path::Segment<f64>;
pub type Lasso = path::Lasso<f64>;
pub use path::PathError;
pub use permgroup::{GroupName, PermError, PermSet, Permutation};
pub use tracker::{
    canonical_numbering, monodromy_perm, track, TrackError, TrackOptions, TrackResult,
};
pub use radical::{
    evaluate_tower, is_cautious, track_tower, CoeffPath, Combine, RadicalError, RadicalFormula,
    ValueTower,
};
pub use certify::{
    abel_certificate, abel_certificate_at, monodromy_report, product_family, AbelCertificate,
    AbelVerdict, CertifyError, MonodromyReport,
};
