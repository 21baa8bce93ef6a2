//! Exact computations with almost cosymplectic and almost contact structures
//! on Lie groups and tori.
//!
//! Everything is left-invariant: a [`Frame`] fixes a basis of vector fields
//! and its structure constants, and forms, vectors and endomorphisms are
//! constant in that basis. Coefficients live in any [`Ring`]; exact work uses
//! [`Rational`] or polynomials in the sphere parameters (`LambdaPoly`).

pub mod certificate;
pub mod contact3;
pub mod error;
pub mod exterior;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod sphere;
pub mod structures;
pub mod symplectization;
pub mod univariate;

pub use certificate::{Certificate, Verdict, Witness};
pub use contact3::{AlmostContact, LambdaPoint, Metric, TwoOneTensor, AC3};
pub use error::{Error, Result};
pub use exterior::{
    lie_derivative_1form, lie_derivative_endo, EndoField, Frame, FrameRef, KForm, VectorField,
};
pub use linalg::Matrix;
pub use poly::{LambdaPoly, Monomial, Poly};
pub use scalar::{Field, Rational, Ring};
pub use sphere::{Generators, SphereCertificate, SphereOptions, SphereVerdict, VolumePolynomial};
pub use structures::{cartan_class, AlmostCosym, ClassReport, StructureClass, StructureKind};

/// Exact rational form.
pub type Form = KForm<Rational>;
/// Form whose coefficients are polynomials in `λ_1, ..., λ_k`.
pub type LambdaForm = KForm<LambdaPoly>;
pub type Vector = VectorField<Rational>;
pub type LambdaVector = VectorField<LambdaPoly>;
pub type Endo = EndoField<Rational>;
pub type LambdaEndo = EndoField<LambdaPoly>;
