//! Exterior algebra of left-invariant forms on a frame.

pub mod field;
pub mod form;
pub mod frame;

pub use field::{lie_derivative_1form, lie_derivative_endo, EndoField, VectorField};
pub use form::{Blade, KForm};
pub use frame::{same_frame, BracketSpec, Frame, FrameRef};
