//! Pseudo-bosonic Swanson model with shifted ladder operators.
//!
//! Every state in the model is a polynomial times a Gaussian, so states are
//! carried as [`PolyGauss`] values and inner products are computed exactly
//! from Gaussian moments. Numerics are generic over [`Real`]: `f64` or the
//! 256-bit [`Mp`].
//!
//! ```
//! use pbswanson::{derive, DerivedParams, Preset};
//!
//! let d: DerivedParams<f64> = derive(&Preset::Fig1B.params()).unwrap();
//! assert!(d.gamma < 0.0);
//! ```

pub mod bicoherent;
pub mod eigensystem;
pub mod error;
pub mod operators;
pub mod params;
pub mod polygauss;
pub mod scalar;
pub mod specialfn;
pub mod verify;

pub use bicoherent::{BiCoherentState, Construction};
pub use eigensystem::{build_family, EigenFamily, Method};
pub use error::{ParamError, PolyGaussError, SpecialFnError};
pub use operators::{LadderOp, ModelOperators};
pub use params::{derive, DerivedParams, Flavor, ModelParams, Preset};
pub use polygauss::PolyGauss;
pub use scalar::{Mp, Real};
