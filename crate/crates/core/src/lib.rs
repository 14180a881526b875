//! Exact computation in the standard model of the asymptotic couple of the
//! logarithmic transseries: finitely supported rational sequences ordered
//! lexicographically, with ψ, the integral map, successor and predecessor,
//! Ψ-functions and their derived sets, quotients by convex subgroups and
//! dimension of definable sets.

pub mod constraints;
pub mod couple;
pub mod definable;
pub mod element;
pub mod equilateral;
pub mod error;
pub mod gensfun;
pub mod identities;
pub mod member;
pub mod probe;
pub mod product;
pub mod psi_function;
pub mod quotient;
pub mod random;
pub mod rational;
pub mod small_set;
pub mod term;

pub use element::{ArchClassToken, GammaElement, GammaExt, PsiPoint};
pub use error::{Error, ParseError, Result};
pub use gensfun::GenSFunction;
pub use psi_function::{ImageUnion, PsiFunction};
pub use quotient::{Phi, TruncatedVector};
pub use rational::Rational;
pub use small_set::{ConstrainedImage, SmallSet};
pub use term::Term;
