//! Exact computations in prime characteristic over `F_p[x1..xn]`: Frobenius
//! bracket powers and roots, test ideals, F-pure thresholds, F-jumping
//! numbers, Hartshorne-Speiser-Lyubeznik numbers of hypersurfaces, and a
//! checker for content-function identities.

pub mod chain;
pub mod content;
pub mod decompose;
pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod hsl;
pub mod ideal;
pub mod invariants;
pub mod lab;
pub mod parse;
pub mod poly;
pub mod ring;

pub use decompose::{frobenius_expand, FrobeniusDecomposition, QPower};
pub use error::{AlgebraError, Result};
pub use ideal::Ideal;
pub use parse::parse_poly;
pub use poly::Polynomial;
pub use ring::{parse_ring, Monomial, MonomialOrder, Ring, RingContext};
