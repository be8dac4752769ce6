//! Spectral and combinatorial toolkit for the free orthogonal quantum groups
//! `O_N^+(F)`: Chebyshev eigenvalues of the Haar-state Dirichlet form, fusion
//! data, Hilbert-Schmidt summability certificates, Temperley-Lieb intertwiner
//! estimates on qubit chains, and a symbolic calculus of reduced words in free
//! products.

pub mod chebyshev;
pub mod cli;
pub mod error;
pub mod estimates;
pub mod freewords;
pub mod fusion;
pub mod numeric;
pub mod param;
pub mod report;
pub mod spectrum;
pub mod templieb;

pub use error::{Error, Result};
pub use numeric::Precision;
pub use param::QParameter;
