//! Exact arithmetic for Appell-Carlitz numbers over `F_r(T)`.
//!
//! The stack, bottom up:
//!
//! * [`ff`]: finite fields `F_r`, `r = p^e`, with explicit irreducible moduli;
//! * [`poly`]: dense polynomials over `F_r` in `T`;
//! * [`ratfunc`]: canonical reduced fractions, the field `F_r(T)`;
//! * [`series`]: truncated power series over `F_r(T)` with
//!   Hasse-Teichmueller derivatives;
//! * [`carlitz`]: `[i]`, `D_i`, `L_i`, the Carlitz factorial, `e_C`, `log_C`;
//! * [`appell`]: Appell-Carlitz numbers by five independent methods.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod appell;
pub mod carlitz;
pub mod combinat;
pub mod error;
pub mod ff;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod series;

pub use appell::{ACResult, AppellFamily, Method};
pub use carlitz::{CarlitzContext, FamilyLabel};
pub use error::{Error, Result};
pub use ff::{FieldElement, FieldSpec};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use series::TruncSeries;
