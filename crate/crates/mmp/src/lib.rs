//! Exact arithmetic for the quadrant marked mesh pattern `MMP^k` on
//! permutations: the match statistics themselves, their generating
//! polynomials, the r-Stirling and harmonic number identities behind the
//! coefficients, and the constructive bijections that prove them.

pub mod biject;
pub mod oracle;
pub mod pattern;
pub mod perm;
pub mod poly;
pub mod stirling;
