//! Exact arithmetic over the rationals: polynomials, rational functions,
//! truncated power series, Sturm root isolation and small linear algebra.

pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod ring;
pub mod series;
pub mod sturm;

pub use poly::RatPoly;
pub use ratfunc::RatFunc;
pub use ring::{Rational, Ring};
pub use series::TruncSeries;
