//! Kauffman brackets, colored Jones polynomials, adequacy classification,
//! degree bounds and stable tail coefficients of link diagrams, together with
//! machinery that verifies the binomial cancellation of the top bracket
//! coefficients of cables on small instances.

pub mod error;
pub mod poly;
pub mod diagram;
pub mod states;
pub mod ribbon;
pub mod bracket;
pub mod jones;
pub mod cancel;
pub mod ingest;

pub use diagram::{parse_pd, Diagram};
pub use error::{Error, Result};
pub use poly::{LaurentPoly, QSeriesView, Q4};
