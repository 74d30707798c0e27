//! Centers and centralizers of based rings, with the bimodule and cospan data
//! built from them and executable checks of their coherence laws.

pub mod linalg;
pub mod rings;
pub mod factorization;
pub mod morita;
pub mod report;
pub mod cospan;
pub mod corpus;
