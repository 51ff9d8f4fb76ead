//! Exact verification toolkit for quantum symmetric pairs of the Lie
//! superalgebras gl(N|2m), osp(N|2m) and spo(2n|2m).

pub mod coideal;
pub mod gradedlin;
pub mod kmat;
pub mod linalg;
pub mod natrep;
pub mod qring;
pub mod report;
pub mod rmat;
pub mod rootdata;
pub mod satake;

pub use qring::{QError, ScalarQ};
