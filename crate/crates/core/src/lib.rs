pub mod cli;
pub mod coeff;
pub mod error;
pub mod operad;
mod syntax;
pub mod tree;
pub mod series;
pub mod hopf;
pub mod io;
pub mod oracle;
pub mod sample;
pub mod verify;
