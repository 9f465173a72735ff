pub mod cli;
pub mod doublecover;
pub mod error;
pub mod field;
pub mod gb;
pub mod linsys;
pub mod matrix;
pub mod mpoly;
pub mod par;
pub mod parsch;
pub mod problem;
pub mod verify;
