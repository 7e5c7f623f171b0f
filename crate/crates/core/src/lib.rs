pub mod bijection;
pub mod blocks;
pub mod caps;
pub mod error;
pub mod ffpoly;
pub mod partitions;
pub mod qseries;
pub mod symplectic;
