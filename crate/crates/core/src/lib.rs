pub mod cache;
pub mod charbound;
pub mod chartab;
pub mod cli;
pub mod error;
pub mod ff;
pub mod homcount;
pub mod matgrp;
pub mod poly;
pub mod torsion;
pub mod verify;
pub mod word;
pub mod wordmap;

pub use error::{Error, Result};
