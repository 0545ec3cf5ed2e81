#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dsu;
pub mod graph;
pub mod metric;
pub mod msf;
pub mod sample;
pub mod streams;
