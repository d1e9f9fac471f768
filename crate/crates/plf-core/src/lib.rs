#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod filter;
pub mod nucleus;
pub mod frame;
pub mod attach;
pub mod congruence;
pub mod em;
pub mod order;
pub mod rline;
