//! Core algorithms for turning Sidon sequences into nonpositively curved
//! triangle complexes: modular Sidon arithmetic, the bipartite link graphs
//! it generates, the six-face rings that constrain flat planes, a triangular
//! lattice ring-puzzle solver, and finite balls of the ambient 2-complex.
//!
//! The crate is `no_std` (with `alloc`); all IO, serialization, and the CLI
//! live in the companion `sidonx` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod complex;
pub mod linkgraph;
pub mod puzzle;
pub mod rings;
pub mod sidon;
