//! Desk-scale computational toolkit for braid orbits on conjugacy-class
//! tuples, the graded ring of components, Koszul-style complexes, braid
//! group homology with local coefficients, Cohen-Lenstra statistics, and
//! class groups of hyperelliptic function fields.

pub mod braid;
pub mod group;
pub mod cl;
pub mod ff;
pub mod homology;
pub mod kcomplex;
pub mod linalg;
