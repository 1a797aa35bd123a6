//! Coset enumeration, permutation groups, GF(4) unitary transvections and a
//! table-driven 2-group, used to check identities in quotients of Coxeter groups.

pub mod coxeter;
pub mod data;
pub mod gf4;
pub mod nsub;
pub mod perm;
pub mod permgrp;
pub mod tc;
pub mod unitary;
pub mod words;

pub use coxeter::{catalog, CatalogEntry, CoxeterGraph, Fact, Oracle, Presentation};
pub use perm::Perm;
pub use permgrp::{evaluate, PermGroup};
pub use tc::{enumerate, CosetTable, Limits, Strategy};
pub use words::{Alphabet, Letter, Word};
