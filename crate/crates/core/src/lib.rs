//! Exact combinatorics of compactified Néron models of degenerating abelian
//! varieties: Voronoi polytopes and their integrality, fans over a discrete
//! valuation ring, chart semigroups with their normalizations, monomial
//! actions at the level of valuations, and the orbit stratification of the
//! closed fiber.

pub mod arith;
pub mod charts;
pub mod cli;
pub mod datum;
pub mod error;
pub mod fan;
pub mod fixtures;
pub mod io;
pub mod monomial;
pub mod polyhedra;
pub mod report;
pub mod strata;
pub mod verify;
pub mod voronoi;
