//! Stretch factors of pseudo-Anosov monodromies computed combinatorially.
//!
//! The pipeline reads a veering triangulation ([`tri`]), builds its
//! branched surface and flow graph ([`bsurf`]), and computes growth rates of
//! weighted digraphs ([`dynamics`]). Train-track folding cycles ([`track`])
//! give a second route to the same numbers, and [`cones`] handles the exact
//! polyhedral cones of carried classes and the entropy function on them.

mod bigser;
pub mod bsurf;
pub mod cones;
pub mod dynamics;
pub mod fixtures;
pub mod linalg;
pub mod suite;
pub mod track;
pub mod tri;
