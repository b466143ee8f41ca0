//! Colored configurations, quotient complexes of the root lattice $A_k$, and
//! the correspondence with perfect 1-codes.
//!
//! A *colored $k$-configuration* is a connected, 4-cycle-free, $k$-regular
//! incidence structure of points and lines together with a proper
//! $k$-edge-coloring of its incidence graph satisfying a hexagonal closure
//! condition: for every vertex $v$ and ordered triple of distinct colors
//! $(a,b,c)$, walking the colors $a,b,c,a,b,c$ returns to $v$.  Examples come
//! from planar difference sets (projective planes) and from commutative
//! semifields (affine planes).
//!
//! Every colored configuration $C$ with $k+1$ colors acts on the lattice
//! $A_k = \{x \in \mathbb{Z}^{k+1} : \sum_i x_i = 0\}$ through a vertex
//! labeling, and the stabilizer of the labeling is a sublattice $H$ of full
//! rank.  The quotient of the Rips complex of $A_k$ (at distance one) by $H$
//! is a simplicial complex with one vertex per point of $C$ whose facets come
//! in two families, a copy of $C$ and a copy of its dual.  For configurations
//! with $n = k^2 + k + 1$ points the sublattice $H$ is a perfect 1-code, and
//! the assignments $C \mapsto H$ and $H \mapsto C$ are mutually inverse.
//!
//! The crate is organized bottom-up:
//!
//! * [`algebra`]: exact integer matrices (Hermite and Smith normal forms),
//!   finitely generated abelian groups as quotients, and small finite fields.
//! * [`config`]: colored configurations, their validation, duality,
//!   isomorphism testing, and group actions.
//! * [`lattice`]: vectors of $A_k$, linear codes (sublattices), the action of
//!   $A_k$ induced by a coloring, labelings, and stabilizer codes.
//! * [`complex`]: simplicial complexes, the quotient construction, simplicial
//!   homology, and cross-checks against the lattice picture.
//! * [`constructions`]: planar difference sets (including the classical
//!   field-based family), commutative semifields, and exhaustive searches.
//! * [`correspondence`]: Sidon sets, the code-to-configuration functor and
//!   its inverse, round-trip verification, and difference-set recovery.
//! * [`formats`]: plain-text file formats for every object above.
//! * [`cli`]: the `configcomplex` command-line interface.

pub mod algebra;
pub mod cli;
pub mod complex;
pub mod config;
pub mod constructions;
pub mod correspondence;
mod error;
pub mod formats;
pub mod lattice;
pub mod report;

pub use error::{Error, Result};
