//! Computation in the Kauffman monoid `K_n`.
//!
//! Elements are handled two independent ways: as words over `c` and the
//! blocks `h[j,i]`, normalized by a confluent rewriting system
//! ([`rewrite`]), and as pairs `(c^k, α)` with `α` a planar Brauer diagram
//! ([`diagrams`]). On top of both, [`idempotents`] decides membership in the
//! idempotent generated subsemigroup and produces checked factorizations,
//! and [`structure`] examines its maximal non-identity J-classes.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod diagrams;
pub mod idempotents;
pub mod rewrite;
pub mod structure;
pub mod words;

pub use diagrams::{eval, kmul, KElement, PlanarDiagram};
pub use idempotents::{decompose, is_member, Certificate, EPrimeGen, MembershipVerdict, Reason};
pub use rewrite::{normal_form, normalize, NormalizationTrace, RewriteError};
pub use words::{chi, parse, render, render_compact, ChiReport, Jnf, Letter, Word};
