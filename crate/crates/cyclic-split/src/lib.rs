//! Exact arithmetic for cyclic algebras of odd degree and their splitting
//! certificates.
//!
//! The crate builds, over an exactly-represented base field `k`, the Kummer
//! extension `l = k[x]/(x^d - b)`, the cyclic algebra `A = (l, a)` twisted by
//! the Galois action, and — for degree 3 — the first Tits construction Albert
//! algebra `J(A, c)`.  The central computational question is whether `A`
//! splits, i.e. whether `a` is a norm of `l/k`.  A sufficient criterion is a
//! representation of a power of `b` by the diagonal binary form
//! `⟨a, b^r⟩` of degree `d`; when a representation is found, the crate turns
//! it into a norm witness, an explicit nontrivial idempotent, and a
//! machine-checkable JSON certificate.  On the negative side, valuation
//! profiles over rational function fields certify that specific
//! representations are impossible, which bounds what the criterion itself can
//! see.
//!
//! Modules:
//!
//! * [`exactfield`] — prime fields, the rationals, cyclotomic fields
//!   `Q(ω_d)`, and fraction fields of multivariate polynomial rings, with a
//!   decidable-where-possible `d`-th power test and canonical total orders.
//! * [`polyring`] — sparse multivariate polynomials over any of those fields.
//! * [`kummer`] — the degree-`d` Kummer extension, its Galois action, field
//!   norm and trace.
//! * [`cyclic`] — the cyclic algebra, reduced norms and characteristic
//!   polynomials via the regular representation, and split certificates.
//! * [`forms`] — diagonal forms, representation searches, and valuation
//!   obstructions.
//! * [`theorem_engine`] — the splitting pipeline built from the binary-form
//!   criterion, its degenerate-power guard, and the worked rational
//!   function field example.
//! * [`albert`] — first Tits construction cubic Jordan algebras and the
//!   non-division test.
//! * [`cli`] — the command line interface.

pub mod albert;
pub mod cli;
pub mod cyclic;
pub mod exactfield;
pub mod forms;
pub mod kummer;
pub mod polyring;
pub mod theorem_engine;

pub(crate) mod matrix;
