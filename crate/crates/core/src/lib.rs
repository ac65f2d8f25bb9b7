//! Exact combinatorics of repetition quivers for simply laced Dynkin types:
//! mesh knitting for Hom and Ext dimensions, the monomial order and its
//! decision procedure, strata and downward-closure enumeration, the type A
//! triangle calculus, and the degeneration engine with its exhaustive
//! cross-validation harness.
//!
//! Everything is integer-exact and deterministic: identical inputs produce
//! byte-identical output. All values are immutable after construction and
//! every operation is a pure function, so concurrent readers need no
//! coordination.
//!
//! ```
//! use meshdeg::degeneration::{deg_set, leq_delta};
//! use meshdeg::monomial::{nakajima_leq, LaurentMonomial};
//! use meshdeg::{DerivedObject, Repetition};
//!
//! let rep = Repetition::from_json(
//!     r#"{"type":"A","rank":3,"arrows":[[1,2],[3,2]],"height":{"1":1,"2":0,"3":1}}"#,
//! )?;
//!
//! // The two orders agree: one annihilation fusion realizes the relation the
//! // monomial solver certifies with a 2x2 box of A-exponents.
//! let top = DerivedObject::parse(&rep, "V(2,-2)+V(2,0)+V(2,2)")?;
//! let bottom = DerivedObject::parse(&rep, "V(2,0)")?;
//! let witness = leq_delta(&rep, &bottom, &top)?.expect("related");
//! assert_eq!(witness.len(), 1);
//!
//! let n = LaurentMonomial::parse("Y[2,0]")?;
//! let m = LaurentMonomial::parse("Y[2,-2]*Y[2,0]*Y[2,2]")?;
//! let v = nakajima_leq(&rep, &n, &m)?.expect("comparable");
//! assert_eq!(v.total(), 4);
//!
//! assert_eq!(deg_set(&rep, &top)?.len(), 6);
//! # Ok::<(), meshdeg::Error>(())
//! ```

pub mod degeneration;
pub mod error;
pub mod hammock;
pub mod monomial;
pub mod object;
pub mod poset;
pub mod quiver;
pub mod type_a;

pub use error::{Error, Result};
pub use monomial::{AMonomialVector, GradedDims, LaurentMonomial};
pub use object::{DerivedObject, Side};
pub use quiver::{DynkinType, HeightFunction, K0Class, Quiver, QuiverSpec, Repetition, Vertex};
pub use type_a::{Condition, Parallelogram};
