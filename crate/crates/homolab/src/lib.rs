//! A graded commutative-algebra engine over prime fields: Groebner bases and
//! syzygies over a polynomial cover, module presentations over its quotients,
//! bounded complexes, minimal free resolutions, Ext/Tor, homological
//! invariants with certified finiteness verdicts, and a probe harness that
//! machine-checks classical finiteness criteria, dualities and type formulas
//! on concrete instances.

pub mod complex;
pub mod error;
pub mod field;
pub mod freemod;
pub mod groebner;
pub mod invariants;
pub mod module;
pub mod monomial;
pub mod poly;
pub mod resolution;
pub mod ring;

pub use error::Error;
pub use field::PrimeField;
pub use module::{GradedModule, ModuleMap};
pub use ring::QuotientRing;
