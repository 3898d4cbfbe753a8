//! Certified growth rates of sum-closed permutation classes.
//!
//! Exact-arithmetic machinery for permutation pattern containment,
//! generalised-digit expansions in non-integer bases, gap-inequality
//! certification, downset enumeration over inflated oscillations, and
//! root enclosures for class growth rates.
//!
//! Every type is an immutable value object and every operation is pure, so
//! the whole API is safe for concurrent use without coordination.

pub mod digits;
pub mod families;
pub mod growth;
pub mod oracle;
pub mod osc;
pub mod perm;
pub mod poly;
pub mod poset;
pub mod report;
