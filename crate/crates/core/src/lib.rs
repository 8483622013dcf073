//! Exact character theory for affine groups GV built from matrix generators
//! over a prime field: group construction, exact character tables, and a
//! battery of verified identities and counting bounds.

pub mod chartab;
pub mod cli;
pub mod gfpalg;
pub mod groups;
pub mod oracle;
pub mod paperq;
