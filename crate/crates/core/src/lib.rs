//! Milnor mu-bar invariants of string links up to link homotopy, the clasp
//! and double-crossing finite type theories on linking classes, and the
//! degree-3 double dating diagram census.

pub mod dd;
pub mod freeword;
pub mod linalg;
pub mod magnus;
pub mod parse;
pub mod singular;
pub mod stringlink;
