//! Cat-and-mouse pursuit on graphs with partial distance feedback.
//!
//! The cat names any vertex each round; the invisible mouse moves along an
//! edge and is caught when both stand on the same vertex. After every round
//! the cat hears a signal about its distance to the mouse.

pub mod cat;
pub mod graph;
pub mod mouse;
pub mod oracle;
pub mod play;
pub mod rules;
pub mod solver;
pub mod suites;
