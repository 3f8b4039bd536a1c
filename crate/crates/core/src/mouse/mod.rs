//! Mouse agents and the consistency-set machinery they share with the
//! solver.

mod concrete;
mod consistency;
mod exhaustive;
mod phantom;

pub use concrete::{cycle_mouse, path_mouse, random_mouse, AgentError, CycleMouse, PathMouse, RandomMouse};
pub use consistency::{extract_witness, update_consistency, ConsistencySet, WitnessError};
pub use exhaustive::{
    explore_all_branches, Escape, ExploreError, ExploreLimits, ExploreReport, LeafKind, Node,
};
pub use phantom::{phantom_adversary, PhantomAdversary, PhantomMode};
