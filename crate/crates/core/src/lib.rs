pub mod cli;
pub mod family_dp;
pub mod game;
pub mod harness;
pub mod graph;
pub mod invariants;
pub mod paintability;
pub mod solver;
pub mod strategies;
