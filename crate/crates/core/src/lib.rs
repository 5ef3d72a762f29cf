pub mod alphabet;
pub mod circle_partition;
pub mod cli;
pub mod josephus;
pub mod block_automata;
pub mod grammar;
pub mod search;
