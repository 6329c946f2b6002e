pub mod balancing;
pub mod cli;
pub mod generate;
pub mod io;
pub mod maxatsp;
pub mod maxsat;
pub mod pareto;
