pub mod catalog;
pub mod chevalley;
pub mod cli;
pub mod classify;
pub mod exactq;
pub mod grading;
pub mod involutions;
pub mod rootsys;
pub mod so8matrix;
