pub mod formula;
pub mod realizability;
pub mod kripke;
pub mod sheaf;
pub mod translate;
pub mod zariski;
pub mod cli;
