pub mod category;
pub mod compose;
pub mod derive;
pub mod harness;
pub mod hol;
pub mod lexicon;
pub mod lower;
pub mod prove;
