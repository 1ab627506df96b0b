//! A call-by-value λ-calculus with effect operations, evaluated into a
//! chosen monad.

mod eval;
mod parse;
mod prelude;
pub mod random;
mod term;

pub use eval::{eval, eval_diagram, eval_monadic_term, Fuel};
pub use parse::parse;
pub use prelude::Prelude;
pub use term::Term;
