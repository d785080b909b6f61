pub mod cli;
pub mod codec;
pub mod prf;
pub mod kleene;
pub mod np;
pub mod tau;
pub mod tm;
