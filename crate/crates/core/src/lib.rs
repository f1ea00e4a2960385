pub mod frobenius;
pub mod intonation;
pub mod lexicon;
pub mod pregroup;
pub mod tensor;
pub mod truth;
pub mod selfcheck;
pub mod cli;
