pub mod board;
pub mod patterns;
pub mod lemma;
pub mod strategy;
pub mod hyper;
pub mod session;
pub mod view;
