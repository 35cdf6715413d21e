pub mod aop;
pub mod braid;
pub mod completion;
pub mod corpus;
pub mod coxeter;
pub mod functor;
pub mod graphs;
pub mod groupoid;
pub mod order;
pub mod proto;
pub mod qring;
pub mod ring;
pub mod squares;
