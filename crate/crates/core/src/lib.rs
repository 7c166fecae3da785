pub mod arith;
pub mod graded_ring;
pub mod bernoulli;
pub mod char_classes;
pub mod bounds;
pub mod verify;
