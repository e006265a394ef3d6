//! Shared setup for the benchmarks.

use endohecke::endoscopy::Endoscopy;
use endohecke::fixtures;
use std::sync::Arc;

pub fn sp4_half() -> Endoscopy {
    Endoscopy::new(Arc::new(fixtures::sp4()), "1/2,1/2".parse().expect("character")).expect("fixture")
}
