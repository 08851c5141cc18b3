//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use gfwigner::{FieldSpec, QuantumNet};

pub fn spec(n: usize) -> Arc<FieldSpec> {
    Arc::new(FieldSpec::new(n).expect("built-in polynomial"))
}

pub fn covariant_net(n: usize) -> QuantumNet {
    QuantumNet::covariant_all_plus(spec(n))
}
