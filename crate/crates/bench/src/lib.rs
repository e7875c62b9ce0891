//! Fixed inputs shared by the benchmarks.

use std::sync::Arc;

use qeag_core::rep::{derive_seed, random_module};
use qeag_core::variety::{orbit_representatives, PPoint};
use qeag_core::{FieldCtx, ModuleRep};

/// Benchmark context with its label.
pub fn contexts() -> Vec<(&'static str, Arc<FieldCtx>)> {
    [("5-2-2", (5, 2, 2)), ("7-3-2", (7, 3, 2)), ("5-2-3", (5, 2, 3)), ("11-5-2", (11, 5, 2))]
        .into_iter()
        .map(|(name, (p, ell, n))| (name, FieldCtx::new(p, ell, n).expect("valid context")))
        .collect()
}

/// The largest of the first `count` seeded random modules within `budget`.
pub fn largest_random(ctx: &Arc<FieldCtx>, count: u64, budget: usize) -> ModuleRep {
    (0..count)
        .map(|i| random_module(ctx, derive_seed(7, i), budget).expect("positive budget").1)
        .max_by_key(ModuleRep::dim)
        .expect("count is positive")
}

/// A degree-one orbit representative other than the coordinate points.
pub fn generic_point(ctx: &FieldCtx) -> PPoint {
    let reps = orbit_representatives(ctx, 1).expect("degree 1");
    reps.iter().find(|p| p.coords().iter().all(|c| !c.is_zero())).unwrap_or(&reps[0]).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        for (_, ctx) in contexts() {
            assert!(largest_random(&ctx, 4, 20).dim() <= 20);
            assert_eq!(generic_point(&ctx).degree(), 1);
        }
    }
}
