//! Seeded random generators: configuration-model multigraphs for the girth
//! bound statistics, and random filling weighted multi-arc instances for the
//! short-curve pipeline.

use super::arcs::{ArcSystem, WeightedMultiArc};
use super::graphs::MultiGraph;
use crate::Result;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Configuration-model multigraph on n vertices with average degree at least
/// min_avg (given as a rational num/den). Deterministic in the seed.
pub fn random_graph_with_min_avg_degree(
    n: usize,
    avg_num: u64,
    avg_den: u64,
    seed: u64,
) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Degrees in {2, 3, 4} biased so the average clears the target.
    let mut degrees: Vec<usize> = (0..n)
        .map(|_| match rng.gen_range(0..4) {
            0 => 2,
            1 | 2 => 3,
            _ => 4,
        })
        .collect();
    // Ensure the average and parity.
    let target = |degs: &[usize]| 2 * degs.iter().sum::<usize>() as u64 * avg_den;
    let mut i = 0;
    while target(&degrees) < 2 * avg_num * n as u64 {
        degrees[i % n] += 1;
        i += 1;
    }
    if degrees.iter().sum::<usize>() % 2 == 1 {
        degrees[0] += 1;
    }
    // Stub matching.
    let mut stubs: Vec<usize> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat(v).take(d))
        .collect();
    stubs.shuffle(&mut rng);
    let edges = stubs
        .chunks_exact(2)
        .map(|c| (c[0], c[1]))
        .collect::<Vec<_>>();
    MultiGraph::new(n, edges)
}

/// A generated short-curve instance: the polygonal arc system together with
/// its weights and the declared boundary budget.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArcInstance {
    pub system: ArcSystem,
    pub arcs: WeightedMultiArc,
    pub k: u64,
    pub seed: u64,
}

/// Build a random filling weighted multi-arc on a cut surface with
/// |chi| = chi_abs: chi_abs disk pieces of degree at least 3 glued along
/// 2 * chi_abs arcs (so the dual graph has average degree 4 and the arc
/// count sits inside the window [|chi|, 3 |chi|]). Weights are 1 except for
/// a sprinkle of heavier arcs, at most sqrt(chi_abs)/2 of them; the declared
/// boundary budget is 4k.
pub fn random_filling_instance(chi_abs: u64, k: u64, seed: u64) -> Result<ArcInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pieces = chi_abs as usize;
    let arcs = 2 * pieces;
    loop {
        // Degree-4 stub matching over pieces, reshuffled until connected.
        let mut stubs: Vec<usize> = (0..pieces).flat_map(|p| [p, p, p, p]).collect();
        stubs.shuffle(&mut rng);
        let mut polygon_arcs: Vec<Vec<usize>> = vec![Vec::new(); pieces];
        for (arc, c) in stubs.chunks_exact(2).enumerate() {
            polygon_arcs[c[0]].push(arc);
            polygon_arcs[c[1]].push(arc);
        }
        for sides in polygon_arcs.iter_mut() {
            sides.shuffle(&mut rng);
        }
        let system = ArcSystem::from_polygons(polygon_arcs, arcs)?;
        if !system.dual_graph().is_connected() {
            continue;
        }
        debug_assert_eq!(system.abs_chi(), chi_abs);

        let mut weights = vec![1u64; arcs];
        let isqrt = (chi_abs as f64).sqrt() as u64;
        let heavy_count = rng.gen_range(1..=(isqrt / 2).max(2));
        for _ in 0..heavy_count {
            let a = rng.gen_range(0..arcs);
            weights[a] = rng.gen_range(2..=4);
        }
        let multi = WeightedMultiArc::new(weights, 4 * k)?;
        debug_assert!(multi.filling_window_ok(&system));
        return Ok(ArcInstance {
            system,
            arcs: multi,
            k,
            seed,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::girth::{girth, girth_bound_audit, short_curve, verify_short_curve, GirthBoundReport};

    #[test]
    fn graph_generator_hits_average_degree() {
        for seed in 0..20 {
            let n = 64 + (seed as usize * 37) % 512;
            let g = random_graph_with_min_avg_degree(n, 5, 2, seed);
            assert_eq!(g.n, n);
            assert!(g.average_degree_at_least(5, 2));
        }
    }

    #[test]
    fn graph_generator_deterministic() {
        let a = random_graph_with_min_avg_degree(128, 5, 2, 7);
        let b = random_graph_with_min_avg_degree(128, 5, 2, 7);
        assert_eq!(a.edges, b.edges);
    }

    #[test]
    fn bound_holds_on_sampled_graphs() {
        for seed in 0..50 {
            let n = 64 + (seed as usize * 131) % 1024;
            let g = random_graph_with_min_avg_degree(n, 5, 2, seed);
            match girth_bound_audit(&g) {
                GirthBoundReport::Checked { bound_holds, .. } => assert!(bound_holds),
                GirthBoundReport::NotApplicable { .. } => {
                    panic!("generator must exceed average degree 2.5")
                }
            }
        }
    }

    #[test]
    fn instance_generator_shape() {
        let inst = random_filling_instance(540, 16, 42).unwrap();
        assert_eq!(inst.system.abs_chi(), 540);
        assert!(inst.system.is_filling());
        assert!(inst.arcs.filling_window_ok(&inst.system));
        assert_eq!(inst.arcs.boundary_hits, 64);
        assert!(inst.system.dual_graph().is_connected());
        // Dual graph is 4-regular, so girth exists.
        assert!(girth(&inst.system.dual_graph()).value().is_some());
    }

    #[test]
    fn pipeline_runs_on_one_instance() {
        let inst = random_filling_instance(520, 16, 1).unwrap();
        let out = short_curve(&inst.system, &inst.arcs, inst.k).unwrap();
        assert!(out.weighted_intersection <= inst.k);
        assert!(out.cycle_bound_holds);
        verify_short_curve(&inst.system, &inst.arcs, &out, inst.k).unwrap();
    }
}
