//! Shared fixtures (the worked examples used across the suites) and the
//! seeded random tower corpus.
#![allow(dead_code)] // each test binary uses its own slice of the fixtures

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use toric_width::bott::{BottTower, GbmPolytope};
use toric_width::bounds::CrossPolytopeSpec;
use toric_width::lattice::{rat, rat_vec, ratio, Rational};
use toric_width::polytope::LatticePolytope;

/// Hirzebruch surface with offsets (2, 1).
pub fn hirzebruch() -> GbmPolytope {
    let t = BottTower::from_i64(vec![1, 1], &[((2, 1), vec![-1])]).unwrap();
    GbmPolytope::build_standard(t, vec![rat(2), rat(1)]).unwrap()
}

/// The 6-dimensional five-stage tower with the worked certificate.
pub fn b5_tower() -> BottTower {
    BottTower::from_i64(
        vec![1, 1, 1, 1, 2],
        &[
            ((2, 1), vec![-3]),
            ((3, 2), vec![1]),
            ((4, 2), vec![-2]),
            ((5, 2), vec![-1, 0]),
            ((4, 3), vec![-4]),
            ((5, 4), vec![-2, 2]),
        ],
    )
    .unwrap()
}

pub fn b5_polytope() -> GbmPolytope {
    GbmPolytope::build_standard(b5_tower(), vec![rat(200), rat(12), rat(21), rat(3), rat(1)])
        .unwrap()
}

/// The resolved weighted projective space: a two-stage tower over P^1
/// with P^3 fibers, offsets in the non-standard chart used to present it.
pub fn ex_lu_tower_polytope() -> GbmPolytope {
    let t = BottTower::from_i64(vec![1, 3], &[((2, 1), vec![-2, -2, -2])]).unwrap();
    // Facet order (1,0),(1,1),(2,0),(2,1),(2,2),(2,3).
    GbmPolytope::build(t, vec![rat(1), rat(0), rat(0), rat(1), rat(0), rat(0)]).unwrap()
}

/// The same example as a raw half-space system, in its published facet
/// order.
pub fn ex_lu_raw_polytope() -> LatticePolytope {
    LatticePolytope::from_i64(
        &[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![-1, -2, -2, -2],
            vec![0, -1, -1, -1],
        ],
        &[rat(0), rat(1), rat(0), rat(0), rat(1), rat(0)],
    )
    .unwrap()
}

/// The 9-facet surface polygon with area 141/2.
pub fn toric_surface_polytope() -> LatticePolytope {
    LatticePolytope::from_i64(
        &[
            vec![1, 0],
            vec![1, 1],
            vec![0, 1],
            vec![-1, 1],
            vec![-2, 1],
            vec![-1, 0],
            vec![0, -1],
            vec![1, -2],
            vec![1, -1],
        ],
        &[
            rat(6),
            rat(7),
            rat(6),
            rat(6),
            rat(7),
            rat(6),
            rat(6),
            rat(7),
            rat(6),
        ],
    )
    .unwrap()
}

/// The monotone Fano bundle over P^1 with fiber a three-point blowup of
/// the plane.
pub fn fano_bundle_polytope() -> LatticePolytope {
    LatticePolytope::from_i64(
        &[
            vec![1, 0, 1],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![0, -1, 1],
            vec![0, -1, 0],
            vec![0, 0, -1],
            vec![0, 1, -1],
        ],
        &vec![rat(1); 8],
    )
    .unwrap()
}

/// The distorted cross-polytope of length 2 centered at (-1, 0, 0).
pub fn fano_bundle_diamond() -> CrossPolytopeSpec {
    CrossPolytopeSpec {
        center: rat_vec(&[-1, 0, 0]),
        segments: vec![
            (rat_vec(&[-1, 0, 0]), rat_vec(&[1, 0, 0])),
            (rat_vec(&[-1, -1, 0]), rat_vec(&[-1, 1, 0])),
            (rat_vec(&[-1, 0, -1]), rat_vec(&[-1, 0, 1])),
        ],
        rho: rat(2),
    }
}

/// Deterministic corpus of valid standard-form tower polytopes:
/// up to 5 stages, fibers of dimension up to 3, twist entries up to 3 in
/// absolute value, total dimension capped at the desk scale of 8.
pub fn random_corpus(seed: u64, count: usize) -> Vec<GbmPolytope> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        assert!(
            attempts < count * 400,
            "corpus generation stalled at {} of {count}",
            out.len()
        );
        if let Some(p) = random_instance(&mut rng) {
            out.push(p);
        }
    }
    out
}

fn random_instance(rng: &mut StdRng) -> Option<GbmPolytope> {
    let m = rng.gen_range(1..=5usize);
    let dims: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=3usize)).collect();
    if dims.iter().sum::<usize>() > 8 {
        return None;
    }
    let mut twists = Vec::new();
    for j in 2..=m {
        for l in 1..j {
            let vec: Vec<i64> = (0..dims[j - 1]).map(|_| rng.gen_range(-3..=3i64)).collect();
            if vec.iter().any(|&x| x != 0) {
                twists.push(((j, l), vec));
            }
        }
    }
    let tower = BottTower::from_i64(dims, &twists).ok()?;

    // Offsets are drawn with a decay factor that eventually dominates the
    // twist growth, so a valid choice is always found.
    for attempt in 0..24u32 {
        let growth = 4 + 3 * i64::from(attempt);
        let lambda: Vec<Rational> = (0..m)
            .map(|block| {
                let r = ratio(rng.gen_range(2..=12i64), rng.gen_range(1..=2i64));
                let mut scale = rat(1);
                for _ in 0..(m - 1 - block) {
                    scale *= rat(growth);
                }
                r * scale
            })
            .collect();
        if let Ok(p) = GbmPolytope::build_standard(tower.clone(), lambda) {
            return Some(p);
        }
    }
    None
}

/// The missing index of each block in a vertex's active facet set, i.e.
/// the vertex sequence the maximal-cone correspondence attaches to it.
pub fn sequence_of_vertex(p: &GbmPolytope, vertex_index: usize) -> Vec<usize> {
    let tower = p.tower();
    let active = &p.base().vertices()[vertex_index].active_facets;
    (0..tower.stages())
        .map(|block| {
            (0..=tower.fiber_dim(block))
                .find(|&k| {
                    !active.contains(&tower.facet_index(toric_width::bott::FacetLabel { block, k }))
                })
                .expect("exactly one facet per block is inactive at a vertex")
        })
        .collect()
}
