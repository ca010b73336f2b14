//! Divisor/curve intersection numbers for the edges of a Bott-tower
//! moment polytope, the divisor rewriting in the block-0 basis, and the
//! symplectic-area / first-Chern pairings.
//!
//! The curve class of an edge comes from the wall relation among facet
//! normals, which is deliberately independent of the divisor rewriting so
//! the two can cross-check each other.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::bott::{FacetLabel, GbmPolytope};
use crate::lattice::{solve_square, to_rat_vec, Int, IntVec, Rational};
use crate::{Error, Result};

/// An edge given by two adjacent simple vertices: they share n-1 active
/// facets and each contributes one more.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRef {
    pub tail: usize,
    pub head: usize,
    pub common_facets: Vec<usize>,
    pub tail_facet: usize,
    pub head_facet: usize,
}

impl EdgeRef {
    /// Validates that vertices `tail` and `head` of the polytope span an
    /// edge and records the facet bookkeeping.
    pub fn new(p: &GbmPolytope, tail: usize, head: usize) -> Result<EdgeRef> {
        let verts = p.base().vertices();
        let n = p.base().dim();
        if tail >= verts.len() || head >= verts.len() || tail == head {
            return Err(Error::NotAnEdge(format!(
                "vertex indices {tail}, {head} out of range or equal"
            )));
        }
        let a = &verts[tail].active_facets;
        let b = &verts[head].active_facets;
        if a.len() != n || b.len() != n {
            return Err(Error::NotAnEdge("non-simple vertex".into()));
        }
        let common: Vec<usize> = a.intersection(b).copied().collect();
        if common.len() != n - 1 {
            return Err(Error::NotAnEdge(format!(
                "vertices share {} facets, expected {}",
                common.len(),
                n - 1
            )));
        }
        let tail_facet = *a.difference(b).next().expect("one extra facet");
        let head_facet = *b.difference(a).next().expect("one extra facet");
        Ok(EdgeRef {
            tail,
            head,
            common_facets: common,
            tail_facet,
            head_facet,
        })
    }
}

/// Intersection numbers of a toric curve with every toric divisor, in
/// facet order. Always an exact solution of the wall relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub pairings: IntVec,
}

/// The curve class of an edge: the two completing facets meet the curve
/// once, the common facets with the integer coefficients that close the
/// wall relation, every other divisor not at all.
pub fn edge_curve_class(p: &GbmPolytope, e: &EdgeRef) -> Result<CurveClass> {
    let n = p.base().dim();
    let normals = p.base().normals();
    // Solve eta_head = sum c_j eta_common + t eta_tail; smoothness forces
    // t = -1, giving eta_tail + eta_head - sum c_j eta_common = 0.
    let mut cols: Vec<&IntVec> = e.common_facets.iter().map(|&i| &normals[i]).collect();
    cols.push(&normals[e.tail_facet]);
    let mat: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            cols.iter()
                .map(|c| Rational::from_integer(c[r].clone()))
                .collect()
        })
        .collect();
    let rhs = to_rat_vec(&normals[e.head_facet]);
    let x = solve_square(&mat, &rhs)
        .ok_or_else(|| Error::NotAnEdge("active normals are degenerate".into()))?;
    if x[n - 1] != -Rational::one() {
        return Err(Error::NotAnEdge(
            "wall relation has no unit coefficients (vertex not smooth)".into(),
        ));
    }
    let mut pairings = vec![Int::zero(); p.base().facet_count()];
    pairings[e.tail_facet] = Int::one();
    pairings[e.head_facet] = Int::one();
    for (j, &facet) in e.common_facets.iter().enumerate() {
        let c = -&x[j];
        if !c.is_integer() {
            return Err(Error::NotAnEdge("wall relation is not integral".into()));
        }
        pairings[facet] = c.to_integer();
    }
    Ok(CurveClass { pairings })
}

/// Pairs the curve class with the symplectic class and the anticanonical
/// class: `omega = sum C_i lambda_i` and `c_1 = sum C_i`.
pub fn pair_omega_c1(p: &GbmPolytope, c: &CurveClass) -> (Rational, Int) {
    let omega = c
        .pairings
        .iter()
        .zip(p.offsets())
        .map(|(a, l)| Rational::from_integer(a.clone()) * l)
        .sum();
    let c1 = c.pairings.iter().cloned().sum();
    (omega, c1)
}

/// Coefficients expressing the divisor (p, q) over the basis consisting of
/// (p, s_p) and the twisted divisors (j, 0) for j < p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorRewrite {
    pub block: usize,
    pub q: usize,
    pub s_p: usize,
    /// One integer per block j < block.
    pub corrections: Vec<Int>,
}

impl DivisorRewrite {
    /// The rewrite as a vector over all facets: the unit at (block, s_p)
    /// plus the corrections at the (j, 0) facets.
    pub fn facet_vector(&self, p: &GbmPolytope) -> IntVec {
        let tower = p.tower();
        let mut v = vec![Int::zero(); tower.facet_count()];
        v[tower.facet_index(FacetLabel {
            block: self.block,
            k: self.s_p,
        })] += Int::one();
        for (j, c) in self.corrections.iter().enumerate() {
            v[tower.facet_index(FacetLabel { block: j, k: 0 })] += c;
        }
        v
    }

    /// Pairs a curve class against the rewritten divisor.
    pub fn pair(&self, p: &GbmPolytope, class: &CurveClass) -> Int {
        self.facet_vector(p)
            .iter()
            .zip(&class.pairings)
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// Rewrites the divisor (block, q) in the basis picked out by the vertex
/// sequence `s`: the coefficient of (block, s_p) is one and the twisted
/// divisors of the earlier blocks absorb the twist difference, with the
/// convention that the 0-th twist entry vanishes.
pub fn divisor_rewrite(
    p: &GbmPolytope,
    block: usize,
    q: usize,
    s: &[usize],
) -> Result<DivisorRewrite> {
    let tower = p.tower();
    if block >= tower.stages() {
        return Err(Error::InvalidTower(format!(
            "block {} out of range",
            block + 1
        )));
    }
    if q > tower.fiber_dim(block) {
        return Err(Error::InvalidTower(format!(
            "facet index {q} out of range for block {}",
            block + 1
        )));
    }
    if s.len() != tower.stages() {
        return Err(Error::InvalidTower(
            "vertex sequence length mismatch".into(),
        ));
    }
    for (b, &sb) in s.iter().enumerate() {
        if sb > tower.fiber_dim(b) {
            return Err(Error::InvalidTower(format!(
                "sequence entry {sb} out of range for block {}",
                b + 1
            )));
        }
    }
    let s_p = s[block];
    let twist_entry = |i: usize, j: usize| -> Int {
        if i == 0 {
            Int::zero()
        } else {
            tower.twist(block, j)[i - 1].clone()
        }
    };
    let corrections: Vec<Int> = (0..block)
        .map(|j| twist_entry(s_p, j) - twist_entry(q, j))
        .collect();
    Ok(DivisorRewrite {
        block,
        q,
        s_p,
        corrections,
    })
}

/// One edge checked by [`check_block_intersections`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCheck {
    pub sequence: Vec<usize>,
    pub k: usize,
    pub k_prime: usize,
    pub class: CurveClass,
    pub omega: Rational,
    pub c1: Int,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockIntersectionReport {
    pub block: usize,
    pub expected_omega: Rational,
    pub expected_c1: Int,
    pub edges: Vec<EdgeCheck>,
    pub pass: bool,
}

impl BlockIntersectionReport {
    pub fn counterexample(&self) -> Option<&EdgeCheck> {
        self.edges.iter().find(|e| !e.ok)
    }
}

/// For a block with cancelling rays, every edge that moves only inside
/// that block must meet exactly the block's divisors (once each), have
/// symplectic area lambda(block) and first Chern number n_block + 1.
pub fn check_block_intersections(p: &GbmPolytope, block: usize) -> Result<BlockIntersectionReport> {
    let tower = p.tower();
    if block >= tower.stages() {
        return Err(Error::InvalidTower(format!(
            "block {} out of range",
            block + 1
        )));
    }
    if !tower.is_zero_block(block) {
        return Err(Error::BlockNotClosed(block + 1));
    }

    let expected_omega = p.offset_block_sum(block);
    let expected_c1 = Int::from(tower.fiber_dim(block) as i64 + 1);

    // Locate vertices by their active facet sets.
    let vertex_by_cone: BTreeMap<BTreeSet<usize>, usize> = p
        .base()
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.active_facets.clone(), i))
        .collect();
    let vertex_of = |s: &[usize]| -> usize {
        let cone: BTreeSet<usize> = tower
            .cone_of_sequence(s)
            .into_iter()
            .map(|l| tower.facet_index(l))
            .collect();
        *vertex_by_cone
            .get(&cone)
            .expect("validated vertex/cone bijection")
    };

    let mut expected_pairings = vec![Int::zero(); tower.facet_count()];
    for k in 0..=tower.fiber_dim(block) {
        expected_pairings[tower.facet_index(FacetLabel { block, k })] = Int::one();
    }

    let nb = tower.fiber_dim(block);
    let mut edges = Vec::new();
    let mut pass = true;
    for s in tower.sequences() {
        if s[block] != 0 {
            continue; // one representative per transverse position
        }
        for k in 0..=nb {
            for k_prime in k + 1..=nb {
                let mut s_tail = s.clone();
                s_tail[block] = k;
                let mut s_head = s.clone();
                s_head[block] = k_prime;
                let e = EdgeRef::new(p, vertex_of(&s_tail), vertex_of(&s_head))?;
                let class = edge_curve_class(p, &e)?;
                let (omega, c1) = pair_omega_c1(p, &class);
                let ok = class.pairings == expected_pairings
                    && omega == expected_omega
                    && c1 == expected_c1;
                pass &= ok;
                edges.push(EdgeCheck {
                    sequence: s_tail,
                    k,
                    k_prime,
                    class,
                    omega,
                    c1,
                    ok,
                });
            }
        }
    }

    Ok(BlockIntersectionReport {
        block,
        expected_omega,
        expected_c1,
        edges,
        pass,
    })
}

/// Every edge of the polytope, as vertex index pairs (tail < head), read
/// off the vertex sequences: two sequences differing in one position span
/// an edge.
pub fn all_edges(p: &GbmPolytope) -> Vec<EdgeRef> {
    let tower = p.tower();
    let vertex_by_cone: BTreeMap<BTreeSet<usize>, usize> = p
        .base()
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.active_facets.clone(), i))
        .collect();
    let vertex_of = |s: &[usize]| -> usize {
        let cone: BTreeSet<usize> = tower
            .cone_of_sequence(s)
            .into_iter()
            .map(|l| tower.facet_index(l))
            .collect();
        *vertex_by_cone
            .get(&cone)
            .expect("validated vertex/cone bijection")
    };

    let mut out = Vec::new();
    for s in tower.sequences() {
        for block in 0..tower.stages() {
            for k in s[block] + 1..=tower.fiber_dim(block) {
                let mut t = s.clone();
                t[block] = k;
                let e = EdgeRef::new(p, vertex_of(&s), vertex_of(&t))
                    .expect("sequence neighbors span edges");
                out.push(e);
            }
        }
    }
    out
}
