//! Half-space lattice polytopes: containment, vertex enumeration, the
//! Delzant test, exact volume and the volume-based width bound.
//!
//! Vertex enumeration solves every n-subset of the defining equalities,
//! which is O(C(N, n)) — fine at desk scale (n <= 8, N <= 24) and the
//! documented scaling limit of this module.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::lattice::{
    self, det_rat, dot_rat, dot_rat_int, int, is_zero_int, kernel_lattice_basis,
    primitive_direction, primitive_part, rank_rat, solve_square, sub_rat, to_rat_vec, IntMatrix,
    IntVec, RatVec, Rational,
};
use crate::{Error, Result};

/// A bounded full-dimensional polytope `{x : <x, eta_i> <= kappa_i}` with
/// primitive integer normals and no redundant inequality. All of that is
/// enforced at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    normals: Vec<IntVec>,
    offsets: RatVec,
    dim: usize,
    vertices: Vec<Vertex>,
}

/// A vertex together with the set of facets tight at it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub point: RatVec,
    pub active_facets: BTreeSet<usize>,
}

/// The volume-based width bound: any width candidate `w` must satisfy
/// `w^n <= n! vol(P)` exactly. The decimal root is display-only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeBound {
    pub dim: usize,
    pub n_factorial_volume: Rational,
    /// `(n! vol)^(1/n)` rounded down to `digits` decimal places.
    pub approx_root: String,
    pub digits: u32,
}

impl VolumeBound {
    /// Exact test: can a width of `w` pass the ball-volume obstruction?
    pub fn admits_width(&self, w: &Rational) -> bool {
        if w.is_negative() {
            return true;
        }
        let mut p = Rational::one();
        for _ in 0..self.dim {
            p *= w;
        }
        p <= self.n_factorial_volume
    }
}

impl LatticePolytope {
    /// Builds and fully validates a polytope from its half-space data.
    pub fn new(normals: Vec<IntVec>, offsets: RatVec) -> Result<Self> {
        if normals.is_empty() {
            return Err(Error::InvalidPolytope("no inequalities".into()));
        }
        let dim = normals[0].len();
        if dim == 0 {
            return Err(Error::InvalidPolytope(
                "zero-dimensional ambient space".into(),
            ));
        }
        for (i, eta) in normals.iter().enumerate() {
            if eta.len() != dim {
                return Err(Error::InvalidPolytope(format!(
                    "normal {i} has dimension {}, expected {dim}",
                    eta.len()
                )));
            }
            if is_zero_int(eta) {
                return Err(Error::InvalidPolytope(format!("normal {i} is zero")));
            }
            if primitive_part(eta)? != *eta {
                return Err(Error::InvalidPolytope(format!(
                    "normal {i} is not primitive"
                )));
            }
        }
        if offsets.len() != normals.len() {
            return Err(Error::InvalidPolytope(format!(
                "{} normals but {} offsets",
                normals.len(),
                offsets.len()
            )));
        }

        let vertices = enumerate_vertices(&normals, &offsets, dim);
        if vertices.is_empty() {
            return Err(Error::InvalidPolytope("empty or vertex-free".into()));
        }
        if let Some(ray) = recession_ray(&normals, dim) {
            return Err(Error::InvalidPolytope(format!(
                "unbounded along direction {ray:?}"
            )));
        }
        let points: Vec<RatVec> = vertices.iter().map(|v| v.point.clone()).collect();
        if affine_rank(&points) != dim {
            return Err(Error::InvalidPolytope("not full-dimensional".into()));
        }
        // A constraint earns its place only by supporting a facet.
        for i in 0..normals.len() {
            let tight: Vec<RatVec> = vertices
                .iter()
                .filter(|v| v.active_facets.contains(&i))
                .map(|v| v.point.clone())
                .collect();
            if tight.is_empty() || affine_rank(&tight) != dim - 1 {
                return Err(Error::RedundantInequality(i));
            }
        }

        Ok(LatticePolytope {
            normals,
            offsets,
            dim,
            vertices,
        })
    }

    pub fn from_i64(normals: &[Vec<i64>], offsets: &[Rational]) -> Result<Self> {
        Self::new(
            normals.iter().map(|r| lattice::int_vec(r)).collect(),
            offsets.to_vec(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.normals.len()
    }

    pub fn normals(&self) -> &[IntVec] {
        &self.normals
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    /// All vertices with their active facet sets, sorted lexicographically
    /// by coordinates.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Exact membership test.
    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self
            .normals
            .iter()
            .zip(&self.offsets)
            .all(|(eta, kappa)| dot_rat_int(x, eta) <= *kappa))
    }

    /// Primitive edge directions at a vertex, pointing into the polytope.
    /// `None` when the vertex is not simple (>= n+1 active facets give a
    /// singular system).
    pub fn edge_directions(&self, vertex: &Vertex) -> Option<Vec<IntVec>> {
        if vertex.active_facets.len() != self.dim {
            return None;
        }
        let active: Vec<usize> = vertex.active_facets.iter().copied().collect();
        let mat: Vec<RatVec> = active
            .iter()
            .map(|&i| to_rat_vec(&self.normals[i]))
            .collect();
        let mut dirs = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut rhs = vec![Rational::zero(); self.dim];
            rhs[j] = -Rational::one();
            let d = solve_square(&mat, &rhs)?;
            dirs.push(primitive_direction(&d).ok()?);
        }
        Some(dirs)
    }

    /// True iff at every vertex exactly n facets meet and the primitive
    /// edge directions form a basis of the integer lattice.
    pub fn is_delzant(&self) -> bool {
        self.vertices.iter().all(|v| {
            self.edge_directions(v)
                .map(|dirs| lattice::is_unimodular_basis(&dirs).unwrap_or(false))
                .unwrap_or(false)
        })
    }

    /// Exact Euclidean volume via a pulling triangulation of the boundary
    /// from the lexicographically smallest vertex. Deterministic.
    pub fn volume(&self) -> Rational {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let simplices = self.triangulate_face(&all, self.dim);
        let apex_free_factorial = factorial(self.dim);
        let mut total = Rational::zero();
        for simplex in simplices {
            let base = &self.vertices[simplex[0]].point;
            let mat: Vec<RatVec> = simplex[1..]
                .iter()
                .map(|&vi| sub_rat(&self.vertices[vi].point, base))
                .collect();
            total += det_rat(&mat).abs();
        }
        total / Rational::from_integer(apex_free_factorial)
    }

    /// Triangulates the face spanned by `verts` (indices into
    /// `self.vertices`, sorted) of affine dimension `d`; returns simplices
    /// as (d+1)-element vertex index lists.
    fn triangulate_face(&self, verts: &[usize], d: usize) -> Vec<Vec<usize>> {
        if d == 0 {
            return vec![vec![verts[0]]];
        }
        let apex = verts[0];
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for facet in 0..self.normals.len() {
            let tight: Vec<usize> = verts
                .iter()
                .copied()
                .filter(|&vi| self.vertices[vi].active_facets.contains(&facet))
                .collect();
            if tight.len() < d || tight.len() == verts.len() || tight.contains(&apex) {
                continue;
            }
            let pts: Vec<RatVec> = tight
                .iter()
                .map(|&vi| self.vertices[vi].point.clone())
                .collect();
            if affine_rank(&pts) != d - 1 {
                continue;
            }
            if !seen.insert(tight.clone()) {
                continue;
            }
            for mut simplex in self.triangulate_face(&tight, d - 1) {
                simplex.push(apex);
                out.push(simplex);
            }
        }
        out
    }

    /// Same normals, offsets shifted by `<t, eta_i>`; geometrically the
    /// translate `P + t`.
    pub fn translate(&self, t: &[Rational]) -> Result<LatticePolytope> {
        if t.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: t.len(),
            });
        }
        let offsets: RatVec = self
            .normals
            .iter()
            .zip(&self.offsets)
            .map(|(eta, kappa)| kappa + dot_rat_int(t, eta))
            .collect();
        LatticePolytope::new(self.normals.clone(), offsets)
    }

    /// The ball-volume obstruction report, with a 4-digit decimal root for
    /// human consumption.
    pub fn volume_upper_bound(&self) -> VolumeBound {
        self.volume_upper_bound_digits(4)
    }

    pub fn volume_upper_bound_digits(&self, digits: u32) -> VolumeBound {
        let nfv = self.volume() * Rational::from_integer(factorial(self.dim));
        let approx = lattice::decimal_nth_root(&nfv, self.dim as u32, digits);
        VolumeBound {
            dim: self.dim,
            n_factorial_volume: nfv,
            approx_root: approx,
            digits,
        }
    }
}

fn factorial(n: usize) -> lattice::Int {
    let mut f = int(1);
    for k in 2..=n {
        f *= int(k as i64);
    }
    f
}

/// Affine rank of a point set (dimension of its affine hull).
pub fn affine_rank(points: &[RatVec]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<RatVec> = points[1..].iter().map(|p| sub_rat(p, base)).collect();
    rank_rat(&diffs)
}

fn enumerate_vertices(normals: &[IntVec], offsets: &RatVec, dim: usize) -> Vec<Vertex> {
    let n_facets = normals.len();
    if n_facets < dim {
        return Vec::new();
    }
    let rat_normals: Vec<RatVec> = normals.iter().map(|v| to_rat_vec(v)).collect();
    let mut found: BTreeMap<RatVec, BTreeSet<usize>> = BTreeMap::new();

    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let mat: Vec<RatVec> = subset.iter().map(|&i| rat_normals[i].clone()).collect();
        let rhs: RatVec = subset.iter().map(|&i| offsets[i].clone()).collect();
        if let Some(x) = solve_square(&mat, &rhs) {
            let feasible = normals
                .iter()
                .zip(offsets)
                .all(|(eta, kappa)| dot_rat_int(&x, eta) <= *kappa);
            if feasible && !found.contains_key(&x) {
                let active: BTreeSet<usize> = normals
                    .iter()
                    .zip(offsets)
                    .enumerate()
                    .filter(|(_, (eta, kappa))| dot_rat_int(&x, eta) == **kappa)
                    .map(|(i, _)| i)
                    .collect();
                found.insert(x, active);
            }
        }
        if !next_combination(&mut subset, n_facets) {
            break;
        }
    }

    found
        .into_iter()
        .map(|(point, active_facets)| Vertex {
            point,
            active_facets,
        })
        .collect()
}

fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - (k - i) {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A nonzero direction in the recession cone `{x : <x, eta_i> <= 0}`, or
/// `None` when the cone is trivial (the polytope is bounded). Extreme rays
/// of a pointed cone lie on n-1 independent tight constraints, so the
/// subset search below is exhaustive; lineality is caught by the kernel.
fn recession_ray(normals: &[IntVec], dim: usize) -> Option<IntVec> {
    let m = IntMatrix::from_rows(normals.to_vec());
    if let Some(v) = kernel_lattice_basis(&m).into_iter().next() {
        return Some(v);
    }
    let n_facets = normals.len();
    if dim == 0 {
        return None;
    }
    let k = dim - 1;
    if k == 0 {
        // 1-dimensional: test both axis directions.
        for cand in [vec![int(1)], vec![int(-1)]] {
            if normals
                .iter()
                .all(|eta| !dot_rat_int(&to_rat_vec(&cand), eta).is_positive())
            {
                return Some(cand);
            }
        }
        return None;
    }
    if n_facets < k {
        return None;
    }
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let rows: Vec<IntVec> = subset.iter().map(|&i| normals[i].clone()).collect();
        let kern = kernel_lattice_basis(&IntMatrix::from_rows(rows));
        if kern.len() == 1 {
            let d = &kern[0];
            let rd = to_rat_vec(d);
            let neg: RatVec = rd.iter().map(|x| -x).collect();
            for cand in [rd, neg] {
                if normals
                    .iter()
                    .all(|eta| !dot_rat(&cand, &to_rat_vec(eta)).is_positive())
                {
                    return primitive_direction(&cand).ok();
                }
            }
        }
        if !next_combination(&mut subset, n_facets) {
            break;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{add_rat, rat, rat_vec, ratio};

    /// Hirzebruch-surface moment polygon with offsets (2, 1):
    /// x1 <= 0, x2 <= 0, -x1-x2 <= 2, -x2 <= 1.
    fn hirzebruch() -> LatticePolytope {
        LatticePolytope::from_i64(
            &[vec![-1, -1], vec![1, 0], vec![0, -1], vec![0, 1]],
            &[rat(2), rat(0), rat(1), rat(0)],
        )
        .unwrap()
    }

    fn unit_square() -> LatticePolytope {
        LatticePolytope::from_i64(
            &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            &[rat(1), rat(0), rat(1), rat(0)],
        )
        .unwrap()
    }

    #[test]
    fn contains_examples() {
        let p = hirzebruch();
        assert!(p.contains(&rat_vec(&[-1, -1])).unwrap());
        assert!(!p.contains(&rat_vec(&[1, 0])).unwrap());
        for v in p.vertices() {
            assert!(p.contains(&v.point).unwrap());
        }
        assert!(p.contains(&rat_vec(&[0, 0, 0])).is_err());
    }

    #[test]
    fn vertices_of_hirzebruch() {
        let p = hirzebruch();
        let pts: Vec<RatVec> = p.vertices().iter().map(|v| v.point.clone()).collect();
        let expected = vec![
            rat_vec(&[-2, 0]),
            rat_vec(&[-1, -1]),
            rat_vec(&[0, -1]),
            rat_vec(&[0, 0]),
        ];
        assert_eq!(pts, expected);
        for v in p.vertices() {
            assert_eq!(v.active_facets.len(), 2);
            for &i in &v.active_facets {
                assert_eq!(
                    dot_rat_int(&v.point, &p.normals()[i]),
                    p.offsets()[i].clone()
                );
            }
        }
    }

    #[test]
    fn vertices_of_square() {
        assert_eq!(unit_square().vertices().len(), 4);
    }

    #[test]
    fn delzant_examples() {
        assert!(hirzebruch().is_delzant());
        assert!(unit_square().is_delzant());
        // conv{(0,0),(2,0),(0,1)}: the edge basis at (0,1) has determinant 2.
        let tri = LatticePolytope::from_i64(
            &[vec![-1, 0], vec![0, -1], vec![1, 2]],
            &[rat(0), rat(0), rat(2)],
        )
        .unwrap();
        assert!(!tri.is_delzant());
    }

    #[test]
    fn volume_examples() {
        assert_eq!(unit_square().volume(), rat(1));
        // Shoelace on (0,0), (0,-1), (-1,-1), (-2,0) gives 3/2.
        assert_eq!(hirzebruch().volume(), ratio(3, 2));
        let simplex = LatticePolytope::from_i64(
            &[vec![-1, 0], vec![0, -1], vec![1, 1]],
            &[rat(0), rat(0), rat(2)],
        )
        .unwrap();
        assert_eq!(simplex.volume(), rat(2));
    }

    #[test]
    fn translate_examples() {
        let p = hirzebruch();
        let same = p.translate(&rat_vec(&[0, 0])).unwrap();
        assert_eq!(p, same);

        let t = rat_vec(&[-1, 0]);
        let shifted = p.translate(&t).unwrap();
        assert_eq!(shifted.offsets()[1], rat(-1)); // eta = (1,0)
        let shifted_pts: Vec<RatVec> = shifted.vertices().iter().map(|v| v.point.clone()).collect();
        let mut expected: Vec<RatVec> =
            p.vertices().iter().map(|v| add_rat(&v.point, &t)).collect();
        expected.sort();
        assert_eq!(shifted_pts, expected);
        assert_eq!(shifted.volume(), p.volume());
    }

    #[test]
    fn volume_bound_examples() {
        let square = unit_square().volume_upper_bound();
        assert_eq!(square.n_factorial_volume, rat(2));
        assert_eq!(square.approx_root, "1.4142");
        assert!(square.admits_width(&rat(1)));
        assert!(!square.admits_width(&rat(2)));

        let simplex = LatticePolytope::from_i64(
            &[vec![-1, 0], vec![0, -1], vec![1, 1]],
            &[rat(0), rat(0), rat(2)],
        )
        .unwrap();
        let b = simplex.volume_upper_bound();
        assert_eq!(b.n_factorial_volume, rat(4));
        assert_eq!(b.approx_root, "2.0000");
        assert!(b.admits_width(&rat(2)));
        assert!(!b.admits_width(&ratio(201, 100)));
    }

    #[test]
    fn rejects_bad_inputs() {
        // Empty.
        let empty = LatticePolytope::from_i64(&[vec![1], vec![-1]], &[rat(-1), rat(0)]);
        assert!(matches!(empty, Err(Error::InvalidPolytope(_))));
        // Unbounded (a quadrant has a vertex but also recession rays).
        let quadrant = LatticePolytope::from_i64(&[vec![-1, 0], vec![0, -1]], &[rat(0), rat(0)]);
        assert!(matches!(quadrant, Err(Error::InvalidPolytope(_))));
        // Tight at one vertex only is still redundant.
        let weak = LatticePolytope::from_i64(
            &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1], vec![1, 1]],
            &[rat(1), rat(0), rat(1), rat(0), rat(2)],
        );
        assert_eq!(weak, Err(Error::RedundantInequality(4)));
        // Non-primitive normal.
        let coarse = LatticePolytope::from_i64(
            &[vec![2, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            &[rat(2), rat(0), rat(1), rat(0)],
        );
        assert!(matches!(coarse, Err(Error::InvalidPolytope(_))));
    }
}
