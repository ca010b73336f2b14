//! Upper and lower width bounds for arbitrary half-space polytopes: the
//! integer-program bound from nonnegative relations among the facet
//! normals, and verification of distorted-cross-polytope lower-bound
//! certificates.

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::lattice::{
    column_echelon, is_unimodular_basis, lattice_length, primitive_direction, sub_rat, Int,
    IntMatrix, IntVec, RatVec, Rational,
};
use crate::polytope::LatticePolytope;
use crate::{Error, Result};

/// A nonnegative integer relation among the facet normals and the offset
/// sum it certifies as an upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LuWitness {
    pub coefficients: IntVec,
    pub value: Rational,
}

/// Minimum of `sum a_i kappa_i` over nonzero nonnegative integer vectors
/// `a` with `sum a_i eta_i = 0` and every entry at most `cap`. Complete up
/// to the cap, never beyond it: raising the cap can only lower the value.
/// Ties break to the lexicographically smallest witness.
pub fn lu_bound(p: &LatticePolytope, cap: u64) -> Result<LuWitness> {
    if cap == 0 {
        return Err(Error::NoWitnessUnderCap { cap });
    }
    let n = p.dim();
    let n_facets = p.facet_count();
    // Rows indexed by ambient coordinate, columns by facet.
    let rows: Vec<IntVec> = (0..n)
        .map(|r| (0..n_facets).map(|c| p.normals()[c][r].clone()).collect())
        .collect();
    let kernel = crate::lattice::kernel_lattice_basis(&IntMatrix::from_rows(rows));
    if kernel.is_empty() {
        return Err(Error::NoWitnessUnderCap { cap });
    }

    // Echelonize the kernel basis so coefficients can be enumerated with
    // exact per-level bounds read off the pivot rows.
    let basis_rows: Vec<IntVec> = (0..n_facets)
        .map(|r| kernel.iter().map(|b| b[r].clone()).collect())
        .collect();
    let (cols, _, rank) = column_echelon(&IntMatrix::from_rows(basis_rows));
    debug_assert_eq!(rank, kernel.len());
    let cols = &cols[..rank];
    let pivot_rows: Vec<usize> = cols
        .iter()
        .map(|col| col.iter().position(|x| !x.is_zero()).expect("pivot"))
        .collect();

    let cap_int = Int::from(cap);
    let mut best: Option<(Rational, IntVec)> = None;
    let mut partial = vec![Int::zero(); n_facets];
    enumerate(
        cols,
        &pivot_rows,
        0,
        &mut partial,
        &cap_int,
        p.offsets(),
        &mut best,
    );

    match best {
        Some((value, coefficients)) => Ok(LuWitness {
            coefficients,
            value,
        }),
        None => Err(Error::NoWitnessUnderCap { cap }),
    }
}

fn enumerate(
    cols: &[IntVec],
    pivot_rows: &[usize],
    depth: usize,
    partial: &mut IntVec,
    cap: &Int,
    kappa: &[Rational],
    best: &mut Option<(Rational, IntVec)>,
) {
    if depth == cols.len() {
        if partial.iter().all(Zero::is_zero) {
            return;
        }
        if partial.iter().any(|x| x.is_negative() || x > cap) {
            return;
        }
        let value: Rational = partial
            .iter()
            .zip(kappa)
            .map(|(a, k)| Rational::from_integer(a.clone()) * k)
            .sum();
        let better = match best {
            None => true,
            Some((v, a)) => value < *v || (value == *v && *partial < *a),
        };
        if better {
            *best = Some((value, partial.clone()));
        }
        return;
    }

    let row = pivot_rows[depth];
    let h = &cols[depth][row];
    debug_assert!(h.is_positive());
    // 0 <= partial[row] + t * h <= cap pins the coefficient range.
    let lo = (-&partial[row]).div_ceil(h);
    let hi = (cap - &partial[row]).div_floor(h);
    let mut t = lo;
    while t <= hi {
        for (r, col_val) in cols[depth].iter().enumerate() {
            partial[r] += &t * col_val;
        }
        enumerate(cols, pivot_rows, depth + 1, partial, cap, kappa, best);
        for (r, col_val) in cols[depth].iter().enumerate() {
            partial[r] -= &t * col_val;
        }
        t += 1;
    }
}

/// A distorted cross-polytope candidate: n segments through a common
/// center, each of lattice length rho, with primitive directions forming
/// a lattice basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossPolytopeSpec {
    pub center: RatVec,
    pub segments: Vec<(RatVec, RatVec)>,
    pub rho: Rational,
}

/// Why a cross-polytope candidate fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiamondDefect {
    Shape(String),
    Containment { segment: usize },
    Center { segment: usize },
    Basis,
    Length { segment: usize },
}

impl std::fmt::Display for DiamondDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiamondDefect::Shape(msg) => write!(f, "shape: {msg}"),
            DiamondDefect::Containment { segment } => {
                write!(
                    f,
                    "containment: segment {} leaves the polytope",
                    segment + 1
                )
            }
            DiamondDefect::Center { segment } => {
                write!(f, "center: segment {} misses the center", segment + 1)
            }
            DiamondDefect::Basis => write!(f, "basis: directions are not a lattice basis"),
            DiamondDefect::Length { segment } => {
                write!(
                    f,
                    "length: segment {} has the wrong lattice length",
                    segment + 1
                )
            }
        }
    }
}

/// Verifies the candidate against the polytope: endpoint containment
/// (convexity gives the hull), the common center, the lattice-basis
/// condition on the directions, and the lattice length of every segment.
/// A pass certifies a width lower bound of rho.
pub fn verify_cross_polytope(
    p: &LatticePolytope,
    spec: &CrossPolytopeSpec,
) -> std::result::Result<(), DiamondDefect> {
    let n = p.dim();
    if spec.segments.len() != n {
        return Err(DiamondDefect::Shape(format!(
            "{} segments for dimension {n}",
            spec.segments.len()
        )));
    }
    if spec.center.len() != n {
        return Err(DiamondDefect::Shape("center dimension mismatch".into()));
    }
    for (i, (a, b)) in spec.segments.iter().enumerate() {
        if a.len() != n || b.len() != n {
            return Err(DiamondDefect::Shape(format!(
                "segment {i} dimension mismatch"
            )));
        }
        if a == b {
            return Err(DiamondDefect::Shape(format!("segment {i} is degenerate")));
        }
    }
    if !spec.rho.is_positive() {
        return Err(DiamondDefect::Shape("rho must be positive".into()));
    }

    for (i, (a, b)) in spec.segments.iter().enumerate() {
        let ok = p.contains(a).unwrap_or(false) && p.contains(b).unwrap_or(false);
        if !ok {
            return Err(DiamondDefect::Containment { segment: i });
        }
    }
    for (i, (a, b)) in spec.segments.iter().enumerate() {
        if !segment_contains(a, b, &spec.center) {
            return Err(DiamondDefect::Center { segment: i });
        }
    }
    let mut dirs: Vec<IntVec> = Vec::with_capacity(n);
    for (a, b) in &spec.segments {
        match primitive_direction(&sub_rat(b, a)) {
            Ok(d) => dirs.push(d),
            Err(_) => return Err(DiamondDefect::Basis),
        }
    }
    if !is_unimodular_basis(&dirs).unwrap_or(false) {
        return Err(DiamondDefect::Basis);
    }
    for (i, (a, b)) in spec.segments.iter().enumerate() {
        match lattice_length(a, b) {
            Ok(len) if len == spec.rho => {}
            _ => return Err(DiamondDefect::Length { segment: i }),
        }
    }
    Ok(())
}

/// Exact test that `x` lies on the closed segment from `a` to `b`.
fn segment_contains(a: &[Rational], b: &[Rational], x: &[Rational]) -> bool {
    let d = sub_rat(b, a);
    let r = sub_rat(x, a);
    let lead = match d.iter().position(|c| !c.is_zero()) {
        Some(i) => i,
        None => return r.iter().all(Zero::is_zero),
    };
    let t = &r[lead] / &d[lead];
    if t.is_negative() || t > Rational::from_integer(Int::from(1)) {
        return false;
    }
    r.iter().zip(&d).all(|(ri, di)| *ri == &t * di)
}
