//! Generalized Bott towers: the discrete twisting data, the fan rays and
//! maximal cones, and the moment polytope built from facet offsets.
//!
//! Blocks are 0-based internally; reports and file formats use the 1-based
//! numbering of the inputs. The facet order is fixed as
//! (1,0),(1,1),...,(1,n_1),(2,0),... and every downstream index (offsets,
//! certificates, intersection vectors) refers to it. Blocks are kept in the
//! order given; nothing is reordered behind the caller's back.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::lattice::{dot_rat_int, int, int_vec, is_zero_int, Int, IntVec, RatVec, Rational};
use crate::polytope::LatticePolytope;
use crate::{Error, Result};

/// Facet label (block, k): k = 0 is the twisted facet of the block, k >= 1
/// are the coordinate facets. `block` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetLabel {
    pub block: usize,
    pub k: usize,
}

impl fmt::Display for FacetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.block + 1, self.k)
    }
}

/// The twisting data of a generalized Bott tower: fiber dimensions
/// n_1..n_m and integer vectors a_{j,l} (one per pair l < j, zero when
/// omitted) of dimension n_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottTower {
    fiber_dims: Vec<usize>,
    /// twists[j][l] for l < j, each of dimension fiber_dims[j].
    twists: Vec<Vec<IntVec>>,
}

impl BottTower {
    pub fn new(fiber_dims: Vec<usize>, twist_list: Vec<((usize, usize), IntVec)>) -> Result<Self> {
        let m = fiber_dims.len();
        if m == 0 {
            return Err(Error::InvalidTower("no stages".into()));
        }
        if let Some(j) = fiber_dims.iter().position(|&n| n == 0) {
            return Err(Error::InvalidTower(format!(
                "fiber dimension 0 at stage {}",
                j + 1
            )));
        }
        let mut twists: Vec<Vec<IntVec>> = (0..m)
            .map(|j| (0..j).map(|_| vec![Int::zero(); fiber_dims[j]]).collect())
            .collect();
        for ((j, l), vec) in twist_list {
            if !(1 <= l && l < j && j <= m) {
                return Err(Error::InvalidTower(format!(
                    "twist indices (j={j}, l={l}) out of range (need 1 <= l < j <= {m})"
                )));
            }
            if vec.len() != fiber_dims[j - 1] {
                return Err(Error::InvalidTower(format!(
                    "twist a_{{{j},{l}}} has dimension {}, expected {}",
                    vec.len(),
                    fiber_dims[j - 1]
                )));
            }
            twists[j - 1][l - 1] = vec;
        }
        Ok(BottTower { fiber_dims, twists })
    }

    pub fn from_i64(
        fiber_dims: Vec<usize>,
        twist_list: &[((usize, usize), Vec<i64>)],
    ) -> Result<Self> {
        Self::new(
            fiber_dims,
            twist_list
                .iter()
                .map(|((j, l), v)| ((*j, *l), int_vec(v)))
                .collect(),
        )
    }

    /// Number of stages m.
    pub fn stages(&self) -> usize {
        self.fiber_dims.len()
    }

    /// Fiber dimension n_block (0-based block).
    pub fn fiber_dim(&self, block: usize) -> usize {
        self.fiber_dims[block]
    }

    pub fn fiber_dims(&self) -> &[usize] {
        &self.fiber_dims
    }

    /// Total dimension n = sum of fiber dimensions.
    pub fn total_dim(&self) -> usize {
        self.fiber_dims.iter().sum()
    }

    pub fn facet_count(&self) -> usize {
        self.total_dim() + self.stages()
    }

    /// Twist vector a_{j,l} for 0-based blocks l < j.
    pub fn twist(&self, j: usize, l: usize) -> &IntVec {
        &self.twists[j][l]
    }

    /// Start of block's coordinate range in R^n.
    pub fn block_offset(&self, block: usize) -> usize {
        self.fiber_dims[..block].iter().sum()
    }

    /// Coordinate index of e^k_block (k >= 1).
    pub fn coord_index(&self, block: usize, k: usize) -> usize {
        debug_assert!(k >= 1 && k <= self.fiber_dims[block]);
        self.block_offset(block) + k - 1
    }

    /// All facet labels in the fixed order (1,0),(1,1),...,(2,0),...
    pub fn facet_labels(&self) -> Vec<FacetLabel> {
        let mut out = Vec::with_capacity(self.facet_count());
        for block in 0..self.stages() {
            for k in 0..=self.fiber_dims[block] {
                out.push(FacetLabel { block, k });
            }
        }
        out
    }

    pub fn facet_index(&self, label: FacetLabel) -> usize {
        let mut idx = 0;
        for block in 0..label.block {
            idx += self.fiber_dims[block] + 1;
        }
        idx + label.k
    }

    pub fn label_of_index(&self, index: usize) -> FacetLabel {
        let mut rest = index;
        for block in 0..self.stages() {
            let width = self.fiber_dims[block] + 1;
            if rest < width {
                return FacetLabel { block, k: rest };
            }
            rest -= width;
        }
        panic!("facet index {index} out of range");
    }

    /// Ray generator of one facet: e^k_block for k >= 1; for k = 0 the
    /// vector with -1 on the block and the twists a_{j,block} on the
    /// blocks after it.
    pub fn ray(&self, label: FacetLabel) -> IntVec {
        let n = self.total_dim();
        let mut v = vec![Int::zero(); n];
        if label.k >= 1 {
            v[self.coord_index(label.block, label.k)] = int(1);
        } else {
            let off = self.block_offset(label.block);
            for i in 0..self.fiber_dims[label.block] {
                v[off + i] = int(-1);
            }
            for j in label.block + 1..self.stages() {
                let joff = self.block_offset(j);
                for (i, a) in self.twists[j][label.block].iter().enumerate() {
                    v[joff + i] = a.clone();
                }
            }
        }
        v
    }

    /// All rays in facet order.
    pub fn rays(&self) -> Vec<IntVec> {
        self.facet_labels()
            .into_iter()
            .map(|l| self.ray(l))
            .collect()
    }

    /// Sum of the block's rays: zero exactly when all a_{j,block} vanish.
    pub fn ray_block_sum(&self, block: usize) -> IntVec {
        let n = self.total_dim();
        let mut v = vec![Int::zero(); n];
        for j in block + 1..self.stages() {
            let joff = self.block_offset(j);
            for (i, a) in self.twists[j][block].iter().enumerate() {
                v[joff + i] = a.clone();
            }
        }
        v
    }

    pub fn is_zero_block(&self, block: usize) -> bool {
        is_zero_int(&self.ray_block_sum(block))
    }

    /// All vertex sequences s = (s_1..s_m) with s_l in {0..n_l}, in
    /// lexicographic order.
    pub fn sequences(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &n in &self.fiber_dims {
            let mut next = Vec::with_capacity(out.len() * (n + 1));
            for s in &out {
                for k in 0..=n {
                    let mut t = s.clone();
                    t.push(k);
                    next.push(t);
                }
            }
            out = next;
        }
        out
    }

    /// Maximal cones of the fan, one per vertex sequence: the facet labels
    /// (block, k) with k != s_block.
    pub fn maximal_cones(&self) -> Vec<Vec<FacetLabel>> {
        self.sequences()
            .into_iter()
            .map(|s| self.cone_of_sequence(&s))
            .collect()
    }

    pub fn cone_of_sequence(&self, s: &[usize]) -> Vec<FacetLabel> {
        let mut cone = Vec::new();
        for (block, &sk) in s.iter().enumerate() {
            for k in 0..=self.fiber_dims[block] {
                if k != sk {
                    cone.push(FacetLabel { block, k });
                }
            }
        }
        cone
    }
}

/// The moment polytope of a generalized Bott tower: the tower's rays as
/// facet normals plus one offset per facet, validated to be bounded,
/// irredundant and combinatorially the expected product of simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbmPolytope {
    tower: BottTower,
    offsets: RatVec,
    base: LatticePolytope,
}

impl GbmPolytope {
    /// Builds `{x : <x, ray(label)> <= offsets[label]}` and checks the
    /// vertex/maximal-cone correspondence.
    pub fn build(tower: BottTower, offsets: RatVec) -> Result<Self> {
        if offsets.len() != tower.facet_count() {
            return Err(Error::InvalidTower(format!(
                "{} offsets for {} facets",
                offsets.len(),
                tower.facet_count()
            )));
        }
        let base = match LatticePolytope::new(tower.rays(), offsets.clone()) {
            Ok(p) => p,
            Err(Error::RedundantInequality(i)) => {
                return Err(Error::NotProductOfSimplices(format!(
                    "redundant inequality {}",
                    tower.label_of_index(i)
                )));
            }
            Err(Error::InvalidPolytope(msg)) => return Err(Error::NotProductOfSimplices(msg)),
            Err(e) => return Err(e),
        };

        let cones: BTreeSet<BTreeSet<usize>> = tower
            .maximal_cones()
            .into_iter()
            .map(|cone| cone.into_iter().map(|l| tower.facet_index(l)).collect())
            .collect();
        if base.vertices().len() != cones.len() {
            return Err(Error::NotProductOfSimplices(format!(
                "{} vertices, expected {}",
                base.vertices().len(),
                cones.len()
            )));
        }
        for v in base.vertices() {
            if !cones.contains(&v.active_facets) {
                return Err(Error::NotProductOfSimplices(format!(
                    "vertex {:?} active facets do not match a maximal cone",
                    v.point
                )));
            }
        }

        Ok(GbmPolytope {
            tower,
            offsets,
            base,
        })
    }

    /// Standard form: all offsets for k >= 1 facets are zero, so the
    /// polytope sits in the nonpositive orthant.
    pub fn build_standard(tower: BottTower, lambda0: RatVec) -> Result<Self> {
        if lambda0.len() != tower.stages() {
            return Err(Error::InvalidTower(format!(
                "{} zero-form offsets for {} blocks",
                lambda0.len(),
                tower.stages()
            )));
        }
        let mut offsets = vec![Rational::zero(); tower.facet_count()];
        for (block, l) in lambda0.into_iter().enumerate() {
            offsets[tower.facet_index(FacetLabel { block, k: 0 })] = l;
        }
        Self::build(tower, offsets)
    }

    pub fn tower(&self) -> &BottTower {
        &self.tower
    }

    pub fn base(&self) -> &LatticePolytope {
        &self.base
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    pub fn offset(&self, label: FacetLabel) -> &Rational {
        &self.offsets[self.tower.facet_index(label)]
    }

    /// lambda(block) = sum of the block's offsets.
    pub fn offset_block_sum(&self, block: usize) -> Rational {
        (0..=self.tower.fiber_dim(block))
            .map(|k| self.offset(FacetLabel { block, k }).clone())
            .sum()
    }

    pub fn is_standard_form(&self) -> bool {
        self.tower
            .facet_labels()
            .into_iter()
            .filter(|l| l.k >= 1)
            .all(|l| self.offset(l).is_zero())
    }

    /// Translates so that every k >= 1 offset becomes zero: subtracts the
    /// vertex where all coordinate facets meet. Returns the standard-form
    /// polytope and the translation that was applied.
    pub fn to_standard_form(&self) -> Result<(GbmPolytope, RatVec)> {
        let n = self.tower.total_dim();
        let mut anchor = vec![Rational::zero(); n];
        for label in self.tower.facet_labels() {
            if label.k >= 1 {
                anchor[self.tower.coord_index(label.block, label.k)] = self.offset(label).clone();
            }
        }
        let t: RatVec = anchor.iter().map(|x| -x).collect();
        Ok((self.translate(&t)?, t))
    }

    pub fn translate(&self, t: &[Rational]) -> Result<GbmPolytope> {
        let offsets: RatVec = self
            .tower
            .facet_labels()
            .into_iter()
            .map(|l| self.offset(l) + dot_rat_int(t, &self.tower.ray(l)))
            .collect();
        GbmPolytope::build(self.tower.clone(), offsets)
    }

    /// The face F_I: blocks outside `blocks_in` pinned to the anchor (zero
    /// in standard form), with the twisted inequalities kept only for
    /// blocks inside.
    pub fn face(&self, blocks_in: &BTreeSet<usize>) -> Result<Face> {
        for &b in blocks_in {
            if b >= self.tower.stages() {
                return Err(Error::InvalidTower(format!("block {} out of range", b + 1)));
            }
        }
        let (standard, shift) = if self.is_standard_form() {
            (self.clone(), vec![Rational::zero(); self.tower.total_dim()])
        } else {
            self.to_standard_form()?
        };
        Ok(Face {
            polytope: standard,
            shift,
            blocks_in: blocks_in.clone(),
        })
    }
}

/// The constraint system of a face F_I, with the short membership test
/// that the product-of-simplices structure affords: a point with
/// nonpositive coordinates, zero blocks outside I and the twisted
/// inequality for each block of I lies in the polytope.
#[derive(Debug, Clone)]
pub struct Face {
    polytope: GbmPolytope,
    /// Translation taking the original polytope to standard form.
    shift: RatVec,
    blocks_in: BTreeSet<usize>,
}

impl Face {
    pub fn blocks_in(&self) -> &BTreeSet<usize> {
        &self.blocks_in
    }

    pub fn pinned_blocks(&self) -> Vec<usize> {
        (0..self.polytope.tower().stages())
            .filter(|b| !self.blocks_in.contains(b))
            .collect()
    }

    /// The twisted inequalities the face keeps, one per block of I.
    pub fn kept_inequalities(&self) -> Vec<FacetLabel> {
        self.blocks_in
            .iter()
            .map(|&block| FacetLabel { block, k: 0 })
            .collect()
    }

    /// Membership in F_I via the hypotheses only; a `true` answer
    /// guarantees containment in the full polytope without checking the
    /// remaining inequalities.
    pub fn is_member(&self, x: &[Rational]) -> Result<bool> {
        let tower = self.polytope.tower();
        let n = tower.total_dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let y = if self.shift.iter().all(Zero::is_zero) {
            x.to_vec()
        } else {
            // Move the point into the standard-form chart.
            add(x, &self.shift)
        };
        if y.iter().any(|c| c > &Rational::zero()) {
            return Ok(false);
        }
        for block in 0..tower.stages() {
            let off = tower.block_offset(block);
            let dim = tower.fiber_dim(block);
            if !self.blocks_in.contains(&block) {
                if y[off..off + dim].iter().any(|c| !c.is_zero()) {
                    return Ok(false);
                }
            } else {
                let label = FacetLabel { block, k: 0 };
                let lhs = dot_rat_int(&y, &tower.ray(label));
                if lhs > *self.polytope.offset(label) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn add(a: &[Rational], b: &[Rational]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Result of matching a raw half-space polytope against the Bott-tower ray
/// pattern, up to block order and coordinate permutation.
#[derive(Debug, Clone)]
pub struct RecognizedTower {
    pub polytope: GbmPolytope,
    /// original coordinate index of each tower coordinate.
    pub coord_of_tower: Vec<usize>,
    /// original facet index of each tower facet (in tower facet order).
    pub facet_of_tower: Vec<usize>,
}

/// Attempts to see a raw polytope as the moment polytope of a generalized
/// Bott tower: exactly n normals must be distinct standard basis vectors,
/// and the remaining ones must admit a consistent block assignment. The
/// tower's blocks come out in the discovered order; coordinates are
/// renumbered block by block.
pub fn recognize_tower(p: &LatticePolytope) -> Option<RecognizedTower> {
    let n = p.dim();
    let n_facets = p.facet_count();
    if n_facets <= n {
        return None;
    }
    let m = n_facets - n;

    let mut basis_facet: Vec<Option<usize>> = vec![None; n];
    let mut candidates: Vec<usize> = Vec::new();
    for (idx, eta) in p.normals().iter().enumerate() {
        match basis_coordinate(eta) {
            Some(c) => {
                if basis_facet[c].is_some() {
                    return None;
                }
                basis_facet[c] = Some(idx);
            }
            None => candidates.push(idx),
        }
    }
    if basis_facet.iter().any(Option::is_none) || candidates.len() != m {
        return None;
    }

    let coords: Vec<usize> = (0..n).collect();
    let mut blocks: Vec<(usize, Vec<usize>)> = Vec::new();
    if !assign_blocks(p, &candidates, &coords, &mut blocks) {
        return None;
    }

    // Read the tower off the discovered block structure.
    let fiber_dims: Vec<usize> = blocks.iter().map(|(_, b)| b.len()).collect();
    let mut twist_list: Vec<((usize, usize), IntVec)> = Vec::new();
    for (l, (cand_l, _)) in blocks.iter().enumerate() {
        let eta = &p.normals()[*cand_l];
        for (j, (_, coords_j)) in blocks.iter().enumerate().skip(l + 1) {
            let vec: IntVec = coords_j.iter().map(|&c| eta[c].clone()).collect();
            if !is_zero_int(&vec) {
                twist_list.push(((j + 1, l + 1), vec));
            }
        }
    }
    let tower = BottTower::new(fiber_dims, twist_list).ok()?;

    let mut coord_of_tower = Vec::with_capacity(n);
    for (_, b) in &blocks {
        coord_of_tower.extend_from_slice(b);
    }
    let mut facet_of_tower = Vec::with_capacity(n_facets);
    let mut offsets = Vec::with_capacity(n_facets);
    for (block, (cand, coords_b)) in blocks.iter().enumerate() {
        facet_of_tower.push(*cand);
        offsets.push(p.offsets()[*cand].clone());
        for &c in coords_b {
            let f = basis_facet[c].expect("checked above");
            facet_of_tower.push(f);
            offsets.push(p.offsets()[f].clone());
        }
        let _ = block;
    }

    let polytope = GbmPolytope::build(tower, offsets).ok()?;
    Some(RecognizedTower {
        polytope,
        coord_of_tower,
        facet_of_tower,
    })
}

fn basis_coordinate(eta: &[Int]) -> Option<usize> {
    let mut hit = None;
    for (i, x) in eta.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if *x != int(1) || hit.is_some() {
            return None;
        }
        hit = Some(i);
    }
    hit
}

/// Backtracking block assignment: the first block of a valid order is a
/// candidate whose -1 entries on the remaining coordinates are untouched
/// by every other remaining candidate; that set is then forced to be its
/// block.
fn assign_blocks(
    p: &LatticePolytope,
    remaining: &[usize],
    coords: &[usize],
    blocks: &mut Vec<(usize, Vec<usize>)>,
) -> bool {
    if remaining.is_empty() {
        return coords.is_empty();
    }
    for (pos, &cand) in remaining.iter().enumerate() {
        let eta = &p.normals()[cand];
        let block: Vec<usize> = coords
            .iter()
            .copied()
            .filter(|&c| {
                eta[c] == int(-1)
                    && remaining
                        .iter()
                        .filter(|&&other| other != cand)
                        .all(|&other| p.normals()[other][c].is_zero())
            })
            .collect();
        if block.is_empty() {
            continue;
        }
        // Within its block the candidate must be exactly -1 everywhere,
        // which the filter guarantees; the rest is checked recursively.
        let rest_cands: Vec<usize> = remaining
            .iter()
            .copied()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, c)| c)
            .collect();
        let rest_coords: Vec<usize> = coords
            .iter()
            .copied()
            .filter(|c| !block.contains(c))
            .collect();
        blocks.push((cand, block));
        if assign_blocks(p, &rest_cands, &rest_coords, blocks) {
            return true;
        }
        blocks.pop();
    }
    false
}
