//! The width engine: per-block ray/offset sums, the width formula
//! (minimum block offset sum over blocks whose rays cancel), the embedded
//! simplex certificate built by the descending-block recursion, and the
//! admissible-chain audit trail for the offset inequalities it relies on.
//!
//! The recursion is applied in the block order given. The chain to a
//! closed block exists in any order (a block whose twist column vanishes
//! ends every chain), so no internal reordering is needed even when a
//! closed block precedes a twisted one.

use num_traits::{Signed, Zero};

use crate::bott::{FacetLabel, GbmPolytope};
use crate::lattice::{
    is_unimodular_basis, lattice_length, primitive_direction, zero_rat_vec, IntVec, RatVec,
    Rational,
};
use crate::{Error, Result};

/// Per-block sums u(l) and lambda(l).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockData {
    pub block: usize,
    pub u_sum: IntVec,
    pub lambda_sum: Rational,
    pub is_zero_block: bool,
}

pub fn block_data(p: &GbmPolytope) -> Vec<BlockData> {
    let tower = p.tower();
    (0..tower.stages())
        .map(|block| {
            let u_sum = tower.ray_block_sum(block);
            let is_zero_block = tower.is_zero_block(block);
            BlockData {
                block,
                u_sum,
                lambda_sum: p.offset_block_sum(block),
                is_zero_block,
            }
        })
        .collect()
}

/// The Gromov width: the minimum of lambda(l) over blocks with u(l) = 0.
/// The last block always qualifies, so the minimum exists.
pub fn gromov_width(p: &GbmPolytope) -> Rational {
    zero_block_minimum(p).1
}

/// The smallest block index attaining the width (determinism on ties).
pub fn width_witness_block(p: &GbmPolytope) -> usize {
    zero_block_minimum(p).0
}

fn zero_block_minimum(p: &GbmPolytope) -> (usize, Rational) {
    let mut best: Option<(usize, Rational)> = None;
    for d in block_data(p) {
        if !d.is_zero_block {
            continue;
        }
        match &best {
            Some((_, v)) if *v <= d.lambda_sum => {}
            _ => best = Some((d.block, d.lambda_sum)),
        }
    }
    best.expect("a valid tower has a zero block (the last one)")
}

/// The embedded simplex: the length lambda and one point per coordinate
/// facet (block, k >= 1), in facet order. Together with the origin the
/// points span a simplex of lattice length lambda inside the polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexCertificate {
    pub lambda: Rational,
    pub points: Vec<CertificatePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificatePoint {
    pub block: usize,
    pub k: usize,
    pub point: RatVec,
}

impl SimplexCertificate {
    pub fn point(&self, block: usize, k: usize) -> Option<&RatVec> {
        self.points
            .iter()
            .find(|p| p.block == block && p.k == k)
            .map(|p| &p.point)
    }

    /// Each point divided by lambda: integer vectors when the certificate
    /// is well-formed.
    pub fn directions(&self) -> Vec<RatVec> {
        self.points
            .iter()
            .map(|p| p.point.iter().map(|c| c / &self.lambda).collect())
            .collect()
    }
}

/// Why a certificate failed verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateDefect {
    Shape(String),
    OriginOutside,
    Containment { block: usize, k: usize },
    Basis,
    Length { block: usize, k: usize },
}

impl std::fmt::Display for CertificateDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertificateDefect::Shape(msg) => write!(f, "shape: {msg}"),
            CertificateDefect::OriginOutside => write!(f, "containment: origin outside"),
            CertificateDefect::Containment { block, k } => {
                write!(f, "containment: point ({},{k}) outside", block + 1)
            }
            CertificateDefect::Basis => write!(f, "basis: directions are not a lattice basis"),
            CertificateDefect::Length { block, k } => {
                write!(
                    f,
                    "length: segment to point ({},{k}) has the wrong length",
                    block + 1
                )
            }
        }
    }
}

/// Builds the certificate for a standard-form polytope by the descending
/// recursion: a block whose twist column has no positive entry takes the
/// plain point -lambda e^k_l; otherwise the point leans on the last block
/// whose twist column shows a positive entry.
pub fn certificate(p: &GbmPolytope) -> Result<SimplexCertificate> {
    for label in p.tower().facet_labels() {
        if label.k >= 1 && !p.offset(label).is_zero() {
            return Err(Error::RequiresStandardForm {
                block: label.block + 1,
                k: label.k,
            });
        }
    }
    let tower = p.tower();
    let m = tower.stages();
    let n = tower.total_dim();
    let lambda = gromov_width(p);

    let mut points: Vec<CertificatePoint> = Vec::new();
    for block in (0..m).rev() {
        let leaning = positive_twist_target(p, block);
        for k in 1..=tower.fiber_dim(block) {
            let mut v = zero_rat_vec(n);
            v[tower.coord_index(block, k)] = -lambda.clone();
            if let Some((lp, kp)) = leaning {
                let parent = points
                    .iter()
                    .find(|p| p.block == lp && p.k == kp)
                    .expect("parent point built earlier in the descending pass");
                for (c, x) in parent.point.iter().enumerate() {
                    v[c] += x;
                }
            }
            points.push(CertificatePoint { block, k, point: v });
        }
    }
    points.sort_by_key(|p| (p.block, p.k));
    Ok(SimplexCertificate { lambda, points })
}

/// For the recursion's second case: the last block after `block` whose
/// twist vector has a positive entry, with the last such entry's index.
fn positive_twist_target(p: &GbmPolytope, block: usize) -> Option<(usize, usize)> {
    let tower = p.tower();
    let m = tower.stages();
    for j in (block + 1..m).rev() {
        let a = tower.twist(j, block);
        if let Some(i) = (0..a.len()).rev().find(|&i| a[i].is_positive()) {
            return Some((j, i + 1));
        }
    }
    None
}

/// Full verification: every point and the origin lie in the polytope, the
/// scaled points form a lattice basis, and every segment from the origin
/// has lattice length lambda.
pub fn verify_certificate(
    p: &GbmPolytope,
    cert: &SimplexCertificate,
) -> std::result::Result<(), CertificateDefect> {
    let tower = p.tower();
    let n = tower.total_dim();
    if cert.lambda <= Rational::zero() {
        return Err(CertificateDefect::Shape("lambda must be positive".into()));
    }
    let mut expected: Vec<(usize, usize)> = Vec::new();
    for block in 0..tower.stages() {
        for k in 1..=tower.fiber_dim(block) {
            expected.push((block, k));
        }
    }
    let got: Vec<(usize, usize)> = cert.points.iter().map(|p| (p.block, p.k)).collect();
    if got != expected {
        return Err(CertificateDefect::Shape(format!(
            "points must cover every coordinate facet exactly once, got {got:?}"
        )));
    }
    for pt in &cert.points {
        if pt.point.len() != n {
            return Err(CertificateDefect::Shape(format!(
                "point ({},{}) has dimension {}, expected {n}",
                pt.block + 1,
                pt.k,
                pt.point.len()
            )));
        }
    }

    let origin = zero_rat_vec(n);
    if !p.base().contains(&origin).unwrap_or(false) {
        return Err(CertificateDefect::OriginOutside);
    }
    for pt in &cert.points {
        if !p.base().contains(&pt.point).unwrap_or(false) {
            return Err(CertificateDefect::Containment {
                block: pt.block,
                k: pt.k,
            });
        }
    }

    let mut dirs: Vec<IntVec> = Vec::with_capacity(cert.points.len());
    for d in cert.directions() {
        if d.iter().any(|c| !c.is_integer()) {
            return Err(CertificateDefect::Basis);
        }
        match primitive_direction(&d) {
            Ok(prim) => {
                let ints: IntVec = d.iter().map(|c| c.to_integer()).collect();
                if prim != ints {
                    return Err(CertificateDefect::Basis);
                }
                dirs.push(ints);
            }
            Err(_) => return Err(CertificateDefect::Basis),
        }
    }
    if !is_unimodular_basis(&dirs).unwrap_or(false) {
        return Err(CertificateDefect::Basis);
    }

    for pt in &cert.points {
        match lattice_length(&origin, &pt.point) {
            Ok(len) if len == cert.lambda => {}
            _ => {
                return Err(CertificateDefect::Length {
                    block: pt.block,
                    k: pt.k,
                });
            }
        }
    }
    Ok(())
}

/// The index chain from a twisted block down to a closed one, split into
/// admissible runs, with the offset inequalities the runs imply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub block: usize,
    pub k: usize,
    /// Pairs (block, k) with 0-based block and 1-based k.
    pub chain: Vec<(usize, usize)>,
    pub splits: Vec<ChainSplit>,
    /// Pairs (a, b) meaning lambda_a >= lambda_b (0-based blocks).
    pub implied: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSplit {
    pub pairs: Vec<(usize, usize)>,
    pub admissible: bool,
}

impl ChainReport {
    /// Checks every implied inequality against the polytope's actual
    /// standard-form offsets.
    pub fn inequalities_hold(&self, p: &GbmPolytope) -> Result<bool> {
        let standard = if p.is_standard_form() {
            p.clone()
        } else {
            p.to_standard_form()?.0
        };
        let lam = |block: usize| standard.offset(FacetLabel { block, k: 0 }).clone();
        Ok(self.implied.iter().all(|(a, b)| lam(*a) >= lam(*b)))
    }
}

/// Builds the chain starting at (block, k): each step moves to the last
/// later block whose twist vector against the current block is nonzero,
/// recording the last nonzero entry. Ends at a closed block.
pub fn admissible_chains(p: &GbmPolytope, block: usize, k: usize) -> Result<ChainReport> {
    let tower = p.tower();
    if block >= tower.stages() {
        return Err(Error::InvalidTower(format!(
            "block {} out of range",
            block + 1
        )));
    }
    if k == 0 || k > tower.fiber_dim(block) {
        return Err(Error::InvalidTower(format!(
            "facet index k={k} out of range for block {}",
            block + 1
        )));
    }
    if tower.is_zero_block(block) {
        return Err(Error::BlockAlreadyClosed(block + 1));
    }

    let mut chain: Vec<(usize, usize)> = vec![(block, k)];
    let mut cur = block;
    loop {
        let next = ((cur + 1)..tower.stages())
            .rev()
            .find(|&j| !tower.twist(j, cur).iter().all(Zero::is_zero));
        match next {
            None => break,
            Some(j) => {
                let a = tower.twist(j, cur);
                let idx = (0..a.len())
                    .rev()
                    .find(|&i| !a[i].is_zero())
                    .expect("nonzero twist vector");
                chain.push((j, idx + 1));
                cur = j;
            }
        }
    }
    debug_assert!(tower.is_zero_block(cur), "chains end at a closed block");

    // Step v (1-based) carries the sign of a^(k_v)_{block_v, block_(v-1)}.
    let step_sign = |v: usize| -> i8 {
        let (jb, jk) = chain[v];
        let (prev, _) = chain[v - 1];
        let entry = &p.tower().twist(jb, prev)[jk - 1];
        if entry.is_positive() {
            1
        } else {
            -1
        }
    };

    let mut splits: Vec<ChainSplit> = Vec::new();
    let mut start = 0usize;
    for v in 1..chain.len() {
        if v > start + 1 && step_sign(v) < 0 {
            splits.push(make_split(p, &chain[start..=v - 1]));
            start = v - 1;
        }
    }
    if chain.len() > 1 {
        splits.push(make_split(p, &chain[start..]));
    }

    let implied = splits
        .iter()
        .filter(|s| s.admissible)
        .map(|s| (s.pairs[0].0, s.pairs[s.pairs.len() - 1].0))
        .collect();

    Ok(ChainReport {
        block,
        k,
        chain,
        splits,
        implied,
    })
}

fn make_split(p: &GbmPolytope, pairs: &[(usize, usize)]) -> ChainSplit {
    ChainSplit {
        pairs: pairs.to_vec(),
        admissible: is_admissible(p, pairs),
    }
}

/// The admissibility conditions checked literally: first step negative,
/// later steps positive, and the skipping entries all zero.
fn is_admissible(p: &GbmPolytope, pairs: &[(usize, usize)]) -> bool {
    if pairs.len() < 2 {
        return false;
    }
    let tower = p.tower();
    let entry = |t: usize, s: usize| -> &crate::lattice::Int {
        let (jt, qt) = pairs[t];
        let (js, _) = pairs[s];
        &tower.twist(jt, js)[qt - 1]
    };
    if !entry(1, 0).is_negative() {
        return false;
    }
    for t in 2..pairs.len() {
        if !entry(t, t - 1).is_positive() {
            return false;
        }
    }
    for t1 in 2..pairs.len() {
        for t2 in 0..=t1 - 2 {
            if !entry(t1, t2).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bott::BottTower;
    use crate::lattice::{rat, rat_vec};

    fn hirzebruch() -> GbmPolytope {
        let t = BottTower::from_i64(vec![1, 1], &[((2, 1), vec![-1])]).unwrap();
        GbmPolytope::build_standard(t, vec![rat(2), rat(1)]).unwrap()
    }

    fn b5(lambda: &[i64]) -> GbmPolytope {
        let t = BottTower::from_i64(
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
        .unwrap();
        GbmPolytope::build_standard(t, lambda.iter().map(|&v| rat(v)).collect()).unwrap()
    }

    fn product() -> GbmPolytope {
        let t = BottTower::from_i64(vec![1, 2], &[]).unwrap();
        GbmPolytope::build_standard(t, vec![rat(3), rat(2)]).unwrap()
    }

    #[test]
    fn block_data_examples() {
        let data = block_data(&hirzebruch());
        assert_eq!(data[0].u_sum, crate::lattice::int_vec(&[0, -1]));
        assert!(!data[0].is_zero_block);
        assert!(data[1].is_zero_block);
        assert_eq!(data[1].lambda_sum, rat(1));

        for d in block_data(&product()) {
            assert!(d.is_zero_block);
            assert!(d.lambda_sum > rat(0));
        }
    }

    #[test]
    fn width_examples() {
        assert_eq!(gromov_width(&hirzebruch()), rat(1));
        assert_eq!(width_witness_block(&hirzebruch()), 1);

        let one_stage = BottTower::from_i64(vec![3], &[]).unwrap();
        let p = GbmPolytope::build_standard(one_stage, vec![rat(7)]).unwrap();
        assert_eq!(gromov_width(&p), rat(7));
    }

    #[test]
    fn width_ties_resolve_to_smallest_block() {
        let p = product();
        // Both blocks are zero blocks; lambda = (3, 2) so block 2 wins.
        assert_eq!(width_witness_block(&p), 1);
        let t = BottTower::from_i64(vec![1, 2], &[]).unwrap();
        let tie = GbmPolytope::build_standard(t, vec![rat(2), rat(2)]).unwrap();
        assert_eq!(width_witness_block(&tie), 0);
    }

    #[test]
    fn certificate_for_hirzebruch() {
        let p = hirzebruch();
        let c = certificate(&p).unwrap();
        assert_eq!(c.lambda, rat(1));
        assert_eq!(c.point(0, 1).unwrap(), &rat_vec(&[-1, 0]));
        assert_eq!(c.point(1, 1).unwrap(), &rat_vec(&[0, -1]));
        assert_eq!(verify_certificate(&p, &c), Ok(()));
    }

    #[test]
    fn certificate_for_product_is_diagonal() {
        let p = product();
        let c = certificate(&p).unwrap();
        assert_eq!(c.lambda, rat(2));
        for pt in &c.points {
            let nonzero: Vec<_> = pt.point.iter().filter(|x| !x.is_zero()).collect();
            assert_eq!(nonzero.len(), 1);
            assert_eq!(*nonzero[0], rat(-2));
        }
        assert_eq!(verify_certificate(&p, &c), Ok(()));
    }

    #[test]
    fn certificate_for_b5_matches_the_worked_points() {
        let p = b5(&[200, 12, 21, 3, 1]);
        let c = certificate(&p).unwrap();
        let l = c.lambda.clone();
        assert_eq!(l, rat(1));
        // v_1^1 = -l e_1^1, v_2^1 = -l(e_2^1 + e_3^1), v_3^1 = -l e_3^1,
        // v_4^1 = -l(e_4^1 + e_5^2), v_5^1 = -l e_5^1, v_5^2 = -l e_5^2.
        assert_eq!(c.point(0, 1).unwrap(), &rat_vec(&[-1, 0, 0, 0, 0, 0]));
        assert_eq!(c.point(1, 1).unwrap(), &rat_vec(&[0, -1, -1, 0, 0, 0]));
        assert_eq!(c.point(2, 1).unwrap(), &rat_vec(&[0, 0, -1, 0, 0, 0]));
        assert_eq!(c.point(3, 1).unwrap(), &rat_vec(&[0, 0, 0, -1, 0, -1]));
        assert_eq!(c.point(4, 1).unwrap(), &rat_vec(&[0, 0, 0, 0, -1, 0]));
        assert_eq!(c.point(4, 2).unwrap(), &rat_vec(&[0, 0, 0, 0, 0, -1]));
        assert_eq!(verify_certificate(&p, &c), Ok(()));
    }

    #[test]
    fn certificate_requires_standard_form() {
        let p = hirzebruch().translate(&rat_vec(&[-1, 0])).unwrap();
        assert!(matches!(
            certificate(&p),
            Err(Error::RequiresStandardForm { .. })
        ));
        let (std_form, _) = p.to_standard_form().unwrap();
        assert!(certificate(&std_form).is_ok());
    }

    #[test]
    fn verify_rejects_bad_certificates() {
        let p = hirzebruch();
        let good = certificate(&p).unwrap();

        let mut scaled = good.clone();
        for pt in scaled.points.iter_mut() {
            for c in pt.point.iter_mut() {
                *c = &*c * rat(2);
            }
        }
        assert_eq!(
            verify_certificate(&p, &scaled),
            Err(CertificateDefect::Containment { block: 1, k: 1 })
        );

        let mut dup = good.clone();
        dup.points[1].point = dup.points[0].point.clone();
        assert_eq!(verify_certificate(&p, &dup), Err(CertificateDefect::Basis));

        let mut stretched = good.clone();
        stretched.lambda = rat(2);
        // Points no longer divide by lambda into integers.
        assert_eq!(
            verify_certificate(&p, &stretched),
            Err(CertificateDefect::Basis)
        );
    }

    #[test]
    fn chains_for_b5() {
        let p = b5(&[200, 12, 21, 3, 1]);
        let r1 = admissible_chains(&p, 0, 1).unwrap();
        assert_eq!(r1.chain, vec![(0, 1), (1, 1), (4, 1)]);
        assert_eq!(r1.splits.len(), 2);
        assert_eq!(r1.splits[0].pairs, vec![(0, 1), (1, 1)]);
        assert_eq!(r1.splits[1].pairs, vec![(1, 1), (4, 1)]);
        assert!(r1.splits.iter().all(|s| s.admissible));
        assert_eq!(r1.implied, vec![(0, 1), (1, 4)]);
        assert!(r1.inequalities_hold(&p).unwrap());

        let r3 = admissible_chains(&p, 2, 1).unwrap();
        assert_eq!(r3.chain, vec![(2, 1), (3, 1), (4, 2)]);
        assert_eq!(r3.splits.len(), 1);
        assert!(r3.splits[0].admissible);
        assert_eq!(r3.implied, vec![(2, 4)]);
        assert!(r3.inequalities_hold(&p).unwrap());

        assert_eq!(
            admissible_chains(&p, 4, 1),
            Err(Error::BlockAlreadyClosed(5))
        );
    }

    #[test]
    fn chain_for_hirzebruch() {
        let p = hirzebruch();
        let r = admissible_chains(&p, 0, 1).unwrap();
        assert_eq!(r.chain, vec![(0, 1), (1, 1)]);
        assert_eq!(r.splits.len(), 1);
        assert!(r.splits[0].admissible);
        assert_eq!(r.implied, vec![(0, 1)]);
        assert!(r.inequalities_hold(&p).unwrap());
    }

    #[test]
    fn chain_with_positive_first_step_is_not_admissible() {
        // Block 4 of B5 leans on block 5 through a positive entry, so its
        // chain has a single non-admissible run and implies nothing.
        let p = b5(&[200, 12, 21, 3, 1]);
        let r4 = admissible_chains(&p, 3, 1).unwrap();
        assert_eq!(r4.chain, vec![(3, 1), (4, 2)]);
        assert!(!r4.splits[0].admissible);
        assert!(r4.implied.is_empty());
    }
}
