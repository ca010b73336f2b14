//! Ball capacities of 4-dimensional blowups via Cremona moves on
//! `(d; m_1, ..., m_k)` vectors: the move shifts the degree and the three
//! largest weights by `d - m_1 - m_2 - m_3`, and a vector embeds a ball of
//! capacity `c` when `(d; m, c)` reduces to a vector with positive
//! entries. The capacity is the supremum of such `c`, recovered from an
//! exact bisection by small-denominator recognition.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::lattice::{parse_rational, Int, Rational};
use crate::{Error, Result};

pub const DEFAULT_MOVE_CAP: u64 = 10_000;
pub const DEFAULT_DENOM_BOUND: u64 = 10_000;

/// A blowup class `d H - sum m_i E_i`, encoded as `(d; m_1, ..., m_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupVector {
    pub d: Rational,
    pub weights: Vec<Rational>,
}

impl BlowupVector {
    pub fn new(d: Rational, weights: Vec<Rational>) -> Self {
        BlowupVector { d, weights }
    }

    pub fn appended(&self, c: &Rational) -> BlowupVector {
        let mut weights = self.weights.clone();
        weights.push(c.clone());
        BlowupVector {
            d: self.d.clone(),
            weights,
        }
    }

    fn sorted_desc(&self) -> BlowupVector {
        let mut weights = self.weights.clone();
        weights.sort_by(|a, b| b.cmp(a));
        BlowupVector {
            d: self.d.clone(),
            weights,
        }
    }

    /// `d >= m_1 + m_2 + m_3` on the three largest weights (absent ones
    /// count as zero).
    pub fn is_reduced(&self) -> bool {
        !self.defect().is_negative()
    }

    /// `d - m_1 - m_2 - m_3` over the three largest weights.
    fn defect(&self) -> Rational {
        let sorted = self.sorted_desc();
        let top: Rational = sorted.weights.iter().take(3).cloned().sum();
        &sorted.d - top
    }
}

impl fmt::Display for BlowupVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.d)?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for BlowupVector {
    type Err = Error;

    /// Parses `"18;6,6,6,5,5,5"`; the weight list may be empty (`"3;"` or
    /// just `"3"`).
    fn from_str(s: &str) -> Result<Self> {
        let (d_part, m_part) = match s.split_once(';') {
            Some((d, m)) => (d, m.trim()),
            None => (s, ""),
        };
        let d = parse_rational(d_part)?;
        let weights = if m_part.is_empty() {
            Vec::new()
        } else {
            m_part
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?
        };
        Ok(BlowupVector { d, weights })
    }
}

/// One standard Cremona move: sort the weights, compute the defect
/// `delta = d - m_1 - m_2 - m_3`, and when it is negative add it to the
/// degree and the top three weights (the weight list is padded to three
/// entries first). A reduced vector passes through unchanged apart from
/// sorting.
pub fn cremona_move(v: &BlowupVector) -> BlowupVector {
    let sorted = v.sorted_desc();
    let delta = sorted.defect();
    if !delta.is_negative() {
        return sorted;
    }
    let mut weights = sorted.weights;
    while weights.len() < 3 {
        weights.push(Rational::zero());
    }
    for w in weights.iter_mut().take(3) {
        *w += &delta;
    }
    weights.sort_by(|a, b| b.cmp(a));
    BlowupVector {
        d: sorted.d + delta,
        weights,
    }
}

/// Iterates Cremona moves until the vector is reduced or an entry turns
/// negative (or the degree nonpositive). `true` means the reduced vector
/// exists and keeps every entry strictly positive.
pub fn reduces_positively(v: &BlowupVector) -> Result<bool> {
    reduces_positively_capped(v, DEFAULT_MOVE_CAP)
}

pub fn reduces_positively_capped(v: &BlowupVector, move_cap: u64) -> Result<bool> {
    let mut cur = v.sorted_desc();
    for _ in 0..=move_cap {
        if cur.is_reduced() {
            return Ok(cur.d.is_positive() && cur.weights.iter().all(Signed::is_positive));
        }
        cur = cremona_move(&cur);
        if !cur.d.is_positive() || cur.weights.iter().any(Signed::is_negative) {
            return Ok(false);
        }
    }
    Err(Error::MoveCapExceeded(move_cap))
}

/// The largest appended ball capacity: the supremum of `c` with
/// `reduces_positively(v + c)`, found by exact bisection and pinned down
/// by minimal-denominator recognition inside the final bracket. The
/// result is re-verified by probes one epsilon below and above.
pub fn ball_capacity(v: &BlowupVector) -> Result<Rational> {
    ball_capacity_with(v, DEFAULT_DENOM_BOUND, DEFAULT_MOVE_CAP)
}

pub fn ball_capacity_with(v: &BlowupVector, denom_bound: u64, move_cap: u64) -> Result<Rational> {
    let q = Int::from(denom_bound);
    let probes = |c: &Rational| reduces_positively_capped(&v.appended(c), move_cap);

    // Bracket the threshold: 0 counts as virtually true, then double an
    // upper candidate until the reduction fails.
    let mut lo = Rational::zero();
    let mut hi = &v.d + Rational::one();
    let mut doublings = 0;
    while probes(&hi)? {
        lo = hi.clone();
        hi = &hi * Rational::from_integer(Int::from(2));
        doublings += 1;
        if doublings > 64 {
            return Err(Error::ThresholdNotRational {
                bound: denom_bound,
                lo: lo.to_string(),
                hi: "unbounded".into(),
            });
        }
    }

    // Two distinct rationals with denominator <= q differ by at least
    // 1/q^2, so a bracket narrower than that pins at most one of them.
    let target = Rational::new(Int::one(), &q * &q);
    while &hi - &lo >= target {
        let mid = (&lo + &hi) / Rational::from_integer(Int::from(2));
        if probes(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let simplest = simplest_between(&lo, &hi);
    if simplest.denom() > &q {
        return Err(Error::ThresholdNotRational {
            bound: denom_bound,
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let eps = Rational::new(Int::one(), q.clone());
    let below = if simplest > eps {
        &simplest - &eps
    } else {
        &simplest / Rational::from_integer(Int::from(2))
    };
    let above = &simplest + &eps;
    if !probes(&below)? || probes(&above)? {
        return Err(Error::ThresholdNotRational {
            bound: denom_bound,
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    Ok(simplest)
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (both nonnegative), by continued-fraction descent.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi && !lo.is_negative());
    if lo == hi {
        return lo.clone();
    }
    let ceil_lo = lo.ceil();
    if ceil_lo <= *hi {
        return ceil_lo;
    }
    let f = lo.floor();
    let inv = simplest_between(&((hi - &f).recip()), &((lo - &f).recip()));
    f + inv.recip()
}
