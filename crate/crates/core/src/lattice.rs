//! Exact rational/integer linear algebra primitives.
//!
//! Scalars are [`Rational`] (arbitrary-precision, always reduced, positive
//! denominator — `num_rational::BigRational` guarantees both). Vectors are
//! plain `Vec`s with free functions over slices; dimensions are checked at
//! the call sites that care.
#![allow(clippy::needless_range_loop)] // elimination loops index two rows at once

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;
pub type IntVec = Vec<Int>;
pub type RatVec = Vec<Rational>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(int(v))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(int(numer), int(denom))
}

pub fn int_vec(vs: &[i64]) -> IntVec {
    vs.iter().map(|&v| int(v)).collect()
}

pub fn rat_vec(vs: &[i64]) -> RatVec {
    vs.iter().map(|&v| rat(v)).collect()
}

/// Parses `"p/q"` or `"p"`. This is the serialization used by every file
/// format; floats are never accepted.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: Int = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    let denom: Int = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?,
        None => Int::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

pub fn to_rat_vec(vs: &[Int]) -> RatVec {
    vs.iter()
        .map(|v| Rational::from_integer(v.clone()))
        .collect()
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat_int(a: &[Rational], b: &[Int]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x * Rational::from_integer(y.clone()))
        .sum()
}

pub fn dot_rat(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add_rat(a: &[Rational], b: &[Rational]) -> RatVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_rat(a: &[Rational], b: &[Rational]) -> RatVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_rat(t: &Rational, a: &[Rational]) -> RatVec {
    a.iter().map(|x| t * x).collect()
}

pub fn is_zero_int(a: &[Int]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn is_zero_rat(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn zero_rat_vec(n: usize) -> RatVec {
    vec![Rational::zero(); n]
}

/// An integer matrix given by its rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: Vec<IntVec>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<IntVec>) -> Self {
        if let Some(first) = rows.first() {
            let w = first.len();
            assert!(rows.iter().all(|r| r.len() == w), "ragged matrix");
        }
        IntMatrix { rows }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| int_vec(r)).collect())
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

/// Divides a nonzero integer vector by the gcd of its entries. The result
/// is primitive, parallel to the input and has the same orientation.
pub fn primitive_part(v: &[Int]) -> Result<IntVec> {
    if is_zero_int(v) {
        return Err(Error::ZeroVector);
    }
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Scales a nonzero rational vector to its primitive integer direction.
pub fn primitive_direction(v: &[Rational]) -> Result<IntVec> {
    if is_zero_rat(v) {
        return Err(Error::ZeroVector);
    }
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: IntVec = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive_part(&ints)
}

/// True iff the given n vectors of dimension n have determinant ±1, i.e.
/// form a basis of the integer lattice.
pub fn is_unimodular_basis(vs: &[IntVec]) -> Result<bool> {
    let n = vs.len();
    for v in vs {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    let mat: Vec<RatVec> = vs.iter().map(|v| to_rat_vec(v)).collect();
    let d = det_rat(&mat);
    Ok(d.abs() == Rational::one())
}

/// Lattice length of the segment from `p` to `q`: the number of lattice
/// intervals the segment covers after the minimal integral rescaling.
/// Equivalently, the unique positive rational `l` with `(q - p) / l` a
/// primitive integer vector.
pub fn lattice_length(p: &[Rational], q: &[Rational]) -> Result<Rational> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    let d = sub_rat(q, p);
    if is_zero_rat(&d) {
        return Err(Error::DegenerateSegment);
    }
    // Minimal c > 0 with c*d integral is the lcm of the (reduced) denominators.
    let mut c = Int::one();
    for x in &d {
        c = c.lcm(x.denom());
    }
    let scaled: IntVec = d.iter().map(|x| x.numer() * (&c / x.denom())).collect();
    let mut g = Int::zero();
    for x in &scaled {
        g = g.gcd(x);
    }
    Ok(Rational::new(g, c))
}

/// Column echelon form over the integers: returns `(h, u, rank)` with
/// `h = m * u`, `u` unimodular (given by its columns), the first `rank`
/// columns of `h` in echelon position and the rest zero.
pub fn column_echelon(m: &IntMatrix) -> (Vec<IntVec>, Vec<IntVec>, usize) {
    let rows = m.row_count();
    let cols = m.col_count();
    // Work column-major.
    let mut h: Vec<IntVec> = (0..cols)
        .map(|c| (0..rows).map(|r| m.rows[r][c].clone()).collect())
        .collect();
    let mut u: Vec<IntVec> = (0..cols)
        .map(|c| {
            (0..cols)
                .map(|r| if r == c { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();

    let mut lead = 0usize;
    for row in 0..rows {
        if lead == cols {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (lead..cols).filter(|&c| !h[c][row].is_zero()).collect();
            match nonzero.len() {
                0 => break,
                1 => {
                    let c0 = nonzero[0];
                    h.swap(lead, c0);
                    u.swap(lead, c0);
                    if h[lead][row].is_negative() {
                        for x in h[lead].iter_mut() {
                            *x = -&*x;
                        }
                        for x in u[lead].iter_mut() {
                            *x = -&*x;
                        }
                    }
                    lead += 1;
                    break;
                }
                _ => {
                    // Reduce against the column with the smallest pivot.
                    let &cmin = nonzero
                        .iter()
                        .min_by_key(|&&c| h[c][row].abs())
                        .expect("nonempty");
                    for &c in &nonzero {
                        if c == cmin {
                            continue;
                        }
                        let q = &h[c][row] / &h[cmin][row];
                        if q.is_zero() {
                            continue;
                        }
                        for r in 0..rows {
                            let t = &q * &h[cmin][r];
                            h[c][r] -= t;
                        }
                        for r in 0..cols {
                            let t = &q * &u[cmin][r];
                            u[c][r] -= t;
                        }
                    }
                }
            }
        }
    }
    (h, u, lead)
}

/// Basis of the integer kernel lattice `{a : M a = 0}`, computed via the
/// column echelon (Hermite-style) normal form. The returned vectors are
/// integral and span the kernel over the integers.
pub fn kernel_lattice_basis(m: &IntMatrix) -> Vec<IntVec> {
    let (_, u, rank) = column_echelon(m);
    u.into_iter().skip(rank).collect()
}

/// Exact determinant by rational Gaussian elimination. `mat` is row-major
/// and must be square.
pub fn det_rat(mat: &[RatVec]) -> Rational {
    let n = mat.len();
    if n == 0 {
        return Rational::one();
    }
    let mut a: Vec<RatVec> = mat.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Solves the square system `mat * x = rhs` exactly. Returns `None` when
/// the matrix is singular.
pub fn solve_square(mat: &[RatVec], rhs: &[Rational]) -> Option<RatVec> {
    let n = mat.len();
    debug_assert_eq!(rhs.len(), n);
    let mut a: Vec<RatVec> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        let p = a[col][col].clone();
        for c in col..=n {
            a[col][c] = &a[col][c] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    Some(
        a.into_iter()
            .map(|row| row[row.len() - 1].clone())
            .collect(),
    )
}

/// Rank of a rational matrix (row-major, possibly rectangular).
pub fn rank_rat(mat: &[RatVec]) -> usize {
    if mat.is_empty() {
        return 0;
    }
    let rows = mat.len();
    let cols = mat[0].len();
    let mut a: Vec<RatVec> = mat.to_vec();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = match (rank..rows).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        a.swap(pivot, rank);
        let p = a[rank][col].clone();
        for r in rank + 1..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..cols {
                let t = &f * &a[rank][c];
                a[r][c] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Floor of the n-th root of a nonnegative integer, by Newton iteration.
pub fn floor_nth_root(v: &Int, n: u32) -> Int {
    assert!(!v.is_negative());
    if v.is_zero() || n == 1 {
        return v.clone();
    }
    let n_int = Int::from(n);
    let mut x = Int::one() << ((v.bits() as usize / n as usize) + 1);
    loop {
        // x_{k+1} = ((n-1) x + v / x^(n-1)) / n
        let xp = x.pow(n - 1);
        let next: Int = ((&n_int - 1) * &x + v / &xp) / &n_int;
        if next >= x {
            break;
        }
        x = next;
    }
    while x.pow(n) > *v {
        x -= 1;
    }
    x
}

/// Decimal approximation (rounded down) of `v^(1/n)` for a nonnegative
/// rational `v`, with `digits` digits after the point. Display-only; the
/// exact comparisons elsewhere never use it.
pub fn decimal_nth_root(v: &Rational, n: u32, digits: u32) -> String {
    assert!(!v.is_negative());
    let pow10 = Int::from(10u32).pow(digits);
    // floor((v * 10^(n*digits))^(1/n)) = floor-root of floor(numer'/denom')
    let scaled_num = v.numer() * pow10.pow(n);
    let whole = scaled_num / v.denom();
    let root = floor_nth_root(&whole, n);
    let int_part = &root / &pow10;
    let frac_part = &root % &pow10;
    format!(
        "{}.{:0>width$}",
        int_part,
        frac_part,
        width = digits as usize
    )
}
