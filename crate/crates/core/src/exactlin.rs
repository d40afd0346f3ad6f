//! Exact integer and rational linear algebra.
//!
//! Every geometric predicate in the crate bottoms out here. Ranks use
//! fraction-free (Bareiss) elimination over the integers, feasibility of
//! homogeneous inequality systems uses Fourier–Motzkin elimination, and
//! saturated sublattices are computed with unimodular column operations.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A vector of arbitrary-precision integers (lattice points, exponents,
/// inequality normals).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntegerVector(Vec<BigInt>);

/// A vector of exact rationals, always in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVector(Vec<BigRational>);

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl IntegerVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntegerVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntegerVector(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        IntegerVector(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntegerVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rational(&self, other: &RationalVector) -> BigRational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(other.entries())
            .map(|(a, b)| b * a)
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    pub fn neg(&self) -> IntegerVector {
        IntegerVector(self.0.iter().map(|e| -e).collect())
    }

    pub fn add(&self, other: &IntegerVector) -> IntegerVector {
        IntegerVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntegerVector {
        IntegerVector(self.0.iter().map(|e| e * k).collect())
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: &BigInt, other: &IntegerVector, b: &BigInt) -> IntegerVector {
        IntegerVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        )
    }

    pub fn gcd(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, e| g.gcd(e))
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd().is_one()
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(
            self.0
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        )
    }
}

impl fmt::Display for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        RationalVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![BigRational::zero(); dim])
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        RationalVector(
            entries
                .iter()
                .map(|&e| BigRational::from_integer(BigInt::from(e)))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RationalVector) -> BigRational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Positive rescaling to a primitive integer vector (the zero vector maps
    /// to the zero vector).
    pub fn to_primitive_integer(&self) -> IntegerVector {
        let lcm = self.0.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let ints = IntegerVector(
            self.0
                .iter()
                .map(|q| q.numer() * (&lcm / q.denom()))
                .collect(),
        );
        if ints.is_zero() {
            ints
        } else {
            divide_by_gcd(&ints)
        }
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(RationalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length; `cols` is needed when there
    /// are no rows.
    pub fn from_rows(cols: usize, rows: &[RationalVector]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.dim(),
                });
            }
            entries.extend(r.entries().iter().cloned());
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn from_integer_rows(cols: usize, rows: &[IntegerVector]) -> Result<Self> {
        let rows: Vec<RationalVector> = rows.iter().map(IntegerVector::to_rational).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<RationalVector> = rows.iter().map(|r| RationalVector::from_i64s(r)).collect();
        Self::from_rows(cols, &rows).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Rows rescaled by the lcm of their denominators, so every entry is an
    /// integer. Row scaling preserves rank and row space.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = &self.entries[i * self.cols..(i + 1) * self.cols];
                let lcm = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
            })
            .collect()
    }
}

/// Exact rank over the rationals by fraction-free elimination.
pub fn rank(m: &RationalMatrix) -> usize {
    bareiss_rank(m.integer_rows(), m.cols)
}

/// Rank of a family of integer vectors of common dimension `cols`.
pub fn integer_rank(rows: &[IntegerVector], cols: usize) -> usize {
    bareiss_rank(rows.iter().map(|r| r.0.clone()).collect(), cols)
}

fn bareiss_rank(mut m: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..nrows {
            for j in col + 1..cols {
                let v = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Divides a vector by the gcd of its entries. The zero vector has no
/// primitive representative.
pub fn primitive(v: &IntegerVector) -> Result<IntegerVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(divide_by_gcd(v))
}

fn divide_by_gcd(v: &IntegerVector) -> IntegerVector {
    let g = v.gcd();
    IntegerVector(v.0.iter().map(|e| e / &g).collect())
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[RationalVector], cols: usize) -> (Vec<RationalVector>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m.into_iter().map(RationalVector).collect(), pivots)
}

/// Basis of the rational null space {x : row·x = 0 for every row}.
pub fn nullspace(rows: &[RationalVector], cols: usize) -> Vec<RationalVector> {
    let (red, pivots) = rref(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (row, &p) in red.iter().zip(&pivots) {
                x[p] = -row.0[f].clone();
            }
            RationalVector(x)
        })
        .collect()
}

/// Integer basis of the orthogonal complement of the span of `rows`, each
/// vector primitive. Not necessarily a lattice basis; see
/// [`integer_kernel_basis`] for that.
pub fn orthogonal_complement(rows: &[IntegerVector], cols: usize) -> Vec<IntegerVector> {
    let rows: Vec<RationalVector> = rows.iter().map(IntegerVector::to_rational).collect();
    nullspace(&rows, cols)
        .iter()
        .map(RationalVector::to_primitive_integer)
        .collect()
}

/// Canonical integer basis of the row space: the reduced row echelon form
/// with each row rescaled to a primitive integer vector.
pub fn canonical_row_basis(rows: &[IntegerVector], cols: usize) -> Vec<IntegerVector> {
    let rows: Vec<RationalVector> = rows.iter().map(IntegerVector::to_rational).collect();
    rref(&rows, cols)
        .0
        .iter()
        .map(RationalVector::to_primitive_integer)
        .collect()
}

/// A lattice basis of the saturated sublattice {x ∈ Z^cols : row·x = 0}.
///
/// Column operations by extended gcd bring the constraint matrix to column
/// echelon form `C·U = [L | 0]` with `U` unimodular; the trailing columns of
/// `U` span the integer kernel.
pub fn integer_kernel_basis(rows: &[IntegerVector], cols: usize) -> Vec<IntegerVector> {
    let mut c: Vec<Vec<BigInt>> = rows.iter().map(|r| r.0.clone()).collect();
    // u[j] is column j of U.
    let mut u: Vec<Vec<BigInt>> = (0..cols).map(|j| IntegerVector::unit(cols, j).0).collect();
    let mut lead = 0;
    for i in 0..c.len() {
        if lead == cols {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (lead..cols).filter(|&j| !c[i][j].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let &piv = nonzero
                .iter()
                .min_by(|&&a, &&b| c[i][a].abs().cmp(&c[i][b].abs()).then(a.cmp(&b)))
                .unwrap();
            swap_columns(&mut c, &mut u, lead, piv);
            let mut done = true;
            for j in lead + 1..cols {
                if c[i][j].is_zero() {
                    continue;
                }
                let q = c[i][j].div_floor(&c[i][lead]);
                column_axpy(&mut c, &mut u, j, lead, &q);
                if !c[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                lead += 1;
                break;
            }
        }
    }
    u.into_iter().skip(lead).map(IntegerVector).collect()
}

fn swap_columns(c: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in c.iter_mut() {
        row.swap(a, b);
    }
    u.swap(a, b);
}

/// column[j] -= q * column[k]
fn column_axpy(c: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in c.iter_mut() {
        let d = q * &row[k];
        row[j] -= d;
    }
    let (src, dst) = if k < j {
        let (lo, hi) = u.split_at_mut(j);
        (&lo[k], &mut hi[0])
    } else {
        let (lo, hi) = u.split_at_mut(k);
        (&hi[0], &mut lo[j])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

/// A lattice basis of span(rows) ∩ Z^cols.
pub fn saturated_basis(rows: &[IntegerVector], cols: usize) -> Vec<IntegerVector> {
    let complement = orthogonal_complement(rows, cols);
    integer_kernel_basis(&complement, cols)
}

/// Solves `y^T · basis = target` for `y`, returning `None` when the target is
/// outside the row space. `basis` rows need not be independent; free
/// coordinates are set to zero.
pub fn solve_in_basis(basis: &[IntegerVector], target: &RationalVector) -> Option<RationalVector> {
    let k = basis.len();
    let n = target.dim();
    // Augmented system B^T y = target: n rows, k + 1 columns.
    let aug: Vec<RationalVector> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(b.0[i].clone()))
                .collect();
            row.push(target.0[i].clone());
            RationalVector(row)
        })
        .collect();
    let (red, pivots) = rref(&aug, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut y = vec![BigRational::zero(); k];
    for (row, &p) in red.iter().zip(&pivots) {
        y[p] = row.0[k].clone();
    }
    Some(RationalVector(y))
}

/// Finds `x` with `A·x ≥ 0`, and `row_i·x > 0` for every `i` in
/// `strict_rows`, or returns `None` when the system is infeasible.
///
/// Strictness is scale-invariant for homogeneous systems, so the strict rows
/// are replaced by `row_i·x ≥ 1` and the resulting inhomogeneous system is
/// decided by Fourier–Motzkin elimination with Chernikov's redundancy rule.
/// Back-substitution picks, for each coordinate in turn, the feasible value
/// closest to zero, which makes the witness deterministic.
pub fn solve_nonneg(a: &RationalMatrix, strict_rows: &BTreeSet<usize>) -> Option<RationalVector> {
    let n = a.cols();
    let int_rows = a.integer_rows();
    let mut system: Vec<Constraint> = int_rows
        .into_iter()
        .enumerate()
        .map(|(i, coeffs)| {
            let rhs = if strict_rows.contains(&i) {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            let mut history = BTreeSet::new();
            history.insert(i);
            Constraint::new(coeffs, rhs, history)
        })
        .collect();
    system.sort();
    system.dedup_by(|a, b| a.coeffs == b.coeffs && a.rhs == b.rhs);

    // stages[k] holds the system in variables 0..k.
    let mut stages: Vec<Vec<Constraint>> = vec![Vec::new(); n + 1];
    for k in (0..n).rev() {
        let eliminated = n - k;
        let (mut next, mut pos, mut neg) = (Vec::new(), Vec::new(), Vec::new());
        for c in &system {
            match c.coeffs[k].sign() {
                num_bigint::Sign::Plus => pos.push(c),
                num_bigint::Sign::Minus => neg.push(c),
                num_bigint::Sign::NoSign => next.push(c.clone()),
            }
        }
        for p in &pos {
            for q in &neg {
                let history: BTreeSet<usize> = p.history.union(&q.history).copied().collect();
                if history.len() > eliminated + 1 {
                    continue;
                }
                let fp = -&q.coeffs[k];
                let fq = p.coeffs[k].clone();
                let coeffs: Vec<BigInt> = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(x, y)| &fp * x + &fq * y)
                    .collect();
                let rhs = &fp * &p.rhs + &fq * &q.rhs;
                next.push(Constraint::new(coeffs, rhs, history));
            }
        }
        next.sort();
        next.dedup_by(|a, b| a.coeffs == b.coeffs && a.rhs == b.rhs);
        stages[k + 1] = std::mem::replace(&mut system, next);
    }
    // All variables eliminated: remaining constraints read 0 ≥ rhs.
    if system.iter().any(|c| c.rhs.is_positive()) {
        return None;
    }

    let mut x: Vec<BigRational> = Vec::with_capacity(n);
    for (k, stage) in stages.iter().enumerate().skip(1) {
        let var = k - 1;
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for c in stage {
            let a = &c.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let rest = c.coeffs[..var]
                .iter()
                .zip(&x)
                .fold(BigRational::zero(), |acc, (ci, xi)| acc + xi * ci);
            let bound = (BigRational::from_integer(c.rhs.clone()) - rest)
                / BigRational::from_integer(a.clone());
            if a.is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        let zero = BigRational::zero();
        let value = match (lo, hi) {
            (Some(l), _) if l > zero => l,
            (_, Some(h)) if h < zero => h,
            _ => zero,
        };
        x.push(value);
    }
    let witness = RationalVector(x);
    debug_assert!((0..a.rows()).all(|i| {
        let v = a.row(i).dot(&witness);
        if strict_rows.contains(&i) {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }));
    Some(witness)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Constraint {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
    history: BTreeSet<usize>,
}

impl Constraint {
    /// `coeffs·x ≥ rhs`, normalized by the positive gcd of all entries.
    fn new(mut coeffs: Vec<BigInt>, mut rhs: BigInt, history: BTreeSet<usize>) -> Self {
        let g = coeffs.iter().fold(rhs.abs(), |g, e| g.gcd(e));
        if !g.is_zero() && !g.is_one() {
            for c in coeffs.iter_mut() {
                *c /= &g;
            }
            rhs /= &g;
        }
        Constraint {
            coeffs,
            rhs,
            history,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(v: &[i64]) -> IntegerVector {
        IntegerVector::from_i64s(v)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalMatrix::identity(2)), 2);
        assert_eq!(rank(&RationalMatrix::zeros(3, 4)), 0);
        let m = RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn rank_handles_fractions() {
        let half = BigRational::new(1.into(), 2.into());
        let m = RationalMatrix::new(
            2,
            2,
            vec![
                half.clone(),
                BigRational::one(),
                BigRational::one(),
                BigRational::from_integer(2.into()),
            ],
        )
        .unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn matrix_shape_is_checked() {
        assert!(RationalMatrix::new(2, 2, vec![BigRational::zero(); 3]).is_err());
    }

    #[test]
    fn solve_nonneg_examples() {
        let strict: BTreeSet<usize> = [0].into_iter().collect();
        let a = RationalMatrix::from_i64_rows(&[&[1]]);
        assert_eq!(
            solve_nonneg(&a, &strict),
            Some(RationalVector::from_i64s(&[1]))
        );

        let both: BTreeSet<usize> = [0, 1].into_iter().collect();
        let a = RationalMatrix::from_i64_rows(&[&[1], &[-1]]);
        assert_eq!(solve_nonneg(&a, &both), None);

        let a = RationalMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[1, -1], &[-1, 1]]);
        let w = solve_nonneg(&a, &strict).unwrap();
        assert_eq!(w, RationalVector::from_i64s(&[1, 1]));
    }

    #[test]
    fn solve_nonneg_without_strict_rows_returns_origin() {
        let a = RationalMatrix::from_i64_rows(&[&[1, 2], &[-3, 1]]);
        assert!(solve_nonneg(&a, &BTreeSet::new()).unwrap().is_zero());
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&iv(&[2, 4, 6])).unwrap(), iv(&[1, 2, 3]));
        assert_eq!(primitive(&iv(&[-3, 0])).unwrap(), iv(&[-1, 0]));
        assert_eq!(primitive(&iv(&[5])).unwrap(), iv(&[1]));
        assert_eq!(primitive(&iv(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn kernel_basis_is_saturated() {
        // x + 2y + 3z = 0 in Z^3: index-one sublattice of rank 2.
        let basis = integer_kernel_basis(&[iv(&[1, 2, 3])], 3);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!(b.dot(&iv(&[1, 2, 3])).is_zero());
        }
        // (2,-1,0) and (3,0,-1) generate the kernel; both must be integer
        // combinations of the returned basis.
        for target in [iv(&[2, -1, 0]), iv(&[3, 0, -1]), iv(&[1, 1, -1])] {
            let y = solve_in_basis(&basis, &target.to_rational()).unwrap();
            assert!(y.entries().iter().all(|q| q.is_integer()), "{target}");
        }
    }

    #[test]
    fn saturated_basis_of_non_primitive_span() {
        let basis = saturated_basis(&[iv(&[2, 2])], 2);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].gcd(), BigInt::one());
        assert_eq!(integer_rank(&[basis[0].clone(), iv(&[1, 1])], 2), 1);
    }

    #[test]
    fn solve_in_basis_rejects_outside_targets() {
        let basis = vec![iv(&[1, 0, 0])];
        assert!(solve_in_basis(&basis, &RationalVector::from_i64s(&[0, 1, 0])).is_none());
        assert_eq!(
            solve_in_basis(&basis, &RationalVector::from_i64s(&[3, 0, 0])).unwrap(),
            RationalVector::from_i64s(&[3])
        );
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-4i64..5, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(rows in small_matrix()) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = RationalMatrix::from_i64_rows(&refs);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn primitive_is_idempotent(v in proptest::collection::vec(-30i64..31, 1..5)) {
            let v = iv(&v);
            prop_assume!(!v.is_zero());
            let p = primitive(&v).unwrap();
            prop_assert_eq!(primitive(&p).unwrap(), p);
        }

        #[test]
        fn nonneg_witness_satisfies_system(
            rows in small_matrix(),
            strict_mask in proptest::collection::vec(any::<bool>(), 5),
        ) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = RationalMatrix::from_i64_rows(&refs);
            let strict: BTreeSet<usize> =
                (0..m.rows()).filter(|&i| strict_mask[i]).collect();
            if let Some(w) = solve_nonneg(&m, &strict) {
                for i in 0..m.rows() {
                    let v = m.row(i).dot(&w);
                    if strict.contains(&i) {
                        prop_assert!(v.is_positive());
                    } else {
                        prop_assert!(!v.is_negative());
                    }
                }
            }
        }

        #[test]
        fn nonneg_feasibility_matches_sampling(rows in small_matrix()) {
            // If some small integer point strictly satisfies every row, the
            // solver must not report infeasibility.
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = RationalMatrix::from_i64_rows(&refs);
            let strict: BTreeSet<usize> = (0..m.rows()).collect();
            let n = m.cols();
            let mut found = false;
            let mut idx = vec![-3i64; n];
            'outer: loop {
                let p = RationalVector::from_i64s(&idx);
                if (0..m.rows()).all(|i| m.row(i).dot(&p).is_positive()) {
                    found = true;
                    break;
                }
                let mut k = 0;
                loop {
                    if k == n { break 'outer; }
                    idx[k] += 1;
                    if idx[k] <= 3 { break; }
                    idx[k] = -3;
                    k += 1;
                }
            }
            if found {
                prop_assert!(solve_nonneg(&m, &strict).is_some());
            }
        }
    }
}
