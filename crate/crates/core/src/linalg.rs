//! Exact vectors, matrices and fraction-free Gaussian elimination.

use std::ops::{Add, Index, Neg, Sub};

use crate::{Error, Scalar};

/// A coordinate vector with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector<S> {
    coords: Vec<S>,
}

impl<S: Scalar> QVector<S> {
    pub fn new(coords: Vec<S>) -> Self {
        QVector { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        QVector {
            coords: vec![S::zero(); dim],
        }
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        QVector {
            coords: entries.iter().map(|&n| S::from_int(n)).collect(),
        }
    }

    /// Standard basis vector `e_k`.
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[k] = S::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &Self) -> Result<S, Error> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    pub fn scale(&self, c: &S) -> Self {
        QVector {
            coords: self.coords.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn sum(&self) -> S {
        self.coords.iter().fold(S::zero(), |acc, x| acc + x.clone())
    }

    /// Canonical representative of the ray spanned by a nonzero vector.
    pub fn primitive(&self) -> Self {
        QVector {
            coords: S::primitive_ray(&self.coords),
        }
    }
}

impl<S> Index<usize> for QVector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.coords[i]
    }
}

impl<S: Scalar> Add for &QVector<S> {
    type Output = QVector<S>;
    fn add(self, other: &QVector<S>) -> QVector<S> {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        QVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Sub for &QVector<S> {
    type Output = QVector<S>;
    fn sub(self, other: &QVector<S>) -> QVector<S> {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        QVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Neg for &QVector<S> {
    type Output = QVector<S>;
    fn neg(self) -> QVector<S> {
        QVector {
            coords: self.coords.iter().map(|a| -a.clone()).collect(),
        }
    }
}

/// A rectangular matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix<S> {
    rows: Vec<QVector<S>>,
    ncols: usize,
}

impl<S: Scalar> QMatrix<S> {
    pub fn from_rows(rows: Vec<QVector<S>>) -> Result<Self, Error> {
        let ncols = rows.first().map_or(0, |r| r.dim());
        for r in &rows {
            if r.dim() != ncols {
                return Err(Error::DimMismatch(r.dim(), ncols));
            }
        }
        Ok(QMatrix { rows, ncols })
    }

    pub fn identity(n: usize) -> Self {
        QMatrix {
            rows: (0..n).map(|k| QVector::unit(n, k)).collect(),
            ncols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &QVector<S> {
        &self.rows[i]
    }

    pub fn mul_vec(&self, v: &QVector<S>) -> Result<QVector<S>, Error> {
        let coords = self
            .rows
            .iter()
            .map(|r| r.dot(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QVector::new(coords))
    }

    pub fn rank(&self) -> usize {
        let mut aug: Vec<Vec<S>> = self.rows.iter().map(|r| r.coords().to_vec()).collect();
        eliminate(&mut aug, self.ncols).pivots.len()
    }

    /// Determinant of a square matrix via Bareiss elimination.
    pub fn determinant(&self) -> Result<S, Error> {
        if self.nrows() != self.ncols {
            return Err(Error::DimMismatch(self.nrows(), self.ncols));
        }
        let mut aug: Vec<Vec<S>> = self.rows.iter().map(|r| r.coords().to_vec()).collect();
        let outcome = eliminate(&mut aug, self.ncols);
        if outcome.pivots.len() < self.ncols {
            return Ok(S::zero());
        }
        // Fraction-free elimination leaves the determinant as the last pivot.
        let last = *outcome.pivots.last().expect("square full-rank matrix");
        let det = aug[self.ncols - 1][last].clone();
        Ok(if outcome.swaps.is_multiple_of(2) {
            det
        } else {
            -det
        })
    }
}

/// Outcome of `solve_linear`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution<S> {
    Unique(QVector<S>),
    NoSolution,
    Underdetermined,
}

struct Elimination {
    /// Pivot column per pivot row, strictly increasing.
    pivots: Vec<usize>,
    swaps: usize,
}

/// Fraction-free (Bareiss) forward elimination on the leading `ncols`
/// columns; any extra columns ride along as right-hand sides.
fn eliminate<S: Scalar>(aug: &mut [Vec<S>], ncols: usize) -> Elimination {
    let m = aug.len();
    let width = aug.first().map_or(0, |r| r.len());
    let mut prev = S::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            aug.swap(p, r);
            swaps += 1;
        }
        for i in r + 1..m {
            for j in c + 1..width {
                let num =
                    aug[r][c].clone() * aug[i][j].clone() - aug[i][c].clone() * aug[r][j].clone();
                aug[i][j] = num / prev.clone();
            }
            aug[i][c] = S::zero();
        }
        prev = aug[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Elimination { pivots, swaps }
}

/// Solves `A x = b` exactly, reporting rank deficiency.
pub fn solve_linear<S: Scalar>(a: &QMatrix<S>, b: &QVector<S>) -> Result<LinearSolution<S>, Error> {
    if a.nrows() != b.dim() {
        return Err(Error::DimMismatch(a.nrows(), b.dim()));
    }
    let n = a.ncols();
    let mut aug: Vec<Vec<S>> = a
        .rows
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut v = row.coords().to_vec();
            v.push(rhs.clone());
            v
        })
        .collect();
    let outcome = eliminate(&mut aug, n);
    let rank = outcome.pivots.len();
    for row in aug.iter().skip(rank) {
        if row[..n].iter().all(|x| x.is_zero()) && !row[n].is_zero() {
            return Ok(LinearSolution::NoSolution);
        }
    }
    if rank < n {
        return Ok(LinearSolution::Underdetermined);
    }
    // Full column rank: pivots sit on the diagonal of the first n rows.
    let mut x = vec![S::zero(); n];
    for r in (0..n).rev() {
        let mut acc = aug[r][n].clone();
        for (j, xj) in x.iter().enumerate().skip(r + 1) {
            acc = acc - aug[r][j].clone() * xj.clone();
        }
        x[r] = acc / aug[r][r].clone();
    }
    Ok(LinearSolution::Unique(QVector::new(x)))
}

/// Cross product of two 3-vectors.
pub fn cross3<S: Scalar>(u: &QVector<S>, v: &QVector<S>) -> QVector<S> {
    assert_eq!(u.dim(), 3);
    assert_eq!(v.dim(), 3);
    QVector::new(vec![
        u[1].clone() * v[2].clone() - u[2].clone() * v[1].clone(),
        u[2].clone() * v[0].clone() - u[0].clone() * v[2].clone(),
        u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone(),
    ])
}

/// 2x2 determinant `u.x v.y - u.y v.x` of two plane vectors.
pub fn cross2<S: Scalar>(u: &QVector<S>, v: &QVector<S>) -> S {
    assert_eq!(u.dim(), 2);
    assert_eq!(v.dim(), 2);
    u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, QMat, QVec, Rat};
    use num_traits::Zero;

    fn qv(entries: &[i64]) -> QVec {
        QVector::from_ints(entries)
    }

    #[test]
    fn dot_examples() {
        assert_eq!(qv(&[1, 2]).dot(&qv(&[3, 4])).unwrap(), rat(11, 1).unwrap());
        assert_eq!(qv(&[5, -7]).dot(&qv(&[0, 0])).unwrap(), rat(0, 1).unwrap());
        let u = QVec::new(vec![rat(1, 2).unwrap(), rat(1, 3).unwrap()]);
        assert_eq!(u.dot(&qv(&[2, 3])).unwrap(), rat(2, 1).unwrap());
        assert_eq!(
            qv(&[1, 2]).dot(&qv(&[1, 2, 3])),
            Err(Error::DimMismatch(2, 3))
        );
    }

    #[test]
    fn solve_identity() {
        let a = QMat::identity(2);
        let sol = solve_linear(&a, &qv(&[3, 5])).unwrap();
        assert_eq!(sol, LinearSolution::Unique(qv(&[3, 5])));
    }

    #[test]
    fn solve_inconsistent_and_rank_deficient() {
        let a = QMat::from_rows(vec![qv(&[1, 1]), qv(&[1, 1])]).unwrap();
        assert_eq!(
            solve_linear(&a, &qv(&[1, 2])).unwrap(),
            LinearSolution::NoSolution
        );
        assert_eq!(
            solve_linear(&a, &qv(&[1, 1])).unwrap(),
            LinearSolution::Underdetermined
        );
    }

    #[test]
    fn solve_rectangular_consistent() {
        // Three consistent equations in two unknowns.
        let a = QMat::from_rows(vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])]).unwrap();
        let sol = solve_linear(&a, &qv(&[2, -1, 1])).unwrap();
        assert_eq!(sol, LinearSolution::Unique(qv(&[2, -1])));
    }

    #[test]
    fn determinant_and_rank() {
        let a = QMat::from_rows(vec![qv(&[2, 1]), qv(&[1, 1])]).unwrap();
        assert_eq!(a.determinant().unwrap(), rat(1, 1).unwrap());
        assert_eq!(a.rank(), 2);
        let b = QMat::from_rows(vec![qv(&[1, 2]), qv(&[2, 4])]).unwrap();
        assert_eq!(b.determinant().unwrap(), Rat::zero());
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn solve_round_trip_random() {
        let mut rng = crate::sample::Rng::new(7);
        for _ in 0..40 {
            let n = 1 + (rng.next_below(4) as usize);
            let mut rows = Vec::new();
            for _ in 0..n {
                rows.push(QVec::new(
                    (0..n)
                        .map(|_| Rat::from_int(rng.next_range(-9, 9)))
                        .collect(),
                ));
            }
            let a = QMat::from_rows(rows).unwrap();
            if a.rank() < n {
                continue;
            }
            let x = QVec::new(
                (0..n)
                    .map(|_| Rat::from_int(rng.next_range(-9, 9)))
                    .collect(),
            );
            let b = a.mul_vec(&x).unwrap();
            assert_eq!(
                solve_linear(&a, &b).unwrap(),
                LinearSolution::Unique(x.clone())
            );
        }
    }
}
