//! Exact rational LP feasibility: phase-one simplex with Bland's rule.
//!
//! This is the ground-truth oracle for cell nonemptiness and cone membership.
//! Only feasibility (with witness) is exposed; the strict-interior test is
//! reduced to feasibility by homogenization.

use crate::linalg::QVector;
use crate::polytope::UnitBall;
use crate::{Error, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// One row `coeffs . x  (<= | = | >=)  rhs`.
#[derive(Clone, Debug)]
pub struct LinearConstraint<S> {
    pub coeffs: QVector<S>,
    pub relation: Relation,
    pub rhs: S,
}

impl<S: Scalar> LinearConstraint<S> {
    pub fn new(coeffs: QVector<S>, relation: Relation, rhs: S) -> Self {
        LinearConstraint {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn satisfied_by(&self, x: &QVector<S>) -> Result<bool, Error> {
        let lhs = self.coeffs.dot(x)?;
        Ok(match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        })
    }
}

#[derive(Clone, Debug)]
pub struct LinearSystem<S> {
    pub dim: usize,
    pub constraints: Vec<LinearConstraint<S>>,
}

impl<S: Scalar> LinearSystem<S> {
    pub fn new(dim: usize) -> Self {
        LinearSystem {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, c: LinearConstraint<S>) {
        debug_assert_eq!(c.coeffs.dim(), self.dim);
        self.constraints.push(c);
    }

    /// `coeffs . x >= 0`.
    pub fn ge0(&mut self, coeffs: QVector<S>) {
        self.push(LinearConstraint::new(coeffs, Relation::Ge, S::zero()));
    }

    pub fn ge(&mut self, coeffs: QVector<S>, rhs: S) {
        self.push(LinearConstraint::new(coeffs, Relation::Ge, rhs));
    }

    pub fn le(&mut self, coeffs: QVector<S>, rhs: S) {
        self.push(LinearConstraint::new(coeffs, Relation::Le, rhs));
    }

    pub fn eq(&mut self, coeffs: QVector<S>, rhs: S) {
        self.push(LinearConstraint::new(coeffs, Relation::Eq, rhs));
    }

    pub fn satisfied_by(&self, x: &QVector<S>) -> Result<bool, Error> {
        for c in &self.constraints {
            if !c.satisfied_by(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug)]
pub struct FeasibilityResult<S> {
    pub feasible: bool,
    /// Satisfies every constraint exactly when present.
    pub witness: Option<QVector<S>>,
}

/// Exact feasibility of a system over free variables.
///
/// Free variables are split into nonnegative pairs, equalities are kept as
/// two inequalities, and a phase-one simplex with Bland's rule (entering:
/// smallest improving column; leaving: smallest basic index among ratio ties)
/// runs to termination. An empty system is feasible with witness 0.
pub fn feasible<S: Scalar>(sys: &LinearSystem<S>) -> FeasibilityResult<S> {
    let n = sys.dim;
    // Normalize to `coeffs . x <= rhs` rows.
    let mut rows: Vec<(Vec<S>, S)> = Vec::new();
    for c in &sys.constraints {
        let co = c.coeffs.coords();
        match c.relation {
            Relation::Le => rows.push((co.to_vec(), c.rhs.clone())),
            Relation::Ge => rows.push((co.iter().map(|v| -v.clone()).collect(), -c.rhs.clone())),
            Relation::Eq => {
                rows.push((co.to_vec(), c.rhs.clone()));
                rows.push((co.iter().map(|v| -v.clone()).collect(), -c.rhs.clone()));
            }
        }
    }
    let m = rows.len();
    if m == 0 {
        return FeasibilityResult {
            feasible: true,
            witness: Some(QVector::zeros(n)),
        };
    }

    // Columns: u_0..u_{n-1}, w_0..w_{n-1} (x = u - w), slacks, artificials.
    let art_start = 2 * n + m;
    let mut need_art: Vec<bool> = Vec::with_capacity(m);
    for (_, rhs) in &rows {
        need_art.push(rhs < &S::zero());
    }
    let n_art = need_art.iter().filter(|&&b| b).count();
    let width = art_start + n_art + 1;

    let mut tab: Vec<Vec<S>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut next_art = art_start;
    for (i, (coeffs, rhs)) in rows.into_iter().enumerate() {
        let mut row = vec![S::zero(); width];
        let negate = need_art[i];
        for (j, v) in coeffs.into_iter().enumerate() {
            let v = if negate { -v.clone() } else { v.clone() };
            row[n + j] = -v.clone();
            row[j] = v;
        }
        row[2 * n + i] = if negate { -S::one() } else { S::one() };
        row[width - 1] = if negate { -rhs } else { rhs };
        if negate {
            row[next_art] = S::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(2 * n + i);
        }
        tab.push(row);
    }

    loop {
        // Reduced costs of the phase-one objective (minimize artificial sum):
        // sigma_j = sum of tab[i][j] over rows whose basic variable is
        // artificial. Entering: smallest non-artificial j with sigma_j > 0.
        let mut entering = None;
        'cols: for j in 0..art_start {
            let mut sigma = S::zero();
            for (i, row) in tab.iter().enumerate() {
                if basis[i] >= art_start {
                    sigma = sigma + row[j].clone();
                }
            }
            if sigma.is_positive() {
                entering = Some(j);
                break 'cols;
            }
        }
        let Some(j) = entering else {
            break;
        };

        let mut leaving: Option<(usize, S)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[j].is_positive() {
                continue;
            }
            let ratio = row[width - 1].clone() / row[j].clone();
            let better = match &leaving {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leaving = Some((i, ratio));
            }
        }
        let (pivot_row, _) = leaving.expect("phase-one objective is bounded below by zero");

        // Pivot.
        let p = tab[pivot_row][j].clone();
        for v in tab[pivot_row].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_vals = tab[pivot_row].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == pivot_row || row[j].is_zero() {
                continue;
            }
            let factor = row[j].clone();
            for (k, pv) in pivot_vals.iter().enumerate() {
                if pv.is_zero() {
                    continue;
                }
                row[k] = row[k].clone() - factor.clone() * pv.clone();
            }
        }
        basis[pivot_row] = j;
    }

    let residual = tab
        .iter()
        .enumerate()
        .filter(|(i, _)| basis[*i] >= art_start)
        .fold(S::zero(), |acc, (_, row)| acc + row[width - 1].clone());
    if !residual.is_zero() {
        return FeasibilityResult {
            feasible: false,
            witness: None,
        };
    }

    let mut x = vec![S::zero(); n];
    for (i, row) in tab.iter().enumerate() {
        let b = basis[i];
        if b < n {
            x[b] = x[b].clone() + row[width - 1].clone();
        } else if b < 2 * n {
            x[b - n] = x[b - n].clone() - row[width - 1].clone();
        }
    }
    let witness = QVector::new(x);
    debug_assert!(sys.satisfied_by(&witness).unwrap_or(false));
    FeasibilityResult {
        feasible: true,
        witness: Some(witness),
    }
}

/// Whether the system has a solution satisfying every *inequality strictly*
/// (equalities stay exact).
///
/// Decided by pure feasibility on a homogenization: a strict solution of
/// `{Mx >= c (strict), Hx = r}` exists iff `{Mx - c t >= 1, Hx - r t = 0,
/// t >= 1}` is feasible, since positive scalings of `(x, t)` preserve the
/// latter system and `x/t` solves the former.
pub fn strictly_feasible<S: Scalar>(sys: &LinearSystem<S>) -> bool {
    let n = sys.dim;
    let mut h = LinearSystem::new(n + 1);
    for c in &sys.constraints {
        let mut co: Vec<S> = c.coeffs.coords().to_vec();
        co.push(-c.rhs.clone());
        match c.relation {
            Relation::Ge => h.ge(QVector::new(co), S::one()),
            Relation::Le => h.ge(QVector::new(co.into_iter().map(|v| -v).collect()), S::one()),
            Relation::Eq => h.eq(QVector::new(co), S::zero()),
        }
    }
    let mut t_row = vec![S::zero(); n + 1];
    t_row[n] = S::one();
    h.ge(QVector::new(t_row), S::one());
    feasible(&h).feasible
}

/// Whether `x` lies in the conical hull of `generators`.
pub fn cone_member_oracle<S: Scalar>(generators: &[QVector<S>], x: &QVector<S>) -> bool {
    if generators.is_empty() {
        return x.is_zero();
    }
    let d = x.dim();
    let k = generators.len();
    let mut sys = LinearSystem::new(k);
    for c in 0..d {
        let coeffs = QVector::new(
            generators
                .iter()
                .map(|g| {
                    assert_eq!(g.dim(), d, "generator dimension mismatch");
                    g[c].clone()
                })
                .collect(),
        );
        sys.eq(coeffs, x[c].clone());
    }
    for i in 0..k {
        sys.ge0(QVector::unit(k, i));
    }
    feasible(&sys).feasible
}

/// The system whose solutions are the points of the maximal cell labelled
/// `(f, g)` in the bisector of `0` and `a`: facet-cone membership `x in C_F`
/// and `x - a in C_G` plus the equal-distance hyperplane
/// `lambda_F(x) = lambda_G(x - a)`.
pub fn cell_system<S: Scalar>(
    ball: &UnitBall<S>,
    f: usize,
    g: usize,
    a: &QVector<S>,
) -> Result<LinearSystem<S>, Error> {
    let d = ball.dim();
    if a.dim() != d {
        return Err(Error::DimMismatch(a.dim(), d));
    }
    if ball.sum_zero() && !a.sum().is_zero() {
        return Err(Error::NotInHyperplane);
    }
    let scaled_normal = |idx: usize| -> Result<QVector<S>, Error> {
        let facet = ball.facet(idx)?;
        Ok(QVector::new(
            facet
                .normal
                .iter()
                .map(|z| z.clone() / facet.offset.clone())
                .collect(),
        ))
    };
    let lf = scaled_normal(f)?;
    let lg = scaled_normal(g)?;

    let mut sys = LinearSystem::new(d);
    for row in ball.face_cone_halfspaces(f)? {
        sys.ge0(row);
    }
    for row in ball.face_cone_halfspaces(g)? {
        let rhs = row.dot(a)?;
        sys.ge(row, rhs);
    }
    let rhs = -lg.dot(a)?;
    sys.eq(&lf - &lg, rhs);
    if ball.sum_zero() {
        sys.eq(QVector::new(vec![S::one(); d]), S::zero());
    }
    Ok(sys)
}

/// Whether the maximal cell labelled `(f, g)` of the bisector of `0` and `a`
/// is nonempty, decided exactly by LP feasibility.
pub fn cell_nonempty_oracle<S: Scalar>(
    ball: &UnitBall<S>,
    f: usize,
    g: usize,
    a: &QVector<S>,
) -> Result<bool, Error> {
    Ok(feasible(&cell_system(ball, f, g, a)?).feasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::QMatrix;
    use crate::sample::Rng;
    use crate::{rat, QVec, Rat};
    use num_traits::Zero;

    fn qv(entries: &[i64]) -> QVec {
        QVector::from_ints(entries)
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let mut sys = LinearSystem::<Rat>::new(1);
        sys.ge(qv(&[1]), rat(1, 1).unwrap());
        sys.le(qv(&[1]), Rat::zero());
        assert!(!feasible(&sys).feasible);
    }

    #[test]
    fn simplex_on_standard_simplex() {
        let mut sys = LinearSystem::<Rat>::new(2);
        sys.eq(qv(&[1, 1]), rat(1, 1).unwrap());
        sys.ge0(qv(&[1, 0]));
        sys.ge0(qv(&[0, 1]));
        let res = feasible(&sys);
        assert!(res.feasible);
        let w = res.witness.unwrap();
        assert!(sys.satisfied_by(&w).unwrap());
    }

    #[test]
    fn empty_system_is_feasible_at_zero() {
        let sys = LinearSystem::<Rat>::new(3);
        let res = feasible(&sys);
        assert!(res.feasible);
        assert_eq!(res.witness.unwrap(), QVec::zeros(3));
    }

    #[test]
    fn strict_feasibility_distinguishes_thin_sets() {
        // {x >= 0, x <= 0} is feasible but has no strict point.
        let mut sys = LinearSystem::<Rat>::new(1);
        sys.ge0(qv(&[1]));
        sys.le(qv(&[1]), Rat::zero());
        assert!(feasible(&sys).feasible);
        assert!(!strictly_feasible(&sys));

        // {x >= 0, x <= 1} has plenty of interior.
        let mut open = LinearSystem::<Rat>::new(1);
        open.ge0(qv(&[1]));
        open.le(qv(&[1]), rat(1, 1).unwrap());
        assert!(strictly_feasible(&open));

        // Inhomogeneous: x + y = 5 inside the positive quadrant.
        let mut mixed = LinearSystem::<Rat>::new(2);
        mixed.ge0(qv(&[1, 0]));
        mixed.ge0(qv(&[0, 1]));
        mixed.eq(qv(&[1, 1]), rat(5, 1).unwrap());
        assert!(strictly_feasible(&mixed));
    }

    #[test]
    fn cone_membership_examples() {
        let gens = vec![qv(&[1, 0]), qv(&[0, 1])];
        assert!(cone_member_oracle(&gens, &qv(&[2, 3])));
        assert!(!cone_member_oracle(&gens, &qv(&[-1, 0])));
        assert!(cone_member_oracle(&gens, &qv(&[0, 0])));
    }

    /// Brute-force feasibility for bounded systems: a nonempty bounded
    /// polyhedron has a vertex, and every vertex solves some dim-subset of
    /// the constraints as equalities.
    fn feasible_by_vertex_enumeration(sys: &LinearSystem<Rat>) -> bool {
        let n = sys.dim;
        let rows: Vec<(&QVec, Rat)> = sys
            .constraints
            .iter()
            .map(|c| (&c.coeffs, c.rhs.clone()))
            .collect();
        let m = rows.len();
        let mut idx = vec![0usize; n];
        fn rec(
            sys: &LinearSystem<Rat>,
            rows: &[(&QVec, Rat)],
            idx: &mut Vec<usize>,
            depth: usize,
            start: usize,
            n: usize,
            m: usize,
        ) -> bool {
            if depth == n {
                let a =
                    QMatrix::from_rows(idx.iter().map(|&i| rows[i].0.clone()).collect()).unwrap();
                let b = QVector::new(idx.iter().map(|&i| rows[i].1.clone()).collect());
                if let Ok(crate::LinearSolution::Unique(x)) = crate::solve_linear(&a, &b) {
                    if sys.satisfied_by(&x).unwrap() {
                        return true;
                    }
                }
                return false;
            }
            for i in start..m {
                idx[depth] = i;
                if rec(sys, rows, idx, depth + 1, i + 1, n, m) {
                    return true;
                }
            }
            false
        }
        rec(sys, &rows, &mut idx, 0, 0, n, m)
    }

    #[test]
    fn simplex_matches_vertex_enumeration_on_random_boxes() {
        let mut rng = Rng::new(2024);
        for case in 0..120 {
            let n = 1 + (case % 3);
            let mut sys = LinearSystem::<Rat>::new(n);
            // Bounding box keeps the brute-force oracle sound.
            for k in 0..n {
                let mut hi = vec![0i64; n];
                hi[k] = 1;
                sys.le(qv(&hi), rat(10, 1).unwrap());
                sys.ge(qv(&hi), rat(-10, 1).unwrap());
            }
            let extra = 1 + rng.next_below(4) as usize;
            for _ in 0..extra {
                let coeffs: Vec<i64> = (0..n).map(|_| rng.next_range(-3, 3)).collect();
                let rhs = rat(rng.next_range(-6, 6), 1).unwrap();
                match rng.next_below(3) {
                    0 => sys.le(qv(&coeffs), rhs),
                    1 => sys.ge(qv(&coeffs), rhs),
                    _ => sys.eq(qv(&coeffs), rhs),
                }
            }
            let fast = feasible(&sys);
            let slow = feasible_by_vertex_enumeration(&sys);
            assert_eq!(fast.feasible, slow, "disagreement on case {case}");
            if let Some(w) = fast.witness {
                assert!(sys.satisfied_by(&w).unwrap(), "inexact witness");
            }
        }
    }

    #[test]
    fn cell_oracle_examples() {
        use crate::polytope::UnitBall;
        use crate::Sign;

        // Square norm ball: exactly 3 nonempty pairs for a generic site.
        let square = UnitBall::<Rat>::cross_polytope(2).unwrap();
        let a = qv(&[3, 1]);
        let mut nonempty = 0;
        for f in 0..square.num_facets() {
            for g in 0..square.num_facets() {
                if cell_nonempty_oracle(&square, f, g, &a).unwrap() {
                    nonempty += 1;
                }
            }
        }
        assert_eq!(nonempty, 3);

        // (F, F) is empty whenever the site misses the facet hyperplane.
        let cube = UnitBall::<Rat>::cube(3).unwrap();
        let f = cube.cube_facet_index(0, Sign::Plus);
        assert!(!cell_nonempty_oracle(&cube, f, f, &qv(&[3, 1, -1])).unwrap());

        // Opposite facets: the cell is present iff the site is in C_F.
        let f_minus = cube.cube_facet_index(0, Sign::Minus);
        assert!(cell_nonempty_oracle(&cube, f, f_minus, &qv(&[3, 1, -1])).unwrap());
    }

    #[test]
    fn cell_oracle_translation_symmetry() {
        use crate::polytope::UnitBall;
        let ball = UnitBall::<Rat>::cross_polytope(3).unwrap();
        let mut rng = Rng::new(5);
        for _ in 0..6 {
            let a = crate::sample::sample_site(&ball, 9, &mut rng);
            if a.is_zero() {
                continue;
            }
            let f = rng.next_below(ball.num_facets() as u64) as usize;
            let g = rng.next_below(ball.num_facets() as u64) as usize;
            assert_eq!(
                cell_nonempty_oracle(&ball, f, g, &a).unwrap(),
                cell_nonempty_oracle(&ball, g, f, &(-&a)).unwrap()
            );
        }
    }
}
