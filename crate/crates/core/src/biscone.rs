//! Bisection cones `B_{F,G}`: the set of site directions `a` for which the
//! bisector of `0` and `a` has a nonempty maximal cell labelled `(F, G)`.
//!
//! Three independent descriptions are implemented and cross-checked in
//! tests: the conical hull of vertex differences `v - u`, membership in the
//! homogenization sum `homog(F) + (-homog(G))` sliced at height zero, and
//! per-family closed-form inequality systems.

use std::collections::BTreeSet;

use crate::linalg::{cross2, QMatrix, QVector};
use crate::lp::{cone_member_oracle, LinearConstraint, Relation};
use crate::polytope::{Family, UnitBall, MAX_BITMASK_DIM};
use crate::scalar::Sign;
use crate::{Error, Scalar};

/// A polyhedral cone by generators, optionally carrying halfspace rows
/// (relation `>=` with rhs 0, or equations) when they are known.
#[derive(Clone, Debug)]
pub struct Cone<S> {
    pub dim: usize,
    pub generators: Vec<QVector<S>>,
    pub halfspaces: Option<Vec<LinearConstraint<S>>>,
}

impl<S: Scalar> Cone<S> {
    /// Exact membership in the conical hull of the generators.
    pub fn contains(&self, x: &QVector<S>) -> bool {
        cone_member_oracle(&self.generators, x)
    }

    /// Linear dimension of the cone's span.
    pub fn rank(&self) -> usize {
        if self.generators.is_empty() {
            return 0;
        }
        QMatrix::from_rows(self.generators.clone())
            .expect("generators share the ambient dimension")
            .rank()
    }
}

/// An ordered facet pair labelling one maximal cell.
pub type FacetPair = (usize, usize);

/// Generator description of `B_{F,G}`: the differences `v - u` over vertices
/// `v` of `F` and `u` of `G`, zero differences dropped. For `F = G` the
/// hyperplane `z_F . x = 0` is attached as halfspace data.
pub fn bisection_cone_rays<S: Scalar>(
    ball: &UnitBall<S>,
    f: usize,
    g: usize,
) -> Result<Cone<S>, Error> {
    let vf = ball.facet_vertices(f)?;
    let vg = ball.facet_vertices(g)?;
    let mut gens: BTreeSet<QVector<S>> = BTreeSet::new();
    for v in &vf {
        for u in &vg {
            let diff = *v - *u;
            if !diff.is_zero() {
                gens.insert(diff);
            }
        }
    }
    let halfspaces = if f == g {
        let facet = ball.facet(f)?;
        Some(vec![LinearConstraint::new(
            facet.normal.clone(),
            Relation::Eq,
            S::zero(),
        )])
    } else {
        None
    };
    Ok(Cone {
        dim: ball.dim(),
        generators: gens.into_iter().collect(),
        halfspaces,
    })
}

/// Membership of `(x, 0)` in `homog(F) + (-homog(G))`, decided by an LP over
/// the lifted facet vertices `(v, 1)` and `(-u, -1)`.
pub fn homog_membership<S: Scalar>(
    ball: &UnitBall<S>,
    f: usize,
    g: usize,
    x: &QVector<S>,
) -> Result<bool, Error> {
    if x.dim() != ball.dim() {
        return Err(Error::DimMismatch(x.dim(), ball.dim()));
    }
    let mut lifted = Vec::new();
    for v in ball.facet_vertices(f)? {
        let mut coords = v.coords().to_vec();
        coords.push(S::one());
        lifted.push(QVector::new(coords));
    }
    for u in ball.facet_vertices(g)? {
        let mut coords: Vec<S> = u.iter().map(|c| -c.clone()).collect();
        coords.push(-S::one());
        lifted.push(QVector::new(coords));
    }
    let mut target = x.coords().to_vec();
    target.push(S::zero());
    Ok(cone_member_oracle(&lifted, &QVector::new(target)))
}

/// Membership of `x` in the planar cone spanned by `g1` and `g2`, by two
/// 2x2 determinant sign tests.
pub(crate) fn plane_cone_contains<S: Scalar>(
    g1: &QVector<S>,
    g2: &QVector<S>,
    x: &QVector<S>,
) -> bool {
    let det = cross2(g1, g2);
    if det.is_zero() {
        // Parallel generators: a ray (same direction) or a line (opposite).
        if cross2(g1, x).is_zero() {
            let same_direction = g1.dot(g2).expect("dim 2").is_positive();
            return !same_direction || !g1.dot(x).expect("dim 2").is_negative();
        }
        return false;
    }
    let alpha = cross2(x, g2);
    let beta = cross2(g1, x);
    if det.is_positive() {
        !alpha.is_negative() && !beta.is_negative()
    } else {
        !alpha.is_positive() && !beta.is_positive()
    }
}

/// Closed form for polygons: `B_{i,j} = cone(v_i - v_j, v_{i+1} - v_{j+1})`
/// for `i != j` and the line through `v_{i+1} - v_i` for `i = j`, decided by
/// 2x2 determinant signs.
pub fn polygon_cone_contains<S: Scalar>(
    ball: &UnitBall<S>,
    i: usize,
    j: usize,
    x: &QVector<S>,
) -> Result<bool, Error> {
    if ball.family() != Family::Polygon {
        return Err(Error::BadInput(
            "polygon_cone_contains needs a polygon ball".into(),
        ));
    }
    if x.dim() != 2 {
        return Err(Error::DimMismatch(x.dim(), 2));
    }
    let m = ball.vertices().len();
    ball.facet(i)?;
    ball.facet(j)?;
    let v = |k: usize| &ball.vertices()[k % m];
    if i == j {
        let edge = v(i + 1) - v(i);
        return Ok(cross2(&edge, x).is_zero());
    }
    let g1 = v(i) - v(j);
    let g2 = v(i + 1) - v(j + 1);
    Ok(plane_cone_contains(&g1, &g2, x))
}

/// Closed form for the cube: sign tests for `i != j`, the facet cone for
/// `i = j` with opposite signs, and the hyperplane `a_i = 0` for identical
/// facets.
pub fn cube_cone_contains<S: Scalar>(
    dim: usize,
    i: usize,
    sign_i: Sign,
    j: usize,
    sign_j: Sign,
    a: &QVector<S>,
) -> Result<bool, Error> {
    if i >= dim {
        return Err(Error::BadFacet(i));
    }
    if j >= dim {
        return Err(Error::BadFacet(j));
    }
    if a.dim() != dim {
        return Err(Error::DimMismatch(a.dim(), dim));
    }
    if i != j {
        let first = sign_i.apply(a[i].clone());
        let second = sign_j.flip().apply(a[j].clone());
        return Ok(!first.is_negative() && !second.is_negative());
    }
    if sign_i != sign_j {
        // C_{F_i^{sign_i}}: the signed coordinate dominates all others.
        let lead = sign_i.apply(a[i].clone());
        return Ok((0..dim).all(|k| k == i || lead >= a[k].abs()));
    }
    Ok(a[i].is_zero())
}

/// Sum of the coordinates selected by `mask`.
pub fn subset_sum<S: Scalar>(coords: &[S], mask: u32) -> S {
    let mut acc = S::zero();
    let mut m = mask;
    while m != 0 {
        let k = m.trailing_zeros() as usize;
        acc = acc + coords[k].clone();
        m &= m - 1;
    }
    acc
}

/// All `2^d` subset sums of a coordinate vector, for batch membership tests.
pub struct SubsetSumTable<S> {
    sums: Vec<S>,
}

impl<S: Scalar> SubsetSumTable<S> {
    pub fn new(coords: &[S]) -> Self {
        let d = coords.len();
        assert!(d <= MAX_BITMASK_DIM);
        let mut sums = Vec::with_capacity(1 << d);
        sums.push(S::zero());
        for mask in 1u32..1 << d {
            let k = mask.trailing_zeros() as usize;
            let rest = sums[(mask & (mask - 1)) as usize].clone();
            sums.push(rest + coords[k].clone());
        }
        SubsetSumTable { sums }
    }

    pub fn get(&self, mask: u32) -> &S {
        &self.sums[mask as usize]
    }
}

fn check_mask(dim: usize, mask: u32) -> Result<(), Error> {
    if dim > MAX_BITMASK_DIM {
        return Err(Error::CapExceeded(dim, MAX_BITMASK_DIM));
    }
    if u64::from(mask) >= 1u64 << dim {
        return Err(Error::BadFacet(mask as usize));
    }
    Ok(())
}

fn coords_nonneg_on<S: Scalar>(coords: &[S], mask: u32) -> bool {
    let mut m = mask;
    while m != 0 {
        let k = m.trailing_zeros() as usize;
        if coords[k].is_negative() {
            return false;
        }
        m &= m - 1;
    }
    true
}

fn coords_nonpos_on<S: Scalar>(coords: &[S], mask: u32) -> bool {
    let mut m = mask;
    while m != 0 {
        let k = m.trailing_zeros() as usize;
        if coords[k].is_positive() {
            return false;
        }
        m &= m - 1;
    }
    true
}

pub(crate) fn cross_membership_with<S: Scalar>(
    dim: usize,
    i_mask: u32,
    j_mask: u32,
    coords: &[S],
    sum: &impl Fn(u32) -> S,
) -> bool {
    let full = ((1u64 << dim) - 1) as u32;
    coords_nonneg_on(coords, i_mask & !j_mask & full)
        && coords_nonpos_on(coords, j_mask & !i_mask & full)
        && sum(j_mask) <= sum(!j_mask & full)
        && sum(!i_mask & full) <= sum(i_mask)
}

/// Closed form for the cross-polytope (`I, J` as bitmasks, any subsets):
/// nonnegativity on `I \ J`, nonpositivity on `J \ I`, `a(J) <= a(J^c)` and
/// `a(I^c) <= a(I)`.
pub fn cross_cone_contains<S: Scalar>(
    dim: usize,
    i_mask: u32,
    j_mask: u32,
    a: &QVector<S>,
) -> Result<bool, Error> {
    check_mask(dim, i_mask)?;
    check_mask(dim, j_mask)?;
    if a.dim() != dim {
        return Err(Error::DimMismatch(a.dim(), dim));
    }
    let coords = a.coords();
    Ok(cross_membership_with(dim, i_mask, j_mask, coords, &|m| {
        subset_sum(coords, m)
    }))
}

pub(crate) fn wasserstein_membership_with<S: Scalar>(
    dim: usize,
    i_mask: u32,
    j_mask: u32,
    coords: &[S],
    sum: &impl Fn(u32) -> S,
    pos_mask: u32,
    neg_mask: u32,
) -> bool {
    let full = ((1u64 << dim) - 1) as u32;
    let inter = i_mask & j_mask;
    let outer = !i_mask & !j_mask & full;
    if inter != 0 && outer != 0 {
        // Both overlaps nonempty: sign conditions plus a(I) >= 0 >= a(J).
        coords_nonneg_on(coords, i_mask & !j_mask)
            && coords_nonpos_on(coords, j_mask & !i_mask)
            && !sum(i_mask).is_negative()
            && !sum(j_mask).is_positive()
    } else if inter == 0 && outer != 0 {
        // Disjoint pair: the quantified conditions `a(J) <= a(K)` and
        // `a(K) <= a(I)` over K inside the outer block collapse to the
        // negative- and positive-support extremes.
        coords_nonneg_on(coords, i_mask)
            && coords_nonpos_on(coords, j_mask)
            && sum(j_mask) <= sum(outer & neg_mask)
            && sum(outer & pos_mask) <= sum(i_mask)
    } else if inter != 0 && outer == 0 {
        coords_nonneg_on(coords, !j_mask & full)
            && coords_nonpos_on(coords, !i_mask & full)
            && sum(inter & pos_mask) <= sum(!j_mask & full)
            && sum(!i_mask & full) <= sum(inter & neg_mask)
    } else {
        // J = I^c: the opposite-facet case, a full facet cone.
        coords_nonneg_on(coords, i_mask) && coords_nonpos_on(coords, j_mask)
    }
}

/// Closed form for the root-polytope (discrete Wasserstein) bisection cone,
/// `I, J` proper nonempty bitmasks, `a` on the sum-zero hyperplane.
pub fn wasserstein_cone_contains<S: Scalar>(
    dim: usize,
    i_mask: u32,
    j_mask: u32,
    a: &QVector<S>,
) -> Result<bool, Error> {
    check_mask(dim, i_mask)?;
    check_mask(dim, j_mask)?;
    let full = ((1u64 << dim) - 1) as u32;
    if i_mask == 0 || i_mask == full {
        return Err(Error::BadFacet(i_mask as usize));
    }
    if j_mask == 0 || j_mask == full {
        return Err(Error::BadFacet(j_mask as usize));
    }
    if a.dim() != dim {
        return Err(Error::DimMismatch(a.dim(), dim));
    }
    if !a.sum().is_zero() {
        return Err(Error::NotInHyperplane);
    }
    let coords = a.coords();
    let (pos_mask, neg_mask) = support_masks(coords);
    Ok(wasserstein_membership_with(
        dim,
        i_mask,
        j_mask,
        coords,
        &|m| subset_sum(coords, m),
        pos_mask,
        neg_mask,
    ))
}

/// Bitmasks of strictly positive and strictly negative coordinates.
pub fn support_masks<S: Scalar>(coords: &[S]) -> (u32, u32) {
    let mut pos = 0u32;
    let mut neg = 0u32;
    for (k, c) in coords.iter().enumerate() {
        if c.is_positive() {
            pos |= 1 << k;
        } else if c.is_negative() {
            neg |= 1 << k;
        }
    }
    (pos, neg)
}

/// Family dispatch: the closed form where one exists, the homogenization LP
/// for general balls.
pub fn closed_form_membership<S: Scalar>(
    ball: &UnitBall<S>,
    f: usize,
    g: usize,
    a: &QVector<S>,
) -> Result<bool, Error> {
    ball.facet(f)?;
    ball.facet(g)?;
    match ball.family() {
        Family::Polygon => polygon_cone_contains(ball, f, g, a),
        Family::Cube => {
            let (i, si) = ball.cube_facet_of(f);
            let (j, sj) = ball.cube_facet_of(g);
            cube_cone_contains(ball.dim(), i, si, j, sj, a)
        }
        Family::CrossPolytope => cross_cone_contains(
            ball.dim(),
            ball.facet_subset_mask(f),
            ball.facet_subset_mask(g),
            a,
        ),
        Family::RootPolytopeA => wasserstein_cone_contains(
            ball.dim(),
            ball.facet_subset_mask(f),
            ball.facet_subset_mask(g),
            a,
        ),
        Family::General => homog_membership(ball, f, g, a),
    }
}

/// Image of a cone under an invertible linear map: generators are mapped,
/// halfspace data is dropped.
pub fn apply_linear_iso<S: Scalar>(cone: &Cone<S>, m: &QMatrix<S>) -> Result<Cone<S>, Error> {
    if m.nrows() != cone.dim || m.ncols() != cone.dim {
        return Err(Error::DimMismatch(m.nrows(), cone.dim));
    }
    if m.rank() < cone.dim {
        return Err(Error::SingularMap);
    }
    let generators = cone
        .generators
        .iter()
        .map(|g| m.mul_vec(g))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Cone {
        dim: cone.dim,
        generators,
        halfspaces: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QVec, Rat};

    fn qv(entries: &[i64]) -> QVec {
        QVector::from_ints(entries)
    }

    fn square() -> UnitBall<Rat> {
        UnitBall::polygon(vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[-1, 0]), qv(&[0, -1])]).unwrap()
    }

    #[test]
    fn square_opposite_facets_give_the_quadrant() {
        let ball = square();
        let cone = bisection_cone_rays(&ball, 0, 2).unwrap();
        assert!(cone.generators.contains(&qv(&[2, 0])));
        assert!(cone.generators.contains(&qv(&[0, 2])));
        assert!(cone.contains(&qv(&[3, 1])));
        assert!(!cone.contains(&qv(&[-1, 3])));
        assert!(polygon_cone_contains(&ball, 0, 2, &qv(&[3, 1])).unwrap());
        assert!(!polygon_cone_contains(&ball, 0, 2, &qv(&[-1, -1])).unwrap());
    }

    #[test]
    fn diagonal_cone_equals_facet_cone() {
        // B_{F,-F} = C_F: on the square, facet 0 = conv{v1, v2}.
        let ball = square();
        let opp = ball.opposite_facet(0).unwrap();
        let cone = bisection_cone_rays(&ball, 0, opp).unwrap();
        for x in [qv(&[1, 1]), qv(&[1, 2]), qv(&[2, 1])] {
            assert!(cone.contains(&x));
            assert!(ball.face_cone_of(&x).unwrap().contains(&0));
        }
        assert!(!cone.contains(&qv(&[2, -1])));
    }

    #[test]
    fn same_facet_cone_is_the_facet_hyperplane() {
        let ball = square();
        let cone = bisection_cone_rays(&ball, 0, 0).unwrap();
        assert_eq!(cone.rank(), 1);
        // Both directions of the edge line are members.
        let edge = qv(&[-1, 1]);
        assert!(cone.contains(&edge));
        assert!(cone.contains(&-&edge));
        assert!(polygon_cone_contains(&ball, 0, 0, &edge).unwrap());
        assert!(polygon_cone_contains(&ball, 0, 0, &qv(&[5, -5])).unwrap());
        assert!(!polygon_cone_contains(&ball, 0, 0, &qv(&[1, 1])).unwrap());
    }

    #[test]
    fn homog_membership_matches_rays_on_square() {
        let ball = square();
        let pts = [qv(&[3, 1]), qv(&[-2, 5]), qv(&[0, -4]), qv(&[1, 1])];
        for f in 0..4 {
            for g in 0..4 {
                let cone = bisection_cone_rays(&ball, f, g).unwrap();
                for x in &pts {
                    assert_eq!(
                        homog_membership(&ball, f, g, x).unwrap(),
                        cone.contains(x),
                        "pair ({f},{g}), point {x:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn cube_cases() {
        // i != j: two sign tests.
        assert!(cube_cone_contains(3, 0, Sign::Plus, 1, Sign::Minus, &qv(&[2, 1, -1])).unwrap());
        // i = j with opposite signs: the facet cone.
        assert!(cube_cone_contains(3, 0, Sign::Plus, 0, Sign::Minus, &qv(&[3, 1, -1])).unwrap());
        assert!(!cube_cone_contains(3, 0, Sign::Plus, 0, Sign::Minus, &qv(&[1, 3, -1])).unwrap());
        // Identical facets: the coordinate hyperplane.
        assert!(!cube_cone_contains(3, 0, Sign::Plus, 0, Sign::Plus, &qv(&[2, 1, -1])).unwrap());
        assert!(cube_cone_contains(3, 0, Sign::Plus, 0, Sign::Plus, &qv(&[0, 1, -1])).unwrap());
    }

    #[test]
    fn cross_cases() {
        // I = {1}, J = {3} (masks 0b001, 0b100).
        assert!(cross_cone_contains(3, 0b001, 0b100, &qv(&[5, 1, -2])).unwrap());
        // I = J forces a(I) = a(I^c).
        assert!(!cross_cone_contains(3, 0b011, 0b011, &qv(&[5, 1, -2])).unwrap());
        assert!(cross_cone_contains(3, 0b010, 0b010, &qv(&[3, 1, -2])).unwrap());
        // I = [d], J = {} with a nonnegative.
        assert!(cross_cone_contains(3, 0b111, 0b000, &qv(&[2, 1, 0])).unwrap());
        assert!(!cross_cone_contains(3, 0b111, 0b000, &qv(&[2, -1, 0])).unwrap());
    }

    #[test]
    fn cross_swap_symmetry_exhaustive_small() {
        let mut rng = crate::sample::Rng::new(11);
        for _ in 0..40 {
            let a: QVec = crate::sample::sample_vector(3, 5, &mut rng);
            for i in 0u32..8 {
                for j in 0u32..8 {
                    assert_eq!(
                        cross_cone_contains(3, i, j, &a).unwrap(),
                        cross_cone_contains(3, j, i, &(-&a)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn wasserstein_cases() {
        // Disjoint case: I = {1}, J = {2} at a = (2, -3, 1).
        let a = qv(&[2, -3, 1]);
        assert!(wasserstein_cone_contains(3, 0b001, 0b010, &a).unwrap());
        // I = J nonzero sum is excluded by the both-overlaps case.
        assert!(!wasserstein_cone_contains(3, 0b001, 0b001, &a).unwrap());
        // Opposite facets: sign-orthant membership only.
        assert!(wasserstein_cone_contains(3, 0b101, 0b010, &a).unwrap());
        assert_eq!(
            wasserstein_cone_contains(3, 0b000, 0b010, &a),
            Err(Error::BadFacet(0))
        );
        assert_eq!(
            wasserstein_cone_contains(3, 0b001, 0b010, &qv(&[1, 1, 1])),
            Err(Error::NotInHyperplane)
        );
    }

    #[test]
    fn linear_iso_maps_cones() {
        let ball = square();
        let cone = bisection_cone_rays(&ball, 0, 2).unwrap();
        let id = QMatrix::identity(2);
        let same = apply_linear_iso(&cone, &id).unwrap();
        assert_eq!(same.generators, cone.generators);

        // -identity sends B_{F,G} to B_{G,F}.
        let neg = QMatrix::from_rows(vec![qv(&[-1, 0]), qv(&[0, -1])]).unwrap();
        let flipped = apply_linear_iso(&cone, &neg).unwrap();
        let swapped = bisection_cone_rays(&ball, 2, 0).unwrap();
        let mut rng = crate::sample::Rng::new(3);
        for _ in 0..20 {
            let x: QVec = crate::sample::sample_vector(2, 7, &mut rng);
            assert_eq!(flipped.contains(&x), swapped.contains(&x));
        }

        let singular = QMatrix::from_rows(vec![qv(&[1, 1]), qv(&[2, 2])]).unwrap();
        assert_eq!(
            apply_linear_iso(&cone, &singular).unwrap_err(),
            Error::SingularMap
        );
    }

    #[test]
    fn scaled_square_cone_matches_scaled_polygon() {
        let ball = square();
        let scale = QMatrix::from_rows(vec![qv(&[2, 0]), qv(&[0, 1])]).unwrap();
        let scaled_ball = UnitBall::polygon(
            ball.vertices()
                .iter()
                .map(|v| scale.mul_vec(v).unwrap())
                .collect(),
        )
        .unwrap();
        let mut rng = crate::sample::Rng::new(9);
        for f in 0..4 {
            for g in 0..4 {
                let mapped =
                    apply_linear_iso(&bisection_cone_rays(&ball, f, g).unwrap(), &scale).unwrap();
                let direct = bisection_cone_rays(&scaled_ball, f, g).unwrap();
                for _ in 0..5 {
                    let x: QVec = crate::sample::sample_vector(2, 7, &mut rng);
                    assert_eq!(mapped.contains(&x), direct.contains(&x));
                }
            }
        }
    }

    #[test]
    fn subset_sum_table_matches_direct() {
        let a = qv(&[3, -1, 4, -6]);
        let table = SubsetSumTable::new(a.coords());
        for mask in 0u32..16 {
            assert_eq!(*table.get(mask), subset_sum(a.coords(), mask));
        }
    }
}
