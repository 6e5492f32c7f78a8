//! Unit-ball polytopes: the four norm families and general centrally
//! symmetric V-representations, with gauge evaluation and face-cone tests.

use std::collections::{BTreeMap, HashSet};

use crate::linalg::{cross2, solve_linear, LinearSolution, QMatrix, QVector};
use crate::scalar::Sign;
use crate::{Error, Scalar};

/// Materialized balls keep explicit facet lists; for the subset-indexed
/// families those lists have 2^d entries, so construction is capped here.
pub const MAX_BALL_DIM: usize = 12;
/// Bitmask-indexed closed forms work without a materialized ball up to here.
pub const MAX_BITMASK_DIM: usize = 20;

/// Which construction a ball came from; picks closed forms and labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Centrally symmetric `2n`-gon, vertices counter-clockwise.
    Polygon,
    /// `[-1, 1]^d`.
    Cube,
    /// `conv{±e_i}`.
    CrossPolytope,
    /// `conv{e_i - e_j : i != j}`, intrinsic to the sum-zero hyperplane.
    RootPolytopeA,
    /// Arbitrary centrally symmetric V-representation.
    General,
}

/// A facet `F = {x in P : z.x = b}` with `b > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet<S> {
    pub vertex_indices: Vec<usize>,
    pub normal: QVector<S>,
    pub offset: S,
}

/// A full-dimensional centrally symmetric polytope with the origin interior
/// (for the sum-zero family: full-dimensional inside its hyperplane).
#[derive(Clone, Debug)]
pub struct UnitBall<S> {
    dim: usize,
    family: Family,
    vertices: Vec<QVector<S>>,
    facets: Vec<Facet<S>>,
    sum_zero: bool,
}

impl<S: Scalar> UnitBall<S> {
    /// The cube `[-1, 1]^d`. Facet `(i, sign)` sits at index `2i + sign`.
    pub fn cube(dim: usize) -> Result<Self, Error> {
        check_dim(dim)?;
        let vertices: Vec<QVector<S>> = (0u32..1 << dim)
            .map(|mask| {
                QVector::new(
                    (0..dim)
                        .map(|k| {
                            if mask >> k & 1 == 1 {
                                -S::one()
                            } else {
                                S::one()
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        let mut facets = Vec::with_capacity(2 * dim);
        for axis in 0..dim {
            for sign in [Sign::Plus, Sign::Minus] {
                let want_bit = (sign == Sign::Minus) as u32;
                let vertex_indices: Vec<usize> = (0u32..1 << dim)
                    .filter(|mask| mask >> axis & 1 == want_bit)
                    .map(|m| m as usize)
                    .collect();
                let mut normal = QVector::zeros(dim).into_coords();
                normal[axis] = sign.apply(S::one());
                facets.push(Facet {
                    vertex_indices,
                    normal: QVector::new(normal),
                    offset: S::one(),
                });
            }
        }
        Ok(UnitBall {
            dim,
            family: Family::Cube,
            vertices,
            facets,
            sum_zero: false,
        })
    }

    /// The cross-polytope `conv{±e_i}`. Facet `F_I` sits at index `I` read
    /// as a bitmask, for every `I ⊆ [d]`.
    pub fn cross_polytope(dim: usize) -> Result<Self, Error> {
        check_dim(dim)?;
        let mut vertices = Vec::with_capacity(2 * dim);
        for k in 0..dim {
            vertices.push(QVector::unit(dim, k));
        }
        for k in 0..dim {
            vertices.push(-&QVector::unit(dim, k));
        }
        let facets = (0u32..1 << dim)
            .map(|mask| {
                let normal = QVector::new(
                    (0..dim)
                        .map(|k| {
                            if mask >> k & 1 == 1 {
                                S::one()
                            } else {
                                -S::one()
                            }
                        })
                        .collect(),
                );
                let vertex_indices = (0..dim)
                    .map(|k| if mask >> k & 1 == 1 { k } else { dim + k })
                    .collect();
                Facet {
                    vertex_indices,
                    normal,
                    offset: S::one(),
                }
            })
            .collect();
        Ok(UnitBall {
            dim,
            family: Family::CrossPolytope,
            vertices,
            facets,
            sum_zero: false,
        })
    }

    /// The root polytope `conv{e_i - e_j}` in ambient `R^d`, intrinsic to the
    /// sum-zero hyperplane. Facet `F_I` for proper nonempty `I` sits at index
    /// `I - 1` read as a bitmask.
    pub fn root_polytope(dim: usize) -> Result<Self, Error> {
        check_dim(dim)?;
        let mut vertices = Vec::with_capacity(dim * (dim - 1));
        for i in 0..dim {
            for j in 0..dim {
                if i != j {
                    vertices.push(&QVector::unit(dim, i) - &QVector::unit(dim, j));
                }
            }
        }
        let pair_index = |i: usize, j: usize| i * (dim - 1) + if j < i { j } else { j - 1 };
        let full = (1u32 << dim) - 1;
        let facets = (1..full)
            .map(|mask| {
                let normal = QVector::new(
                    (0..dim)
                        .map(|k| {
                            if mask >> k & 1 == 1 {
                                S::one()
                            } else {
                                S::zero()
                            }
                        })
                        .collect(),
                );
                let mut vertex_indices = Vec::new();
                for i in 0..dim {
                    if mask >> i & 1 == 0 {
                        continue;
                    }
                    for j in 0..dim {
                        if mask >> j & 1 == 0 {
                            vertex_indices.push(pair_index(i, j));
                        }
                    }
                }
                vertex_indices.sort_unstable();
                Facet {
                    vertex_indices,
                    normal,
                    offset: S::one(),
                }
            })
            .collect();
        Ok(UnitBall {
            dim,
            family: Family::RootPolytopeA,
            vertices,
            facets,
            sum_zero: true,
        })
    }

    /// A centrally symmetric polygon from counter-clockwise vertices.
    /// Facet `F_i = conv{v_i, v_{i+1}}` sits at index `i`.
    pub fn polygon(vertices: Vec<QVector<S>>) -> Result<Self, Error> {
        let m = vertices.len();
        if m < 4 || !m.is_multiple_of(2) {
            return Err(Error::BadInput(
                "polygon needs an even vertex count of at least 4".into(),
            ));
        }
        for v in &vertices {
            if v.dim() != 2 {
                return Err(Error::DimMismatch(v.dim(), 2));
            }
        }
        let n = m / 2;
        for i in 0..n {
            if vertices[i + n] != -&vertices[i] {
                return Err(Error::NotCentrallySymmetric);
            }
        }
        for i in 0..m {
            let e_prev = &vertices[(i + 1) % m] - &vertices[i];
            let e_next = &vertices[(i + 2) % m] - &vertices[(i + 1) % m];
            if !cross2(&e_prev, &e_next).is_positive() {
                return Err(Error::BadOrientation);
            }
        }
        let facets = (0..m)
            .map(|i| {
                let edge = &vertices[(i + 1) % m] - &vertices[i];
                let normal = QVector::new(vec![edge[1].clone(), -edge[0].clone()]);
                let offset = normal.dot(&vertices[i]).expect("dim 2");
                debug_assert!(offset.is_positive());
                Facet {
                    vertex_indices: vec![i, (i + 1) % m],
                    normal,
                    offset,
                }
            })
            .collect();
        Ok(UnitBall {
            dim: 2,
            family: Family::Polygon,
            vertices,
            facets,
            sum_zero: false,
        })
    }

    /// A general centrally symmetric V-representation. When `facet_lists` is
    /// absent the supporting hyperplanes are derived by exact enumeration,
    /// which is implemented for dimensions 2 and 3 only. Vertices are assumed
    /// extreme.
    pub fn from_vrep(
        dim: usize,
        vertices: Vec<QVector<S>>,
        facet_lists: Option<Vec<Vec<usize>>>,
    ) -> Result<Self, Error> {
        if dim < 2 {
            return Err(Error::BadInput("dimension must be at least 2".into()));
        }
        if vertices.is_empty() {
            return Err(Error::BadInput("empty vertex list".into()));
        }
        for v in &vertices {
            if v.dim() != dim {
                return Err(Error::DimMismatch(v.dim(), dim));
            }
            if v.is_zero() {
                return Err(Error::BadInput("the origin cannot be a vertex".into()));
            }
        }
        let set: HashSet<&QVector<S>> = vertices.iter().collect();
        if set.len() != vertices.len() {
            return Err(Error::BadInput("duplicate vertices".into()));
        }
        for v in &vertices {
            if !set.contains(&-v) {
                return Err(Error::NotCentrallySymmetric);
            }
        }

        let facets = match facet_lists {
            Some(lists) => {
                let mut facets = Vec::with_capacity(lists.len());
                for mut list in lists {
                    list.sort_unstable();
                    list.dedup();
                    if list.iter().any(|&i| i >= vertices.len()) {
                        return Err(Error::BadInput("facet vertex index out of range".into()));
                    }
                    let rows: Vec<QVector<S>> = list.iter().map(|&i| vertices[i].clone()).collect();
                    let ones = QVector::new(vec![S::one(); rows.len()]);
                    let a = QMatrix::from_rows(rows)?;
                    let normal = match solve_linear(&a, &ones)? {
                        LinearSolution::Unique(z) => z,
                        _ => {
                            return Err(Error::BadInput(
                                "facet vertices do not span a unique supporting hyperplane".into(),
                            ))
                        }
                    };
                    for (k, v) in vertices.iter().enumerate() {
                        let val = normal.dot(v)?;
                        let on = list.binary_search(&k).is_ok();
                        if (on && !val.is_one()) || (!on && val >= S::one()) {
                            return Err(Error::BadInput(format!(
                                "hyperplane of facet {list:?} does not support the polytope"
                            )));
                        }
                    }
                    facets.push(Facet {
                        vertex_indices: list,
                        normal,
                        offset: S::one(),
                    });
                }
                facets
            }
            None => {
                if dim > 3 {
                    return Err(Error::BadInput(
                        "facet derivation without a facet list is implemented for dimensions 2 and 3".into(),
                    ));
                }
                derive_facets(dim, &vertices)?
            }
        };

        let mut covered = vec![false; vertices.len()];
        for f in &facets {
            for &i in &f.vertex_indices {
                covered[i] = true;
            }
        }
        if covered.iter().any(|c| !c) {
            return Err(Error::BadInput(
                "some vertex lies on no facet (not in convex position?)".into(),
            ));
        }
        for f in &facets {
            let neg = -&f.normal;
            if !facets.iter().any(|g| g.normal == neg) {
                return Err(Error::BadInput(
                    "facet list is not closed under negation".into(),
                ));
            }
        }

        Ok(UnitBall {
            dim,
            family: Family::General,
            vertices,
            facets,
            sum_zero: false,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn vertices(&self) -> &[QVector<S>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet<S>] {
        &self.facets
    }

    pub fn facet(&self, idx: usize) -> Result<&Facet<S>, Error> {
        self.facets.get(idx).ok_or(Error::BadFacet(idx))
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Whether sites and points live on the sum-zero hyperplane.
    pub fn sum_zero(&self) -> bool {
        self.sum_zero
    }

    /// Vertices of a facet.
    pub fn facet_vertices(&self, idx: usize) -> Result<Vec<&QVector<S>>, Error> {
        Ok(self
            .facet(idx)?
            .vertex_indices
            .iter()
            .map(|&i| &self.vertices[i])
            .collect())
    }

    /// Cube facet index for `(axis, sign)`.
    pub fn cube_facet_index(&self, axis: usize, sign: Sign) -> usize {
        2 * axis + (sign == Sign::Minus) as usize
    }

    /// Cube `(axis, sign)` of a facet index.
    pub fn cube_facet_of(&self, idx: usize) -> (usize, Sign) {
        (
            idx / 2,
            if idx.is_multiple_of(2) {
                Sign::Plus
            } else {
                Sign::Minus
            },
        )
    }

    /// Subset bitmask of a cross-polytope or root-polytope facet.
    pub fn facet_subset_mask(&self, idx: usize) -> u32 {
        match self.family {
            Family::CrossPolytope => idx as u32,
            Family::RootPolytopeA => idx as u32 + 1,
            _ => panic!("facet_subset_mask only applies to subset-indexed families"),
        }
    }

    /// Facet index for a subset bitmask (inverse of `facet_subset_mask`).
    pub fn subset_facet_index(&self, mask: u32) -> usize {
        match self.family {
            Family::CrossPolytope => mask as usize,
            Family::RootPolytopeA => mask as usize - 1,
            _ => panic!("subset_facet_index only applies to subset-indexed families"),
        }
    }

    /// Human-readable facet label under the family's indexing convention.
    pub fn facet_label(&self, idx: usize) -> String {
        match self.family {
            Family::Polygon | Family::General => format!("F{}", idx + 1),
            Family::Cube => {
                let (axis, sign) = self.cube_facet_of(idx);
                format!("x{}{}", axis + 1, sign.symbol())
            }
            Family::CrossPolytope | Family::RootPolytopeA => {
                mask_label(self.facet_subset_mask(idx), self.dim)
            }
        }
    }

    /// Description of the facet indexing scheme, attached to exports.
    pub fn indexing_convention(&self) -> &'static str {
        match self.family {
            Family::Polygon => "polygon: Fi = conv{v_i, v_{i+1}}, i = 1..2n, vertices counter-clockwise",
            Family::Cube => "cube: xi+/xi- = facet at coordinate i equal to +1/-1",
            Family::CrossPolytope => "cross-polytope: {..} = subset I of 1..d; facet conv({e_i : i in I} u {-e_i : i not in I})",
            Family::RootPolytopeA => "root polytope: {..} = proper nonempty subset I of 1..d; facet conv{e_i - e_j : i in I, j not in I}",
            Family::General => "general: Fi = i-th facet of the input facet list (1-based)",
        }
    }

    /// Index of the opposite facet `-F`.
    pub fn opposite_facet(&self, idx: usize) -> Result<usize, Error> {
        self.facet(idx)?;
        Ok(match self.family {
            Family::Polygon => {
                let m = self.facets.len();
                (idx + m / 2) % m
            }
            Family::Cube => idx ^ 1,
            Family::CrossPolytope => {
                let full = (1usize << self.dim) - 1;
                full ^ idx
            }
            Family::RootPolytopeA => {
                let full = (1u32 << self.dim) - 1;
                self.subset_facet_index(full ^ self.facet_subset_mask(idx))
            }
            Family::General => {
                let neg = -&self.facets[idx].normal;
                self.facets
                    .iter()
                    .position(|f| f.normal == neg)
                    .expect("validated: facet list closed under negation")
            }
        })
    }

    /// The gauge `min{t >= 0 : x in tP}`, via the family closed form where
    /// one exists and the facet maximum otherwise.
    pub fn gauge(&self, x: &QVector<S>) -> Result<S, Error> {
        self.check_point(x)?;
        Ok(match self.family {
            Family::Cube => x.iter().map(|c| c.abs()).max().expect("dim >= 2"),
            Family::CrossPolytope => x.iter().fold(S::zero(), |acc, c| acc + c.abs()),
            Family::RootPolytopeA => {
                let l1 = x.iter().fold(S::zero(), |acc, c| acc + c.abs());
                l1 / S::from_int(2)
            }
            Family::Polygon | Family::General => self.gauge_by_facets(x)?,
        })
    }

    /// The gauge as `max_F (z_F . x) / b_F`, with no family shortcut.
    pub fn gauge_by_facets(&self, x: &QVector<S>) -> Result<S, Error> {
        self.check_point(x)?;
        let mut best: Option<S> = None;
        for f in &self.facets {
            let val = f.normal.dot(x)? / f.offset.clone();
            if best.as_ref().is_none_or(|b| val > *b) {
                best = Some(val);
            }
        }
        Ok(best.expect("at least one facet"))
    }

    /// All facets whose cone contains `x`: the argmax set of
    /// `(z_F . x) / b_F`. Singleton exactly when `x` is interior to one
    /// facet cone; ties are reported, not rejected.
    pub fn face_cone_of(&self, x: &QVector<S>) -> Result<Vec<usize>, Error> {
        if x.is_zero() {
            return Err(Error::ZeroVector);
        }
        self.check_point(x)?;
        let vals: Vec<S> = self
            .facets
            .iter()
            .map(|f| f.normal.dot(x).map(|d| d / f.offset.clone()))
            .collect::<Result<_, _>>()?;
        let best = vals.iter().max().expect("at least one facet").clone();
        Ok(vals
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == best)
            .map(|(i, _)| i)
            .collect())
    }

    /// Weak general position of the site direction `a`: no facet hyperplane
    /// through the origin contains it.
    pub fn is_weak_general_position(&self, a: &QVector<S>) -> Result<bool, Error> {
        if a.is_zero() {
            return Err(Error::ZeroVector);
        }
        self.check_point(a)?;
        for f in &self.facets {
            if f.normal.dot(a)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Halfspace rows `r` with `r . x >= 0` cutting out the facet cone `C_F`
    /// (for the sum-zero family, within the hyperplane).
    pub fn face_cone_halfspaces(&self, idx: usize) -> Result<Vec<QVector<S>>, Error> {
        let facet = self.facet(idx)?;
        Ok(match self.family {
            Family::Cube => {
                let (axis, sign) = self.cube_facet_of(idx);
                let mut rows = Vec::with_capacity(2 * (self.dim - 1));
                for k in 0..self.dim {
                    if k == axis {
                        continue;
                    }
                    for unit_sign in [Sign::Plus, Sign::Minus] {
                        let mut row = QVector::zeros(self.dim).into_coords();
                        row[axis] = sign.apply(S::one());
                        row[k] = unit_sign.apply(S::one());
                        rows.push(QVector::new(row));
                    }
                }
                rows
            }
            Family::CrossPolytope | Family::RootPolytopeA => {
                let mask = self.facet_subset_mask(idx);
                (0..self.dim)
                    .map(|k| {
                        let mut row = QVector::zeros(self.dim).into_coords();
                        row[k] = if mask >> k & 1 == 1 {
                            S::one()
                        } else {
                            -S::one()
                        };
                        QVector::new(row)
                    })
                    .collect()
            }
            Family::Polygon => {
                let vi = &self.vertices[facet.vertex_indices[0]];
                let vj = &self.vertices[facet.vertex_indices[1]];
                vec![
                    QVector::new(vec![-vi[1].clone(), vi[0].clone()]),
                    QVector::new(vec![vj[1].clone(), -vj[0].clone()]),
                ]
            }
            Family::General => {
                let scaled = |f: &Facet<S>| {
                    QVector::new(
                        f.normal
                            .iter()
                            .map(|z| z.clone() / f.offset.clone())
                            .collect(),
                    )
                };
                let own = scaled(facet);
                self.facets
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != idx)
                    .map(|(_, other)| &own - &scaled(other))
                    .collect()
            }
        })
    }

    fn check_point(&self, x: &QVector<S>) -> Result<(), Error> {
        if x.dim() != self.dim {
            return Err(Error::DimMismatch(x.dim(), self.dim));
        }
        if self.sum_zero && !x.sum().is_zero() {
            return Err(Error::NotInHyperplane);
        }
        Ok(())
    }
}

fn check_dim(dim: usize) -> Result<(), Error> {
    if dim < 2 {
        return Err(Error::BadInput("dimension must be at least 2".into()));
    }
    if dim > MAX_BALL_DIM {
        return Err(Error::CapExceeded(dim, MAX_BALL_DIM));
    }
    Ok(())
}

/// `{1,3}`-style label of a bitmask over 1-based ground set `[d]`.
pub fn mask_label(mask: u32, dim: usize) -> String {
    let elems: Vec<String> = (0..dim)
        .filter(|k| mask >> k & 1 == 1)
        .map(|k| (k + 1).to_string())
        .collect();
    format!("{{{}}}", elems.join(","))
}

/// Supporting-hyperplane enumeration for small ambient dimension: every
/// `dim`-subset of vertices is tested for spanning a supporting hyperplane
/// `z.x = 1` containing all maximizers.
fn derive_facets<S: Scalar>(dim: usize, vertices: &[QVector<S>]) -> Result<Vec<Facet<S>>, Error> {
    let n = vertices.len();
    let ones = QVector::new(vec![S::one(); dim]);
    let mut seen: BTreeMap<QVector<S>, Vec<usize>> = BTreeMap::new();
    let mut subset = vec![0usize; dim];
    enumerate_subsets(n, dim, &mut subset, 0, 0, &mut |chosen| {
        let rows: Vec<QVector<S>> = chosen.iter().map(|&i| vertices[i].clone()).collect();
        let a = QMatrix::from_rows(rows).expect("equal dims");
        let LinearSolution::Unique(normal) = solve_linear(&a, &ones).expect("dims match") else {
            return;
        };
        if seen.contains_key(&normal) {
            return;
        }
        let mut incident = Vec::new();
        for (k, v) in vertices.iter().enumerate() {
            let val = normal.dot(v).expect("dims match");
            if val > S::one() {
                return;
            }
            if val.is_one() {
                incident.push(k);
            }
        }
        seen.insert(normal, incident);
    });
    if seen.is_empty() {
        return Err(Error::BadInput(
            "no supporting hyperplanes found; input is not full-dimensional".into(),
        ));
    }
    Ok(seen
        .into_iter()
        .map(|(normal, vertex_indices)| Facet {
            vertex_indices,
            normal,
            offset: S::one(),
        })
        .collect())
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    buf: &mut Vec<usize>,
    depth: usize,
    start: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        visit(buf);
        return;
    }
    for i in start..n {
        buf[depth] = i;
        enumerate_subsets(n, k, buf, depth + 1, i + 1, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, QVec, Rat};
    use num_traits::{One, Signed, Zero};

    fn qv(entries: &[i64]) -> QVec {
        QVector::from_ints(entries)
    }

    #[test]
    fn cube_counts_and_normals() {
        let ball = UnitBall::<Rat>::cube(3).unwrap();
        assert_eq!(ball.vertices().len(), 8);
        assert_eq!(ball.num_facets(), 6);
        for f in ball.facets() {
            assert!(f.offset.is_one());
            let nonzero: Vec<_> = f.normal.iter().filter(|c| !c.is_zero()).collect();
            assert_eq!(nonzero.len(), 1);
            assert!(nonzero[0].abs().is_one());
        }
    }

    #[test]
    fn cross_and_root_counts() {
        let cross = UnitBall::<Rat>::cross_polytope(3).unwrap();
        assert_eq!(cross.vertices().len(), 6);
        assert_eq!(cross.num_facets(), 8);
        let root = UnitBall::<Rat>::root_polytope(4).unwrap();
        assert_eq!(root.vertices().len(), 12);
        assert_eq!(root.num_facets(), 14);
    }

    #[test]
    fn gauge_closed_forms() {
        let cube = UnitBall::<Rat>::cube(3).unwrap();
        assert_eq!(cube.gauge(&qv(&[3, -1, 2])).unwrap(), rat(3, 1).unwrap());
        let cross = UnitBall::<Rat>::cross_polytope(3).unwrap();
        assert_eq!(cross.gauge(&qv(&[3, -1, 2])).unwrap(), rat(6, 1).unwrap());
        let root = UnitBall::<Rat>::root_polytope(3).unwrap();
        assert_eq!(root.gauge(&qv(&[2, -3, 1])).unwrap(), rat(3, 1).unwrap());
        assert_eq!(root.gauge(&qv(&[1, 1, 1])), Err(Error::NotInHyperplane));
        assert_eq!(cube.gauge(&qv(&[0, 0, 0])).unwrap(), Rat::zero());
    }

    #[test]
    fn face_cone_examples() {
        let cube = UnitBall::<Rat>::cube(2).unwrap();
        let plus_x = cube.cube_facet_index(0, Sign::Plus);
        assert_eq!(cube.face_cone_of(&qv(&[3, 1])).unwrap(), vec![plus_x]);
        let diag = cube.face_cone_of(&qv(&[1, 1])).unwrap();
        assert_eq!(
            diag,
            vec![
                cube.cube_facet_index(0, Sign::Plus),
                cube.cube_facet_index(1, Sign::Plus)
            ]
        );
        let cross = UnitBall::<Rat>::cross_polytope(3).unwrap();
        let expect = cross.subset_facet_index(0b011);
        assert_eq!(cross.face_cone_of(&qv(&[5, 1, -2])).unwrap(), vec![expect]);
        assert_eq!(cross.face_cone_of(&qv(&[0, 0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn face_cone_argmax_matches_lp_cone_membership() {
        // C_F = cone(vert F), so the argmax verdict must agree with the LP
        // conical-hull oracle on every facet.
        let balls = [
            UnitBall::<Rat>::cube(2).unwrap(),
            UnitBall::<Rat>::cross_polytope(3).unwrap(),
        ];
        let points = [qv(&[3, 1]), qv(&[1, 1])];
        let points3 = [qv(&[5, 1, -2]), qv(&[1, -4, 2])];
        for ball in &balls {
            let pts: &[QVec] = if ball.dim() == 2 { &points } else { &points3 };
            for x in pts {
                let argmax = ball.face_cone_of(x).unwrap();
                for f in 0..ball.num_facets() {
                    let gens: Vec<QVec> = ball
                        .facet_vertices(f)
                        .unwrap()
                        .into_iter()
                        .cloned()
                        .collect();
                    assert_eq!(
                        crate::lp::cone_member_oracle(&gens, x),
                        argmax.contains(&f),
                        "facet {f} at {x:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn weak_general_position_examples() {
        let cube2 = UnitBall::<Rat>::cube(2).unwrap();
        assert!(cube2.is_weak_general_position(&qv(&[1, 1])).unwrap());
        let cross2 = UnitBall::<Rat>::cross_polytope(2).unwrap();
        assert!(!cross2.is_weak_general_position(&qv(&[1, 1])).unwrap());
        let cube3 = UnitBall::<Rat>::cube(3).unwrap();
        assert!(!cube3.is_weak_general_position(&qv(&[0, 1, 2])).unwrap());
    }

    #[test]
    fn polygon_validation() {
        let square = vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[-1, 0]), qv(&[0, -1])];
        let ball = UnitBall::polygon(square.clone()).unwrap();
        assert_eq!(ball.num_facets(), 4);
        for f in ball.facets() {
            assert!(f.offset.is_positive());
        }

        let clockwise: Vec<QVec> = square.iter().rev().cloned().collect();
        assert_eq!(
            UnitBall::polygon(clockwise).unwrap_err(),
            Error::BadOrientation
        );

        let asym = vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[-2, 0]), qv(&[0, -1])];
        assert_eq!(
            UnitBall::polygon(asym).unwrap_err(),
            Error::NotCentrallySymmetric
        );
    }

    #[test]
    fn vertices_lie_on_unit_sphere() {
        let balls = [
            UnitBall::<Rat>::cube(3).unwrap(),
            UnitBall::<Rat>::cross_polytope(4).unwrap(),
            UnitBall::<Rat>::root_polytope(4).unwrap(),
        ];
        for ball in &balls {
            for v in ball.vertices() {
                assert!(ball.gauge(v).unwrap().is_one());
            }
        }
    }

    #[test]
    fn from_vrep_derives_cube_facets() {
        let cube = UnitBall::<Rat>::cube(3).unwrap();
        let ball = UnitBall::from_vrep(3, cube.vertices().to_vec(), None).unwrap();
        assert_eq!(ball.num_facets(), 6);
        for f in ball.facets() {
            assert_eq!(f.vertex_indices.len(), 4);
        }
        for v in ball.vertices() {
            assert!(ball.gauge(v).unwrap().is_one());
        }
    }

    #[test]
    fn from_vrep_rejects_asymmetric_input() {
        let verts = vec![qv(&[1, 0, 0]), qv(&[-1, 0, 0]), qv(&[0, 1, 0])];
        assert_eq!(
            UnitBall::from_vrep(3, verts, None).unwrap_err(),
            Error::NotCentrallySymmetric
        );
    }

    #[test]
    fn opposite_facets_negate_normals() {
        let balls = [
            UnitBall::<Rat>::cube(3).unwrap(),
            UnitBall::<Rat>::cross_polytope(3).unwrap(),
            UnitBall::<Rat>::root_polytope(4).unwrap(),
            UnitBall::polygon(crate::sample::hexagon_perturbed()).unwrap(),
        ];
        for ball in &balls {
            for idx in 0..ball.num_facets() {
                let opp = ball.opposite_facet(idx).unwrap();
                let f = &ball.facets()[idx];
                let g = &ball.facets()[opp];
                assert_eq!(f.offset, g.offset);
                // vert(-F) = -vert(F) in every family.
                let neg_verts: std::collections::BTreeSet<QVec> = ball
                    .facet_vertices(idx)
                    .unwrap()
                    .into_iter()
                    .map(|v| -v)
                    .collect();
                let opp_verts: std::collections::BTreeSet<QVec> = ball
                    .facet_vertices(opp)
                    .unwrap()
                    .into_iter()
                    .cloned()
                    .collect();
                assert_eq!(neg_verts, opp_verts);
                if ball.sum_zero() {
                    // Normals agree as functionals on the sum-zero
                    // hyperplane: their sum is a multiple of the all-ones
                    // vector.
                    let s = &f.normal + &g.normal;
                    assert!(s.iter().all(|c| *c == s[0]));
                } else {
                    assert_eq!(-&f.normal, g.normal);
                }
            }
        }
    }

    #[test]
    fn dimension_cap_enforced() {
        assert!(matches!(
            UnitBall::<Rat>::cross_polytope(13),
            Err(Error::CapExceeded(13, _))
        ));
    }
}
