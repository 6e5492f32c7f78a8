//! 3D cone-complex export: for every facet pair, the bisection cone's
//! generators and the vertex/face mesh of its intersection with the ball.

use std::collections::{BTreeMap, BTreeSet};

use crate::biscone::{bisection_cone_rays, FacetPair};
use crate::fanlocate::angular_cmp;
use crate::linalg::{cross3, solve_linear, LinearSolution, QMatrix, QVector};
use crate::polytope::UnitBall;
use crate::{Error, Scalar};

/// The bounded polytope `B_{F,G} ∩ P` as a vertex/face mesh, plus the cone
/// generators that produced it. For `F = G` the mesh is a flat polygon and
/// carries both orientations of its single face plane.
#[derive(Clone, Debug)]
pub struct ConeMesh<S> {
    pub pair: FacetPair,
    pub generators: Vec<QVector<S>>,
    pub vertices: Vec<QVector<S>>,
    pub faces: Vec<Vec<usize>>,
}

/// Meshes for every ordered facet pair, in lexicographic pair order.
pub fn cone_polytope_meshes<S: Scalar>(ball: &UnitBall<S>) -> Result<Vec<ConeMesh<S>>, Error> {
    let n = ball.num_facets();
    let mut out = Vec::with_capacity(n * n);
    for f in 0..n {
        for g in 0..n {
            out.push(cone_polytope_mesh(ball, f, g)?);
        }
    }
    Ok(out)
}

/// Mesh of `B_{F,G} ∩ P` for one pair, by exact vertex enumeration of the
/// bounded halfspace intersection.
pub fn cone_polytope_mesh<S: Scalar>(
    ball: &UnitBall<S>,
    f: usize,
    g: usize,
) -> Result<ConeMesh<S>, Error> {
    if ball.dim() != 3 {
        return Err(Error::BadInput(
            "cone meshes are implemented for 3-dimensional balls".into(),
        ));
    }
    let cone = bisection_cone_rays(ball, f, g)?;
    let mut rows: BTreeSet<(QVector<S>, S)> = BTreeSet::new();
    if f == g {
        let z = ball.facet(f)?.normal.clone();
        rows.insert(canonical_halfspace(z.clone(), S::zero()));
        rows.insert(canonical_halfspace(-&z, S::zero()));
    } else {
        for (i, gi) in cone.generators.iter().enumerate() {
            for gj in cone.generators.iter().skip(i + 1) {
                let normal = cross3(gi, gj);
                if normal.is_zero() {
                    continue;
                }
                let dots: Vec<S> = cone
                    .generators
                    .iter()
                    .map(|g| normal.dot(g).expect("dim 3"))
                    .collect();
                if dots.iter().all(|d| !d.is_negative()) {
                    rows.insert(canonical_halfspace(normal.clone(), S::zero()));
                } else if dots.iter().all(|d| !d.is_positive()) {
                    rows.insert(canonical_halfspace(-&normal, S::zero()));
                }
            }
        }
    }
    // Ball facets bound the intersection: z.x <= b becomes -z.x >= -b.
    for facet in ball.facets() {
        rows.insert(canonical_halfspace(-&facet.normal, -facet.offset.clone()));
    }
    if ball.sum_zero() {
        let ones = QVector::new(vec![S::one(); 3]);
        rows.insert(canonical_halfspace(ones.clone(), S::zero()));
        rows.insert(canonical_halfspace(-&ones, S::zero()));
    }
    let rows: Vec<(QVector<S>, S)> = rows.into_iter().collect();

    let mut vertices: BTreeSet<QVector<S>> = BTreeSet::new();
    let m = rows.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let a = QMatrix::from_rows(vec![
                    rows[i].0.clone(),
                    rows[j].0.clone(),
                    rows[k].0.clone(),
                ])?;
                let b = QVector::new(vec![
                    rows[i].1.clone(),
                    rows[j].1.clone(),
                    rows[k].1.clone(),
                ]);
                let LinearSolution::Unique(x) = solve_linear(&a, &b)? else {
                    continue;
                };
                if rows.iter().all(|(z, c)| z.dot(&x).expect("dim 3") >= *c) {
                    vertices.insert(x);
                }
            }
        }
    }
    let vertices: Vec<QVector<S>> = vertices.into_iter().collect();
    let index_of: BTreeMap<&QVector<S>, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();

    let mut faces = Vec::new();
    for (z, c) in &rows {
        let incident: Vec<usize> = vertices
            .iter()
            .filter(|v| z.dot(v).expect("dim 3") == *c)
            .map(|v| index_of[v])
            .collect();
        if incident.len() < 3 {
            continue;
        }
        faces.push(orient_face(&vertices, incident, z));
    }
    faces.sort();
    faces.dedup();

    Ok(ConeMesh {
        pair: (f, g),
        generators: cone.generators,
        vertices,
        faces,
    })
}

/// Joint primitive scaling of `(normal, rhs)` so equal halfspaces compare
/// equal.
fn canonical_halfspace<S: Scalar>(normal: QVector<S>, rhs: S) -> (QVector<S>, S) {
    let mut all = normal.coords().to_vec();
    all.push(rhs);
    let scaled = S::primitive_ray(&all);
    let rhs = scaled.last().expect("nonempty").clone();
    let mut coords = scaled;
    coords.pop();
    (QVector::new(coords), rhs)
}

/// Orders coplanar vertices counter-clockwise when viewed from the outward
/// normal side, by exact angular sort around their centroid in a projection
/// plane.
fn orient_face<S: Scalar>(
    vertices: &[QVector<S>],
    mut incident: Vec<usize>,
    normal: &QVector<S>,
) -> Vec<usize> {
    let axis = (0..3)
        .max_by(|&i, &j| normal[i].abs().cmp(&normal[j].abs()))
        .expect("dim 3");
    // Cyclic right-hand projection: dropping axis l keeps (l+1, l+2) so that
    // counter-clockwise in the projection means outward along +axis.
    let (u_axis, w_axis) = ((axis + 1) % 3, (axis + 2) % 3);
    let flip = normal[axis].is_negative();
    let k = incident.len();
    let inv_k = S::one() / S::from_int(k as i64);
    let mut centroid_u = S::zero();
    let mut centroid_w = S::zero();
    for &i in &incident {
        centroid_u = centroid_u + vertices[i][u_axis].clone();
        centroid_w = centroid_w + vertices[i][w_axis].clone();
    }
    centroid_u = centroid_u * inv_k.clone();
    centroid_w = centroid_w * inv_k;
    let planar = |i: usize| -> QVector<S> {
        let mut u = vertices[i][u_axis].clone() - centroid_u.clone();
        let mut w = vertices[i][w_axis].clone() - centroid_w.clone();
        if flip {
            std::mem::swap(&mut u, &mut w);
        }
        QVector::new(vec![u, w])
    };
    incident.sort_by(|&i, &j| angular_cmp(&planar(i), &planar(j)));
    // Canonical rotation: start the cycle at the smallest vertex index.
    let start = incident
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .map(|(pos, _)| pos)
        .expect("nonempty");
    incident.rotate_left(start);
    incident
}
