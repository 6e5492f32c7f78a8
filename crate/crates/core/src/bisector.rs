//! Bisector-level computations: which maximal cells are present, how many,
//! and whether two sites induce equivalent bisectors.

use std::collections::BTreeSet;

use crate::biscone::{
    cross_membership_with, cube_cone_contains, homog_membership, plane_cone_contains, subset_sum,
    support_masks, wasserstein_membership_with, FacetPair, SubsetSumTable,
};
use crate::linalg::{cross2, QVector};
use crate::lp::cell_nonempty_oracle;
use crate::polytope::{mask_label, Family, UnitBall};
use crate::{Error, Scalar};

/// The facet pairs `(F, G)` whose maximal cell is nonempty: the equivalence
/// signature of a bisector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSet {
    pairs: BTreeSet<FacetPair>,
}

impl CellSet {
    pub fn from_pairs(pairs: BTreeSet<FacetPair>) -> Self {
        CellSet { pairs }
    }

    pub fn contains(&self, f: usize, g: usize) -> bool {
        self.pairs.contains(&(f, g))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &FacetPair> {
        self.pairs.iter()
    }

    /// The set with every pair reversed; equals the cell set of `-a`.
    pub fn swapped(&self) -> CellSet {
        CellSet {
            pairs: self.pairs.iter().map(|&(f, g)| (g, f)).collect(),
        }
    }

    /// Sorted facet-pair labels under the ball's indexing convention.
    pub fn labels<S: Scalar>(&self, ball: &UnitBall<S>) -> Vec<(String, String)> {
        self.pairs
            .iter()
            .map(|&(f, g)| (ball.facet_label(f), ball.facet_label(g)))
            .collect()
    }
}

fn check_site<S: Scalar>(ball: &UnitBall<S>, a: &QVector<S>) -> Result<(), Error> {
    if a.dim() != ball.dim() {
        return Err(Error::DimMismatch(a.dim(), ball.dim()));
    }
    if a.is_zero() {
        return Err(Error::ZeroSite);
    }
    if ball.sum_zero() && !a.sum().is_zero() {
        return Err(Error::NotInHyperplane);
    }
    Ok(())
}

/// All facet pairs `(F, G)` with a nonempty cell in the bisector of `0` and
/// `a`, via the family closed forms (homogenization LP for general balls).
/// Pairs with `F = G` are included; they appear exactly when the site lies
/// on the facet hyperplane.
pub fn enumerate_cells<S: Scalar>(ball: &UnitBall<S>, a: &QVector<S>) -> Result<CellSet, Error> {
    check_site(ball, a)?;
    let n = ball.num_facets();
    let mut pairs = BTreeSet::new();
    match ball.family() {
        Family::Polygon => {
            // One pass of pairwise differences, then two sign tests per
            // pair. Per-generator positive scaling never changes a conical
            // hull, so the differences are reduced to primitive integer
            // vectors up front to keep the sign tests cheap.
            let verts = ball.vertices();
            let diffs: Vec<Vec<QVector<S>>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                QVector::zeros(2)
                            } else {
                                (&verts[i] - &verts[j]).primitive()
                            }
                        })
                        .collect()
                })
                .collect();
            for f in 0..n {
                for g in 0..n {
                    let member = if f == g {
                        cross2(&diffs[(f + 1) % n][f], a).is_zero()
                    } else {
                        plane_cone_contains(&diffs[f][g], &diffs[(f + 1) % n][(g + 1) % n], a)
                    };
                    if member {
                        pairs.insert((f, g));
                    }
                }
            }
        }
        Family::Cube => {
            let d = ball.dim();
            for f in 0..n {
                let (i, si) = ball.cube_facet_of(f);
                for g in 0..n {
                    let (j, sj) = ball.cube_facet_of(g);
                    if cube_cone_contains(d, i, si, j, sj, a)? {
                        pairs.insert((f, g));
                    }
                }
            }
        }
        Family::CrossPolytope => {
            let d = ball.dim();
            let table = SubsetSumTable::new(a.coords());
            let sum = |m: u32| table.get(m).clone();
            for f in 0..n {
                let fi = ball.facet_subset_mask(f);
                for g in 0..n {
                    let gi = ball.facet_subset_mask(g);
                    if cross_membership_with(d, fi, gi, a.coords(), &sum) {
                        pairs.insert((f, g));
                    }
                }
            }
        }
        Family::RootPolytopeA => {
            let d = ball.dim();
            let table = SubsetSumTable::new(a.coords());
            let sum = |m: u32| table.get(m).clone();
            let (pos, neg) = support_masks(a.coords());
            for f in 0..n {
                let fi = ball.facet_subset_mask(f);
                for g in 0..n {
                    let gi = ball.facet_subset_mask(g);
                    if wasserstein_membership_with(d, fi, gi, a.coords(), &sum, pos, neg) {
                        pairs.insert((f, g));
                    }
                }
            }
        }
        Family::General => {
            for f in 0..n {
                for g in 0..n {
                    if homog_membership(ball, f, g, a)? {
                        pairs.insert((f, g));
                    }
                }
            }
        }
    }
    Ok(CellSet::from_pairs(pairs))
}

/// Same set as [`enumerate_cells`], but every pair is decided by the exact
/// LP feasibility oracle on the defining system. Slow; used as ground truth.
pub fn enumerate_cells_via_lp<S: Scalar>(
    ball: &UnitBall<S>,
    a: &QVector<S>,
) -> Result<CellSet, Error> {
    check_site(ball, a)?;
    let n = ball.num_facets();
    let mut pairs = BTreeSet::new();
    for f in 0..n {
        for g in 0..n {
            if cell_nonempty_oracle(ball, f, g, a)? {
                pairs.insert((f, g));
            }
        }
    }
    Ok(CellSet::from_pairs(pairs))
}

/// Number of nonempty maximal cells of the bisector of `0` and `a`.
pub fn cell_count<S: Scalar>(ball: &UnitBall<S>, a: &QVector<S>) -> Result<usize, Error> {
    Ok(enumerate_cells(ball, a)?.len())
}

/// Whether the bisectors of `(0, a)` and `(0, b)` have the same labelled
/// nonempty cells.
pub fn equivalent<S: Scalar>(
    ball: &UnitBall<S>,
    a: &QVector<S>,
    b: &QVector<S>,
) -> Result<bool, Error> {
    Ok(enumerate_cells(ball, a)? == enumerate_cells(ball, b)?)
}

/// Exact genericity verdicts with human-readable witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    /// No facet hyperplane through the origin contains the site.
    pub weak_general: bool,
    /// Family-specific general position; `None` when no criterion is
    /// implemented (general V-representations).
    pub general: Option<bool>,
    pub violations: Vec<String>,
}

/// Tests weak general position and the family's general-position criterion:
/// polygons avoid every vertex-difference line; the cube avoids zero
/// coordinates and absolute-value ties; the cross-polytope avoids zero
/// coordinates and subset-vs-complement ties; the root polytope requires
/// every proper sub-sum nonzero and no tie inside either support.
pub fn genericity<S: Scalar>(
    ball: &UnitBall<S>,
    a: &QVector<S>,
) -> Result<GenericityReport, Error> {
    check_site(ball, a)?;
    let mut violations = Vec::new();

    let mut weak_general = true;
    for (idx, f) in ball.facets().iter().enumerate() {
        if f.normal.dot(a)?.is_zero() {
            weak_general = false;
            violations.push(format!(
                "site is parallel to facet {} (z.a = 0)",
                ball.facet_label(idx)
            ));
        }
    }

    let d = ball.dim();
    let general = match ball.family() {
        Family::Polygon => {
            let verts = ball.vertices();
            let mut ok = true;
            for i in 0..verts.len() {
                for j in i + 1..verts.len() {
                    let dir = &verts[i] - &verts[j];
                    if cross2(&dir, a).is_zero() {
                        ok = false;
                        violations.push(format!(
                            "site lies on the line through v{} - v{}",
                            i + 1,
                            j + 1
                        ));
                    }
                }
            }
            Some(ok)
        }
        Family::Cube => {
            let mut ok = true;
            for k in 0..d {
                if a[k].is_zero() {
                    ok = false;
                    violations.push(format!("coordinate {} is zero", k + 1));
                }
            }
            for i in 0..d {
                for j in i + 1..d {
                    if a[i].abs() == a[j].abs() {
                        ok = false;
                        violations.push(format!("|a_{}| = |a_{}|", i + 1, j + 1));
                    }
                }
            }
            Some(ok)
        }
        Family::CrossPolytope => {
            let mut ok = true;
            for k in 0..d {
                if a[k].is_zero() {
                    ok = false;
                    violations.push(format!("coordinate {} is zero", k + 1));
                }
            }
            let full = ((1u64 << d) - 1) as u32;
            // One representative per complementary pair {I, I^c}.
            for mask in 0..1u32 << (d - 1) {
                let comp = full ^ mask;
                if subset_sum(a.coords(), mask) == subset_sum(a.coords(), comp) {
                    ok = false;
                    violations.push(format!(
                        "a({}) = a({})",
                        mask_label(mask, d),
                        mask_label(comp, d)
                    ));
                }
            }
            Some(ok)
        }
        Family::RootPolytopeA => {
            let mut ok = true;
            // Proper sub-sums must be nonzero; pairs {K, K^c} carry the same
            // condition, so one representative suffices.
            for mask in 1..1u32 << (d - 1) {
                if subset_sum(a.coords(), mask).is_zero() {
                    ok = false;
                    violations.push(format!("sub-sum a({}) is zero", mask_label(mask, d)));
                }
            }
            let (pos, neg) = support_masks(a.coords());
            for (support, kind) in [(pos, "positive"), (neg, "negative")] {
                let mut x = support;
                loop {
                    let rest = support & !x;
                    if x <= rest && subset_sum(a.coords(), x) == subset_sum(a.coords(), rest) {
                        ok = false;
                        violations.push(format!(
                            "{kind}-support tie a({}) = a({})",
                            mask_label(x, d),
                            mask_label(rest, d)
                        ));
                    }
                    if x == 0 {
                        break;
                    }
                    x = (x - 1) & support;
                }
            }
            Some(ok)
        }
        // No perturbation-stability criterion is implemented for general
        // balls; the verdict is left undetermined.
        Family::General => None,
    };

    Ok(GenericityReport {
        weak_general,
        general,
        violations,
    })
}
