//! Fan location: the combinatorial signature of the open maximal cone of the
//! bisection fan containing a general-position site, per norm family, plus
//! the piecewise-linear function whose linearity regions cut the Wasserstein
//! fan.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::biscone::{support_masks, SubsetSumTable};
use crate::bisector::genericity;
use crate::linalg::{cross2, QVector};
use crate::polytope::{Family, UnitBall, MAX_BALL_DIM};
use crate::scalar::Sign;
use crate::{Error, Scalar};

/// Identifier of the open maximal fan cone containing a generic site.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanSignature {
    Polygon(PolygonSig),
    Cube(CubeSig),
    Cross(CrossSig),
    Wasserstein(WassersteinSig),
}

/// The two consecutive fan rays bracketing the site, each named by the
/// lexicographically smallest vertex pair `(i, j)` with that difference
/// direction (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonSig {
    pub lower: (usize, usize),
    pub upper: (usize, usize),
}

/// Sign orthant plus the coordinate of maximal absolute value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeSig {
    pub signs: Vec<Sign>,
    pub dominant: usize,
}

/// Sign orthant plus, for one canonical representative `I` of each
/// complementary pair (the subset containing index 1), whether
/// `a(I) > a(I^c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossSig {
    pub signs: Vec<Sign>,
    pub heavy_side: Vec<bool>,
}

/// The triple `D(a)`: positive proper subset sums (stored for the canonical
/// representative containing index 1; the complement is redundant since sums
/// are generic and total zero), heavy subsets of the positive support and
/// light subsets of the negative support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WassersteinSig {
    pub dim: usize,
    pub positive_canonical: BTreeSet<u32>,
    pub heavy_positive: BTreeSet<u32>,
    pub light_negative: BTreeSet<u32>,
}

/// Exact angular order on nonzero plane vectors, counter-clockwise starting
/// at the positive x-axis; never a floating-point angle.
pub fn angular_cmp<S: Scalar>(u: &QVector<S>, v: &QVector<S>) -> Ordering {
    let half = |w: &QVector<S>| -> u8 {
        if w[1].is_positive() || (w[1].is_zero() && w[0].is_positive()) {
            0
        } else {
            1
        }
    };
    half(u).cmp(&half(v)).then_with(|| {
        let c = cross2(u, v);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_zero() {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    })
}

/// Deduplicated ray directions `v_i - v_j` of a polygon's bisection fan,
/// as primitive vectors sorted by angle.
pub fn fan_rays_polygon<S: Scalar>(ball: &UnitBall<S>) -> Result<Vec<QVector<S>>, Error> {
    Ok(labelled_fan_rays(ball)?
        .into_iter()
        .map(|(r, _)| r)
        .collect())
}

/// A primitive ray direction with its canonical vertex-pair label.
type LabelledRay<S> = (QVector<S>, (usize, usize));

fn labelled_fan_rays<S: Scalar>(ball: &UnitBall<S>) -> Result<Vec<LabelledRay<S>>, Error> {
    if ball.family() != Family::Polygon {
        return Err(Error::BadInput(
            "fan rays are defined for polygon balls".into(),
        ));
    }
    let verts = ball.vertices();
    let mut rays: BTreeMap<QVector<S>, (usize, usize)> = BTreeMap::new();
    for i in 0..verts.len() {
        for j in 0..verts.len() {
            if i == j {
                continue;
            }
            let dir = (&verts[i] - &verts[j]).primitive();
            rays.entry(dir).or_insert((i, j));
        }
    }
    let mut out: Vec<(QVector<S>, (usize, usize))> = rays.into_iter().collect();
    out.sort_by(|(u, _), (v, _)| angular_cmp(u, v));
    Ok(out)
}

/// The signature of the open maximal fan cone containing `a`.
///
/// Errors with [`Error::DegeneratePoint`] when `a` is not in general
/// position; boundary points have no cone and fabricating one would corrupt
/// the soundness checks against cell enumeration.
pub fn locate<S: Scalar>(ball: &UnitBall<S>, a: &QVector<S>) -> Result<FanSignature, Error> {
    if ball.family() == Family::General {
        return Err(Error::BadInput(
            "fan location is implemented for the four norm families".into(),
        ));
    }
    let report = genericity(ball, a)?;
    if report.general != Some(true) {
        let witness = report
            .violations
            .first()
            .cloned()
            .unwrap_or_else(|| "not in general position".into());
        return Err(Error::DegeneratePoint(witness));
    }
    let d = ball.dim();
    Ok(match ball.family() {
        Family::Polygon => {
            let rays = labelled_fan_rays(ball)?;
            // a falls strictly between two consecutive rays (cyclically).
            let mut upper_idx = None;
            for (k, (ray, _)) in rays.iter().enumerate() {
                if angular_cmp(ray, a) == Ordering::Greater {
                    upper_idx = Some(k);
                    break;
                }
            }
            let (hi, lo) = match upper_idx {
                Some(k) => (k, (k + rays.len() - 1) % rays.len()),
                None => (0, rays.len() - 1),
            };
            FanSignature::Polygon(PolygonSig {
                lower: rays[lo].1,
                upper: rays[hi].1,
            })
        }
        Family::Cube => {
            let signs = coordinate_signs(a);
            let dominant = (0..d)
                .max_by(|&i, &j| a[i].abs().cmp(&a[j].abs()))
                .expect("d >= 2");
            debug_assert_eq!(
                (0..d).filter(|&k| a[k].abs() == a[dominant].abs()).count(),
                1,
                "general position guarantees a unique dominant coordinate"
            );
            FanSignature::Cube(CubeSig { signs, dominant })
        }
        Family::CrossPolytope => {
            let signs = coordinate_signs(a);
            let table = SubsetSumTable::new(a.coords());
            let full = ((1u64 << d) - 1) as u32;
            let heavy_side = (0..1u32 << (d - 1))
                .map(|k| {
                    let mask = 2 * k + 1;
                    table.get(mask) > table.get(full ^ mask)
                })
                .collect();
            FanSignature::Cross(CrossSig { signs, heavy_side })
        }
        Family::RootPolytopeA => FanSignature::Wasserstein(wasserstein_signature(a)),
        Family::General => unreachable!("rejected above"),
    })
}

fn coordinate_signs<S: Scalar>(a: &QVector<S>) -> Vec<Sign> {
    a.iter()
        .map(|c| Sign::of(c).expect("general position excludes zero coordinates"))
        .collect()
}

fn wasserstein_signature<S: Scalar>(a: &QVector<S>) -> WassersteinSig {
    let d = a.dim();
    let table = SubsetSumTable::new(a.coords());
    let full = ((1u64 << d) - 1) as u32;
    let mut positive_canonical = BTreeSet::new();
    for k in 0..1u32 << (d - 1) {
        let mask = 2 * k + 1;
        if mask != full && table.get(mask).is_positive() {
            positive_canonical.insert(mask);
        }
    }
    let (pos, neg) = support_masks(a.coords());
    let mut heavy_positive = BTreeSet::new();
    let mut sub = pos;
    loop {
        if table.get(sub) > table.get(pos & !sub) {
            heavy_positive.insert(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & pos;
    }
    let mut light_negative = BTreeSet::new();
    let mut sub = neg;
    loop {
        if table.get(sub) < table.get(neg & !sub) {
            light_negative.insert(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & neg;
    }
    WassersteinSig {
        dim: d,
        positive_canonical,
        heavy_positive,
        light_negative,
    }
}

/// Whether two general-position sites lie in the interior of the same
/// maximal fan cone.
pub fn same_cone<S: Scalar>(
    ball: &UnitBall<S>,
    a: &QVector<S>,
    b: &QVector<S>,
) -> Result<bool, Error> {
    Ok(locate(ball, a)? == locate(ball, b)?)
}

/// The piecewise-linear function `p(a) = sum_I f_I(a) + g_I(a)` over all
/// subsets `I` of the ground set, where `f_I` is the largest and `g_I` the
/// smallest subset sum drawn from inside `I` or its complement. The extremal
/// subset is the positive (negative) support restricted to `I` or `I^c`, so
/// each term is two table lookups.
pub fn wasserstein_p<S: Scalar>(a: &QVector<S>) -> Result<S, Error> {
    let d = a.dim();
    if d > MAX_BALL_DIM {
        return Err(Error::CapExceeded(d, MAX_BALL_DIM));
    }
    if !a.sum().is_zero() {
        return Err(Error::NotInHyperplane);
    }
    let table = SubsetSumTable::new(a.coords());
    let (pos, neg) = support_masks(a.coords());
    let full = ((1u64 << d) - 1) as u32;
    let mut total = S::zero();
    for mask in 0..=full {
        let comp = full ^ mask;
        let f = table.get(mask & pos).max(table.get(comp & pos));
        let g = table.get(mask & neg).min(table.get(comp & neg));
        total = total + f.clone() + g.clone();
    }
    Ok(total)
}
