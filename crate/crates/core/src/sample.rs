//! Seeded sampling of sites and reference polygons.
//!
//! Reproducibility matters more than statistical quality here: the generator
//! is a fixed SplitMix64 so that a seed pins byte-identical experiment output
//! across platforms and releases.

use crate::bisector::genericity;
use crate::linalg::QVector;
use crate::polytope::UnitBall;
use crate::{Error, Scalar};

/// SplitMix64 stream.
#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` (n > 0).
    pub fn next_below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform in `lo..=hi`.
    pub fn next_range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + self.next_below(span) as i64
    }
}

/// Integer vector with coordinates uniform in `[-max_num, max_num]`.
pub fn sample_vector<S: Scalar>(dim: usize, max_num: i64, rng: &mut Rng) -> QVector<S> {
    QVector::new(
        (0..dim)
            .map(|_| S::from_int(rng.next_range(-max_num, max_num)))
            .collect(),
    )
}

/// A random site valid for the ball: for the sum-zero family the last
/// coordinate balances the rest.
pub fn sample_site<S: Scalar>(ball: &UnitBall<S>, max_num: i64, rng: &mut Rng) -> QVector<S> {
    let d = ball.dim();
    if ball.sum_zero() {
        let mut coords: Vec<S> = (0..d - 1)
            .map(|_| S::from_int(rng.next_range(-max_num, max_num)))
            .collect();
        let balance = -coords.iter().fold(S::zero(), |acc, x| acc + x.clone());
        coords.push(balance);
        QVector::new(coords)
    } else {
        sample_vector(d, max_num, rng)
    }
}

/// Rejection-samples a site in general position (family genericity).
pub fn sample_generic_site<S: Scalar>(
    ball: &UnitBall<S>,
    max_num: i64,
    rng: &mut Rng,
    max_tries: usize,
) -> Result<QVector<S>, Error> {
    for _ in 0..max_tries {
        let a = sample_site(ball, max_num, rng);
        if a.is_zero() {
            continue;
        }
        if genericity(ball, &a)?.general == Some(true) {
            return Ok(a);
        }
    }
    Err(Error::BadInput(format!(
        "no generic site found in {max_tries} attempts"
    )))
}

/// Rejection-samples a nonzero site in weak general position.
pub fn sample_weak_general_site<S: Scalar>(
    ball: &UnitBall<S>,
    max_num: i64,
    rng: &mut Rng,
    max_tries: usize,
) -> Result<QVector<S>, Error> {
    for _ in 0..max_tries {
        let a = sample_site(ball, max_num, rng);
        if a.is_zero() {
            continue;
        }
        if ball.is_weak_general_position(&a)? {
            return Ok(a);
        }
    }
    Err(Error::BadInput(format!(
        "no weak-general site found in {max_tries} attempts"
    )))
}

/// A centrally symmetric `2n`-gon with vertices on the rational unit circle.
///
/// The upper-half vertices are `((1-t^2)/(1+t^2), 2t/(1+t^2))` for strictly
/// increasing positive parameters `t_1 < ... < t_n`; the lower half is their
/// negation. Distinct points on a circle are automatically in strictly convex
/// counter-clockwise position. With `perturb`, the parameters are jittered
/// (strict ordering re-checked) so repeated calls give combinatorially
/// distinct polygons.
pub fn circle_polygon<S: Scalar>(n: usize, perturb: Option<&mut Rng>) -> Vec<QVector<S>> {
    assert!(n >= 2, "need at least a quadrilateral");
    let base: Vec<(i64, i64)> = (1..=n as i64).map(|k| (k, n as i64 + 1 - k)).collect();
    // Jitter below half the parameter gap; small denominators keep all
    // downstream arithmetic single-limb.
    let jitter_den = 16 * (n as i64 + 1) * (n as i64 + 1);
    let params: Vec<S> = match perturb {
        None => base
            .iter()
            .map(|&(p, q)| S::from_fraction(p, q).expect("q >= 1"))
            .collect(),
        Some(rng) => loop {
            let candidate: Vec<S> = base
                .iter()
                .map(|&(p, q)| {
                    let t = S::from_fraction(p, q).expect("q >= 1");
                    let eps = S::from_fraction(rng.next_range(-4, 4), jitter_den).expect("den > 0");
                    t + eps
                })
                .collect();
            let increasing = candidate.windows(2).all(|w| w[0] < w[1]);
            if increasing && candidate[0].is_positive() {
                break candidate;
            }
        },
    };
    let one = S::one();
    let two = S::from_int(2);
    let mut vertices: Vec<QVector<S>> = params
        .iter()
        .map(|t| {
            let t2 = t.clone() * t.clone();
            let den = one.clone() + t2.clone();
            QVector::new(vec![
                (one.clone() - t2) / den.clone(),
                two.clone() * t.clone() / den,
            ])
        })
        .collect();
    let lower: Vec<QVector<S>> = vertices.iter().map(|v| -v).collect();
    vertices.extend(lower);
    vertices
}

/// Hexagon whose three main diagonals are each parallel to an edge, the
/// degeneracy pattern of the regular hexagon, realized with rational
/// coordinates via the identity `v1 + v3 = v2`.
pub fn hexagon_aligned<S: Scalar>() -> Vec<QVector<S>> {
    let h = |num: i64, den: i64| S::from_fraction(num, den).expect("den > 0");
    let pts = [
        (h(0, 1), h(1, 1)),
        (h(-13, 15), h(1, 2)),
        (h(-13, 15), h(-1, 2)),
        (h(0, 1), h(-1, 1)),
        (h(13, 15), h(-1, 2)),
        (h(13, 15), h(1, 2)),
    ];
    pts.into_iter()
        .map(|(x, y)| QVector::new(vec![x, y]))
        .collect()
}

/// The aligned hexagon with one antipodal vertex pair displaced so that no
/// main diagonal stays parallel to an edge.
pub fn hexagon_perturbed<S: Scalar>() -> Vec<QVector<S>> {
    let h = |num: i64, den: i64| S::from_fraction(num, den).expect("den > 0");
    let pts = [
        (h(0, 1), h(1, 1)),
        (h(-13, 15), h(1, 2)),
        (h(-7, 15), h(-9, 10)),
        (h(0, 1), h(-1, 1)),
        (h(13, 15), h(-1, 2)),
        (h(7, 15), h(9, 10)),
    ];
    pts.into_iter()
        .map(|(x, y)| QVector::new(vec![x, y]))
        .collect()
}
