//! Cross-module invariants: the structural facts relating face cones,
//! bisection cones, cell enumeration and fan location.

use bisfan_core::biscone::{bisection_cone_rays, closed_form_membership};
use bisfan_core::bisector::{enumerate_cells, equivalent, genericity};
use bisfan_core::fanlocate::{locate, same_cone};
use bisfan_core::lp::{cell_nonempty_oracle, cell_system, strictly_feasible};
use bisfan_core::polytope::{Family, UnitBall};
use bisfan_core::sample::{
    circle_polygon, hexagon_perturbed, sample_generic_site, sample_site, Rng,
};
use bisfan_core::{QVec, QVector, Rat, Scalar};
use num_traits::Signed;

fn small_balls() -> Vec<UnitBall<Rat>> {
    vec![
        UnitBall::polygon(hexagon_perturbed()).unwrap(),
        UnitBall::polygon(circle_polygon::<Rat>(4, None)).unwrap(),
        UnitBall::cube(3).unwrap(),
        UnitBall::cross_polytope(3).unwrap(),
        UnitBall::root_polytope(4).unwrap(),
    ]
}

/// When a cone carries both representations (the diagonal pairs attach the
/// facet hyperplane), they describe the same set.
#[test]
fn dual_cone_representations_agree() {
    let mut rng = Rng::new(19);
    for ball in small_balls() {
        for f in 0..ball.num_facets() {
            let cone = bisection_cone_rays(&ball, f, f).unwrap();
            let rows = cone.halfspaces.as_ref().expect("diagonal pairs carry halfspaces");
            for _ in 0..10 {
                let x = sample_site(&ball, 40, &mut rng);
                let by_rows = rows.iter().all(|c| c.satisfied_by(&x).unwrap());
                assert_eq!(cone.contains(&x), by_rows, "facet {f} x {x:?}");
            }
        }
    }
}

/// The square is both a cross-polytope and a polygon; the two constructions
/// must agree on every bisector-level answer.
#[test]
fn square_cross_polytope_and_polygon_agree() {
    let cross = UnitBall::<Rat>::cross_polytope(2).unwrap();
    let polygon = UnitBall::polygon(vec![
        QVec::from_ints(&[1, 0]),
        QVec::from_ints(&[0, 1]),
        QVec::from_ints(&[-1, 0]),
        QVec::from_ints(&[0, -1]),
    ])
    .unwrap();
    let mut rng = Rng::new(23);
    for _ in 0..40 {
        let a = sample_site(&cross, 100, &mut rng);
        if a.is_zero() {
            continue;
        }
        assert_eq!(cross.gauge(&a).unwrap(), polygon.gauge(&a).unwrap());
        assert_eq!(
            enumerate_cells(&cross, &a).unwrap().len(),
            enumerate_cells(&polygon, &a).unwrap().len()
        );
        let b = sample_site(&cross, 100, &mut rng);
        if b.is_zero() {
            continue;
        }
        assert_eq!(
            equivalent(&cross, &a, &b).unwrap(),
            equivalent(&polygon, &a, &b).unwrap()
        );
    }
}

/// Generator-matrix rank: full-dimensional for distinct facets, one less on
/// the diagonal (for the sum-zero family, within its hyperplane).
#[test]
fn bisection_cone_dimensions() {
    for ball in small_balls() {
        let intrinsic = ball.dim() - usize::from(ball.sum_zero());
        for f in 0..ball.num_facets() {
            for g in 0..ball.num_facets() {
                let rank = bisection_cone_rays(&ball, f, g).unwrap().rank();
                let expected = if f == g { intrinsic - 1 } else { intrinsic };
                assert_eq!(rank, expected, "family {:?} pair ({f},{g})", ball.family());
            }
        }
    }
}

/// Closed-form enumeration equals LP-oracle enumeration at the exhaustion
/// caps of the two polynomial families (the exponential families are covered
/// at their caps by the acceptance suite).
#[test]
fn closed_form_cellsets_match_lp_at_family_caps() {
    use bisfan_core::bisector::enumerate_cells_via_lp;
    let mut rng = Rng::new(29);
    let balls = [
        UnitBall::polygon(circle_polygon::<Rat>(6, None)).unwrap(), // 2n = 12
        UnitBall::<Rat>::cube(4).unwrap(),
    ];
    for ball in &balls {
        for _ in 0..2 {
            let a = sample_generic_site(&ball, 500, &mut rng, 2000).unwrap();
            assert_eq!(
                enumerate_cells(ball, &a).unwrap(),
                enumerate_cells_via_lp(ball, &a).unwrap()
            );
        }
    }
}

/// The defining property of the bisection cone: the closed form agrees with
/// the LP nonemptiness oracle for the cell.
#[test]
fn membership_equals_cell_nonemptiness() {
    let mut rng = Rng::new(31);
    for ball in small_balls() {
        for _ in 0..8 {
            let a = sample_site(&ball, 60, &mut rng);
            if a.is_zero() {
                continue;
            }
            for f in 0..ball.num_facets() {
                for g in 0..ball.num_facets() {
                    assert_eq!(
                        closed_form_membership(&ball, f, g, &a).unwrap(),
                        cell_nonempty_oracle(&ball, f, g, &a).unwrap(),
                        "family {:?} pair ({f},{g}) site {a:?}",
                        ball.family()
                    );
                }
            }
        }
    }
}

/// For a general-position site every present pair has distinct facets and
/// its cell has a strict-interior point on the bisecting hyperplane, i.e.
/// the cell is (d-1)-dimensional.
#[test]
fn bisector_is_a_pure_complex_in_general_position() {
    let mut rng = Rng::new(47);
    for ball in small_balls() {
        for _ in 0..4 {
            let a = sample_generic_site(&ball, 500, &mut rng, 2000).unwrap();
            let cells = enumerate_cells(&ball, &a).unwrap();
            assert!(!cells.is_empty());
            for &(f, g) in cells.iter() {
                assert_ne!(f, g, "diagonal pair at a generic site");
                let sys = cell_system(&ball, f, g, &a).unwrap();
                assert!(
                    strictly_feasible(&sys),
                    "cell ({f},{g}) is lower-dimensional for {:?}",
                    ball.family()
                );
            }
        }
    }
}

/// Sites separated by a facet hyperplane through the origin, or lying in
/// different facet cones, are never equivalent.
#[test]
fn separation_forces_inequivalence() {
    let mut rng = Rng::new(53);
    for ball in small_balls() {
        let mut checked = 0;
        while checked < 25 {
            let a = sample_site(&ball, 200, &mut rng);
            let b = sample_site(&ball, 200, &mut rng);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            checked += 1;
            let mut separated = false;
            for facet in ball.facets() {
                let da = facet.normal.dot(&a).unwrap();
                let db = facet.normal.dot(&b).unwrap();
                if (da.is_positive() && db.is_negative()) || (da.is_negative() && db.is_positive())
                {
                    separated = true;
                }
            }
            if !separated && ball.face_cone_of(&a).unwrap() != ball.face_cone_of(&b).unwrap() {
                separated = true;
            }
            if separated {
                assert!(!equivalent(&ball, &a, &b).unwrap());
            }
        }
    }
}

/// Fan cones refine both the facet-hyperplane arrangement and the face fan:
/// same cone means same hyperplane sides and same facet cone.
#[test]
fn fan_refines_arrangement_and_face_fan() {
    let mut rng = Rng::new(61);
    for ball in small_balls() {
        if ball.family() == Family::General {
            continue;
        }
        for _ in 0..10 {
            let a = sample_generic_site(&ball, 500, &mut rng, 2000).unwrap();
            // A same-cone partner: scale, then nudge until the cone is kept.
            let mut b = a.scale(&Rat::from_fraction(3, 2).unwrap());
            for k in 8.. {
                let mut coords = b.coords().to_vec();
                let eps = Rat::from_fraction(1, 1i64 << k).unwrap();
                coords[0] = coords[0].clone() + eps.clone();
                if ball.sum_zero() {
                    coords[1] = coords[1].clone() - eps;
                }
                let cand = QVector::new(coords);
                if genericity(&ball, &cand).unwrap().general == Some(true)
                    && same_cone(&ball, &a, &cand).unwrap()
                {
                    b = cand;
                    break;
                }
                assert!(k < 60, "no same-cone perturbation found");
            }
            for facet in ball.facets() {
                let da = facet.normal.dot(&a).unwrap();
                let db = facet.normal.dot(&b).unwrap();
                assert_eq!(da.is_positive(), db.is_positive());
                assert_eq!(da.is_negative(), db.is_negative());
            }
            assert_eq!(
                ball.face_cone_of(&a).unwrap(),
                ball.face_cone_of(&b).unwrap()
            );
        }
    }
}

/// Wasserstein genericity coincides with general position: signatures of
/// generic points are stable under small perturbations, and non-generic
/// points witness instability arbitrarily close by.
#[test]
fn wasserstein_genericity_is_perturbation_stability() {
    let ball = UnitBall::<Rat>::root_polytope(4).unwrap();
    let mut rng = Rng::new(71);
    let directions: Vec<QVec> = (0..4)
        .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| &QVec::unit(4, i) - &QVec::unit(4, j))
        .collect();

    for _ in 0..10 {
        let a = sample_generic_site(&ball, 300, &mut rng, 2000).unwrap();
        let sig = locate(&ball, &a).unwrap();
        // Small enough perturbations in every hyperplane direction keep the
        // signature.
        for dir in &directions {
            let mut stable = false;
            for k in 4..60 {
                let step = dir.scale(&Rat::from_fraction(1, 1i64 << k).unwrap());
                let moved = &a + &step;
                match locate(&ball, &moved) {
                    Ok(s) if s == sig => {
                        stable = true;
                        break;
                    }
                    _ => continue,
                }
            }
            assert!(stable, "no stable neighborhood along {dir:?}");
        }
    }

    // Non-generic witnesses: the zero sub-sum a({1,2}) = 0 splits two cones;
    // perturbing that sum in opposite directions flips the signature however
    // small the step.
    let bad = QVec::from_ints(&[1, -1, 2, -2]);
    assert_eq!(genericity(&ball, &bad).unwrap().general, Some(false));
    let dir = &QVec::unit(4, 0) - &QVec::unit(4, 2);
    for k in [6, 12, 24] {
        let step = dir.scale(&Rat::from_fraction(1, 1i64 << k).unwrap());
        let up = locate(&ball, &(&bad + &step)).unwrap();
        let down = locate(&ball, &(&bad - &step)).unwrap();
        assert_ne!(up, down, "instability witness at scale 2^-{k}");
    }
}

/// Equivalence classes are scale-invariant and behave contravariantly under
/// negation.
#[test]
fn equivalence_scaling_and_negation() {
    let mut rng = Rng::new(83);
    for ball in small_balls() {
        for _ in 0..6 {
            let a = sample_site(&ball, 100, &mut rng);
            if a.is_zero() {
                continue;
            }
            for t in [(2, 1), (7, 3), (1, 5)] {
                let scaled = a.scale(&Rat::from_fraction(t.0, t.1).unwrap());
                assert!(equivalent(&ball, &a, &scaled).unwrap());
            }
            let cells = enumerate_cells(&ball, &a).unwrap();
            assert_eq!(cells.swapped(), enumerate_cells(&ball, &(-&a)).unwrap());
        }
    }
}
