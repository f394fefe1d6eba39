use super::*;
use crate::corpus;
use crate::exactla::rational::int;
use crate::qv;

fn square_fan() -> Fan {
    fan_from_polytope(&corpus::polytope("square").unwrap()).unwrap()
}

fn quadrants() -> Fan {
    let maximal: Vec<Vec<QVector>> = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .iter()
        .map(|&(a, b)| vec![qv![a, 0], qv![0, b]])
        .collect();
    Fan::from_maximal_cones(2, &maximal).unwrap()
}

#[test]
fn square_fan_has_nine_cones() {
    let f = square_fan();
    assert_eq!(f.cones().len(), 9);
    let dims: Vec<usize> = f.cones().iter().map(Cone::dim).collect();
    assert_eq!(dims, vec![0, 1, 1, 1, 1, 2, 2, 2, 2]);
    assert_eq!(f.zero_cone(), Some(0));
    assert!(f.validate().is_valid());
    assert!(f.is_complete().unwrap());
}

#[test]
fn cone_dims_shift_face_dims() {
    for (_, p) in corpus::polytopes() {
        let f = fan_from_polytope(&p).unwrap();
        for c in f.cones() {
            let face = p.face(f.source().unwrap()[c.id]);
            assert_eq!(c.dim() as isize, face.dim + 1);
        }
    }
}

#[test]
fn scaling_keeps_the_fan() {
    let p = corpus::polytope("asymquad").unwrap();
    let f = fan_from_polytope(&p).unwrap();
    let g = fan_from_polytope(&p.scaled(&int(2))).unwrap();
    assert!(f.same_cones(&g));
}

#[test]
fn rays_are_primitive() {
    let f = fan_from_polytope(&corpus::polytope("asymquad").unwrap()).unwrap();
    let mut rays = f.rays();
    rays.sort();
    assert_eq!(rays, vec![qv![-1, 0], qv![0, -1], qv![0, 1], qv![1, 0]]);
}

#[test]
fn overlapping_cones_reported() {
    let f = Fan::new(
        2,
        &[
            vec![],
            vec![qv![1, 0]],
            vec![qv![0, 1]],
            vec![qv![1, 1]],
            vec![qv![-1, 0]],
            vec![qv![1, 0], qv![0, 1]],
            vec![qv![1, 1], qv![-1, 0]],
        ],
    )
    .unwrap();
    let report = f.validate();
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, FanViolation::BadIntersection { .. })));
}

#[test]
fn missing_face_reported() {
    let f = Fan::new(2, &[vec![], vec![qv![1, 0], qv![0, 1]]]).unwrap();
    assert_eq!(f.validate().violations.len(), 2);
}

#[test]
fn fulton_fan_is_valid_and_complete() {
    let f = corpus::fulton_fan();
    assert!(f.validate().is_valid());
    assert!(f.is_complete().unwrap());
    let mut counts = [0; 4];
    for c in f.cones() {
        counts[c.dim()] += 1;
    }
    assert_eq!(counts, [1, 8, 12, 6]);
}

#[test]
fn single_quadrant_is_incomplete() {
    let f = Fan::from_maximal_cones(2, &[vec![qv![1, 0], qv![0, 1]]]).unwrap();
    assert!(f.validate().is_valid());
    assert!(!f.is_complete().unwrap());
    assert_eq!(f.locate(&qv![-1, 0]), Err(Error::NotInSupport));
}

#[test]
fn locate_examples() {
    let f = square_fan();
    let sector = f.locate(&qv![3, 2]).unwrap();
    assert_eq!(f.cone(sector).rays(), &[qv![1, -1], qv![1, 1]]);
    let ray = f.locate(&qv![1, 1]).unwrap();
    assert_eq!(f.cone(ray).rays(), &[qv![1, 1]]);
    assert_eq!(f.locate(&qv![0, 0]).unwrap(), 0);
}

#[test]
fn polytopal_examples() {
    let r = is_polytopal(&square_fan()).unwrap();
    assert!(r.coplanarity_feasible && r.strictly_convex_feasible);
    assert_eq!(r.witness_fan_matches, Some(true));

    let r = is_polytopal(&quadrants()).unwrap();
    assert!(r.coplanarity_feasible && r.strictly_convex_feasible);
    assert_eq!(r.heights, Some(vec![int(1); 4]));
    let w = r.witness.unwrap();
    assert_eq!(w.vertices().len(), 4);

    let r = is_polytopal(&corpus::fulton_fan()).unwrap();
    assert!(!r.coplanarity_feasible);
    assert!(!r.strictly_convex_feasible);
}

#[test]
fn incomplete_fan_rejected_by_polytopal() {
    let f = Fan::from_maximal_cones(2, &[vec![qv![1, 0], qv![0, 1]]]).unwrap();
    assert!(matches!(is_polytopal(&f), Err(Error::Fan(_))));
}
