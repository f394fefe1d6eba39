//! Built-in fixtures.

use crate::exactla::rational::frac;
use crate::exactla::QVector;
use crate::fan::Fan;
use crate::polytope::{hull, Polytope};
use crate::qv;

pub const POLYTOPE_NAMES: [&str; 7] = [
    "square", "cross2", "asymquad", "simplex2", "cube3", "octa3", "pyramid3",
];

pub const FAN_NAMES: [&str; 1] = ["fulton"];

fn points(name: &str) -> Option<Vec<QVector>> {
    let pts = match name {
        "square" => vec![qv![1, 1], qv![1, -1], qv![-1, 1], qv![-1, -1]],
        "cross2" => vec![qv![1, 0], qv![-1, 0], qv![0, 1], qv![0, -1]],
        "asymquad" => vec![qv![2, 0], qv![0, 1], qv![-1, 0], qv![0, -1]],
        "simplex2" => vec![
            qv![1, 0],
            qv![0, 1],
            QVector::new(vec![frac(-1, 2), frac(-1, 2)]),
        ],
        "cube3" => {
            let mut v = Vec::new();
            for x in [-1, 1] {
                for y in [-1, 1] {
                    for z in [-1, 1] {
                        v.push(qv![x, y, z]);
                    }
                }
            }
            v
        }
        "octa3" => vec![
            qv![1, 0, 0],
            qv![-1, 0, 0],
            qv![0, 1, 0],
            qv![0, -1, 0],
            qv![0, 0, 1],
            qv![0, 0, -1],
        ],
        "pyramid3" => vec![
            qv![1, 1, -1],
            qv![1, -1, -1],
            qv![-1, 1, -1],
            qv![-1, -1, -1],
            qv![0, 0, 2],
        ],
        _ => return None,
    };
    Some(pts)
}

/// A named polytope fixture; every one has the origin strictly inside.
pub fn polytope(name: &str) -> Option<Polytope> {
    let p = hull(&points(name)?).expect("fixture is full-dimensional");
    assert!(p.origin_interior(), "fixture {name} must contain the origin");
    Some(p)
}

pub fn polytopes() -> Vec<(&'static str, Polytope)> {
    POLYTOPE_NAMES
        .iter()
        .map(|&n| (n, polytope(n).expect("known fixture")))
        .collect()
}

/// Rays of the complete non-polytopal fan: the vertices of the cube with
/// `(1, 1, 1)` pushed out to `(1, 2, 3)`.
pub fn fulton_rays() -> Vec<QVector> {
    vec![
        qv![-1, 1, 1],
        qv![-1, 1, -1],
        qv![-1, -1, 1],
        qv![-1, -1, -1],
        qv![1, -1, 1],
        qv![1, -1, -1],
        qv![1, 1, -1],
        qv![1, 2, 3],
    ]
}

/// Six maximal cones over the facets of the combinatorial cube.
pub fn fulton_fan() -> Fan {
    let rays = fulton_rays();
    // Index of the ray at cube vertex (sx, sy, sz).
    let at = |s: [i64; 3]| -> QVector {
        if s == [1, 1, 1] {
            qv![1, 2, 3]
        } else {
            qv![s[0], s[1], s[2]]
        }
    };
    let mut maximal = Vec::new();
    for axis in 0..3 {
        for sign in [-1, 1] {
            let mut gens = Vec::new();
            for a in [-1, 1] {
                for b in [-1, 1] {
                    let mut s = [0i64; 3];
                    s[axis] = sign;
                    s[(axis + 1) % 3] = a;
                    s[(axis + 2) % 3] = b;
                    gens.push(at(s));
                }
            }
            debug_assert!(gens.iter().all(|g| rays.contains(g)));
            maximal.push(gens);
        }
    }
    Fan::from_maximal_cones(3, &maximal).expect("fixture cones are pointed")
}

pub fn fan(name: &str) -> Option<Fan> {
    (name == "fulton").then(fulton_fan)
}
