//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_horo::corpus;
use toric_horo::correspond::verify_correspondence;
use toric_horo::exactla::rational::{frac, int};
use toric_horo::exactla::{QVector, Rational};
use toric_horo::fan::{fan_from_polytope, hilbert_basis, is_polytopal, Cone, Fan};
use toric_horo::horo::{default_schedule, pseudo_norm, verify_convergence, PolyNorm};
use toric_horo::qv;
use toric_horo::toric::{
    affine_chart, boundary_point_eq, classify_limit_complex, classify_limit_real, distinguished_point,
    translation_equivariance_check, PathSpec, Shift,
};

type Criterion = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn corpus_fans() -> Vec<(&'static str, Fan)> {
    let mut fans: Vec<(&'static str, Fan)> = corpus::polytopes()
        .into_iter()
        .map(|(name, p)| (name, fan_from_polytope(&p).unwrap()))
        .collect();
    fans.push(("fulton", corpus::fulton_fan()));
    fans
}

fn bipolar() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut failures = Vec::new();
    for (name, p) in corpus::polytopes() {
        let start = Instant::now();
        let back = p.polar().unwrap().polar().unwrap();
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        if back.vertices() != p.vertices() || elapsed >= Duration::from_secs(1) {
            failures.push(name);
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("7 polytopes, slowest {:.3} s, failures {:?}", slowest.as_secs_f64(), failures),
    )
}

fn face_duality() -> Outcome {
    let mut checked = 0;
    let mut pairs = 0;
    let mut failures = Vec::new();
    for (name, p) in corpus::polytopes() {
        let q = p.polar().unwrap();
        let n = p.dim() as isize;
        let faces: Vec<usize> = p.proper_faces().map(|f| f.id).collect();
        let mut dual = Vec::new();
        for &f in &faces {
            let e = p.dual_face(&q, f).unwrap();
            // Independent scan for faces pairing to -1 with complementary dimension.
            let candidates: Vec<usize> = q
                .proper_faces()
                .filter(|g| g.dim + p.face(f).dim == n - 1)
                .filter(|g| {
                    p.face(f).vertex_ids.iter().all(|&x| {
                        g.vertex_ids
                            .iter()
                            .all(|&y| p.vertices()[x].dot(&q.vertices()[y]) == -Rational::one())
                    })
                })
                .map(|g| g.id)
                .collect();
            if candidates != vec![e] {
                failures.push(format!("{name}: face {f}"));
            }
            dual.push(e);
            checked += 1;
        }
        for (i, &f1) in faces.iter().enumerate() {
            for (j, &f2) in faces.iter().enumerate() {
                if i == j {
                    continue;
                }
                let below = p.is_face_of(f1, f2);
                if below {
                    pairs += 1;
                }
                if below != q.is_face_of(dual[j], dual[i]) {
                    failures.push(format!("{name}: order {f1} {f2}"));
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{checked} faces, {pairs} comparable pairs, failures {failures:?}"),
    )
}

fn norm_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let width = Rational::new(1.into(), 1_000_000_000.into());
    let mut mismatches = 0;
    let mut oracle_failures = 0;
    let mut total = 0;
    for (_, p) in corpus::polytopes() {
        let norm = PolyNorm::new(&p).unwrap();
        for k in 0..1000 {
            let x = common::random_vector(&mut rng, p.dim(), 12, 7);
            let g = norm.gauge(&x);
            if pseudo_norm(norm.polar().vertices(), &x).unwrap() != g {
                mismatches += 1;
            }
            if k < 100 {
                let (lo, hi) = common::gauge_by_bisection(p.vertices(), &x, &width);
                if !(lo <= g && g <= hi && &hi - &lo < width) {
                    oracle_failures += 1;
                }
            }
            total += 1;
        }
    }
    Outcome::new(
        mismatches == 0 && oracle_failures == 0,
        format!("{total} points, {mismatches} identity mismatches, {oracle_failures} bisection disagreements"),
    )
}

fn barycenter(cone: &Cone) -> QVector {
    let n = cone.ambient_dim();
    let count = Rational::from_integer(cone.rays().len().into());
    cone.rays()
        .iter()
        .fold(QVector::zeros(n), |acc, r| &acc + r)
        .scale(&count.recip())
}

fn horofunction_convergence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let schedule = default_schedule();
    let limit = int(1 << 16);
    let mut runs = 0;
    let mut failures = Vec::new();
    let mut worst = Rational::one();
    for name in ["square", "cross2", "asymquad", "cube3"] {
        let p = corpus::polytope(name).unwrap();
        let norm = PolyNorm::new(&p).unwrap();
        let n = p.dim();
        for f in p.proper_faces() {
            let cone = norm.fan().cone(norm.fan().cone_of_face(f.id).unwrap());
            let path = PathSpec::real(barycenter(cone), QVector::zeros(n));
            let samples: Vec<QVector> = (0..25).map(|_| common::random_vector(&mut rng, n, 6, 4)).collect();
            let report = verify_convergence(&norm, &path, &samples, &schedule).unwrap();
            let ok = report.stabilized
                && report.lipschitz_ok
                && report.horofunction.face == f.id
                && report.t0_per_sample.iter().all(|s| s.t0.as_ref().is_some_and(|t| *t <= limit));
            for s in &report.t0_per_sample {
                if let Some(t) = &s.t0 {
                    worst = worst.max(t.clone());
                }
            }
            if !ok {
                failures.push(format!("{name}: face {}", f.id));
            }
            runs += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        failures.is_empty() && elapsed < Duration::from_secs(30),
        format!(
            "{runs} faces x 25 samples, max t0 {worst}, {:.2} s, failures {failures:?}",
            elapsed.as_secs_f64()
        ),
    )
}

fn correspondence_certificate() -> Outcome {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for (name, p) in corpus::polytopes() {
        let r = verify_correspondence(&p).unwrap();
        let expected = match name {
            "square" => Some(8),
            "cube3" => Some(26),
            "simplex2" => Some(6),
            _ => None,
        };
        if !r.passes() || expected.is_some_and(|e| e != r.cell_count()) {
            failures.push(name);
        }
        counts.push(format!("{name}={}", r.cell_count()));
    }
    Outcome::new(
        failures.is_empty(),
        format!("cells {}, failures {failures:?}", counts.join(" ")),
    )
}

fn hilbert_bases() -> Outcome {
    let set = |v: &[QVector]| v.iter().cloned().collect::<BTreeSet<_>>();
    let cases: Vec<(&str, Cone, Vec<QVector>, Vec<QVector>)> = vec![
        (
            "quadrant",
            Cone::from_generators(2, &[qv![1, 0], qv![0, 1]]).unwrap(),
            vec![qv![1, 0], qv![0, 1]],
            vec![],
        ),
        (
            "cone{(0,1),(2,-1)}",
            Cone::from_generators(2, &[qv![0, 1], qv![2, -1]]).unwrap(),
            vec![qv![0, 1], qv![1, 0], qv![2, -1]],
            vec![],
        ),
        (
            "plane",
            Cone::zero(2).dual(),
            vec![],
            vec![qv![1, 0], qv![-1, 0], qv![0, 1], qv![0, -1]],
        ),
    ];
    let mut failures = Vec::new();
    let mut points = 0;
    for (name, cone, elements, lineality) in cases {
        let h = hilbert_basis(&cone);
        let mut cone_gens: Vec<QVector> = cone.rays().to_vec();
        for l in cone.lineality() {
            cone_gens.push(l.clone());
            cone_gens.push(-l);
        }
        let check = common::semigroup_check(2, &cone_gens, &h.generators());
        points += check.points_checked;
        if set(&h.elements) != set(&elements)
            || set(&h.lineality_generators) != set(&lineality)
            || !check.generates
            || !check.minimal
        {
            failures.push(name);
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("3 cones, {points} box lattice points checked, failures {failures:?}"),
    )
}

fn fulton_and_polytopality() -> Outcome {
    let fulton = corpus::fulton_fan();
    let valid = fulton.validate().is_valid();
    let complete = fulton.is_complete().unwrap_or(false);
    let report = is_polytopal(&fulton).unwrap();
    let mut failures = Vec::new();
    for (name, p) in corpus::polytopes() {
        let fan = fan_from_polytope(&p).unwrap();
        let r = is_polytopal(&fan).unwrap();
        if !(r.coplanarity_feasible && r.strictly_convex_feasible && r.witness_fan_matches == Some(true)) {
            failures.push(name);
        }
    }
    Outcome::new(
        valid && complete && !report.coplanarity_feasible && failures.is_empty(),
        format!(
            "fulton valid={valid} complete={complete} coplanarity_feasible={}; corpus failures {failures:?}",
            report.coplanarity_feasible
        ),
    )
}

fn random_path<R: Rng>(rng: &mut R, n: usize) -> PathSpec {
    PathSpec {
        u: common::random_nonzero(rng, n, 6, 3),
        c: common::random_vector(rng, n, 8, 5),
        y0: Some(common::random_vector(rng, n, 4, 9)),
    }
}

fn toric_model() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    let mut samples = 0;
    for (name, fan) in corpus_fans() {
        let n = fan.dim();
        let zero = fan.cone(fan.zero_cone().unwrap());
        let point = distinguished_point(zero, &affine_chart(zero)).unwrap();
        if point.coordinates != vec![1; 2 * n] {
            failures.push(format!("{name}: distinguished point"));
        }
        if fan.orbit_table().iter().any(|&(c, d)| d + fan.cone(c).dim() != n) {
            failures.push(format!("{name}: orbit dims"));
        }
        for _ in 0..100 {
            let path = random_path(&mut rng, n);
            let shift = Shift {
                real: common::random_vector(&mut rng, n, 8, 5),
                imag: Some(common::random_vector(&mut rng, n, 4, 9)),
            };
            if !translation_equivariance_check(&fan, &path, &shift).unwrap() {
                failures.push(format!("{name}: equivariance at {}", path.u));
            }
            let base = classify_limit_complex(&fan, &path).unwrap();
            let real = classify_limit_real(&fan, &path).unwrap();
            let span = &fan.cone(base.cone).span_basis().vectors;
            let along = span.iter().fold(QVector::zeros(n), |acc, v| {
                &acc + &v.scale(&frac(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
            });
            let integer: QVector = (0..n).map(|_| int(rng.gen_range(-5..=5))).collect();
            let moved_real = PathSpec {
                c: &path.c + &along,
                ..path.clone()
            };
            let moved_imag = PathSpec {
                y0: Some(path.y0.as_ref().unwrap() + &along),
                ..path.clone()
            };
            let periodic = PathSpec {
                y0: Some(path.y0.as_ref().unwrap() + &integer),
                ..path.clone()
            };
            let same = |p: &PathSpec| boundary_point_eq(&base, &classify_limit_complex(&fan, p).unwrap()).unwrap();
            let same_real = boundary_point_eq(&real, &classify_limit_real(&fan, &moved_real).unwrap()).unwrap();
            if !(same(&moved_real) && same(&moved_imag) && same(&periodic) && same_real) {
                failures.push(format!("{name}: quotient invariance at {}", path.u));
            }
            samples += 1;
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("8 fans, {samples} random paths, failures {failures:?}"),
    )
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("bipolar identity", bipolar),
        ("face duality", face_duality),
        ("norm identity", norm_identity),
        ("horofunction convergence", horofunction_convergence),
        ("correspondence certificate", correspondence_certificate),
        ("hilbert bases", hilbert_bases),
        ("fulton fan and polytopality", fulton_and_polytopality),
        ("toric model checks", toric_model),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Outcome::new(false, "panicked"));
        all &= outcome.pass;
        println!(
            "criterion {} {} {name}: {} [{:.2} s]",
            i + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}

