use normplane::bisectors::{
    billiard_bisector, billiard_reflect, busemann, criticality_residual, glogovskij, sample_ray_pairs,
    RayPair,
};
use normplane::geom::angle_dist;
use normplane::rng::Lcg64;
use normplane::{Line, Ray, UnitBall, Vec2};
use normplane_oracles::fixtures;
use proptest::prelude::*;

type Bisector = fn(&UnitBall, &RayPair) -> normplane::Result<Ray>;
const ALL: [Bisector; 3] = [busemann, glogovskij, billiard_bisector];

fn instance(seed: u64, kind: usize) -> (UnitBall, RayPair) {
    let m = fixtures::random_ball(&mut Lcg64::new(seed), kind);
    (m, sample_ray_pairs(1, seed, 0.05)[0])
}

/// Random mirror through a random point and an incoming ray on it that is
/// not close to grazing.
fn mirror(seed: u64) -> (Line, Ray) {
    let mut rng = Lcg64::new(seed);
    let a = Vec2::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    let line = Line::new(a, Vec2::from_angle(rng.uniform(0.0, 6.3))).unwrap();
    let tilt = rng.uniform(0.1, std::f64::consts::PI - 0.1);
    let incoming = Ray::new(a, line.dir.rotated(tilt)).unwrap();
    (line, incoming)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bisectors_stay_in_sector(seed: u64, kind in 0usize..3) {
        let (m, pair) = instance(seed, kind);
        for f in ALL {
            prop_assert!(pair.contains_dir(f(&m, &pair).unwrap().dir));
        }
    }

    #[test]
    fn bisectors_swap_symmetric(seed: u64, kind in 0usize..3) {
        let (m, pair) = instance(seed, kind);
        for f in ALL {
            let a = f(&m, &pair).unwrap().angle();
            let b = f(&m, &pair.swapped()).unwrap().angle();
            prop_assert!(angle_dist(a, b) < 1e-10, "{} vs {}", a, b);
        }
    }

    #[test]
    fn busemann_linear_equivariance(seed: u64) {
        let mut rng = Lcg64::new(seed);
        let m = fixtures::random_ellipse(&mut rng);
        let t = *fixtures::random_affine(&mut rng).linear();
        let pair = sample_ray_pairs(1, seed, 0.05)[0];
        let tpair = RayPair::new(t.apply(pair.apex), t.apply(pair.u), t.apply(pair.v)).unwrap();
        let got = busemann(&m.linear_image(&t).unwrap(), &tpair).unwrap();
        let want = t.apply(busemann(&m, &pair).unwrap().dir);
        prop_assert!(angle_dist(got.angle(), want.angle()) < 1e-9);
    }

    #[test]
    fn reflection_is_critical_and_involutive(seed: u64, kind in 0usize..3) {
        let m = fixtures::random_smooth_ball(&mut Lcg64::new(seed ^ 7), kind);
        let (line, incoming) = mirror(seed);
        let out = billiard_reflect(&m, &line, &incoming).unwrap();
        let a = incoming.apex;
        prop_assert!(criticality_residual(&m, &line, a, a + incoming.dir, a + out.dir) < 1e-8);
        let back = billiard_reflect(&m, &line, &out).unwrap();
        prop_assert!((back.dir - incoming.dir).norm() < 1e-8);
    }

    #[test]
    fn glogovskij_distances_scale_linearly(seed: u64, kind in 0usize..3, t in 0.1..10.0f64) {
        let (m, pair) = instance(seed, kind);
        let r = glogovskij(&m, &pair).unwrap();
        let (z1, z2) = (r.at(1.0), r.at(t));
        let d = |z: Vec2, ray: &Ray| m.dist_point_ray(z, ray).d;
        for ray in [pair.ray_u(), pair.ray_v()] {
            prop_assert!((d(z2, &ray) / d(z1, &ray) - t).abs() < 1e-8 * t);
        }
    }

    #[test]
    fn euclidean_collapse(seed: u64) {
        let pair = sample_ray_pairs(1, seed, 0.05)[0];
        let classical = (pair.u + pair.v).angle();
        for f in ALL {
            prop_assert!(angle_dist(f(&UnitBall::circle(), &pair).unwrap().angle(), classical) < 1e-9);
        }
    }
}

#[test]
fn glogovskij_matches_brute_force() {
    let mut rng = Lcg64::new(21);
    for (i, pair) in sample_ray_pairs(9, 21, 0.1).iter().enumerate() {
        let m = fixtures::random_ball(&mut rng, i);
        let got = glogovskij(&m, pair).unwrap();
        let want = normplane_oracles::glogovskij_dir(&m, pair.apex, pair.u, pair.v, 1e-3).unwrap();
        assert!(angle_dist(got.angle(), want.angle()) < 1e-6, "{m:?} {pair:?}");
    }
}

#[test]
fn billiard_bisector_matches_least_action_scan() {
    let mut rng = Lcg64::new(22);
    for (i, pair) in sample_ray_pairs(30, 22, 0.1).iter().enumerate() {
        let m = fixtures::random_ball(&mut rng, i);
        let got = billiard_bisector(&m, pair).unwrap();
        let want = normplane_oracles::billiard_bisector_dir(&m, pair.apex, pair.u, pair.v).unwrap();
        assert!(angle_dist(got.angle(), want.angle()) < 1e-6, "{m:?} {pair:?}");
    }
}
