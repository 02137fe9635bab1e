use proptest::prelude::*;
use radbound::{Curvature, Point, SpaceForm};

fn unit(v: [f64; 3]) -> Option<Vec<f64>> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    (n > 1e-3).then(|| v.iter().map(|x| x / n).collect())
}

fn vec3() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0f64..1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn flat_triangle_inequality(p in vec3(), q in vec3(), r in vec3()) {
        let sf = SpaceForm::flat(3).unwrap();
        let pt = |v: [f64; 3]| sf.point(v.to_vec()).unwrap();
        let (p, q, r) = (pt(p), pt(q), pt(r));
        let d = |a: &Point<f64>, b: &Point<f64>| sf.distance(a, b).unwrap();
        prop_assert!(d(&p, &q) + d(&q, &r) - d(&p, &r) >= -1e-12);
    }

    #[test]
    fn spherical_triangle_inequality(p in vec3(), q in vec3(), r in vec3()) {
        let sf = SpaceForm::spherical(2).unwrap();
        let (Some(p), Some(q), Some(r)) = (unit(p), unit(q), unit(r)) else { return Ok(()); };
        let (p, q, r) = (sf.point(p).unwrap(), sf.point(q).unwrap(), sf.point(r).unwrap());
        let d = |a: &Point<f64>, b: &Point<f64>| sf.distance(a, b).unwrap();
        prop_assert!(d(&p, &q) + d(&q, &r) - d(&p, &r) >= -1e-12);
        prop_assert!(d(&p, &q) <= std::f64::consts::PI);
    }

    #[test]
    fn flat_geodesic_arc_length(p in vec3(), dir in vec3(), t in 1e-6f64..100.0) {
        let sf = SpaceForm::flat(3).unwrap();
        let Some(u) = unit(dir) else { return Ok(()); };
        let p = sf.point(p.to_vec()).unwrap();
        let q = sf.geodesic_point(&p, &u, t).unwrap();
        prop_assert!((sf.distance(&p, &q).unwrap() - t).abs() <= 1e-10);
    }

    #[test]
    fn spherical_geodesic_arc_length(p in vec3(), dir in vec3(), t in 1e-6f64..(std::f64::consts::PI - 0.1)) {
        let sf = SpaceForm::spherical(2).unwrap();
        let (Some(p), Some(d)) = (unit(p), unit(dir)) else { return Ok(()); };
        let tangent = sf.to_tangent(&p, &d);
        let Some(u) = radbound::linalg::normalized(&tangent, 1e-3) else { return Ok(()); };
        let p = sf.point(p).unwrap();
        let q = sf.geodesic_point(&p, &u, t).unwrap();
        prop_assert!((sf.distance(&p, &q).unwrap() - t).abs() <= 1e-10);
    }

    #[test]
    fn model_radius_is_arctan_of_reciprocal(a in 1e-6f64..1e6) {
        let sf = SpaceForm::spherical(2).unwrap();
        prop_assert!((sf.model_radius(a).unwrap() - (1.0 / a).atan()).abs() <= 1e-12);
    }
}

#[test]
fn md_identities_on_grid() {
    let flat = SpaceForm::flat(2).unwrap();
    let sph = SpaceForm::spherical(2).unwrap();
    for i in 0..=1000 {
        let t = i as f64 * 0.01;
        assert!((sph.md(t) + t.cos() - 1.0).abs() <= 1e-12);
        assert!((2.0 * flat.md(t) - t * t).abs() <= 1e-12);
    }
}

#[test]
fn flat_model_radius_unbounded_at_zero() {
    let flat = SpaceForm::flat(2).unwrap();
    assert!(matches!(flat.model_radius(0.0f64), Err(radbound::Error::UnboundedModelRadius)));
    assert_eq!(flat.model_radius(2.0f64).unwrap(), 0.5);
    let sph = SpaceForm::new(Curvature::Spherical, 3).unwrap();
    assert_eq!(sph.model_radius(0.0f64).unwrap(), std::f64::consts::FRAC_PI_2);
}

#[test]
fn single_precision_tracks_double() {
    let sf = SpaceForm::spherical(2).unwrap();
    let p64 = sf.project(vec![0.3f64, 0.4, 0.8]).unwrap();
    let q64 = sf.project(vec![-0.5f64, 0.1, 0.7]).unwrap();
    let d64 = sf.distance(&p64, &q64).unwrap();
    let d32 = sf.distance(&p64.cast::<f32>(), &q64.cast::<f32>()).unwrap();
    assert!((d32 as f64 - d64).abs() < 1e-6);
}
