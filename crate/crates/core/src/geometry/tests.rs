use super::*;
use crate::measures::{sample_affine_hitting, RngStream};

fn v(xs: &[f64]) -> Vector {
    Vector::from_row_slice(xs)
}

fn line(p: &[f64], u: &[f64]) -> AffineSubspace {
    AffineSubspace::line(v(p), &v(u)).unwrap()
}

#[test]
fn ball_diameter() {
    let b = parse_body("ball", 3).unwrap();
    let c = b.line_intersect(&line(&[0., 0., 0.], &[1., 0., 0.])).unwrap().unwrap();
    assert!((c.length - 2.0).abs() < 1e-12);
    assert!((c.endpoints[0].position[0] + 1.0).abs() < 1e-12);
    assert!((c.endpoints[1].position[0] - 1.0).abs() < 1e-12);
    assert!((c.angles.alpha(0) - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
    assert!(c.is_degenerate());
    assert!(c.angles.cos_phi0.is_none());
}

#[test]
fn disk_chord_at_offset() {
    let b = parse_body("ball", 2).unwrap();
    let c = b.line_intersect(&line(&[0.6, 0.], &[0., 1.])).unwrap().unwrap();
    assert!((c.length - 1.6).abs() < 1e-12);
    assert!((c.angles.sin_alpha[0] - 0.8).abs() < 1e-12);
}

#[test]
fn ball_chord_off_center() {
    let b = parse_body("ball", 3).unwrap();
    let c = b.line_intersect(&line(&[0.6, 0., 0.], &[0., 0., 1.])).unwrap().unwrap();
    for i in 0..2 {
        assert!((c.angles.sin_alpha[i] - 0.8).abs() < 1e-12);
        let u = c.angles.projected_normals[i].as_ref().unwrap();
        assert!((u - v(&[1., 0., 0.])).norm() < 1e-12);
    }
    assert!((c.angles.cos_phi0.unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn cube_vertical_chord() {
    let b = parse_body("cube", 3).unwrap();
    let p = b.as_polytope().unwrap();
    let c = b.line_intersect(&line(&[0.5, 0.5, 0.2], &[0., 0., 1.])).unwrap().unwrap();
    assert!((c.length - 1.0).abs() < 1e-12);
    assert!(c.is_regular_polytope_chord());
    let f0 = &p.facets()[c.endpoints[0].facet.unwrap()];
    let f1 = &p.facets()[c.endpoints[1].facet.unwrap()];
    assert!((&f0.normal - v(&[0., 0., -1.])).norm() < 1e-12);
    assert!((&f1.normal - v(&[0., 0., 1.])).norm() < 1e-12);
}

#[test]
fn cube_oblique_chord_angles() {
    let b = parse_body("cube", 3).unwrap();
    let u = v(&[1., 0., 1.]) / 2f64.sqrt();
    let c = b.line_intersect(&line(&[0.5, 0.5, 0.0], &[1., 0., 1.])).unwrap().unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!((c.angles.sin_alpha[0] - s).abs() < 1e-12);
    assert!((c.angles.sin_alpha[1] - s).abs() < 1e-12);
    let u1 = (v(&[0., 0., -1.]) + &u * s).normalize();
    let u2 = (v(&[1., 0., 0.]) - &u * s).normalize();
    assert!((c.angles.cos_phi0.unwrap() - u1.dot(&u2)).abs() < 1e-12);
    assert!((u1.dot(&u2) - 1.0).abs() < 1e-12);
}

#[test]
fn normals() {
    let b = parse_body("ball", 3).unwrap();
    assert!((b.normal_at(&v(&[0., 1., 0.])).unwrap() - v(&[0., 1., 0.])).norm() < 1e-12);
    let e = parse_body("ellipsoid:2,1", 2).unwrap();
    assert!((e.normal_at(&v(&[2., 0.])).unwrap() - v(&[1., 0.])).norm() < 1e-12);
    let c = parse_body("cube", 3).unwrap();
    assert!((c.normal_at(&v(&[0.3, 0.7, 1.])).unwrap() - v(&[0., 0., 1.])).norm() < 1e-12);
    assert!(matches!(c.normal_at(&v(&[1., 0.7, 1.])), Err(GeomError::Ridge(..))));
    assert!(matches!(c.normal_at(&v(&[0.5, 0.5, 0.5])), Err(GeomError::OffBoundary(_))));
}

#[test]
fn ball_sections() {
    let b = parse_body("ball", 3).unwrap();
    let plane = AffineSubspace::spanned_by(v(&[0., 0., 0.5]), &[v(&[1., 0., 0.]), v(&[0., 1., 0.])]).unwrap();
    let s = b.plane_section(&plane).unwrap().unwrap();
    match s.shape() {
        Shape::Ball(d) => assert!((d.radius - 0.75f64.sqrt()).abs() < 1e-12),
        _ => panic!("expected a disk"),
    }
    assert!((s.to_ambient(&s.center()) - v(&[0., 0., 0.5])).norm() < 1e-12);
    let far = AffineSubspace::spanned_by(v(&[0., 0., 2.]), &[v(&[1., 0., 0.]), v(&[0., 1., 0.])]).unwrap();
    assert!(b.plane_section(&far).unwrap().is_none());
}

#[test]
fn cube_hexagon_section() {
    let b = parse_body("cube", 3).unwrap();
    let plane = AffineSubspace::spanned_by(v(&[0.5, 0.5, 0.5]), &[v(&[1., -1., 0.]), v(&[1., 1., -2.])]).unwrap();
    let s = b.plane_section(&plane).unwrap().unwrap();
    let p = s.as_polytope().unwrap();
    assert_eq!(p.vertices().len(), 6);
    assert_eq!(p.facets().len(), 6);
    let side = 0.5f64.sqrt();
    for f in p.facets() {
        assert!((f.area - side).abs() < 1e-10, "side {}", f.area);
    }
    let hex_area = 3.0 * 3f64.sqrt() / 2.0 * side * side;
    assert!((p.volume() - hex_area).abs() < 1e-10);
    for x in p.vertices() {
        assert!(b.boundary_residual(&s.to_ambient(x)).abs() < 1e-9);
    }
}

#[test]
fn polytope_line_sections_are_segments() {
    let b = parse_body("cube", 3).unwrap();
    let g = line(&[0.5, 0.5, 0.2], &[0., 0., 1.]);
    let s = b.plane_section(&g).unwrap().unwrap();
    assert!((s.volume() - 1.0).abs() < 1e-12);
    let d4 = parse_body("cube", 4).unwrap();
    let e3 = AffineSubspace::spanned_by(
        Vector::from_element(4, 0.5),
        &[v(&[1., 0., 0., 0.]), v(&[0., 1., 0., 0.]), v(&[0., 0., 1., 0.])],
    )
    .unwrap();
    assert!(matches!(d4.plane_section(&e3), Err(GeomError::Unsupported(_))));
}

#[test]
fn facet_invariants() {
    for name in ["cube", "simplex", "regular-simplex", "octahedron"] {
        for d in 2..=4 {
            let b = parse_body(name, d).unwrap();
            let p = b.as_polytope().unwrap();
            for f in p.facets() {
                assert!((f.normal.norm() - 1.0).abs() < 1e-12);
                assert!(f.normal.dot(&(&f.centroid - p.centroid())) > 0.0);
                let sum: f64 = f.simplices.iter().map(|s| simplex_volume(s)).sum();
                assert!((sum - f.area).abs() <= 1e-10 * f.area);
                for &j in &f.vertex_indices {
                    assert!((f.normal.dot(&p.vertices()[j]) - f.offset).abs() < 1e-9);
                }
            }
            for x in p.vertices() {
                assert!(p.max_violation(x) < 1e-9);
            }
        }
    }
}

#[test]
fn builtin_volumes() {
    let cases = [("cube", 3, 1.0, 6.0), ("simplex", 3, 1.0 / 6.0, 1.5 + 0.75f64.sqrt()), ("octahedron", 3, 4.0 / 3.0, 4.0 * 3f64.sqrt())];
    for (name, d, vol, area) in cases {
        let b = parse_body(name, d).unwrap();
        assert!((b.volume() - vol).abs() < 1e-12, "{name}");
        assert!((b.surface_area().unwrap() - area).abs() < 1e-12, "{name}");
    }
    let rs = parse_body("regular-simplex", 3).unwrap();
    assert!((rs.volume() - 1.0 / (6.0 * 2f64.sqrt())).abs() < 1e-12);
    assert!((rs.surface_area().unwrap() - 3f64.sqrt()).abs() < 1e-12);
    let hexagon = parse_body("regular-polygon:6", 2).unwrap();
    assert!((hexagon.volume() - 1.5 * 3f64.sqrt()).abs() < 1e-12);
    assert!((hexagon.surface_area().unwrap() - 6.0).abs() < 1e-12);
    assert!((parse_body("cube", 4).unwrap().volume() - 1.0).abs() < 1e-12);
}

#[test]
fn text_format_roundtrip() {
    let text = "# unit square\nvertices\n0 0\n1 0\n1 1\n0 1\nhalfspaces\n-1 0 0\n1 0 1\n0 -1 0\n0 1 1 # top\n";
    let p = parse_polytope_text(text).unwrap();
    assert_eq!(p.facets().len(), 4);
    assert!((p.volume() - 1.0).abs() < 1e-12);
    assert!(matches!(parse_polytope_text("vertices\n0 0\n1 x\n"), Err(GeomError::Parse { line: 3, .. })));
    let bad = "vertices\n0 0\n2 0\n0 1\nhalfspaces\n-1 0 0\n0 -1 0\n1 1 1\n";
    assert!(matches!(parse_polytope_text(bad), Err(GeomError::InvalidBody(_))));
    assert!("sphere".parse::<BodySpec>().is_err());
}

#[test]
fn ellipsoid_section_agrees_with_direct_chord() {
    let e = parse_body("ellipsoid:2,1,0.5", 3).unwrap();
    let plane = AffineSubspace::spanned_by(v(&[0.1, 0.2, 0.1]), &[v(&[1., 0.3, 0.]), v(&[0., 1., 1.])]).unwrap();
    let s = e.plane_section(&plane).unwrap().unwrap();
    let local = line(&[0.05, -0.1], &[0.7, 0.2]);
    let c_local = s.line_intersect(&local).unwrap().unwrap();
    let ambient = plane.embed(&local);
    let c = e.line_intersect(&ambient).unwrap().unwrap();
    for i in 0..2 {
        let p = s.to_ambient(&c_local.endpoints[i].position);
        assert!((p - &c.endpoints[i].position).norm() < 1e-9);
    }
}

#[test]
fn random_ball_chords() {
    let b = parse_body("ball", 3).unwrap();
    let mut rng = RngStream::new(11, 0).rng();
    let mut seen = 0;
    while seen < 10_000 {
        let s = sample_affine_hitting(&b, 1, &mut rng).unwrap();
        let Some(c) = b.line_intersect(&s.value).unwrap() else { continue };
        seen += 1;
        let p = s.value.distance(&Vector::zeros(3));
        let want = (1.0 - p * p).sqrt();
        assert!((c.angles.sin_alpha[0] - want).abs() < 1e-10);
        assert!((c.angles.sin_alpha[1] - want).abs() < 1e-10);
        let len = (&c.endpoints[0].position - &c.endpoints[1].position).norm();
        assert!((len - c.length).abs() < 1e-10);
        for ep in &c.endpoints {
            assert!(b.boundary_residual(&ep.position).abs() < 1e-9);
        }
    }
}
