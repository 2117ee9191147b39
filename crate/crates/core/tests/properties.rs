use h2r::ambient::{geodesic_curvature_graph_curve, geodesic_curvature_via_connection};
use h2r::catalog::{SolutionSpec, Translated};
use h2r::pde::{assemble_residual_with, GridField};
use h2r::sampling::Rect;
use h2r::shape::{
    first_forms, gauss_map, mean_curvature, minimal_residual, shape_operator, surface_data,
    w_factor, GraphField,
};
use h2r::variational::area;
use h2r::{DomainPoint, Exec, Jet2};
use proptest::prelude::*;

fn jet() -> impl Strategy<Value = Jet2> {
    (
        -3.0..3.0f64,
        -4.0..4.0f64,
        -4.0..4.0f64,
        -4.0..4.0f64,
        -4.0..4.0f64,
        -4.0..4.0f64,
    )
        .prop_map(|(f, fx, fy, fxx, fxy, fyy)| Jet2 {
            f,
            fx,
            fy,
            fxx,
            fxy,
            fyy,
        })
}

fn point() -> impl Strategy<Value = DomainPoint> {
    (-3.0..3.0f64, 0.1..4.0f64).prop_map(|(x, y)| DomainPoint::new(x, y).unwrap())
}

proptest! {
    #[test]
    fn area_element_is_w(p in point(), j in jet()) {
        let (e, f, g) = first_forms(p, &j);
        let w = w_factor(p, &j);
        prop_assert!(((e * g - f * f) - w * w).abs() <= 1e-12 * w * w);
    }

    #[test]
    fn residual_is_scaled_mean_curvature(p in point(), j in jet()) {
        // residual = 2 H w³ y⁴
        let y = p.y();
        let w = w_factor(p, &j);
        let lhs = minimal_residual(p, &j);
        let rhs = 2.0 * mean_curvature(p, &j) * w.powi(3) * y.powi(4);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn shape_operator_is_self_adjoint_with_trace_2h(p in point(), j in jet()) {
        let a = shape_operator(p, &j);
        let d = surface_data(p, &j);
        let scale = 1.0 + d.l.abs() + d.m.abs() + d.n.abs();
        prop_assert!(a.self_adjoint_defect(d.e, d.f, d.g) <= 1e-10 * scale * (d.e + d.g));
        prop_assert!((a.mean_curvature() - d.mean_curvature()).abs() <= 1e-10 * scale);
        // h A = II
        let low = a.lowered(d.e, d.f, d.g);
        for (got, want) in [(low[0][0], d.l), (low[0][1], d.m), (low[1][0], d.m), (low[1][1], d.n)] {
            prop_assert!((got - want).abs() <= 1e-10 * scale * (d.e + d.g));
        }
    }

    #[test]
    fn gauss_map_is_unit(p in point(), j in jet()) {
        prop_assert!((gauss_map(p, &j).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn connection_and_closed_form_curvature_agree(p in point(), yp in -5.0..5.0f64, ypp in -5.0..5.0f64) {
        let a = geodesic_curvature_graph_curve(p.y(), yp, ypp);
        let b = geodesic_curvature_via_connection(p, yp, ypp);
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn funnel_and_rational_x_are_minimal(a in -2.0..2.0f64, c in -2.0..2.0f64, p in point()) {
        for spec in [SolutionSpec::funnel(a, 0.3), SolutionSpec::rational_x(c)] {
            let j = spec.jet2(p).unwrap();
            let scale = 1.0 + (j.fxx.abs() + j.fyy.abs() + j.fy.abs()) * (1.0 + p.y() * p.y() * (j.fx * j.fx + j.fy * j.fy));
            prop_assert!(minimal_residual(p, &j).abs() <= 1e-13 * scale);
        }
    }

    #[test]
    fn umbilical_family_has_equal_principal_curvatures(
        c1 in -1.0..1.0f64, c2 in -0.9..0.9f64, c3 in -1.0..1.0f64, p in point()
    ) {
        let spec = SolutionSpec::umbilical(c1, c2, c3, 0.0);
        prop_assume!(spec.is_ok());
        let spec = spec.unwrap();
        let u = spec.umbilical_params().unwrap();
        let l = u.lambda(p);
        prop_assume!(u.j() - l * l > 0.05 * u.j());
        let a = shape_operator(p, &spec.jet2(p).unwrap());
        let (k1, k2) = a.principal_curvatures();
        prop_assert!((k1 - l).abs() <= 1e-9 * (1.0 + l.abs()));
        prop_assert!((k2 - l).abs() <= 1e-9 * (1.0 + l.abs()));
    }

    #[test]
    fn x_translation_preserves_geometry(shift in -5.0..5.0f64, p in point()) {
        let base = SolutionSpec::rational_x(1.3);
        let moved = Translated { inner: base, shift };
        let q = DomainPoint::new(p.x() + shift, p.y()).unwrap();
        let a = surface_data(p, &base.jet2(p).unwrap());
        let b = surface_data(q, &moved.jet2(q).unwrap());
        let pairs = [(a.e, b.e), (a.f, b.f), (a.g, b.g), (a.l, b.l), (a.m, b.m), (a.n, b.n), (a.w, b.w)];
        for (u, v) in pairs {
            // q.x - shift differs from p.x by rounding only
            prop_assert!((u - v).abs() <= 1e-9 * (1.0 + u.abs()), "{} vs {}", u, v);
        }
    }

    #[test]
    fn area_ignores_constant_shift(b in -10.0..10.0f64) {
        let r = Rect::new(0.5, 1.5, 0.5, 1.5).unwrap();
        let a0 = area(&SolutionSpec::funnel(0.7, 0.0), r, 16).unwrap().area;
        let a1 = area(&SolutionSpec::funnel(0.7, b), r, 16).unwrap().area;
        prop_assert_eq!(a0, a1);
    }

    #[test]
    fn grid_csv_round_trip_is_bitwise(
        vals in proptest::collection::vec(-1e300..1e300f64, 12),
        x0 in -10.0..10.0f64, y0 in 1e-6..10.0f64,
    ) {
        let r = Rect::new(x0, x0 + 1.0 / 3.0, y0, y0 + 0.1).unwrap();
        let g = GridField::new(r, 4, 3, vals).unwrap();
        let back = GridField::from_csv(&g.to_csv()).unwrap();
        prop_assert!(g.values().iter().zip(back.values()).all(|(a, b)| a.to_bits() == b.to_bits()));
        prop_assert_eq!(g.rect(), back.rect());
    }

    #[test]
    fn residual_assembly_independent_of_strategy(seed in 0u64..1000) {
        let r = Rect::new(0.0, 1.0, 0.5, 1.5).unwrap();
        let s = seed as f64;
        let g = GridField::from_fn(r, 12, 9, |x, y| (s * 0.01 + 3.0 * x * y).sin() + x * x).unwrap();
        let a = assemble_residual_with(&g, Exec::Sequential);
        let b = assemble_residual_with(&g, Exec::Parallel);
        prop_assert!(a.iter().zip(&b).all(|(p, q)| p.to_bits() == q.to_bits()));
    }
}
