use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;
use slabchrom::distset::{analyze_distance_set, generate_theorem_family, parse_distance_set, parse_expression, DistanceSet};
use slabchrom::exact::{quad_arith, quad_compare, QuadExt, QuadOp, Radicand, Rational};
use slabchrom::lattice::{
    find_linear_coloring, propagate_forced, window_chromatic, PartialColoring, Window, WindowChromatic,
};
use slabchrom::slab::{
    all_violations, chi_m_bounds_with, integer_slab_from_periodic, unit_slab_coloring, verify_slab, ChiMOptions,
    SlabColoring, SlabVerdict,
};
use slabchrom::zgraph::chi_integer;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn radicand() -> impl Strategy<Value = Radicand> {
    prop::sample::select(vec![2u64, 3, 5, 6, 7]).prop_map(|m| Radicand::new(m).unwrap())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn quad(m: Radicand) -> impl Strategy<Value = QuadExt> {
    (small_rational(), small_rational()).prop_map(move |(p, q)| QuadExt::new(p, q, m))
}

fn quad_pair() -> impl Strategy<Value = (QuadExt, QuadExt)> {
    radicand().prop_flat_map(|m| (quad(m), quad(m)))
}

fn positive_quad(m: Radicand) -> impl Strategy<Value = QuadExt> {
    (1i64..=12, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(move |(a, b, c, d)| {
        // a/b + (c/d)·√m, nudged positive if needed
        let x = QuadExt::new(rat(a, b), rat(c, d), m);
        if x.is_positive() { x } else { QuadExt::new(rat(a, b), rat(-c, d), m) }
    })
}

fn distance_set() -> impl Strategy<Value = DistanceSet> {
    radicand()
        .prop_flat_map(|m| prop::collection::vec(positive_quad(m), 1..=4))
        .prop_map(|v| analyze_distance_set(v).unwrap())
}

/// A subset of `{1, …, 8}` scaled by a random positive rational.
fn rational_distance_set() -> impl Strategy<Value = DistanceSet> {
    (prop::collection::btree_set(1i64..=8, 1..=3), 1i64..=9, 1i64..=9).prop_map(|(v, n, d)| {
        analyze_distance_set(v.into_iter().map(|k| QuadExt::from_rational(rat(k * n, d), Radicand::TWO)).collect())
            .unwrap()
    })
}

/// Exact rational sample points covering `[0, ⌈period⌉)`.
fn samples(c: &SlabColoring, n: i64) -> Vec<QuadExt> {
    let m = c.breakpoints()[0].radicand();
    let (lo, hi) = c.span();
    let start = lo.floor();
    let len = hi.ceil() - &start;
    (0..n)
        .map(|k| {
            QuadExt::from_rational(
                Rational::from_integer(start.clone()) + Rational::new(BigInt::from(k) * &len, BigInt::from(n)),
                m,
            )
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn order_is_total_and_matches_subtraction((x, y) in quad_pair()) {
        let ord = quad_compare(&x, &y);
        prop_assert_eq!(ord, quad_compare(&y, &x).reverse());
        prop_assert_eq!(ord, (&x - &y).signum());
        prop_assert_eq!(ord == Ordering::Equal, x == y);
    }

    #[test]
    fn order_is_transitive((x, y) in quad_pair(), z in small_rational()) {
        let z = QuadExt::from_rational(z, x.radicand());
        let mut v = [x, y, z];
        v.sort();
        prop_assert!(v[0] <= v[1] && v[1] <= v[2] && v[0] <= v[2]);
    }

    #[test]
    fn rational_values_compare_as_rationals(a in small_rational(), b in small_rational(), m in radicand()) {
        let x = QuadExt::from_rational(a.clone(), m);
        let y = QuadExt::from_rational(b.clone(), m);
        prop_assert_eq!(quad_compare(&x, &y), a.cmp(&b));
        prop_assert_eq!(quad_arith(&x, &y, QuadOp::Mul).unwrap(), QuadExt::from_rational(&a * &b, m));
    }

    #[test]
    fn field_laws((x, y) in quad_pair()) {
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, &y * &x);
        if !y.is_zero() {
            prop_assert_eq!(&quad_arith(&x, &y, QuadOp::Div).unwrap() * &y, x.clone());
        } else {
            prop_assert!(quad_arith(&x, &y, QuadOp::Div).is_err());
        }
        // adding a positive amount moves right
        let one = QuadExt::from_int(1, x.radicand());
        prop_assert!(x < &x + &one);
    }

    #[test]
    fn multiplication_by_positive_preserves_order((x, y) in quad_pair(), r in 1i64..=9) {
        let s = QuadExt::new(rat(r, 3), rat(1, 1), x.radicand());
        prop_assert_eq!(quad_compare(&(&x * &s), &(&y * &s)), quad_compare(&x, &y));
    }

    #[test]
    fn floor_and_ceil_bracket((x, _) in quad_pair()) {
        let m = x.radicand();
        let f = QuadExt::from_rational(Rational::from_integer(x.floor()), m);
        let c = QuadExt::from_rational(Rational::from_integer(x.ceil()), m);
        prop_assert!(f <= x && x < &f + &QuadExt::from_int(1, m));
        prop_assert!(c >= x && &c - &QuadExt::from_int(1, m) < x);
    }

    #[test]
    fn display_parses_back((x, _) in quad_pair()) {
        prop_assert_eq!(parse_expression(&x.to_string(), x.radicand()).unwrap(), x);
    }

    #[test]
    fn distance_sets_print_and_parse_back(ds in distance_set()) {
        let again = parse_distance_set(&ds.to_string(), ds.radicand()).unwrap();
        prop_assert_eq!(again, ds);
    }

    #[test]
    fn lattice_coordinates_regenerate_elements(ds in distance_set()) {
        for (e, &c) in ds.elements().iter().zip(ds.lattice_coords()) {
            prop_assert_eq!(&ds.embed(c), e);
        }
        prop_assert_eq!(ds.rank() == 1, ds.alpha().is_some());
        if let (Some(alpha), Some(ints)) = (ds.alpha(), ds.integer_form()) {
            for (e, &n) in ds.elements().iter().zip(ints) {
                prop_assert_eq!(e * alpha, QuadExt::from_int(n as i64, ds.radicand()));
            }
            let g = ints.iter().fold(0u64, |g, &n| num_integer::gcd(g, n));
            prop_assert_eq!(g, 1);
        }
    }

    #[test]
    fn analysis_is_scale_invariant(ds in distance_set(), n in 1i64..=9, d in 1i64..=9) {
        let scaled = ds.scaled(&rat(n, d)).unwrap();
        prop_assert_eq!(scaled.rank(), ds.rank());
        prop_assert_eq!(scaled.integer_form(), ds.integer_form());
        prop_assert_eq!(scaled.lattice_coords(), ds.lattice_coords());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn unit_slab_coloring_is_always_proper(ds in distance_set()) {
        let c = unit_slab_coloring(&ds);
        prop_assert!(verify_slab(&c, &ds).is_proper());
        for x in samples(&c, 500) {
            for d in ds.elements() {
                prop_assert_ne!(c.color_of(&x), c.color_of(&(&x + d)));
            }
        }
    }

    #[test]
    fn copied_integer_colorings_are_proper(ds in rational_distance_set()) {
        let (chi, pc) = chi_integer(ds.integer_form().unwrap()).unwrap();
        let c = integer_slab_from_periodic(&pc, ds.alpha().unwrap()).unwrap();
        prop_assert!(verify_slab(&c, &ds).is_proper());
        prop_assert_eq!(c.colors_used(), chi);
    }

    #[test]
    fn verify_slab_agrees_with_sampling(
        m in radicand(),
        widths in prop::collection::vec((1i64..=6, 1i64..=3, 0i64..=2), 1..=6),
        colors in prop::collection::vec(0usize..3, 6),
        ds in distance_set(),
    ) {
        let m = if ds.elements().iter().all(QuadExt::is_rational) { m } else { ds.radicand() };
        let mut breakpoints = vec![QuadExt::zero(m)];
        for &(n, d, s) in &widths {
            let w = QuadExt::new(rat(n, d), rat(s, 2), m);
            let next = breakpoints.last().unwrap() + &w;
            breakpoints.push(next);
        }
        let colors: Vec<usize> = colors[..widths.len()].to_vec();
        let c = SlabColoring::periodic(breakpoints, colors, 3).unwrap();
        match verify_slab(&c, &ds) {
            SlabVerdict::Violation(v) => {
                prop_assert!(v.range.0 < v.range.1);
                prop_assert_eq!(c.color_of(&v.x), c.color_of(&(&v.x + &v.d)));
                for v in all_violations(&c, &ds) {
                    prop_assert_eq!(c.color_of(&v.x), c.color_of(&(&v.x + &v.d)));
                }
            }
            SlabVerdict::Proper => {
                for x in samples(&c, 400) {
                    for d in ds.elements() {
                        prop_assert_ne!(c.color_of(&x), c.color_of(&(&x + d)));
                    }
                }
            }
        }
    }

    #[test]
    fn commensurable_bounds_are_equal_and_scale_invariant(ds in rational_distance_set(), n in 1i64..=7, d in 1i64..=7) {
        let opts = ChiMOptions::default();
        let b = chi_m_bounds_with(&ds, &opts).unwrap();
        prop_assert!(b.exact && b.lower == b.upper);
        let scaled = chi_m_bounds_with(&ds.scaled(&rat(n, d)).unwrap(), &opts).unwrap();
        prop_assert_eq!((scaled.lower, scaled.upper), (b.lower, b.upper));
        let factor = QuadExt::from_rational(rat(d, n), ds.radicand());
        prop_assert_eq!(scaled.upper_witness.scaled(&factor).unwrap(), b.upper_witness);
    }

    #[test]
    fn window_chromatic_is_monotone_and_bounded(ds in distance_set()) {
        let chi = |w: &Window| match window_chromatic(&ds, w, 8).unwrap() {
            WindowChromatic::Exact { chi, witness } => {
                witness.check_proper(&ds).unwrap();
                chi
            }
            WindowChromatic::Exceeds { .. } => 9,
        };
        let small = Window::centered(&ds, 1);
        let large = Window::centered(&ds, 2);
        let (a, b) = (chi(&small), chi(&large));
        prop_assert!(a <= b);
        for t in 1..=5 {
            if find_linear_coloring(&ds, t).is_some() {
                prop_assert!(b <= t);
            }
        }
    }

    #[test]
    fn propagation_results_are_proper(ds in distance_set(), t in 2usize..=4) {
        let w = Window::centered(&ds, 3);
        let seed = PartialColoring::from_pairs(t, [(w.points().nth(w.len() / 2).unwrap(), 0)]).unwrap();
        if let Ok(res) = propagate_forced(&ds, t, &seed, &w) {
            res.coloring.check_proper(&ds).unwrap();
        }
    }
}

#[test]
fn rank_two_bounds_are_scale_invariant() {
    let opts = ChiMOptions { certificate_window: 8, ..Default::default() };
    for t in [2, 3] {
        let ds = generate_theorem_family(t).unwrap();
        let base = chi_m_bounds_with(&ds, &opts).unwrap();
        assert!(base.lower <= base.upper);
        for (n, d) in [(3, 2), (1, 5), (7, 3)] {
            let scaled = chi_m_bounds_with(&ds.scaled(&rat(n, d)).unwrap(), &opts).unwrap();
            assert_eq!((scaled.lower, scaled.upper), (base.lower, base.upper));
            let factor = QuadExt::from_rational(rat(d, n), Radicand::TWO);
            assert_eq!(scaled.upper_witness.scaled(&factor).unwrap(), base.upper_witness);
        }
    }
}
