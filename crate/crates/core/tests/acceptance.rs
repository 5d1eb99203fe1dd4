//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slabchrom::distset::{analyze_distance_set, generate_theorem_family, parse_distance_set, DistanceSet};
use slabchrom::exact::{quad_arith, quad_compare, LatticeVector, QuadExt, QuadOp, Radicand, Rational};
use slabchrom::lattice::{
    certify_no_t_slab, find_clique, find_linear_coloring, window_chromatic, LinearColoring, Window, WindowChromatic,
};
use slabchrom::slab::{
    chi_m_bounds, integer_slab_from_periodic, unit_slab_coloring, verify_slab, SlabColoring, SlabVerdict,
};
use slabchrom::zgraph::{chi_integer, PeriodicColoring};

fn q(a: i64, b: i64) -> QuadExt {
    QuadExt::from_ints(a, b, Radicand::TWO)
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn lv(a: i64, b: i64) -> LatticeVector {
    LatticeVector::new(a, b)
}

fn counterexample() -> DistanceSet {
    parse_distance_set("1, 2, s, 2s, 1+s", Radicand::TWO).unwrap()
}

fn unit_slabs(n: i64, t: usize) -> SlabColoring {
    SlabColoring::periodic((0..=n).map(|k| q(k, 0)).collect(), (0..n as usize).map(|k| k % t).collect(), t).unwrap()
}

fn criterion_1() -> String {
    let d = counterexample();
    let clique = find_clique(&d, 3).unwrap().expect("a triangle exists");
    assert_eq!(clique, vec![lv(0, 0), lv(1, 0), lv(2, 0)]);
    let lc = find_linear_coloring(&d, 3).expect("a linear 3-coloring exists");
    let w = Window::new((0, 6), (0, 6)).unwrap();
    match window_chromatic(&d, &w, 4).unwrap() {
        WindowChromatic::Exact { chi, witness } => {
            assert_eq!(chi, 3);
            witness.check_proper(&d).unwrap();
        }
        other => panic!("unexpected {other:?}"),
    }
    let pts: Vec<String> = clique.iter().map(ToString::to_string).collect();
    format!("K3 {{{}}}, weights {:?}, chi([0,6]^2) = 3", pts.join(", "), lc.weights)
}

fn criterion_2() -> String {
    let d = counterexample();
    let c = unit_slab_coloring(&d);
    assert_eq!(c.t(), 4);
    assert_eq!(c.period(), Some(q(4, 0)));
    assert!(verify_slab(&c, &d).is_proper());
    let three = unit_slabs(3, 3);
    let SlabVerdict::Violation(v) = verify_slab(&three, &d) else { panic!("3 unit slabs accepted") };
    assert!(v.range.0 < v.range.1 && v.range.0 <= v.x && v.x < v.range.1);
    assert_eq!(three.color_of(&v.x), three.color_of(&(&v.x + &v.d)));
    assert_eq!(v.d, q(0, 2));
    assert_eq!(v.range, (q(3, -2), q(1, 0)));
    format!("4 unit slabs proper; 3 unit slabs fail at x = {}, d = {}", v.x, v.d)
}

fn criterion_3() -> String {
    let d = counterexample();
    let mut ells = Vec::new();
    for w in [10, 20, 40] {
        let cert = certify_no_t_slab(&d, 3, &Window::square(w)).unwrap();
        assert!(cert.verdicts.fully_forced);
        let lm = cert.linear.clone().expect("forced coloring is linear");
        assert_eq!(lm.weights, (1, 1));
        assert_eq!(lm.renaming, vec![0, 1, 2]);
        if w == 20 {
            assert!(cert.certified);
            cert.replay(&d).unwrap();
        }
        ells.push(cert.density.expect("density measured").ell);
    }
    // Regression baselines, cross-checked by an independent scan.
    assert_eq!(ells, vec![q(-1, 1), q(-11, 8), q(-31, 22)]);
    assert!(ells[1] < ells[0] && ells[2] < ells[1]);
    assert!(ells[1] < QuadExt::from_rational(rat(1, 2), Radicand::TWO));
    format!("ell(10) = {}, ell(20) = {}, ell(40) = {}", ells[0], ells[1], ells[2])
}

fn criterion_4() -> String {
    let mut lowers = Vec::new();
    for t in 2..=5usize {
        let d = generate_theorem_family(t).unwrap();
        assert_eq!(d.len(), (t - 1) * (t + 2) / 2);
        let want: Vec<_> = (0..t as i64).map(|j| lv(j, 0)).collect();
        assert_eq!(find_clique(&d, t).unwrap(), Some(want));
        let lc = LinearColoring { t, weights: (1, 1) };
        assert!(lc.is_proper_for(&d));
        assert_eq!(find_linear_coloring(&d, t), Some(lc));
        let cert = certify_no_t_slab(&d, t, &Window::square(20)).unwrap();
        assert!(cert.certified, "t = {t}");
        cert.replay(&d).unwrap();
        let b = chi_m_bounds(&d).unwrap();
        assert_eq!(b.lower, t + 1, "t = {t}");
        assert!(b.lower <= b.upper);
        lowers.push(format!("t={t}: [{}, {}]", b.lower, b.upper));
    }
    lowers.join(", ")
}

fn criterion_5() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut seen = Vec::new();
    for _ in 0..50 {
        let size = rng.gen_range(1..=4);
        let mut ints: Vec<i64> = Vec::new();
        while ints.len() < size {
            let k = rng.gen_range(1..=8);
            if !ints.contains(&k) {
                ints.push(k);
            }
        }
        let scale = rat(rng.gen_range(1..=12), rng.gen_range(1..=12));
        let d = analyze_distance_set(
            ints.iter().map(|&k| QuadExt::from_rational(&scale * Rational::from_integer(k.into()), Radicand::TWO)).collect(),
        )
        .unwrap();
        let form = d.integer_form().expect("rational sets are commensurable");
        assert!(form.iter().all(|&n| (1..=8).contains(&n)), "{form:?}");
        let (chi, pc) = chi_integer(form).unwrap();
        let slab = integer_slab_from_periodic(&pc, d.alpha().unwrap()).unwrap();
        assert!(verify_slab(&slab, &d).is_proper(), "{d}");
        assert_eq!(slab.colors_used(), chi);
        let b = chi_m_bounds(&d).unwrap();
        assert_eq!((b.lower, b.upper), (chi, chi));
        seen.push(chi);
    }
    let mut hist = [0usize; 6];
    for c in seen {
        hist[c.min(5)] += 1;
    }
    format!("50 sets, chi histogram (1..5) = {:?}", &hist[1..])
}

/// Chromatic number of the distance graph on `{0, …, n−1}`.
fn segment_chi(dprime: &[u64], n: usize) -> usize {
    fn extend(i: usize, n: usize, k: usize, used: usize, dprime: &[u64], col: &mut Vec<usize>) -> bool {
        if i == n {
            return true;
        }
        for c in 0..k.min(used + 1) {
            if dprime.iter().all(|&d| (d as usize) > i || col[i - d as usize] != c) {
                col.push(c);
                if extend(i + 1, n, k, used.max(c + 1), dprime, col) {
                    return true;
                }
                col.pop();
            }
        }
        false
    }
    (1..).find(|&k| extend(0, n, k, 0, dprime, &mut Vec::new())).unwrap()
}

fn independent_proper(pc: &PeriodicColoring, dprime: &[u64]) -> bool {
    (-50i64..150).all(|n| dprime.iter().all(|&d| pc.color_at(n) != pc.color_at(n + d as i64)))
}

fn criterion_6() -> String {
    let mut count = 0;
    for mask in 1u32..64 {
        if mask.count_ones() > 3 {
            continue;
        }
        let dprime: Vec<u64> = (1..=6).filter(|k| mask & (1 << (k - 1)) != 0).collect();
        let (chi, pc) = chi_integer(&dprime).unwrap();
        assert_eq!(chi, segment_chi(&dprime, 31), "{dprime:?}");
        assert!(independent_proper(&pc, &dprime), "{dprime:?} {pc:?}");
        assert_eq!(pc.num_colors(), chi);
        count += 1;
    }
    format!("{count} sets agree with the segment oracle on {{0..30}}")
}

fn criterion_7() -> String {
    let d = counterexample();
    let cert = certify_no_t_slab(&d, 4, &Window::square(20)).unwrap();
    assert!(!cert.certified);
    cert.replay(&d).unwrap();

    let r1 = parse_distance_set("1, 2", Radicand::TWO).unwrap();
    let mut ells = Vec::new();
    for w in [10, 20, 40] {
        let cert = certify_no_t_slab(&r1, 3, &Window::centered(&r1, w)).unwrap();
        assert!(!cert.certified);
        assert!(cert.verdicts.fully_forced && cert.verdicts.linear_match);
        assert_eq!(cert.ell_shrinks, Some(false));
        cert.replay(&r1).unwrap();
        ells.push(cert.density.unwrap().ell);
    }
    assert!(ells.iter().all(|e| *e == ells[0]), "{ells:?}");
    assert_eq!(ells[0], q(3, 0));
    format!("t=4 not certified; rank-1 {{1,2}} not certified, ell = {} at W = 10, 20, 40", ells[0])
}

/// Sign of `a + b√m` from a 30-digit fixed-point value of √m. Exact for
/// the magnitudes used here because `a + b√m ≠ 0` is bounded away from 0.
fn oracle_sign(x: &QuadExt) -> std::cmp::Ordering {
    let m = x.radicand().get();
    let den = x.rat_part().denom() * x.quad_part().denom();
    let a = x.rat_part().numer() * (&den / x.rat_part().denom());
    let b = x.quad_part().numer() * (&den / x.quad_part().denom());
    if b.is_zero() || m == 1 {
        return a.cmp(&BigInt::zero());
    }
    let scale = BigInt::from(10u32).pow(30);
    let root = (BigInt::from(m) * &scale * &scale).sqrt(); // ⌊√m·10^30⌋
    let approx = &a * &scale + &b * &root;
    assert!(approx.abs() > b.abs(), "fixed-point margin too small");
    approx.cmp(&BigInt::zero())
}

fn criterion_8() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let radicands = [2u64, 3, 5, 6, 7, 10];
    let random_quad = |m: Radicand, rng: &mut ChaCha8Rng| {
        QuadExt::new(rat(rng.gen_range(-40..=40), rng.gen_range(1..=9)), rat(rng.gen_range(-40..=40), rng.gen_range(1..=9)), m)
    };
    for _ in 0..10_000 {
        let m = Radicand::new(radicands[rng.gen_range(0..radicands.len())]).unwrap();
        let x = random_quad(m, &mut rng);
        let y = random_quad(m, &mut rng);
        let diff = quad_arith(&x, &y, QuadOp::Sub).unwrap();
        assert_eq!(quad_compare(&x, &y), oracle_sign(&diff), "{x} vs {y}");
        let sum = quad_arith(&x, &y, QuadOp::Add).unwrap();
        assert_eq!(quad_arith(&sum, &y, QuadOp::Sub).unwrap(), x);
        let prod = quad_arith(&x, &y, QuadOp::Mul).unwrap();
        if y.is_zero() {
            assert!(quad_arith(&x, &y, QuadOp::Div).is_err());
        } else {
            assert_eq!(quad_arith(&prod, &y, QuadOp::Div).unwrap(), x);
        }
        let tol = 1e-9 * (1.0 + prod.approx().abs());
        assert!((prod.approx() - x.approx() * y.approx()).abs() < tol);
    }

    // Points landing exactly on a breakpoint belong to the slab on the right.
    let four = unit_slabs(4, 4);
    for k in 0..8 {
        let x = q(k, 0);
        assert_eq!(four.color_of(&x), Some((k % 4) as usize));
        assert_eq!(four.color_of(&(&x + &q(1, 0))), Some(((k + 1) % 4) as usize));
    }
    let root_slabs = SlabColoring::periodic(vec![q(0, 0), q(0, 1), q(0, 2)], vec![0, 1], 2).unwrap();
    assert_eq!(root_slabs.color_of(&(&q(0, 0) + &q(0, 1))), Some(1));
    assert_eq!(root_slabs.color_of(&q(0, 2)), Some(0));
    let rs = analyze_distance_set(vec![q(0, 1)]).unwrap();
    assert!(verify_slab(&root_slabs, &rs).is_proper());

    let touching = SlabColoring::windowed(vec![q(0, 0), q(1, 0), q(2, 0), q(3, 0)], vec![0, 1, 0], 2).unwrap();
    let one = parse_distance_set("1", Radicand::TWO).unwrap();
    assert!(verify_slab(&touching, &one).is_proper());
    let two = parse_distance_set("2", Radicand::TWO).unwrap();
    let SlabVerdict::Violation(v) = verify_slab(&touching, &two) else { panic!("shift by 2 must collide") };
    assert_eq!((v.slab_i, v.slab_j), (0, 2));

    let parity = unit_slabs(2, 2);
    assert!(verify_slab(&parity, &one).is_proper());
    assert!(!verify_slab(&parity, &two).is_proper());
    "10^4 randomized compare/arith checks; breakpoint landings go right".into()
}

type Criterion = (u32, Duration, fn() -> String);

fn main() {
    let criteria: [Criterion; 8] = [
        (1, Duration::from_secs(1), criterion_1),
        (2, Duration::from_secs(1), criterion_2),
        (3, Duration::from_secs(30), criterion_3),
        (4, Duration::from_secs(120), criterion_4),
        (5, Duration::from_secs(60), criterion_5),
        (6, Duration::from_secs(120), criterion_6),
        (7, Duration::from_secs(10), criterion_7),
        (8, Duration::from_secs(10), criterion_8),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, limit, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= limit => format!("PASS criterion {n} ({elapsed:.2?} <= {limit:?}): {detail}"),
            Ok(detail) => format!("FAIL criterion {n} (took {elapsed:.2?}, limit {limit:?}): {detail}"),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL criterion {n} ({elapsed:.2?}): {msg}")
            }
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
