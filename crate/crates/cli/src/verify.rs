//! The one-shot verification suite behind `verify-paper`.
//!
//! Eight named checks, printed in a fixed order with pass/fail and timing.
//! Quick scale sweeps intervals to 10⁴; full scale to 10⁶ (orders are
//! certified on [0, 10⁵] at full scale). The stability check is pinned to
//! bound 10⁶ under both scales because its expected verdicts are stated at
//! that bound and polygonal gap sizes flip them at smaller ones.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sumsetlab_core::{
    cross_check_obstruction, default_grid, density_profile, empirical_order, hfold,
    modular_obstruction, oracle_hfold_membership, stability_experiment, sumset, verify_legendre,
    BasisSpec, IntervalBitmap,
};

use crate::Scale;

const STABILITY_BOUND: u64 = 1_000_000;

pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

struct Params {
    bound: u64,
    order_bound: u64,
    single_fold_tail_limit: f64,
}

type Check = fn(&Params) -> Result<(), String>;

// (rank, cutoff, h_max, stated base order, stated augmented order, stated
// stability verdict)
type StabilityCase = (u64, u64, u32, Option<u32>, Option<u32>, bool);

pub fn run_all(scale: Scale) -> Vec<CheckOutcome> {
    let params = match scale {
        Scale::Quick => {
            Params { bound: 10_000, order_bound: 10_000, single_fold_tail_limit: 0.015 }
        }
        Scale::Full => {
            Params { bound: 1_000_000, order_bound: 100_000, single_fold_tail_limit: 0.0015 }
        }
    };
    let checks: [(&'static str, Check); 8] = [
        ("gauss-triangular-order-3", check_gauss),
        ("two-triangular-complement-mod-9", check_mod9_complement),
        ("lagrange-square-order-4", check_lagrange),
        ("fermat-cauchy-polygonal-orders", check_polygonal_orders),
        ("legendre-polygonal-cutoff", check_legendre),
        ("finite-stability-verdicts", check_stability),
        ("triangular-density-evidence", check_density),
        ("engine-property-suite", check_properties),
    ];
    checks
        .iter()
        .map(|(name, check)| {
            let started = Instant::now();
            let result = check(&params);
            CheckOutcome {
                name,
                passed: result.is_ok(),
                detail: result.err().unwrap_or_default(),
                seconds: started.elapsed().as_secs_f64(),
            }
        })
        .collect()
}

fn poly(k: u64) -> BasisSpec {
    BasisSpec::polygonal(k).expect("rank >= 3")
}

fn fail(message: String) -> Result<(), String> {
    Err(message)
}

fn check_gauss(p: &Params) -> Result<(), String> {
    let tri = poly(3).to_bitmap(p.bound).map_err(|e| e.to_string())?;
    let three = hfold(&tri, 3).map_err(|e| e.to_string())?;
    if !three.covers_interval() {
        return fail(format!(
            "3-fold triangular sumset misses {:?} in [0, {}]",
            three.first_clear_in(0, p.bound).unwrap(),
            p.bound
        ));
    }
    let two = hfold(&tri, 2).map_err(|e| e.to_string())?;
    let first = two.first_clear_in(0, p.bound).unwrap();
    if first != Some(5) {
        return fail(format!("first 2-fold triangular gap is {first:?}, expected Some(5)"));
    }
    Ok(())
}

fn check_mod9_complement(p: &Params) -> Result<(), String> {
    let report = modular_obstruction(&poly(3), 2, 9).map_err(|e| e.to_string())?;
    if report.missing != vec![5, 8] {
        return fail(format!("missing residues mod 9 are {:?}, expected [5, 8]", report.missing));
    }
    let two = hfold(&poly(3).to_bitmap(p.bound).unwrap(), 2).map_err(|e| e.to_string())?;
    if !cross_check_obstruction(&report, &two) {
        return fail("a 2-fold triangular sum landed in a missing residue class".to_string());
    }
    let mut blocked = 0u64;
    let mut expected = 0u64;
    for residue in [5u64, 8] {
        let mut v = residue;
        while v <= p.bound {
            expected += 1;
            if !two.contains(v) {
                blocked += 1;
            }
            v += 9;
        }
    }
    if blocked != expected {
        return fail(format!("only {blocked} of {expected} congruent values are uncovered"));
    }
    if p.bound == 1_000_000 && blocked != 222_222 {
        return fail(format!("expected exactly 222222 blocked values at 1e6, got {blocked}"));
    }
    Ok(())
}

fn check_lagrange(p: &Params) -> Result<(), String> {
    let sq = poly(4).to_bitmap(p.bound).map_err(|e| e.to_string())?;
    let four = hfold(&sq, 4).map_err(|e| e.to_string())?;
    if !four.covers_interval() {
        return fail(format!(
            "4-fold square sumset misses {:?}",
            four.first_clear_in(0, p.bound).unwrap()
        ));
    }
    let three = hfold(&sq, 3).map_err(|e| e.to_string())?;
    if three.contains(7) {
        return fail("7 must not be a sum of three squares".to_string());
    }
    let report = modular_obstruction(&poly(4), 3, 8).map_err(|e| e.to_string())?;
    if report.missing != vec![7] {
        return fail(format!("missing residues mod 8 are {:?}, expected [7]", report.missing));
    }
    if !cross_check_obstruction(&report, &three) {
        return fail("a 3-fold square sum landed in residue 7 mod 8".to_string());
    }
    Ok(())
}

fn check_polygonal_orders(p: &Params) -> Result<(), String> {
    for k in 3..=8u64 {
        let spec = poly(k);
        let report =
            empirical_order(&spec, p.order_bound, k as u32 + 2).map_err(|e| e.to_string())?;
        if report.empirical_order != Some(k as u32) {
            return fail(format!(
                "rank {k}: empirical order {:?}, expected {k}",
                report.empirical_order
            ));
        }
        if k == 5 {
            let gap4 = report.per_h.iter().find(|c| c.h == 4).and_then(|c| c.smallest_gap);
            if gap4 != Some(9) {
                return fail(format!("pentagonal 4-fold gap is {gap4:?}, expected Some(9)"));
            }
        }
        for c in &report.per_h {
            if let Some(gap) = c.smallest_gap {
                if oracle_hfold_membership(gap, &spec, c.h).map_err(|e| e.to_string())? {
                    return fail(format!("rank {k}: oracle refutes gap {gap} at fold {}", c.h));
                }
            }
        }
        match report.witness {
            Some(w) => {
                if oracle_hfold_membership(w, &spec, k as u32 - 1).map_err(|e| e.to_string())? {
                    return fail(format!("rank {k}: oracle refutes witness {w}"));
                }
            }
            None => return fail(format!("rank {k}: no witness recorded")),
        }
    }
    Ok(())
}

fn check_legendre(p: &Params) -> Result<(), String> {
    for m in [3u64, 4] {
        let check = verify_legendre(m, p.bound).map_err(|e| e.to_string())?;
        if !check.passed {
            return fail(format!(
                "m={m}: counterexample {:?} in [{}, {}]",
                check.counterexample, check.cutoff, p.bound
            ));
        }
    }
    Ok(())
}

fn check_stability(_: &Params) -> Result<(), String> {
    let cases: [StabilityCase; 4] = [
        (3, 1000, 6, Some(3), Some(3), true),
        (4, 1000, 7, Some(4), Some(4), true),
        (5, 756, 8, Some(5), Some(4), false),
        (6, 1792, 9, Some(6), Some(5), false),
    ];
    let mut lines = Vec::new();
    for (k, cutoff, h_max, want_base, want_aug, want_stable) in cases {
        let report = stability_experiment(&poly(k), cutoff, STABILITY_BOUND, h_max)
            .map_err(|e| e.to_string())?;
        let got = (report.order_base, report.order_augmented, report.stable);
        if got != (want_base, want_aug, want_stable) {
            lines.push(format!(
                "rank {k} cutoff {cutoff}: computed ({}, {}, {}), stated ({}, {}, {})",
                show(got.0),
                show(got.1),
                got.2,
                show(want_base),
                show(want_aug),
                want_stable
            ));
        }
    }
    if lines.is_empty() {
        return Ok(());
    }
    lines.push(
        "the computation, not the engine, is at odds with the stated pairs: below 1e6 the \
         largest gap between sums of two squares/pentagonals/hexagonals is 35/38/57, smaller \
         than every cutoff, so each augmented basis already has empirical order 3 at this bound"
            .to_string(),
    );
    fail(lines.join("\n"))
}

fn show(order: Option<u32>) -> String {
    order.map_or_else(|| "none".to_string(), |h| h.to_string())
}

fn check_density(p: &Params) -> Result<(), String> {
    let grid = default_grid(p.bound);
    let single = density_profile(&poly(3), 1, p.bound, &grid).map_err(|e| e.to_string())?;
    let last = single.samples.last().expect("grid is nonempty");
    if last.ratio > p.single_fold_tail_limit {
        return fail(format!(
            "T(n)/n = {:.6} at n = {}, limit {}",
            last.ratio, last.n, p.single_fold_tail_limit
        ));
    }
    let tail = single.tail();
    if !tail.windows(2).all(|w| w[0].ratio > w[1].ratio) {
        return fail("single-fold tail ratios are not strictly decreasing".to_string());
    }
    let double = density_profile(&poly(3), 2, p.bound, &grid).map_err(|e| e.to_string())?;
    if double.tail_max_ratio > 0.78 {
        return fail(format!("2-fold tail max ratio {:.6} exceeds 0.78", double.tail_max_ratio));
    }
    Ok(())
}

// Seeded mirror of the acceptance property suites: sumset algebra,
// doubling vs naive, truncation exactness, 500 engine-vs-oracle cases,
// serialization round-trip.
fn check_properties(_: &Params) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5E75);

    for _ in 0..200 {
        let bound = rng.gen_range(1..=512);
        let make = |rng: &mut ChaCha8Rng| {
            let members: Vec<u64> =
                (0..rng.gen_range(0..30)).map(|_| rng.gen_range(0..=bound)).collect();
            IntervalBitmap::from_members(bound, &members).unwrap()
        };
        let (x, y, z) = (make(&mut rng), make(&mut rng), make(&mut rng));
        if sumset(&x, &y).unwrap() != sumset(&y, &x).unwrap() {
            return fail("sumset is not commutative".to_string());
        }
        let left = sumset(&sumset(&x, &y).unwrap(), &z).unwrap();
        let right = sumset(&x, &sumset(&y, &z).unwrap()).unwrap();
        if left != right {
            return fail("sumset is not associative".to_string());
        }
        let zero = IntervalBitmap::from_members(bound, &[0]).unwrap();
        if sumset(&x, &zero).unwrap() != x {
            return fail("{0} is not neutral".to_string());
        }
        let empty = IntervalBitmap::empty(bound).unwrap();
        if sumset(&x, &empty).unwrap().popcount() != 0 {
            return fail("empty operand does not absorb".to_string());
        }
    }

    for _ in 0..100 {
        let bound = rng.gen_range(100..=2000);
        let members: Vec<u64> =
            (0..rng.gen_range(1..25)).map(|_| rng.gen_range(0..=bound)).collect();
        let base = IntervalBitmap::from_members(bound, &members).unwrap();
        let mut iterated = base.clone();
        for h in 2..=8 {
            iterated = sumset(&iterated, &base).unwrap();
            if hfold(&base, h).unwrap() != iterated {
                return fail(format!("doubling disagrees with iteration at h = {h}"));
            }
        }
    }

    for _ in 0..100 {
        let bound = rng.gen_range(50..=2000);
        let h = rng.gen_range(1..=4u32);
        let mut full: Vec<u64> =
            (0..rng.gen_range(1..14)).map(|_| rng.gen_range(0..=3 * bound)).collect();
        full.sort_unstable();
        full.dedup();
        let kept: Vec<u64> = full.iter().copied().filter(|&v| v <= bound).collect();
        let engine = hfold(&IntervalBitmap::from_members(bound, &kept).unwrap(), h).unwrap();
        let mut brute = IntervalBitmap::empty(bound).unwrap();
        mark_tuples(&full, 0, h, 0, bound, &mut brute);
        if engine != brute {
            return fail("truncation is not exact against brute-force tuples".to_string());
        }
    }

    for case in 0..500 {
        let spec = match rng.gen_range(0..3) {
            0 => BasisSpec::polygonal(rng.gen_range(3..=8)).unwrap(),
            1 => {
                let mut v: Vec<u64> =
                    (0..rng.gen_range(1..9)).map(|_| rng.gen_range(0..=50)).collect();
                v.sort_unstable();
                v.dedup();
                BasisSpec::explicit(v).unwrap()
            }
            _ => {
                let mut v: Vec<u64> =
                    (0..rng.gen_range(0..5)).map(|_| rng.gen_range(0..=40)).collect();
                v.sort_unstable();
                v.dedup();
                BasisSpec::augmented(BasisSpec::polygonal(rng.gen_range(3..=6)).unwrap(), v)
                    .unwrap()
            }
        };
        let n = rng.gen_range(0..=2000u64);
        let h = rng.gen_range(1..=5u32);
        let engine = hfold(&spec.to_bitmap(2000).unwrap(), h).unwrap().contains(n);
        let oracle = oracle_hfold_membership(n, &spec, h).unwrap();
        if engine != oracle {
            return fail(format!("case {case}: engine {engine} vs oracle {oracle} (n={n}, h={h})"));
        }
    }

    for _ in 0..50 {
        let bound = rng.gen_range(0..=4000);
        let members: Vec<u64> =
            (0..rng.gen_range(0..50)).map(|_| rng.gen_range(0..=bound)).collect();
        let bm = IntervalBitmap::from_members(bound, &members).unwrap();
        let mut buf = Vec::new();
        bm.write_to(&mut buf).unwrap();
        if IntervalBitmap::read_from(&mut buf.as_slice()).unwrap() != bm {
            return fail("serialization round-trip changed a bitmap".to_string());
        }
    }

    Ok(())
}

fn mark_tuples(
    pool: &[u64],
    from: usize,
    left: u32,
    sum: u64,
    bound: u64,
    out: &mut IntervalBitmap,
) {
    if left == 0 {
        if sum <= bound {
            out.insert(sum).unwrap();
        }
        return;
    }
    for i in from..pool.len() {
        mark_tuples(pool, i, left - 1, sum.saturating_add(pool[i]), bound, out);
    }
}
