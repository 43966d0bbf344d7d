//! Counting/density profiles and single-modulus obstruction certificates.
//!
//! A density profile samples X(n)/n for the h-fold sumset of a basis on a
//! grid and reports the maximum over the grid's top decade as a finite-bound
//! estimate of the limiting ratio — evidence, never a limit proof.
//!
//! An obstruction report computes the h-fold sumset of a basis's residue
//! classes inside Z_m. Residues missing there are missing for every integer
//! in that class, independent of any bound: sums reduce mod m term by term.

use crate::basis::BasisSpec;
use crate::bitmap::IntervalBitmap;
use crate::engine::hfold;
use crate::error::{Error, Result};

/// Largest supported obstruction modulus; the scan materializes Z_m.
pub const MAX_MODULUS: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileSample {
    pub n: u64,
    pub count: u64,
    pub ratio: f64,
}

/// Sampled counting function of a set on [0, bound].
#[derive(Clone, Debug, PartialEq)]
pub struct CountingProfile {
    pub set_label: String,
    pub fold: u32,
    pub bound: u64,
    pub samples: Vec<ProfileSample>,
    /// Max ratio over the top decade of the grid — the limiting-ratio
    /// estimate this profile offers.
    pub tail_max_ratio: f64,
}

impl CountingProfile {
    /// Samples in the top decade of the grid: n ≥ (largest sample)/10.
    pub fn tail(&self) -> &[ProfileSample] {
        match self.samples.last() {
            None => &[],
            Some(last) => {
                let lo = last.n / 10;
                let start = self.samples.partition_point(|s| s.n < lo);
                &self.samples[start..]
            }
        }
    }
}

/// Geometric grid of up to 32 points from bound/10³ to bound.
pub fn default_grid(bound: u64) -> Vec<u64> {
    if bound == 0 {
        return Vec::new();
    }
    let lo = (bound / 1000).max(1) as f64;
    let hi = bound as f64;
    let mut points: Vec<u64> = (0..32)
        .map(|i| (lo * (hi / lo).powf(i as f64 / 31.0)).round() as u64)
        .map(|v| v.clamp(1, bound))
        .collect();
    points.sort_unstable();
    points.dedup();
    if points.last() != Some(&bound) {
        points.push(bound);
    }
    points
}

/// Counting profile of the h-fold sumset of `spec` at the given grid points.
pub fn density_profile(
    spec: &BasisSpec,
    h: u32,
    bound: u64,
    grid: &[u64],
) -> Result<CountingProfile> {
    let mut points = grid.to_vec();
    points.sort_unstable();
    points.dedup();
    for &n in &points {
        if n == 0 || n > bound {
            return Err(Error::GridPointOutOfRange { n, bound });
        }
    }
    let bm = hfold(&spec.to_bitmap(bound)?, h)?;
    let samples = points
        .iter()
        .map(|&n| {
            let count = bm.counting(n)?;
            Ok(ProfileSample { n, count, ratio: count as f64 / n as f64 })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut profile = CountingProfile {
        set_label: format!("{h}-fold {spec}"),
        fold: h,
        bound,
        samples,
        tail_max_ratio: 0.0,
    };
    profile.tail_max_ratio = profile.tail().iter().map(|s| s.ratio).fold(0.0, f64::max);
    Ok(profile)
}

/// Residue classes mod m that no h-fold sum of basis elements can occupy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub modulus: u64,
    pub fold: u32,
    /// Residue classes of the basis itself.
    pub certificate: Vec<u64>,
    /// h-fold sumset of the certificate inside Z_m.
    pub attainable: Vec<u64>,
    /// Complement of `attainable`; every integer congruent to one of these
    /// is certified non-representable as a sum of h basis elements.
    pub missing: Vec<u64>,
}

/// Obstruction scan of `spec` at fold h and the given modulus.
///
/// Polygonal residues are taken from one generator period x ∈ [0, 2m),
/// after checking that the period really divides 2m.
pub fn modular_obstruction(spec: &BasisSpec, h: u32, modulus: u64) -> Result<ObstructionReport> {
    if h == 0 {
        return Err(Error::ZeroFold);
    }
    if modulus < 2 {
        return Err(Error::ModulusTooSmall(modulus));
    }
    if modulus > MAX_MODULUS {
        return Err(Error::ModulusTooLarge { modulus, max: MAX_MODULUS });
    }
    spec.validate()?;
    let certificate = residue_set(spec, modulus)?;
    let m = modulus as usize;
    let mut current = vec![false; m];
    for &r in &certificate {
        current[r as usize] = true;
    }
    for _ in 1..h {
        let mut next = vec![false; m];
        for (r, _) in current.iter().enumerate().filter(|(_, set)| **set) {
            for &s in &certificate {
                next[(r + s as usize) % m] = true;
            }
        }
        current = next;
    }
    let (mut attainable, mut missing) = (Vec::new(), Vec::new());
    for (r, set) in current.iter().enumerate() {
        if *set {
            attainable.push(r as u64);
        } else {
            missing.push(r as u64);
        }
    }
    Ok(ObstructionReport { modulus, fold: h, certificate, attainable, missing })
}

/// True iff no member of the bitmap falls in a residue class the report
/// declares missing. The bitmap must be the h-fold sumset of the same spec
/// for the answer to mean anything.
pub fn cross_check_obstruction(report: &ObstructionReport, bitmap: &IntervalBitmap) -> bool {
    let mut missing = vec![false; report.modulus as usize];
    for &r in &report.missing {
        missing[r as usize] = true;
    }
    bitmap.members().all(|v| !missing[(v % report.modulus) as usize])
}

fn residue_set(spec: &BasisSpec, m: u64) -> Result<Vec<u64>> {
    match spec {
        BasisSpec::Polygonal(k) => polygonal_residues(*k, m),
        BasisSpec::Explicit(elements) => {
            let mut seen = vec![false; m as usize];
            for &e in elements {
                seen[(e % m) as usize] = true;
            }
            Ok(collect_set(&seen))
        }
        BasisSpec::Augmented(base, finite) => {
            let mut seen = vec![false; m as usize];
            for r in residue_set(base, m)? {
                seen[r as usize] = true;
            }
            for &e in finite {
                seen[(e % m) as usize] = true;
            }
            Ok(collect_set(&seen))
        }
    }
}

fn collect_set(seen: &[bool]) -> Vec<u64> {
    seen.iter()
        .enumerate()
        .filter(|(_, set)| **set)
        .map(|(r, _)| r as u64)
        .collect()
}

fn polygonal_residues(k: u64, m: u64) -> Result<Vec<u64>> {
    let period = 2 * m;
    let mut seen = vec![false; m as usize];
    for x in 0..period {
        let r = polygonal_residue(k, x, m);
        if r != polygonal_residue(k, x + period, m) {
            return Err(Error::PeriodicityCheckFailed { k, modulus: m, period });
        }
        seen[r as usize] = true;
    }
    Ok(collect_set(&seen))
}

// k-gonal value mod m without forming the value itself: x((k-2)(x-1) + 2)
// is computed mod 2m, stays even, and halves to the value mod m.
fn polygonal_residue(k: u64, x: u64, m: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    let mm = 2 * m as u128;
    let rank = ((k - 2) as u128) % mm;
    let doubled = (rank * ((x - 1) as u128) % mm + 2) % mm * (x as u128) % mm;
    ((doubled / 2) % m as u128) as u64
}
