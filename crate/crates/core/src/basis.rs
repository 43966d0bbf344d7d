//! Symbolic basis descriptions and their enumeration up to a bound.

use std::fmt;
use std::str::FromStr;

use crate::bitmap::IntervalBitmap;
use crate::error::{Error, Result};

/// Symbolic description of an integer basis.
///
/// `Polygonal(k)` is the k-gonal sequence indexed from 0, so 0 and 1 belong
/// to every polygonal set and h-fold sums can always be padded with zeros.
/// `Explicit` is a finite, strictly increasing list. `Augmented` extends a
/// base by a finite strictly increasing set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisSpec {
    Polygonal(u64),
    Explicit(Vec<u64>),
    Augmented(Box<BasisSpec>, Vec<u64>),
}

/// The x-th k-gonal number `((k-2)x² - (k-4)x) / 2`.
///
/// Evaluated as `x((k-2)(x-1) + 2) / 2`, which stays in unsigned arithmetic
/// for every k ≥ 3. Overflow past u64 is reported, never wrapped.
pub fn polygonal_value(k: u64, x: u64) -> Result<u64> {
    if k < 3 {
        return Err(Error::PolygonalRankTooSmall(k));
    }
    if x == 0 {
        return Ok(0);
    }
    // x((k-2)(x-1) + 2) is even: either x is even, or x-1 makes the inner
    // term even.
    let inner = (k as u128 - 2)
        .checked_mul(x as u128 - 1)
        .and_then(|v| v.checked_add(2))
        .ok_or(Error::PolygonalOverflow { k, x })?;
    let doubled = inner
        .checked_mul(x as u128)
        .ok_or(Error::PolygonalOverflow { k, x })?;
    u64::try_from(doubled / 2).map_err(|_| Error::PolygonalOverflow { k, x })
}

fn check_strictly_increasing(elements: &[u64]) -> Result<()> {
    for pair in elements.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::ExplicitNotIncreasing(pair[1]));
        }
    }
    Ok(())
}

impl BasisSpec {
    pub fn polygonal(k: u64) -> Result<Self> {
        if k < 3 {
            return Err(Error::PolygonalRankTooSmall(k));
        }
        Ok(BasisSpec::Polygonal(k))
    }

    /// An explicit finite basis; `elements` must be strictly increasing.
    pub fn explicit(elements: Vec<u64>) -> Result<Self> {
        check_strictly_increasing(&elements)?;
        Ok(BasisSpec::Explicit(elements))
    }

    /// `base` extended by a finite set; `finite` must be strictly increasing.
    pub fn augmented(base: BasisSpec, finite: Vec<u64>) -> Result<Self> {
        base.validate()?;
        check_strictly_increasing(&finite)?;
        Ok(BasisSpec::Augmented(Box::new(base), finite))
    }

    /// Re-checks the structural invariants of a hand-built value.
    pub fn validate(&self) -> Result<()> {
        match self {
            BasisSpec::Polygonal(k) if *k < 3 => Err(Error::PolygonalRankTooSmall(*k)),
            BasisSpec::Polygonal(_) => Ok(()),
            BasisSpec::Explicit(elements) => check_strictly_increasing(elements),
            BasisSpec::Augmented(base, finite) => {
                base.validate()?;
                check_strictly_increasing(finite)
            }
        }
    }

    /// All elements of the described set that are ≤ `bound`, strictly
    /// increasing.
    pub fn enumerate(&self, bound: u64) -> Result<Vec<u64>> {
        self.validate()?;
        Ok(self.collect_up_to(bound))
    }

    fn collect_up_to(&self, bound: u64) -> Vec<u64> {
        match self {
            BasisSpec::Polygonal(k) => {
                let mut out = Vec::new();
                for x in 0.. {
                    match polygonal_value(*k, x) {
                        Ok(v) if v <= bound => out.push(v),
                        // Past the bound, or past u64 entirely (which is
                        // also past the bound).
                        _ => break,
                    }
                }
                out
            }
            BasisSpec::Explicit(elements) => {
                elements.iter().copied().take_while(|&e| e <= bound).collect()
            }
            BasisSpec::Augmented(base, finite) => {
                let a = base.collect_up_to(bound);
                let b: Vec<u64> = finite.iter().copied().take_while(|&e| e <= bound).collect();
                merge_union(&a, &b)
            }
        }
    }

    /// Membership bitmap of the described set on [0, bound].
    pub fn to_bitmap(&self, bound: u64) -> Result<IntervalBitmap> {
        IntervalBitmap::from_members(bound, &self.enumerate(bound)?)
    }
}

fn merge_union(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let next = match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                i += 1;
                a[i - 1]
            }
            std::cmp::Ordering::Greater => {
                j += 1;
                b[j - 1]
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
                a[i - 1]
            }
        };
        out.push(next);
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn parse_uint(token: &str, what: &str) -> Result<u64> {
    token.parse::<u64>().map_err(|_| Error::SpecParse {
        token: token.to_string(),
        reason: format!("expected {what}"),
    })
}

fn parse_list(text: &str) -> Result<Vec<u64>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|piece| parse_uint(piece, "a nonnegative integer"))
        .collect()
}

impl FromStr for BasisSpec {
    type Err = Error;

    /// Grammar: `poly:<k>`, `set:<a,b,c>` (possibly empty), or
    /// `aug:<base>+set:<a,b,c>` where `<base>` is `poly:` or `set:`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("poly:") {
            BasisSpec::polygonal(parse_uint(rest, "an integer rank")?)
        } else if let Some(rest) = s.strip_prefix("set:") {
            BasisSpec::explicit(parse_list(rest)?)
        } else if let Some(rest) = s.strip_prefix("aug:") {
            let (base_text, list_text) =
                rest.split_once("+set:").ok_or_else(|| Error::SpecParse {
                    token: rest.to_string(),
                    reason: "expected `aug:<base>+set:<a,b,c>`".to_string(),
                })?;
            if base_text.starts_with("aug:") {
                return Err(Error::SpecParse {
                    token: base_text.to_string(),
                    reason: "augmented bases nest only one level".to_string(),
                });
            }
            let base: BasisSpec = base_text.parse()?;
            BasisSpec::augmented(base, parse_list(list_text)?)
        } else {
            Err(Error::SpecParse {
                token: s.to_string(),
                reason: "expected a `poly:`, `set:` or `aug:` spec".to_string(),
            })
        }
    }
}

impl fmt::Display for BasisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSpec::Polygonal(k) => write!(f, "poly:{k}"),
            BasisSpec::Explicit(elements) => write!(f, "set:{}", join(elements)),
            BasisSpec::Augmented(base, finite) => {
                write!(f, "aug:{base}+set:{}", join(finite))
            }
        }
    }
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
