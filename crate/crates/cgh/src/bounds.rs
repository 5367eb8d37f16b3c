//! Closed-form evaluation of the known upper bounds on the extremal numbers,
//! as exact rationals. No floating point enters a bound value; the one
//! irrational bound is carried symbolically as `p + q·√m`.

use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::comb::binomial;
use crate::error::{CghError, Result};

/// The evaluable bound families.
///
/// * `Trivial`: `(k-1)·C(n, r-1)`, the greedy bound for tight paths.
/// * `Kalai`: `(k-1)/r·C(n, r-1)`, the conjectured tight value.
/// * `TightPath`: the proven tight-path bound, parity-dispatched on `r`.
/// * `Perles`: `(k-1)·n/2` for convex geometric graphs (`r = 2`).
/// * `Zigzag`: `(k-1)(r-1)/r·C(n, r-1)` for even `r`.
/// * `StackLeading`: `(k-1)(r-1)·C(n, r-1)`, the leading term of the exact
///   stack extremal number, even `r`.
/// * `SmallK`: `k²/(2r)·C(n, r-1)`, valid for `k <= r + 1`.
/// * `OddImproved`: `(√a + √b)²/r·C(n, r-1)` for odd `r >= 3`, asymptotic
///   only, with `a = ⌊(k-1)/r⌋` and `b = (r-1)(k-1-a)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Trivial,
    Kalai,
    TightPath,
    Perles,
    Zigzag,
    StackLeading,
    SmallK,
    OddImproved,
}

impl BoundKind {
    pub const ALL: [BoundKind; 8] = [
        BoundKind::Trivial,
        BoundKind::Kalai,
        BoundKind::TightPath,
        BoundKind::Perles,
        BoundKind::Zigzag,
        BoundKind::StackLeading,
        BoundKind::SmallK,
        BoundKind::OddImproved,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            BoundKind::Trivial => "trivial",
            BoundKind::Kalai => "kalai",
            BoundKind::TightPath => "tight_path",
            BoundKind::Perles => "perles",
            BoundKind::Zigzag => "zigzag",
            BoundKind::StackLeading => "stack_leading",
            BoundKind::SmallK => "small_k",
            BoundKind::OddImproved => "odd_improved",
        }
    }

    pub fn from_label(label: &str) -> Option<BoundKind> {
        BoundKind::ALL.iter().copied().find(|k| k.label() == label)
    }
}

/// An exact bound value `rational + irrational`, where the irrational part
/// (present only when the radicand is not a perfect square) is
/// `coeff · √radicand`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    pub rational: Rational64,
    pub irrational: Option<IrrationalPart>,
    /// True when the bound is only claimed for sufficiently large `n`.
    pub asymptotic_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrrationalPart {
    pub coeff: Rational64,
    pub radicand: u64,
}

impl BoundValue {
    fn exact(rational: Rational64) -> Self {
        BoundValue {
            rational,
            irrational: None,
            asymptotic_only: false,
        }
    }

    pub fn approx(&self) -> f64 {
        let mut v = *self.rational.numer() as f64 / *self.rational.denom() as f64;
        if let Some(irr) = &self.irrational {
            v += *irr.coeff.numer() as f64 / *irr.coeff.denom() as f64
                * (irr.radicand as f64).sqrt();
        }
        v
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        if let Some(irr) = &self.irrational {
            write!(f, " + {}*sqrt({})", irr.coeff, irr.radicand)?;
        }
        if self.asymptotic_only {
            write!(f, " (asymptotic only)")?;
        }
        Ok(())
    }
}

fn ratio(num: i64, den: i64) -> Rational64 {
    Rational64::new(num, den)
}

fn choose(n: u64, k: u64) -> i64 {
    binomial(n, k) as i64
}

/// Evaluate the bound `kind` at `(n, r, k)` as an exact rational, rejecting
/// parameter combinations outside the bound's validity range with an error
/// naming the violated precondition.
pub fn evaluate_bound(kind: BoundKind, n: u32, r: u32, k: u32) -> Result<BoundValue> {
    if r < 2 {
        return Err(CghError::domain("bounds need uniformity r >= 2"));
    }
    if n < r {
        return Err(CghError::domain(format!("bounds need n >= r, got n = {n}, r = {r}")));
    }
    if k < 1 {
        return Err(CghError::domain("bounds need k >= 1"));
    }
    let (n64, r64, k64) = (n as i64, r as i64, k as i64);
    let c = choose(n as u64, r as u64 - 1);
    let value = match kind {
        BoundKind::Trivial => BoundValue::exact(ratio((k64 - 1) * c, 1)),
        BoundKind::Kalai => BoundValue::exact(ratio((k64 - 1) * c, r64)),
        BoundKind::TightPath => {
            if r % 2 == 0 {
                BoundValue::exact(ratio((k64 - 1) * c, 2))
            } else {
                let a = (k64 - 1) / r64;
                BoundValue::exact(ratio((k64 + a) * c, 2))
            }
        }
        BoundKind::Perles => {
            if r != 2 {
                return Err(CghError::domain(
                    "the perles bound is stated for graphs (r = 2)",
                ));
            }
            BoundValue::exact(ratio((k64 - 1) * n64, 2))
        }
        BoundKind::Zigzag => {
            if r % 2 != 0 {
                return Err(CghError::domain("the zigzag bound needs even r"));
            }
            BoundValue::exact(ratio((k64 - 1) * (r64 - 1) * c, r64))
        }
        BoundKind::StackLeading => {
            if r % 2 != 0 {
                return Err(CghError::domain("the stack bound needs even r"));
            }
            BoundValue::exact(ratio((k64 - 1) * (r64 - 1) * c, 1))
        }
        BoundKind::SmallK => {
            if k > r + 1 {
                return Err(CghError::domain(format!(
                    "the small-k bound needs k <= r + 1, got k = {k}, r = {r}"
                )));
            }
            BoundValue::exact(ratio(k64 * k64 * c, 2 * r64))
        }
        BoundKind::OddImproved => {
            if r % 2 == 0 || r < 3 {
                return Err(CghError::domain("the improved odd bound needs odd r >= 3"));
            }
            let a = (k64 - 1) / r64;
            let b = (r64 - 1) * (k64 - 1 - a) / 2;
            let product = (a * b) as u64;
            let root = product.isqrt();
            if root * root == product {
                BoundValue {
                    rational: ratio((a + b + 2 * root as i64) * c, r64),
                    irrational: None,
                    asymptotic_only: true,
                }
            } else {
                BoundValue {
                    rational: ratio((a + b) * c, r64),
                    irrational: Some(IrrationalPart {
                        coeff: ratio(2 * c, r64),
                        radicand: product,
                    }),
                    asymptotic_only: true,
                }
            }
        }
    };
    Ok(value)
}

/// The kinds whose preconditions hold at `(n, r, k)`, in declaration order.
pub fn applicable_kinds(n: u32, r: u32, k: u32) -> Vec<BoundKind> {
    BoundKind::ALL
        .iter()
        .copied()
        .filter(|&kind| evaluate_bound(kind, n, r, k).is_ok())
        .collect()
}
