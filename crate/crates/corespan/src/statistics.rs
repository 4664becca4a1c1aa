//! Hook statistics filtered by an exact rational slope.
//!
//! A box with arm `a` and leg `l` is compared against a slope `x` through the
//! fractions `a/(l+1)` and `(a+1)/l`, with `q/0` read as infinity. All
//! comparisons cross-multiply in 128-bit integers; no floating point.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;


use crate::error::{Error, Result};
use crate::partition::Partition;

/// A non-negative rational slope in lowest terms; denominator 0 encodes
/// infinity, numerator 0 encodes zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    num: u64,
    den: u64,
}

impl Slope {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(num != 0 || den != 0, "slope 0/0 is undefined");
        let g = num.gcd(&den);
        Slope {
            num: num / g,
            den: den / g,
        }
    }

    pub fn zero() -> Self {
        Slope { num: 0, den: 1 }
    }

    pub fn infinity() -> Self {
        Slope { num: 1, den: 0 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn is_positive_finite(&self) -> bool {
        self.num > 0 && self.den > 0
    }

    /// The slope strictly between two distinct slopes, by adding numerators
    /// and denominators.
    pub fn mediant(a: Slope, b: Slope) -> Slope {
        Slope::new(a.num + b.num, a.den + b.den)
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        let left = self.num as u128 * other.den as u128;
        let right = other.num as u128 * self.den as u128;
        left.cmp(&right)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Slope {
    type Err = String;

    /// Accepts `inf`, an integer, or `r/s`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Slope::infinity());
        }
        let parse = |tok: &str| {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad slope component {tok:?}"))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let (num, den) = (parse(n)?, parse(d)?);
                if num == 0 && den == 0 {
                    return Err("slope 0/0 is undefined".into());
                }
                Ok(Slope::new(num, den))
            }
            None => Ok(Slope::new(parse(s)?, 1)),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `a/(l+1) <= x`, cross-multiplied.
fn lower_le(arm: u32, leg: u32, x: Slope) -> bool {
    (arm as u128) * (x.den as u128) <= (x.num as u128) * (leg as u128 + 1)
}

/// `a/(l+1) < x`.
fn lower_lt(arm: u32, leg: u32, x: Slope) -> bool {
    (arm as u128) * (x.den as u128) < (x.num as u128) * (leg as u128 + 1)
}

/// `x < (a+1)/l`.
fn upper_gt(arm: u32, leg: u32, x: Slope) -> bool {
    (x.num as u128) * (leg as u128) < (arm as u128 + 1) * (x.den as u128)
}

/// `x <= (a+1)/l`.
fn upper_ge(arm: u32, leg: u32, x: Slope) -> bool {
    (x.num as u128) * (leg as u128) <= (arm as u128 + 1) * (x.den as u128)
}

/// Arm/leg pairs of the boxes whose hook length is divisible by `c`.
pub fn divisible_arm_legs(lambda: &Partition, c: u32) -> Vec<(u32, u32)> {
    lambda
        .cells()
        .filter_map(|cell| {
            let (a, l, h) = lambda.arm_leg_hook(cell).expect("cell comes from the diagram");
            (h % c == 0).then_some((a, l))
        })
        .collect()
}

fn count_divisible<F: Fn(u32, u32) -> bool>(lambda: &Partition, c: u32, keep: F) -> u64 {
    divisible_arm_legs(lambda, c)
        .into_iter()
        .filter(|&(a, l)| keep(a, l))
        .count() as u64
}

/// Boxes with `c | h` and `a/(l+1) <= x < (a+1)/l`. Defined for `x` in
/// `[0, inf)`.
pub fn h_plus(lambda: &Partition, x: Slope, c: u32) -> u64 {
    count_divisible(lambda, c, |a, l| lower_le(a, l, x) && upper_gt(a, l, x))
}

/// Boxes with `c | h` and `a/(l+1) < x <= (a+1)/l`. Defined for `x` in
/// `(0, inf]`.
pub fn h_minus(lambda: &Partition, x: Slope, c: u32) -> u64 {
    count_divisible(lambda, c, |a, l| lower_lt(a, l, x) && upper_ge(a, l, x))
}

/// Boxes with `c | h` strictly between the two critical fractions:
/// `-s < s*a - r*l < r` for `x = r/s`.
pub fn mid(lambda: &Partition, x: Slope, c: u32) -> u64 {
    count_divisible(lambda, c, |a, l| lower_lt(a, l, x) && upper_gt(a, l, x))
}

/// Boxes with `c | h` and `a/(l+1) = x` exactly.
pub fn crit_plus(lambda: &Partition, x: Slope, c: u32) -> u64 {
    count_divisible(lambda, c, |a, l| {
        (a as u128) * (x.den as u128) == (x.num as u128) * (l as u128 + 1)
    })
}

/// Boxes with `c | h` and `(a+1)/l = x` exactly.
pub fn crit_minus(lambda: &Partition, x: Slope, c: u32) -> u64 {
    count_divisible(lambda, c, |a, l| {
        (a as u128 + 1) * (x.den as u128) == (x.num as u128) * (l as u128)
    })
}

/// Sum over part sizes of `floor(multiplicity / c)`: the number of stacks of
/// `c` equal parts whose right edge lies on the boundary. Coincides with
/// `h_plus` at slope 0.
pub fn repeat_blocks(lambda: &Partition, c: u32) -> u64 {
    lambda
        .multiplicities()
        .values()
        .map(|&m| (m / c) as u64)
        .sum()
}

/// Every statistic of a partition at one slope. `h_plus` is absent at
/// infinity and `h_minus` is absent at zero, where they are undefined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatReport {
    pub mid: u64,
    pub crit_plus: u64,
    pub crit_minus: u64,
    pub h_plus: Option<u64>,
    pub h_minus: Option<u64>,
    pub lambda_box_cstar: u64,
}

pub fn stat_report(lambda: &Partition, x: Slope, c: u32) -> StatReport {
    StatReport {
        mid: mid(lambda, x, c),
        crit_plus: crit_plus(lambda, x, c),
        crit_minus: crit_minus(lambda, x, c),
        h_plus: (!x.is_infinite()).then(|| h_plus(lambda, x, c)),
        h_minus: (!x.is_zero()).then(|| h_minus(lambda, x, c)),
        lambda_box_cstar: repeat_blocks(lambda, c),
    }
}

/// The slopes at which some box of some listed partition changes its
/// contribution: `0`, `inf`, and both critical fractions of every box with
/// `c | h`. Sorted and deduplicated.
pub fn critical_rationals(partitions: &[Partition], c: u32) -> Vec<Slope> {
    let mut set = BTreeSet::new();
    set.insert(Slope::zero());
    set.insert(Slope::infinity());
    for lambda in partitions {
        for (a, l) in divisible_arm_legs(lambda, c) {
            set.insert(Slope::new(a as u64, l as u64 + 1));
            set.insert(Slope::new(a as u64 + 1, l as u64));
        }
    }
    set.into_iter().collect()
}

/// Closed set of statistic selectors exposed at the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    HPlus,
    HMinus,
    Mid,
    CritPlus,
    CritMinus,
    LambdaBoxCstar,
}

impl Statistic {
    /// Evaluate on one partition; `None` when the slope is outside the
    /// statistic's domain.
    pub fn evaluate(self, lambda: &Partition, x: Slope, c: u32) -> Result<u64> {
        match self {
            Statistic::HPlus if x.is_infinite() => Err(Error::DomainMismatch),
            Statistic::HMinus if x.is_zero() => Err(Error::DomainMismatch),
            Statistic::HPlus => Ok(h_plus(lambda, x, c)),
            Statistic::HMinus => Ok(h_minus(lambda, x, c)),
            Statistic::Mid => Ok(mid(lambda, x, c)),
            Statistic::CritPlus => Ok(crit_plus(lambda, x, c)),
            Statistic::CritMinus => Ok(crit_minus(lambda, x, c)),
            Statistic::LambdaBoxCstar => Ok(repeat_blocks(lambda, c)),
        }
    }
}

/// Coefficient vector of `sum over the set of t^stat`; index `k` counts the
/// partitions with statistic value `k`.
pub fn distribution(
    stat: Statistic,
    x: Slope,
    c: u32,
    partitions: &[Partition],
) -> Result<Vec<u64>> {
    let mut coeffs = Vec::new();
    for lambda in partitions {
        let v = stat.evaluate(lambda, x, c)? as usize;
        if coeffs.len() <= v {
            coeffs.resize(v + 1, 0);
        }
        coeffs[v] += 1;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abacus;
    use crate::partition::partitions_of;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn class_7() -> Vec<Partition> {
        abacus::enumerate_class(&p(&[2, 1]), 2, 7).unwrap()
    }

    #[test]
    fn slope_ordering_and_parsing() {
        let s: Slope = "3/1".parse().unwrap();
        assert_eq!(s, Slope::new(3, 1));
        assert_eq!("inf".parse::<Slope>().unwrap(), Slope::infinity());
        assert_eq!("0".parse::<Slope>().unwrap(), Slope::zero());
        assert!(Slope::zero() < Slope::new(1, 3));
        assert!(Slope::new(1, 3) < Slope::new(1, 2));
        assert!(Slope::new(7, 2) < Slope::infinity());
        assert!("0/0".parse::<Slope>().is_err());
        assert_eq!(Slope::new(4, 2), Slope::new(2, 1));
        assert_eq!(Slope::new(4, 2).to_string(), "2");
        assert_eq!(Slope::new(3, 9).to_string(), "1/3");
    }

    #[test]
    fn h_plus_examples() {
        assert_eq!(h_plus(&p(&[6, 1]), Slope::new(4, 1), 2), 2);
        assert_eq!(h_plus(&Partition::empty(), Slope::new(1, 1), 3), 0);
        for n in 0..=14u64 {
            for lambda in partitions_of(n) {
                for c in 1..=3 {
                    assert_eq!(
                        h_plus(&lambda, Slope::zero(), c),
                        repeat_blocks(&lambda, c),
                        "{lambda} c={c}"
                    );
                }
            }
        }
    }

    #[test]
    fn h_minus_examples() {
        assert_eq!(h_minus(&p(&[6, 1]), Slope::new(3, 1), 2), 1);
        assert_eq!(h_minus(&Partition::empty(), Slope::new(1, 2), 2), 0);
        for n in 0..=12u64 {
            for lambda in partitions_of(n) {
                for c in 1..=3 {
                    assert_eq!(
                        h_minus(&lambda, Slope::infinity(), c),
                        repeat_blocks(&lambda.conjugate(), c)
                    );
                }
            }
        }
    }

    #[test]
    fn mid_examples() {
        assert_eq!(mid(&p(&[6, 1]), Slope::new(3, 1), 2), 1);
        assert_eq!(mid(&p(&[2, 2]), Slope::new(1, 1), 2), 0);
        // when r+s divides c no box stays strictly between the fractions
        for n in 0..=12u64 {
            for lambda in partitions_of(n) {
                for (r, s, c) in [(1, 1, 2), (1, 1, 4), (2, 1, 3)] {
                    assert_eq!(mid(&lambda, Slope::new(r, s), c), 0);
                }
            }
        }
    }

    #[test]
    fn crit_examples() {
        let x = Slope::new(3, 1);
        assert_eq!(crit_plus(&p(&[6, 1]), x, 2), 1);
        assert_eq!(crit_minus(&p(&[6, 1]), x, 2), 0);
        assert_eq!(crit_plus(&p(&[4, 3]), x, 2), 0);
        assert_eq!(crit_minus(&p(&[4, 3]), x, 2), 1);
        let one = Slope::new(1, 1);
        assert_eq!(crit_plus(&p(&[2, 2]), one, 2), 1);
        assert_eq!(crit_minus(&p(&[2, 2]), one, 2), 1);
    }

    #[test]
    fn decomposition_h_equals_mid_plus_crit() {
        let slopes = [
            Slope::new(1, 1),
            Slope::new(3, 1),
            Slope::new(1, 3),
            Slope::new(3, 2),
            Slope::new(2, 5),
        ];
        for n in 0..=12u64 {
            for lambda in partitions_of(n) {
                for c in 1..=3 {
                    for x in slopes {
                        assert_eq!(
                            h_plus(&lambda, x, c),
                            mid(&lambda, x, c) + crit_plus(&lambda, x, c)
                        );
                        assert_eq!(
                            h_minus(&lambda, x, c),
                            mid(&lambda, x, c) + crit_minus(&lambda, x, c)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn repeat_blocks_examples() {
        assert_eq!(repeat_blocks(&p(&[7, 7, 4, 4, 4, 4, 4, 4, 4, 3, 2, 2, 2, 1]), 3), 3);
        assert_eq!(repeat_blocks(&p(&[2, 1, 1, 1, 1, 1]), 2), 2);
        for n in 0..=10u64 {
            for lambda in partitions_of(n) {
                assert_eq!(repeat_blocks(&lambda, 1), lambda.len() as u64);
            }
        }
    }

    #[test]
    fn critical_rationals_of_extended_class() {
        let got = critical_rationals(&class_7(), 2);
        let want = vec![
            Slope::zero(),
            Slope::new(1, 3),
            Slope::new(1, 1),
            Slope::new(3, 1),
            Slope::infinity(),
        ];
        assert_eq!(got, want);
        assert_eq!(
            critical_rationals(&[Partition::empty()], 2),
            vec![Slope::zero(), Slope::infinity()]
        );
    }

    #[test]
    fn statistics_constant_between_critical_rationals() {
        for c in [1u32, 2] {
            let all: Vec<_> = partitions_of(4);
            let criticals = critical_rationals(&all, c);
            for pair in criticals.windows(2) {
                let inside = Slope::mediant(pair[0], pair[1]);
                for lambda in &all {
                    for (a, l) in divisible_arm_legs(lambda, c) {
                        // off the critical set both filters agree boxwise
                        let plus = lower_le(a, l, inside) && upper_gt(a, l, inside);
                        let minus = lower_lt(a, l, inside) && upper_ge(a, l, inside);
                        assert_eq!(plus, minus);
                    }
                }
            }
        }
    }

    #[test]
    fn distribution_of_extended_class() {
        let class = class_7();
        let plus = distribution(Statistic::HPlus, Slope::new(4, 1), 2, &class).unwrap();
        assert_eq!(plus, vec![2, 2, 1]);
        let blocks = distribution(Statistic::LambdaBoxCstar, Slope::zero(), 2, &class).unwrap();
        assert_eq!(blocks, vec![2, 2, 1]);
        let empty: Vec<Partition> = Vec::new();
        assert_eq!(
            distribution(Statistic::Mid, Slope::new(1, 1), 2, &empty).unwrap(),
            Vec::<u64>::new()
        );
        assert_eq!(
            distribution(Statistic::HMinus, Slope::zero(), 2, &class),
            Err(Error::DomainMismatch)
        );
    }
}
