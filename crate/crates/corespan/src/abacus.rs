//! Runner decompositions of boundary words, cores, quotients, and the
//! multiplicity-splitting bijection.
//!
//! Splitting the boundary word by index residue mod `c` gives `c` runner
//! words. Runner `i` keeps the letters at indices `≡ i (mod c)`; the letter
//! at boundary index `j` sits at runner position `ceil(j / c)`, so position
//! `q` of every runner draws from the same block `(c(q-1), cq]` of boundary
//! indices. With that alignment the runner charges always sum to 0.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::partition::{partitions_of, BoundaryWord, Cell, Letter, Partition};

/// The `c` runner words of a partition boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbacusWords {
    c: u32,
    runners: Vec<BoundaryWord>,
}

/// Residue representative used for positions: runner 0 takes `j = qc`,
/// runner `i > 0` takes `j = qc + i - c`.
fn rep(i: u32, c: u32) -> i64 {
    if i == 0 {
        0
    } else {
        i as i64 - c as i64
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

/// Split the boundary word of `lambda` into `c` runners.
pub fn abacus_words(lambda: &Partition, c: u32) -> AbacusWords {
    assert!(c >= 1);
    let word = lambda.boundary_word();
    let c64 = c as i64;
    let lo = word.offset();
    let hi = word.offset() + word.window().len() as i64 - 1;
    let runners = (0..c)
        .map(|i| {
            let r = rep(i, c);
            let q_lo = ceil_div(lo - r, c64) - 1;
            let q_hi = ceil_div(hi - r, c64) + 1;
            let letters = (q_lo..=q_hi)
                .map(|q| word.letter_at(q * c64 + r))
                .collect();
            BoundaryWord::new(q_lo, letters)
        })
        .collect();
    AbacusWords { c, runners }
}

impl AbacusWords {
    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn runner(&self, i: u32) -> &BoundaryWord {
        &self.runners[i as usize]
    }

    pub fn runners(&self) -> &[BoundaryWord] {
        &self.runners
    }

    pub fn charges(&self) -> Vec<i64> {
        self.runners.iter().map(BoundaryWord::charge).collect()
    }

    /// Reassemble the boundary word the runners came from.
    pub fn interleave(&self) -> BoundaryWord {
        let c64 = self.c as i64;
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for (i, runner) in self.runners.iter().enumerate() {
            let r = rep(i as u32, self.c);
            let len = runner.window().len().max(1) as i64;
            lo = lo.min(c64 * (runner.offset() - 1) + r);
            hi = hi.max(c64 * (runner.offset() + len) + r);
        }
        let letters = (lo..=hi)
            .map(|j| {
                let i = j.rem_euclid(c64) as u32;
                self.runners[i as usize].letter_at(ceil_div(j, c64))
            })
            .collect();
        BoundaryWord::new(lo, letters)
    }
}

/// Number of boxes whose hook length is divisible by `c`; equals the total
/// inversion count of the runner words.
pub fn hooks_divisible_count(lambda: &Partition, c: u32) -> u64 {
    abacus_words(lambda, c)
        .runners()
        .iter()
        .map(BoundaryWord::inversions)
        .sum()
}

/// Runner charges of `lambda`; they sum to 0 and determine the `c`-core.
pub fn core_charges(lambda: &Partition, c: u32) -> Vec<i64> {
    abacus_words(lambda, c).charges()
}

pub fn is_core(lambda: &Partition, c: u32) -> bool {
    hooks_divisible_count(lambda, c) == 0
}

/// The unique `c`-core with the given runner charges. Charge tuples summing
/// to 0 are exactly the ones that arise, making this inverse to
/// [`core_charges`] on cores.
pub fn core_from_charges(charges: &[i64]) -> Result<Partition> {
    let c = charges.len() as u32;
    assert!(c >= 1);
    let total: i64 = charges.iter().sum();
    if total != 0 {
        return Err(Error::NonzeroCharge(total));
    }
    let runners = charges.iter().map(|&a| BoundaryWord::trivial(a)).collect();
    AbacusWords { c, runners }.interleave().to_partition()
}

/// The `c`-core: sort every runner to its inversion-free word with the same
/// charge and reassemble. Iterated rimhook removal gives the same partition
/// regardless of removal order; `remove_rimhook` serves as the independent
/// oracle for that.
pub fn core(lambda: &Partition, c: u32) -> Partition {
    let words = abacus_words(lambda, c);
    let runners = words.charges().into_iter().map(BoundaryWord::trivial).collect();
    let sorted = AbacusWords { c, runners };
    sorted
        .interleave()
        .to_partition()
        .expect("sorted runners keep total charge 0")
}

/// Delete the length-`c` rimhook attached to a box of hook length `c` by
/// swapping the east letter at the box's column top with the south letter
/// `c` positions later.
pub fn remove_rimhook(lambda: &Partition, cell: Cell, c: u32) -> Result<Partition> {
    let (_, leg, hook) = lambda.arm_leg_hook(cell)?;
    if hook != c {
        return Err(Error::HookNotEqualC {
            found: hook,
            expected: c,
        });
    }
    let word = lambda.boundary_word();
    let foot = cell.x as i64 - cell.y as i64 - leg as i64;
    let hand = foot + c as i64;
    debug_assert_eq!(hand, lambda.part(cell.y as usize) as i64 - cell.y as i64);
    debug_assert!(word.letter_at(foot).is_east());
    debug_assert!(word.letter_at(hand).is_south());
    let lo = word.offset().min(foot);
    let hi = (word.offset() + word.window().len() as i64 - 1).max(hand);
    let letters = (lo..=hi)
        .map(|j| {
            if j == foot {
                Letter::South
            } else if j == hand {
                Letter::East
            } else {
                word.letter_at(j)
            }
        })
        .collect();
    BoundaryWord::new(lo, letters).to_partition()
}

/// The `c`-quotient: runner `i` re-indexed to charge 0 and read as a
/// partition. `|lambda| = |core| + c * sum of quotient sizes`.
pub fn quotient(lambda: &Partition, c: u32) -> Vec<Partition> {
    abacus_words(lambda, c)
        .runners()
        .iter()
        .map(|runner| {
            runner
                .shifted(runner.charge())
                .to_partition()
                .expect("shift cancels the charge")
        })
        .collect()
}

/// Inverse of `(core, quotient)`: plant each quotient partition back on the
/// runner with the core's charge.
pub fn from_core_and_quotient(mu: &Partition, quotients: &[Partition], c: u32) -> Result<Partition> {
    if !is_core(mu, c) {
        return Err(Error::NotACore(c));
    }
    assert_eq!(quotients.len(), c as usize);
    let charges = core_charges(mu, c);
    let runners = quotients
        .iter()
        .zip(&charges)
        .map(|(q, &a)| q.boundary_word().shifted(-a))
        .collect();
    let words = AbacusWords { c, runners };
    words.interleave().to_partition()
}

/// All partitions of `n` with `c`-core `mu`, via quotient tuples. Returns an
/// empty list when `n` is incompatible with the class.
pub fn enumerate_class(mu: &Partition, c: u32, n: u64) -> Result<Vec<Partition>> {
    if !is_core(mu, c) {
        return Err(Error::NotACore(c));
    }
    if n < mu.size() || !(n - mu.size()).is_multiple_of(c as u64) {
        return Ok(Vec::new());
    }
    let budget = (n - mu.size()) / c as u64;

    fn splits(budget: u64, slots: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 1 {
            prefix.push(budget);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for head in 0..=budget {
            prefix.push(head);
            splits(budget - head, slots - 1, prefix, out);
            prefix.pop();
        }
    }

    let mut sizes = Vec::new();
    splits(budget, c as usize, &mut Vec::new(), &mut sizes);

    let mut out = Vec::new();
    let mut tuple = vec![Partition::empty(); c as usize];
    for size_tuple in sizes {
        fn assemble(
            mu: &Partition,
            c: u32,
            sizes: &[u64],
            slot: usize,
            tuple: &mut Vec<Partition>,
            out: &mut Vec<Partition>,
        ) {
            if slot == sizes.len() {
                out.push(
                    from_core_and_quotient(mu, tuple, c)
                        .expect("mu is a core by construction"),
                );
                return;
            }
            for q in partitions_of(sizes[slot]) {
                tuple[slot] = q;
                assemble(mu, c, sizes, slot + 1, tuple, out);
            }
        }
        assemble(mu, c, &size_tuple, 0, &mut tuple, &mut out);
    }
    Ok(out)
}

/// True when no part of `lambda` repeats `c` or more times.
pub fn in_kc(lambda: &Partition, c: u32) -> bool {
    lambda.multiplicities().values().all(|&m| m < c)
}

/// Split each part multiplicity `m` into `(m div c, m mod c)`: the first
/// component stacks of `c` equal parts, the second the remainder with every
/// multiplicity below `c`.
pub fn glaisher_split(lambda: &Partition, c: u32) -> (Partition, Partition) {
    assert!(c >= 1);
    let mult = lambda.multiplicities();
    let mut xi = BTreeMap::new();
    let mut nu = BTreeMap::new();
    for (&d, &m) in &mult {
        if m / c > 0 {
            xi.insert(d, m / c);
        }
        if m % c > 0 {
            nu.insert(d, m % c);
        }
    }
    (
        Partition::from_multiplicities(&xi),
        Partition::from_multiplicities(&nu),
    )
}

/// Inverse of [`glaisher_split`]: multiplicities recombine as `c*m(xi) + m(nu)`.
pub fn glaisher_merge(xi: &Partition, nu: &Partition, c: u32) -> Result<Partition> {
    if !in_kc(nu, c) {
        return Err(Error::NuNotInKc(c));
    }
    let mut mult = BTreeMap::new();
    for (&d, &m) in &xi.multiplicities() {
        *mult.entry(d).or_insert(0) += c * m;
    }
    for (&d, &m) in &nu.multiplicities() {
        *mult.entry(d).or_insert(0) += m;
    }
    Ok(Partition::from_multiplicities(&mult))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::letters_to_string;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn mu() -> Partition {
        p(&[12, 12, 10, 8, 7, 4, 1, 1, 1])
    }

    #[test]
    fn runners_of_running_example() {
        let words = abacus_words(&mu(), 2);
        // runner 0 around position 0:  ...S S S E S E E E | E E E S E S E E...
        let r0 = words.runner(0);
        let got: String = (-7..=8)
            .map(|q| r0.letter_at(q).to_string())
            .collect();
        assert_eq!(got, "SSSESEEEEEESESEE");
        // runner 1 around position 0:  ...S S S S S S E S | E S S E E S E E...
        let r1 = words.runner(1);
        let got: String = (-7..=8)
            .map(|q| r1.letter_at(q).to_string())
            .collect();
        assert_eq!(got, "SSSSSSESESSEESEE");
        assert_eq!(words.charges(), vec![2, -2]);
    }

    #[test]
    fn single_runner_is_the_boundary_word() {
        for n in 0..=8 {
            for lambda in partitions_of(n) {
                let words = abacus_words(&lambda, 1);
                assert_eq!(words.runner(0), &lambda.boundary_word());
            }
        }
    }

    #[test]
    fn charges_sum_to_zero() {
        for n in 0..=10 {
            for lambda in partitions_of(n) {
                for c in 1..=4 {
                    let charges = core_charges(&lambda, c);
                    assert_eq!(charges.iter().sum::<i64>(), 0, "{lambda} c={c}");
                }
            }
        }
        assert_eq!(core_charges(&p(&[4, 2, 1]), 2).iter().sum::<i64>(), 0);
    }

    #[test]
    fn interleave_round_trips() {
        for n in 0..=10 {
            for lambda in partitions_of(n) {
                for c in 1..=4 {
                    let words = abacus_words(&lambda, c);
                    assert_eq!(words.interleave(), lambda.boundary_word());
                }
            }
        }
    }

    #[test]
    fn hook_count_examples() {
        assert_eq!(hooks_divisible_count(&p(&[4, 2, 1]), 2), 3);
        assert_eq!(hooks_divisible_count(&mu(), 2), 25);
        assert_eq!(hooks_divisible_count(&core(&mu(), 2), 2), 0);
    }

    #[test]
    fn core_examples() {
        assert_eq!(core(&mu(), 2), p(&[3, 2, 1]));
        assert_eq!(core(&p(&[4, 2, 1]), 2), p(&[1]));
        for n in 0..=8 {
            for lambda in partitions_of(n) {
                assert_eq!(core(&lambda, 1), Partition::empty());
            }
        }
    }

    #[test]
    fn rimhook_removal_examples() {
        // the two hooks of length 2 in (2,2) peel off the right column or
        // the top row respectively
        assert_eq!(
            remove_rimhook(&p(&[2, 2]), Cell::new(1, 0), 2).unwrap(),
            p(&[1, 1])
        );
        assert_eq!(
            remove_rimhook(&p(&[2, 2]), Cell::new(0, 1), 2).unwrap(),
            p(&[2])
        );
        assert_eq!(
            remove_rimhook(&p(&[1]), Cell::new(0, 0), 1).unwrap(),
            Partition::empty()
        );
        assert!(matches!(
            remove_rimhook(&p(&[2, 2]), Cell::new(0, 0), 2),
            Err(Error::HookNotEqualC { found: 3, expected: 2 })
        ));
    }

    #[test]
    fn quotient_examples() {
        for n in 0..=8 {
            for lambda in partitions_of(n) {
                assert_eq!(quotient(&lambda, 1), vec![lambda.clone()]);
            }
        }
        let q = quotient(&core(&mu(), 2), 2);
        assert!(q.iter().all(Partition::is_empty));
        // size identity
        for n in 0..=10 {
            for lambda in partitions_of(n) {
                for c in 1..=4u32 {
                    let qs = quotient(&lambda, c);
                    let total: u64 = qs.iter().map(Partition::size).sum();
                    assert_eq!(
                        lambda.size(),
                        core(&lambda, c).size() + c as u64 * total
                    );
                }
            }
        }
    }

    #[test]
    fn core_quotient_round_trip() {
        for n in 0..=10 {
            for lambda in partitions_of(n) {
                for c in [2u32, 3] {
                    let muc = core(&lambda, c);
                    let qs = quotient(&lambda, c);
                    let back = from_core_and_quotient(&muc, &qs, c).unwrap();
                    assert_eq!(back, lambda);
                }
            }
        }
        let muc = p(&[2, 1]);
        assert_eq!(
            from_core_and_quotient(&muc, &[Partition::empty(), Partition::empty()], 2).unwrap(),
            muc
        );
        assert!(matches!(
            from_core_and_quotient(&p(&[2]), &[Partition::empty(), Partition::empty()], 2),
            Err(Error::NotACore(2))
        ));
    }

    #[test]
    fn class_enumeration_matches_filter() {
        let class = enumerate_class(&p(&[2, 1]), 2, 7).unwrap();
        let mut got: Vec<_> = class.iter().map(|q| q.parts().to_vec()).collect();
        got.sort();
        let mut want = vec![
            vec![6, 1],
            vec![4, 3],
            vec![4, 1, 1, 1],
            vec![2, 2, 2, 1],
            vec![2, 1, 1, 1, 1, 1],
        ];
        want.sort();
        assert_eq!(got, want);

        assert_eq!(enumerate_class(&Partition::empty(), 1, 4).unwrap().len(), 5);
        assert!(enumerate_class(&p(&[2, 1]), 2, 6).unwrap().is_empty());

        for n in 0..=10u64 {
            for c in [2u32, 3] {
                let mut grouped: BTreeMap<Partition, Vec<Partition>> = BTreeMap::new();
                for lambda in partitions_of(n) {
                    grouped.entry(core(&lambda, c)).or_default().push(lambda);
                }
                for (muc, mut members) in grouped {
                    let mut enumerated = enumerate_class(&muc, c, n).unwrap();
                    members.sort();
                    enumerated.sort();
                    assert_eq!(enumerated, members);
                }
            }
        }
    }

    #[test]
    fn charges_classify_cores() {
        for m in 0..=8u64 {
            for mu in partitions_of(m) {
                for c in 2..=4 {
                    if is_core(&mu, c) {
                        let charges = core_charges(&mu, c);
                        assert_eq!(core_from_charges(&charges).unwrap(), mu);
                    }
                }
            }
        }
        assert_eq!(core_from_charges(&[2, -2]).unwrap(), p(&[3, 2, 1]));
        assert!(matches!(
            core_from_charges(&[1, 1]),
            Err(Error::NonzeroCharge(2))
        ));
    }

    #[test]
    fn glaisher_examples() {
        let lambda = p(&[7, 7, 4, 4, 4, 4, 4, 4, 4, 3, 2, 2, 2, 1]);
        let (xi, nu) = glaisher_split(&lambda, 3);
        assert_eq!(xi, p(&[4, 4, 2]));
        assert_eq!(nu, p(&[7, 7, 4, 3, 1]));
        assert_eq!(glaisher_merge(&xi, &nu, 3).unwrap(), lambda);
        assert_eq!(core(&nu, 3), core(&lambda, 3));

        assert_eq!(
            glaisher_split(&p(&[1, 1]), 2),
            (p(&[1]), Partition::empty())
        );
        assert_eq!(
            glaisher_merge(&p(&[1]), &Partition::empty(), 2).unwrap(),
            p(&[1, 1])
        );
        assert!(matches!(
            glaisher_merge(&Partition::empty(), &p(&[1, 1]), 2),
            Err(Error::NuNotInKc(2))
        ));
    }

    #[test]
    fn runner_display_helper() {
        let words = abacus_words(&p(&[4, 2, 1]), 2);
        assert_eq!(letters_to_string(words.runner(0).window()), "EEES");
    }
}
