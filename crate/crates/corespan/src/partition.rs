//! Partitions, Young-diagram cells, and boundary words.
//!
//! The boundary of a partition is modelled as a bi-infinite word over
//! `{S, E}` indexed by `x - y` at the target of each unit step. Far to the
//! left every letter is `S` (down the y-axis), far to the right every letter
//! is `E` (out the x-axis), so a finite window plus an offset determines the
//! whole word.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One step of a boundary word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    South,
    East,
}

impl Letter {
    pub fn is_south(self) -> bool {
        self == Letter::South
    }

    pub fn is_east(self) -> bool {
        self == Letter::East
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::South => "S",
            Letter::East => "E",
        })
    }
}

/// Parse a word like "SES" or "SSE".
pub fn letters_from_str(s: &str) -> Option<Vec<Letter>> {
    s.chars()
        .map(|ch| match ch {
            'S' => Some(Letter::South),
            'E' => Some(Letter::East),
            _ => None,
        })
        .collect()
}

/// Render a word as a compact string of `S`/`E` characters.
pub fn letters_to_string(letters: &[Letter]) -> String {
    letters.iter().map(Letter::to_string).collect()
}

/// A box of a Young diagram addressed by the bottom-left corner of its unit
/// square; row 0 is the bottom row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub x: u32,
    pub y: u32,
}

impl Cell {
    pub fn new(x: u32, y: u32) -> Self {
        Cell { x, y }
    }
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing with positive entries.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::NonPositivePart);
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::NotWeaklyDecreasing(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The part in `row` (0-based from the bottom), or 0 past the last row.
    pub fn part(&self, row: usize) -> u32 {
        self.parts.get(row).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of rows whose part exceeds `x`, i.e. the height of column `x`.
    pub fn column_height(&self, x: u32) -> u32 {
        self.parts.iter().take_while(|&&p| p > x).count() as u32
    }

    pub fn contains_cell(&self, cell: Cell) -> bool {
        (cell.y as usize) < self.len() && cell.x < self.part(cell.y as usize)
    }

    /// True if the diagram of `other` fits inside the diagram of `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|row| self.part(row) >= other.part(row))
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(y, &p)| (0..p).map(move |x| Cell::new(x, y as u32)))
    }

    /// Number of parts equal to `d`.
    pub fn multiplicity(&self, d: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == d).count() as u32
    }

    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Assemble a partition from a multiplicity map.
    pub fn from_multiplicities(mult: &BTreeMap<u32, u32>) -> Self {
        let mut parts = Vec::new();
        for (&d, &m) in mult.iter().rev() {
            if d > 0 {
                parts.extend(std::iter::repeat_n(d, m as usize));
            }
        }
        Partition { parts }
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols).map(|x| self.column_height(x)).collect();
        Partition { parts }
    }

    /// Arm, leg, and hook length of a cell.
    pub fn arm_leg_hook(&self, cell: Cell) -> Result<(u32, u32, u32)> {
        if !self.contains_cell(cell) {
            return Err(Error::CellOutsideDiagram(cell));
        }
        let arm = self.part(cell.y as usize) - cell.x - 1;
        let leg = self.column_height(cell.x) - cell.y - 1;
        Ok((arm, leg, arm + leg + 1))
    }

    /// The boundary word of the diagram. Its window runs from index
    /// `1 - len()` (the topmost east step) to index `part(0)` (the south step
    /// closing the bottom row), and its charge is 0.
    pub fn boundary_word(&self) -> BoundaryWord {
        let rows = self.len();
        if rows == 0 {
            return BoundaryWord::trivial(0);
        }
        let mut letters = Vec::with_capacity(self.part(0) as usize + rows);
        for y in (1..=rows).rev() {
            let run = self.part(y - 1) - self.part(y);
            letters.extend(std::iter::repeat_n(Letter::East, run as usize));
            letters.push(Letter::South);
        }
        BoundaryWord::new(1 - rows as i64, letters)
    }

    /// Bottom-left corners (x, y) at which a box can be added so that the
    /// result is still a partition, ordered by increasing row.
    pub fn addable_corners(&self) -> Vec<(u32, u32)> {
        let mut corners = Vec::with_capacity(self.len() + 1);
        for y in 0..=self.len() {
            if y == 0 || self.part(y - 1) > self.part(y) {
                corners.push((self.part(y), y as u32));
            }
        }
        corners
    }

    /// The partition with a box added at corner `(x, y)`.
    pub fn with_box_at(&self, x: u32, y: u32) -> Partition {
        let mut parts = self.parts.clone();
        let row = y as usize;
        debug_assert_eq!(self.part(row), x);
        if row == parts.len() {
            parts.push(1);
        } else {
            parts[row] += 1;
        }
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `4,2,1`, `(4,2,1)`, or an empty string for the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| tok.trim().parse::<u32>().map_err(|_| Error::NonPositivePart))
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.parts.len()))?;
        for p in &self.parts {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PartsVisitor;

        impl<'de> Visitor<'de> for PartsVisitor {
            type Value = Partition;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a weakly decreasing array of positive integers")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Partition, A::Error> {
                let mut parts = Vec::new();
                while let Some(p) = seq.next_element::<u32>()? {
                    parts.push(p);
                }
                Partition::new(parts).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_seq(PartsVisitor)
    }
}

/// A bi-infinite `{S, E}` word with an all-`S` left tail and an all-`E` right
/// tail, stored as the minimal window that covers every letter differing from
/// the tails. Equal words always have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryWord {
    offset: i64,
    letters: Vec<Letter>,
}

impl BoundaryWord {
    /// Builds a word whose letter at index `offset + i` is `letters[i]`,
    /// trimming redundant tail letters so the stored window is minimal.
    pub fn new(offset: i64, letters: Vec<Letter>) -> Self {
        let mut word = BoundaryWord { offset, letters };
        word.canonicalize();
        word
    }

    /// The word with empty window and the given charge: `S` at every index
    /// `< 1 - charge`, `E` at every index `>= 1 - charge`.
    pub fn trivial(charge: i64) -> Self {
        BoundaryWord {
            offset: 1 - charge,
            letters: Vec::new(),
        }
    }

    fn canonicalize(&mut self) {
        let lead = self
            .letters
            .iter()
            .take_while(|l| l.is_south())
            .count();
        self.letters.drain(..lead);
        self.offset += lead as i64;
        while self.letters.last().is_some_and(|l| l.is_east()) {
            self.letters.pop();
        }
        if self.letters.is_empty() {
            // pick the unique empty-window form with the same charge
            let charge = -(self.offset - 1);
            self.offset = 1 - charge;
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn window(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter_at(&self, index: i64) -> Letter {
        if index < self.offset {
            Letter::South
        } else if index >= self.offset + self.letters.len() as i64 {
            Letter::East
        } else {
            self.letters[(index - self.offset) as usize]
        }
    }

    fn south_count(&self) -> i64 {
        self.letters.iter().filter(|l| l.is_south()).count() as i64
    }

    /// `e_k - s_k - k` where `e_k` counts easts at index at most `k` and
    /// `s_k` counts souths at index greater than `k`.
    pub fn charge_at(&self, k: i64) -> i64 {
        let end = self.offset + self.letters.len() as i64; // first right-tail index
        let easts_le_k = if k < self.offset {
            0
        } else {
            let in_window = self
                .letters
                .iter()
                .take((k - self.offset + 1).min(self.letters.len() as i64) as usize)
                .filter(|l| l.is_east())
                .count() as i64;
            in_window + (k - end + 1).max(0)
        };
        let souths_gt_k = if k >= end {
            0
        } else {
            let in_window = if k < self.offset {
                self.south_count()
            } else {
                self.letters[(k - self.offset + 1) as usize..]
                    .iter()
                    .filter(|l| l.is_south())
                    .count() as i64
            };
            in_window + (self.offset - 1 - k).max(0)
        };
        easts_le_k - souths_gt_k - k
    }

    /// The charge, evaluated just left of the window (independent of where).
    pub fn charge(&self) -> i64 {
        -self.south_count() - (self.offset - 1)
    }

    /// The word with every index translated by `t` (letter at `i` moves to
    /// `i + t`); shifting right by one lowers the charge by one.
    pub fn shifted(&self, t: i64) -> Self {
        BoundaryWord {
            offset: self.offset + t,
            letters: self.letters.clone(),
        }
    }

    /// Number of pairs (east, south) with the east at a smaller index.
    pub fn inversions(&self) -> u64 {
        let mut easts_seen = 0u64;
        let mut inv = 0u64;
        for l in &self.letters {
            match l {
                Letter::East => easts_seen += 1,
                Letter::South => inv += easts_seen,
            }
        }
        inv
    }

    /// Reconstructs the unique partition with this boundary word.
    pub fn to_partition(&self) -> Result<Partition> {
        let charge = self.charge();
        if charge != 0 {
            return Err(Error::NonzeroCharge(charge));
        }
        let mut easts = 0u32;
        let mut parts = Vec::new();
        for l in &self.letters {
            match l {
                Letter::East => easts += 1,
                Letter::South => parts.push(easts),
            }
        }
        parts.reverse();
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Ok(Partition { parts })
    }
}

impl fmt::Display for BoundaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S^inf {} E^inf @ {}",
            letters_to_string(&self.letters),
            self.offset
        )
    }
}

/// Every partition of `n`, in reverse-lexicographic order: `(n)` first, then
/// `(n-1,1)`, ..., ending with all ones. Deterministic, suitable for golden
/// files.
pub fn partitions_of(n: u64) -> Vec<Partition> {
    fn rec(remaining: u64, max_part: u64, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: stack.clone(),
            });
            return;
        }
        let top = remaining.min(max_part);
        for first in (1..=top).rev() {
            stack.push(first as u32);
            rec(remaining - first, first, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// p(n) by the pentagonal-number recurrence; used to cross-check enumeration.
pub fn partition_count(n: u64) -> u64 {
    let n = n as usize;
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let mut sum = 0i64;
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            sum += sign * table[i - g1] as i64;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= i {
                sum += sign * table[i - g2] as i64;
            }
            k += 1;
        }
        table[i] = sum as u64;
    }
    table[n]
}
