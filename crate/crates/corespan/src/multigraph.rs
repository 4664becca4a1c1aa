//! The cylindrical boundary multigraph at slope parameters `(r, s, c)`.
//!
//! Collapsing each boundary point `(x, y)` to the class `(sx + ry, [x - y mod
//! c])` pushes the boundary tour down to a finite object: per class, an
//! arrival word and a departure word listing the letters of the edges whose
//! target (source) lands there, in boundary order. Every class at level
//! above the window bound `k` carries a forced word determined by the axes
//! alone, so storing levels up to `k` captures the whole tour.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{Letter, Partition};

/// One class of boundary points: level `sx + ry` and residue `x - y mod c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId {
    pub level: i64,
    pub residue: u32,
}

impl VertexId {
    pub fn new(level: i64, residue: u32) -> Self {
        VertexId { level, residue }
    }
}

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},[{}])", self.level, self.residue)
    }
}

/// Slope parameters: coprime positive `r`, `s` and a positive modulus `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SlopeParams {
    pub r: u64,
    pub s: u64,
    pub c: u32,
}

impl SlopeParams {
    pub fn new(r: u64, s: u64, c: u32) -> Self {
        assert!(r >= 1 && s >= 1 && c >= 1, "parameters must be positive");
        assert_eq!(r.gcd(&s), 1, "r and s must be coprime");
        SlopeParams { r, s, c }
    }

    pub fn rsc(&self) -> i64 {
        (self.r * self.s * self.c as u64) as i64
    }

    /// `lcm(c, r + s)`: the cylinder circumference in lattice steps.
    pub fn period(&self) -> i64 {
        (self.c as u64).lcm(&(self.r + self.s)) as i64
    }

    fn residue_of(&self, diag: i64) -> u32 {
        diag.rem_euclid(self.c as i64) as u32
    }

    fn vertex_of_point(&self, x: i64, y: i64) -> VertexId {
        VertexId::new(self.s as i64 * x + self.r as i64 * y, self.residue_of(x - y))
    }

    /// The forced arrival word at a class whose level exceeds the window
    /// bound: at most one south letter from the y-axis followed by at most
    /// one east letter from the x-axis.
    pub fn generic_arrival(&self, v: VertexId) -> Vec<Letter> {
        let mut word = Vec::new();
        if self.on_y_ray(v) {
            word.push(Letter::South);
        }
        if self.on_x_ray(v) {
            word.push(Letter::East);
        }
        word
    }

    /// Class contains the y-axis point `(0, level/r)`.
    pub fn on_y_ray(&self, v: VertexId) -> bool {
        let r = self.r as i64;
        v.level >= 0 && v.level % r == 0 && self.residue_of(-(v.level / r)) == v.residue
    }

    /// Class contains the x-axis point `(level/s, 0)` with an east arrival;
    /// no east edge can arrive at the origin itself.
    pub fn on_x_ray(&self, v: VertexId) -> bool {
        let s = self.s as i64;
        v.level > 0 && v.level % s == 0 && self.residue_of(v.level / s) == v.residue
    }
}

/// The boundary tour pushed to the cylinder: per-vertex arrival and departure
/// words for every level at most `k`, plus the implicit generic words above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tour {
    params: SlopeParams,
    k: i64,
    arrivals: BTreeMap<VertexId, Vec<Letter>>,
    departures: BTreeMap<VertexId, Vec<Letter>>,
}

/// Smallest multiple of `r*s*c` such that every box's top-right corner
/// `(x, y)` satisfies `s*x + r*y <= k`; at least `r*s*c` so the window is
/// never empty.
pub fn canonical_window(lambda: &Partition, params: SlopeParams) -> i64 {
    let needed = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(row, &p)| params.s as i64 * p as i64 + params.r as i64 * (row as i64 + 1))
        .max()
        .unwrap_or(0);
    let rsc = params.rsc();
    (needed.max(1) + rsc - 1).div_euclid(rsc) * rsc
}

impl Tour {
    /// Build the tour of `lambda` with window bound `k` (default: the
    /// canonical window). `k` must be a positive multiple of `r*s*c` whose
    /// line clears the whole diagram.
    pub fn build(lambda: &Partition, params: SlopeParams, k: Option<i64>) -> Result<Tour> {
        let k = match k {
            None => canonical_window(lambda, params),
            Some(k) => {
                if k <= 0 || k % params.rsc() != 0 || k < canonical_window(lambda, params) {
                    return Err(Error::WindowTooSmall { k });
                }
                k
            }
        };
        let word = lambda.boundary_word();
        let (r, s) = (params.r as i64, params.s as i64);
        let j_lo = -(k / r); // south edge into (0, k/r) has this index
        let j_hi = k / s + 1; // east edge out of (k/s, 0) has this index
        let mut arrivals: BTreeMap<VertexId, Vec<Letter>> = BTreeMap::new();
        let mut departures: BTreeMap<VertexId, Vec<Letter>> = BTreeMap::new();
        // target of the edge before j_lo, on the y-axis
        let mut point = (0i64, -(j_lo - 1));
        for j in j_lo..=j_hi {
            let letter = word.letter_at(j);
            let source = point;
            let target = match letter {
                Letter::East => (point.0 + 1, point.1),
                Letter::South => (point.0, point.1 - 1),
            };
            point = target;
            let sv = params.vertex_of_point(source.0, source.1);
            if sv.level <= k {
                departures.entry(sv).or_default().push(letter);
            }
            let tv = params.vertex_of_point(target.0, target.1);
            if tv.level <= k {
                arrivals.entry(tv).or_default().push(letter);
            }
        }
        debug_assert_eq!(point, (j_hi, 0));
        Ok(Tour {
            params,
            k,
            arrivals,
            departures,
        })
    }

    pub fn params(&self) -> SlopeParams {
        self.params
    }

    pub fn window_bound(&self) -> i64 {
        self.k
    }

    pub fn arrivals(&self) -> &BTreeMap<VertexId, Vec<Letter>> {
        &self.arrivals
    }

    pub fn departures(&self) -> &BTreeMap<VertexId, Vec<Letter>> {
        &self.departures
    }

    /// Arrival word at any vertex, falling back to the forced generic word
    /// above the window.
    pub fn arrival_word(&self, v: VertexId) -> Vec<Letter> {
        if v.level <= self.k {
            self.arrivals.get(&v).cloned().unwrap_or_default()
        } else {
            self.params.generic_arrival(v)
        }
    }

    /// Root of the window circuit: `(k, [0])`.
    pub fn root(&self) -> VertexId {
        VertexId::new(self.k, 0)
    }

    /// Total arrival-word and departure-word inversions. Words above the
    /// window are south-then-east and never invert, so the stored window is
    /// enough.
    pub fn crit_totals(&self) -> (u64, u64) {
        let inv = |words: &BTreeMap<VertexId, Vec<Letter>>| {
            words
                .values()
                .map(|w| {
                    let mut easts = 0u64;
                    let mut inv = 0u64;
                    for l in w {
                        match l {
                            Letter::East => easts += 1,
                            Letter::South => inv += easts,
                        }
                    }
                    inv
                })
                .sum()
        };
        (inv(&self.arrivals), inv(&self.departures))
    }

    pub fn multigraph(&self) -> Multigraph {
        let mut counts: BTreeMap<VertexId, DirectionCounts> = BTreeMap::new();
        for (&v, word) in &self.arrivals {
            let entry = counts.entry(v).or_default();
            for l in word {
                match l {
                    Letter::East => entry.e_in += 1,
                    Letter::South => entry.s_in += 1,
                }
            }
        }
        for (&v, word) in &self.departures {
            let entry = counts.entry(v).or_default();
            for l in word {
                match l {
                    Letter::East => entry.e_out += 1,
                    Letter::South => entry.s_out += 1,
                }
            }
        }
        Multigraph {
            params: self.params,
            k: self.k,
            counts,
        }
    }
}

/// Canonical serialization of a stored window: one row per populated
/// vertex. Partitions built at a common window bound have equal multigraphs
/// exactly when their keys agree.
pub type GraphKey = Vec<(i64, u32, u32, u32, u32, u32)>;

/// Edge-direction counts at one vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DirectionCounts {
    pub e_in: u32,
    pub s_in: u32,
    pub e_out: u32,
    pub s_out: u32,
}

impl DirectionCounts {
    pub fn in_degree(&self) -> u32 {
        self.e_in + self.s_in
    }

    pub fn out_degree(&self) -> u32 {
        self.e_out + self.s_out
    }
}

/// The tour with letter order forgotten: per-vertex direction counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    params: SlopeParams,
    k: i64,
    counts: BTreeMap<VertexId, DirectionCounts>,
}

impl Multigraph {
    pub fn params(&self) -> SlopeParams {
        self.params
    }

    pub fn window_bound(&self) -> i64 {
        self.k
    }

    pub fn stored(&self) -> &BTreeMap<VertexId, DirectionCounts> {
        &self.counts
    }

    /// Counts at any vertex; above the window the axes force them.
    pub fn count(&self, v: VertexId) -> DirectionCounts {
        if v.level <= self.k {
            self.counts.get(&v).copied().unwrap_or_default()
        } else {
            let y = self.params.on_y_ray(v);
            let x = self.params.on_x_ray(v);
            DirectionCounts {
                e_in: x as u32,
                s_in: y as u32,
                e_out: x as u32,
                s_out: y as u32,
            }
        }
    }

    /// Stored vertex levels never exceed `k`; equality must compare the
    /// common refinement, so both graphs are read back through `count`.
    pub fn equal(&self, other: &Multigraph) -> Result<bool> {
        if self.params != other.params {
            return Err(Error::SlopeMismatch);
        }
        let all: Vec<VertexId> = self
            .counts
            .keys()
            .chain(other.counts.keys())
            .copied()
            .collect();
        Ok(all.into_iter().all(|v| self.count(v) == other.count(v)))
    }

    /// Canonical serialization of the stored window, used to group
    /// partitions built at a common window bound.
    pub fn key(&self) -> GraphKey {
        self.counts
            .iter()
            .filter(|(_, c)| c.in_degree() + c.out_degree() > 0)
            .map(|(v, c)| (v.level, v.residue, c.e_in, c.s_in, c.e_out, c.s_out))
            .collect()
    }

    /// DOT rendering of the stored window; parallel edges are drawn once per
    /// copy.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let mut out = String::from("digraph boundary_tour {\n  rankdir=LR;\n");
        for (v, c) in &self.counts {
            let _ = writeln!(
                out,
                "  \"{v}\" [label=\"{v}\\nin E{} S{} / out E{} S{}\"];",
                c.e_in, c.s_in, c.e_out, c.s_out
            );
        }
        let (r, s) = (self.params.r as i64, self.params.s as i64);
        let c = self.params.c;
        for (v, counts) in &self.counts {
            let east_to = VertexId::new(v.level + s, (v.residue + 1) % c);
            for _ in 0..counts.e_out {
                let _ = writeln!(out, "  \"{v}\" -> \"{east_to}\" [label=\"E\"];");
            }
            let south_to = VertexId::new(v.level - r, (v.residue + 1) % c);
            for _ in 0..counts.s_out {
                let _ = writeln!(
                    out,
                    "  \"{v}\" -> \"{south_to}\" [label=\"S\", style=dashed];"
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The staircase of all boxes whose top-right corner `(x, y)` satisfies
/// `s*x + r*y <= k`: row `i` (1-based) has `floor((k - r*i)/s)` boxes.
pub fn lambda_rsk(r: u64, s: u64, k: i64) -> Partition {
    assert!(r >= 1 && s >= 1 && k >= 1);
    let mut parts = Vec::new();
    let mut row = 1i64;
    loop {
        let len = (k - r as i64 * row).div_euclid(s as i64);
        if len <= 0 {
            break;
        }
        parts.push(len as u32);
        row += 1;
    }
    Partition::new(parts).expect("staircase rows weakly decrease")
}

/// Bottom-left corners minimal in the successor order: smallest level
/// `s*x + r*y`, and within a level and residue class the smallest `x - y`.
pub fn minimal_corners(lambda: &Partition, params: SlopeParams) -> Vec<(u32, u32)> {
    let corners = lambda.addable_corners();
    let level =
        |&(x, y): &(u32, u32)| params.s as i64 * x as i64 + params.r as i64 * y as i64;
    let min_level = corners.iter().map(level).min().expect("always addable");
    let mut best: BTreeMap<u32, (i64, (u32, u32))> = BTreeMap::new();
    for corner in corners {
        if level(&corner) != min_level {
            continue;
        }
        let diag = corner.0 as i64 - corner.1 as i64;
        let residue = params.residue_of(diag);
        match best.get(&residue) {
            Some(&(d, _)) if d <= diag => {}
            _ => {
                best.insert(residue, (diag, corner));
            }
        }
    }
    best.into_values().map(|(_, corner)| corner).collect()
}

/// All successors of `lambda`: one box added at each minimal corner.
pub fn successors(lambda: &Partition, params: SlopeParams) -> Vec<Partition> {
    minimal_corners(lambda, params)
        .into_iter()
        .map(|(x, y)| lambda.with_box_at(x, y))
        .collect()
}

impl Multigraph {
    /// The successor multigraph changing from the lowest south-arrival
    /// vertex (smallest residue on a tie), together with that change vertex.
    pub fn successor(&self) -> Result<(Multigraph, VertexId)> {
        let change = self
            .counts
            .iter()
            .find(|(_, c)| c.s_in > 0)
            .map(|(&v, _)| v)
            .ok_or(Error::NoSouthArrival)?;
        Ok((self.successor_at(change), change))
    }

    /// Apply the rewiring for a change at `(v, [i])`: the south edge into it
    /// and the east edge out of it are replaced by an east then south pair
    /// routed over `(v + r + s, [i])`.
    pub fn successor_at(&self, change: VertexId) -> Multigraph {
        let (r, s) = (self.params.r as i64, self.params.s as i64);
        let c = self.params.c;
        let mut counts = self.counts.clone();
        // the rewiring can spill past the window, so widen it first,
        // materializing the generic counts that were implicit
        let k = self.k.max(change.level + r + s);
        for level in self.k + 1..=k {
            for residue in 0..c {
                let v = VertexId::new(level, residue);
                let generic = self.count(v);
                if generic.in_degree() + generic.out_degree() > 0 {
                    counts.insert(v, generic);
                }
            }
        }
        let prev = (c + change.residue - 1) % c;
        let next = (change.residue + 1) % c;
        let nw = VertexId::new(change.level + r, prev);
        let mid = VertexId::new(change.level + r + s, change.residue);
        let se = VertexId::new(change.level + s, next);
        {
            let e = counts.entry(change).or_default();
            e.s_in -= 1;
            e.e_out -= 1;
        }
        {
            let e = counts.entry(nw).or_default();
            e.s_out -= 1;
            e.e_out += 1;
        }
        {
            let e = counts.entry(mid).or_default();
            e.e_in += 1;
            e.s_out += 1;
        }
        {
            let e = counts.entry(se).or_default();
            e.e_in -= 1;
            e.s_in += 1;
        }
        Multigraph {
            params: self.params,
            k,
            counts,
        }
    }

    /// Change in the strictly-between-box count when taking the successor at
    /// `(l, [i])`: the east out/in imbalance over levels `l+1 .. l+r+s-1` on
    /// the same residue. When `c = 1` the added box itself is a unit hook
    /// strictly between the critical fractions — its foot and hand are both
    /// new edges, invisible to the window counts — so one more is gained.
    pub fn delta_mid(&self, change: VertexId) -> i64 {
        let (r, s) = (self.params.r as i64, self.params.s as i64);
        let window: i64 = (change.level + 1..change.level + r + s)
            .map(|w| {
                let counts = self.count(VertexId::new(w, change.residue));
                counts.e_out as i64 - counts.e_in as i64
            })
            .sum();
        window + i64::from(self.params.c == 1)
    }

    /// Change in `crit_plus + crit_minus` for the successor at `(l, [i])`:
    /// `S_in(l,[i]) - 1 + (S_in - S_out)(l+r+s,[i])`.
    pub fn delta_crit_total(&self, change: VertexId) -> i64 {
        let (r, s) = (self.params.r as i64, self.params.s as i64);
        let at_change = self.count(change);
        let above = self.count(VertexId::new(change.level + r + s, change.residue));
        at_change.s_in as i64 - 1 + above.s_in as i64 - above.s_out as i64
    }
}

///`crit_plus + crit_minus` read off the window counts alone:
/// `sum over v <= k of E_in*S_in(v,[j]) - floor(k1(r+s)/lcm(c,r+s))` with
/// `k1 = k/(r*s)`.
pub fn crit_total_formula(tour: &Tour) -> Result<i64> {
    let params = tour.params();
    let rs = (params.r * params.s) as i64;
    if tour.window_bound() % rs != 0 || (tour.window_bound() / rs) % params.c as i64 != 0 {
        return Err(Error::WindowNotCanonical {
            k: tour.window_bound(),
        });
    }
    let k1 = tour.window_bound() / rs;
    let graph = tour.multigraph();
    let products: i64 = graph
        .stored()
        .values()
        .map(|c| c.e_in as i64 * c.s_in as i64)
        .sum();
    let correction = (k1 * (params.r + params.s) as i64).div_euclid(params.period());
    Ok(products - correction)
}
