//! Verification campaigns: exhaustive identity checks over parameter grids,
//! streamed as one record per cell.

use std::time::Instant;

use num_bigint::BigInt;
use serde_json::{json, Value};

use corespan::abacus::{core, enumerate_class, glaisher_merge, glaisher_split, in_kc, is_core};
use corespan::involution::{classify, first_arrival_tree, involute, VertexClass};
use corespan::multigraph::{SlopeParams, Tour, VertexId};
use corespan::partition::{partitions_of, Letter};
use corespan::series::{bfn_series, geometric_product, rhs_series, BivariateSeries};
use corespan::statistics::{
    crit_minus, crit_plus, critical_rationals, divisible_arm_legs, h_minus, h_plus, mid,
    repeat_blocks, Slope,
};
use corespan::Partition;

use crate::report::{CellRecord, Checker, VerifyReport};

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub jobs: usize,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            jobs: 1,
            timing: true,
        }
    }
}

/// Map cells to records on up to `jobs` threads. Workers pull cells off a
/// shared cursor, but results come back in cell order, so the emitted report
/// is independent of scheduling.
fn run_parallel<T: Send, R: Send>(
    items: Vec<T>,
    jobs: usize,
    work: impl Fn(T) -> R + Sync,
) -> Vec<R> {
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;

    let jobs = jobs.max(1);
    if jobs == 1 || items.len() <= 1 {
        return items.into_iter().map(work).collect();
    }
    let slots: Vec<Mutex<Option<T>>> = items.into_iter().map(|i| Mutex::new(Some(i))).collect();
    let results: Vec<Mutex<Option<R>>> =
        std::iter::repeat_with(|| Mutex::new(None)).take(slots.len()).collect();
    let cursor = AtomicUsize::new(0);
    let work = &work;
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(slots.len()) {
            scope.spawn(|| loop {
                let index = cursor.fetch_add(1, Ordering::Relaxed);
                if index >= slots.len() {
                    break;
                }
                let item = slots[index]
                    .lock()
                    .expect("no panics hold the lock")
                    .take()
                    .expect("each index is claimed once");
                let record = work(item);
                *results[index].lock().expect("no panics hold the lock") = Some(record);
            });
        }
    });
    results
        .into_iter()
        .map(|r| r.into_inner().expect("lock poisoned").expect("slot processed"))
        .collect()
}

fn finish(
    campaign: &str,
    params: Value,
    records: Vec<CellRecord>,
    started: Instant,
    opts: Options,
    sink: &mut dyn FnMut(&CellRecord),
) -> VerifyReport {
    for record in &records {
        sink(record);
    }
    let wall = opts.timing.then(|| started.elapsed().as_millis());
    VerifyReport::from_records(campaign, params, &records, wall)
}

fn slope_params(x: Slope, c: u32) -> SlopeParams {
    SlopeParams::new(x.numerator(), x.denominator(), c)
}

/// The distribution of `h_plus` equals that of `h_minus` on every class, at
/// every critical rational, witnessed both by counting and by the involution;
/// between consecutive critical rationals the two statistics agree boxwise.
pub fn equidistribution(
    nmax: u64,
    c_list: &[u32],
    opts: Options,
    sink: &mut dyn FnMut(&CellRecord),
) -> VerifyReport {
    let started = Instant::now();
    let mut cells = Vec::new();
    for &c in c_list {
        for n in 0..=nmax {
            let mut classes: std::collections::BTreeMap<Partition, Vec<Partition>> =
                Default::default();
            for lambda in partitions_of(n) {
                classes.entry(core(&lambda, c)).or_default().push(lambda);
            }
            for (mu, members) in classes {
                cells.push((n, c, mu, members));
            }
        }
    }
    let records = run_parallel(cells, opts.jobs, |(n, c, mu, members)| {
        let mut checker = Checker::default();
        let criticals = critical_rationals(&members, c);
        for &x in &criticals {
            if !x.is_positive_finite() {
                continue;
            }
            let plus = distribution_counts(&members, x, c, true);
            let minus = distribution_counts(&members, x, c, false);
            checker.check(plus == minus, || {
                json!({"kind": "distribution", "n": n, "c": c, "core": mu, "x": x.to_string(),
                       "h_plus": plus, "h_minus": minus})
            });
            let params = slope_params(x, c);
            for lambda in &members {
                let image = involute(lambda, params);
                let witness_ok = involute(&image, params) == *lambda
                    && core(&image, c) == mu
                    && image.size() == lambda.size()
                    && h_plus(lambda, x, c) == h_minus(&image, x, c)
                    && h_minus(lambda, x, c) == h_plus(&image, x, c);
                checker.check(witness_ok, || {
                    json!({"kind": "involution-witness", "n": n, "c": c, "core": mu,
                           "x": x.to_string(), "lambda": lambda, "image": image})
                });
            }
        }
        for pair in criticals.windows(2) {
            let inside = Slope::mediant(pair[0], pair[1]);
            for lambda in &members {
                let agree = crit_plus(lambda, inside, c) == 0
                    && crit_minus(lambda, inside, c) == 0
                    && h_plus(lambda, inside, c) == h_minus(lambda, inside, c);
                checker.check(agree, || {
                    json!({"kind": "interior", "n": n, "c": c, "core": mu,
                           "x": inside.to_string(), "lambda": lambda})
                });
            }
        }
        checker.into_record("equidistribution", json!({"n": n, "c": c, "core": mu}))
    });
    finish(
        "equidistribution",
        json!({"nmax": nmax, "c": c_list}),
        records,
        started,
        opts,
        sink,
    )
}

fn distribution_counts(members: &[Partition], x: Slope, c: u32, plus: bool) -> Vec<u64> {
    let mut coeffs = Vec::new();
    for lambda in members {
        let v = if plus {
            h_plus(lambda, x, c)
        } else {
            h_minus(lambda, x, c)
        } as usize;
        if coeffs.len() <= v {
            coeffs.resize(v + 1, 0);
        }
        coeffs[v] += 1;
    }
    coeffs
}

/// One class member reduced to what the series comparisons need.
struct MemberData {
    size: usize,
    pairs: Vec<(u32, u32)>,
}

fn h_from_pairs(pairs: &[(u32, u32)], x: Slope, plus: bool) -> usize {
    pairs
        .iter()
        .filter(|&&(a, l)| {
            let lower = Slope::new(a as u64, l as u64 + 1);
            let upper = Slope::new(a as u64 + 1, l as u64);
            if plus {
                lower <= x && x < upper
            } else {
                lower < x && x <= upper
            }
        })
        .count()
}

/// Both hook statistics distribute over the class as
/// `q^|mu| prod (1-q^(ic))^-(c-1) prod (1-q^(jc) t)^-1`, at every critical
/// rational of the class up to the truncation.
pub fn main_theorem(
    mu: &Partition,
    c: u32,
    nq: usize,
    nt: usize,
    opts: Options,
    sink: &mut dyn FnMut(&CellRecord),
) -> corespan::Result<VerifyReport> {
    let started = Instant::now();
    let rhs = rhs_series(mu, c, nq, nt)?;
    let mut members: Vec<MemberData> = Vec::new();
    let mut all: Vec<Partition> = Vec::new();
    let mut n = mu.size();
    while n as usize <= nq {
        for lambda in enumerate_class(mu, c, n)? {
            members.push(MemberData {
                size: n as usize,
                pairs: divisible_arm_legs(&lambda, c),
            });
            all.push(lambda);
        }
        n += u64::from(c);
    }
    let criticals = critical_rationals(&all, c);
    drop(all);

    let members = &members;
    let rhs = &rhs;
    let records = run_parallel(criticals, opts.jobs, |x| {
        let mut checker = Checker::default();
        let compare = |plus: bool, checker: &mut Checker| {
            let mut table = vec![vec![0u64; nt + 1]; nq + 1];
            for m in members {
                let v = h_from_pairs(&m.pairs, x, plus);
                if v <= nt {
                    table[m.size][v] += 1;
                }
            }
            let mismatch = (0..=nq)
                .flat_map(|a| (0..=nt).map(move |b| (a, b)))
                .find(|&(a, b)| rhs.coeff(a, b) != &BigInt::from(table[a][b]));
            checker.check(mismatch.is_none(), || {
                let (a, b) = mismatch.unwrap();
                json!({"x": x.to_string(), "sign": if plus {"+"} else {"-"},
                       "q": a, "t": b,
                       "enumerated": table[a][b].to_string(),
                       "product": rhs.coeff(a, b).to_string()})
            });
        };
        if !x.is_infinite() {
            compare(true, &mut checker);
        }
        if !x.is_zero() {
            compare(false, &mut checker);
        }
        checker.into_record("main-theorem", json!({"x": x.to_string()}))
    });
    Ok(finish(
        "main-theorem",
        json!({"core": mu, "c": c, "qmax": nq, "tmax": nt}),
        records,
        started,
        opts,
        sink,
    ))
}

/// When `r + s` divides `c`, summing `t^crit_plus` over all partitions gives
/// `prod_{c does not divide i} (1-q^i)^-1 prod (1-q^(ic) t)^-1`.
pub fn bfn(
    r: u64,
    s: u64,
    c: u32,
    nq: usize,
    opts: Options,
    sink: &mut dyn FnMut(&CellRecord),
) -> Result<VerifyReport, String> {
    if num_integer::Integer::gcd(&r, &s) != 1 {
        return Err(format!("r={r} and s={s} must be coprime"));
    }
    if u64::from(c) % (r + s) != 0 {
        return Err(format!("r + s = {} must divide c = {c}", r + s));
    }
    let started = Instant::now();
    let x = Slope::new(r, s);
    let series = bfn_series(c, nq, nq).expect("positive modulus");
    let series = &series;
    let records = run_parallel((0..=nq as u64).collect(), opts.jobs, |n| {
        let mut checker = Checker::default();
        let mut slice = vec![0u64; nq + 1];
        for lambda in partitions_of(n) {
            slice[crit_plus(&lambda, x, c) as usize] += 1;
        }
        let mismatch =
            (0..=nq).find(|&b| series.coeff(n as usize, b) != &BigInt::from(slice[b]));
        checker.check(mismatch.is_none(), || {
            let b = mismatch.unwrap();
            json!({"n": n, "t": b, "enumerated": slice[b].to_string(),
                   "product": series.coeff(n as usize, b).to_string()})
        });
        checker.into_record("bfn", json!({"n": n}))
    });
    Ok(finish(
        "bfn",
        json!({"r": r, "s": s, "c": c, "qmax": nq}),
        records,
        started,
        opts,
        sink,
    ))
}

/// Count how the tour's first-arrival-tree distances step along the window
/// circuit; every step must be `1`, `1 + period`, or `1 - period` according
/// to the vertex class and whether the arriving edge copies a tree edge.
fn distance_step_violations(lambda: &Partition, params: SlopeParams) -> u64 {
    let tour = Tour::build(lambda, params, None).expect("canonical window");
    let tree = first_arrival_tree(&tour).expect("tours span");
    let classes = classify(&tour, &tree);
    let period = params.period();
    let k = tour.window_bound();
    let (r, s) = (params.r as i64, params.s as i64);
    let word = lambda.boundary_word();
    let mut violations = 0;
    let mut point = (0i64, k / r);
    let mut prev = 0i64;
    for j in (1 - k / r)..=(k / s) {
        let letter = word.letter_at(j);
        point = match letter {
            Letter::East => (point.0 + 1, point.1),
            Letter::South => (point.0, point.1 - 1),
        };
        let v = VertexId::new(
            s * point.0 + r * point.1,
            (point.0 - point.1).rem_euclid(params.c as i64) as u32,
        );
        let d = tree.distance(v).expect("window vertex") as i64;
        let delta = d - prev;
        let is_copy = tree.parent(v).is_some_and(|(_, dir)| dir == letter);
        let expected = match classes[&v] {
            _ if is_copy => 1,
            VertexClass::Switch => 1,
            VertexClass::Eastern => 1 + period,
            VertexClass::Southern => 1 - period,
        };
        if delta != expected {
            violations += 1;
        }
        prev = d;
    }
    violations
}

/// The multigraph-difference formulas predict how `mid` and
/// `crit_plus + crit_minus` change under every successor, and tree distances
/// step as classified.
pub fn successor_lemmas(
    nmax: u64,
    r: u64,
    s: u64,
    c: u32,
    opts: Options,
    sink: &mut dyn FnMut(&CellRecord),
) -> VerifyReport {
    let started = Instant::now();
    let params = SlopeParams::new(r, s, c);
    let x = Slope::new(r, s);
    let records = run_parallel((0..nmax).collect(), opts.jobs, |n| {
        let mut checker = Checker::default();
        for lambda in partitions_of(n) {
            let graph = Tour::build(&lambda, params, None)
                .expect("canonical window")
                .multigraph();
            for succ in corespan::multigraph::successors(&lambda, params) {
                let added_row = (0..=lambda.len())
                    .find(|&row| succ.part(row) != lambda.part(row))
                    .expect("successor adds a box");
                let (bx, by) = (lambda.part(added_row) as i64, added_row as i64);
                let change = VertexId::new(
                    s as i64 * bx + r as i64 * by,
                    (bx - by).rem_euclid(c as i64) as u32,
                );
                let mid_delta = mid(&succ, x, c) as i64 - mid(&lambda, x, c) as i64;
                checker.check(graph.delta_mid(change) == mid_delta, || {
                    json!({"kind": "mid-delta", "lambda": lambda, "successor": succ,
                           "formula": graph.delta_mid(change), "direct": mid_delta})
                });
                let crit_delta = (crit_plus(&succ, x, c) + crit_minus(&succ, x, c)) as i64
                    - (crit_plus(&lambda, x, c) + crit_minus(&lambda, x, c)) as i64;
                checker.check(graph.delta_crit_total(change) == crit_delta, || {
                    json!({"kind": "crit-delta", "lambda": lambda, "successor": succ,
                           "formula": graph.delta_crit_total(change), "direct": crit_delta})
                });
            }
            let bad_steps = distance_step_violations(&lambda, params);
            checker.check(bad_steps == 0, || {
                json!({"kind": "distance-steps", "lambda": lambda, "violations": bad_steps})
            });
        }
        checker.into_record("successor-lemmas", json!({"n": n}))
    });
    finish(
        "successor-lemmas",
        json!({"nmax": nmax, "r": r, "s": s, "c": c}),
        records,
        started,
        opts,
        sink,
    )
}

/// The multiplicity split is a size-respecting, core-preserving bijection,
/// and the repeat-free part of each class is counted by
/// `q^|mu| prod (1-q^(mc))^-(c-1)`.
pub fn glaisher(
    nmax: u64,
    c: u32,
    nq: usize,
    opts: Options,
    sink: &mut dyn FnMut(&CellRecord),
) -> VerifyReport {
    let started = Instant::now();
    let mut records = run_parallel((0..=nmax).collect(), opts.jobs, |n| {
        let mut checker = Checker::default();
        for lambda in partitions_of(n) {
            let (xi, nu) = glaisher_split(&lambda, c);
            let ok = in_kc(&nu, c)
                && lambda.size() == u64::from(c) * xi.size() + nu.size()
                && core(&nu, c) == core(&lambda, c)
                && glaisher_merge(&xi, &nu, c).expect("nu is repeat-free") == lambda;
            checker.check(ok, || {
                json!({"kind": "split", "lambda": lambda, "xi": xi, "nu": nu})
            });
        }
        checker.into_record("glaisher", json!({"n": n}))
    });
    // the repeat-free slice of each class against its closed form
    let mut checker = Checker::default();
    for m in 0..=6u64.min(nq as u64) {
        for mu in partitions_of(m).into_iter().filter(|mu| is_core(mu, c)) {
            let closed = BivariateSeries::monomial(mu.size() as usize, 0, nq, 0).mul(
                &geometric_product(c as usize, 0, c as usize - 1, nq, 0)
                    .expect("positive modulus"),
            );
            let mut n = mu.size();
            while n as usize <= nq {
                let count = enumerate_class(&mu, c, n)
                    .expect("mu is a core")
                    .into_iter()
                    .filter(|lambda| in_kc(lambda, c))
                    .count();
                checker.check(
                    closed.coeff(n as usize, 0) == &BigInt::from(count as u64),
                    || {
                        json!({"kind": "repeat-free-series", "core": mu, "n": n,
                               "enumerated": count,
                               "product": closed.coeff(n as usize, 0).to_string()})
                    },
                );
                n += u64::from(c);
            }
        }
    }
    records.push(checker.into_record("glaisher", json!({"kind": "repeat-free-series"})));
    finish(
        "glaisher",
        json!({"nmax": nmax, "c": c, "qmax": nq}),
        records,
        started,
        opts,
        sink,
    )
}

/// Replay the worked size-7 class: its five members, its critical rationals,
/// the three involutions between neighbouring critical slopes, the composite
/// fixed point, and the resulting distribution identity.
pub fn extended_example(opts: Options, sink: &mut dyn FnMut(&CellRecord)) -> VerifyReport {
    let started = Instant::now();
    let p = |parts: &[u32]| Partition::new(parts.to_vec()).unwrap();
    let mu = p(&[2, 1]);
    let c = 2u32;
    let mut records = Vec::new();

    let class = enumerate_class(&mu, c, 7).expect("(2,1) is a 2-core");
    let expected = [
        p(&[6, 1]),
        p(&[4, 3]),
        p(&[4, 1, 1, 1]),
        p(&[2, 2, 2, 1]),
        p(&[2, 1, 1, 1, 1, 1]),
    ];
    let mut checker = Checker::default();
    let mut sorted: Vec<Partition> = class.clone();
    sorted.sort();
    let mut expected_sorted = expected.to_vec();
    expected_sorted.sort();
    checker.check(sorted == expected_sorted, || {
        json!({"kind": "class", "got": sorted})
    });
    records.push(checker.into_record("example-extended", json!({"stage": "class"})));

    let mut checker = Checker::default();
    let criticals = critical_rationals(&class, c);
    let want: Vec<Slope> = ["0", "1/3", "1", "3", "inf"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    checker.check(criticals == want, || {
        json!({"kind": "critical-rationals",
               "got": criticals.iter().map(Slope::to_string).collect::<Vec<_>>()})
    });
    records.push(checker.into_record("example-extended", json!({"stage": "critical-rationals"})));

    let mut checker = Checker::default();
    let steps: [(u64, u64, Partition, Partition); 3] = [
        (3, 1, p(&[6, 1]), p(&[4, 3])),
        (1, 1, p(&[4, 3]), p(&[2, 2, 2, 1])),
        (1, 3, p(&[2, 2, 2, 1]), p(&[2, 1, 1, 1, 1, 1])),
    ];
    for (r, s, from, to) in &steps {
        let got = involute(from, SlopeParams::new(*r, *s, c));
        checker.check(got == *to, || {
            json!({"kind": "involution", "r": r, "s": s, "from": from, "to": got,
                   "expected": to})
        });
    }
    records.push(checker.into_record("example-extended", json!({"stage": "involutions"})));

    let composite = |lambda: &Partition| {
        let step1 = involute(lambda, SlopeParams::new(3, 1, c));
        let step2 = involute(&step1, SlopeParams::new(1, 1, c));
        involute(&step2, SlopeParams::new(1, 3, c))
    };
    let mut checker = Checker::default();
    let mapped: Vec<(Partition, Partition)> =
        expected.iter().map(|l| (l.clone(), composite(l))).collect();
    let want_map = [
        (p(&[6, 1]), p(&[2, 1, 1, 1, 1, 1])),
        (p(&[4, 3]), p(&[2, 2, 2, 1])),
        (p(&[4, 1, 1, 1]), p(&[4, 1, 1, 1])),
        (p(&[2, 2, 2, 1]), p(&[4, 3])),
        (p(&[2, 1, 1, 1, 1, 1]), p(&[6, 1])),
    ];
    for ((from, got), (_, want)) in mapped.iter().zip(&want_map) {
        checker.check(got == want, || {
            json!({"kind": "composite", "from": from, "got": got, "expected": want})
        });
    }
    for (from, got) in &mapped {
        checker.check(&composite(got) == from, || {
            json!({"kind": "composite-involution", "from": from})
        });
    }
    records.push(checker.into_record("example-extended", json!({"stage": "composite"})));

    let mut checker = Checker::default();
    let x4 = Slope::new(4, 1);
    checker.check(
        h_plus(&p(&[6, 1]), x4, c) == 2 && repeat_blocks(&p(&[2, 1, 1, 1, 1, 1]), c) == 2,
        || json!({"kind": "pinned-values"}),
    );
    let plus = distribution_counts(&class, x4, c, true);
    let blocks: Vec<u64> = {
        let mut coeffs = Vec::new();
        for lambda in &class {
            let v = repeat_blocks(lambda, c) as usize;
            if coeffs.len() <= v {
                coeffs.resize(v + 1, 0);
            }
            coeffs[v] += 1;
        }
        coeffs
    };
    checker.check(plus == vec![2, 2, 1] && blocks == vec![2, 2, 1], || {
        json!({"kind": "distribution", "h_plus_at_4": plus, "repeat_blocks": blocks})
    });
    records.push(checker.into_record("example-extended", json!({"stage": "distribution"})));

    finish(
        "example-extended",
        json!({"core": mu, "c": c, "n": 7}),
        records,
        started,
        opts,
        sink,
    )
}
