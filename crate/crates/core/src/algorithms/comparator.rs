//! Comparing an index `j` with the hidden position `i` through queries to
//! the bits of `i`: the most significant position where `j` and `i` differ
//! decides `j ≤ i`.
//!
//! Positions are numbered from the most significant bit (0) and padded to a
//! power of two `S`; padded positions never differ.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::simcore::{BitOracle, Gate, NetworkBuilder, Predicate, QueryNetwork, Register, SparseState};

/// Growth factor of the iteration bound after an unsuccessful round.
pub const GROWTH: f64 = 1.2;

/// `(qubits, S)` of the position register for `n` bits.
pub fn position_layout(n: usize) -> (usize, usize) {
    let s = n.next_power_of_two().max(2);
    (s.trailing_zeros() as usize, s)
}

/// Bit `p` of the `n`-bit value `j`, most significant first.
pub fn msb_bit(j: u64, n: usize, p: usize) -> bool {
    p < n && (j >> (n - 1 - p)) & 1 == 1
}

/// Mask (bit `p` = position `p`) of the positions where `j` and `y` differ.
pub fn difference_set(j: u64, y: &BitOracle) -> u64 {
    let n = y.len();
    (0..n)
        .filter(|&p| msb_bit(j, n, p) != y.bit(p))
        .map(|p| 1u64 << p)
        .sum()
}

pub fn leftmost_difference(j: u64, y: &BitOracle) -> Option<usize> {
    let d = difference_set(j, y);
    (d != 0).then(|| d.trailing_zeros() as usize)
}

/// `j ≤ i` read off the leftmost difference: equal, or `j` has 0 there.
pub fn leq_from_difference(j: u64, n: usize, position: Option<usize>) -> bool {
    position.map_or(true, |p| !msb_bit(j, n, p))
}

/// `⌈22.5√S + 1.4 log₂²S⌉`.
pub fn default_budget(n: usize) -> usize {
    let (m, s) = position_layout(n);
    (22.5 * (s as f64).sqrt() + 1.4 * (m * m) as f64).ceil() as usize
}

/// Success probability of `k` iterations with `marked` of `s` positions marked.
fn round_success(s: usize, marked: u32, k: usize) -> f64 {
    if marked == 0 {
        return 0.0;
    }
    let theta = (marked as f64 / s as f64).sqrt().asin();
    ((2 * k + 1) as f64 * theta).sin().powi(2)
}

/// Iteration bound after `step` unsuccessful rounds, and the step at which
/// it saturates at `√S`.
fn iteration_bound(step: usize, s: usize) -> f64 {
    GROWTH.powi(step as i32).min((s as f64).sqrt())
}

fn saturation_step(s: usize) -> usize {
    (0..).find(|&k| GROWTH.powi(k as i32) >= (s as f64).sqrt()).unwrap()
}

fn eligible(diff: u64, threshold: usize) -> u64 {
    if threshold >= 64 {
        diff
    } else {
        diff & ((1u64 << threshold) - 1)
    }
}

/// Result of [`find_leftmost_difference`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeftmostDifference {
    pub position: Option<usize>,
    pub queries_used: usize,
    pub rounds: usize,
    /// True when the search stopped because the next round would overrun the budget.
    pub budget_exhausted: bool,
}

/// Prebuilt round networks of the measured search.
///
/// Qubit 0 is the scratch answer, then the position register `P`, then a
/// register holding `j`. A round with threshold `b` and `k` iterations
/// prepares the uniform superposition over `P` and applies `k` times:
/// query, phase flip where `P < b` and `Y_P ≠ bit_P(j)`, query, diffusion.
#[derive(Clone, Debug)]
pub struct DifferenceSearch {
    n: usize,
    s: usize,
    positions: Register,
    j: Register,
    /// `rounds[threshold][k]`
    rounds: Vec<Vec<QueryNetwork>>,
}

impl DifferenceSearch {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 32 {
            return Err(domain(format!("comparison on {n} bits")));
        }
        let (m, s) = position_layout(n);
        let kmax = (s as f64).sqrt().ceil() as usize;
        let mut rounds = Vec::with_capacity(s + 1);
        let mut regs = None;
        for threshold in 0..=s {
            let mut row = Vec::with_capacity(kmax);
            for k in 0..kmax {
                let mut b = NetworkBuilder::new();
                let a = b.qubit("scratch");
                let p = b.alloc("P", m);
                let j = b.alloc("J", n);
                b.h_all(&p);
                let (pc, jc) = (p.clone(), j.clone());
                let marked = Predicate::new("marked", move |basis| {
                    let pos = pc.value(basis) as usize;
                    pos < n && pos < threshold && (basis >> a & 1 == 1) != msb_bit(jc.value(basis), n, pos)
                });
                for _ in 0..k {
                    b.query(&p, a, Some("mark"));
                    b.gate(Gate::PhaseIf(marked.clone()));
                    b.query(&p, a, Some("unmark"));
                    b.gate(Gate::Diffusion(p.qubits.clone()));
                }
                regs = Some((p, j));
                row.push(b.build(a)?);
            }
            rounds.push(row);
        }
        let (positions, j) = regs.unwrap();
        Ok(Self {
            n,
            s,
            positions,
            j,
            rounds,
        })
    }

    pub fn bits(&self) -> usize {
        self.n
    }

    /// Runs one round and measures the position register.
    fn sample_round<R: Rng>(&self, j: u64, y: &BitOracle, threshold: usize, k: usize, rng: &mut R) -> Result<usize> {
        let net = &self.rounds[threshold.min(self.s)][k];
        let start = SparseState::basis(net.num_qubits(), self.j.with_value(0, j))?;
        let out = net.apply_sparse(y, start)?;
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut last = 0;
        for &(basis, amp) in out.entries() {
            last = self.positions.value(basis) as usize;
            acc += amp.norm_sqr();
            if u < acc {
                return Ok(last);
            }
        }
        Ok(last)
    }

    /// Minimum finding over the difference set with a growing random
    /// iteration count; each round costs `2k` queries plus one to check the
    /// measured position.
    pub fn run<R: Rng>(&self, j: u64, y: &BitOracle, budget: usize, rng: &mut R) -> Result<LeftmostDifference> {
        if y.len() != self.n {
            return Err(domain(format!("Y has {} bits, expected {}", y.len(), self.n)));
        }
        let cap = saturation_step(self.s);
        let (mut best, mut step, mut used, mut rounds) = (None::<usize>, 0usize, 0usize, 0usize);
        loop {
            if best == Some(0) {
                return Ok(LeftmostDifference {
                    position: best,
                    queries_used: used,
                    rounds,
                    budget_exhausted: false,
                });
            }
            let kc = iteration_bound(step, self.s).ceil() as usize;
            let k = rng.gen_range(0..kc);
            if used + 2 * k + 1 > budget {
                return Ok(LeftmostDifference {
                    position: best,
                    queries_used: used,
                    rounds,
                    budget_exhausted: true,
                });
            }
            let threshold = best.unwrap_or(self.s);
            let p = self.sample_round(j, y, threshold, k, rng)?;
            used += 2 * k + 1;
            rounds += 1;
            if p < self.n && p < threshold && y.bit(p) != msb_bit(j, self.n, p) {
                best = Some(p);
                step = 0;
            } else {
                step = (step + 1).min(cap);
            }
        }
    }
}

/// Measured search for the leftmost position where `j` and `Y` differ.
pub fn find_leftmost_difference(j: u64, y: &BitOracle, budget: usize, seed: u64) -> Result<LeftmostDifference> {
    let search = DifferenceSearch::new(y.len())?;
    search.run(j, y, budget, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Exact output distribution of [`DifferenceSearch::run`] for the difference
/// set `diff`, computed by dynamic programming over (best, step, queries).
/// Entries are sorted with `None` first.
pub fn leftmost_difference_distribution(n: usize, diff: u64, budget: usize) -> Vec<(Option<usize>, f64)> {
    let (_, s) = position_layout(n);
    let cap = saturation_step(s);
    let mut out = vec![0.0; n + 1];
    // key: (best or n, step, used)
    let mut frontier: std::collections::BTreeMap<(usize, usize, usize), f64> = [((n, 0, 0), 1.0)].into();
    while let Some(((best, step, used), prob)) = frontier.pop_first() {
        if best == 0 {
            out[0] += prob;
            continue;
        }
        let kc = iteration_bound(step, s).ceil() as usize;
        let threshold = if best == n { s } else { best };
        let marked = eligible(diff, threshold);
        let mu = marked.count_ones();
        for k in 0..kc {
            let pk = prob / kc as f64;
            let cost = 2 * k + 1;
            if used + cost > budget {
                out[best] += pk;
                continue;
            }
            let ps = round_success(s, mu, k);
            for p in (0..n).filter(|&p| marked >> p & 1 == 1) {
                *frontier.entry((p, 0, used + cost)).or_default() += pk * ps / mu as f64;
            }
            if ps < 1.0 {
                *frontier.entry((best, (step + 1).min(cap), used + cost)).or_default() += pk * (1.0 - ps);
            }
        }
    }
    let mut dist = vec![(None, out[n])];
    dist.extend((0..n).map(|p| (Some(p), out[p])));
    dist
}

/// Exact error of the majority-free comparison `j ≤ i` through the measured search.
pub fn comparison_error(j: u64, y: &BitOracle, budget: usize) -> f64 {
    let n = y.len();
    let truth = j <= y.to_integer();
    leftmost_difference_distribution(n, difference_set(j, y), budget)
        .into_iter()
        .filter(|(pos, _)| leq_from_difference(j, n, *pos) != truth)
        .map(|(_, p)| p)
        .sum()
}

/// Smallest odd `r` with `exp(−2r(½ − e)²) ≤ target`.
pub fn majority_repetitions(error: f64, target: f64) -> Result<usize> {
    if !(0.0..0.5).contains(&error) {
        return Err(domain(format!("single-run error {error} is not below 1/2")));
    }
    if !(target > 0.0 && target < 1.0) {
        return Err(domain(format!("target error {target} outside (0, 1)")));
    }
    let gap = 0.5 - error;
    let r = ((1.0 / target).ln() / (2.0 * gap * gap)).ceil().max(1.0) as usize;
    Ok(if r % 2 == 0 { r + 1 } else { r })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeqOutcome {
    pub value: bool,
    pub repetitions: usize,
    pub votes_true: usize,
    pub queries_used: usize,
}

/// Majority vote over independent runs of the measured search.
#[derive(Clone, Debug)]
pub struct LeqComparator {
    pub budget: usize,
    /// Worst single-run error over all `(j, i)`, from the exact distribution.
    pub worst_error: f64,
    search: DifferenceSearch,
}

impl LeqComparator {
    pub fn new(n: usize, budget: usize) -> Result<Self> {
        let search = DifferenceSearch::new(n)?;
        if n > 12 {
            return Err(domain(format!("exact error table limited to 12 bits, got {n}")));
        }
        // the distribution depends on (j, i) only through the difference set
        let dists: Vec<_> = (0..1u64 << n)
            .map(|diff| leftmost_difference_distribution(n, diff, budget))
            .collect();
        let mut worst_error: f64 = 0.0;
        for i in 0..1u64 << n {
            let y = BitOracle::from_integer(i, n)?;
            for j in 0..1u64 << n {
                let err: f64 = dists[difference_set(j, &y) as usize]
                    .iter()
                    .filter(|(pos, _)| leq_from_difference(j, n, *pos) != (j <= i))
                    .map(|e| e.1)
                    .sum();
                worst_error = worst_error.max(err);
            }
        }
        if worst_error >= 0.5 {
            return Err(domain(format!(
                "budget {budget} leaves single-run error {worst_error} on {n} bits"
            )));
        }
        Ok(Self {
            budget,
            worst_error,
            search,
        })
    }

    pub fn with_default_budget(n: usize) -> Result<Self> {
        Self::new(n, default_budget(n))
    }

    pub fn repetitions(&self, target: f64) -> Result<usize> {
        majority_repetitions(self.worst_error, target)
    }

    pub fn compare(&self, j: u64, y: &BitOracle, target: f64, seed: u64) -> Result<LeqOutcome> {
        let reps = self.repetitions(target)?;
        let n = self.search.bits();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut votes, mut queries) = (0, 0);
        for _ in 0..reps {
            let run = self.search.run(j, y, self.budget, &mut rng)?;
            queries += run.queries_used;
            votes += leq_from_difference(j, n, run.position) as usize;
        }
        Ok(LeqOutcome {
            value: 2 * votes > reps,
            repetitions: reps,
            votes_true: votes,
            queries_used: queries,
        })
    }
}

/// `j ≤ i` with error at most `target_error`, using the default budget.
pub fn compare_leq(j: u64, y: &BitOracle, target_error: f64, seed: u64) -> Result<bool> {
    Ok(LeqComparator::with_default_budget(y.len())?
        .compare(j, y, target_error, seed)?
        .value)
}

/// Alternating iteration counts `0, 1, 0, 1, …` while the rounds fit in `budget` queries.
pub fn coherent_schedule(budget: usize) -> Vec<usize> {
    let mut schedule = Vec::new();
    let mut used = 0;
    loop {
        let k = schedule.len() % 2;
        if used + 2 * k + 1 > budget {
            return schedule;
        }
        used += 2 * k + 1;
        schedule.push(k);
    }
}

pub fn schedule_queries(schedule: &[usize]) -> usize {
    schedule.iter().map(|k| 2 * k + 1).sum()
}

/// Exact distribution of the leftmost difference found by a fixed schedule,
/// `None` first; the reference for [`push_coherent_copy`].
pub fn fixed_schedule_distribution(n: usize, diff: u64, schedule: &[usize]) -> Vec<(Option<usize>, f64)> {
    let (_, s) = position_layout(n);
    let mut dist = vec![0.0; n + 1];
    dist[n] = 1.0;
    for &k in schedule {
        let mut next = vec![0.0; n + 1];
        for (best, &prob) in dist.iter().enumerate() {
            if prob == 0.0 {
                continue;
            }
            let marked = eligible(diff, if best == n { s } else { best });
            let mu = marked.count_ones();
            let ps = round_success(s, mu, k);
            for p in (0..n).filter(|&p| marked >> p & 1 == 1) {
                next[p] += prob * ps / mu as f64;
            }
            next[best] += prob * (1.0 - ps);
        }
        dist = next;
    }
    let mut out = vec![(None, dist[n])];
    out.extend((0..n).map(|p| (Some(p), dist[p])));
    out
}

struct CopyLayout {
    n: usize,
    s: usize,
    j: Register,
    positions: Vec<Register>,
    records: Vec<usize>,
}

impl CopyLayout {
    /// Smallest recorded difference among the first `rounds` rounds.
    fn best(&self, basis: u64, rounds: usize) -> Option<usize> {
        let j = self.j.value(basis);
        (0..rounds)
            .filter_map(|r| {
                let p = self.positions[r].value(basis) as usize;
                let differs = (basis >> self.records[r] & 1 == 1) != msb_bit(j, self.n, p);
                (p < self.n && differs).then_some(p)
            })
            .min()
    }
}

/// Appends one coherent comparison of the value in `J` with `Y` and returns
/// its answer qubit.
///
/// Round `r` runs `schedule[r]` iterations on a fresh position register
/// `P_r`, marking positions that differ and lie left of every difference
/// recorded so far, then records `Y_{P_r}` in `a_r`. The answer is
/// `[J ≤ Y]` evaluated at the best recorded difference.
pub fn push_coherent_copy(b: &mut NetworkBuilder, j: &Register, n: usize, schedule: &[usize], tag: &str) -> usize {
    let (m, s) = position_layout(n);
    let scratch = b.qubit(format!("{tag}.s"));
    let mut positions = Vec::new();
    let mut records = Vec::new();
    for r in 0..schedule.len() {
        positions.push(b.alloc(format!("{tag}.P{r}"), m));
        records.push(b.qubit(format!("{tag}.a{r}")));
    }
    let out = b.qubit(format!("{tag}.out"));
    let layout = Arc::new(CopyLayout {
        n,
        s,
        j: j.clone(),
        positions: positions.clone(),
        records: records.clone(),
    });
    for (r, &k) in schedule.iter().enumerate() {
        let p = &positions[r];
        b.h_all(p);
        let l = layout.clone();
        let marked = Predicate::new(format!("{tag}.mark{r}"), move |basis| {
            let pos = l.positions[r].value(basis) as usize;
            let threshold = l.best(basis, r).unwrap_or(l.s);
            pos < l.n && pos < threshold && (basis >> scratch & 1 == 1) != msb_bit(l.j.value(basis), l.n, pos)
        });
        for _ in 0..k {
            b.query(p, scratch, Some("mark"));
            b.gate(Gate::PhaseIf(marked.clone()));
            b.query(p, scratch, Some("unmark"));
            b.gate(Gate::Diffusion(p.qubits.clone()));
        }
        b.query(p, records[r], Some("record"));
    }
    let l = layout;
    let rounds = schedule.len();
    b.gate(Gate::XorIf {
        target: out,
        predicate: Predicate::new(format!("{tag}.decide"), move |basis| {
            leq_from_difference(l.j.value(basis), l.n, l.best(basis, rounds))
        }),
    });
    out
}

/// Appends an error-free comparison that reads all `n` bits of `Y`
/// (`n` queries) and returns its answer qubit.
pub fn push_exact_copy(b: &mut NetworkBuilder, j: &Register, n: usize, tag: &str) -> usize {
    let (m, _) = position_layout(n);
    let p = b.alloc(format!("{tag}.P"), m);
    let bits = b.alloc(format!("{tag}.y"), n);
    let out = b.qubit(format!("{tag}.out"));
    for pos in 0..n {
        let set: Vec<usize> = (0..m).filter(|&q| pos >> q & 1 == 1).map(|q| p.qubits[q]).collect();
        for &q in &set {
            b.gate(Gate::X(q));
        }
        b.query(&p, bits.qubits[pos], Some("read"));
        for &q in &set {
            b.gate(Gate::X(q));
        }
    }
    let (jr, br) = (j.clone(), bits.clone());
    b.gate(Gate::XorIf {
        target: out,
        predicate: Predicate::new(format!("{tag}.decide"), move |basis| {
            let y: u64 = (0..n).map(|q| (br.value(basis) >> q & 1) << (n - 1 - q)).sum();
            jr.value(basis) <= y
        }),
    });
    out
}
