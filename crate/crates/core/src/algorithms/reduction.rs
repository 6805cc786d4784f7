//! Ordered search with the comparison gate replaced by an approximate
//! gadget that queries the bits of `i` instead of the list.
//!
//! The gadget `C̃` is a majority vote over `r` copies of a coherent
//! comparison, cleaned by compute/copy/uncompute. Its action on basis inputs
//! is evaluated exactly from the single-copy states: writing
//! `u_{j,s} = A⁻¹ Π_s A |j, 0̄⟩` for one copy `A`,
//!
//! `C̃|j, β, 0̄⟩ = |j⟩ Σ_v |β ⊕ v⟩ |z_{j,v}⟩`, `|z_{j,v}⟩ = Σ_{σ : maj σ = v} ⊗_c |u_{j,σ_c}⟩`,
//!
//! so every overlap `⟨z_{j',v'}|z_{j,v}⟩` is a polynomial in the 2×2 overlaps
//! of the copies. The binary search is then followed through its branches
//! by their Gram matrix rather than by state vectors.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cleanup::ResidualGram;
use super::comparator::{coherent_schedule, push_coherent_copy, push_exact_copy, schedule_queries};
use super::ordered::{push_binary_search, ComparisonGate, OrderedInstance};
use crate::error::{domain, Result};
use crate::simcore::{BitOracle, Gate, NetworkBuilder, Predicate, QueryNetwork, Register, SparseState};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComparatorKind {
    /// Bounded-error leftmost-difference search.
    #[default]
    Coherent,
    /// Reads every bit of `Y`; no error.
    Exact,
}

impl std::str::FromStr for ComparatorKind {
    type Err = crate::LabError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coherent" => Ok(Self::Coherent),
            "exact" => Ok(Self::Exact),
            other => Err(domain(format!("unknown comparator {other:?} (coherent|exact)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ReductionConfig {
    /// Target residual scale: each gadget must satisfy `‖W_jb‖ ≤ η / log N`.
    pub eta: f64,
    /// Copies in the majority vote.
    pub repetitions: usize,
    /// Queries per copy; sets the coherent schedule.
    pub query_budget: usize,
    pub comparator: ComparatorKind,
    /// Recovery probability counted as success.
    pub success_threshold: f64,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        Self {
            eta: 0.05,
            repetitions: 9,
            query_budget: 12,
            comparator: ComparatorKind::Coherent,
            success_threshold: 2.0 / 3.0,
        }
    }
}

impl ReductionConfig {
    pub fn validate(&self) -> Result<()> {
        let eta_ok = match self.comparator {
            ComparatorKind::Coherent => self.eta > 0.0 && self.eta <= 1.0,
            ComparatorKind::Exact => (0.0..=1.0).contains(&self.eta),
        };
        if !eta_ok {
            return Err(domain(format!("eta = {} outside the allowed range", self.eta)));
        }
        if self.repetitions == 0 {
            return Err(domain("repetitions must be at least 1"));
        }
        if self.comparator == ComparatorKind::Coherent && self.query_budget == 0 {
            return Err(domain("query budget must be at least 1"));
        }
        if !(self.success_threshold > 0.0 && self.success_threshold <= 1.0) {
            return Err(domain(format!("success threshold {} outside (0, 1]", self.success_threshold)));
        }
        Ok(())
    }
}

fn majority(ones: usize, r: usize) -> bool {
    2 * ones > r
}

/// The approximate comparison gadget for lists of length `N`.
#[derive(Clone, Debug)]
pub struct CTilde {
    pub n_items: usize,
    pub bits: usize,
    pub config: ReductionConfig,
    /// Iteration counts of the coherent rounds (empty in exact mode).
    pub schedule: Vec<usize>,
    pub copy_queries: usize,
    /// Queries to `Y` per gadget: `2 · r · copy_queries`.
    pub queries: usize,
    copy: QueryNetwork,
}

pub fn build_ctilde(n_items: usize, config: &ReductionConfig) -> Result<CTilde> {
    CTilde::new(n_items, config)
}

impl CTilde {
    pub fn new(n_items: usize, config: &ReductionConfig) -> Result<Self> {
        config.validate()?;
        let inst = OrderedInstance::new(n_items, 0)?;
        let bits = inst.log_n();
        let schedule = match config.comparator {
            ComparatorKind::Coherent => coherent_schedule(config.query_budget),
            ComparatorKind::Exact => Vec::new(),
        };
        let mut b = NetworkBuilder::new();
        let j = b.alloc("J", bits);
        let out = Self::push_copy_with(&mut b, &j, bits, config.comparator, &schedule, "c");
        let copy = b.build(out)?;
        let copy_queries = copy.query_count();
        if config.comparator == ComparatorKind::Coherent {
            debug_assert_eq!(copy_queries, schedule_queries(&schedule));
        }
        Ok(Self {
            n_items,
            bits,
            config: config.clone(),
            schedule,
            copy_queries,
            queries: 2 * config.repetitions * copy_queries,
            copy,
        })
    }

    fn push_copy_with(
        b: &mut NetworkBuilder,
        j: &Register,
        bits: usize,
        kind: ComparatorKind,
        schedule: &[usize],
        tag: &str,
    ) -> usize {
        match kind {
            ComparatorKind::Coherent => push_coherent_copy(b, j, bits, schedule, tag),
            ComparatorKind::Exact => push_exact_copy(b, j, bits, tag),
        }
    }

    /// `η / log N`.
    pub fn residual_target(&self) -> f64 {
        self.config.eta / self.bits as f64
    }

    /// One comparison copy alone; `J` occupies qubits `0..log N`.
    pub fn copy_network(&self) -> &QueryNetwork {
        &self.copy
    }

    /// Appends the `r` copies and the majority bit; returns the majority qubit.
    fn push_inner(&self, b: &mut NetworkBuilder, j: &Register, tag: &str) -> usize {
        let r = self.config.repetitions;
        let outs: Vec<usize> = (0..r)
            .map(|c| {
                Self::push_copy_with(b, j, self.bits, self.config.comparator, &self.schedule, &format!("{tag}.c{c}"))
            })
            .collect();
        let maj = b.qubit(format!("{tag}.maj"));
        b.gate(Gate::XorIf {
            target: maj,
            predicate: Predicate::new(format!("{tag}.majority"), move |basis| {
                majority(outs.iter().filter(|&&q| basis >> q & 1 == 1).count(), r)
            }),
        });
        maj
    }

    /// Majority vote of the copies, with its answer as output: the network
    /// that [`clean_wrap`](super::clean_wrap) turns into `C̃`.
    pub fn inner_network(&self) -> Result<QueryNetwork> {
        let mut b = NetworkBuilder::new();
        let j = b.alloc("J", self.bits);
        let maj = self.push_inner(&mut b, &j, "g");
        b.build(maj)
    }

    /// Appends `C̃` acting on `J` and `target` with a fresh workspace.
    pub fn push(&self, b: &mut NetworkBuilder, j: &Register, target: usize, tag: &str) {
        let start = b.layers_len();
        let maj = self.push_inner(b, j, tag);
        let end = b.layers_len();
        b.gate(Gate::cnot(maj, target));
        b.uncompute(start, end);
    }

    /// `C̃` alone: `J` on qubits `0..log N`, then the output bit `b`, then the workspace.
    pub fn network(&self) -> Result<QueryNetwork> {
        let mut b = NetworkBuilder::new();
        let j = b.alloc("J", self.bits);
        let target = b.qubit("b");
        self.push(&mut b, &j, target, "g");
        b.build(target)
    }

    /// Exact action of `C̃` on every basis input for the instance behind `y`.
    pub fn profile(&self, y: &BitOracle) -> Result<GadgetProfile> {
        if y.len() != self.bits {
            return Err(domain(format!("Y has {} bits, expected {}", y.len(), self.bits)));
        }
        let n = self.bits;
        let size = 1usize << n;
        let i = y.to_integer();
        let out_q = self.copy.output_qubit();
        let inverse = self.copy.inverse();
        let mut u: Vec<[SparseState; 2]> = Vec::with_capacity(size);
        let mut p_out = Vec::with_capacity(size);
        for j in 0..size as u64 {
            let psi = self.copy.apply_sparse(y, SparseState::basis(self.copy.num_qubits(), j)?)?;
            let mut pair = Vec::with_capacity(2);
            let mut probs = [0.0; 2];
            for (s, prob) in probs.iter_mut().enumerate() {
                let proj = psi.project(out_q, s == 1);
                *prob = proj.norm_sqr();
                let back = inverse.apply_sparse(y, proj)?;
                pair.push(strip_index(&back, n, j)?);
            }
            let [u0, u1]: [SparseState; 2] = pair.try_into().unwrap();
            u.push([u0, u1]);
            p_out.push(probs);
        }

        let r = self.config.repetitions;
        let width = 2 * size;
        let mut overlaps = vec![Complex64::new(0.0, 0.0); width * width];
        for j2 in 0..size {
            for j in j2..size {
                let mut g = [[Complex64::new(0.0, 0.0); 2]; 2];
                for (s2, row) in g.iter_mut().enumerate() {
                    for (s, cell) in row.iter_mut().enumerate() {
                        *cell = u[j2][s2].inner(&u[j][s]);
                    }
                }
                let z = majority_overlaps(&g, r);
                for v2 in 0..2 {
                    for v in 0..2 {
                        overlaps[(2 * j2 + v2) * width + 2 * j + v] = z[v2][v];
                        overlaps[(2 * j + v) * width + 2 * j2 + v2] = z[v2][v].conj();
                    }
                }
            }
        }
        let p_maj = p_out.iter().map(|p| majority_probabilities(p, r)).collect();
        Ok(GadgetProfile {
            bits: n,
            i,
            p_out,
            p_maj,
            overlaps,
        })
    }

    /// Checks `‖W_jb‖ ≤ η / log N` on every basis input.
    pub fn verify(&self, y: &BitOracle) -> Result<CTildeVerification> {
        let profile = self.profile(y)?;
        let max_residual = profile.max_residual();
        let target = self.residual_target();
        Ok(CTildeVerification {
            i: profile.i,
            residuals: (0..1u64 << self.bits).map(|j| profile.residual_norm(j)).collect(),
            max_residual,
            target,
            queries: self.queries,
            passed: max_residual <= target + 1e-12,
        })
    }
}

/// Drops the `J` register (the low `n` qubits), checking it holds `j`.
fn strip_index(state: &SparseState, n: usize, j: u64) -> Result<SparseState> {
    let mask = (1u64 << n) - 1;
    if state.entries().iter().any(|&(k, _)| k & mask != j) {
        return Err(crate::error::structural("comparison copy changed its index register"));
    }
    Ok(SparseState::from_entries(
        state.num_qubits() - n,
        state.entries().iter().map(|&(k, a)| (k >> n, a)).collect(),
    ))
}

/// `⟨z_{j',v'}|z_{j,v}⟩` from the single-copy overlaps `g[s'][s] = ⟨u_{j',s'}|u_{j,s}⟩`.
fn majority_overlaps(g: &[[Complex64; 2]; 2], r: usize) -> [[Complex64; 2]; 2] {
    // dp[a'][a]: sum over copy prefixes with a' ones on the left, a on the right
    let mut dp = vec![vec![Complex64::new(0.0, 0.0); r + 1]; r + 1];
    dp[0][0] = Complex64::new(1.0, 0.0);
    for c in 0..r {
        let mut next = vec![vec![Complex64::new(0.0, 0.0); r + 1]; r + 1];
        for a2 in 0..=c {
            for a in 0..=c {
                let w = dp[a2][a];
                if w == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for s2 in 0..2 {
                    for s in 0..2 {
                        next[a2 + s2][a + s] += w * g[s2][s];
                    }
                }
            }
        }
        dp = next;
    }
    let mut z = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (a2, row) in dp.iter().enumerate() {
        for (a, w) in row.iter().enumerate() {
            z[majority(a2, r) as usize][majority(a, r) as usize] += w;
        }
    }
    z
}

/// Distribution of the majority of `r` independent copies with marginal `p`.
fn majority_probabilities(p: &[f64; 2], r: usize) -> [f64; 2] {
    let mut dist = vec![0.0; r + 1];
    dist[0] = 1.0;
    for c in 0..r {
        for a in (0..=c + 1).rev() {
            let stay = if a <= c { dist[a] * p[0] } else { 0.0 };
            let up = if a > 0 { dist[a - 1] * p[1] } else { 0.0 };
            dist[a] = stay + up;
        }
    }
    let mut out = [0.0; 2];
    for (a, w) in dist.iter().enumerate() {
        out[majority(a, r) as usize] += w;
    }
    out
}

/// Exact action of `C̃` on the basis inputs for one instance.
#[derive(Clone, Debug)]
pub struct GadgetProfile {
    pub bits: usize,
    pub i: u64,
    /// `P(copy answers v | j)`.
    pub p_out: Vec<[f64; 2]>,
    /// `P(majority = v | j)`.
    pub p_maj: Vec<[f64; 2]>,
    overlaps: Vec<Complex64>,
}

impl GadgetProfile {
    fn target(&self, j: u64) -> usize {
        (j <= self.i) as usize
    }

    /// `⟨z_{j',v'}|z_{j,v}⟩`.
    pub fn overlap(&self, j2: u64, v2: usize, j: u64, v: usize) -> Complex64 {
        let width = 2usize << self.bits;
        self.overlaps[(2 * j2 as usize + v2) * width + 2 * j as usize + v]
    }

    /// `⟨0̄|z_{j,v}⟩ = P(majority = v | j)`.
    pub fn vacuum_overlap(&self, j: u64, v: usize) -> f64 {
        self.p_maj[j as usize][v]
    }

    /// Block `⟨W_{j,β'}|W_{j,β}⟩` for `β', β ∈ {0, 1}`.
    fn residual_block(&self, j: u64) -> [[Complex64; 2]; 2] {
        let x = self.target(j);
        let y = 1 - x;
        // W_{jβ} = |β⊕x⟩(z_x − 0̄) + |β⊕x̄⟩ z_x̄
        let aa = self.overlap(j, x, j, x) - 2.0 * self.vacuum_overlap(j, x) + 1.0;
        let bb = self.overlap(j, y, j, y);
        let ab = self.overlap(j, x, j, y) - self.vacuum_overlap(j, y);
        let same = aa + bb;
        let cross = Complex64::new(2.0 * ab.re, 0.0);
        [[same, cross], [cross, same]]
    }

    /// `‖W_{j,b}‖` (the same for both `b`).
    pub fn residual_norm(&self, j: u64) -> f64 {
        self.residual_block(j)[0][0].re.max(0.0).sqrt()
    }

    pub fn max_residual(&self) -> f64 {
        (0..1u64 << self.bits).map(|j| self.residual_norm(j)).fold(0.0, f64::max)
    }

    /// Gram matrix of the residuals over inputs ordered `(j, b)`; inputs with
    /// different `j` have orthogonal residuals.
    pub fn residual_gram(&self) -> ResidualGram {
        let dim = 2usize << self.bits;
        let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
        for j in 0..1u64 << self.bits {
            let block = self.residual_block(j);
            for b2 in 0..2 {
                for b in 0..2 {
                    m[(2 * j as usize + b2) * dim + 2 * j as usize + b] = block[b2][b];
                }
            }
        }
        ResidualGram { dim, matrix: m }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CTildeVerification {
    pub i: u64,
    /// `‖W_{j,b}‖` by `j`.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    /// `η / log N`.
    pub target: f64,
    pub queries: usize,
    pub passed: bool,
}

/// Final state of the binary search with every comparison replaced by `C̃`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutcome {
    /// `P(R = r)`.
    pub distribution: Vec<f64>,
    pub recovery: f64,
    /// `‖S̃|0̄⟩ − S|0̄⟩‖`.
    pub deviation: f64,
    /// `‖(C̃ − C)|ψ_k⟩‖` on the state reached by the exact search before step `k`.
    pub step_deviations: Vec<f64>,
}

/// Follows the branches `R = r` of the approximate search through the Gram
/// matrix `G[r][s] = ⟨Ω_s|Ω_r⟩` of their workspace states.
pub fn simulate_search(profile: &GadgetProfile) -> SearchOutcome {
    let n = profile.bits;
    let i = profile.i;
    let mut branches: Vec<u64> = vec![0];
    let mut gram = vec![Complex64::new(1.0, 0.0)];
    let mut zeta = vec![Complex64::new(1.0, 0.0)];
    let mut step_deviations = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let j_exact = (i >> (k + 1) << (k + 1)) | 1 << k;
        step_deviations.push(profile.residual_norm(j_exact));
        let old = branches.len();
        // (parent branch, new R value, bit written)
        let next: Vec<(usize, u64, usize)> = (0..old)
            .flat_map(|b| [(b, branches[b], 0), (b, branches[b] | 1 << k, 1)])
            .collect();
        let jv = |b: usize| branches[b] | 1 << k;
        let width = next.len();
        let mut g2 = vec![Complex64::new(0.0, 0.0); width * width];
        for (a, &(ba, _, va)) in next.iter().enumerate() {
            for (c, &(bc, _, vc)) in next.iter().enumerate() {
                // ⟨Ω'_c|Ω'_a⟩ = ⟨Ω_c|Ω_a⟩ ⟨z_{J(c),v_c}|z_{J(a),v_a}⟩
                g2[a * width + c] = gram[ba * old + bc] * profile.overlap(jv(bc), vc, jv(ba), va);
            }
        }
        zeta = next
            .iter()
            .map(|&(b, _, v)| zeta[b] * profile.vacuum_overlap(jv(b), v))
            .collect();
        branches = next.iter().map(|&(_, r, _)| r).collect();
        gram = g2;
    }
    let size = 1usize << n;
    let mut distribution = vec![0.0; size];
    let mut zeta_i = Complex64::new(0.0, 0.0);
    let width = branches.len();
    for (a, &r) in branches.iter().enumerate() {
        distribution[r as usize] += gram[a * width + a].re;
        if r == i {
            zeta_i += zeta[a];
        }
    }
    let total: f64 = distribution.iter().sum();
    SearchOutcome {
        recovery: distribution[i as usize],
        deviation: (total + 1.0 - 2.0 * zeta_i.re).max(0.0).sqrt(),
        distribution,
        step_deviations,
    }
}

struct GadgetComparison<'a> {
    gadget: &'a CTilde,
    placed: usize,
}

impl ComparisonGate for GadgetComparison<'_> {
    fn place(&mut self, b: &mut NetworkBuilder, j: &Register, target: usize) -> Result<()> {
        self.gadget.push(b, j, target, &format!("step{}", self.placed));
        self.placed += 1;
        Ok(())
    }
}

/// `S̃` as an explicit network on `J`, `R` and one fresh workspace per gadget;
/// its queries go to `Y`.
pub fn explicit_search_network(gadget: &CTilde) -> Result<QueryNetwork> {
    let n = gadget.bits;
    let mut b = NetworkBuilder::new();
    let j = b.alloc("J", n);
    let r = b.alloc("R", n);
    push_binary_search(&mut b, &j, &r, &mut GadgetComparison { gadget, placed: 0 })?;
    b.build(r.qubits[0])
}

/// [`simulate_search`] by direct sparse simulation of [`explicit_search_network`].
pub fn simulate_search_explicit(gadget: &CTilde, y: &BitOracle) -> Result<SearchOutcome> {
    let net = explicit_search_network(gadget)?;
    let r = net.register("R").unwrap().clone();
    let out = net.apply_sparse(y, SparseState::zero(net.num_qubits())?)?;
    let i = y.to_integer();
    let mut distribution = vec![0.0; 1usize << gadget.bits];
    for &(k, a) in out.entries() {
        distribution[r.value(k) as usize] += a.norm_sqr();
    }
    let ideal = SparseState::basis(net.num_qubits(), r.with_value(0, i))?;
    let deviation = out.add_scaled(&ideal, Complex64::new(-1.0, 0.0)).norm();
    Ok(SearchOutcome {
        recovery: distribution[i as usize],
        deviation,
        distribution,
        step_deviations: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceReport {
    pub i: u64,
    pub recovery: f64,
    pub most_likely: u64,
    pub deviation: f64,
    /// Sum of the per-step deviations; bounds `deviation`.
    pub hybrid_bound: f64,
    pub step_deviations: Vec<f64>,
    pub max_residual: f64,
    pub gadget_verified: bool,
    pub parity: bool,
    /// Parity of the most likely outcome.
    pub parity_inferred: bool,
    /// `P(parity of the measured R = parity of i)`.
    pub parity_success: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionReport {
    pub n_items: usize,
    pub config: ReductionConfig,
    pub schedule: Vec<usize>,
    pub copy_queries: usize,
    /// Queries to `Y` per gadget.
    pub gadget_queries: usize,
    /// Comparisons in the binary search.
    pub list_queries: usize,
    pub total_queries: usize,
    pub residual_target: f64,
    /// `√2 · η`.
    pub deviation_bound: f64,
    pub instances: Vec<InstanceReport>,
    pub min_recovery: f64,
    pub max_deviation: f64,
    pub all_ok: bool,
}

/// Runs the approximate search for every `i` in `0..N`.
pub fn ordered_search_reduction(n_items: usize, config: &ReductionConfig) -> Result<ReductionReport> {
    use rayon::prelude::*;
    let gadget = CTilde::new(n_items, config)?;
    let deviation_bound = std::f64::consts::SQRT_2 * config.eta;
    let instances: Vec<InstanceReport> = (0..n_items as u64)
        .into_par_iter()
        .map(|i| {
            let inst = OrderedInstance::new(n_items, i)?;
            let profile = gadget.profile(&inst.y)?;
            let out = simulate_search(&profile);
            let max_residual = profile.max_residual();
            let most_likely = (0..n_items)
                .max_by(|&a, &b| out.distribution[a].total_cmp(&out.distribution[b]).then(b.cmp(&a)))
                .unwrap() as u64;
            let parity_success: f64 = out
                .distribution
                .iter()
                .enumerate()
                .filter(|(r, _)| (*r as u64 & 1) == (i & 1))
                .map(|(_, p)| p)
                .sum();
            let hybrid_bound: f64 = out.step_deviations.iter().sum();
            let ok = out.recovery >= config.success_threshold
                && out.deviation <= deviation_bound + 1e-12
                && out.deviation <= hybrid_bound + 1e-9;
            Ok(InstanceReport {
                i,
                recovery: out.recovery,
                most_likely,
                deviation: out.deviation,
                hybrid_bound,
                step_deviations: out.step_deviations,
                max_residual,
                gadget_verified: max_residual <= gadget.residual_target() + 1e-12,
                parity: inst.parity(),
                parity_inferred: most_likely & 1 == 1,
                parity_success,
                ok,
            })
        })
        .collect::<Result<_>>()?;
    let bits = gadget.bits;
    Ok(ReductionReport {
        n_items,
        config: config.clone(),
        schedule: gadget.schedule.clone(),
        copy_queries: gadget.copy_queries,
        gadget_queries: gadget.queries,
        list_queries: bits,
        total_queries: bits * gadget.queries,
        residual_target: gadget.residual_target(),
        deviation_bound,
        min_recovery: instances.iter().map(|r| r.recovery).fold(1.0, f64::min),
        max_deviation: instances.iter().map(|r| r.deviation).fold(0.0, f64::max),
        all_ok: instances.iter().all(|r| r.ok),
        instances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{clean_wrap, difference_set, fixed_schedule_distribution, leq_from_difference};

    fn cfg(repetitions: usize, query_budget: usize) -> ReductionConfig {
        ReductionConfig {
            repetitions,
            query_budget,
            ..ReductionConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(ReductionConfig::default().validate().is_ok());
        let bad = ReductionConfig { eta: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let exact = ReductionConfig {
            eta: 0.0,
            comparator: ComparatorKind::Exact,
            ..Default::default()
        };
        assert!(exact.validate().is_ok());
        assert!(cfg(0, 12).validate().is_err());
        assert_eq!("exact".parse::<ComparatorKind>().unwrap(), ComparatorKind::Exact);
    }

    #[test]
    fn majority_helpers() {
        let p = [0.9, 0.1];
        let m = majority_probabilities(&p, 3);
        assert!((m[1] - (3.0 * 0.01 * 0.9 + 0.001)).abs() < 1e-15);
        // orthonormal copies: overlaps reduce to the same binomial weights
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let z = majority_overlaps(&[[one, zero], [zero, one]], 3);
        assert_eq!(z[0][0], Complex64::new(4.0, 0.0));
        assert_eq!(z[0][1], zero);
    }

    #[test]
    fn copy_marginals_match_fixed_schedule() {
        let gadget = CTilde::new(16, &cfg(1, 12)).unwrap();
        for i in [0u64, 5, 15] {
            let y = BitOracle::from_integer(i, 4).unwrap();
            let prof = gadget.profile(&y).unwrap();
            for j in 0..16u64 {
                let want: f64 = fixed_schedule_distribution(4, difference_set(j, &y), &gadget.schedule)
                    .into_iter()
                    .filter(|(p, _)| leq_from_difference(j, 4, *p))
                    .map(|e| e.1)
                    .sum();
                assert!((prof.p_out[j as usize][1] - want).abs() < 1e-9);
                // ⟨z_{j,v}|z_{j,v}⟩ = P(maj = v)
                for v in 0..2 {
                    assert!((prof.overlap(j, v, j, v).re - prof.p_maj[j as usize][v]).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn product_evaluation_matches_full_simulation() {
        // r = 3 copies of the two-round schedule: the expanded gadget has 30 qubits
        let gadget = CTilde::new(16, &cfg(3, 4)).unwrap();
        let inner = gadget.inner_network().unwrap();
        for i in [3u64, 12] {
            let inst = OrderedInstance::new(16, i).unwrap();
            let prof = gadget.profile(&inst.y).unwrap();
            let wrap = clean_wrap(&inner, "J", &inst.y, &|j| inst.target(j)).unwrap();
            let vectors = wrap.residual_vectors(&inst.y, &|j| inst.target(j)).unwrap();
            let full = ResidualGram::from_residuals(&vectors);
            let fast = prof.residual_gram();
            for (a, b) in full.matrix.iter().zip(&fast.matrix) {
                assert!((a - b).norm() < 1e-9, "{a} vs {b}");
            }
            assert_eq!(wrap.report.queries, gadget.queries);
        }
    }

    #[test]
    fn gram_search_matches_explicit_network() {
        // N = 8 with one copy per gadget: three gadgets of 9 qubits plus J and R
        for (r, budget) in [(1, 4), (3, 1)] {
            let gadget = CTilde::new(8, &cfg(r, budget)).unwrap();
            for i in [0u64, 5, 6] {
                let inst = OrderedInstance::new(8, i).unwrap();
                let fast = simulate_search(&gadget.profile(&inst.y).unwrap());
                let slow = simulate_search_explicit(&gadget, &inst.y).unwrap();
                for (a, b) in fast.distribution.iter().zip(&slow.distribution) {
                    assert!((a - b).abs() < 1e-9);
                }
                assert!((fast.deviation - slow.deviation).abs() < 1e-9);
                assert!(fast.deviation <= fast.step_deviations.iter().sum::<f64>() + 1e-9);
            }
        }
    }

    #[test]
    fn residuals_shrink_with_repetitions() {
        let inst = OrderedInstance::new(8, 2).unwrap();
        let mut last = f64::INFINITY;
        for r in [1, 3, 5, 9] {
            let res = CTilde::new(8, &cfg(r, 12)).unwrap().profile(&inst.y).unwrap().max_residual();
            assert!(res < last);
            last = res;
        }
    }

    #[test]
    fn loose_target_met_with_one_copy() {
        let gadget = CTilde::new(8, &ReductionConfig { eta: 1.0, ..cfg(1, 12) }).unwrap();
        for i in 0..8 {
            let inst = OrderedInstance::new(8, i).unwrap();
            assert!(gadget.verify(&inst.y).unwrap().passed);
        }
    }

    #[test]
    fn exact_comparator_recovers_exactly() {
        let config = ReductionConfig {
            eta: 0.0,
            repetitions: 1,
            comparator: ComparatorKind::Exact,
            ..Default::default()
        };
        let rep = ordered_search_reduction(8, &config).unwrap();
        assert!(rep.all_ok);
        for inst in &rep.instances {
            assert!((inst.recovery - 1.0).abs() < 1e-12);
            assert!(inst.deviation < 1e-9);
            assert_eq!(inst.most_likely, inst.i);
        }
        assert_eq!(rep.copy_queries, 3);
    }

    #[test]
    fn default_reduction_at_eight() {
        let rep = ordered_search_reduction(8, &ReductionConfig::default()).unwrap();
        assert!(rep.all_ok);
        assert_eq!(rep.gadget_queries, 2 * 9 * 12);
        for inst in &rep.instances {
            assert!(inst.gadget_verified);
            assert_eq!(inst.parity_inferred, inst.parity);
        }
    }
}
