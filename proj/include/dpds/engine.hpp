#pragma once

#include <optional>
#include <vector>

#include "dpds/apportion.hpp"
#include "dpds/dataset.hpp"
#include "dpds/dp.hpp"

namespace dpds {

struct ProbeConfig {
    double phase1_u_fraction = 0.3;  // u_i as a fraction of the value-range width
    double phase_split = 0.5;        // share of beta spent in phase one
    bool skip_empty_conjunction = true;
    bool equal_phase_one = false;    // equal beta split in phase one (probe-naive)
};

// Per-leaf mechanism state. Leaves are tree occurrences: a repeated atomic
// gets one state per occurrence, each with independent noise and its own
// charge. flag marks "execute on next visit" and is set for every leaf at
// phase one and again for leaves phase two decides to rerun.
struct LeafState {
    int atomic_index = -1;
    double u = 0.0;
    double beta = 0.0;
    bool flag = true;
    std::optional<std::vector<double>> noisy;   // G
    std::optional<IndexSet> reported;           // O
    double epsilon = 0.0;                       // total charged by this leaf
    int runs_done = 0;
};

// Eq-level false-positive estimate for one executed leaf:
//   f_est = |O_p - O_pp| + |O_pp|*beta      (upper bound on FP count)
//   r_est = (|O_n| - beta*k) / (1 - beta)   (lower bound on negative count)
struct FpEstimate {
    IndexSet o_pp;  // definitely positive: noisy beyond the unshifted threshold
    IndexSet o_p;   // reported positive: noisy beyond the shifted threshold
    IndexSet o_n;   // reported negative
    double f_est = 0.0;
    double r_est = 0.0;
};

// prune: intersect positives with the phase-one combined output and subtract
// it from the negatives (operator-aware elimination); pass nullptr to skip.
FpEstimate estimate_fps(const BoundAtomic& atomic, const std::vector<double>& noisy,
                        double u, double beta, const IndexSet* prune);

// Largest u such that the estimate at threshold c-u stays within f_max.
// Candidates are the gaps c_j - G[j] over the pruned uncertain set. Empty
// optional means no u is feasible (e.g. |O_pp|*beta alone exceeds f_max).
std::optional<double> find_u_opt(const BoundAtomic& atomic, const std::vector<double>& noisy,
                                 double u, double beta, double f_max, const IndexSet* prune);

enum class DenyReason { BudgetExceeded, FpBoundUnmet };

struct LeafRun {
    int phase = 1;
    double u = 0.0;
    double beta = 0.0;
    double epsilon = 0.0;
};

// Per-leaf diagnostics carried out of a run; enough to re-derive every charge.
struct LeafReport {
    int atomic_index = -1;
    std::vector<LeafRun> runs;
    double epsilon = 0.0;
    std::optional<std::vector<double>> phase1_noisy;
    std::optional<IndexSet> phase1_reported;
    std::optional<double> phase1_f_est, phase1_r_est;  // pruned estimates
    std::optional<std::vector<double>> final_noisy;
    std::optional<IndexSet> final_reported;
};

struct ProbeResult {
    bool answered = false;
    DenyReason reason = DenyReason::BudgetExceeded;
    IndexSet result;
    double epsilon = 0.0;
    std::vector<double> theta;          // per-predicate ledger
    std::vector<LeafReport> leaves;     // per leaf occurrence, pre-order
    IndexSet phase_one_result;
    bool phase_two_reran = false;
};

// Two-phase mechanism: optimal-beta threshold-shift traversal with
// conjunction skipping, then FP estimation, uncertain-region reset and
// selective rerun under the alpha bound.
ProbeResult probe(const CompiledQuery& compiled, const std::vector<BoundAtomic>& bound,
                  double beta, double alpha, double epsilon_max, const ProbeConfig& config,
                  const RandomSource& trial_rng);

// Single-phase baseline: beta_i = beta/n for every leaf, u from u_fraction,
// no false-positive control.
ProbeResult naive(const CompiledQuery& compiled, const std::vector<BoundAtomic>& bound,
                  double beta, double u_fraction, double epsilon_max,
                  const RandomSource& trial_rng, bool skip_empty_conjunction = true);

} // namespace dpds
