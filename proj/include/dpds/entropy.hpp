#pragma once

#include <optional>
#include <vector>

#include "dpds/dataset.hpp"
#include "dpds/dp.hpp"
#include "dpds/engine.hpp"

namespace dpds {

// Per-predicate privacy budgets accumulated by multi-step mechanisms.
using PwdpLedger = std::vector<double>;

// Lower bound on adversarial uncertainty for a predicate-wise ledger:
// minimize sum -p log p over the box
//   e^{-eps_i} / sum_j e^{eps_j} <= p_i <= e^{eps_i} / sum_j e^{-eps_j}
// intersected with the probability simplex. Exact vertex enumeration for
// k <= 12, greedy mass concentration beyond. Natural-log units.
double min_entropy(const PwdpLedger& ledger);
double min_entropy_exact(const PwdpLedger& ledger);   // k <= 12
double min_entropy_greedy(const PwdpLedger& ledger);

struct EntConfig {
    int m = 4;            // iterations
    int m_f = 3;          // fine-grained candidate levels per step
    double u0_fraction = 0.3;
};

struct DdpwlmResult {
    IndexSet reported;
    double epsilon = 0.0;    // total charged across iterations
    double beta_used = 0.0;  // (iterations_run / m) * beta_i
    int iterations = 0;
};

// Data-dependent multi-step mechanism for one atomic query. Starts at the
// budget implied by u0, caps the ramp at the budget implied by the
// FP-estimate's u_opt, and picks each next level from a geometric grid by
// maximizing the min-entropy of the hypothetical ledger. Each iteration
// spends beta_i/m of the FNR budget on the still-undecided predicates.
DdpwlmResult ddpwlm(const BoundAtomic& atomic, double u0, double beta_i, double alpha_i,
                    const EntConfig& config, RandomSource& rng, PrivacyAccountant& accountant);

enum class GapOp { Conjunction, Disjunction };

struct SubQueryTrace {
    int atomic_index = -1;
    bool executed = false;
    double beta_pool = 0.0;      // overall budget in force when apportioned
    double beta_assigned = 0.0;  // beta_i
    double beta_used = 0.0;
    double epsilon = 0.0;
    int iterations = 0;
};

struct EntProbeResult {
    bool answered = false;
    DenyReason reason = DenyReason::BudgetExceeded;
    IndexSet result;
    double epsilon = 0.0;
    std::vector<double> theta;
    std::vector<SubQueryTrace> trace;
};

// Flat-sequence multi-step variant: sub-queries run left to right, combined
// per gap operator, with leftover FNR budget from early exits re-apportioned
// over the remaining sub-queries.
EntProbeResult ent_probe(const std::vector<BoundAtomic>& bound, const std::vector<int>& occurrences,
                         const std::vector<GapOp>& ops, double beta, double alpha,
                         double epsilon_max, const EntConfig& config,
                         const RandomSource& trial_rng);

} // namespace dpds
