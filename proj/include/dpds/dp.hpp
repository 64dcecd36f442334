#pragma once

#include <cstdint>
#include <vector>

#include "dpds/dataset.hpp"
#include "dpds/index_set.hpp"

namespace dpds {

// Deterministic uniform stream keyed by (seed, stream-id). Forking derives an
// independent child stream, so concurrent trials and per-leaf noise draws
// never share state.
class RandomSource {
public:
    RandomSource(std::uint64_t seed, std::uint64_t stream_id);

    // uniform in the open interval (0, 1)
    double next_uniform();
    RandomSource fork(std::uint64_t tag) const;

private:
    explicit RandomSource(std::uint64_t key) : state_(key) {}
    std::uint64_t state_;
};

// Inverse CDF of the zero-mean Laplace distribution with the given scale.
double laplace_quantile(double p, double scale);
double laplace_sample(double scale, RandomSource& rng);

enum class ChargeOutcome { Ok, Denied };

// Ex-post privacy ledger: global spend against epsilon_max plus the
// per-predicate map used by the predicate-wise accounting.
class PrivacyAccountant {
public:
    PrivacyAccountant(double epsilon_max, std::size_t num_predicates)
        : epsilon_max_(epsilon_max), theta_(num_predicates, 0.0) {}

    // Adds epsilon to the global spend and to every affected predicate.
    // Denied the moment the spend exceeds epsilon_max.
    ChargeOutcome charge(const IndexSet& predicates, double epsilon);

    double epsilon_max() const { return epsilon_max_; }
    double epsilon_spent() const { return epsilon_spent_; }
    const std::vector<double>& theta() const { return theta_; }

private:
    double epsilon_max_;
    double epsilon_spent_ = 0.0;
    std::vector<double> theta_;
};

struct TslmOutcome {
    std::vector<double> noisy;  // G, length k
    IndexSet reported;          // O
    double epsilon = 0.0;
};

// Threshold-shift Laplace mechanism: epsilon = dg * ln(1/(2*beta)) / u, noisy
// aggregates compared against the shifted threshold c - u (c + u for Less).
double tslm_epsilon(double sensitivity, double beta, double u);
TslmOutcome tslm(const BoundAtomic& atomic, double u, double beta, RandomSource& rng);

} // namespace dpds
