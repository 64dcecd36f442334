#include "dpds/dp.hpp"

#include <cmath>
#include <stdexcept>

namespace dpds {

namespace {

// SplitMix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream_id)
    : state_(mix64(mix64(seed) ^ mix64(stream_id * 0xD6E8FEB86659FD93ull + 1))) {}

double RandomSource::next_uniform() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    // (0,1) exclusive; keeps the quantile transform finite
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

RandomSource RandomSource::fork(std::uint64_t tag) const {
    return RandomSource(mix64(state_ ^ mix64(tag + 0x9E3779B97F4A7C15ull)));
}

double laplace_quantile(double p, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("laplace scale must be > 0");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile argument must be in (0,1)");
    double d = p - 0.5;
    if (d == 0.0) return 0.0;
    double sign = d > 0.0 ? 1.0 : -1.0;
    return -scale * sign * std::log(1.0 - 2.0 * std::abs(d));
}

double laplace_sample(double scale, RandomSource& rng) {
    return laplace_quantile(rng.next_uniform(), scale);
}

ChargeOutcome PrivacyAccountant::charge(const IndexSet& predicates, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("charge epsilon must be > 0");
    epsilon_spent_ += epsilon;
    predicates.for_each([&](std::size_t j) { theta_[j] += epsilon; });
    return epsilon_spent_ > epsilon_max_ ? ChargeOutcome::Denied : ChargeOutcome::Ok;
}

double tslm_epsilon(double sensitivity, double beta, double u) {
    if (!(beta > 0.0 && beta < 0.5))
        throw std::invalid_argument("tslm beta must be in (0, 0.5)");
    if (!(u > 0.0)) throw std::invalid_argument("tslm u must be > 0");
    return sensitivity * std::log(1.0 / (2.0 * beta)) / u;
}

TslmOutcome tslm(const BoundAtomic& atomic, double u, double beta, RandomSource& rng) {
    if (u > atomic.range_width())
        throw std::invalid_argument("tslm u exceeds the value-range width");
    const std::size_t k = atomic.exact.values.size();
    TslmOutcome out;
    out.epsilon = tslm_epsilon(atomic.sensitivity(), beta, u);
    const double scale = atomic.sensitivity() / out.epsilon;

    out.noisy.resize(k);
    out.reported = IndexSet(k);
    const bool greater = atomic.query.direction == Direction::Greater;
    for (std::size_t j = 0; j < k; ++j) {
        out.noisy[j] = atomic.exact.values[j] + laplace_sample(scale, rng);
        const double c = atomic.thresholds[j];
        // shifted threshold keeps the uncertain region on the false-positive side
        bool in = greater ? out.noisy[j] > c - u : out.noisy[j] < c + u;
        if (in) out.reported.insert(j);
    }
    return out;
}

} // namespace dpds
