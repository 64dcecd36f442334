#include "dpds/apportion.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dpds {

void ApportionInput::validate() const {
    const std::size_t size = u.size();
    if (size == 0 || dg.size() != size || o.size() != size)
        throw std::invalid_argument("apportion input vectors must be non-empty and equal length");
    for (std::size_t i = 0; i < size; ++i)
        if (!(u[i] > 0.0) || !(dg[i] > 0.0) || o[i] <= 0)
            throw std::invalid_argument("apportion inputs must be positive");
    if (!(beta > 0.0 && beta < 0.5))
        throw std::invalid_argument("apportion beta must be in (0, 0.5)");
}

std::pair<double, double> beta_split_two(double u1, double u2, double dg1, double dg2,
                                         double beta) {
    ApportionInput in{{u1, u2}, {dg1, dg2}, {1, 1}, beta};
    in.validate();
    const double denom = u1 * dg2 + u2 * dg1;
    return {u2 * dg1 * beta / denom, u1 * dg2 * beta / denom};
}

ApportionOutput beta_split_tree(const ApportionInput& input) {
    input.validate();
    const std::size_t n = input.n();
    ApportionOutput out;
    out.betas.resize(n);

    if (n <= 8) {
        // beta_i = dg_i * beta * prod_{x!=i} u_x / sum_y (o_y dg_y prod_{x!=y} u_x)
        double denom = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            double term = input.o[y] * input.dg[y];
            for (std::size_t x = 0; x < n; ++x)
                if (x != y) term *= input.u[x];
            denom += term;
        }
        for (std::size_t i = 0; i < n; ++i) {
            double num = input.dg[i] * input.beta;
            for (std::size_t x = 0; x < n; ++x)
                if (x != i) num *= input.u[x];
            out.betas[i] = num / denom;
        }
    } else {
        // log space: beta_i = dg_i * beta / (u_i * S), S = sum_y o_y dg_y / u_y,
        // with S accumulated via log-sum-exp
        double max_log = -INFINITY;
        std::vector<double> logs(n);
        for (std::size_t y = 0; y < n; ++y) {
            logs[y] = std::log(static_cast<double>(input.o[y])) + std::log(input.dg[y]) -
                      std::log(input.u[y]);
            max_log = std::max(max_log, logs[y]);
        }
        double acc = 0.0;
        for (double l : logs) acc += std::exp(l - max_log);
        double log_s = max_log + std::log(acc);
        for (std::size_t i = 0; i < n; ++i)
            out.betas[i] =
                std::exp(std::log(input.dg[i]) + std::log(input.beta) - std::log(input.u[i]) - log_s);
    }

    out.predicted_epsilon = predicted_epsilon(input, out.betas);
    return out;
}

std::vector<double> alpha_split(double alpha, const std::vector<int>& o) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must be in (0, 1)");
    const std::size_t n = o.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = alpha / (static_cast<double>(n) * o[i]);
    return out;
}

double predicted_epsilon(const ApportionInput& input, const std::vector<double>& betas) {
    double eps = 0.0;
    for (std::size_t i = 0; i < input.n(); ++i)
        eps += input.o[i] * input.dg[i] * std::log(1.0 / (2.0 * betas[i])) / input.u[i];
    return eps;
}

namespace {

// objective in log form: sum_i w_i * ln(beta_i), w_i = o_i*dg_i/u_i
double log_objective(const ApportionInput& in, const std::vector<double>& betas) {
    double v = 0.0;
    for (std::size_t i = 0; i < in.n(); ++i)
        v += (in.o[i] * in.dg[i] / in.u[i]) * std::log(betas[i]);
    return v;
}

} // namespace

std::vector<double> numeric_lagrange_oracle(const ApportionInput& input) {
    input.validate();
    const std::size_t n = input.n();
    if (n > 6) throw std::invalid_argument("oracle supports n <= 6");

    // start feasible: o_i * beta_i = beta / n
    std::vector<double> betas(n);
    for (std::size_t i = 0; i < n; ++i) betas[i] = input.beta / (n * input.o[i]);
    if (n == 1) return betas;

    // Pairwise mass exchange: for a pair (i, j) the amount t of constraint
    // mass given to i fixes both coordinates, so we golden-section the 1-D
    // slice. No stationarity algebra anywhere - this is a pure numeric search.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    const int max_sweeps = 4000;
    bool converged = false;
    double last = log_objective(input, betas);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double mass = input.o[i] * betas[i] + input.o[j] * betas[j];
                auto value = [&](double t) {
                    // t = share of mass on i, in (0,1)
                    double bi = t * mass / input.o[i];
                    double bj = (1.0 - t) * mass / input.o[j];
                    return (input.o[i] * input.dg[i] / input.u[i]) * std::log(bi) +
                           (input.o[j] * input.dg[j] / input.u[j]) * std::log(bj);
                };
                double lo = 1e-12, hi = 1.0 - 1e-12;
                double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
                double fa = value(a), fb = value(b);
                while (hi - lo > 1e-14) {
                    if (fa < fb) {
                        lo = a;
                        a = b;
                        fa = fb;
                        b = lo + gr * (hi - lo);
                        fb = value(b);
                    } else {
                        hi = b;
                        b = a;
                        fb = fa;
                        a = hi - gr * (hi - lo);
                        fa = value(a);
                    }
                }
                double t = (lo + hi) / 2.0;
                betas[i] = t * mass / input.o[i];
                betas[j] = (1.0 - t) * mass / input.o[j];
            }
        }
        double cur = log_objective(input, betas);
        if (std::abs(cur - last) < 1e-15) break;
        last = cur;
    }
    return betas;
}

} // namespace dpds
