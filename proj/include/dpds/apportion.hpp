#pragma once

#include <vector>

namespace dpds {

// Inputs to the closed-form FNR budget split: per-sub-query uncertain regions
// u_i, sensitivities dg_i, occurrence counts o_i, and the overall bound beta.
struct ApportionInput {
    std::vector<double> u;
    std::vector<double> dg;
    std::vector<int> o;
    double beta = 0.0;

    std::size_t n() const { return u.size(); }
    void validate() const;
};

struct ApportionOutput {
    std::vector<double> betas;       // beta_i, sum_i o_i*beta_i == beta
    double predicted_epsilon = 0.0;  // sum_i o_i*dg_i*ln(1/(2*beta_i))/u_i
};

// Two-query closed form: beta_1 = u2*dg1*beta / (u1*dg2 + u2*dg1), symmetric
// for beta_2.
std::pair<double, double> beta_split_two(double u1, double u2, double dg1, double dg2,
                                         double beta);

// General closed form
//   beta_i = dg_i * beta * prod_{x != i} u_x / sum_y (o_y * dg_y * prod_{x != y} u_x)
// computed in log space for n > 8.
ApportionOutput beta_split_tree(const ApportionInput& input);

// Per-sub-query allowed false-positive fraction alpha_i = alpha / (n * o_i),
// so that sum_i o_i * alpha_i <= alpha.
std::vector<double> alpha_split(double alpha, const std::vector<int>& o);

double predicted_epsilon(const ApportionInput& input, const std::vector<double>& betas);

// Numeric verification oracle: maximizes prod_i beta_i^{o_i*dg_i/u_i} subject
// to sum_i o_i*beta_i = beta by pairwise golden-section ascent. Independent of
// the closed form above. n <= 6.
std::vector<double> numeric_lagrange_oracle(const ApportionInput& input);

} // namespace dpds
