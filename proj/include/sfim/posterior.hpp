#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sfim/constellation.hpp"

namespace sfim {

// Categorical distribution over the augmented alphabet {0} u Q, with its
// first two moments.
struct SymbolPosterior {
    Eigen::VectorXd probs;  // length L+1, aligned with the alphabet order
    cxd mean{0.0, 0.0};
    double var = 0.0;

    void refresh_moments(const std::vector<cxd>& alphabet);
};

// p(a) ~ prior(a) * exp(-|r - a|^2 / sigma), normalized in the log domain.
SymbolPosterior prior_denoise(cxd r, double sigma,
                              const Eigen::VectorXd& prior,
                              const std::vector<cxd>& alphabet);

}  // namespace sfim
