#include "sfim/posterior.hpp"

#include <cmath>

#include "sfim/errors.hpp"

namespace sfim {

void SymbolPosterior::refresh_moments(const std::vector<cxd>& alphabet) {
    mean = {0.0, 0.0};
    double e2 = 0.0;
    for (std::size_t k = 0; k < alphabet.size(); ++k) {
        mean += probs(static_cast<Eigen::Index>(k)) * alphabet[k];
        e2 += probs(static_cast<Eigen::Index>(k)) * std::norm(alphabet[k]);
    }
    var = std::max(0.0, e2 - std::norm(mean));
}

SymbolPosterior prior_denoise(cxd r, double sigma,
                              const Eigen::VectorXd& prior,
                              const std::vector<cxd>& alphabet) {
    if (!(sigma > 0.0))
        throw ContractViolation("prior_denoise: sigma must be positive");
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()) ||
        !std::isfinite(sigma))
        throw NumericError("prior_denoise: non-finite input");

    const auto n = static_cast<Eigen::Index>(alphabet.size());
    Eigen::VectorXd logw(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double lp = prior(k) > 0.0 ? std::log(prior(k))
                                   : -std::numeric_limits<double>::infinity();
        logw(k) = lp - std::norm(r - alphabet[k]) / sigma;
    }
    // max-shifted normalization; degenerates to a delta at the best point
    // when everything else underflows
    double m = logw.maxCoeff();
    SymbolPosterior post;
    post.probs.resize(n);
    double sum = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        double w = std::isfinite(logw(k)) ? std::exp(logw(k) - m) : 0.0;
        post.probs(k) = w;
        sum += w;
    }
    post.probs /= sum;
    post.refresh_moments(alphabet);
    return post;
}

}  // namespace sfim
