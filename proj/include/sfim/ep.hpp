#pragma once

#include "sfim/amp.hpp"
#include "sfim/detect.hpp"

namespace sfim {

// Numerical guards shared by the EP family.
inline constexpr double kVarFloor = 1e-10;
inline constexpr double kVarCeiling = 1e10;

// Gaussian site parameters: t(x_i) = exp(-V_i |x_i|^2 / ... ) with natural
// parameters (eta_i, V_i); V stays positive throughout.
struct EpSites {
    Eigen::VectorXcd eta;
    Eigen::VectorXd v;  // diagonal of V
};

struct EpObservation {
    Eigen::VectorXcd mu;          // posterior mean under the Gaussian sites
    Eigen::VectorXd sigma_diag;   // diagonal of the posterior covariance
    Eigen::VectorXcd cavity_mean;  // m_o
    Eigen::VectorXd cavity_var;    // v_o
};

// Fixed per-detect pieces.
struct EpWorkspace {
    Eigen::MatrixXcd gram;  // H^H H
    Eigen::VectorXcd hy;    // H^H y
};
EpWorkspace ep_workspace(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                         MultCounter* counter = nullptr);

// Observation module: Sigma = (sigma^-2 H^H H + diag(V))^-1,
// mu = Sigma (sigma^-2 H^H y + eta), and the per-site cavity obtained by
// dividing out the Gaussian site. Near-singular cavities are clamped to the
// variance ceiling instead of overflowing.
EpObservation ep_observation(const EpSites& sites, double sigma2,
                             const EpWorkspace& ws,
                             MultCounter* counter = nullptr);

// Moment-matched site update for one component with negative-variance
// guard; damping weight eps blends toward the previous pair.
void ep_update_site(cxd m_hat, double v_hat, cxd m_o, double v_o, double eps,
                    cxd& eta_i, double& v_i);

MpRunResult ep_run(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                   double sigma2, const Eigen::VectorXd& prior,
                   const std::vector<cxd>& alphabet, int iterations,
                   double eps, double prior_var,
                   const DetectorOptions& opts = {});

DetectionResult ep_detect(const Eigen::VectorXcd& y,
                          const EquivalentGroupModel& model,
                          int iterations = 10, double eps = 0.05,
                          const DetectorOptions& opts = {});

}  // namespace sfim
