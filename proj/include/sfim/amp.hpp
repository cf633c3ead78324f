#pragma once

#include "sfim/detect.hpp"

namespace sfim {

// State of the factor-node recursion; Z starts at y so the first Onsager
// correction vanishes.
struct AmpLinearState {
    Eigen::VectorXcd x_hat;  // current means
    Eigen::VectorXd v;       // current variances
    Eigen::VectorXcd z;      // factor-node means Z_j
    Eigen::VectorXd v_phi;   // factor-node variances V_j of the previous step
};

AmpLinearState amp_init(const Eigen::VectorXcd& y, const Eigen::MatrixXd& m2,
                        double init_var);

// One linear half-iteration: updates (Z, V) and emits the decoupled scalar
// observations r_i with effective variances Sigma_i. The Z update keeps the
// printed index placement (current V in the numerator, previous V in the
// denominator of the correction).
void amp_linear_stage(AmpLinearState& st, const Eigen::VectorXcd& y,
                      const Eigen::MatrixXcd& h, const Eigen::MatrixXd& m2,
                      double sigma2, Eigen::VectorXcd& r_out,
                      Eigen::VectorXd& sigma_out,
                      MultCounter* counter = nullptr);

struct MpRunResult {
    Eigen::VectorXcd x_hat;
    std::vector<SymbolPosterior> posteriors;
    std::vector<Eigen::VectorXcd> x_trajectory;  // x_hat after each iteration
    std::vector<Eigen::VectorXd> v_trajectory;
    Eigen::VectorXcd r_final;      // last decoupled observations
    Eigen::VectorXd sigma_final;   // and their variances
};

// Model-free core over an arbitrary linear system and augmented prior.
MpRunResult amp_run(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                    double sigma2, const Eigen::VectorXd& prior,
                    const std::vector<cxd>& alphabet, int iterations,
                    double init_var, const DetectorOptions& opts = {});

// Detector over the group model; initial variance defaults to the sparse
// prior variance p_a Es (set unit_init_variance to reproduce the literal
// unit initialization).
DetectionResult amp_detect(const Eigen::VectorXcd& y,
                           const EquivalentGroupModel& model,
                           int iterations = 10,
                           const DetectorOptions& opts = {},
                           bool unit_init_variance = false);

}  // namespace sfim
