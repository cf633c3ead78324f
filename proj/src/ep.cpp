#include "sfim/ep.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace sfim {

EpWorkspace ep_workspace(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                         MultCounter* counter) {
    EpWorkspace ws;
    ws.gram = h.adjoint() * h;
    ws.hy = h.adjoint() * y;
    if (counter) {
        counter->add_complex(static_cast<std::uint64_t>(h.cols()) * h.cols() *
                             h.rows());
        counter->add_complex(static_cast<std::uint64_t>(h.cols()) * h.rows());
    }
    return ws;
}

EpObservation ep_observation(const EpSites& sites, double sigma2,
                             const EpWorkspace& ws, MultCounter* counter) {
    const Eigen::Index omega = ws.gram.rows();
    if ((sites.v.array() <= 0.0).any())
        throw ContractViolation("ep_observation: site variances must be positive");

    Eigen::MatrixXcd m = ws.gram / sigma2;
    m.diagonal() += sites.v.cast<cxd>();

    Eigen::LLT<Eigen::MatrixXcd> llt(m);
    if (llt.info() != Eigen::Success)
        throw NumericError("ep_observation: factorization failed");
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < omega; ++i) {
        double d = std::abs(llt.matrixLLT()(i, i));
        dmax = std::max(dmax, d);
        dmin = std::min(dmin, d);
    }
    if (!(dmin > 0.0) || !std::isfinite(dmax))
        throw NumericError("ep_observation: singular system",
                           (dmax / dmin) * (dmax / dmin));

    EpObservation obs;
    obs.mu = llt.solve(ws.hy / sigma2 + sites.eta);

    // Sigma_ii from the inverse Cholesky factor: Sigma = L^-H L^-1
    Eigen::MatrixXcd linv = Eigen::MatrixXcd::Identity(omega, omega);
    llt.matrixL().solveInPlace(linv);
    obs.sigma_diag.resize(omega);
    for (Eigen::Index i = 0; i < omega; ++i)
        obs.sigma_diag(i) = linv.col(i).squaredNorm();

    if (counter) {
        auto n = static_cast<std::uint64_t>(omega);
        counter->add_complex(n * n * n / 6);  // factorization
        counter->add_complex(n * n * n / 6);  // triangular inverse
        counter->add_complex(2 * n * n);      // solve for mu
        counter->add_real(2 * n * n);         // diagonal norms
    }

    obs.cavity_mean.resize(omega);
    obs.cavity_var.resize(omega);
    for (Eigen::Index i = 0; i < omega; ++i) {
        double d = 1.0 - obs.sigma_diag(i) * sites.v(i);
        double vo = d <= kVarFloor ? kVarCeiling : obs.sigma_diag(i) / d;
        vo = std::min(std::max(vo, kVarFloor), kVarCeiling);
        obs.cavity_var(i) = vo;
        obs.cavity_mean(i) =
            vo * (obs.mu(i) / obs.sigma_diag(i) - sites.eta(i));
    }
    return obs;
}

void ep_update_site(cxd m_hat, double v_hat, cxd m_o, double v_o, double eps,
                    cxd& eta_i, double& v_i) {
    double v_new = 1.0 / v_hat - 1.0 / v_o;
    cxd eta_new = m_hat / v_hat - m_o / v_o;
    if (v_new < 0.0) {  // no matching Gaussian site; keep the previous pair
        v_new = v_i;
        eta_new = eta_i;
    }
    v_i = (1.0 - eps) * v_new + eps * v_i;
    eta_i = (1.0 - eps) * eta_new + eps * eta_i;
    v_i = std::min(std::max(v_i, kVarFloor), kVarCeiling);
}

MpRunResult ep_run(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                   double sigma2, const Eigen::VectorXd& prior,
                   const std::vector<cxd>& alphabet, int iterations,
                   double eps, double prior_var, const DetectorOptions& opts) {
    if (iterations < 1)
        throw ContractViolation("ep_run: need at least one iteration");
    if (eps < 0.0 || eps > 1.0)
        throw ContractViolation("ep_run: damping must lie in [0, 1]");
    const Eigen::Index omega = h.cols();

    EpWorkspace ws = ep_workspace(y, h, opts.counter);
    EpSites sites{Eigen::VectorXcd::Zero(omega),
                  Eigen::VectorXd::Constant(omega, 1.0 / prior_var)};

    MpRunResult res;
    res.posteriors.resize(omega);
    Eigen::VectorXcd m_hat(omega);
    Eigen::VectorXd v_hat(omega);

    for (int t = 1; t <= iterations; ++t) {
        EpObservation obs = ep_observation(sites, sigma2, ws, opts.counter);
        for (Eigen::Index i = 0; i < omega; ++i) {
            res.posteriors[i] = prior_denoise(obs.cavity_mean(i),
                                              obs.cavity_var(i), prior,
                                              alphabet);
            m_hat(i) = res.posteriors[i].mean;
            v_hat(i) = std::max(res.posteriors[i].var, kVarFloor);
            ep_update_site(m_hat(i), v_hat(i), obs.cavity_mean(i),
                           obs.cavity_var(i), eps, sites.eta(i), sites.v(i));
        }
        if (opts.counter)
            opts.counter->add_real(static_cast<std::uint64_t>(omega) *
                                   (alphabet.size() * 8 + 12));
        res.x_trajectory.push_back(m_hat);
        res.v_trajectory.push_back(v_hat);
        if (opts.trace)
            opts.trace->push_back({t, (y - h * m_hat).norm(), v_hat.mean()});
        res.r_final = obs.cavity_mean;
        res.sigma_final = obs.cavity_var;
    }
    res.x_hat = m_hat;
    return res;
}

DetectionResult ep_detect(const Eigen::VectorXcd& y,
                          const EquivalentGroupModel& model, int iterations,
                          double eps, const DetectorOptions& opts) {
    MpRunResult run =
        ep_run(y, model.h_bar, model.noise_var, model.prior, model.alphabet,
               iterations, eps, model.prior_variance(), opts);
    DetectionResult out;
    out.x_hat = run.x_hat;
    out.posteriors = std::move(run.posteriors);
    out.hard_bits = bits_from_posteriors(out.posteriors, model);
    return out;
}

}  // namespace sfim
