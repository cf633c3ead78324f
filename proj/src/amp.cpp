#include "sfim/amp.hpp"

#include <cmath>

namespace sfim {

AmpLinearState amp_init(const Eigen::VectorXcd& y, const Eigen::MatrixXd& m2,
                        double init_var) {
    AmpLinearState st;
    st.x_hat = Eigen::VectorXcd::Zero(m2.cols());
    st.v = Eigen::VectorXd::Constant(m2.cols(), init_var);
    st.z = y;
    st.v_phi = m2 * st.v;
    return st;
}

void amp_linear_stage(AmpLinearState& st, const Eigen::VectorXcd& y,
                      const Eigen::MatrixXcd& h, const Eigen::MatrixXd& m2,
                      double sigma2, Eigen::VectorXcd& r_out,
                      Eigen::VectorXd& sigma_out, MultCounter* counter) {
    const Eigen::Index phi = h.rows(), omega = h.cols();

    Eigen::VectorXd v_phi = m2 * st.v;
    Eigen::VectorXcd z_new =
        h * st.x_hat -
        (v_phi.array() * (y - st.z).array() / (sigma2 + st.v_phi.array()))
            .matrix();

    Eigen::VectorXd w = (sigma2 + v_phi.array()).inverse().matrix();
    sigma_out = (m2.transpose() * w).array().inverse().matrix();
    r_out = st.x_hat +
            (sigma_out.array() *
             (h.adjoint() * (w.asDiagonal() * (y - z_new)).eval()).array())
                .matrix();

    if (counter) {
        counter->add_real(static_cast<std::uint64_t>(phi) * omega);     // V
        counter->add_complex(static_cast<std::uint64_t>(phi) * omega);  // Hx
        counter->add_real(2 * static_cast<std::uint64_t>(phi));
        counter->add_real(static_cast<std::uint64_t>(phi) * omega);     // Sigma
        counter->add_complex(static_cast<std::uint64_t>(phi) * omega);  // r
        counter->add_real(2 * static_cast<std::uint64_t>(phi) +
                          2 * static_cast<std::uint64_t>(omega));
    }

    st.z = std::move(z_new);
    st.v_phi = std::move(v_phi);
}

MpRunResult amp_run(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                    double sigma2, const Eigen::VectorXd& prior,
                    const std::vector<cxd>& alphabet, int iterations,
                    double init_var, const DetectorOptions& opts) {
    if (iterations < 1)
        throw ContractViolation("amp_run: need at least one iteration");
    const Eigen::Index omega = h.cols();

    Eigen::MatrixXd m2 = h.cwiseAbs2();
    if (opts.counter)
        opts.counter->add_real(2 * static_cast<std::uint64_t>(h.size()));

    AmpLinearState st = amp_init(y, m2, init_var);
    MpRunResult res;
    res.posteriors.resize(omega);

    Eigen::VectorXcd r(omega);
    Eigen::VectorXd sigma(omega);
    for (int t = 1; t <= iterations; ++t) {
        amp_linear_stage(st, y, h, m2, sigma2, r, sigma, opts.counter);
        for (Eigen::Index i = 0; i < omega; ++i) {
            if (!std::isfinite(r(i).real()) || !std::isfinite(r(i).imag()) ||
                !std::isfinite(sigma(i)) || sigma(i) <= 0.0)
                throw NumericError("amp: non-finite message at iteration " +
                                   std::to_string(t));
            res.posteriors[i] = prior_denoise(r(i), sigma(i), prior, alphabet);
            st.x_hat(i) = res.posteriors[i].mean;
            st.v(i) = res.posteriors[i].var;
        }
        if (opts.counter)
            opts.counter->add_real(static_cast<std::uint64_t>(omega) *
                                   alphabet.size() * 8);
        res.x_trajectory.push_back(st.x_hat);
        res.v_trajectory.push_back(st.v);
        if (opts.trace)
            opts.trace->push_back({t, (y - h * st.x_hat).norm(), st.v.mean()});
    }
    res.x_hat = st.x_hat;
    res.r_final = r;
    res.sigma_final = sigma;
    return res;
}

DetectionResult amp_detect(const Eigen::VectorXcd& y,
                           const EquivalentGroupModel& model, int iterations,
                           const DetectorOptions& opts,
                           bool unit_init_variance) {
    double init_var = unit_init_variance ? 1.0 : model.prior_variance();
    MpRunResult run = amp_run(y, model.h_bar, model.noise_var, model.prior,
                              model.alphabet, iterations, init_var, opts);
    DetectionResult out;
    out.x_hat = run.x_hat;
    out.posteriors = std::move(run.posteriors);
    out.hard_bits = bits_from_posteriors(out.posteriors, model);
    return out;
}

}  // namespace sfim
