#include "sfim/channel.hpp"

#include <cmath>

#include "sfim/rng.hpp"

namespace sfim {

ChannelRealization draw_channel(std::uint64_t seed, const SystemConfig& cfg) {
    cfg.validate();
    ChannelRealization ch;
    ch.seed = seed;
    ch.rx = cfg.rx_antennas;
    ch.users = cfg.users;
    ch.subcarriers = cfg.total_subcarriers();
    ch.tx = cfg.tx_antennas;
    Eigen::Index n = static_cast<Eigen::Index>(ch.rx) * ch.users *
                     ch.subcarriers * ch.tx;
    ch.h.resize(n);
    Rng rng(split_seed(seed, 0xC4A7));
    for (Eigen::Index i = 0; i < n; ++i) ch.h(i) = rng.next_cgaussian();
    return ch;
}

double noise_variance_for_snr(double snr_db, const SystemConfig& cfg) {
    double es = 1.0;
    return cfg.active_fraction() * cfg.vd_dim() * es /
           (cfg.fd_subcarriers * std::pow(10.0, snr_db / 10.0));
}

Eigen::MatrixXcd build_group_channel(const ChannelRealization& ch, int group,
                                     const SystemConfig& cfg) {
    if (group < 0 || group >= cfg.groups)
        throw ContractViolation("build_group_channel: group index out of range");
    const int nt = cfg.tx_antennas, nf = cfg.fd_subcarriers;
    Eigen::MatrixXcd hg = Eigen::MatrixXcd::Zero(
        cfg.rx_dim(), static_cast<Eigen::Index>(nt) * nf * cfg.users);
    for (int i = 0; i < cfg.rx_antennas; ++i)
        for (int u = 0; u < cfg.users; ++u)
            for (int n = 0; n < nf; ++n)
                for (int t = 0; t < nt; ++t)
                    hg(i * nf + n, (u * nf + n) * nt + t) =
                        ch.gain(i, u, group * nf + n, t);
    return hg;
}

EquivalentGroupModel build_group_model(const ChannelRealization& ch,
                                       const MeasurementMatrix& a, int group,
                                       double snr_db,
                                       const std::vector<std::uint8_t>& rho,
                                       const SystemConfig& cfg) {
    cfg.validate();
    if (group < 0 || group >= cfg.groups)
        throw ContractViolation("build_group_model: group index out of range");
    if (static_cast<int>(rho.size()) != cfg.users)
        throw ContractViolation("build_group_model: activity mask size mismatch");

    const int nt = cfg.tx_antennas, nv = cfg.vd_subcarriers,
              nf = cfg.fd_subcarriers;

    EquivalentGroupModel m;
    m.cfg = cfg;
    m.active = rho;
    m.noise_var = noise_variance_for_snr(snr_db, cfg);

    // h_bar[(i,n),(u,v,t)] = rho_u * h(i,u,n_g,t) * A(n,v): the measurement
    // expansion collapses because A acts per antenna row.
    m.h_bar = Eigen::MatrixXcd::Zero(cfg.rx_dim(), cfg.vd_dim());
    for (int i = 0; i < cfg.rx_antennas; ++i)
        for (int n = 0; n < nf; ++n) {
            int row = i * nf + n;
            for (int u = 0; u < cfg.users; ++u) {
                if (!rho[u]) continue;
                for (int v = 0; v < nv; ++v)
                    for (int t = 0; t < nt; ++t)
                        m.h_bar(row, cfg.vd_index(u, v, t)) =
                            ch.gain(i, u, group * nf + n, t) * a.a(n, v);
            }
        }

    Constellation apm = make_constellation(cfg.apm_order);
    m.alphabet = augmented_alphabet(apm);
    double pa = cfg.active_fraction();
    m.prior.resize(cfg.apm_order + 1);
    m.prior(0) = 1.0 - pa;
    for (int q = 0; q < cfg.apm_order; ++q) m.prior(q + 1) = pa / cfg.apm_order;
    return m;
}

Eigen::VectorXcd transmit(const EquivalentGroupModel& model,
                          const Eigen::VectorXcd& x,
                          std::uint64_t noise_seed) {
    if (x.size() != model.h_bar.cols())
        throw ContractViolation("transmit: dimension mismatch");
    Eigen::VectorXcd y = model.h_bar * x;
    if (model.noise_var > 0.0) {
        Rng rng(split_seed(noise_seed, 0x2077));
        double s = std::sqrt(model.noise_var);
        for (Eigen::Index j = 0; j < y.size(); ++j)
            y(j) += s * rng.next_cgaussian();
    }
    return y;
}

}  // namespace sfim
