#pragma once

#include "sfim/channel.hpp"
#include "sfim/codec.hpp"
#include "sfim/measurement.hpp"
#include "sfim/rng.hpp"

namespace sfim::testing {

inline SystemConfig reduced_scheme1(int users = 2, int rx = 8) {
    SystemConfig cfg;
    cfg.users = users;
    cfg.tx_antennas = 4;
    cfg.active_tx = 2;
    cfg.rx_antennas = rx;
    cfg.vd_subcarriers = 4;
    cfg.fd_subcarriers = 2;
    cfg.active_sub = 2;
    cfg.apm_order = 2;
    cfg.active_users = users;
    cfg.lut_kind = LutKind::Paper;
    return cfg;
}

inline SystemConfig tiny_config() {
    SystemConfig cfg;
    cfg.users = 1;
    cfg.tx_antennas = 2;
    cfg.active_tx = 1;
    cfg.rx_antennas = 4;
    cfg.vd_subcarriers = 2;
    cfg.fd_subcarriers = 2;
    cfg.active_sub = 1;
    cfg.apm_order = 2;
    cfg.active_users = 1;
    return cfg;
}

// Synthetic model around an explicit matrix; bypasses the SFIM chain for
// detector-level tests.
inline EquivalentGroupModel synthetic_model(const Eigen::MatrixXcd& h,
                                            double noise_var, double p_active,
                                            int apm_order,
                                            const SystemConfig& cfg = {}) {
    EquivalentGroupModel m;
    m.h_bar = h;
    m.noise_var = noise_var;
    Constellation c = make_constellation(apm_order);
    m.alphabet = augmented_alphabet(c);
    m.prior.resize(apm_order + 1);
    m.prior(0) = 1.0 - p_active;
    for (int q = 0; q < apm_order; ++q) m.prior(q + 1) = p_active / apm_order;
    m.cfg = cfg;
    m.cfg.apm_order = apm_order;
    m.active.assign(std::max(1, cfg.users), 1);
    return m;
}

// unitary matrix via a seeded orthonormalized square draw
inline Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
    return gen_measurement(seed, n, n, true).a;
}

// prior-distributed vector over the augmented alphabet
inline Eigen::VectorXcd draw_prior_vector(const EquivalentGroupModel& m,
                                          Rng& rng,
                                          std::vector<int>* labels = nullptr) {
    Eigen::VectorXcd x(m.h_bar.cols());
    if (labels) labels->resize(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double u = rng.next_unit();
        int cls = 0;
        double acc = 0.0;
        for (int k = 0; k < m.n_classes(); ++k) {
            acc += m.prior(k);
            if (u <= acc) {
                cls = k;
                break;
            }
        }
        x(i) = m.alphabet[cls];
        if (labels) (*labels)[static_cast<std::size_t>(i)] = cls;
    }
    return x;
}

struct Instance {
    EquivalentGroupModel model;
    Eigen::VectorXcd x;
    Eigen::VectorXcd y;
    std::vector<BitVec> tx_bits;  // per user; empty for inactive users
};

// full modulation chain instance at the given SNR
inline Instance make_instance(const SystemConfig& cfg, double snr_db,
                              std::uint64_t seed,
                              const MeasurementMatrix& a) {
    Rng rng(split_seed(seed, 0xBEEF));
    GroupCodec codec(cfg);
    std::vector<std::uint8_t> rho(cfg.users, 0);
    std::vector<int> order(cfg.users);
    for (int u = 0; u < cfg.users; ++u) order[u] = u;
    for (int u = 0; u < cfg.users; ++u)
        std::swap(order[u], order[u + rng.next_below(cfg.users - u)]);
    for (int k = 0; k < cfg.active_users; ++k) rho[order[k]] = 1;

    Instance inst;
    inst.tx_bits.resize(cfg.users);
    std::vector<SfGroupSymbol> symbols;
    for (int u = 0; u < cfg.users; ++u) {
        BitVec bits(cfg.bits_per_group(), 0);
        if (rho[u])
            for (auto& b : bits) b = rng.next_bit();
        symbols.push_back(codec.modulate(bits));
        if (rho[u]) inst.tx_bits[u] = bits;
        if (!rho[u]) symbols.back().matrix.setZero();
    }
    Eigen::VectorXcd x = flatten_groups(symbols, cfg);

    ChannelRealization ch = draw_channel(split_seed(seed, 1), cfg);
    inst.model = build_group_model(ch, a, 0, snr_db, rho, cfg);
    inst.x = x;
    inst.y = transmit(inst.model, x, split_seed(seed, 2));
    return inst;
}

}  // namespace sfim::testing
