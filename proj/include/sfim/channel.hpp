#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sfim/config.hpp"
#include "sfim/constellation.hpp"
#include "sfim/measurement.hpp"

namespace sfim {

// Frequency-domain Rayleigh channel: i.i.d. CN(0,1) gain per
// (rx antenna, user, subcarrier, tx antenna).
struct ChannelRealization {
    std::uint64_t seed = 0;
    int rx = 0, users = 0, subcarriers = 0, tx = 0;
    Eigen::VectorXcd h;  // flat, indexed by gain()

    const cxd& gain(int rx_ant, int user, int sub, int tx_ant) const {
        return h(((static_cast<Eigen::Index>(rx_ant) * users + user) *
                      subcarriers + sub) * tx + tx_ant);
    }
};

ChannelRealization draw_channel(std::uint64_t seed, const SystemConfig& cfg);

// Per-group equivalent linear model y = h_bar x + w over the augmented
// alphabet. h_bar already folds in the measurement expansion and the
// user-activity mask (inactive users' columns are zero).
struct EquivalentGroupModel {
    Eigen::MatrixXcd h_bar;       // Phi x Omega
    double noise_var = 0.0;       // sigma^2
    std::vector<cxd> alphabet;    // {0} followed by the L constellation points
    Eigen::VectorXd prior;        // L+1 categorical, P(0)=1-p_a, P(q)=p_a/L
    std::vector<std::uint8_t> active;  // per-user activity rho
    SystemConfig cfg;

    double prior_variance() const { return cfg.active_fraction(); }  // p_a * Es
    int n_classes() const { return static_cast<int>(alphabet.size()); }
};

// sigma^2 = p_a * Omega * Es / (Nf * 10^(snr_db/10)), the closed form that
// makes E|h_bar x|^2 / E|w|^2 equal the linear SNR under the i.i.d.
// channel with unit-norm measurement columns.
double noise_variance_for_snr(double snr_db, const SystemConfig& cfg);

EquivalentGroupModel build_group_model(const ChannelRealization& ch,
                                       const MeasurementMatrix& a, int group,
                                       double snr_db,
                                       const std::vector<std::uint8_t>& rho,
                                       const SystemConfig& cfg);

// Explicit H_g (Phi x Nt*Nf*U) from the per-subcarrier blocks; h_bar above
// equals build_group_channel(...) * expanded_measurement(...) (activity aside).
Eigen::MatrixXcd build_group_channel(const ChannelRealization& ch, int group,
                                     const SystemConfig& cfg);

Eigen::VectorXcd transmit(const EquivalentGroupModel& model,
                          const Eigen::VectorXcd& x, std::uint64_t noise_seed);

}  // namespace sfim
