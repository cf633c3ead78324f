#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sfim/channel.hpp"
#include "sfim/rng.hpp"

using namespace sfim;

namespace {
SystemConfig scheme1_config() {
    SystemConfig cfg;
    cfg.users = 4;
    cfg.tx_antennas = 4;
    cfg.active_tx = 2;
    cfg.rx_antennas = 16;
    cfg.vd_subcarriers = 4;
    cfg.fd_subcarriers = 2;
    cfg.active_sub = 2;
    cfg.apm_order = 2;
    cfg.active_users = 4;
    cfg.lut_kind = LutKind::Paper;
    return cfg;
}
}  // namespace

TEST_CASE("channel draw: unit power, reproducible, decorrelated") {
    SystemConfig cfg = scheme1_config();
    cfg.groups = 8;  // 4096 entries per draw
    double power = 0.0;
    Eigen::Index total = 0;
    for (int rep = 0; rep < 256; ++rep) {
        ChannelRealization ch = draw_channel(1000 + rep, cfg);
        power += ch.h.squaredNorm();
        total += ch.h.size();
    }
    CHECK(total >= 1000000);
    CHECK(std::abs(power / static_cast<double>(total) - 1.0) < 0.01);

    ChannelRealization a = draw_channel(5, cfg);
    ChannelRealization b = draw_channel(5, cfg);
    CHECK((a.h - b.h).norm() == 0.0);

    // empirical correlation between two subcarriers over many draws
    cxd acc(0.0, 0.0);
    int n = 0;
    for (int rep = 0; rep < 1600; ++rep) {
        ChannelRealization ch = draw_channel(40000 + rep, cfg);
        for (int i = 0; i < cfg.rx_antennas; ++i)
            for (int u = 0; u < cfg.users; ++u)
                for (int t = 0; t < cfg.tx_antennas; ++t) {
                    acc += ch.gain(i, u, 0, t) * std::conj(ch.gain(i, u, 1, t));
                    ++n;
                }
    }
    CHECK(n >= 100000);
    CHECK(std::abs(acc) / static_cast<double>(n) < 0.01);
}

TEST_CASE("noise variance closed form") {
    // p_a = 1/4, Omega = 64, Nf = 2 at 0 dB
    SystemConfig cfg = scheme1_config();
    REQUIRE(cfg.vd_dim() == 64);
    REQUIRE(cfg.active_fraction() == doctest::Approx(0.25));
    CHECK(noise_variance_for_snr(0.0, cfg) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("group model: trivial single-path case") {
    SystemConfig cfg;
    cfg.users = 1;
    cfg.active_users = 1;
    cfg.tx_antennas = 1;
    cfg.active_tx = 1;
    cfg.vd_subcarriers = 1;
    cfg.fd_subcarriers = 1;
    cfg.active_sub = 1;
    cfg.rx_antennas = 3;
    cfg.apm_order = 2;
    ChannelRealization ch = draw_channel(2, cfg);
    MeasurementMatrix one;
    one.a = Eigen::MatrixXcd::Ones(1, 1);
    EquivalentGroupModel m = build_group_model(ch, one, 0, 10.0, {1}, cfg);
    REQUIRE(m.h_bar.rows() == 3);
    REQUIRE(m.h_bar.cols() == 1);
    for (int i = 0; i < 3; ++i) CHECK(m.h_bar(i, 0) == ch.gain(i, 0, 0, 0));
}

TEST_CASE("group model: h_bar equals H_g * Abar and masks inactive users") {
    SystemConfig cfg = scheme1_config();
    cfg.users = 2;
    cfg.active_users = 2;
    cfg.rx_antennas = 4;
    cfg.groups = 3;
    ChannelRealization ch = draw_channel(77, cfg);
    MeasurementMatrix a = gen_measurement(13, 2, 4);
    for (int g = 0; g < cfg.groups; ++g) {
        EquivalentGroupModel m = build_group_model(ch, a, g, 5.0, {1, 1}, cfg);
        Eigen::MatrixXcd ref =
            build_group_channel(ch, g, cfg) * expanded_measurement(a, cfg);
        CHECK((m.h_bar - ref).norm() < 1e-12);
    }
    EquivalentGroupModel masked =
        build_group_model(ch, a, 0, 5.0, {0, 1}, cfg);
    CHECK(masked.h_bar.leftCols(cfg.user_block()).norm() == 0.0);
    CHECK(masked.h_bar.rightCols(cfg.user_block()).norm() > 0.0);
    CHECK_THROWS_AS(build_group_model(ch, a, 3, 5.0, {1, 1}, cfg),
                    ContractViolation);
}

TEST_CASE("group model: prior sums to one with mean zero and variance p_a") {
    SystemConfig cfg = scheme1_config();
    ChannelRealization ch = draw_channel(3, cfg);
    MeasurementMatrix a = gen_measurement(4, 2, 4);
    EquivalentGroupModel m = build_group_model(ch, a, 0, 0.0, {1, 1, 1, 1}, cfg);
    CHECK(m.prior.sum() == doctest::Approx(1.0).epsilon(1e-12));
    cxd mean(0, 0);
    double var = 0.0;
    for (int k = 0; k < m.n_classes(); ++k) {
        mean += m.prior(k) * m.alphabet[k];
        var += m.prior(k) * std::norm(m.alphabet[k]);
    }
    CHECK(std::abs(mean) < 1e-12);
    CHECK(var == doctest::Approx(cfg.active_fraction()).epsilon(1e-12));
}

TEST_CASE("transmit: exact at zero noise, pure noise for silent input") {
    SystemConfig cfg = scheme1_config();
    cfg.users = 2;
    cfg.active_users = 2;
    cfg.rx_antennas = 8;
    ChannelRealization ch = draw_channel(8, cfg);
    MeasurementMatrix a = gen_measurement(9, 2, 4);
    EquivalentGroupModel m = build_group_model(ch, a, 0, 10.0, {1, 1}, cfg);

    Rng rng(55);
    Eigen::VectorXcd x(cfg.vd_dim());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.next_cgaussian();

    EquivalentGroupModel noiseless = m;
    noiseless.noise_var = 0.0;
    CHECK((transmit(noiseless, x, 1) - noiseless.h_bar * x).norm() == 0.0);

    // x = 0: sample variance of y approaches sigma^2
    double acc = 0.0;
    Eigen::Index n = 0;
    for (int rep = 0; rep < 20000; ++rep) {
        Eigen::VectorXcd y =
            transmit(m, Eigen::VectorXcd::Zero(cfg.vd_dim()), 900 + rep);
        acc += y.squaredNorm();
        n += y.size();
    }
    CHECK(std::abs(acc / static_cast<double>(n) / m.noise_var - 1.0) < 0.02);

    // same noise seed: transmit(x1+x2) - transmit(x2) = h_bar x1
    Eigen::VectorXcd x2(cfg.vd_dim());
    for (Eigen::Index i = 0; i < x2.size(); ++i) x2(i) = rng.next_cgaussian();
    Eigen::VectorXcd d = transmit(m, x + x2, 42) - transmit(m, x2, 42);
    CHECK((d - m.h_bar * x).norm() < 1e-9);

    // all-inactive: received signal is exactly the noise realization
    EquivalentGroupModel idle = build_group_model(ch, a, 0, 10.0, {0, 0}, cfg);
    CHECK(idle.h_bar.norm() == 0.0);
}

TEST_CASE("snr calibration: realized signal-to-noise ratio matches the dial") {
    SystemConfig cfg = scheme1_config();
    cfg.users = 2;
    cfg.active_users = 2;
    cfg.rx_antennas = 8;
    GroupCodec codec(cfg);
    MeasurementMatrix a = gen_measurement(21, 2, 4);
    double snr_db = 7.0;

    double sig = 0.0, noise = 0.0;
    Rng rng(66);
    int nbits = cfg.bits_per_group();
    for (int trial = 0; trial < 10000; ++trial) {
        ChannelRealization ch = draw_channel(split_seed(123, trial), cfg);
        EquivalentGroupModel m =
            build_group_model(ch, a, 0, snr_db, {1, 1}, cfg);
        std::vector<SfGroupSymbol> symbols;
        for (int u = 0; u < cfg.users; ++u) {
            BitVec bits(nbits);
            for (auto& b : bits) b = rng.next_bit();
            symbols.push_back(codec.modulate(bits));
        }
        Eigen::VectorXcd x = flatten_groups(symbols, cfg);
        sig += (m.h_bar * x).squaredNorm();
        noise += m.noise_var * cfg.rx_dim();
    }
    double realized = sig / noise;
    CHECK(std::abs(realized / std::pow(10.0, snr_db / 10.0) - 1.0) < 0.03);
}

TEST_CASE("gram expectation: Nr I for a unitary measurement") {
    SystemConfig cfg = scheme1_config();
    cfg.users = 1;
    cfg.active_users = 1;
    cfg.rx_antennas = 4;
    cfg.fd_subcarriers = 4;  // square, orthonormalized
    MeasurementMatrix a = gen_measurement(5, 4, 4, true);
    Eigen::MatrixXcd acc =
        Eigen::MatrixXcd::Zero(cfg.vd_dim(), cfg.vd_dim());
    int reps = 10000;
    for (int rep = 0; rep < reps; ++rep) {
        ChannelRealization ch = draw_channel(split_seed(9, rep), cfg);
        EquivalentGroupModel m = build_group_model(ch, a, 0, 0.0, {1}, cfg);
        acc += m.h_bar.adjoint() * m.h_bar;
    }
    acc /= static_cast<double>(reps);
    double nr = cfg.rx_antennas;
    for (int i = 0; i < cfg.vd_dim(); ++i) {
        CHECK(std::abs(acc(i, i).real() / nr - 1.0) < 0.05);
        for (int j = 0; j < cfg.vd_dim(); ++j)
            if (i != j) CHECK(std::abs(acc(i, j)) < 0.05 * nr);
    }
}

TEST_CASE("gram expectation: general measurement follows the gram of Abar") {
    // for Nf < Nv the expectation is Nr * Abar^H Abar, not Nr * I
    SystemConfig cfg = scheme1_config();
    cfg.users = 1;
    cfg.active_users = 1;
    cfg.rx_antennas = 4;
    MeasurementMatrix a = gen_measurement(31, 2, 4);
    Eigen::MatrixXcd abar = expanded_measurement(a, cfg);
    Eigen::MatrixXcd expect = cfg.rx_antennas * (abar.adjoint() * abar);
    Eigen::MatrixXcd acc =
        Eigen::MatrixXcd::Zero(cfg.vd_dim(), cfg.vd_dim());
    int reps = 10000;
    for (int rep = 0; rep < reps; ++rep) {
        ChannelRealization ch = draw_channel(split_seed(77, rep), cfg);
        EquivalentGroupModel m = build_group_model(ch, a, 0, 0.0, {1}, cfg);
        acc += m.h_bar.adjoint() * m.h_bar;
    }
    acc /= static_cast<double>(reps);
    CHECK((acc - expect).norm() / expect.norm() < 0.05);
}
