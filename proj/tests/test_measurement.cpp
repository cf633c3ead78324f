#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "sfim/measurement.hpp"
#include "sfim/rng.hpp"

using namespace sfim;

namespace {
SystemConfig small_config() {
    SystemConfig cfg;
    cfg.users = 2;
    cfg.tx_antennas = 2;
    cfg.active_tx = 1;
    cfg.rx_antennas = 4;
    cfg.vd_subcarriers = 4;
    cfg.fd_subcarriers = 2;
    cfg.active_sub = 2;
    cfg.apm_order = 2;
    cfg.active_users = 2;
    return cfg;
}
}  // namespace

TEST_CASE("measurement: unit column norms and determinism") {
    for (auto [nf, nv] : {std::pair{2, 4}, {4, 4}, {3, 8}}) {
        MeasurementMatrix m = gen_measurement(42, nf, nv);
        REQUIRE(m.a.rows() == nf);
        REQUIRE(m.a.cols() == nv);
        for (int c = 0; c < nv; ++c)
            CHECK(std::abs(m.a.col(c).norm() - 1.0) < 1e-10);
    }
    MeasurementMatrix a = gen_measurement(7, 2, 4);
    MeasurementMatrix b = gen_measurement(7, 2, 4);
    CHECK((a.a - b.a).norm() == 0.0);
    MeasurementMatrix c = gen_measurement(8, 2, 4);
    CHECK((a.a - c.a).norm() > 1e-3);
}

TEST_CASE("measurement: orthonormalized square draw is unitary") {
    MeasurementMatrix m = gen_measurement(3, 4, 4, true);
    Eigen::MatrixXcd g = m.a.adjoint() * m.a;
    CHECK((g - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-10);
    CHECK_THROWS_AS(gen_measurement(3, 2, 4, true), ConfigError);
    CHECK_THROWS_AS(gen_measurement(3, 5, 4), ConfigError);
}

TEST_CASE("compress_row: identity measurement and linearity") {
    MeasurementMatrix id;
    id.a = Eigen::MatrixXcd::Identity(4, 4);
    Eigen::VectorXcd r(4);
    r << cxd(1, 2), cxd(0, -1), cxd(3, 0), cxd(-1, -1);
    CHECK((compress_row(r, id) - r).norm() == 0.0);

    MeasurementMatrix m = gen_measurement(5, 2, 4);
    CHECK(compress_row(Eigen::VectorXcd::Zero(4), m).norm() == 0.0);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.a);
    double smax = svd.singularValues()(0);
    Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        Eigen::VectorXcd x(4);
        for (int i = 0; i < 4; ++i) x(i) = rng.next_cgaussian();
        CHECK(compress_row(x, m).norm() <= smax * x.norm() + 1e-12);
        Eigen::VectorXcd y(4);
        for (int i = 0; i < 4; ++i) y(i) = rng.next_cgaussian();
        cxd alpha = rng.next_cgaussian();
        Eigen::VectorXcd lhs = compress_row(alpha * x + y, m);
        Eigen::VectorXcd rhs = alpha * compress_row(x, m) + compress_row(y, m);
        CHECK((lhs - rhs).norm() < 1e-12);
    }
}

TEST_CASE("expanded measurement: identity and single-antenna cases") {
    SystemConfig cfg = small_config();
    cfg.fd_subcarriers = 4;
    MeasurementMatrix id;
    id.a = Eigen::MatrixXcd::Identity(4, 4);
    id.seed = 0;
    Eigen::MatrixXcd abar = expanded_measurement(id, cfg);
    CHECK((abar - Eigen::MatrixXcd::Identity(16, 16)).norm() == 0.0);

    SystemConfig single = cfg;
    single.users = 1;
    single.active_users = 1;
    single.tx_antennas = 1;
    single.active_tx = 1;
    single.fd_subcarriers = 2;
    MeasurementMatrix m = gen_measurement(2, 2, 4);
    CHECK((expanded_measurement(m, single) - m.a).norm() == 0.0);
}

TEST_CASE("expanded measurement agrees with per-row compression") {
    SystemConfig cfg = small_config();
    MeasurementMatrix m = gen_measurement(17, 2, 4);
    Eigen::MatrixXcd abar = expanded_measurement(m, cfg);
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<SfGroupSymbol> row_sets(cfg.users);
        for (auto& s : row_sets) {
            s.matrix.resize(cfg.tx_antennas, cfg.vd_subcarriers);
            for (int t = 0; t < cfg.tx_antennas; ++t)
                for (int v = 0; v < cfg.vd_subcarriers; ++v)
                    s.matrix(t, v) = rng.next_cgaussian();
        }
        Eigen::VectorXcd flat = flatten_groups(row_sets, cfg);
        Eigen::VectorXcd via_abar = abar * flat;

        // reassemble per-row compression in the canonical FD ordering
        Eigen::VectorXcd direct(cfg.tx_antennas * cfg.fd_subcarriers *
                                cfg.users);
        for (int u = 0; u < cfg.users; ++u)
            for (int t = 0; t < cfg.tx_antennas; ++t) {
                Eigen::VectorXcd fd = compress_row(
                    row_sets[u].matrix.row(t).transpose(), m);
                for (int n = 0; n < cfg.fd_subcarriers; ++n)
                    direct((u * cfg.fd_subcarriers + n) * cfg.tx_antennas + t) =
                        fd(n);
            }
        CHECK((via_abar - direct).norm() < 1e-12);
    }
}

TEST_CASE("flatten/unflatten roundtrip preserves structure") {
    SystemConfig cfg = small_config();
    GroupCodec codec(cfg);
    Rng rng(31);
    int nbits = cfg.bits_per_group();
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<SfGroupSymbol> symbols;
        int nnz = 0;
        for (int u = 0; u < cfg.users; ++u) {
            BitVec bits(nbits);
            for (auto& b : bits) b = rng.next_bit();
            symbols.push_back(codec.modulate(bits));
            nnz += cfg.active_tx * cfg.active_sub;
        }
        Eigen::VectorXcd x = flatten_groups(symbols, cfg);
        int flat_nnz = 0;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            if (x(i) != cxd(0.0, 0.0)) ++flat_nnz;
        CHECK(flat_nnz == nnz);

        auto back = unflatten_groups(x, cfg);
        for (int u = 0; u < cfg.users; ++u)
            CHECK((back[u] - symbols[u].matrix).norm() == 0.0);
    }
    CHECK_THROWS_AS(flatten_groups({}, cfg), ContractViolation);
}

TEST_CASE("flatten: single user single antenna is the plain row") {
    SystemConfig cfg;
    cfg.users = 1;
    cfg.active_users = 1;
    cfg.tx_antennas = 1;
    cfg.active_tx = 1;
    cfg.vd_subcarriers = 4;
    cfg.fd_subcarriers = 2;
    cfg.active_sub = 2;
    SfGroupSymbol s;
    s.matrix.resize(1, 4);
    s.matrix << cxd(1, 0), cxd(0, 2), cxd(3, 3), cxd(0, 0);
    Eigen::VectorXcd x = flatten_groups({s}, cfg);
    CHECK((x.transpose() - s.matrix.row(0)).norm() == 0.0);
}

TEST_CASE("measurement file roundtrip") {
    MeasurementMatrix m = gen_measurement(99, 3, 5);
    std::string path = "mm_roundtrip.bin";
    save_measurement(m, path);
    MeasurementMatrix r = load_measurement(path);
    CHECK(r.seed == 99);
    CHECK((r.a - m.a).norm() == 0.0);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_measurement("does_not_exist.bin"), Error);
}
