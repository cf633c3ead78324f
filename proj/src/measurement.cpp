#include "sfim/measurement.hpp"

#include <Eigen/QR>
#include <cstring>
#include <fstream>

#include "sfim/rng.hpp"

namespace sfim {

MeasurementMatrix gen_measurement(std::uint64_t seed, int nf, int nv,
                                  bool orthonormalize) {
    if (nf < 1 || nv < 1 || nf > nv)
        throw ConfigError("gen_measurement: need 1 <= Nf <= Nv");
    if (orthonormalize && nf != nv)
        throw ConfigError("gen_measurement: orthonormalize requires Nf == Nv");

    Rng rng(split_seed(seed, 0xA5EA));
    Eigen::MatrixXcd a(nf, nv);
    for (int r = 0; r < nf; ++r)
        for (int c = 0; c < nv; ++c) a(r, c) = rng.next_cgaussian();

    if (orthonormalize) {
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
        Eigen::MatrixXcd q = qr.householderQ();
        // fix the phase so the result is a deterministic function of the draw
        Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int c = 0; c < nv; ++c) {
            cxd d = r(c, c);
            double m = std::abs(d);
            q.col(c) *= (m > 0 ? d / m : cxd(1.0, 0.0));
        }
        a = q;
    } else {
        for (int c = 0; c < nv; ++c) a.col(c) /= a.col(c).norm();
    }
    return {a, seed};
}

Eigen::VectorXcd compress_row(const Eigen::VectorXcd& vd_row,
                              const MeasurementMatrix& m) {
    if (vd_row.size() != m.a.cols())
        throw ContractViolation("compress_row: length mismatch");
    return m.a * vd_row;
}

Eigen::MatrixXcd expanded_measurement(const MeasurementMatrix& m,
                                      const SystemConfig& cfg) {
    cfg.validate();
    const int nt = cfg.tx_antennas, nv = cfg.vd_subcarriers,
              nf = cfg.fd_subcarriers, u = cfg.users;
    if (m.a.rows() != nf || m.a.cols() != nv)
        throw ContractViolation("expanded_measurement: matrix shape mismatch");

    Eigen::MatrixXcd abar =
        Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nt) * nf * u,
                               static_cast<Eigen::Index>(nt) * nv * u);
    for (int uu = 0; uu < u; ++uu)
        for (int n = 0; n < nf; ++n)
            for (int v = 0; v < nv; ++v)
                for (int t = 0; t < nt; ++t)
                    abar((uu * nf + n) * nt + t, (uu * nv + v) * nt + t) =
                        m.a(n, v);
    return abar;
}

Eigen::VectorXcd flatten_groups(const std::vector<SfGroupSymbol>& symbols,
                                const SystemConfig& cfg) {
    if (static_cast<int>(symbols.size()) != cfg.users)
        throw ContractViolation("flatten_groups: one symbol per user required");
    Eigen::VectorXcd x(cfg.vd_dim());
    for (int u = 0; u < cfg.users; ++u)
        for (int v = 0; v < cfg.vd_subcarriers; ++v)
            for (int t = 0; t < cfg.tx_antennas; ++t)
                x(cfg.vd_index(u, v, t)) = symbols[u].matrix(t, v);
    return x;
}

std::vector<Eigen::MatrixXcd> unflatten_groups(const Eigen::VectorXcd& x,
                                               const SystemConfig& cfg) {
    if (x.size() != cfg.vd_dim())
        throw ContractViolation("unflatten_groups: length mismatch");
    std::vector<Eigen::MatrixXcd> out(
        cfg.users,
        Eigen::MatrixXcd::Zero(cfg.tx_antennas, cfg.vd_subcarriers));
    for (int u = 0; u < cfg.users; ++u)
        for (int v = 0; v < cfg.vd_subcarriers; ++v)
            for (int t = 0; t < cfg.tx_antennas; ++t)
                out[u](t, v) = x(cfg.vd_index(u, v, t));
    return out;
}

namespace {
constexpr char kMagic[8] = {'S', 'F', 'I', 'M', 'A', 'M', 'A', 'T'};

template <typename T>
void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
T get(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}
}  // namespace

void save_measurement(const MeasurementMatrix& m, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path + " for writing");
    os.write(kMagic, 8);
    put<std::uint32_t>(os, 1);  // version
    put<std::uint32_t>(os, static_cast<std::uint32_t>(m.a.rows()));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(m.a.cols()));
    put<std::uint64_t>(os, m.seed);
    for (Eigen::Index r = 0; r < m.a.rows(); ++r)
        for (Eigen::Index c = 0; c < m.a.cols(); ++c) {
            put<double>(os, m.a(r, c).real());
            put<double>(os, m.a(r, c).imag());
        }
    if (!os) throw Error("short write to " + path);
}

MeasurementMatrix load_measurement(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0)
        throw Error(path + ": not a measurement-matrix file");
    auto version = get<std::uint32_t>(is);
    if (version != 1) throw Error(path + ": unsupported version");
    auto nf = get<std::uint32_t>(is);
    auto nv = get<std::uint32_t>(is);
    MeasurementMatrix m;
    m.seed = get<std::uint64_t>(is);
    m.a.resize(nf, nv);
    for (std::uint32_t r = 0; r < nf; ++r)
        for (std::uint32_t c = 0; c < nv; ++c) {
            double re = get<double>(is);
            double im = get<double>(is);
            m.a(r, c) = cxd(re, im);
        }
    if (!is) throw Error(path + ": truncated file");
    return m;
}

}  // namespace sfim
