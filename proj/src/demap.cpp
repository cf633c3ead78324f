#include "sfim/demap.hpp"

#include <cmath>
#include <limits>

namespace sfim {

namespace {
double log_prob(const SymbolPosterior& p, int cls) {
    double v = p.probs(cls);
    return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
}
}  // namespace

ProjectedGroup project_legal(const std::vector<SymbolPosterior>& posteriors,
                             const GroupCodec& codec) {
    const SystemConfig& cfg = codec.cfg;
    const int nt = cfg.tx_antennas, nv = cfg.vd_subcarriers, L = cfg.apm_order;
    if (static_cast<int>(posteriors.size()) != nt * nv)
        throw ContractViolation("project_legal: need Nt*Nv posteriors");

    auto post = [&](int v, int t) -> const SymbolPosterior& {
        return posteriors[v * nt + t];
    };

    // per-position best constellation symbol (class indices 1..L)
    Eigen::MatrixXd best_sym_score(nt, nv);
    Eigen::MatrixXi best_sym(nt, nv);
    for (int v = 0; v < nv; ++v)
        for (int t = 0; t < nt; ++t) {
            double bs = -std::numeric_limits<double>::infinity();
            int bq = 0;
            for (int q = 0; q < L; ++q) {
                double s = log_prob(post(v, t), q + 1);
                if (s > bs) {
                    bs = s;
                    bq = q;
                }
            }
            best_sym_score(t, v) = bs;
            best_sym(t, v) = bq;
        }

    std::vector<double> zero_col(nv, 0.0);
    for (int v = 0; v < nv; ++v)
        for (int t = 0; t < nt; ++t) zero_col[v] += log_prob(post(v, t), 0);

    // best antenna pattern per subcarrier, independent given the pattern
    std::vector<double> active_col(nv);
    std::vector<int> active_ant_idx(nv);
    for (int v = 0; v < nv; ++v) {
        double best = -std::numeric_limits<double>::infinity();
        int best_e = 0;
        for (std::size_t e = 0; e < codec.ant_lut.entries.size(); ++e) {
            double s = zero_col[v];
            for (int t : codec.ant_lut.entries[e])
                s += best_sym_score(t, v) - log_prob(post(v, t), 0);
            if (s > best) {
                best = s;
                best_e = static_cast<int>(e);
            }
        }
        active_col[v] = best;
        active_ant_idx[v] = best_e;
    }

    double total_zero = 0.0;
    for (int v = 0; v < nv; ++v) total_zero += zero_col[v];

    double best_total = -std::numeric_limits<double>::infinity();
    int best_b = 0;
    for (std::size_t b = 0; b < codec.sub_lut.entries.size(); ++b) {
        double s = total_zero;
        for (int v : codec.sub_lut.entries[b]) s += active_col[v] - zero_col[v];
        if (s > best_total) {
            best_total = s;
            best_b = static_cast<int>(b);
        }
    }

    BitVec bits;
    bits.reserve(cfg.bits_per_group());
    uint_to_bits(static_cast<std::uint32_t>(best_b),
                 cfg.subcarrier_index_bits(), bits);
    const auto& subs = codec.sub_lut.entries[best_b];
    for (int v : subs)
        uint_to_bits(static_cast<std::uint32_t>(active_ant_idx[v]),
                     cfg.antenna_index_bits(), bits);
    for (int v : subs)
        for (int t : codec.ant_lut.entries[active_ant_idx[v]])
            uint_to_bits(static_cast<std::uint32_t>(best_sym(t, v)),
                         cfg.apm_bits(), bits);

    ProjectedGroup out;
    out.bits = bits;
    out.symbol = codec.modulate(bits);
    out.score = best_total;
    return out;
}

ProjectedGroup hard_project(const Eigen::VectorXcd& x_block,
                            const GroupCodec& codec) {
    const SystemConfig& cfg = codec.cfg;
    const int n = cfg.tx_antennas * cfg.vd_subcarriers;
    if (x_block.size() != n)
        throw ContractViolation("hard_project: block length mismatch");
    std::vector<cxd> alphabet = augmented_alphabet(codec.apm);
    Eigen::VectorXd flat =
        Eigen::VectorXd::Ones(static_cast<Eigen::Index>(alphabet.size()));
    flat /= static_cast<double>(alphabet.size());
    std::vector<SymbolPosterior> posts;
    posts.reserve(n);
    for (int i = 0; i < n; ++i)
        posts.push_back(prior_denoise(x_block(i), 1.0, flat, alphabet));
    return project_legal(posts, codec);
}

bool detect_activity(const std::vector<SymbolPosterior>& posteriors,
                     const SystemConfig& cfg) {
    double mass = 0.0;
    for (const auto& p : posteriors) mass += 1.0 - p.probs(0);
    return mass >= 0.5 * cfg.active_tx * cfg.active_sub;
}

BerCount ber(const std::vector<BitVec>& tx, const std::vector<BitVec>& rx) {
    if (tx.size() != rx.size())
        throw ContractViolation("ber: user count mismatch");
    BerCount c;
    for (std::size_t u = 0; u < tx.size(); ++u) {
        if (tx[u].size() != rx[u].size())
            throw ContractViolation("ber: stream length mismatch");
        for (std::size_t i = 0; i < tx[u].size(); ++i) {
            ++c.bits;
            if (tx[u][i] != rx[u][i]) ++c.errors;
        }
    }
    return c;
}

}  // namespace sfim
