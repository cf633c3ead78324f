#include "sfim/classical.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>

namespace sfim {

void write_trace_csv(const std::vector<IterTraceRow>& trace,
                     const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path + " for writing");
    os << "iteration,residual_norm,mean_variance\n";
    for (const auto& r : trace)
        os << r.iteration << "," << r.residual_norm << "," << r.mean_variance
           << "\n";
}

std::vector<BitVec> bits_from_posteriors(
    const std::vector<SymbolPosterior>& posteriors,
    const EquivalentGroupModel& model) {
    const SystemConfig& cfg = model.cfg;
    GroupCodec codec(cfg);
    std::vector<BitVec> out(cfg.users);
    const int block = cfg.user_block();
    for (int u = 0; u < cfg.users; ++u) {
        if (!model.active[u]) continue;
        std::vector<SymbolPosterior> slice(
            posteriors.begin() + static_cast<std::ptrdiff_t>(u) * block,
            posteriors.begin() + static_cast<std::ptrdiff_t>(u + 1) * block);
        out[u] = project_legal(slice, codec).bits;
    }
    return out;
}

std::vector<BitVec> bits_from_estimate(const Eigen::VectorXcd& x_hat,
                                       const EquivalentGroupModel& model) {
    const SystemConfig& cfg = model.cfg;
    GroupCodec codec(cfg);
    std::vector<BitVec> out(cfg.users);
    const int block = cfg.user_block();
    for (int u = 0; u < cfg.users; ++u) {
        if (!model.active[u]) continue;
        out[u] = hard_project(x_hat.segment(u * block, block), codec).bits;
    }
    return out;
}

namespace {
struct CodebookKey {
    int nt, nv, na, k, l;
    LutKind kind;
    auto operator<=>(const CodebookKey&) const = default;
};
}  // namespace

const UserCodebook& user_codebook(const SystemConfig& cfg) {
    static std::mutex mu;
    static std::map<CodebookKey, UserCodebook> cache;

    CodebookKey key{cfg.tx_antennas, cfg.vd_subcarriers, cfg.active_tx,
                    cfg.active_sub, cfg.apm_order, cfg.lut_kind};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    GroupCodec codec(cfg);
    const int nbits = cfg.bits_per_group();
    const std::uint32_t count = 1u << nbits;
    UserCodebook cb;
    cb.bits.reserve(count);
    cb.blocks.resize(cfg.user_block(), count);
    for (std::uint32_t c = 0; c < count; ++c) {
        BitVec bits;
        uint_to_bits(c, nbits, bits);
        SfGroupSymbol s = codec.modulate(bits);
        for (int v = 0; v < cfg.vd_subcarriers; ++v)
            for (int t = 0; t < cfg.tx_antennas; ++t)
                cb.blocks(v * cfg.tx_antennas + t, c) = s.matrix(t, v);
        cb.bits.push_back(std::move(bits));
    }
    return cache.emplace(key, std::move(cb)).first->second;
}

DetectionResult ml_detect(const Eigen::VectorXcd& y,
                          const EquivalentGroupModel& model, std::uint64_t cap,
                          const DetectorOptions& opts) {
    const SystemConfig& cfg = model.cfg;
    const UserCodebook& cb = user_codebook(cfg);
    const auto ncw = static_cast<std::uint64_t>(cb.blocks.cols());

    std::vector<int> act;
    for (int u = 0; u < cfg.users; ++u)
        if (model.active[u]) act.push_back(u);

    double joint = std::pow(static_cast<double>(ncw),
                            static_cast<double>(act.size()));
    if (joint > static_cast<double>(cap))
        throw InfeasibleError(
            "ml_detect: joint search space " + std::to_string(joint) +
            " exceeds cap " + std::to_string(cap));

    const int block = cfg.user_block();
    const Eigen::Index phi = y.size();

    // transformed per-user codebooks: h_bar[:, user block] * codewords
    std::vector<Eigen::MatrixXcd> tcw(act.size());
    for (std::size_t d = 0; d < act.size(); ++d) {
        tcw[d] = model.h_bar.middleCols(act[d] * block, block) * cb.blocks;
        if (opts.counter)
            opts.counter->add_complex(static_cast<std::uint64_t>(phi) * block *
                                      ncw);
    }

    std::vector<std::uint32_t> idx(act.size(), 0), best_idx(act.size(), 0);
    double best = std::numeric_limits<double>::infinity();

    // depth-first over users with running residuals; lexicographic order
    // makes the strict < a lowest-index tie-break
    std::vector<Eigen::VectorXcd> res(act.size() + 1);
    res[0] = y;
    std::size_t depth = 0;
    while (true) {
        if (depth == act.size()) {
            double m = res[depth].squaredNorm();
            if (opts.counter)
                opts.counter->add_real(2 * static_cast<std::uint64_t>(phi));
            if (m < best) {
                best = m;
                best_idx = idx;
            }
            // backtrack
            while (depth > 0 && idx[depth - 1] + 1 == ncw) --depth;
            if (depth == 0) break;
            ++idx[depth - 1];
            for (std::size_t d = depth; d < act.size(); ++d) idx[d] = 0;
            depth = depth - 1;
            continue;
        }
        res[depth + 1] = res[depth] - tcw[depth].col(idx[depth]);
        ++depth;
    }

    DetectionResult out;
    out.metric = best;
    out.hard_bits.assign(cfg.users, {});
    out.x_hat = Eigen::VectorXcd::Zero(cfg.vd_dim());
    for (std::size_t d = 0; d < act.size(); ++d) {
        out.hard_bits[act[d]] = cb.bits[best_idx[d]];
        out.x_hat.segment(act[d] * block, block) = cb.blocks.col(best_idx[d]);
    }
    return out;
}

DetectionResult mmse_detect(const Eigen::VectorXcd& y,
                            const EquivalentGroupModel& model,
                            const DetectorOptions& opts) {
    const Eigen::Index omega = model.h_bar.cols();
    const Eigen::Index phi = model.h_bar.rows();
    double inv_lambda = model.noise_var / model.prior_variance();

    Eigen::MatrixXcd gram = model.h_bar.adjoint() * model.h_bar;
    Eigen::MatrixXcd m = gram;
    m.diagonal().array() += inv_lambda;
    Eigen::VectorXcd rhs = model.h_bar.adjoint() * y;
    if (opts.counter) {
        opts.counter->add_complex(static_cast<std::uint64_t>(omega) * omega *
                                  phi);
        opts.counter->add_complex(static_cast<std::uint64_t>(omega) * phi);
    }

    Eigen::LLT<Eigen::MatrixXcd> llt(m);
    if (llt.info() != Eigen::Success)
        throw NumericError("mmse_detect: factorization failed");
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < omega; ++i) {
        double d = std::abs(llt.matrixLLT()(i, i));
        dmax = std::max(dmax, d);
        dmin = std::min(dmin, d);
    }
    double cond = (dmax / dmin) * (dmax / dmin);
    if (!(cond < 1e14))
        throw NumericError("mmse_detect: system too ill-conditioned", cond);

    Eigen::VectorXcd x_hat = llt.solve(rhs);
    if (opts.counter) {
        opts.counter->add_complex(static_cast<std::uint64_t>(omega) * omega *
                                  omega / 6);
        opts.counter->add_complex(2 * static_cast<std::uint64_t>(omega) *
                                  omega);
    }

    DetectionResult out;
    out.x_hat = x_hat;
    out.hard_bits = bits_from_estimate(x_hat, model);
    return out;
}

}  // namespace sfim
