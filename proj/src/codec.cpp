#include "sfim/codec.hpp"

#include <algorithm>

namespace sfim {

std::uint32_t bits_to_uint(const BitVec& bits, int from, int count) {
    std::uint32_t v = 0;
    for (int i = 0; i < count; ++i) v = (v << 1) | (bits[from + i] & 1u);
    return v;
}

void uint_to_bits(std::uint32_t v, int count, BitVec& out) {
    for (int i = count - 1; i >= 0; --i) out.push_back((v >> i) & 1u);
}

GroupCodec::GroupCodec(const SystemConfig& c)
    : cfg(c),
      sub_lut(build_lut(c.vd_subcarriers, c.active_sub, c.lut_kind)),
      ant_lut(build_lut(c.tx_antennas, c.active_tx, c.lut_kind)),
      apm(make_constellation(c.apm_order)) {
    cfg.validate();
}

SfGroupSymbol GroupCodec::modulate(const BitVec& bits) const {
    const int n_b1 = cfg.subcarrier_index_bits();
    const int n_ant = cfg.antenna_index_bits();
    const int n_apm = cfg.apm_bits();
    if (static_cast<int>(bits.size()) != cfg.bits_per_group())
        throw ContractViolation("modulate_group: bit vector length mismatch");

    SfGroupSymbol s;
    s.b1.assign(bits.begin(), bits.begin() + n_b1);
    s.b2.assign(bits.begin() + n_b1,
                bits.begin() + n_b1 + cfg.active_sub * n_ant);
    s.b3.assign(bits.begin() + n_b1 + cfg.active_sub * n_ant, bits.end());

    s.active_subs = sub_lut.entry(static_cast<int>(bits_to_uint(bits, 0, n_b1)));

    // one antenna-LUT index per active subcarrier, ascending subcarrier order
    int pos = n_b1;
    for (int k = 0; k < cfg.active_sub; ++k) {
        s.active_ants.push_back(
            ant_lut.entry(static_cast<int>(bits_to_uint(bits, pos, n_ant))));
        pos += n_ant;
    }

    // APM symbols fill subcarrier-major, antenna-ascending within a subcarrier
    s.matrix = Eigen::MatrixXcd::Zero(cfg.tx_antennas, cfg.vd_subcarriers);
    for (int k = 0; k < cfg.active_sub; ++k) {
        int sub = s.active_subs[k];
        for (int a = 0; a < cfg.active_tx; ++a) {
            int label = static_cast<int>(bits_to_uint(bits, pos, n_apm));
            pos += n_apm;
            s.matrix(s.active_ants[k][a], sub) = apm.point(label);
        }
    }
    return s;
}

BitVec GroupCodec::demap_hard(const Eigen::MatrixXcd& sf) const {
    const int nt = cfg.tx_antennas;
    const int nv = cfg.vd_subcarriers;
    if (sf.rows() != nt || sf.cols() != nv)
        throw ContractViolation("demap_group_hard: matrix shape mismatch");

    std::vector<int> subs;
    std::vector<std::vector<int>> ants;
    for (int v = 0; v < nv; ++v) {
        std::vector<int> col;
        for (int t = 0; t < nt; ++t)
            if (sf(t, v) != cxd(0.0, 0.0)) col.push_back(t);
        if (!col.empty()) {
            subs.push_back(v);
            ants.push_back(std::move(col));
        }
    }

    int sub_idx = sub_lut.index_of(subs);
    bool legal = sub_idx >= 0 &&
                 static_cast<int>(subs.size()) == cfg.active_sub;
    std::vector<int> ant_idx(ants.size(), -1);
    if (legal) {
        for (std::size_t k = 0; k < ants.size(); ++k) {
            ant_idx[k] = ant_lut.index_of(ants[k]);
            if (ant_idx[k] < 0) legal = false;
        }
    }
    if (!legal) {
        // closest legal support by nonzero-position overlap
        auto [ns, na] = nearest_support(sf);
        throw DemapError("demap_group_hard: support not representable by the LUTs",
                         std::move(ns), std::move(na));
    }

    BitVec bits;
    bits.reserve(cfg.bits_per_group());
    uint_to_bits(static_cast<std::uint32_t>(sub_idx),
                 cfg.subcarrier_index_bits(), bits);
    for (int k = 0; k < cfg.active_sub; ++k)
        uint_to_bits(static_cast<std::uint32_t>(ant_idx[k]),
                     cfg.antenna_index_bits(), bits);
    for (int k = 0; k < cfg.active_sub; ++k)
        for (int a : ants[k])
            uint_to_bits(static_cast<std::uint32_t>(apm.nearest(sf(a, subs[k]))),
                         cfg.apm_bits(), bits);
    return bits;
}

std::pair<std::vector<int>, std::vector<std::vector<int>>>
GroupCodec::nearest_support(const Eigen::MatrixXcd& sf) const {
    auto nonzero_rows = [&](int v) {
        std::vector<int> rows;
        for (int t = 0; t < cfg.tx_antennas; ++t)
            if (sf(t, v) != cxd(0.0, 0.0)) rows.push_back(t);
        return rows;
    };

    std::vector<int> best_subs;
    std::vector<std::vector<int>> best_ants;
    int best_score = -1;
    for (const auto& subs : sub_lut.entries) {
        int score = 0;
        std::vector<std::vector<int>> ants;
        for (int v : subs) {
            auto rows = nonzero_rows(v);
            int col_best = -1, col_score = -1;
            for (std::size_t e = 0; e < ant_lut.entries.size(); ++e) {
                const auto& cand = ant_lut.entries[e];
                int overlap = 0;
                for (int t : cand)
                    if (std::find(rows.begin(), rows.end(), t) != rows.end())
                        ++overlap;
                if (overlap > col_score) {
                    col_score = overlap;
                    col_best = static_cast<int>(e);
                }
            }
            score += col_score;
            ants.push_back(ant_lut.entries[col_best]);
        }
        if (score > best_score) {
            best_score = score;
            best_subs = subs;
            best_ants = std::move(ants);
        }
    }
    return {best_subs, best_ants};
}

SfGroupSymbol modulate_group(const BitVec& bits, const SystemConfig& cfg) {
    return GroupCodec(cfg).modulate(bits);
}

BitVec demap_group_hard(const Eigen::MatrixXcd& sf, const SystemConfig& cfg) {
    return GroupCodec(cfg).demap_hard(sf);
}

}  // namespace sfim
