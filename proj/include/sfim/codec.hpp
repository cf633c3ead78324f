#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sfim/config.hpp"
#include "sfim/constellation.hpp"
#include "sfim/lut.hpp"

namespace sfim {

using BitVec = std::vector<std::uint8_t>;

// One user's sparse Nt x Nv space-frequency matrix for one subcarrier group,
// together with the bit fields that produced it.
struct SfGroupSymbol {
    Eigen::MatrixXcd matrix;  // Nt x Nv
    BitVec b1;                // subcarrier index bits
    BitVec b2;                // antenna index bits
    BitVec b3;                // APM bits
    std::vector<int> active_subs;               // K ascending, 0-based
    std::vector<std::vector<int>> active_ants;  // per active sub, Na ascending
};

// Cached per-config pieces of the bit mapping.
struct GroupCodec {
    explicit GroupCodec(const SystemConfig& cfg);

    SfGroupSymbol modulate(const BitVec& bits) const;
    // Exact inverse for matrices on a legal support whose nonzeros are
    // constellation points (nearest-point quantization for the values).
    BitVec demap_hard(const Eigen::MatrixXcd& sf) const;

    // Legal support maximizing nonzero-position overlap with sf.
    std::pair<std::vector<int>, std::vector<std::vector<int>>>
    nearest_support(const Eigen::MatrixXcd& sf) const;

    const SystemConfig cfg;
    const IndexLut sub_lut;  // over (Nv, K)
    const IndexLut ant_lut;  // over (Nt, Na)
    const Constellation apm;
};

SfGroupSymbol modulate_group(const BitVec& bits, const SystemConfig& cfg);
BitVec demap_group_hard(const Eigen::MatrixXcd& sf, const SystemConfig& cfg);

// helpers shared with tests and the CLI
std::uint32_t bits_to_uint(const BitVec& bits, int from, int count);
void uint_to_bits(std::uint32_t v, int count, BitVec& out);

}  // namespace sfim
