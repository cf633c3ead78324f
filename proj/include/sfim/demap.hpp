#pragma once

#include <vector>

#include "sfim/codec.hpp"
#include "sfim/posterior.hpp"

namespace sfim {

struct ProjectedGroup {
    BitVec bits;
    SfGroupSymbol symbol;
    double score = 0.0;  // sum of log p_i over the chosen assignment
};

// Most probable legal index/symbol pattern for one user's block of Nt*Nv
// posteriors (ordered subcarrier-major, antenna innermost). Exact: given the
// subcarrier pattern the objective is additive across subcarriers, so each
// active subcarrier's antenna pattern and symbols maximize independently.
// Ties break to the lowest LUT index, then the lowest symbol label.
ProjectedGroup project_legal(const std::vector<SymbolPosterior>& posteriors,
                             const GroupCodec& codec);

// Minimum-distance legality projection of a point estimate: pseudo-
// posteriors exp(-|x_i - a|^2) feed project_legal.
ProjectedGroup hard_project(const Eigen::VectorXcd& x_block,
                            const GroupCodec& codec);

// Activity decision for one user's block: total active-probability mass
// below half the nominal Na*K support declares the user silent.
bool detect_activity(const std::vector<SymbolPosterior>& posteriors,
                     const SystemConfig& cfg);

struct BerCount {
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double rate() const { return bits ? static_cast<double>(errors) / bits : 0.0; }
};

// Hamming distance over per-user streams; lengths must match per user.
BerCount ber(const std::vector<BitVec>& tx, const std::vector<BitVec>& rx);

}  // namespace sfim
