#pragma once

#include "sfim/detect.hpp"

namespace sfim {

// Exhaustive joint maximum-likelihood search over all legal per-user
// codewords. Throws InfeasibleError when codebook^users exceeds `cap`.
DetectionResult ml_detect(const Eigen::VectorXcd& y,
                          const EquivalentGroupModel& model,
                          std::uint64_t cap = std::uint64_t{1} << 24,
                          const DetectorOptions& opts = {});

// Regularized linear MMSE estimate followed by per-user legality
// projection. The regularizer sigma^2 / (p_a Es) matches the sparse prior.
DetectionResult mmse_detect(const Eigen::VectorXcd& y,
                            const EquivalentGroupModel& model,
                            const DetectorOptions& opts = {});

// Per-user codebook (memoized per configuration): every legal bit pattern
// and its flattened Nt*Nv block.
struct UserCodebook {
    std::vector<BitVec> bits;
    Eigen::MatrixXcd blocks;  // (Nt*Nv) x 2^bits_per_group
};
const UserCodebook& user_codebook(const SystemConfig& cfg);

}  // namespace sfim
