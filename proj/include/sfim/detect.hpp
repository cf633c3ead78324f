#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "sfim/channel.hpp"
#include "sfim/counters.hpp"
#include "sfim/demap.hpp"
#include "sfim/posterior.hpp"

namespace sfim {

struct DetectionResult {
    // one entry per user; inactive users carry an empty stream
    std::vector<BitVec> hard_bits;
    Eigen::VectorXcd x_hat;
    std::vector<SymbolPosterior> posteriors;  // empty when the detector has none
    double metric = 0.0;
};

// One row per iteration of a message-passing detector.
struct IterTraceRow {
    int iteration = 0;
    double residual_norm = 0.0;
    double mean_variance = 0.0;
};

struct DetectorOptions {
    MultCounter* counter = nullptr;
    std::vector<IterTraceRow>* trace = nullptr;
};

void write_trace_csv(const std::vector<IterTraceRow>& trace,
                     const std::string& path);

// Per-user hard bits from per-node posteriors (legality projection).
std::vector<BitVec> bits_from_posteriors(
    const std::vector<SymbolPosterior>& posteriors,
    const EquivalentGroupModel& model);

// Per-user hard bits from a point estimate (minimum-distance projection).
std::vector<BitVec> bits_from_estimate(const Eigen::VectorXcd& x_hat,
                                       const EquivalentGroupModel& model);

}  // namespace sfim
