#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sfim/codec.hpp"
#include "sfim/config.hpp"

namespace sfim {

// Seeded compressive measurement matrix, Nf x Nv, unit-norm columns.
struct MeasurementMatrix {
    Eigen::MatrixXcd a;
    std::uint64_t seed = 0;
};

// i.i.d. CN(0,1) draw with columns scaled to unit norm. `orthonormalize`
// replaces the draw by a seeded unitary (square case only).
MeasurementMatrix gen_measurement(std::uint64_t seed, int nf, int nv,
                                  bool orthonormalize = false);

// One virtual-domain row of a space-frequency matrix compressed to the
// frequency domain.
Eigen::VectorXcd compress_row(const Eigen::VectorXcd& vd_row,
                              const MeasurementMatrix& a);

// Block measurement over all users and antennas:
// blockdiag_u (A otimes I_Nt), mapping the canonical VD ordering to the
// canonical FD ordering (user-major, subcarrier, antenna innermost).
Eigen::MatrixXcd expanded_measurement(const MeasurementMatrix& a,
                                      const SystemConfig& cfg);

// Canonical virtual-domain vector of one group symbol per user.
Eigen::VectorXcd flatten_groups(const std::vector<SfGroupSymbol>& symbols,
                                const SystemConfig& cfg);
std::vector<Eigen::MatrixXcd> unflatten_groups(const Eigen::VectorXcd& x,
                                               const SystemConfig& cfg);

// Binary persistence: "SFIMAMAT" header then row-major (re, im) f64 pairs.
void save_measurement(const MeasurementMatrix& m, const std::string& path);
MeasurementMatrix load_measurement(const std::string& path);

}  // namespace sfim
