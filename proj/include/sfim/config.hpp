#pragma once

#include <cstdint>
#include <string>

#include "sfim/errors.hpp"

namespace sfim {

enum class LutKind { Lex, Paper };

LutKind lut_kind_from_string(const std::string& s);
std::string to_string(LutKind k);

// All dimension / modulation parameters of one scheme.
//
// Naming follows the usual uplink conventions: each of `users` terminals has
// `tx_antennas` antennas of which `active_tx` are active per used subcarrier;
// a virtual-domain block of `vd_subcarriers` carries `active_sub` active
// subcarriers and is compressed onto `fd_subcarriers` physical ones.
struct SystemConfig {
    int users = 4;           // U
    int tx_antennas = 4;     // Nt
    int active_tx = 2;       // Na
    int rx_antennas = 16;    // Nr
    int vd_subcarriers = 4;  // Nv
    int fd_subcarriers = 2;  // Nf
    int active_sub = 2;      // K
    int apm_order = 2;       // L
    int groups = 1;          // G
    int cp_len = 0;          // Ncp
    int active_users = 4;    // Ka
    LutKind lut_kind = LutKind::Lex;

    void validate() const;  // throws ConfigError

    int subcarrier_index_bits() const;  // floor(log2 C(Nv, K))
    int antenna_index_bits() const;     // floor(log2 C(Nt, Na))
    int apm_bits() const;               // log2 L
    int bits_per_group() const;

    int total_subcarriers() const { return fd_subcarriers * groups; }  // Nc
    int vd_dim() const { return tx_antennas * vd_subcarriers * users; }  // Omega
    int rx_dim() const { return rx_antennas * fd_subcarriers; }          // Phi
    int user_block() const { return tx_antennas * vd_subcarriers; }

    // Fraction of virtual-domain entries that carry a symbol.
    double active_fraction() const {
        return static_cast<double>(active_tx * active_sub) /
               (static_cast<double>(tx_antennas) * vd_subcarriers);
    }

    // Canonical virtual-domain index: user-major, then VD subcarrier,
    // transmit antenna innermost. Every module uses this ordering.
    int vd_index(int user, int sub, int ant) const {
        return (user * vd_subcarriers + sub) * tx_antennas + ant;
    }
};

// floor(log2 C(n, k)); exact integer arithmetic.
int index_bits(int n, int k);
std::uint64_t binomial(int n, int k);

// Peak rate in bits/s/Hz: all users' group bits per OFDM symbol plus prefix.
double achievable_rate(const SystemConfig& cfg);

}  // namespace sfim
