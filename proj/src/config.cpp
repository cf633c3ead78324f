#include "sfim/config.hpp"

#include <cmath>
#include <limits>

namespace sfim {

LutKind lut_kind_from_string(const std::string& s) {
    if (s == "lex") return LutKind::Lex;
    if (s == "paper") return LutKind::Paper;
    throw ConfigError("unknown lut_kind: " + s);
}

std::string to_string(LutKind k) {
    return k == LutKind::Lex ? "lex" : "paper";
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

int index_bits(int n, int k) {
    std::uint64_t c = binomial(n, k);
    if (c == 0) throw ConfigError("binomial(n,k) undefined for these arguments");
    int b = 0;
    while ((c >> (b + 1)) != 0) ++b;
    return b;
}

static bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

void SystemConfig::validate() const {
    if (users < 1) throw ConfigError("users must be positive");
    if (tx_antennas < 1) throw ConfigError("tx_antennas must be positive");
    if (active_tx < 1 || active_tx > tx_antennas)
        throw ConfigError("active_tx must satisfy 1 <= Na <= Nt");
    if (rx_antennas < 1) throw ConfigError("rx_antennas must be positive");
    if (vd_subcarriers < 1) throw ConfigError("vd_subcarriers must be positive");
    if (fd_subcarriers < 1 || fd_subcarriers > vd_subcarriers)
        throw ConfigError("fd_subcarriers must satisfy 1 <= Nf <= Nv");
    if (active_sub < 1 || active_sub > vd_subcarriers)
        throw ConfigError("active_sub must satisfy 1 <= K <= Nv");
    if (apm_order < 2 || !is_pow2(apm_order))
        throw ConfigError("apm_order must be a power of two >= 2");
    if (groups < 1) throw ConfigError("groups must be positive");
    if (cp_len < 0) throw ConfigError("cp_len must be nonnegative");
    if (active_users < 1 || active_users > users)
        throw ConfigError("active_users must satisfy 1 <= Ka <= U");
    if (bits_per_group() <= 0) throw ConfigError("configuration carries no bits per group");
}

int SystemConfig::subcarrier_index_bits() const {
    return index_bits(vd_subcarriers, active_sub);
}

int SystemConfig::antenna_index_bits() const {
    return index_bits(tx_antennas, active_tx);
}

int SystemConfig::apm_bits() const {
    int b = 0;
    while ((apm_order >> (b + 1)) != 0) ++b;
    return b;
}

int SystemConfig::bits_per_group() const {
    return subcarrier_index_bits() + active_sub * antenna_index_bits() +
           active_tx * active_sub * apm_bits();
}

double achievable_rate(const SystemConfig& cfg) {
    cfg.validate();
    double num = static_cast<double>(cfg.users) * cfg.groups * cfg.bits_per_group();
    return num / (cfg.total_subcarriers() + cfg.cp_len);
}

}  // namespace sfim
