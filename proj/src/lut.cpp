#include "sfim/lut.hpp"

#include <algorithm>
#include <sstream>

namespace sfim {

int IndexLut::index_of(const std::vector<int>& combo) const {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i] == combo) return static_cast<int>(i);
    }
    return -1;
}

std::string IndexLut::to_json() const {
    std::ostringstream os;
    os << "{\"n\":" << n << ",\"k\":" << k << ",\"kind\":\"" << to_string(kind)
       << "\",\"bit_width\":" << bit_width << ",\"entries\":[";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) os << ",";
        os << "[";
        for (std::size_t j = 0; j < entries[i].size(); ++j) {
            if (j) os << ",";
            os << entries[i][j] + 1;  // 1-based on the wire
        }
        os << "]";
    }
    os << "]}";
    return os.str();
}

IndexLut build_lut(int n, int k, LutKind kind) {
    if (k < 1 || k > n) throw ConfigError("build_lut: need 1 <= k <= n");

    IndexLut lut;
    lut.n = n;
    lut.k = k;
    lut.kind = kind;
    lut.bit_width = index_bits(n, k);
    std::size_t count = std::size_t{1} << lut.bit_width;

    if (kind == LutKind::Paper && n == 4 && k == 2) {
        lut.entries = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
        return lut;
    }

    // lexicographic enumeration, truncated to a power of two
    std::vector<int> combo(k);
    for (int i = 0; i < k; ++i) combo[i] = i;
    while (lut.entries.size() < count) {
        lut.entries.push_back(combo);
        int i = k - 1;
        while (i >= 0 && combo[i] == n - k + i) --i;
        if (i < 0) break;
        ++combo[i];
        for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
    return lut;
}

}  // namespace sfim
