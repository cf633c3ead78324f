#include "sfim/constellation.hpp"

#include <cmath>

namespace sfim {

int Constellation::nearest(cxd v) const {
    int best = 0;
    double bd = std::norm(v - points[0]);
    for (std::size_t i = 1; i < points.size(); ++i) {
        double d = std::norm(v - points[i]);
        if (d < bd) {
            bd = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

static int gray_to_binary(int g) {
    int b = g;
    for (g >>= 1; g != 0; g >>= 1) b ^= g;
    return b;
}

Constellation make_constellation(int order) {
    if (order < 2 || (order & (order - 1)) != 0)
        throw ConfigError("constellation order must be a power of two >= 2");

    Constellation c;
    c.order = order;
    c.points.resize(order);

    if (order == 2) {
        c.points[0] = {-1.0, 0.0};
        c.points[1] = {+1.0, 0.0};
        return c;
    }

    int bits = 0;
    while ((order >> (bits + 1)) != 0) ++bits;
    if (bits % 2 != 0)
        throw ConfigError("only square QAM orders are supported beyond BPSK");

    int side = 1 << (bits / 2);
    // per-dimension Gray-labeled PAM, normalized to unit average energy
    double scale = 1.0 / std::sqrt(2.0 * (side * side - 1) / 3.0);
    for (int label = 0; label < order; ++label) {
        int gi = label >> (bits / 2);
        int gq = label & (side - 1);
        int li = 2 * gray_to_binary(gi) - (side - 1);
        int lq = 2 * gray_to_binary(gq) - (side - 1);
        c.points[label] = cxd(li * scale, lq * scale);
    }
    return c;
}

std::vector<cxd> augmented_alphabet(const Constellation& c) {
    std::vector<cxd> a;
    a.reserve(c.points.size() + 1);
    a.push_back({0.0, 0.0});
    a.insert(a.end(), c.points.begin(), c.points.end());
    return a;
}

}  // namespace sfim
