#pragma once

#include <complex>
#include <vector>

#include "sfim/errors.hpp"

namespace sfim {

using cxd = std::complex<double>;

// Unit-average-energy APM constellation of order L. Index == bit label
// (MSB first). BPSK maps bit 1 to +1; L >= 4 is Gray-mapped square QAM.
struct Constellation {
    int order = 2;
    std::vector<cxd> points;

    const cxd& point(int label) const { return points.at(label); }
    int nearest(cxd v) const;
};

Constellation make_constellation(int order);

// {0} followed by the constellation points; the value set of one
// virtual-domain entry.
std::vector<cxd> augmented_alphabet(const Constellation& c);

}  // namespace sfim
