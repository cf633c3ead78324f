#pragma once

#include <cstdint>

namespace sfim {

// Real-multiplication counter; one complex multiply counts as 4.
struct MultCounter {
    std::uint64_t real_mults = 0;

    void add_real(std::uint64_t n) { real_mults += n; }
    void add_complex(std::uint64_t n) { real_mults += 4 * n; }
};

}  // namespace sfim
