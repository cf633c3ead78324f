#pragma once

#include <string>
#include <vector>

#include "sfim/config.hpp"

namespace sfim {

// Index look-up table: 2^bit_width sorted k-combinations out of n positions.
// Positions are 0-based in memory; the JSON export is 1-based.
struct IndexLut {
    int n = 0;
    int k = 0;
    int bit_width = 0;
    LutKind kind = LutKind::Lex;
    std::vector<std::vector<int>> entries;

    const std::vector<int>& entry(int idx) const { return entries.at(idx); }

    // -1 when the combination is not in the table.
    int index_of(const std::vector<int>& combo) const;

    std::string to_json() const;
};

// kind == Lex: first 2^floor(log2 C(n,k)) combinations in lexicographic
// order. kind == Paper: the cyclic 4-entry table for (n=4, k=2); lex
// otherwise.
IndexLut build_lut(int n, int k, LutKind kind);

}  // namespace sfim
