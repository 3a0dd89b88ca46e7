#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "rankone/errors.hpp"

namespace rankone {

/// Unordered pairs {i,j} of 0..n-1 ranked lexicographically:
/// (0,1), (0,2), ..., (0,n-1), (1,2), ...
inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
    if (i == j || i >= n || j >= n)
        throw validation_error("pair (" + std::to_string(i) + "," + std::to_string(j) + ") invalid for n=" +
                               std::to_string(n));
    if (i > j) std::swap(i, j);
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

inline std::pair<std::size_t, std::size_t> pair_of(std::size_t n, std::size_t index) {
    if (index >= pair_count(n)) throw validation_error("pair index out of range");
    std::size_t i = 0;
    while (index >= n - i - 1) {
        index -= n - i - 1;
        ++i;
    }
    return {i, i + 1 + index};
}

}  // namespace rankone
