#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>

namespace twofactor {

/// Position pair: i on the first row (or circle), j on the second row.
struct IndexPair {
    long long i = 0;
    long long j = 0;

    friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Three list indices whose pairs increase strictly in both coordinates,
/// returned in increasing i. Pairs that tie in either coordinate never chain.
std::optional<std::array<std::size_t, 3>> find_increasing_triple(std::span<const IndexPair> pairs);

/// Three list indices with i strictly increasing and j strictly decreasing.
std::optional<std::array<std::size_t, 3>> find_decreasing_triple(std::span<const IndexPair> pairs);

/// Two chords (h,j), (i,m) of a circle with h < i < j < m after putting each
/// chord's ends in order. Returns {index of (h,j), index of (i,m)}.
std::optional<std::array<std::size_t, 2>> find_interleaved_pair(std::span<const IndexPair> chords);

}  // namespace twofactor
