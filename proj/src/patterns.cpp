#include "twofactor/patterns.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace twofactor {

namespace {

// Patience-style scan for a length-3 chain in (i, sign*j). Only the chain
// ends with the smallest j for lengths 1 and 2 matter, so state is O(1).
std::optional<std::array<std::size_t, 3>> find_chain(std::span<const IndexPair> pairs, long long sign) {
    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pairs[a].i < pairs[b].i; });
    auto key = [&](std::size_t idx) { return sign * pairs[idx].j; };

    std::optional<std::size_t> one;
    std::optional<std::array<std::size_t, 2>> two;
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start;
        while (end < order.size() && pairs[order[end]].i == pairs[order[start]].i) ++end;
        // Elements sharing an i only extend chains built from earlier groups.
        std::optional<std::size_t> group_one;
        std::optional<std::array<std::size_t, 2>> group_two;
        for (std::size_t k = start; k < end; ++k) {
            const auto idx = order[k];
            if (two && key((*two)[1]) < key(idx)) return std::array{(*two)[0], (*two)[1], idx};
            if (one && key(*one) < key(idx) && (!group_two || key(idx) < key((*group_two)[1]))) {
                group_two = std::array{*one, idx};
            }
            if (!group_one || key(idx) < key(*group_one)) group_one = idx;
        }
        if (group_two && (!two || key((*group_two)[1]) < key((*two)[1]))) two = group_two;
        if (group_one && (!one || key(*group_one) < key(*one))) one = group_one;
        start = end;
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::array<std::size_t, 3>> find_increasing_triple(std::span<const IndexPair> pairs) {
    return find_chain(pairs, 1);
}

std::optional<std::array<std::size_t, 3>> find_decreasing_triple(std::span<const IndexPair> pairs) {
    return find_chain(pairs, -1);
}

std::optional<std::array<std::size_t, 2>> find_interleaved_pair(std::span<const IndexPair> chords) {
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < chords.size(); ++k) {
        if (chords[k].i != chords[k].j) order.push_back(k);
    }
    auto lo = [&](std::size_t k) { return std::min(chords[k].i, chords[k].j); };
    auto hi = [&](std::size_t k) { return std::max(chords[k].i, chords[k].j); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lo(a) < lo(b); });

    // Chords with a strictly smaller left end, keyed by right end.
    std::set<std::pair<long long, std::size_t>> open;
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start;
        while (end < order.size() && lo(order[end]) == lo(order[start])) ++end;
        for (std::size_t k = start; k < end; ++k) {
            const auto idx = order[k];
            const auto it = open.lower_bound({lo(idx) + 1, 0});
            if (it != open.end() && it->first < hi(idx)) return std::array{it->second, idx};
        }
        for (std::size_t k = start; k < end; ++k) open.insert({hi(order[k]), order[k]});
        start = end;
    }
    return std::nullopt;
}

}  // namespace twofactor
