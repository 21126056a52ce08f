#pragma once

#include <optional>
#include <vector>

#include "gnf/rational.hpp"

namespace gnf {

// Weighted covering instance shared by the domination-set constructions.
// Elements are 0..n_elements-1; each candidate covers a subset.
struct CoverInstance {
    struct Candidate {
        int id = -1;
        Rat weight;
        std::vector<int> covers;
    };
    int n_elements = 0;
    std::vector<Candidate> candidates;
};

// Minimum-weight cover, ties broken by fewer candidates and then by the
// lexicographically smallest id set. Returns chosen ids (sorted ascending),
// or nullopt when some element is uncoverable.
std::optional<std::vector<int>> exact_weighted_cover(const CoverInstance& inst);

// Classic price-per-newly-covered-element greedy, deterministic ties by
// smallest id. Returns nullopt when some element is uncoverable.
std::optional<std::vector<int>> greedy_weighted_cover(const CoverInstance& inst);

}  // namespace gnf
