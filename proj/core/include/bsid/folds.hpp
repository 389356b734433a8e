#pragma once

#include <vector>

#include "bsid/rng.hpp"

namespace bsid {

// Disjoint, exhaustive fold assignment. Per-fold positive counts differ by at
// most one from the proportional share.
struct FoldPlan {
    std::size_t k = 0;
    std::vector<int> fold_assignment;  // entry per row, in [0, k)

    std::vector<std::size_t> validation_indices(int fold) const;
    std::vector<std::size_t> training_indices(int fold) const;
};

// Stratified k-fold split: class index lists are shuffled under the seed and
// dealt round-robin. Requires k >= 2 and at least k members per class.
FoldPlan stratified_kfold(const std::vector<int>& labels, std::size_t k, Rng rng);

}  // namespace bsid
