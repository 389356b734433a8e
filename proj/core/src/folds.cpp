#include "bsid/folds.hpp"

#include <string>

#include "bsid/errors.hpp"

namespace bsid {

std::vector<std::size_t> FoldPlan::validation_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_assignment.size(); ++i) {
        if (fold_assignment[i] == fold) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> FoldPlan::training_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_assignment.size(); ++i) {
        if (fold_assignment[i] != fold) out.push_back(i);
    }
    return out;
}

FoldPlan stratified_kfold(const std::vector<int>& labels, std::size_t k, Rng rng) {
    if (k < 2) throw ParamError("stratified_kfold: k must be >= 2");

    std::vector<std::size_t> negatives;
    std::vector<std::size_t> positives;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        (labels[i] ? positives : negatives).push_back(i);
    }
    if (negatives.size() < k || positives.size() < k) {
        throw DataError("stratified_kfold: class with " +
                        std::to_string(std::min(negatives.size(), positives.size())) +
                        " members cannot fill " + std::to_string(k) + " folds");
    }

    FoldPlan plan;
    plan.k = k;
    plan.fold_assignment.assign(labels.size(), 0);
    int next_fold = 0;
    for (auto* cls : {&negatives, &positives}) {
        rng.shuffle(*cls);
        for (const std::size_t idx : *cls) {
            plan.fold_assignment[idx] = next_fold;
            next_fold = static_cast<int>((static_cast<std::size_t>(next_fold) + 1) % k);
        }
    }
    return plan;
}

}  // namespace bsid
