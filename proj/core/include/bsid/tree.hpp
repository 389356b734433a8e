#pragma once

#include "bsid/models.hpp"

namespace bsid {

// 1 - sum p_i^2 over the class counts.
double gini_impurity(const std::vector<std::size_t>& class_counts);

// Index-linked binary tree node. feature < 0 marks a leaf.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double positive_weight = 0.0;
    double total_weight = 0.0;

    bool is_leaf() const { return feature < 0; }
    double leaf_score() const { return positive_weight / total_weight; }
};

struct TreeGrowth {
    // 0 means all features; otherwise the bag size drawn per split.
    std::size_t feature_bag = 0;
    // Extra-trees style splits: one uniform random threshold per candidate
    // feature instead of the exhaustive midpoint search.
    bool random_thresholds = false;
};

// Greedy Gini tree grown until pure or no improving split; no depth limit and
// no pruning. The exhaustive search scans midpoints of consecutive sorted
// unique values; gain ties break toward the lower feature index and lower
// threshold. Leaf score is the (weight-)positive fraction.
class DecisionTreeModel final : public TrainedModel {
public:
    Family family() const override { return Family::DecisionTree; }
    double threshold() const override { return 0.5; }
    double score(std::span<const double> row) const override;

    std::vector<TreeNode> nodes;
    std::size_t leaf_count() const;
};

// `sample_indices` may contain duplicates (bootstrap multiset); empty means
// every row once.
std::unique_ptr<DecisionTreeModel> fit_decision_tree(
    const Matrix& x, const std::vector<int>& y, const TreeGrowth& growth = {}, Rng rng = Rng(0),
    const std::vector<std::size_t>& sample_indices = {});

struct ForestOptions {
    std::size_t n_trees = 30;
    bool bootstrap = true;
    // 0 picks ceil(sqrt(d)).
    std::size_t feature_bag = 0;
};

// Bootstrap-aggregated Gini trees with per-split feature bags. Tree i draws
// from the child stream rng.child(i), so serial and parallel fits agree
// bit-for-bit. Score is the mean of per-tree leaf scores.
class RandomForestModel final : public TrainedModel {
public:
    Family family() const override { return Family::RandomForest; }
    double threshold() const override { return 0.5; }
    double score(std::span<const double> row) const override;

    std::vector<DecisionTreeModel> trees;
    std::vector<std::vector<bool>> in_bag;  // per tree, per training row

    // Accuracy over rows left out of each tree's bootstrap sample.
    double oob_accuracy(const Matrix& x, const std::vector<int>& y) const;
};

std::unique_ptr<RandomForestModel> fit_random_forest(const Matrix& x, const std::vector<int>& y,
                                                     const ForestOptions& opt, Rng rng);

// Same aggregation with uniform-random split thresholds and no bootstrap.
class ExtraTreesModel final : public TrainedModel {
public:
    Family family() const override { return Family::ExtraTrees; }
    double threshold() const override { return 0.5; }
    double score(std::span<const double> row) const override;

    std::vector<DecisionTreeModel> trees;
};

std::unique_ptr<ExtraTreesModel> fit_extra_trees(const Matrix& x, const std::vector<int>& y,
                                                 const ForestOptions& opt, Rng rng);

}  // namespace bsid
