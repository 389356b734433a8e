#include "bsid/tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsid/errors.hpp"

namespace bsid {

double gini_impurity(const std::vector<std::size_t>& class_counts) {
    std::size_t total = 0;
    for (const auto c : class_counts) total += c;
    if (total == 0) throw ParamError("gini_impurity: zero total count");
    double sum_sq = 0.0;
    for (const auto c : class_counts) {
        const double p = static_cast<double>(c) / static_cast<double>(total);
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

namespace {

inline double gini2(double pos, double total) {
    const double p = pos / total;
    const double q = 1.0 - p;
    return 1.0 - p * p - q * q;
}

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;  // weighted child impurity, lower is better
};

class TreeBuilder {
public:
    TreeBuilder(const Matrix& x, const std::vector<int>& y, const TreeGrowth& growth, Rng rng)
        : x_(x), y_(y), growth_(growth), rng_(rng) {}

    std::vector<TreeNode> build(std::vector<std::size_t> indices) {
        nodes_.clear();
        indices_ = std::move(indices);
        const int root = allocate_node(0, indices_.size());
        struct Item {
            int node;
            std::size_t begin;
            std::size_t end;
        };
        std::vector<Item> stack{{root, 0, indices_.size()}};
        while (!stack.empty()) {
            const Item item = stack.back();
            stack.pop_back();
            grow(item.node, item.begin, item.end, stack);
        }
        return std::move(nodes_);
    }

private:
    int allocate_node(std::size_t begin, std::size_t end) {
        TreeNode node;
        double pos = 0.0;
        for (std::size_t i = begin; i < end; ++i) pos += y_[indices_[i]];
        node.positive_weight = pos;
        node.total_weight = static_cast<double>(end - begin);
        nodes_.push_back(node);
        return static_cast<int>(nodes_.size() - 1);
    }

    template <typename Stack>
    void grow(int node_id, std::size_t begin, std::size_t end, Stack& stack) {
        const double total = nodes_[node_id].total_weight;
        const double pos = nodes_[node_id].positive_weight;
        if (pos == 0.0 || pos == total || end - begin < 2) return;

        const SplitChoice split = growth_.random_thresholds
                                      ? best_random_split(begin, end, pos, total)
                                      : best_exhaustive_split(begin, end, pos, total);
        if (!split.found) return;

        // Stable partition by the chosen threshold keeps index order inside
        // the children deterministic.
        scratch_split_.clear();
        std::size_t mid = begin;
        for (std::size_t i = begin; i < end; ++i) {
            const std::size_t idx = indices_[i];
            if (x_(idx, static_cast<std::size_t>(split.feature)) <= split.threshold) {
                indices_[mid++] = idx;
            } else {
                scratch_split_.push_back(idx);
            }
        }
        std::copy(scratch_split_.begin(), scratch_split_.end(), indices_.begin() + mid);

        const int left = allocate_node(begin, mid);
        const int right = allocate_node(mid, end);
        nodes_[node_id].feature = split.feature;
        nodes_[node_id].threshold = split.threshold;
        nodes_[node_id].left = left;
        nodes_[node_id].right = right;
        stack.push_back({right, mid, end});
        stack.push_back({left, begin, mid});
    }

    std::vector<std::size_t> candidate_features() {
        const std::size_t d = x_.cols();
        if (growth_.feature_bag == 0 || growth_.feature_bag >= d) {
            std::vector<std::size_t> all(d);
            for (std::size_t j = 0; j < d; ++j) all[j] = j;
            return all;
        }
        auto bag = rng_.sample_without_replacement(d, growth_.feature_bag);
        std::sort(bag.begin(), bag.end());
        return bag;
    }

    SplitChoice best_exhaustive_split(std::size_t begin, std::size_t end, double pos,
                                      double total) {
        SplitChoice best;
        best.impurity = gini2(pos, total);
        const auto features = candidate_features();
        for (const std::size_t f : features) {
            scratch_.clear();
            for (std::size_t i = begin; i < end; ++i) {
                const std::size_t idx = indices_[i];
                scratch_.emplace_back(x_(idx, f), static_cast<unsigned char>(y_[idx]));
            }
            std::sort(scratch_.begin(), scratch_.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            double left_pos = 0.0;
            double left_n = 0.0;
            for (std::size_t i = 0; i + 1 < scratch_.size(); ++i) {
                left_pos += scratch_[i].second;
                left_n += 1.0;
                if (scratch_[i].first == scratch_[i + 1].first) continue;
                const double right_n = total - left_n;
                const double right_pos = pos - left_pos;
                const double impurity =
                    (left_n * gini2(left_pos, left_n) + right_n * gini2(right_pos, right_n)) /
                    total;
                if (impurity < best.impurity - 1e-12) {
                    best.found = true;
                    best.feature = static_cast<int>(f);
                    best.threshold = scratch_[i].first + 0.5 * (scratch_[i + 1].first -
                                                                scratch_[i].first);
                    best.impurity = impurity;
                }
            }
        }
        return best;
    }

    SplitChoice best_random_split(std::size_t begin, std::size_t end, double pos, double total) {
        SplitChoice best;
        best.impurity = gini2(pos, total);
        const auto features = candidate_features();
        for (const std::size_t f : features) {
            double lo = x_(indices_[begin], f);
            double hi = lo;
            for (std::size_t i = begin + 1; i < end; ++i) {
                const double v = x_(indices_[i], f);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (lo >= hi) continue;
            const double threshold = rng_.uniform(lo, hi);
            double left_pos = 0.0;
            double left_n = 0.0;
            for (std::size_t i = begin; i < end; ++i) {
                const std::size_t idx = indices_[i];
                if (x_(idx, f) <= threshold) {
                    left_n += 1.0;
                    left_pos += y_[idx];
                }
            }
            const double right_n = total - left_n;
            if (left_n == 0.0 || right_n == 0.0) continue;
            const double right_pos = pos - left_pos;
            const double impurity =
                (left_n * gini2(left_pos, left_n) + right_n * gini2(right_pos, right_n)) / total;
            if (impurity < best.impurity - 1e-12) {
                best.found = true;
                best.feature = static_cast<int>(f);
                best.threshold = threshold;
                best.impurity = impurity;
            }
        }
        return best;
    }

    const Matrix& x_;
    const std::vector<int>& y_;
    TreeGrowth growth_;
    Rng rng_;
    std::vector<TreeNode> nodes_;
    std::vector<std::size_t> indices_;
    std::vector<std::pair<double, unsigned char>> scratch_;
    std::vector<std::size_t> scratch_split_;
};

double tree_score(const std::vector<TreeNode>& nodes, std::span<const double> row) {
    int at = 0;
    while (!nodes[static_cast<std::size_t>(at)].is_leaf()) {
        const auto& node = nodes[static_cast<std::size_t>(at)];
        at = row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                           : node.right;
    }
    return nodes[static_cast<std::size_t>(at)].leaf_score();
}

}  // namespace

double DecisionTreeModel::score(std::span<const double> row) const {
    return tree_score(nodes, row);
}

std::size_t DecisionTreeModel::leaf_count() const {
    std::size_t leaves = 0;
    for (const auto& node : nodes) leaves += node.is_leaf() ? 1 : 0;
    return leaves;
}

std::unique_ptr<DecisionTreeModel> fit_decision_tree(const Matrix& x, const std::vector<int>& y,
                                                     const TreeGrowth& growth, Rng rng,
                                                     const std::vector<std::size_t>& sample_indices) {
    if (x.rows() == 0) throw ParamError("fit_decision_tree: empty training set");
    if (y.size() != x.rows()) {
        throw ShapeError("fit_decision_tree: " + std::to_string(y.size()) + " labels for " +
                         std::to_string(x.rows()) + " rows");
    }
    std::vector<std::size_t> indices = sample_indices;
    if (indices.empty()) {
        indices.resize(x.rows());
        for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    }
    auto model = std::make_unique<DecisionTreeModel>();
    TreeBuilder builder(x, y, growth, rng);
    model->nodes = builder.build(std::move(indices));
    return model;
}

namespace {

std::vector<DecisionTreeModel> grow_forest(const Matrix& x, const std::vector<int>& y,
                                           const ForestOptions& opt, bool random_thresholds,
                                           Rng rng, std::vector<std::vector<bool>>* in_bag) {
    if (x.rows() < 2) throw ParamError("forest fit: need at least 2 rows");
    const std::size_t n = x.rows();
    TreeGrowth growth;
    growth.random_thresholds = random_thresholds;
    growth.feature_bag = opt.feature_bag != 0
                             ? opt.feature_bag
                             : static_cast<std::size_t>(
                                   std::ceil(std::sqrt(static_cast<double>(x.cols()))));

    std::vector<DecisionTreeModel> trees;
    trees.reserve(opt.n_trees);
    for (std::size_t t = 0; t < opt.n_trees; ++t) {
        Rng tree_rng = rng.child(t);
        std::vector<std::size_t> sample;
        if (opt.bootstrap) {
            sample.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                sample.push_back(static_cast<std::size_t>(tree_rng.below(n)));
            }
            if (in_bag) {
                std::vector<bool> mask(n, false);
                for (const auto idx : sample) mask[idx] = true;
                in_bag->push_back(std::move(mask));
            }
        } else if (in_bag) {
            in_bag->push_back(std::vector<bool>(n, true));
        }
        auto tree = fit_decision_tree(x, y, growth, tree_rng.child("split"), sample);
        trees.push_back(std::move(*tree));
    }
    return trees;
}

double forest_score(const std::vector<DecisionTreeModel>& trees, std::span<const double> row) {
    double total = 0.0;
    for (const auto& tree : trees) total += tree.score(row);
    return total / static_cast<double>(trees.size());
}

}  // namespace

double RandomForestModel::score(std::span<const double> row) const {
    return forest_score(trees, row);
}

double RandomForestModel::oob_accuracy(const Matrix& x, const std::vector<int>& y) const {
    std::size_t correct = 0;
    std::size_t counted = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double score_sum = 0.0;
        std::size_t votes = 0;
        for (std::size_t t = 0; t < trees.size(); ++t) {
            if (in_bag[t][i]) continue;
            score_sum += trees[t].score(x.row(i));
            ++votes;
        }
        if (votes == 0) continue;
        ++counted;
        const int label = score_sum / static_cast<double>(votes) >= 0.5 ? 1 : 0;
        correct += label == y[i] ? 1u : 0u;
    }
    if (counted == 0) throw DataError("oob_accuracy: no out-of-bag rows");
    return static_cast<double>(correct) / static_cast<double>(counted);
}

std::unique_ptr<RandomForestModel> fit_random_forest(const Matrix& x, const std::vector<int>& y,
                                                     const ForestOptions& opt, Rng rng) {
    auto model = std::make_unique<RandomForestModel>();
    model->trees = grow_forest(x, y, opt, false, rng, &model->in_bag);
    return model;
}

double ExtraTreesModel::score(std::span<const double> row) const {
    return forest_score(trees, row);
}

std::unique_ptr<ExtraTreesModel> fit_extra_trees(const Matrix& x, const std::vector<int>& y,
                                                 const ForestOptions& opt, Rng rng) {
    ForestOptions effective = opt;
    effective.bootstrap = false;
    auto model = std::make_unique<ExtraTreesModel>();
    model->trees = grow_forest(x, y, effective, true, rng, nullptr);
    return model;
}

}  // namespace bsid
