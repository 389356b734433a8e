#include "bsid/models.hpp"

#include <algorithm>

#include "bsid/errors.hpp"

namespace bsid {

const char* to_string(Family f) {
    switch (f) {
        case Family::Poisson: return "poisson";
        case Family::NaiveBayes: return "naive_bayes";
        case Family::GaussianProcess: return "gaussian_process";
        case Family::Knn: return "knn";
        case Family::LinearSvm: return "linear_svm";
        case Family::RbfSvm: return "rbf_svm";
        case Family::DecisionTree: return "decision_tree";
        case Family::RandomForest: return "random_forest";
        case Family::ExtraTrees: return "extra_trees";
        case Family::AdaBoost: return "adaboost";
        case Family::Mlp: return "mlp";
        case Family::Proposed: return "proposed";
    }
    return "unknown";
}

Family family_from_string(const std::string& s) {
    const Family all[] = {Family::Poisson,      Family::NaiveBayes, Family::GaussianProcess,
                          Family::Knn,          Family::LinearSvm,  Family::RbfSvm,
                          Family::DecisionTree, Family::RandomForest, Family::ExtraTrees,
                          Family::AdaBoost,     Family::Mlp,        Family::Proposed};
    for (Family f : all) {
        if (s == to_string(f)) return f;
    }
    throw ParamError("unknown model family: '" + s + "'");
}

std::vector<std::size_t> stratified_subsample(const std::vector<int>& labels, std::size_t cap,
                                              Rng rng) {
    const std::size_t n = labels.size();
    if (cap >= n) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        return all;
    }
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < n; ++i) by_class[labels[i] ? 1 : 0].push_back(i);

    std::size_t take_pos = (cap * by_class[1].size()) / n;
    if (!by_class[1].empty()) take_pos = std::max<std::size_t>(take_pos, 1);
    take_pos = std::min(take_pos, by_class[1].size());
    std::size_t take_neg = cap - take_pos;
    take_neg = std::min(take_neg, by_class[0].size());

    std::vector<std::size_t> chosen;
    chosen.reserve(take_pos + take_neg);
    rng.shuffle(by_class[0]);
    rng.shuffle(by_class[1]);
    chosen.insert(chosen.end(), by_class[0].begin(),
                  by_class[0].begin() + static_cast<long>(take_neg));
    chosen.insert(chosen.end(), by_class[1].begin(),
                  by_class[1].begin() + static_cast<long>(take_pos));
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

Matrix gather_rows(const Matrix& x, const std::vector<std::size_t>& rows) {
    Matrix out(rows.size(), x.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::copy(x.row(rows[i]).begin(), x.row(rows[i]).end(), out.row(i).begin());
    }
    return out;
}

}  // namespace bsid
