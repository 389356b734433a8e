#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bsid/matrix.hpp"
#include "bsid/rng.hpp"

namespace bsid {

enum class Family {
    Poisson,
    NaiveBayes,
    GaussianProcess,
    Knn,
    LinearSvm,
    RbfSvm,
    DecisionTree,
    RandomForest,
    ExtraTrees,
    AdaBoost,
    Mlp,
    Proposed,
};

const char* to_string(Family f);
Family family_from_string(const std::string& s);

// Recorded when a kernel-method fit ran on a seeded stratified subsample.
struct SubsampleInfo {
    bool subsampled = false;
    std::size_t cap = 0;
    std::size_t used = 0;
    std::size_t total = 0;
};

// A fitted classifier. score() is a deterministic function of the model and
// the input row: higher means more positive. predict() thresholds the score
// (0.5 on probability-like scores, 0 on signed margins).
class TrainedModel {
public:
    virtual ~TrainedModel() = default;
    virtual Family family() const = 0;
    virtual double score(std::span<const double> row) const = 0;
    virtual double threshold() const = 0;

    virtual int predict(std::span<const double> row) const {
        return score(row) >= threshold() ? 1 : 0;
    }

    virtual std::vector<double> score_rows(const Matrix& x) const {
        std::vector<double> out(x.rows());
        for (std::size_t i = 0; i < x.rows(); ++i) out[i] = score(x.row(i));
        return out;
    }

    const SubsampleInfo& subsample_info() const { return subsample_; }
    void set_subsample_info(const SubsampleInfo& info) { subsample_ = info; }

private:
    SubsampleInfo subsample_;
};

using ModelPtr = std::unique_ptr<TrainedModel>;

// Seeded stratified subsample of at most `cap` rows: class proportions are
// preserved (each class keeps at least one member). Returned indices are
// sorted ascending.
std::vector<std::size_t> stratified_subsample(const std::vector<int>& labels, std::size_t cap,
                                              Rng rng);

Matrix gather_rows(const Matrix& x, const std::vector<std::size_t>& rows);

template <typename T>
std::vector<T> gather(const std::vector<T>& v, const std::vector<std::size_t>& rows) {
    std::vector<T> out;
    out.reserve(rows.size());
    for (const auto r : rows) out.push_back(v[r]);
    return out;
}

}  // namespace bsid
