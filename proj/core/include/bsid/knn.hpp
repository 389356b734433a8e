#pragma once

#include "bsid/models.hpp"

namespace bsid {

// Brute-force k-nearest-neighbours by Euclidean distance. Distance ties break
// toward the lower training index; the score is the positive fraction among
// the k neighbours, thresholded at 0.5 (ties positive).
class KnnModel final : public TrainedModel {
public:
    KnnModel(Matrix x, std::vector<int> y, std::size_t k);

    Family family() const override { return Family::Knn; }
    double threshold() const override { return 0.5; }
    double score(std::span<const double> row) const override;
    std::vector<double> score_rows(const Matrix& queries) const override;

    std::size_t k() const { return k_; }
    std::size_t training_size() const { return x_.rows(); }
    const Matrix& training_features() const { return x_; }
    const std::vector<int>& training_labels() const { return y_; }

private:
    Matrix x_;
    std::vector<int> y_;
    std::size_t k_;
};

std::unique_ptr<KnnModel> fit_knn(Matrix x, std::vector<int> y, std::size_t k = 4);

}  // namespace bsid
