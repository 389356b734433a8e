#include "bsid/knn.hpp"

#include <algorithm>
#include <string>

#include "bsid/errors.hpp"

namespace bsid {

KnnModel::KnnModel(Matrix x, std::vector<int> y, std::size_t k)
    : x_(std::move(x)), y_(std::move(y)), k_(k) {
    if (x_.rows() == 0) throw DataError("knn: empty training set");
    if (y_.size() != x_.rows()) {
        throw ShapeError("knn: " + std::to_string(y_.size()) + " labels for " +
                         std::to_string(x_.rows()) + " rows");
    }
    if (k_ == 0 || k_ > x_.rows()) {
        throw ParamError("knn: k=" + std::to_string(k_) + " with " + std::to_string(x_.rows()) +
                         " training rows");
    }
}

double KnnModel::score(std::span<const double> row) const {
    thread_local std::vector<std::pair<double, std::size_t>> buffer;
    buffer.clear();
    buffer.reserve(x_.rows());
    for (std::size_t i = 0; i < x_.rows(); ++i) {
        buffer.emplace_back(squared_distance(x_.row(i), row), i);
    }
    std::nth_element(buffer.begin(), buffer.begin() + static_cast<long>(k_ - 1), buffer.end());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < k_; ++i) positives += static_cast<std::size_t>(y_[buffer[i].second]);
    return static_cast<double>(positives) / static_cast<double>(k_);
}

std::vector<double> KnnModel::score_rows(const Matrix& queries) const {
    if (queries.cols() != x_.cols()) {
        throw ShapeError("knn: query width " + std::to_string(queries.cols()) +
                         " vs training width " + std::to_string(x_.cols()));
    }
    std::vector<double> out(queries.rows());
    for (std::size_t q = 0; q < queries.rows(); ++q) out[q] = score(queries.row(q));
    return out;
}

std::unique_ptr<KnnModel> fit_knn(Matrix x, std::vector<int> y, std::size_t k) {
    return std::make_unique<KnnModel>(std::move(x), std::move(y), k);
}

}  // namespace bsid
