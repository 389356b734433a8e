#pragma once

#include <map>
#include <optional>
#include <string>

#include "bsid/folds.hpp"
#include "bsid/metrics.hpp"
#include "bsid/mixup.hpp"
#include "bsid/models.hpp"
#include "bsid/pca.hpp"
#include "bsid/pipeline.hpp"

namespace bsid {

// The three published preprocessing recipes plus the full method:
//   original  - label encoding (category indices, scaled numerics)
//   onehot    - one-hot blocks, scaled numerics
//   augmented - one-hot plus MixUp on the training fold
//   proposed  - one-hot, autoencoder embedding, latent MixUp, sigmoid head
enum class Variant { Original, Onehot, Augmented, Proposed };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);

// Every tunable knob in one bag; grid search overrides members by key.
struct Hyperparams {
    double poisson_alpha = 0.9;
    double poisson_tol = 1e-5;
    std::size_t knn_k = 4;
    double svm_c = 1.0;
    double rbf_gamma = 32.0;
    double rbf_c = 1.0;
    double gp_gamma = 32.0;
    double gp_ridge = 0.1;
    std::size_t pca_components = 5;
    std::size_t n_trees = 30;
    std::size_t ada_rounds = 30;
    std::size_t kernel_cap = 4000;
    double nn_learning_rate = 1e-4;
    std::size_t nn_epochs = 100;
    std::size_t nn_batch = 32;
    std::vector<std::size_t> mlp_hidden = {512, 7, 64, 32, 4};
    MixupConfig mixup;
    std::vector<std::size_t> ae_widths = {256, 64, 32};
    std::size_t ae_epochs = 100;  // embedding reconstruction passes
    std::vector<std::size_t> head_widths = {32, 24, 6};

    // Known keys: poisson.alpha poisson.tol knn.k svm.c rbf.gamma rbf.c
    // gp.gamma gp.ridge pca.components trees.count ada.rounds cap nn.lr
    // nn.epochs nn.batch ae.epochs mixup.pairs mixup.copies mixup.alpha mixup.beta
    void set(const std::string& key, double value);
};

// Everything fitted from the training fold; the validation rows never touch
// any of it. Fingerprint-comparable for the leakage guard.
struct FoldState {
    EncodingPlan plan;
    std::optional<PcaModel> pca;
    std::optional<AutoencoderModel> autoencoder;

    std::uint64_t fingerprint() const;
};

FoldState fit_fold_state(const Dataset& ds, Variant variant, Family family,
                         const std::vector<std::size_t>& train_rows, const Hyperparams& hp,
                         const Rng& rng);

struct MetricsReport {
    Family family = Family::Poisson;
    Variant variant = Variant::Original;
    std::uint64_t seed = 0;
    std::size_t folds = 0;
    std::vector<FoldMetrics> fold_metrics;
    MetricSummary accuracy;
    MetricSummary precision;
    MetricSummary recall;
    MetricSummary f1;
    MetricSummary auc;
    SubsampleInfo subsample;
    std::string error;  // non-empty marks a failed cell; metrics are blank

    bool failed() const { return !error.empty(); }
};

// Leakage-safe k-fold evaluation: per fold, all preprocessing state and the
// model are fitted on training rows only, and the untouched validation rows
// are scored once. Fold RNG streams derive from (seed, family, variant, fold).
MetricsReport cross_validate(Family family, const Hyperparams& hp, const Dataset& ds,
                             Variant variant, std::size_t k, std::uint64_t seed);

struct GridPoint {
    std::map<std::string, double> overrides;
};

struct GridSearchResult {
    std::size_t best_index = 0;
    GridPoint best_point;
    std::vector<MetricsReport> reports;  // one per grid point, in grid order
};

// Exhaustive evaluation maximizing mean F1; ties break by higher AUC, then
// first-in-grid order.
GridSearchResult grid_search(Family family, const std::vector<GridPoint>& grid,
                             const Hyperparams& base, const Dataset& ds, Variant variant,
                             std::size_t k, std::uint64_t seed);

// The published table layout: ten families for original and one-hot, eleven
// (RBF SVM added) for augmented, then the proposed pipeline.
struct BenchmarkCell {
    Family family;
    Variant variant;
};

std::vector<BenchmarkCell> benchmark_cells(const std::vector<Family>& families,
                                           const std::vector<Variant>& variants,
                                           bool include_proposed);

std::vector<Family> default_benchmark_families();

// Runs every cell under a bounded worker pool; per-cell failures land in the
// report's error field and the run continues. Output order and content are
// independent of the worker count.
std::vector<MetricsReport> run_benchmark(const Dataset& ds, const std::vector<BenchmarkCell>& cells,
                                         const Hyperparams& hp, std::size_t k, std::uint64_t seed,
                                         std::size_t workers);

}  // namespace bsid
