#include "bsid/crossval.hpp"

#include <atomic>
#include <thread>

#include "bsid/bayes.hpp"
#include "bsid/boost.hpp"
#include "bsid/container.hpp"
#include "bsid/errors.hpp"
#include "bsid/glm.hpp"
#include "bsid/gp.hpp"
#include "bsid/knn.hpp"
#include "bsid/svm.hpp"
#include "bsid/tree.hpp"

namespace bsid {

const char* to_string(Variant v) {
    switch (v) {
        case Variant::Original: return "original";
        case Variant::Onehot: return "onehot";
        case Variant::Augmented: return "augmented";
        case Variant::Proposed: return "proposed";
    }
    return "unknown";
}

Variant variant_from_string(const std::string& s) {
    for (Variant v : {Variant::Original, Variant::Onehot, Variant::Augmented, Variant::Proposed}) {
        if (s == to_string(v)) return v;
    }
    throw ParamError("unknown variant: '" + s + "'");
}

void Hyperparams::set(const std::string& key, double value) {
    auto count = [&](std::size_t& field) { field = static_cast<std::size_t>(value); };
    if (key == "poisson.alpha") poisson_alpha = value;
    else if (key == "poisson.tol") poisson_tol = value;
    else if (key == "knn.k") count(knn_k);
    else if (key == "svm.c") svm_c = value;
    else if (key == "rbf.gamma") rbf_gamma = value;
    else if (key == "rbf.c") rbf_c = value;
    else if (key == "gp.gamma") gp_gamma = value;
    else if (key == "gp.ridge") gp_ridge = value;
    else if (key == "pca.components") count(pca_components);
    else if (key == "trees.count") count(n_trees);
    else if (key == "ada.rounds") count(ada_rounds);
    else if (key == "cap") count(kernel_cap);
    else if (key == "nn.lr") nn_learning_rate = value;
    else if (key == "nn.epochs") count(nn_epochs);
    else if (key == "nn.batch") count(nn_batch);
    else if (key == "ae.epochs") count(ae_epochs);
    else if (key == "mixup.pairs") count(mixup.pairs);
    else if (key == "mixup.copies") count(mixup.copies_per_pair);
    else if (key == "mixup.alpha") mixup.alpha = value;
    else if (key == "mixup.beta") mixup.beta = value;
    else throw ParamError("unknown hyperparameter key: '" + key + "'");
}

namespace {

bool uses_pca(Family family) {
    return family == Family::LinearSvm || family == Family::RbfSvm;
}

bool uses_signed_labels(Family family) {
    return family == Family::LinearSvm || family == Family::RbfSvm ||
           family == Family::AdaBoost || family == Family::GaussianProcess;
}

std::vector<LayerSpec> relu_stack(const std::vector<std::size_t>& widths) {
    std::vector<LayerSpec> specs;
    specs.reserve(widths.size());
    for (const auto w : widths) specs.push_back({w, Activation::Relu});
    return specs;
}

ProposedConfig proposed_config_from(const Hyperparams& hp, std::uint64_t seed) {
    ProposedConfig cfg;
    cfg.autoencoder_layers = relu_stack(hp.ae_widths);
    cfg.autoencoder_epochs = hp.ae_epochs;
    cfg.head_hidden = relu_stack(hp.head_widths);
    cfg.train.learning_rate = hp.nn_learning_rate;
    cfg.train.epochs = hp.nn_epochs;
    cfg.train.batch_size = hp.nn_batch;
    cfg.mixup = hp.mixup;
    cfg.mixup.mode = MixupMode::IntraClass;  // the head trains class-balanced
    cfg.seed = seed;
    return cfg;
}

// Adapter putting the trained sigmoid-head network behind the model contract.
class MlpClassifier final : public TrainedModel {
public:
    explicit MlpClassifier(MlpModel model) : model_(std::move(model)) {}
    Family family() const override { return Family::Mlp; }
    double threshold() const override { return 0.5; }
    double score(std::span<const double> row) const override {
        Matrix one(1, row.size());
        std::copy(row.begin(), row.end(), one.row(0).begin());
        return model_.score_rows(one)[0];
    }
    std::vector<double> score_rows(const Matrix& x) const override {
        return model_.score_rows(x);
    }

private:
    MlpModel model_;
};

std::vector<int> to_signed(const std::vector<int>& zero_one) {
    std::vector<int> out(zero_one.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = zero_one[i] ? 1 : -1;
    return out;
}

}  // namespace

std::uint64_t FoldState::fingerprint() const {
    ByteWriter w;
    put_encoding_plan(w, plan);
    if (pca) {
        w.put_u8(1);
        w.put_f64_vector(pca->mean);
        w.put_matrix(pca->components);
        w.put_f64_vector(pca->explained_variance);
    } else {
        w.put_u8(0);
    }
    if (autoencoder) {
        w.put_u8(1);
        put_autoencoder(w, *autoencoder);
    } else {
        w.put_u8(0);
    }
    return fnv1a64(w.bytes().data(), w.bytes().size());
}

FoldState fit_fold_state(const Dataset& ds, Variant variant, Family family,
                         const std::vector<std::size_t>& train_rows, const Hyperparams& hp,
                         const Rng& rng) {
    FoldState state;
    state.plan = fit_encoding(ds, train_rows);

    const EncodingMode mode =
        variant == Variant::Original ? EncodingMode::Label : EncodingMode::Onehot;

    if (uses_pca(family)) {
        const Matrix encoded = transform_rows(ds, train_rows, state.plan, mode);
        state.pca = pca_fit(encoded, std::min(hp.pca_components, encoded.cols()));
    }
    if (variant == Variant::Proposed) {
        const Matrix onehot = transform_rows(ds, train_rows, state.plan, EncodingMode::Onehot);
        TrainConfig ae_cfg;
        ae_cfg.learning_rate = hp.nn_learning_rate;
        ae_cfg.epochs = hp.ae_epochs ? hp.ae_epochs : hp.nn_epochs;
        ae_cfg.batch_size = hp.nn_batch;
        ae_cfg.loss = Loss::Mse;
        ae_cfg.seed = rng.child("autoencoder").seed();
        state.autoencoder = train_autoencoder(onehot, relu_stack(hp.ae_widths), ae_cfg);
    }
    return state;
}

namespace {

struct FoldEvaluation {
    FoldMetrics metrics;
    SubsampleInfo subsample;
};

FoldEvaluation evaluate_fold(Family family, const Hyperparams& hp, const Dataset& ds,
                             Variant variant, const std::vector<std::size_t>& train_rows,
                             const std::vector<std::size_t>& val_rows, const Rng& cell_rng) {
    FoldEvaluation out;

    if (variant == Variant::Proposed || family == Family::Proposed) {
        if (variant != Variant::Proposed || family != Family::Proposed) {
            throw ParamError("the proposed variant pairs only with the proposed family");
        }
        const auto artifact =
            fit_proposed(ds, train_rows, proposed_config_from(hp, cell_rng.child("fit").seed()));
        ProposedModel model(std::move(artifact));
        const Matrix val_onehot =
            transform_rows(ds, val_rows, model.artifact().plan, EncodingMode::Onehot);
        const auto scores = model.score_rows(val_onehot);
        const auto val_labels = gather(ds.labels, val_rows);
        out.metrics = compute_metrics(val_labels, scores, model.threshold());
        return out;
    }

    const FoldState state = fit_fold_state(ds, variant, family, train_rows, hp, cell_rng);
    const EncodingMode mode =
        variant == Variant::Original ? EncodingMode::Label : EncodingMode::Onehot;

    Matrix x_train = transform_rows(ds, train_rows, state.plan, mode);
    Matrix x_val = transform_rows(ds, val_rows, state.plan, mode);
    const auto val_labels = gather(ds.labels, val_rows);

    std::vector<double> soft_labels(train_rows.size());
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
        soft_labels[i] = static_cast<double>(ds.labels[train_rows[i]]);
    }

    if (variant == Variant::Augmented) {
        AugmentedSet augmented =
            augment_training(x_train, soft_labels, hp.mixup, cell_rng.child("mixup"));
        x_train = std::move(augmented.features);
        soft_labels = std::move(augmented.soft_labels);
    }

    if (state.pca) {
        x_train = pca_transform(*state.pca, x_train);
        x_val = pca_transform(*state.pca, x_val);
    }

    const std::vector<int> hard_labels = harden_labels(soft_labels);
    const Rng fit_rng = cell_rng.child("fit");

    ModelPtr model;
    switch (family) {
        case Family::Poisson: {
            PoissonFitOptions opt;
            opt.alpha = hp.poisson_alpha;
            opt.tol = hp.poisson_tol;
            model = fit_poisson_regression(x_train, hard_labels, opt);
            break;
        }
        case Family::NaiveBayes:
            model = fit_gaussian_nb(x_train, hard_labels);
            break;
        case Family::Knn:
            model = fit_knn(std::move(x_train), hard_labels, hp.knn_k);
            break;
        case Family::LinearSvm: {
            LinearSvmOptions opt;
            opt.c = hp.svm_c;
            opt.seed = fit_rng.seed();
            model = fit_linear_svm(x_train, to_signed(hard_labels), opt);
            break;
        }
        case Family::RbfSvm: {
            RbfSvmOptions opt;
            opt.gamma = hp.rbf_gamma;
            opt.c = hp.rbf_c;
            opt.cap = hp.kernel_cap;
            opt.seed = fit_rng.seed();
            model = fit_rbf_svm(x_train, to_signed(hard_labels), opt);
            break;
        }
        case Family::GaussianProcess: {
            KernelRidgeOptions opt;
            opt.gamma = hp.gp_gamma;
            opt.ridge = hp.gp_ridge;
            opt.cap = hp.kernel_cap;
            opt.seed = fit_rng.seed();
            model = fit_gp_surrogate(x_train, to_signed(hard_labels), opt);
            break;
        }
        case Family::DecisionTree:
            model = fit_decision_tree(x_train, hard_labels);
            break;
        case Family::RandomForest: {
            ForestOptions opt;
            opt.n_trees = hp.n_trees;
            model = fit_random_forest(x_train, hard_labels, opt, fit_rng);
            break;
        }
        case Family::ExtraTrees: {
            ForestOptions opt;
            opt.n_trees = hp.n_trees;
            model = fit_extra_trees(x_train, hard_labels, opt, fit_rng);
            break;
        }
        case Family::AdaBoost:
            model = fit_adaboost(x_train, to_signed(hard_labels), {hp.ada_rounds});
            break;
        case Family::Mlp: {
            TrainConfig cfg;
            cfg.learning_rate = hp.nn_learning_rate;
            cfg.epochs = hp.nn_epochs;
            cfg.batch_size = hp.nn_batch;
            cfg.seed = fit_rng.seed();
            auto mlp = train_mlp(x_train.cols(), relu_stack(hp.mlp_hidden), x_train, soft_labels,
                                 cfg);
            model = std::make_unique<MlpClassifier>(std::move(mlp));
            break;
        }
        case Family::Proposed:
            throw ParamError("unreachable: proposed handled above");
    }

    out.subsample = model->subsample_info();
    const auto scores = model->score_rows(x_val);
    out.metrics = compute_metrics(val_labels, scores, model->threshold());
    return out;
}

}  // namespace

MetricsReport cross_validate(Family family, const Hyperparams& hp, const Dataset& ds,
                             Variant variant, std::size_t k, std::uint64_t seed) {
    MetricsReport report;
    report.family = family;
    report.variant = variant;
    report.seed = seed;
    report.folds = k;

    const Rng master(seed);
    const FoldPlan plan = stratified_kfold(ds.labels, k, master.child("folds"));

    std::vector<double> acc;
    std::vector<double> prec;
    std::vector<double> rec;
    std::vector<double> f1;
    std::vector<double> auc;
    for (std::size_t fold = 0; fold < k; ++fold) {
        const auto train_rows = plan.training_indices(static_cast<int>(fold));
        const auto val_rows = plan.validation_indices(static_cast<int>(fold));
        const Rng cell_rng =
            master.child(to_string(family)).child(to_string(variant)).child(fold);
        FoldEvaluation eval;
        try {
            eval = evaluate_fold(family, hp, ds, variant, train_rows, val_rows, cell_rng);
        } catch (const Error& e) {
            throw DataError("fold " + std::to_string(fold) + ": " + e.what());
        }
        report.fold_metrics.push_back(eval.metrics);
        if (eval.subsample.subsampled) report.subsample = eval.subsample;
        acc.push_back(eval.metrics.accuracy);
        prec.push_back(eval.metrics.precision);
        rec.push_back(eval.metrics.recall);
        f1.push_back(eval.metrics.f1);
        auc.push_back(eval.metrics.auc);
    }
    report.accuracy = summarize(acc);
    report.precision = summarize(prec);
    report.recall = summarize(rec);
    report.f1 = summarize(f1);
    report.auc = summarize(auc);
    return report;
}

GridSearchResult grid_search(Family family, const std::vector<GridPoint>& grid,
                             const Hyperparams& base, const Dataset& ds, Variant variant,
                             std::size_t k, std::uint64_t seed) {
    if (grid.empty()) throw ParamError("grid_search: empty grid");
    GridSearchResult result;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Hyperparams hp = base;
        for (const auto& [key, value] : grid[i].overrides) hp.set(key, value);
        result.reports.push_back(cross_validate(family, hp, ds, variant, k, seed));
        const auto& cur = result.reports.back();
        const auto& best = result.reports[result.best_index];
        const bool better = cur.f1.mean > best.f1.mean ||
                            (cur.f1.mean == best.f1.mean && cur.auc.mean > best.auc.mean);
        if (i > 0 && better) result.best_index = i;
    }
    result.best_point = grid[result.best_index];
    return result;
}

std::vector<Family> default_benchmark_families() {
    return {Family::Poisson,      Family::NaiveBayes,   Family::GaussianProcess, Family::Knn,
            Family::LinearSvm,    Family::DecisionTree, Family::RandomForest,
            Family::ExtraTrees,   Family::AdaBoost,     Family::Mlp};
}

std::vector<BenchmarkCell> benchmark_cells(const std::vector<Family>& families,
                                           const std::vector<Variant>& variants,
                                           bool include_proposed) {
    std::vector<BenchmarkCell> cells;
    for (const Variant variant : variants) {
        if (variant == Variant::Proposed) continue;
        for (const Family family : families) {
            if (family == Family::Proposed) continue;
            if (family == Family::RbfSvm && variant != Variant::Augmented) continue;
            cells.push_back({family, variant});
            // The kernel SVM row follows the linear one in the augmented block.
            if (family == Family::LinearSvm && variant == Variant::Augmented &&
                std::find(families.begin(), families.end(), Family::RbfSvm) == families.end()) {
                cells.push_back({Family::RbfSvm, variant});
            }
        }
    }
    if (include_proposed) cells.push_back({Family::Proposed, Variant::Proposed});
    return cells;
}

std::vector<MetricsReport> run_benchmark(const Dataset& ds, const std::vector<BenchmarkCell>& cells,
                                         const Hyperparams& hp, std::size_t k, std::uint64_t seed,
                                         std::size_t workers) {
    std::vector<MetricsReport> reports(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const auto& cell = cells[i];
            try {
                reports[i] = cross_validate(cell.family, hp, ds, cell.variant, k, seed);
            } catch (const std::exception& e) {
                reports[i].family = cell.family;
                reports[i].variant = cell.variant;
                reports[i].seed = seed;
                reports[i].folds = k;
                reports[i].error = e.what();
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return reports;
}

}  // namespace bsid
