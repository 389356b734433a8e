#include "bsid/model_io.hpp"

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

namespace {

void put_int_vector(ByteWriter& w, const std::vector<int>& v) {
    w.put_u64(v.size());
    for (int x : v) w.put_u64(static_cast<std::uint64_t>(static_cast<std::int64_t>(x)));
}

std::vector<int> get_int_vector(ByteReader& r) {
    std::vector<int> v(r.get_u64());
    for (int& x : v) x = static_cast<int>(static_cast<std::int64_t>(r.get_u64()));
    return v;
}

void put_tree(ByteWriter& w, const DecisionTreeModel& tree) {
    w.put_u64(tree.nodes.size());
    for (const auto& node : tree.nodes) {
        w.put_u64(static_cast<std::uint64_t>(static_cast<std::int64_t>(node.feature)));
        w.put_f64(node.threshold);
        w.put_u64(static_cast<std::uint64_t>(static_cast<std::int64_t>(node.left)));
        w.put_u64(static_cast<std::uint64_t>(static_cast<std::int64_t>(node.right)));
        w.put_f64(node.positive_weight);
        w.put_f64(node.total_weight);
    }
}

DecisionTreeModel get_tree(ByteReader& r) {
    DecisionTreeModel tree;
    tree.nodes.resize(r.get_u64());
    for (auto& node : tree.nodes) {
        node.feature = static_cast<int>(static_cast<std::int64_t>(r.get_u64()));
        node.threshold = r.get_f64();
        node.left = static_cast<int>(static_cast<std::int64_t>(r.get_u64()));
        node.right = static_cast<int>(static_cast<std::int64_t>(r.get_u64()));
        node.positive_weight = r.get_f64();
        node.total_weight = r.get_f64();
    }
    return tree;
}

}  // namespace

std::vector<std::uint8_t> model_to_bytes(const TrainedModel& model) {
    ByteWriter w;
    w.put_u8(static_cast<std::uint8_t>(model.family()));
    switch (model.family()) {
        case Family::Poisson: {
            const auto& m = dynamic_cast<const PoissonRegressionModel&>(model);
            w.put_f64(m.intercept);
            w.put_f64_vector(m.coefficients);
            break;
        }
        case Family::NaiveBayes: {
            const auto& m = dynamic_cast<const GaussianNbModel&>(model);
            w.put_f64(m.log_prior[0]);
            w.put_f64(m.log_prior[1]);
            for (int c = 0; c < 2; ++c) {
                w.put_f64_vector(m.mean[c]);
                w.put_f64_vector(m.variance[c]);
            }
            break;
        }
        case Family::GaussianProcess: {
            const auto& m = dynamic_cast<const KernelRidgeModel&>(model);
            w.put_matrix(m.basis);
            w.put_f64_vector(m.coefficients);
            w.put_f64(m.gamma);
            w.put_f64(m.ridge_used);
            break;
        }
        case Family::Knn: {
            const auto& m = dynamic_cast<const KnnModel&>(model);
            w.put_matrix(m.training_features());
            put_int_vector(w, m.training_labels());
            w.put_u64(m.k());
            break;
        }
        case Family::LinearSvm: {
            const auto& m = dynamic_cast<const LinearSvmModel&>(model);
            w.put_f64_vector(m.weights);
            w.put_f64(m.bias);
            break;
        }
        case Family::RbfSvm: {
            const auto& m = dynamic_cast<const RbfSvmModel&>(model);
            w.put_matrix(m.support_vectors);
            w.put_f64_vector(m.alpha_y);
            w.put_f64(m.bias);
            w.put_f64(m.gamma);
            break;
        }
        case Family::DecisionTree: {
            put_tree(w, dynamic_cast<const DecisionTreeModel&>(model));
            break;
        }
        case Family::RandomForest: {
            const auto& m = dynamic_cast<const RandomForestModel&>(model);
            w.put_u64(m.trees.size());
            for (const auto& tree : m.trees) put_tree(w, tree);
            break;
        }
        case Family::ExtraTrees: {
            const auto& m = dynamic_cast<const ExtraTreesModel&>(model);
            w.put_u64(m.trees.size());
            for (const auto& tree : m.trees) put_tree(w, tree);
            break;
        }
        case Family::AdaBoost: {
            const auto& m = dynamic_cast<const AdaBoostModel&>(model);
            w.put_u64(m.stumps.size());
            for (std::size_t i = 0; i < m.stumps.size(); ++i) {
                w.put_u64(static_cast<std::uint64_t>(
                    static_cast<std::int64_t>(m.stumps[i].feature)));
                w.put_f64(m.stumps[i].threshold);
                w.put_u64(static_cast<std::uint64_t>(
                    static_cast<std::int64_t>(m.stumps[i].polarity)));
                w.put_f64(m.round_weights[i]);
            }
            w.put_u64(static_cast<std::uint64_t>(m.fallback_label));
            break;
        }
        default:
            throw ParamError(std::string("model_to_bytes: family '") + to_string(model.family()) +
                             "' persists through its own artifact path");
    }
    return w.take();
}

ModelPtr model_from_bytes(const std::vector<std::uint8_t>& payload) {
    ByteReader r(payload);
    const auto family = static_cast<Family>(r.get_u8());
    switch (family) {
        case Family::Poisson: {
            auto m = std::make_unique<PoissonRegressionModel>();
            m->intercept = r.get_f64();
            m->coefficients = r.get_f64_vector();
            return m;
        }
        case Family::NaiveBayes: {
            auto m = std::make_unique<GaussianNbModel>();
            m->log_prior[0] = r.get_f64();
            m->log_prior[1] = r.get_f64();
            for (int c = 0; c < 2; ++c) {
                m->mean[c] = r.get_f64_vector();
                m->variance[c] = r.get_f64_vector();
            }
            return m;
        }
        case Family::GaussianProcess: {
            auto m = std::make_unique<KernelRidgeModel>();
            m->basis = r.get_matrix();
            m->coefficients = r.get_f64_vector();
            m->gamma = r.get_f64();
            m->ridge_used = r.get_f64();
            return m;
        }
        case Family::Knn: {
            Matrix x = r.get_matrix();
            auto y = get_int_vector(r);
            const std::uint64_t k = r.get_u64();
            return fit_knn(std::move(x), std::move(y), k);
        }
        case Family::LinearSvm: {
            auto m = std::make_unique<LinearSvmModel>();
            m->weights = r.get_f64_vector();
            m->bias = r.get_f64();
            return m;
        }
        case Family::RbfSvm: {
            auto m = std::make_unique<RbfSvmModel>();
            m->support_vectors = r.get_matrix();
            m->alpha_y = r.get_f64_vector();
            m->bias = r.get_f64();
            m->gamma = r.get_f64();
            return m;
        }
        case Family::DecisionTree: {
            auto m = std::make_unique<DecisionTreeModel>();
            *m = get_tree(r);
            return m;
        }
        case Family::RandomForest: {
            auto m = std::make_unique<RandomForestModel>();
            m->trees.resize(r.get_u64());
            for (auto& tree : m->trees) tree = get_tree(r);
            return m;
        }
        case Family::ExtraTrees: {
            auto m = std::make_unique<ExtraTreesModel>();
            m->trees.resize(r.get_u64());
            for (auto& tree : m->trees) tree = get_tree(r);
            return m;
        }
        case Family::AdaBoost: {
            auto m = std::make_unique<AdaBoostModel>();
            const std::uint64_t rounds = r.get_u64();
            for (std::uint64_t i = 0; i < rounds; ++i) {
                DecisionStump stump;
                stump.feature = static_cast<int>(static_cast<std::int64_t>(r.get_u64()));
                stump.threshold = r.get_f64();
                stump.polarity = static_cast<int>(static_cast<std::int64_t>(r.get_u64()));
                m->stumps.push_back(stump);
                m->round_weights.push_back(r.get_f64());
            }
            m->fallback_label = static_cast<int>(r.get_u64());
            return m;
        }
        default:
            throw DataError("model payload carries an unknown family tag");
    }
}

void save_model(const TrainedModel& model, const std::string& path) {
    write_file(path, seal_container(PayloadKind::Model, model_to_bytes(model)));
}

ModelPtr load_model(const std::string& path) {
    return model_from_bytes(open_container(read_file(path), PayloadKind::Model));
}

}  // namespace bsid
