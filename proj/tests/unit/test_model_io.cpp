#include <doctest.h>

#include "bsid/bayes.hpp"
#include "bsid/boost.hpp"
#include "bsid/errors.hpp"
#include "bsid/glm.hpp"
#include "bsid/gp.hpp"
#include "bsid/knn.hpp"
#include "bsid/model_io.hpp"
#include "bsid/svm.hpp"
#include "bsid/tree.hpp"

using namespace bsid;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
    Rng rng(seed);
    Matrix m(r, c);
    for (double& v : m.flat()) v = rng.uniform(-2.0, 2.0);
    return m;
}

}  // namespace

TEST_SUITE("model_io") {

TEST_CASE("every family scores identically after a byte round trip") {
    const auto x = random_matrix(60, 4, 1);
    std::vector<int> y01(60);
    std::vector<int> ypm(60);
    Rng rng(2);
    for (std::size_t i = 0; i < 60; ++i) {
        y01[i] = rng.below(2) ? 1 : 0;
        ypm[i] = y01[i] ? 1 : -1;
    }

    std::vector<ModelPtr> models;
    models.push_back(fit_poisson_regression(x, y01));
    models.push_back(fit_gaussian_nb(x, y01));
    models.push_back(fit_knn(x, y01, 3));
    models.push_back(fit_linear_svm(x, ypm, {1.0, 30, true, 5}));
    {
        RbfSvmOptions opt;
        opt.gamma = 0.5;
        models.push_back(fit_rbf_svm(x, ypm, opt));
    }
    {
        KernelRidgeOptions opt;
        opt.gamma = 0.5;
        models.push_back(fit_gp_surrogate(x, ypm, opt));
    }
    models.push_back(fit_decision_tree(x, y01));
    models.push_back(fit_random_forest(x, y01, {10, true, 0}, Rng(7)));
    models.push_back(fit_extra_trees(x, y01, {10, true, 0}, Rng(8)));
    models.push_back(fit_adaboost(x, ypm, {10}));

    const auto probe = random_matrix(25, 4, 9);
    for (const auto& model : models) {
        const auto bytes = model_to_bytes(*model);
        const auto restored = model_from_bytes(bytes);
        CHECK(restored->family() == model->family());
        CHECK(restored->threshold() == model->threshold());
        for (std::size_t i = 0; i < probe.rows(); ++i) {
            CHECK(restored->score(probe.row(i)) == model->score(probe.row(i)));
        }
    }
}

TEST_CASE("model files go through the sealed container") {
    const auto x = random_matrix(30, 3, 11);
    std::vector<int> y(30);
    Rng rng(12);
    for (auto& v : y) v = rng.below(2) ? 1 : 0;
    const auto model = fit_decision_tree(x, y);
    const std::string path = "/tmp/bsid_model_roundtrip.bin";
    save_model(*model, path);
    const auto loaded = load_model(path);
    CHECK(loaded->family() == Family::DecisionTree);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        CHECK(loaded->score(x.row(i)) == model->score(x.row(i)));
    }
    std::remove(path.c_str());
}

TEST_CASE("corrupt family tags are rejected") {
    std::vector<std::uint8_t> payload{0xee};
    CHECK_THROWS_AS(model_from_bytes(payload), DataError);
}

}  // TEST_SUITE
