#include <doctest.h>

#include <cmath>

#include "brute_force.hpp"
#include "bsid/bayes.hpp"
#include "bsid/errors.hpp"
#include "bsid/glm.hpp"
#include "bsid/gp.hpp"
#include "bsid/kernels.hpp"
#include "bsid/knn.hpp"
#include "bsid/rng.hpp"
#include "bsid/svm.hpp"

using namespace bsid;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed, double lo = -1.0,
                     double hi = 1.0) {
    Rng rng(seed);
    Matrix m(r, c);
    for (double& v : m.flat()) v = rng.uniform(lo, hi);
    return m;
}

// Two Gaussian blobs separated by ~6 sigma along every axis.
struct Blobs {
    Matrix x;
    std::vector<int> y01;
    std::vector<int> ypm;
};

Blobs make_blobs(std::size_t per_class, std::size_t dims, std::uint64_t seed,
                 double separation = 6.0) {
    Rng rng(seed);
    Blobs b;
    b.x = Matrix(2 * per_class, dims);
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const bool positive = i % 2 == 1;
        for (std::size_t j = 0; j < dims; ++j) {
            b.x(i, j) = rng.normal() + (positive ? separation : 0.0);
        }
        b.y01.push_back(positive ? 1 : 0);
        b.ypm.push_back(positive ? 1 : -1);
    }
    return b;
}

}  // namespace

TEST_SUITE("baselines_glm") {

TEST_CASE("poisson pmf closed-form anchors") {
    CHECK(poisson_pmf(0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(poisson_pmf(2, 3.0) == doctest::Approx(std::exp(-3.0) * 9.0 / 2.0).epsilon(1e-12));
    double total = 0.0;
    for (std::uint64_t k = 0; k <= 100; ++k) total += poisson_pmf(k, 3.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(poisson_pmf(1, 0.0), ParamError);
}

TEST_CASE("poisson regression recovers planted coefficients without penalty") {
    Rng rng(404);
    const std::size_t n = 5000;
    Matrix x(n, 1);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = rng.uniform(-1.0, 1.0);
        const double rate = std::exp(0.5 + 1.5 * x(i, 0));
        // Poisson draw by inversion over the cumulative sum.
        double u = rng.uniform();
        double p = std::exp(-rate);
        double cum = p;
        int k = 0;
        while (u > cum && k < 60) {
            ++k;
            p *= rate / k;
            cum += p;
        }
        y[i] = k;
    }
    PoissonFitOptions opt;
    opt.alpha = 0.0;
    const auto model = fit_poisson_regression(x, y, opt);
    CHECK(model->intercept == doctest::Approx(0.5).epsilon(0.1));
    CHECK(std::abs(model->coefficients[0] - 1.5) < 5e-2);
}

TEST_CASE("poisson regression on all-zero labels pushes rates to zero") {
    const auto x = random_matrix(60, 3, 7, 0.0, 1.0);
    std::vector<int> y(60, 0);
    const auto model = fit_poisson_regression(x, y);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        CHECK(model->score(x.row(i)) <= 0.01);
    }
}

TEST_CASE("huge penalty shrinks slopes to zero") {
    Rng rng(11);
    Matrix x(200, 2);
    std::vector<int> y(200);
    for (std::size_t i = 0; i < 200; ++i) {
        x(i, 0) = rng.uniform(0.0, 1.0);
        x(i, 1) = rng.uniform(0.0, 1.0);
        y[i] = rng.below(2) ? 1 : 0;
    }
    PoissonFitOptions opt;
    opt.alpha = 1e6;
    const auto model = fit_poisson_regression(x, y, opt);
    for (double c : model->coefficients) CHECK(std::abs(c) < 1e-3);
}

TEST_CASE("poisson objective decreases across iterations via refit comparison") {
    // The final gradient norm must satisfy the configured tolerance.
    const auto blobs = make_blobs(80, 3, 5);
    const auto model = fit_poisson_regression(blobs.x, blobs.y01);
    CHECK(model->final_gradient_norm <= 1e-5);
}

}  // TEST_SUITE

TEST_SUITE("baselines_bayes") {

TEST_CASE("well separated blobs classify almost perfectly") {
    const auto train = make_blobs(120, 4, 21);
    const auto test = make_blobs(60, 4, 22);
    const auto model = fit_gaussian_nb(train.x, train.y01);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.x.rows(); ++i) {
        correct += model->predict(test.x.row(i)) == test.y01[i] ? 1u : 0u;
    }
    CHECK(static_cast<double>(correct) / static_cast<double>(test.x.rows()) >= 0.99);
}

TEST_CASE("midpoint of symmetric classes scores one half") {
    Matrix x(8, 1);
    std::vector<int> y;
    for (int i = 0; i < 4; ++i) {
        x(static_cast<std::size_t>(i), 0) = -2.0 - i * 0.1;
        y.push_back(0);
    }
    for (int i = 0; i < 4; ++i) {
        x(static_cast<std::size_t>(4 + i), 0) = 2.0 + i * 0.1;
        y.push_back(1);
    }
    const auto model = fit_gaussian_nb(x, y);
    std::vector<double> mid{0.0};
    CHECK(model->score(mid) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("posterior and its complement sum to one") {
    const auto blobs = make_blobs(40, 3, 31, 2.0);
    const auto model = fit_gaussian_nb(blobs.x, blobs.y01);
    for (std::size_t i = 0; i < blobs.x.rows(); ++i) {
        const double p1 = model->score(blobs.x.row(i));
        CHECK(p1 >= 0.0);
        CHECK(p1 <= 1.0);
        // The two-class posterior is normalized by construction; verify via
        // the swapped-label model.
    }
    std::vector<int> flipped(blobs.y01.size());
    for (std::size_t i = 0; i < flipped.size(); ++i) flipped[i] = 1 - blobs.y01[i];
    const auto mirrored = fit_gaussian_nb(blobs.x, flipped);
    for (std::size_t i = 0; i < blobs.x.rows(); ++i) {
        CHECK(model->score(blobs.x.row(i)) + mirrored->score(blobs.x.row(i)) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("single-class training data raises") {
    const auto x = random_matrix(10, 2, 41);
    std::vector<int> y(10, 1);
    CHECK_THROWS_AS(fit_gaussian_nb(x, y), DataError);
}

}  // TEST_SUITE

TEST_SUITE("baselines_knn") {

TEST_CASE("query equal to a training point with k=1 returns its label") {
    const auto x = random_matrix(25, 3, 51);
    std::vector<int> y(25);
    Rng rng(52);
    for (auto& v : y) v = rng.below(2) ? 1 : 0;
    const auto model = fit_knn(x, y, 1);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        CHECK(model->predict(x.row(i)) == y[i]);
    }
}

TEST_CASE("k equal to n yields the global positive fraction") {
    const auto x = random_matrix(20, 2, 61);
    std::vector<int> y(20, 0);
    for (int i = 0; i < 7; ++i) y[static_cast<std::size_t>(i)] = 1;
    const auto model = fit_knn(x, y, 20);
    const auto q = random_matrix(5, 2, 62);
    for (std::size_t i = 0; i < q.rows(); ++i) {
        CHECK(model->score(q.row(i)) == doctest::Approx(7.0 / 20.0).epsilon(1e-12));
    }
}

TEST_CASE("labels match the exhaustive brute-force oracle exactly") {
    const auto x = random_matrix(30, 4, 71);
    std::vector<int> y(30);
    Rng rng(72);
    for (auto& v : y) v = rng.below(2) ? 1 : 0;
    const auto model = fit_knn(x, y, 4);
    const auto queries = random_matrix(40, 4, 73);
    for (std::size_t q = 0; q < queries.rows(); ++q) {
        const double expect = oracle::knn_score(x, y, queries.row(q), 4);
        CHECK(model->score(queries.row(q)) == expect);
    }
}

TEST_CASE("duplicate-distance ties resolve toward lower training indices") {
    Matrix x(4, 1);
    x(0, 0) = 1.0;
    x(1, 0) = -1.0;
    x(2, 0) = 1.0;
    x(3, 0) = -1.0;
    const std::vector<int> y{1, 0, 0, 1};
    const auto model = fit_knn(x, y, 2);
    // Query 0 is equidistant to all four; indices 0 and 1 win the tie.
    std::vector<double> q{0.0};
    CHECK(model->score(q) == doctest::Approx(0.5));
    CHECK(model->predict(q) == 1);  // score 0.5 goes positive
}

TEST_CASE("empty training set and bad k raise") {
    CHECK_THROWS_AS(fit_knn(Matrix(), {}, 1), DataError);
    const auto x = random_matrix(5, 2, 81);
    CHECK_THROWS_AS(fit_knn(x, {0, 1, 0, 1, 0}, 6), ParamError);
}

}  // TEST_SUITE

TEST_SUITE("baselines_svm") {

TEST_CASE("two-point problem orients the separating direction") {
    Matrix x(2, 1);
    x(0, 0) = -1.0;
    x(1, 0) = 1.0;
    const std::vector<int> y{-1, 1};
    LinearSvmOptions opt;
    opt.c = 10.0;
    opt.epochs = 200;
    opt.seed = 1;
    const auto model = fit_linear_svm(x, y, opt);
    CHECK(model->weights[0] > 0.0);
    CHECK(model->predict(x.row(0)) == 0);
    CHECK(model->predict(x.row(1)) == 1);
}

TEST_CASE("training hinge loss does not grow with c") {
    Rng rng(91);
    Matrix x(150, 3);
    std::vector<int> y(150);
    for (std::size_t i = 0; i < 150; ++i) {
        const bool pos = i % 2 == 0;
        for (std::size_t j = 0; j < 3; ++j) {
            x(i, j) = rng.normal() * 1.5 + (pos ? 1.0 : -1.0);
        }
        y[i] = pos ? 1 : -1;
    }
    auto hinge_at = [&](double c) {
        LinearSvmOptions opt;
        opt.c = c;
        opt.epochs = 200;
        opt.seed = 7;
        const auto model = fit_linear_svm(x, y, opt);
        return mean_hinge_loss(*model, x, y);
    };
    CHECK(hinge_at(100.0) <= hinge_at(0.01) + 1e-6);
}

TEST_CASE("score is linear in the input when fitted without bias") {
    const auto blobs = make_blobs(50, 3, 101, 2.0);
    LinearSvmOptions opt;
    opt.fit_bias = false;
    opt.seed = 3;
    const auto model = fit_linear_svm(blobs.x, blobs.ypm, opt);
    CHECK(model->bias == 0.0);
    std::vector<double> v{0.4, -0.2, 0.9};
    const double base = model->score(v);
    for (const double scale : {0.5, 2.0, -3.0}) {
        std::vector<double> scaled{v[0] * scale, v[1] * scale, v[2] * scale};
        CHECK(model->score(scaled) == doctest::Approx(base * scale).epsilon(1e-9));
    }
}

TEST_CASE("rbf svm separates xor") {
    Matrix x(4, 2);
    x(0, 0) = 0;
    x(0, 1) = 0;
    x(1, 0) = 1;
    x(1, 1) = 1;
    x(2, 0) = 0;
    x(2, 1) = 1;
    x(3, 0) = 1;
    x(3, 1) = 0;
    const std::vector<int> y{1, 1, -1, -1};
    RbfSvmOptions opt;
    opt.gamma = 1.0;
    opt.c = 10.0;
    const auto model = fit_rbf_svm(x, y, opt);
    CHECK(model->predict(x.row(0)) == 1);
    CHECK(model->predict(x.row(1)) == 1);
    CHECK(model->predict(x.row(2)) == 0);
    CHECK(model->predict(x.row(3)) == 0);
}

TEST_CASE("default gamma comes from the 0.125 length scale") {
    const RbfSvmOptions opt;
    CHECK(opt.gamma == 32.0);
    CHECK(gamma_from_length_scale(0.125) == 32.0);
    const auto blobs = make_blobs(20, 2, 111, 3.0);
    const auto model = fit_rbf_svm(blobs.x, blobs.ypm, RbfSvmOptions{});
    CHECK(model->gamma == 32.0);
}

TEST_CASE("smo solution satisfies the dual box and equality constraints") {
    const auto blobs = make_blobs(60, 3, 121, 1.5);
    RbfSvmOptions opt;
    opt.gamma = 0.5;
    opt.c = 2.0;
    const auto model = fit_rbf_svm(blobs.x, blobs.ypm, opt);
    double sum_ay = 0.0;
    for (std::size_t i = 0; i < model->alphas.size(); ++i) {
        CHECK(model->alphas[i] >= 0.0);
        CHECK(model->alphas[i] <= opt.c);
        sum_ay += model->alphas[i] * model->train_y[i];
    }
    CHECK(std::abs(sum_ay) <= 1e-6);
}

TEST_CASE("oversized training sets are capped with a stratified subsample") {
    const auto blobs = make_blobs(120, 2, 131, 3.0);
    RbfSvmOptions opt;
    opt.gamma = 0.5;
    opt.cap = 60;
    opt.seed = 5;
    const auto model = fit_rbf_svm(blobs.x, blobs.ypm, opt);
    CHECK(model->subsample_info().subsampled);
    CHECK(model->subsample_info().used == 60);
    CHECK(model->subsample_info().total == 240);
    // Stratification keeps both classes.
    bool has_pos = false;
    bool has_neg = false;
    for (int v : model->train_y) {
        has_pos |= v == 1;
        has_neg |= v == -1;
    }
    CHECK(has_pos);
    CHECK(has_neg);
}

}  // TEST_SUITE

TEST_SUITE("baselines_gp") {

TEST_CASE("vanishing ridge interpolates the training targets") {
    const auto x = random_matrix(25, 3, 141);
    std::vector<int> y(25);
    Rng rng(142);
    for (auto& v : y) v = rng.below(2) ? 1 : -1;
    KernelRidgeOptions opt;
    opt.gamma = 0.8;
    opt.ridge = 1e-10;
    const auto model = fit_gp_surrogate(x, y, opt);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        CHECK(model->score(x.row(i)) == doctest::Approx(y[i]).epsilon(1e-6));
    }
}

TEST_CASE("solution matches a dense gaussian-elimination oracle") {
    const auto x = random_matrix(50, 4, 151);
    std::vector<int> y(50);
    Rng rng(152);
    for (auto& v : y) v = rng.below(2) ? 1 : -1;
    KernelRidgeOptions opt;
    opt.gamma = 1.3;
    opt.ridge = 0.05;
    const auto model = fit_gp_surrogate(x, y, opt);

    Matrix system(50, 50);
    for (std::size_t i = 0; i < 50; ++i) {
        for (std::size_t j = 0; j < 50; ++j) {
            system(i, j) = rbf_kernel(x.row(i), x.row(j), opt.gamma) + (i == j ? opt.ridge : 0.0);
        }
    }
    std::vector<double> rhs(50);
    for (std::size_t i = 0; i < 50; ++i) rhs[i] = y[i];
    const auto expected = oracle::solve_dense(system, rhs);
    for (std::size_t i = 0; i < 50; ++i) {
        CHECK(std::abs(model->coefficients[i] - expected[i]) < 1e-8);
    }
}

TEST_CASE("gp surrogate cap is recorded in the model metadata") {
    const auto blobs = make_blobs(100, 2, 161, 3.0);
    KernelRidgeOptions opt;
    opt.gamma = 0.5;
    opt.ridge = 0.1;
    opt.cap = 50;
    const auto model = fit_gp_surrogate(blobs.x, blobs.ypm, opt);
    CHECK(model->subsample_info().subsampled);
    CHECK(model->basis.rows() == 50);
}

TEST_CASE("cholesky solve agrees with elimination on random spd systems") {
    Rng rng(171);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 4 + rng.below(12);
        const auto g = random_matrix(n, n, 500 + trial);
        Matrix spd(n, n);
        gemm_accumulate(g.data(), transpose(g).data(), spd.data(), n, n, n);
        for (std::size_t i = 0; i < n; ++i) spd(i, i) += 0.5;
        std::vector<double> b(n);
        for (auto& v : b) v = rng.uniform(-2.0, 2.0);
        std::vector<double> got;
        REQUIRE(cholesky_solve(spd, b, got));
        const auto expected = oracle::solve_dense(spd, b);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-8));
        }
    }
}

}  // TEST_SUITE
