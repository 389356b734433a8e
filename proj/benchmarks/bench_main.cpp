#include <benchmark/benchmark.h>

#include "bsid/encoding.hpp"
#include "bsid/kernels.hpp"
#include "bsid/matrix.hpp"
#include "bsid/mixup.hpp"
#include "bsid/network.hpp"
#include "bsid/rng.hpp"
#include "bsid/synth.hpp"
#include "bsid/tree.hpp"

using namespace bsid;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed, double lo = -1.0,
                     double hi = 1.0) {
    Rng rng(seed);
    Matrix m(r, c);
    for (double& v : m.flat()) v = rng.uniform(lo, hi);
    return m;
}

const Dataset& bench_dataset() {
    static const Dataset ds = [] {
        SynthConfig cfg;
        return generate_synthetic(cfg);
    }();
    return ds;
}

}  // namespace

static void BM_GemmForwardShape(benchmark::State& state) {
    const auto a = random_matrix(32, 687, 1);
    const auto b = random_matrix(687, 256, 2);
    for (auto _ : state) {
        auto c = matmul(a, b);
        benchmark::DoNotOptimize(c.data());
    }
    state.counters["GFLOP/s"] = benchmark::Counter(
        2.0 * 32 * 687 * 256 * static_cast<double>(state.iterations()) / 1e9,
        benchmark::Counter::kIsRate);
}
BENCHMARK(BM_GemmForwardShape);

static void BM_BetaSampling(benchmark::State& state) {
    Rng rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(beta_sample(rng, 0.2, 0.2));
    }
}
BENCHMARK(BM_BetaSampling);

static void BM_OnehotTransform(benchmark::State& state) {
    const auto& ds = bench_dataset();
    std::vector<std::size_t> rows(ds.row_count());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    const auto plan = fit_encoding(ds, rows);
    for (auto _ : state) {
        auto x = transform(ds, plan, EncodingMode::Onehot);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(static_cast<long>(state.iterations()) *
                            static_cast<long>(ds.row_count()));
}
BENCHMARK(BM_OnehotTransform);

static void BM_MixupAugment(benchmark::State& state) {
    const auto x = random_matrix(1448, 32, 4, 0.0, 1.0);
    std::vector<double> y(1448, 0.0);
    Rng rng(5);
    for (auto& v : y) v = rng.below(2) ? 1.0 : 0.0;
    MixupConfig cfg;
    cfg.pairs = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto aug = augment_training(x, y, cfg, Rng(6));
        benchmark::DoNotOptimize(aug.features.data());
    }
    state.SetItemsProcessed(static_cast<long>(state.iterations()) * state.range(0) * 11);
}
BENCHMARK(BM_MixupAugment)->Arg(500)->Arg(6000);

static void BM_DecisionTreeFit(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_matrix(n, 35, 7, 0.0, 1.0);
    std::vector<int> y(n);
    Rng rng(8);
    for (auto& v : y) v = rng.below(8) == 0 ? 1 : 0;
    for (auto _ : state) {
        auto tree = fit_decision_tree(x, y);
        benchmark::DoNotOptimize(tree->nodes.data());
    }
}
BENCHMARK(BM_DecisionTreeFit)->Arg(512)->Arg(1448);

static void BM_RbfKernelRow(benchmark::State& state) {
    const auto x = random_matrix(4000, 5, 9);
    const auto q = random_matrix(1, 5, 10);
    for (auto _ : state) {
        double total = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) {
            total += rbf_kernel(x.row(i), q.row(0), 32.0);
        }
        benchmark::DoNotOptimize(total);
    }
    state.SetItemsProcessed(static_cast<long>(state.iterations()) * 4000);
}
BENCHMARK(BM_RbfKernelRow);

static void BM_AutoencoderEpoch(benchmark::State& state) {
    const auto x = random_matrix(256, 687, 11, 0.0, 1.0);
    for (auto _ : state) {
        TrainConfig cfg;
        cfg.epochs = 1;
        cfg.learning_rate = 1e-4;
        cfg.loss = Loss::Mse;
        cfg.seed = 12;
        Network net = make_network(687, {{256, Activation::Relu},
                                         {64, Activation::Relu},
                                         {32, Activation::Relu},
                                         {64, Activation::Relu},
                                         {256, Activation::Relu},
                                         {687, Activation::Sigmoid}},
                                   Rng(13));
        train_network(net, x, x, cfg);
        benchmark::DoNotOptimize(net.layers.data());
    }
}
BENCHMARK(BM_AutoencoderEpoch)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
