#pragma once

#include <cstdint>
#include <vector>

#include "bsid/matrix.hpp"
#include "bsid/rng.hpp"

namespace bsid {

enum class Activation { Relu, Sigmoid, Tanh, Linear };

const char* to_string(Activation a);

struct LayerSpec {
    std::size_t width = 0;
    Activation activation = Activation::Relu;
};

enum class Loss { Mse, BinaryCrossEntropy };

// Per-layer weights: W is (fan_in x fan_out) row-major, so a batch forward is
// one row-major matmul per layer.
struct Layer {
    Matrix weights;
    std::vector<double> bias;

    std::size_t fan_in() const { return weights.rows(); }
    std::size_t fan_out() const { return weights.cols(); }
};

struct Network {
    std::size_t input_width = 0;
    std::vector<LayerSpec> specs;
    std::vector<Layer> layers;

    std::size_t output_width() const { return specs.empty() ? input_width : specs.back().width; }
    std::size_t parameter_count() const;
};

// Seeded He-style init for ReLU layers, Xavier-style otherwise.
Network make_network(std::size_t input_width, const std::vector<LayerSpec>& specs, Rng rng);

// Activations per layer: pre[l] = z[l-1] * W + b, post[l] = f(pre[l]),
// post[-1] meaning the input. Index 0 of both vectors is layer 0's.
struct ForwardTrace {
    std::vector<Matrix> pre;
    std::vector<Matrix> post;

    const Matrix& output() const { return post.back(); }
};

ForwardTrace forward(const Network& net, const Matrix& x);

// Convenience: output activations only.
Matrix predict(const Network& net, const Matrix& x);

struct Gradients {
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> bias;
};

// Mean-reduced analytic gradients of the loss against the targets.
// MSE is the mean over rows of the squared row error (summed over output
// dims); binary cross-entropy expects a sigmoid output layer and soft targets
// in [0,1].
Gradients backprop(const Network& net, const Matrix& x, const Matrix& targets, Loss loss);

double compute_loss(const Matrix& output, const Matrix& targets, Loss loss);

struct TrainConfig {
    double learning_rate = 1e-4;
    std::size_t epochs = 100;
    std::size_t batch_size = 32;
    std::uint64_t seed = 0;
    Loss loss = Loss::BinaryCrossEntropy;
};

// Mini-batch Adam over shuffled epochs; throws TrainError (with the epoch
// index) if the loss goes non-finite. Records the mean loss per epoch.
struct TrainHistory {
    std::vector<double> epoch_loss;
};

TrainHistory train_network(Network& net, const Matrix& x, const Matrix& targets,
                           const TrainConfig& cfg);

// Binary classifier: the given hidden layers plus a single sigmoid output
// unit trained with binary cross-entropy on soft labels.
struct MlpModel {
    Network net;
    TrainHistory history;

    std::vector<double> score_rows(const Matrix& x) const;
};

MlpModel train_mlp(std::size_t input_width, const std::vector<LayerSpec>& hidden,
                   const Matrix& x, const std::vector<double>& soft_labels,
                   const TrainConfig& cfg);

}  // namespace bsid
