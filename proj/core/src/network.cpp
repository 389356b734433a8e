#include "bsid/network.hpp"

#include <cmath>
#include <string>

#include "bsid/errors.hpp"
#include "bsid/optim.hpp"

namespace bsid {

const char* to_string(Activation a) {
    switch (a) {
        case Activation::Relu: return "relu";
        case Activation::Sigmoid: return "sigmoid";
        case Activation::Tanh: return "tanh";
        case Activation::Linear: return "linear";
    }
    return "unknown";
}

std::size_t Network::parameter_count() const {
    std::size_t n = 0;
    for (const auto& layer : layers) n += layer.weights.size() + layer.bias.size();
    return n;
}

Network make_network(std::size_t input_width, const std::vector<LayerSpec>& specs, Rng rng) {
    if (input_width == 0) throw ParamError("make_network: input width must be >= 1");
    Network net;
    net.input_width = input_width;
    net.specs = specs;
    std::size_t fan_in = input_width;
    for (std::size_t l = 0; l < specs.size(); ++l) {
        const auto& spec = specs[l];
        if (spec.width == 0) throw ParamError("make_network: layer width must be >= 1");
        Layer layer;
        layer.weights = Matrix(fan_in, spec.width);
        layer.bias.assign(spec.width, 0.0);
        Rng layer_rng = rng.child(l);
        const double fan_sum = static_cast<double>(fan_in + spec.width);
        const double bound = spec.activation == Activation::Relu
                                 ? std::sqrt(6.0 / static_cast<double>(fan_in))
                                 : std::sqrt(6.0 / fan_sum);
        for (double& w : layer.weights.flat()) w = layer_rng.uniform(-bound, bound);
        net.layers.push_back(std::move(layer));
        fan_in = spec.width;
    }
    return net;
}

namespace {

void apply_activation(Activation act, const Matrix& pre, Matrix& post) {
    const double* __restrict__ in = pre.data();
    double* __restrict__ out = post.data();
    const std::size_t n = pre.size();
    switch (act) {
        case Activation::Relu:
            for (std::size_t i = 0; i < n; ++i) out[i] = in[i] > 0.0 ? in[i] : 0.0;
            break;
        case Activation::Sigmoid:
            for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / (1.0 + std::exp(-in[i]));
            break;
        case Activation::Tanh:
            for (std::size_t i = 0; i < n; ++i) out[i] = std::tanh(in[i]);
            break;
        case Activation::Linear:
            for (std::size_t i = 0; i < n; ++i) out[i] = in[i];
            break;
    }
}

// dL/dpre from dL/dpost, using the stored activations.
void apply_activation_grad(Activation act, const Matrix& pre, const Matrix& post, Matrix& delta) {
    double* __restrict__ d = delta.data();
    const double* __restrict__ a = pre.data();
    const double* __restrict__ z = post.data();
    const std::size_t n = delta.size();
    switch (act) {
        case Activation::Relu:
            for (std::size_t i = 0; i < n; ++i) d[i] = a[i] > 0.0 ? d[i] : 0.0;
            break;
        case Activation::Sigmoid:
            for (std::size_t i = 0; i < n; ++i) d[i] *= z[i] * (1.0 - z[i]);
            break;
        case Activation::Tanh:
            for (std::size_t i = 0; i < n; ++i) d[i] *= 1.0 - z[i] * z[i];
            break;
        case Activation::Linear:
            break;
    }
}

}  // namespace

ForwardTrace forward(const Network& net, const Matrix& x) {
    if (x.cols() != net.input_width) {
        throw ShapeError("forward: input width " + std::to_string(x.cols()) + ", network expects " +
                         std::to_string(net.input_width));
    }
    ForwardTrace trace;
    trace.pre.reserve(net.layers.size());
    trace.post.reserve(net.layers.size());
    const Matrix* prev = &x;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const Layer& layer = net.layers[l];
        Matrix pre(prev->rows(), layer.fan_out());
        for (std::size_t r = 0; r < pre.rows(); ++r) {
            auto row = pre.row(r);
            for (std::size_t j = 0; j < row.size(); ++j) row[j] = layer.bias[j];
        }
        gemm_accumulate(prev->data(), layer.weights.data(), pre.data(), prev->rows(),
                        layer.fan_in(), layer.fan_out());
        Matrix post(pre.rows(), pre.cols());
        apply_activation(net.specs[l].activation, pre, post);
        trace.pre.push_back(std::move(pre));
        trace.post.push_back(std::move(post));
        prev = &trace.post.back();
    }
    return trace;
}

Matrix predict(const Network& net, const Matrix& x) {
    if (net.layers.empty()) return x;
    return forward(net, x).output();
}

double compute_loss(const Matrix& output, const Matrix& targets, Loss loss) {
    if (output.rows() != targets.rows() || output.cols() != targets.cols()) {
        throw ShapeError("loss: output " + std::to_string(output.rows()) + "x" +
                         std::to_string(output.cols()) + " vs targets " +
                         std::to_string(targets.rows()) + "x" + std::to_string(targets.cols()));
    }
    const double n = static_cast<double>(output.rows());
    double total = 0.0;
    if (loss == Loss::Mse) {
        for (std::size_t i = 0; i < output.size(); ++i) {
            const double d = output.flat()[i] - targets.flat()[i];
            total += d * d;
        }
    } else {
        constexpr double kEps = 1e-12;
        for (std::size_t i = 0; i < output.size(); ++i) {
            const double p = std::clamp(output.flat()[i], kEps, 1.0 - kEps);
            const double t = targets.flat()[i];
            total -= t * std::log(p) + (1.0 - t) * std::log(1.0 - p);
        }
    }
    return total / n;
}

Gradients backprop_trace(const Network& net, const Matrix& x, const ForwardTrace& trace,
                         const Matrix& targets, Loss loss) {
    if (net.layers.empty()) throw ParamError("backprop: network has no layers");
    if (loss == Loss::BinaryCrossEntropy &&
        net.specs.back().activation != Activation::Sigmoid) {
        throw ParamError("backprop: binary cross-entropy requires a sigmoid output layer");
    }

    const Matrix& output = trace.output();
    if (targets.rows() != output.rows() || targets.cols() != output.cols()) {
        throw ShapeError("backprop: targets " + std::to_string(targets.rows()) + "x" +
                         std::to_string(targets.cols()) + " vs output " +
                         std::to_string(output.rows()) + "x" + std::to_string(output.cols()));
    }

    const std::size_t n_layers = net.layers.size();
    const double inv_n = 1.0 / static_cast<double>(x.rows());

    Gradients grads;
    grads.weights.resize(n_layers);
    grads.bias.resize(n_layers);

    // Delta w.r.t. the pre-activation of the current layer.
    Matrix delta(output.rows(), output.cols());
    if (loss == Loss::Mse) {
        for (std::size_t i = 0; i < delta.size(); ++i) {
            delta.flat()[i] = 2.0 * (output.flat()[i] - targets.flat()[i]) * inv_n;
        }
        apply_activation_grad(net.specs.back().activation, trace.pre.back(), output, delta);
    } else {
        for (std::size_t i = 0; i < delta.size(); ++i) {
            delta.flat()[i] = (output.flat()[i] - targets.flat()[i]) * inv_n;
        }
    }

    for (std::size_t l = n_layers; l-- > 0;) {
        const Layer& layer = net.layers[l];
        const Matrix& input = l == 0 ? x : trace.post[l - 1];

        Matrix dw(layer.fan_in(), layer.fan_out());
        gemm_accumulate(transpose(input).data(), delta.data(), dw.data(), layer.fan_in(),
                        input.rows(), layer.fan_out());
        std::vector<double> db(layer.fan_out(), 0.0);
        for (std::size_t r = 0; r < delta.rows(); ++r) {
            const auto row = delta.row(r);
            for (std::size_t j = 0; j < row.size(); ++j) db[j] += row[j];
        }
        grads.weights[l] = std::move(dw);
        grads.bias[l] = std::move(db);

        if (l > 0) {
            Matrix next_delta(delta.rows(), layer.fan_in());
            gemm_accumulate(delta.data(), transpose(layer.weights).data(), next_delta.data(),
                            delta.rows(), layer.fan_out(), layer.fan_in());
            apply_activation_grad(net.specs[l - 1].activation, trace.pre[l - 1], trace.post[l - 1],
                                  next_delta);
            delta = std::move(next_delta);
        }
    }
    return grads;
}

Gradients backprop(const Network& net, const Matrix& x, const Matrix& targets, Loss loss) {
    return backprop_trace(net, x, forward(net, x), targets, loss);
}

TrainHistory train_network(Network& net, const Matrix& x, const Matrix& targets,
                           const TrainConfig& cfg) {
    if (cfg.learning_rate <= 0.0) throw ParamError("train: learning rate must be > 0");
    if (cfg.epochs < 1) throw ParamError("train: epochs must be >= 1");
    if (cfg.batch_size < 1) throw ParamError("train: batch size must be >= 1");
    if (x.rows() == 0) throw ParamError("train: empty training set");
    if (targets.rows() != x.rows()) {
        throw ShapeError("train: " + std::to_string(x.rows()) + " rows vs " +
                         std::to_string(targets.rows()) + " targets");
    }

    Rng rng(cfg.seed);
    std::vector<AdamState> w_state;
    std::vector<AdamState> b_state;
    for (const auto& layer : net.layers) {
        w_state.emplace_back(layer.weights.size(), cfg.learning_rate);
        b_state.emplace_back(layer.bias.size(), cfg.learning_rate);
    }

    const std::size_t n = x.rows();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    TrainHistory history;
    history.epoch_loss.reserve(cfg.epochs);

    Matrix batch_x;
    Matrix batch_t;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        Rng epoch_rng = rng.child(epoch);
        epoch_rng.shuffle(order);

        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < n; start += cfg.batch_size) {
            const std::size_t stop = std::min(start + cfg.batch_size, n);
            const std::size_t bn = stop - start;
            batch_x = Matrix(bn, x.cols());
            batch_t = Matrix(bn, targets.cols());
            for (std::size_t r = 0; r < bn; ++r) {
                const std::size_t src = order[start + r];
                std::copy(x.row(src).begin(), x.row(src).end(), batch_x.row(r).begin());
                std::copy(targets.row(src).begin(), targets.row(src).end(),
                          batch_t.row(r).begin());
            }

            const ForwardTrace trace = forward(net, batch_x);
            const Gradients grads = backprop_trace(net, batch_x, trace, batch_t, cfg.loss);
            const double batch_loss = compute_loss(trace.output(), batch_t, cfg.loss);
            if (!std::isfinite(batch_loss)) {
                throw TrainError(epoch, "training loss diverged to a non-finite value");
            }
            epoch_loss += batch_loss * static_cast<double>(bn);

            for (std::size_t l = 0; l < net.layers.size(); ++l) {
                adam_step(w_state[l], net.layers[l].weights.flat(), grads.weights[l].flat());
                adam_step(b_state[l], net.layers[l].bias, grads.bias[l]);
            }
        }
        history.epoch_loss.push_back(epoch_loss / static_cast<double>(n));
    }
    return history;
}

std::vector<double> MlpModel::score_rows(const Matrix& x) const {
    const Matrix out = predict(net, x);
    std::vector<double> scores(out.rows());
    for (std::size_t i = 0; i < out.rows(); ++i) scores[i] = out(i, 0);
    return scores;
}

MlpModel train_mlp(std::size_t input_width, const std::vector<LayerSpec>& hidden,
                   const Matrix& x, const std::vector<double>& soft_labels,
                   const TrainConfig& cfg) {
    if (soft_labels.size() != x.rows()) {
        throw ShapeError("train_mlp: " + std::to_string(soft_labels.size()) + " labels for " +
                         std::to_string(x.rows()) + " rows");
    }
    for (double y : soft_labels) {
        if (y < 0.0 || y > 1.0) throw ParamError("train_mlp: labels must lie in [0,1]");
    }

    std::vector<LayerSpec> specs = hidden;
    specs.push_back({1, Activation::Sigmoid});

    MlpModel model;
    model.net = make_network(input_width, specs, Rng(cfg.seed).child("init"));

    Matrix targets(x.rows(), 1);
    for (std::size_t i = 0; i < x.rows(); ++i) targets(i, 0) = soft_labels[i];

    TrainConfig effective = cfg;
    effective.loss = Loss::BinaryCrossEntropy;
    model.history = train_network(model.net, x, targets, effective);
    return model;
}

}  // namespace bsid
