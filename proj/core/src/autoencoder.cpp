#include "bsid/autoencoder.hpp"

#include <string>

#include "bsid/errors.hpp"

namespace bsid {

std::vector<LayerSpec> default_encoder_layers() {
    return {{256, Activation::Relu}, {64, Activation::Relu}, {32, Activation::Relu}};
}

AutoencoderModel train_autoencoder(const Matrix& x, const std::vector<LayerSpec>& encoder_layers,
                                   const TrainConfig& cfg) {
    if (encoder_layers.empty()) throw ParamError("train_autoencoder: encoder needs >= 1 layer");
    if (x.rows() == 0) throw ParamError("train_autoencoder: empty training set");
    for (double v : x.flat()) {
        if (v < 0.0 || v > 1.0) {
            throw ParamError("train_autoencoder: inputs must lie in [0,1]");
        }
    }

    // Mirror the encoder's hidden widths, then reconstruct through a sigmoid.
    std::vector<LayerSpec> specs = encoder_layers;
    for (std::size_t i = encoder_layers.size() - 1; i-- > 0;) {
        specs.push_back(encoder_layers[i]);
    }
    specs.push_back({x.cols(), Activation::Sigmoid});

    Network net = make_network(x.cols(), specs, Rng(cfg.seed).child("init"));
    TrainConfig effective = cfg;
    effective.loss = Loss::Mse;
    TrainHistory history = train_network(net, x, x, effective);

    AutoencoderModel model;
    model.latent_width = encoder_layers.back().width;
    model.history = std::move(history);

    const std::size_t split = encoder_layers.size();
    model.encoder.input_width = net.input_width;
    model.decoder.input_width = model.latent_width;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        auto& dst = l < split ? model.encoder : model.decoder;
        dst.specs.push_back(net.specs[l]);
        dst.layers.push_back(std::move(net.layers[l]));
    }
    return model;
}

Matrix encode_latent(const AutoencoderModel& model, const Matrix& x) {
    if (x.cols() != model.encoder.input_width) {
        throw ShapeError("encode_latent: input width " + std::to_string(x.cols()) +
                         ", encoder expects " + std::to_string(model.encoder.input_width));
    }
    return predict(model.encoder, x);
}

Matrix reconstruct(const AutoencoderModel& model, const Matrix& x) {
    return predict(model.decoder, encode_latent(model, x));
}

}  // namespace bsid
