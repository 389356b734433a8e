#pragma once

#include "bsid/network.hpp"

namespace bsid {

// Self-supervised encoder/decoder pair. The decoder mirrors the encoder's
// hidden widths in reverse and reconstructs the input through a sigmoid
// output layer, so inputs are expected in [0,1].
struct AutoencoderModel {
    Network encoder;
    Network decoder;
    std::size_t latent_width = 0;
    TrainHistory history;
};

// Default bottleneck: 256 -> 64 -> 32, all ReLU.
std::vector<LayerSpec> default_encoder_layers();

// Trains encoder+decoder jointly on the reconstruction MSE with mini-batch
// Adam. `encoder_layers` are the encoder's hidden widths; the last entry is
// the latent width.
AutoencoderModel train_autoencoder(const Matrix& x, const std::vector<LayerSpec>& encoder_layers,
                                   const TrainConfig& cfg);

// n x latent_width embedding.
Matrix encode_latent(const AutoencoderModel& model, const Matrix& x);

// Reconstruction of the input, entries in (0,1).
Matrix reconstruct(const AutoencoderModel& model, const Matrix& x);

}  // namespace bsid
