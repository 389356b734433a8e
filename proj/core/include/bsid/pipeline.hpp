#pragma once

#include <optional>

#include "bsid/autoencoder.hpp"
#include "bsid/encoding.hpp"
#include "bsid/mixup.hpp"
#include "bsid/models.hpp"
#include "bsid/network.hpp"

namespace bsid {

// Configuration of the full method: one-hot encode, self-supervised
// embedding, latent-space MixUp, then a small sigmoid-head classifier.
// Latent mixing is class-internal by default: synthetic samples even out the
// two classes for the head, which is what lets it operate at a useful recall
// on 8%-positive data.
struct ProposedConfig {
    std::vector<LayerSpec> autoencoder_layers = default_encoder_layers();
    std::vector<LayerSpec> head_hidden = {
        {32, Activation::Relu}, {24, Activation::Relu}, {6, Activation::Relu}};
    TrainConfig train;  // learning rate 1e-4, 100 epochs, batch 32
    // The embedding usually needs more reconstruction passes than the head;
    // 0 falls back to train.epochs.
    std::size_t autoencoder_epochs = 100;
    MixupConfig mixup{6000, 11, 0.2, 0.2, MixupMode::IntraClass};
    std::uint64_t seed = 0;
};

struct PipelineArtifact {
    EncodingPlan plan;
    AutoencoderModel autoencoder;
    MlpModel head;
    ProposedConfig config;
    std::uint64_t training_fingerprint = 0;

    std::size_t latent_width() const { return autoencoder.latent_width; }
};

// Stages run in order on the training rows only: encoding plan, autoencoder,
// latent embedding, MixUp augmentation, head training. Deterministic per
// (dataset rows, config seed).
PipelineArtifact fit_proposed(const Dataset& ds, const std::vector<std::size_t>& train_rows,
                              const ProposedConfig& cfg);

struct PipelinePrediction {
    std::vector<double> scores;  // sigmoid outputs in (0,1)
    std::vector<int> labels;     // thresholded at 0.5
};

// Pure scoring path: encode through the stored plan, embed, run the head.
// Rows must conform to the artifact's schema (error names the variable).
PipelinePrediction predict_proposed(const PipelineArtifact& artifact, const Dataset& rows);

void save_artifact(const PipelineArtifact& artifact, const std::string& path);
PipelineArtifact load_artifact(const std::string& path);

// TrainedModel wrapper so the proposed method slots into the harness.
class ProposedModel final : public TrainedModel {
public:
    explicit ProposedModel(PipelineArtifact artifact) : artifact_(std::move(artifact)) {}
    Family family() const override { return Family::Proposed; }
    double threshold() const override { return 0.5; }
    double score(std::span<const double> onehot_row) const override;
    std::vector<double> score_rows(const Matrix& onehot) const override;

    const PipelineArtifact& artifact() const { return artifact_; }

private:
    PipelineArtifact artifact_;
};

}  // namespace bsid
