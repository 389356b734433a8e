#include "bsid/pipeline.hpp"

#include <string>

#include "bsid/container.hpp"
#include "bsid/errors.hpp"

namespace bsid {

namespace {

void check_schema_match(const Schema& artifact_schema, const Schema& data_schema) {
    if (artifact_schema.variable_count() != data_schema.variable_count()) {
        throw SchemaError("artifact schema lists " +
                          std::to_string(artifact_schema.variable_count()) + " variables, data " +
                          std::to_string(data_schema.variable_count()));
    }
    for (std::size_t v = 0; v < artifact_schema.variable_count(); ++v) {
        const auto& a = artifact_schema.variables[v];
        const auto& b = data_schema.variables[v];
        if (a.name != b.name || a.kind != b.kind || a.categories != b.categories) {
            throw SchemaError("variable '" + a.name + "' does not match the artifact schema");
        }
    }
}

}  // namespace

PipelineArtifact fit_proposed(const Dataset& ds, const std::vector<std::size_t>& train_rows,
                              const ProposedConfig& cfg) {
    std::size_t positives = 0;
    for (const auto r : train_rows) positives += static_cast<std::size_t>(ds.labels[r]);
    if (positives < 2 || train_rows.size() - positives < 2) {
        throw DataError("fit_proposed: need at least 2 samples per class");
    }

    const Rng rng(cfg.seed);
    PipelineArtifact artifact;
    artifact.config = cfg;

    artifact.plan = fit_encoding(ds, train_rows);
    const Matrix onehot = transform_rows(ds, train_rows, artifact.plan, EncodingMode::Onehot);

    TrainConfig ae_cfg = cfg.train;
    if (cfg.autoencoder_epochs > 0) ae_cfg.epochs = cfg.autoencoder_epochs;
    ae_cfg.seed = rng.child("autoencoder").seed();
    ae_cfg.loss = Loss::Mse;
    artifact.autoencoder = train_autoencoder(onehot, cfg.autoencoder_layers, ae_cfg);

    const Matrix latent = encode_latent(artifact.autoencoder, onehot);

    std::vector<double> soft(train_rows.size());
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
        soft[i] = static_cast<double>(ds.labels[train_rows[i]]);
    }
    const AugmentedSet augmented =
        augment_training(latent, soft, cfg.mixup, rng.child("mixup"));

    TrainConfig head_cfg = cfg.train;
    head_cfg.seed = rng.child("head").seed();
    artifact.head = train_mlp(artifact.autoencoder.latent_width, cfg.head_hidden,
                              augmented.features, augmented.soft_labels, head_cfg);

    std::uint64_t fp = fnv1a64(onehot.data(), onehot.size() * sizeof(double));
    fp ^= fnv1a64(soft.data(), soft.size() * sizeof(double));
    artifact.training_fingerprint = fp;
    return artifact;
}

PipelinePrediction predict_proposed(const PipelineArtifact& artifact, const Dataset& rows) {
    check_schema_match(artifact.plan.schema, rows.schema);
    const Matrix onehot = transform(rows, artifact.plan, EncodingMode::Onehot);
    const Matrix latent = encode_latent(artifact.autoencoder, onehot);
    PipelinePrediction out;
    out.scores = artifact.head.score_rows(latent);
    out.labels.reserve(out.scores.size());
    for (const double s : out.scores) out.labels.push_back(s >= 0.5 ? 1 : 0);
    return out;
}

namespace {

void put_layer_specs(ByteWriter& w, const std::vector<LayerSpec>& specs) {
    w.put_u64(specs.size());
    for (const auto& s : specs) {
        w.put_u64(s.width);
        w.put_u8(static_cast<std::uint8_t>(s.activation));
    }
}

std::vector<LayerSpec> get_layer_specs(ByteReader& r) {
    std::vector<LayerSpec> specs(r.get_u64());
    for (auto& s : specs) {
        s.width = r.get_u64();
        s.activation = static_cast<Activation>(r.get_u8());
    }
    return specs;
}

void put_config(ByteWriter& w, const ProposedConfig& cfg) {
    put_layer_specs(w, cfg.autoencoder_layers);
    put_layer_specs(w, cfg.head_hidden);
    w.put_f64(cfg.train.learning_rate);
    w.put_u64(cfg.train.epochs);
    w.put_u64(cfg.train.batch_size);
    w.put_u64(cfg.mixup.pairs);
    w.put_u64(cfg.mixup.copies_per_pair);
    w.put_f64(cfg.mixup.alpha);
    w.put_f64(cfg.mixup.beta);
    w.put_u8(static_cast<std::uint8_t>(cfg.mixup.mode));
    w.put_u64(cfg.seed);
    w.put_u64(cfg.autoencoder_epochs);
}

ProposedConfig get_config(ByteReader& r) {
    ProposedConfig cfg;
    cfg.autoencoder_layers = get_layer_specs(r);
    cfg.head_hidden = get_layer_specs(r);
    cfg.train.learning_rate = r.get_f64();
    cfg.train.epochs = r.get_u64();
    cfg.train.batch_size = r.get_u64();
    cfg.mixup.pairs = r.get_u64();
    cfg.mixup.copies_per_pair = r.get_u64();
    cfg.mixup.alpha = r.get_f64();
    cfg.mixup.beta = r.get_f64();
    cfg.mixup.mode = static_cast<MixupMode>(r.get_u8());
    cfg.seed = r.get_u64();
    cfg.autoencoder_epochs = r.get_u64();
    return cfg;
}

}  // namespace

void save_artifact(const PipelineArtifact& artifact, const std::string& path) {
    ByteWriter w;
    put_encoding_plan(w, artifact.plan);
    put_autoencoder(w, artifact.autoencoder);
    put_network(w, artifact.head.net);
    w.put_f64_vector(artifact.head.history.epoch_loss);
    put_config(w, artifact.config);
    w.put_u64(artifact.training_fingerprint);
    write_file(path, seal_container(PayloadKind::PipelineArtifact, w.take()));
}

PipelineArtifact load_artifact(const std::string& path) {
    const auto payload = open_container(read_file(path), PayloadKind::PipelineArtifact);
    ByteReader r(payload);
    PipelineArtifact artifact;
    artifact.plan = get_encoding_plan(r);
    artifact.autoencoder = get_autoencoder(r);
    artifact.head.net = get_network(r);
    artifact.head.history.epoch_loss = r.get_f64_vector();
    artifact.config = get_config(r);
    artifact.training_fingerprint = r.get_u64();
    return artifact;
}

double ProposedModel::score(std::span<const double> onehot_row) const {
    Matrix one(1, onehot_row.size());
    std::copy(onehot_row.begin(), onehot_row.end(), one.row(0).begin());
    return score_rows(one)[0];
}

std::vector<double> ProposedModel::score_rows(const Matrix& onehot) const {
    const Matrix latent = encode_latent(artifact_.autoencoder, onehot);
    return artifact_.head.score_rows(latent);
}

}  // namespace bsid
