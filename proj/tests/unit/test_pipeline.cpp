#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "bsid/container.hpp"
#include "bsid/errors.hpp"
#include "bsid/pipeline.hpp"
#include "bsid/synth.hpp"

using namespace bsid;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const char* name)
        : path((std::filesystem::temp_directory_path() / name).string()) {}
    ~TempFile() { std::remove(path.c_str()); }
};

const Dataset& toy_dataset() {
    static const Dataset ds = [] {
        SynthConfig cfg;
        cfg.rows = 180;
        cfg.positives = 30;
        cfg.locations = 80;
        cfg.seed = 4242;
        return generate_synthetic(cfg);
    }();
    return ds;
}

ProposedConfig toy_config(std::uint64_t seed) {
    ProposedConfig cfg;
    cfg.autoencoder_layers = {{24, Activation::Relu}, {8, Activation::Relu}};
    cfg.head_hidden = {{8, Activation::Relu}, {4, Activation::Relu}};
    cfg.train.epochs = 5;
    cfg.train.learning_rate = 1e-3;
    cfg.mixup.pairs = 200;
    cfg.mixup.copies_per_pair = 3;
    cfg.seed = seed;
    return cfg;
}

std::vector<std::size_t> all_rows(const Dataset& ds) {
    std::vector<std::size_t> rows(ds.row_count());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return rows;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("stages chain dimensionally and the head sees the augmented count") {
    const auto& ds = toy_dataset();
    const auto cfg = toy_config(1);
    const auto artifact = fit_proposed(ds, all_rows(ds), cfg);
    CHECK(artifact.latent_width() == 8);
    CHECK(artifact.plan.onehot_width == 687);
    CHECK(artifact.head.net.input_width == 8);
    // Training-set growth: n + pairs * copies.
    // The head's first-epoch batch count reflects 180 + 600 rows.
    CHECK(artifact.head.history.epoch_loss.size() == cfg.train.epochs);
}

TEST_CASE("zero mixup pairs leave the training count unchanged") {
    const auto& ds = toy_dataset();
    auto cfg = toy_config(2);
    cfg.mixup.pairs = 0;
    const auto artifact = fit_proposed(ds, all_rows(ds), cfg);
    const auto pred = predict_proposed(artifact, ds);
    CHECK(pred.scores.size() == ds.row_count());
}

TEST_CASE("fit is deterministic and prediction is pure") {
    const auto& ds = toy_dataset();
    const auto a = fit_proposed(ds, all_rows(ds), toy_config(7));
    const auto b = fit_proposed(ds, all_rows(ds), toy_config(7));
    const auto pa = predict_proposed(a, ds);
    const auto pb = predict_proposed(b, ds);
    CHECK(pa.scores == pb.scores);

    const auto again = predict_proposed(a, ds);
    CHECK(pa.scores == again.scores);
    for (double s : pa.scores) {
        CHECK(s > 0.0);
        CHECK(s < 1.0);
    }

    const auto c = fit_proposed(ds, all_rows(ds), toy_config(8));
    const auto pc = predict_proposed(c, ds);
    CHECK(pa.scores != pc.scores);
}

TEST_CASE("prediction leaves the artifact untouched") {
    const auto& ds = toy_dataset();
    const auto artifact = fit_proposed(ds, all_rows(ds), toy_config(9));
    ByteWriter before;
    put_encoding_plan(before, artifact.plan);
    put_autoencoder(before, artifact.autoencoder);
    put_network(before, artifact.head.net);
    const auto fp_before = fnv1a64(before.bytes().data(), before.bytes().size());

    (void)predict_proposed(artifact, ds);

    ByteWriter after;
    put_encoding_plan(after, artifact.plan);
    put_autoencoder(after, artifact.autoencoder);
    put_network(after, artifact.head.net);
    CHECK(fnv1a64(after.bytes().data(), after.bytes().size()) == fp_before);
}

TEST_CASE("training on a separable toy problem reaches a strong training F1") {
    // Plant an unmistakable signal across several categorical variables.
    Dataset ds = toy_dataset();
    for (const char* name : {"Month", "Weekday", "Roadway type", "Atmospheric conditions"}) {
        const int v = ds.schema.variable_index(name);
        for (std::size_t i = 0; i < ds.row_count(); ++i) {
            ds.values(i, static_cast<std::size_t>(v)) = ds.labels[i] ? 4.0 : 1.0;
        }
    }
    auto cfg = toy_config(11);
    // Tanh head: latent magnitudes are unbounded and the aggressive toy
    // learning rate can kill ReLU units.
    cfg.head_hidden = {{8, Activation::Tanh}, {4, Activation::Tanh}};
    cfg.train.epochs = 150;
    cfg.train.learning_rate = 0.002;
    cfg.mixup.pairs = 100;
    cfg.mixup.copies_per_pair = 2;
    const auto artifact = fit_proposed(ds, all_rows(ds), cfg);
    const auto pred = predict_proposed(artifact, ds);
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    for (std::size_t i = 0; i < ds.row_count(); ++i) {
        if (pred.labels[i] && ds.labels[i]) ++tp;
        if (pred.labels[i] && !ds.labels[i]) ++fp;
        if (!pred.labels[i] && ds.labels[i]) ++fn;
    }
    const double precision = tp + fp ? static_cast<double>(tp) / (tp + fp) : 0.0;
    const double recall = tp + fn ? static_cast<double>(tp) / (tp + fn) : 0.0;
    const double f1 = precision + recall ? 2 * precision * recall / (precision + recall) : 0.0;
    CHECK(f1 >= 0.9);
}

TEST_CASE("schema mismatch at prediction names the variable") {
    const auto& ds = toy_dataset();
    const auto artifact = fit_proposed(ds, all_rows(ds), toy_config(13));
    Dataset other = ds;
    other.schema.variables[2].name = "Day of Week";
    try {
        predict_proposed(artifact, other);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("Weekday") != std::string::npos);
    }
}

TEST_CASE("artifact round trip preserves predictions byte for byte") {
    const auto& ds = toy_dataset();
    const auto artifact = fit_proposed(ds, all_rows(ds), toy_config(17));
    TempFile file("bsid_artifact_roundtrip.bin");
    save_artifact(artifact, file.path);
    const auto loaded = load_artifact(file.path);
    CHECK(loaded.training_fingerprint == artifact.training_fingerprint);
    CHECK(loaded.config.seed == artifact.config.seed);
    const auto before = predict_proposed(artifact, ds);
    const auto after = predict_proposed(loaded, ds);
    CHECK(before.scores == after.scores);
}

TEST_CASE("artifact loading distinguishes error kinds") {
    const auto& ds = toy_dataset();
    const auto artifact = fit_proposed(ds, all_rows(ds), toy_config(19));
    TempFile file("bsid_artifact_errors.bin");
    save_artifact(artifact, file.path);
    const auto bytes = read_file(file.path);

    SUBCASE("truncation") {
        std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + bytes.size() / 2);
        write_file(file.path, cut);
        CHECK_THROWS_AS(load_artifact(file.path), TruncationError);
    }
    SUBCASE("future version") {
        auto tampered = bytes;
        tampered[4] = 99;  // bump the container version field
        write_file(file.path, tampered);
        try {
            load_artifact(file.path);
            FAIL("expected VersionError");
        } catch (const VersionError& e) {
            const std::string what = e.what();
            CHECK(what.find("99") != std::string::npos);
            CHECK(what.find("1") != std::string::npos);
        }
    }
    SUBCASE("payload corruption trips the fingerprint") {
        auto tampered = bytes;
        tampered[tampered.size() / 2] ^= 0xff;
        write_file(file.path, tampered);
        CHECK_THROWS_AS(load_artifact(file.path), FingerprintError);
    }
    SUBCASE("not a container at all") {
        write_file(file.path, {'h', 'e', 'l', 'l', 'o'});
        CHECK_THROWS_AS(load_artifact(file.path), DataError);
    }
}

TEST_CASE("latent mixup rows stay within the convex hull of parent embeddings") {
    const auto& ds = toy_dataset();
    const auto cfg = toy_config(23);
    const auto artifact = fit_proposed(ds, all_rows(ds), cfg);
    // Recompute the latent training matrix and replay the augmentation.
    const Matrix onehot = transform(ds, artifact.plan, EncodingMode::Onehot);
    const Matrix latent = encode_latent(artifact.autoencoder, onehot);
    std::vector<double> soft(ds.row_count());
    for (std::size_t i = 0; i < soft.size(); ++i) soft[i] = ds.labels[i];
    const Rng rng(cfg.seed);
    const auto aug = augment_training(latent, soft, cfg.mixup, rng.child("mixup"));
    std::vector<double> lo(latent.cols(), 1e300);
    std::vector<double> hi(latent.cols(), -1e300);
    for (std::size_t i = 0; i < latent.rows(); ++i) {
        for (std::size_t j = 0; j < latent.cols(); ++j) {
            lo[j] = std::min(lo[j], latent(i, j));
            hi[j] = std::max(hi[j], latent(i, j));
        }
    }
    for (std::size_t i = latent.rows(); i < aug.features.rows(); ++i) {
        for (std::size_t j = 0; j < latent.cols(); ++j) {
            CHECK(aug.features(i, j) >= lo[j]);
            CHECK(aug.features(i, j) <= hi[j]);
        }
    }
}

TEST_CASE("network weights survive a text dump and container round trip") {
    Network net = make_network(4, {{3, Activation::Tanh}, {2, Activation::Sigmoid}}, Rng(3));
    ByteWriter w;
    put_network(w, net);
    ByteReader r(w.bytes());
    const Network back = get_network(r);
    CHECK(back.input_width == net.input_width);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        CHECK(back.layers[l].weights == net.layers[l].weights);
        CHECK(back.layers[l].bias == net.layers[l].bias);
    }
    const std::string text = network_to_text(net);
    CHECK(text.find("layer 0 4x3 tanh") != std::string::npos);
    CHECK(text.find("layer 1 3x2 sigmoid") != std::string::npos);
}

}  // TEST_SUITE
