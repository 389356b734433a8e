#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsid/container.hpp"
#include "bsid/crossval.hpp"
#include "bsid/encoding.hpp"
#include "bsid/errors.hpp"
#include "bsid/pipeline.hpp"
#include "bsid/reference.hpp"
#include "bsid/report.hpp"
#include "bsid/synth.hpp"

namespace {

using namespace bsid;

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsageError = 2;

struct CommonArgs {
    std::string dataset_path;
    std::string schema_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    std::size_t folds = 5;
    std::size_t workers = 1;
    std::size_t cap = 4000;
};

Dataset load_inputs(const CommonArgs& args) {
    const Schema schema = load_schema(args.schema_path);
    return load_csv(args.dataset_path, schema);
}

void ensure_out_dir(const std::string& dir) {
    if (!dir.empty()) std::filesystem::create_directories(dir);
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
}

std::uint64_t config_hash(const Hyperparams& hp, std::uint64_t seed, std::size_t folds) {
    std::ostringstream canon;
    canon << hp.poisson_alpha << '|' << hp.poisson_tol << '|' << hp.knn_k << '|' << hp.svm_c
          << '|' << hp.rbf_gamma << '|' << hp.rbf_c << '|' << hp.gp_gamma << '|' << hp.gp_ridge
          << '|' << hp.pca_components << '|' << hp.n_trees << '|' << hp.ada_rounds << '|'
          << hp.kernel_cap << '|' << hp.nn_learning_rate << '|' << hp.nn_epochs << '|'
          << hp.nn_batch << '|' << hp.mixup.pairs << '|' << hp.mixup.copies_per_pair << '|'
          << hp.mixup.alpha << '|' << hp.mixup.beta << '|' << seed << '|' << folds;
    return fnv1a64(canon.str());
}

RunProvenance make_provenance(const CommonArgs& args, const Dataset& ds, const Hyperparams& hp) {
    RunProvenance prov;
    prov.dataset_path = args.dataset_path;
    prov.dataset_hash = dataset_fingerprint(ds);
    prov.rows = ds.row_count();
    prov.positives = ds.positive_count();
    prov.config_hash = config_hash(hp, args.seed, args.folds);
    prov.seed = args.seed;
    prov.folds = args.folds;
    prov.kernel_cap = args.cap;
    prov.artifact_version = kContainerVersion;
    return prov;
}

int cmd_validate(const CommonArgs& args) {
    Dataset ds;
    try {
        ds = load_inputs(args);
    } catch (const RowError& e) {
        std::cout << "invalid dataset: " << e.what() << "\n";
        return kExitDataError;
    }
    std::cout << ds.row_count() << " rows, " << ds.positive_count() << " positive\n";
    if (ds.row_count() != kPublishedRowCount || ds.positive_count() != kPublishedPositiveCount) {
        std::cout << "note: published totals are " << kPublishedRowCount << " rows / "
                  << kPublishedPositiveCount << " positive; this file differs\n";
    }
    return kExitOk;
}

int cmd_profile(const CommonArgs& args, const std::string& out_path) {
    const Dataset ds = load_inputs(args);
    if (ds.row_count() == 0) {
        std::cerr << "empty dataset\n";
        return kExitDataError;
    }
    const auto prof = profile(ds);
    std::ostringstream out;
    out << "rows " << prof.rows << ", positives " << prof.positives << " (prevalence "
        << prof.prevalence * 100.0 << "%)\n";
    char line[160];
    for (const auto& v : prof.variables) {
        if (v.kind == VariableKind::Numeric) {
            std::snprintf(line, sizeof(line), "%-26s %-12s mean=%.3f distinct=%zu\n",
                          v.name.c_str(), to_string(v.kind), v.mean, v.distinct);
        } else {
            std::snprintf(line, sizeof(line), "%-26s %-12s mode=%s\n", v.name.c_str(),
                          to_string(v.kind), v.mode.c_str());
        }
        out << line;
    }
    std::cout << out.str();
    if (!out_path.empty()) write_text(out_path, out.str());
    return kExitOk;
}

int cmd_audit(const std::string& schema_path) {
    const Schema schema = load_schema(schema_path);
    const auto audit = audit_onehot_width(schema);
    std::printf("%-26s %-12s %s\n", "variable", "kind", "one-hot width");
    for (const auto& row : audit.rows) {
        std::printf("%-26s %-12s %zu\n", row.name.c_str(), to_string(row.kind), row.width);
    }
    std::printf("%-26s %-12s %zu (expected %zu)\n", "total", "", audit.total,
                kPublishedOnehotWidth);
    if (audit.total != kPublishedOnehotWidth) {
        std::printf("width mismatch: schema blocks sum to %zu, published dimensionality is %zu\n",
                    audit.total, kPublishedOnehotWidth);
        return kExitDataError;
    }
    return kExitOk;
}

int cmd_encode(const CommonArgs& args, const std::string& mode_name,
               const std::string& out_path) {
    const Dataset ds = load_inputs(args);
    std::vector<std::size_t> rows(ds.row_count());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    const auto plan = fit_encoding(ds, rows);
    const EncodingMode mode = mode_name == "label" ? EncodingMode::Label : EncodingMode::Onehot;
    std::uint64_t clipped = 0;
    const Matrix x = transform(ds, plan, mode, &clipped);
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (j) out << ',';
            out << x(i, j);
        }
        out << '\n';
    }
    write_text(out_path, out.str());
    std::cout << "wrote " << x.rows() << "x" << x.cols() << " matrix to " << out_path << "\n";
    return kExitOk;
}

Hyperparams apply_overrides(Hyperparams hp, const std::vector<std::string>& overrides) {
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParamError("override must be key=value: " + kv);
        hp.set(kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
    }
    return hp;
}

std::vector<Family> parse_families(const std::string& csv) {
    if (csv.empty() || csv == "all") return default_benchmark_families();
    std::vector<Family> out;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) out.push_back(family_from_string(token));
    return out;
}

std::vector<Variant> parse_variants(const std::string& csv) {
    if (csv.empty() || csv == "all") {
        return {Variant::Original, Variant::Onehot, Variant::Augmented};
    }
    std::vector<Variant> out;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) out.push_back(variant_from_string(token));
    return out;
}

int write_benchmark_outputs(const CommonArgs& args, const Dataset& ds, const Hyperparams& hp,
                            const std::vector<MetricsReport>& cells) {
    ensure_out_dir(args.out_dir);
    const auto prov = make_provenance(args, ds, hp);
    const double all_neg = all_negative_baseline(ds);
    const std::string text = render_text_table(cells, prov, all_neg);
    write_text(args.out_dir + "/benchmark.txt", text);
    write_text(args.out_dir + "/benchmark.csv", render_csv(cells));
    write_text(args.out_dir + "/benchmark.json", render_json(cells, prov, all_neg));
    std::cout << text;
    std::cout << "reports written to " << args.out_dir << "/benchmark.{txt,csv,json}\n";
    for (const auto& cell : cells) {
        if (cell.failed()) return kExitDataError;
    }
    return kExitOk;
}

int cmd_evaluate(const CommonArgs& args, const std::string& family_name,
                 const std::string& variant_name, const Hyperparams& hp) {
    const Dataset ds = load_inputs(args);
    const Family family = family_from_string(family_name);
    const Variant variant = variant_from_string(variant_name);
    const std::vector<BenchmarkCell> cells{{family, variant}};
    const auto reports = run_benchmark(ds, cells, hp, args.folds, args.seed, 1);
    return write_benchmark_outputs(args, ds, hp, reports);
}

int cmd_benchmark(const CommonArgs& args, const std::string& families_csv,
                  const std::string& variants_csv, bool skip_proposed, const Hyperparams& hp) {
    const Dataset ds = load_inputs(args);
    const auto cells = benchmark_cells(parse_families(families_csv),
                                       parse_variants(variants_csv), !skip_proposed);
    if (cells.empty()) {
        std::cerr << "no benchmark cells selected\n";
        return kExitUsageError;
    }
    const auto reports = run_benchmark(ds, cells, hp, args.folds, args.seed, args.workers);
    return write_benchmark_outputs(args, ds, hp, reports);
}

int cmd_train(const CommonArgs& args, const std::string& artifact_path, const Hyperparams& hp) {
    const Dataset ds = load_inputs(args);
    ProposedConfig cfg;
    cfg.train.learning_rate = hp.nn_learning_rate;
    cfg.train.epochs = hp.nn_epochs;
    cfg.train.batch_size = hp.nn_batch;
    cfg.mixup.pairs = hp.mixup.pairs;
    cfg.mixup.copies_per_pair = hp.mixup.copies_per_pair;
    cfg.mixup.alpha = hp.mixup.alpha;
    cfg.mixup.beta = hp.mixup.beta;
    cfg.seed = args.seed;
    std::vector<std::size_t> rows(ds.row_count());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    const auto artifact = fit_proposed(ds, rows, cfg);
    ensure_out_dir(std::filesystem::path(artifact_path).parent_path().string());
    save_artifact(artifact, artifact_path);
    std::cout << "trained pipeline on " << ds.row_count() << " rows; artifact at "
              << artifact_path << "\n";
    return kExitOk;
}

int cmd_predict(const CommonArgs& args, const std::string& artifact_path,
                const std::string& out_path) {
    const auto artifact = load_artifact(artifact_path);
    const Dataset ds = load_inputs(args);
    const auto pred = predict_proposed(artifact, ds);

    // Preserve the input columns and order; append score and label.
    std::ifstream in(args.dataset_path, std::ios::binary);
    if (!in) throw IoError("cannot open dataset file: " + args.dataset_path);
    std::ostringstream out;
    std::string line;
    std::getline(in, line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out << line << ",score,label\n";
    char buf[64];
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::snprintf(buf, sizeof(buf), "%.17g", pred.scores[row]);
        out << line << ',' << buf << ','
            << artifact.plan.schema.target.categories[static_cast<std::size_t>(pred.labels[row])]
            << "\n";
        ++row;
    }
    ensure_out_dir(std::filesystem::path(out_path).parent_path().string());
    write_text(out_path, out.str());
    std::cout << "scored " << row << " rows into " << out_path << "\n";
    return kExitOk;
}

int cmd_tune(const CommonArgs& args, const std::string& family_name,
             const std::string& variant_name, const std::string& grid_path,
             const Hyperparams& hp) {
    const Dataset ds = load_inputs(args);
    std::ifstream in(grid_path);
    if (!in) throw IoError("cannot open grid file: " + grid_path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("grid file is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object() || doc.empty()) {
        std::cerr << "empty grid\n";
        return kExitUsageError;
    }
    // Grid file: {"knn.k": [2, 4, 8], "svm.c": [0.1, 1.0]} expands to the
    // full cross product in key order.
    std::vector<std::string> keys;
    std::vector<std::vector<double>> values;
    for (const auto& [key, list] : doc.items()) {
        keys.push_back(key);
        values.push_back(list.get<std::vector<double>>());
    }
    std::vector<GridPoint> grid;
    std::vector<std::size_t> at(keys.size(), 0);
    bool done = false;
    while (!done) {
        GridPoint point;
        for (std::size_t i = 0; i < keys.size(); ++i) point.overrides[keys[i]] = values[i][at[i]];
        grid.push_back(point);
        done = true;
        for (std::size_t i = keys.size(); i-- > 0;) {
            if (++at[i] < values[i].size()) {
                done = false;
                break;
            }
            at[i] = 0;
        }
    }
    const auto result = grid_search(family_from_string(family_name), grid, hp, ds,
                                    variant_from_string(variant_name), args.folds, args.seed);

    nlohmann::ordered_json out;
    out["best_index"] = result.best_index;
    out["best_point"] = result.best_point.overrides;
    auto points = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        points.push_back({{"overrides", grid[i].overrides},
                          {"f1_mean", result.reports[i].f1.mean},
                          {"auc_mean", result.reports[i].auc.mean},
                          {"error", result.reports[i].error}});
    }
    out["points"] = std::move(points);
    ensure_out_dir(args.out_dir);
    write_text(args.out_dir + "/tune.json", out.dump(2) + "\n");
    std::cout << "best point: index " << result.best_index << ", mean F1 "
              << result.reports[result.best_index].f1.mean << "; full lattice in "
              << args.out_dir << "/tune.json\n";
    return kExitOk;
}

int cmd_synth(const std::string& out_csv, const std::string& out_schema, std::uint64_t seed,
              std::size_t rows, std::size_t positives, std::size_t locations) {
    SynthConfig cfg;
    cfg.seed = seed;
    if (rows) cfg.rows = rows;
    if (positives) cfg.positives = positives;
    if (locations) cfg.locations = locations;
    const Dataset ds = generate_synthetic(cfg);
    if (!out_schema.empty()) {
        write_text(out_schema, schema_to_text(ds.schema));
        std::cout << "schema written to " << out_schema << "\n";
    }
    save_csv(ds, out_csv);
    std::cout << "synthetic dataset (" << ds.row_count() << " rows, " << ds.positive_count()
              << " positive) written to " << out_csv << "\n";
    return kExitOk;
}

int cmd_inspect(const std::string& artifact_path, bool dump_weights) {
    const auto artifact = load_artifact(artifact_path);
    std::cout << "pipeline artifact\n";
    std::cout << "  one-hot width:  " << artifact.plan.onehot_width << "\n";
    std::cout << "  latent width:   " << artifact.latent_width() << "\n";
    std::cout << "  head layers:    " << artifact.head.net.layers.size() << "\n";
    std::cout << "  train seed:     " << artifact.config.seed << "\n";
    std::cout << "  data footprint: " << std::hex << artifact.training_fingerprint << std::dec
              << "\n";
    if (dump_weights) {
        std::cout << "encoder:\n" << network_to_text(artifact.autoencoder.encoder);
        std::cout << "decoder:\n" << network_to_text(artifact.autoencoder.decoder);
        std::cout << "head:\n" << network_to_text(artifact.head.net);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BSNG black-spot identification benchmark"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI config file; command-line flags win");

    CommonArgs common;
    std::vector<std::string> overrides;

    auto add_common = [&](CLI::App* cmd, bool needs_seed) {
        cmd->add_option("--dataset", common.dataset_path, "dataset CSV path")->required();
        cmd->add_option("--schema", common.schema_path, "schema file path")->required();
        cmd->add_option("--out", common.out_dir, "output directory");
        cmd->add_option("--folds", common.folds, "cross-validation folds");
        cmd->add_option("--workers", common.workers, "worker pool size");
        cmd->add_option("--cap", common.cap, "kernel-method subsample cap");
        cmd->add_option("--set", overrides, "hyperparameter override key=value");
        auto* seed = cmd->add_option("--seed", common.seed, "master random seed");
        if (needs_seed) seed->required();
    };

    auto* validate = app.add_subcommand("validate", "validate a dataset against the schema");
    add_common(validate, false);

    auto* profile_cmd = app.add_subcommand("profile", "per-variable modes and means");
    std::string profile_out;
    add_common(profile_cmd, false);
    profile_cmd->add_option("--report", profile_out, "also write the profile to this file");

    auto* audit = app.add_subcommand("audit", "one-hot width accounting per variable");
    std::string audit_schema;
    audit->add_option("--schema", audit_schema, "schema file path")->required();

    auto* encode = app.add_subcommand("encode", "export the encoded feature matrix");
    std::string encode_mode = "onehot";
    std::string encode_out = "encoded.csv";
    add_common(encode, false);
    encode->add_option("--mode", encode_mode, "label | onehot")
        ->check(CLI::IsMember({"label", "onehot"}));
    encode->add_option("--matrix-out", encode_out, "output CSV path");

    auto* evaluate = app.add_subcommand("evaluate", "cross-validate one family on one variant");
    std::string eval_family = "decision_tree";
    std::string eval_variant = "original";
    add_common(evaluate, true);
    evaluate->add_option("--family", eval_family, "model family")->required();
    evaluate->add_option("--variant", eval_variant, "original|onehot|augmented|proposed")
        ->required();

    auto* benchmark = app.add_subcommand("benchmark", "run the full results table");
    std::string bench_families = "all";
    std::string bench_variants = "all";
    bool skip_proposed = false;
    add_common(benchmark, true);
    benchmark->add_option("--families", bench_families, "comma-separated family list or 'all'");
    benchmark->add_option("--variants", bench_variants, "comma-separated variant list or 'all'");
    benchmark->add_flag("--skip-proposed", skip_proposed, "omit the proposed-pipeline row");

    auto* train = app.add_subcommand("train", "fit the full pipeline and save the artifact");
    std::string artifact_path = "out/pipeline.bsid";
    add_common(train, true);
    train->add_option("--artifact", artifact_path, "artifact output path");

    auto* predict = app.add_subcommand("predict", "score a CSV with a saved artifact");
    std::string predict_out = "out/scored.csv";
    add_common(predict, false);
    predict->add_option("--artifact", artifact_path, "artifact path")->required();
    predict->add_option("--scored-out", predict_out, "scored CSV output path");

    auto* tune = app.add_subcommand("tune", "grid search maximizing mean F1");
    std::string grid_path;
    add_common(tune, true);
    tune->add_option("--family", eval_family, "model family")->required();
    tune->add_option("--variant", eval_variant, "variant")->required();
    tune->add_option("--grid", grid_path, "JSON grid file")->required();

    auto* synth = app.add_subcommand("synth", "generate the synthetic stand-in dataset");
    std::string synth_csv = "data/bsng_synthetic.csv";
    std::string synth_schema;
    std::uint64_t synth_seed = 2014;
    synth->add_option("--out-csv", synth_csv, "dataset output path");
    synth->add_option("--out-schema", synth_schema, "also write the schema file");
    synth->add_option("--seed", synth_seed, "generator seed");
    std::size_t synth_rows = 0;
    std::size_t synth_positives = 0;
    std::size_t synth_locations = 0;
    synth->add_option("--rows", synth_rows, "row count (default 1811)");
    synth->add_option("--positives", synth_positives, "positive count (default 142)");
    synth->add_option("--locations", synth_locations, "location count (default 735)");

    auto* inspect = app.add_subcommand("inspect", "summarize a saved artifact");
    bool dump_weights = false;
    inspect->add_option("--artifact", artifact_path, "artifact path")->required();
    inspect->add_flag("--dump-weights", dump_weights, "print full weights as text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsageError;
    }

    try {
        Hyperparams hp;
        hp.kernel_cap = common.cap;
        hp = apply_overrides(hp, overrides);

        if (validate->parsed()) return cmd_validate(common);
        if (profile_cmd->parsed()) return cmd_profile(common, profile_out);
        if (audit->parsed()) return cmd_audit(audit_schema);
        if (encode->parsed()) return cmd_encode(common, encode_mode, encode_out);
        if (evaluate->parsed()) return cmd_evaluate(common, eval_family, eval_variant, hp);
        if (benchmark->parsed()) {
            return cmd_benchmark(common, bench_families, bench_variants, skip_proposed, hp);
        }
        if (train->parsed()) return cmd_train(common, artifact_path, hp);
        if (predict->parsed()) return cmd_predict(common, artifact_path, predict_out);
        if (tune->parsed()) return cmd_tune(common, eval_family, eval_variant, grid_path, hp);
        if (synth->parsed()) {
            return cmd_synth(synth_csv, synth_schema, synth_seed, synth_rows,
                             synth_positives, synth_locations);
        }
        if (inspect->parsed()) return cmd_inspect(artifact_path, dump_weights);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const RowError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const VersionError& e) {
        std::cerr << "version error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitOk;
}
