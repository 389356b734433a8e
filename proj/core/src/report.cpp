#include "bsid/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "bsid/reference.hpp"

namespace bsid {

namespace {

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string mean_std(const MetricSummary& s) {
    return fixed2(s.mean) + " (" + fixed2(s.stddev) + ")";
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

std::string render_text_table(const std::vector<MetricsReport>& cells,
                              const RunProvenance& provenance, double computed_all_negative) {
    std::ostringstream out;
    out << "BSNG benchmark  seed=" << provenance.seed << "  folds=" << provenance.folds
        << "  dataset=" << provenance.dataset_path << " (" << provenance.rows << " rows, "
        << provenance.positives << " positive)\n";
    out << "dataset_hash=" << hex64(provenance.dataset_hash)
        << "  config_hash=" << hex64(provenance.config_hash)
        << "  kernel_cap=" << provenance.kernel_cap << "\n\n";

    const char* header =
        "variant    model             acc (std)      prec (std)     rec (std)      f1 (std)       auc (std)";
    out << header << "\n";
    out << std::string(105, '-') << "\n";
    auto pad = [](const std::string& s, std::size_t width) {
        return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
    };
    for (const auto& cell : cells) {
        out << pad(to_string(cell.variant), 11) << pad(to_string(cell.family), 18);
        if (cell.failed()) {
            out << "ERROR: " << cell.error << "\n";
            continue;
        }
        out << pad(mean_std(cell.accuracy), 15) << pad(mean_std(cell.precision), 15)
            << pad(mean_std(cell.recall), 15) << pad(mean_std(cell.f1), 15)
            << pad(mean_std(cell.auc), 15);
        if (cell.subsample.subsampled) {
            out << " [cap " << cell.subsample.used << "/" << cell.subsample.total << "]";
        }
        out << "\n";
        if (const auto ref = reference_for(cell.variant, cell.family)) {
            out << pad("", 11) << pad("  reference", 18) << pad(fixed2(ref->accuracy), 15)
                << pad(fixed2(ref->precision), 15) << pad(fixed2(ref->recall), 15)
                << pad(fixed2(ref->f1), 15) << pad(fixed2(ref->auc), 15) << "\n";
        }
    }
    out << "\n";
    out << "all-negative baseline accuracy: computed " << fixed2(computed_all_negative)
        << "% from the loaded data (1 - prevalence); the published write-up quotes "
        << fixed2(kPublishedAllNegativeAccuracy)
        << "%, an unresolved discrepancy in the source material.\n";
    return out.str();
}

std::string render_csv(const std::vector<MetricsReport>& cells) {
    std::ostringstream out;
    out << "variant,family,seed,folds,accuracy,accuracy_std,precision,precision_std,"
           "recall,recall_std,f1,f1_std,auc,auc_std,subsampled,cap_used,error\n";
    for (const auto& cell : cells) {
        out << to_string(cell.variant) << "," << to_string(cell.family) << "," << cell.seed << ","
            << cell.folds << ",";
        if (cell.failed()) {
            out << ",,,,,,,,,," << (cell.subsample.subsampled ? "true" : "false") << ",,\""
                << cell.error << "\"\n";
            continue;
        }
        out << fixed2(cell.accuracy.mean) << "," << fixed2(cell.accuracy.stddev) << ","
            << fixed2(cell.precision.mean) << "," << fixed2(cell.precision.stddev) << ","
            << fixed2(cell.recall.mean) << "," << fixed2(cell.recall.stddev) << ","
            << fixed2(cell.f1.mean) << "," << fixed2(cell.f1.stddev) << ","
            << fixed2(cell.auc.mean) << "," << fixed2(cell.auc.stddev) << ","
            << (cell.subsample.subsampled ? "true" : "false") << ","
            << (cell.subsample.subsampled ? std::to_string(cell.subsample.used) : "") << ",\n";
    }
    return out.str();
}

std::string render_json(const std::vector<MetricsReport>& cells, const RunProvenance& provenance,
                        double computed_all_negative) {
    using json = nlohmann::ordered_json;
    json doc;
    doc["schema_version"] = 1;
    doc["provenance"] = {
        {"dataset_path", provenance.dataset_path},
        {"dataset_hash", hex64(provenance.dataset_hash)},
        {"rows", provenance.rows},
        {"positives", provenance.positives},
        {"config_hash", hex64(provenance.config_hash)},
        {"seed", provenance.seed},
        {"folds", provenance.folds},
        {"kernel_cap", provenance.kernel_cap},
        {"artifact_version", provenance.artifact_version},
    };
    doc["notes"] = {
        {"all_negative_accuracy_computed", computed_all_negative},
        {"all_negative_accuracy_published", kPublishedAllNegativeAccuracy},
        {"note",
         "the published figure disagrees with the published row counts; both are shown"},
    };

    json cell_array = json::array();
    for (const auto& cell : cells) {
        json c;
        c["variant"] = to_string(cell.variant);
        c["family"] = to_string(cell.family);
        c["seed"] = cell.seed;
        c["folds"] = cell.folds;
        if (cell.failed()) {
            c["error"] = cell.error;
        } else {
            auto metric = [](const MetricSummary& s) {
                return json{{"mean", s.mean}, {"std", s.stddev}};
            };
            c["accuracy"] = metric(cell.accuracy);
            c["precision"] = metric(cell.precision);
            c["recall"] = metric(cell.recall);
            c["f1"] = metric(cell.f1);
            c["auc"] = metric(cell.auc);
            json folds = json::array();
            for (const auto& fm : cell.fold_metrics) {
                folds.push_back({
                    {"tp", fm.confusion.tp},
                    {"fp", fm.confusion.fp},
                    {"fn", fm.confusion.fn},
                    {"tn", fm.confusion.tn},
                    {"accuracy", fm.accuracy},
                    {"precision", fm.precision},
                    {"recall", fm.recall},
                    {"f1", fm.f1},
                    {"auc", fm.auc},
                });
            }
            c["per_fold"] = std::move(folds);
            c["subsample"] = {
                {"subsampled", cell.subsample.subsampled},
                {"cap", cell.subsample.cap},
                {"used", cell.subsample.used},
                {"total", cell.subsample.total},
            };
        }
        if (const auto ref = reference_for(cell.variant, cell.family)) {
            c["reference"] = {
                {"accuracy", ref->accuracy}, {"precision", ref->precision},
                {"recall", ref->recall},     {"f1", ref->f1},
                {"auc", ref->auc},
            };
        }
        cell_array.push_back(std::move(c));
    }
    doc["cells"] = std::move(cell_array);
    return doc.dump(2) + "\n";
}

}  // namespace bsid
