#pragma once

#include <string>
#include <vector>

#include "bsid/crossval.hpp"

namespace bsid {

// Deterministic run descriptor embedded in every report; never contains wall
// time, so identical runs produce identical bytes.
struct RunProvenance {
    std::string dataset_path;
    std::uint64_t dataset_hash = 0;
    std::size_t rows = 0;
    std::size_t positives = 0;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::size_t folds = 5;
    std::size_t kernel_cap = 4000;
    std::uint32_t artifact_version = 1;
};

// Aligned plain-text table in the published layout, one row per cell with
// "mean (std)" entries and the reference values underneath.
std::string render_text_table(const std::vector<MetricsReport>& cells,
                              const RunProvenance& provenance, double computed_all_negative);

// RFC 4180 CSV, one row per cell.
std::string render_csv(const std::vector<MetricsReport>& cells);

// Machine-readable JSON document (schema_version 1).
std::string render_json(const std::vector<MetricsReport>& cells, const RunProvenance& provenance,
                        double computed_all_negative);

}  // namespace bsid
