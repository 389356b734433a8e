#pragma once

#include <string>
#include <vector>

#include "bsid/matrix.hpp"
#include "bsid/schema.hpp"

namespace bsid {

// Fully validated dataset: every cell conforms to the schema. Categorical
// cells store the category index, numeric cells the parsed value; labels are
// 0/1 against the target's (negative, positive) category order.
struct Dataset {
    Schema schema;
    Matrix values;            // n x variable_count
    std::vector<int> labels;  // n entries, 1 = positive

    std::size_t row_count() const { return labels.size(); }
    std::size_t positive_count() const;

    // Category name for a categorical/ordinal/binary cell.
    const std::string& category_at(std::size_t row, std::size_t var) const;
};

// Loads and validates a CSV against the schema. The header must cover every
// schema variable plus the target; extra columns are ignored. Any invalid
// cell aborts the load: unknown category / unparseable numeric / missing
// value raise RowError with the row index, a missing column raises
// SchemaError naming it.
Dataset load_csv(const std::string& path, const Schema& schema);
Dataset parse_csv(const std::string& text, const Schema& schema);

// RFC 4180 output (quoted when needed), schema column order, %.17g numerics.
void save_csv(const Dataset& ds, const std::string& path);
std::string dataset_to_csv(const Dataset& ds);

// One profile entry per variable: mode for category-valued kinds, mean for
// numeric ones.
struct VariableSummary {
    std::string name;
    VariableKind kind;
    std::string mode;    // category-valued kinds
    double mean = 0.0;   // numeric kind
    std::size_t distinct = 0;
};

struct DatasetProfile {
    std::vector<VariableSummary> variables;
    std::size_t rows = 0;
    std::size_t positives = 0;
    double prevalence = 0.0;
};

DatasetProfile profile(const Dataset& ds);

// 64-bit content fingerprint over schema text and cell values.
std::uint64_t dataset_fingerprint(const Dataset& ds);

}  // namespace bsid
