#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "bsid/dataset.hpp"
#include "bsid/matrix.hpp"

namespace bsid {

enum class EncodingMode { Label, Onehot };

// Train-fold-only preprocessing state: per-numeric-variable min/max scalers
// plus the block layout implied by the schema vocabularies. Vocabularies come
// from the schema, never from observed values, so matrix width is identical
// across folds.
struct EncodingPlan {
    struct NumericScaler {
        double min = 0.0;
        double max = 0.0;
    };

    Schema schema;
    std::vector<NumericScaler> scalers;      // entry per variable; unused for non-numeric
    std::vector<std::size_t> onehot_offset;  // block start per variable in one-hot layout
    std::vector<std::size_t> onehot_block;   // block width per variable
    std::size_t onehot_width = 0;
    std::size_t label_width = 0;

    // 0..1 scaling with clipping outside the fitted range.
    double scale_numeric(std::size_t var, double value, std::uint64_t* clipped) const;
    double unscale_numeric(std::size_t var, double scaled) const;
};

// Width accounting per variable, for the audit report.
struct WidthAuditRow {
    std::string name;
    VariableKind kind;
    std::size_t width = 0;
};

struct WidthAudit {
    std::vector<WidthAuditRow> rows;
    std::size_t total = 0;
};

WidthAudit audit_onehot_width(const Schema& schema);

// Fits scalers on the given row subset. Constant numeric variables scale to
// 0.0 by convention.
EncodingPlan fit_encoding(const Dataset& ds, const std::vector<std::size_t>& row_subset);

// Label mode: one column per variable (category index, scaled numeric).
// One-hot mode: one block per category-valued variable, scaled numerics.
// `clip_count`, when given, receives the number of out-of-range numeric
// values that were clipped.
Matrix transform(const Dataset& ds, const EncodingPlan& plan, EncodingMode mode,
                 std::uint64_t* clip_count = nullptr);
Matrix transform_rows(const Dataset& ds, const std::vector<std::size_t>& rows,
                      const EncodingPlan& plan, EncodingMode mode,
                      std::uint64_t* clip_count = nullptr);

// Argmax per block back to category names; numerics unscaled. Throws
// AmbiguityError on an all-zero block.
struct DecodedRecord {
    std::vector<std::string> categories;  // empty string for numeric slots
    std::vector<double> numerics;         // NaN for category slots
};

std::vector<DecodedRecord> inverse_onehot(const Matrix& x, const EncodingPlan& plan);

}  // namespace bsid
