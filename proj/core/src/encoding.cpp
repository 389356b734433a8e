#include "bsid/encoding.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bsid/errors.hpp"

namespace bsid {

double EncodingPlan::scale_numeric(std::size_t var, double value, std::uint64_t* clipped) const {
    const auto& s = scalers[var];
    if (s.max <= s.min) return 0.0;  // constant on the fitted subset
    double scaled = (value - s.min) / (s.max - s.min);
    if (scaled < 0.0 || scaled > 1.0) {
        if (clipped) ++*clipped;
        scaled = scaled < 0.0 ? 0.0 : 1.0;
    }
    return scaled;
}

double EncodingPlan::unscale_numeric(std::size_t var, double scaled) const {
    const auto& s = scalers[var];
    if (s.max <= s.min) return s.min;
    return s.min + scaled * (s.max - s.min);
}

WidthAudit audit_onehot_width(const Schema& schema) {
    WidthAudit audit;
    for (const auto& var : schema.variables) {
        WidthAuditRow row;
        row.name = var.name;
        row.kind = var.kind;
        row.width = var.is_numeric() ? 1 : var.categories.size();
        audit.total += row.width;
        audit.rows.push_back(std::move(row));
    }
    return audit;
}

EncodingPlan fit_encoding(const Dataset& ds, const std::vector<std::size_t>& row_subset) {
    if (row_subset.empty()) throw ParamError("fit_encoding: empty row subset");

    EncodingPlan plan;
    plan.schema = ds.schema;
    const std::size_t nvars = ds.schema.variable_count();
    plan.scalers.assign(nvars, {});
    plan.onehot_offset.assign(nvars, 0);
    plan.onehot_block.assign(nvars, 0);
    plan.label_width = nvars;

    std::size_t offset = 0;
    for (std::size_t v = 0; v < nvars; ++v) {
        const auto& spec = ds.schema.variables[v];
        if (spec.is_numeric()) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            for (const std::size_t r : row_subset) {
                const double val = ds.values(r, v);
                lo = std::min(lo, val);
                hi = std::max(hi, val);
            }
            plan.scalers[v] = {lo, hi};
            plan.onehot_block[v] = 1;
        } else {
            plan.onehot_block[v] = spec.categories.size();
        }
        plan.onehot_offset[v] = offset;
        offset += plan.onehot_block[v];
    }
    plan.onehot_width = offset;
    return plan;
}

Matrix transform_rows(const Dataset& ds, const std::vector<std::size_t>& rows,
                      const EncodingPlan& plan, EncodingMode mode, std::uint64_t* clip_count) {
    if (plan.schema.variable_count() != ds.schema.variable_count()) {
        throw ShapeError("transform: plan fitted on a different schema");
    }
    const std::size_t nvars = ds.schema.variable_count();
    const std::size_t width = mode == EncodingMode::Label ? plan.label_width : plan.onehot_width;
    Matrix out(rows.size(), width);

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t r = rows[i];
        auto dst = out.row(i);
        for (std::size_t v = 0; v < nvars; ++v) {
            const auto& spec = ds.schema.variables[v];
            const double raw = ds.values(r, v);
            if (mode == EncodingMode::Label) {
                dst[v] = spec.is_numeric() ? plan.scale_numeric(v, raw, clip_count) : raw;
            } else {
                const std::size_t off = plan.onehot_offset[v];
                if (spec.is_numeric()) {
                    dst[off] = plan.scale_numeric(v, raw, clip_count);
                } else {
                    dst[off + static_cast<std::size_t>(raw)] = 1.0;
                }
            }
        }
    }
    return out;
}

Matrix transform(const Dataset& ds, const EncodingPlan& plan, EncodingMode mode,
                 std::uint64_t* clip_count) {
    std::vector<std::size_t> rows(ds.row_count());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return transform_rows(ds, rows, plan, mode, clip_count);
}

std::vector<DecodedRecord> inverse_onehot(const Matrix& x, const EncodingPlan& plan) {
    if (x.cols() != plan.onehot_width) {
        throw ShapeError("inverse_onehot: expected " + std::to_string(plan.onehot_width) +
                         " columns, got " + std::to_string(x.cols()));
    }
    const std::size_t nvars = plan.schema.variable_count();
    std::vector<DecodedRecord> records;
    records.reserve(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        DecodedRecord rec;
        rec.categories.assign(nvars, "");
        rec.numerics.assign(nvars, std::numeric_limits<double>::quiet_NaN());
        const auto row = x.row(i);
        for (std::size_t v = 0; v < nvars; ++v) {
            const auto& spec = plan.schema.variables[v];
            const std::size_t off = plan.onehot_offset[v];
            if (spec.is_numeric()) {
                rec.numerics[v] = plan.unscale_numeric(v, row[off]);
                continue;
            }
            std::size_t best = 0;
            double best_val = 0.0;
            for (std::size_t c = 0; c < plan.onehot_block[v]; ++c) {
                if (row[off + c] > best_val) {
                    best_val = row[off + c];
                    best = c;
                }
            }
            if (best_val <= 0.0) {
                throw AmbiguityError("inverse_onehot: all-zero block for variable '" + spec.name +
                                     "' in row " + std::to_string(i));
            }
            rec.categories[v] = spec.categories[best];
        }
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace bsid
