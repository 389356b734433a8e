#include "bsid/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bsid/errors.hpp"
#include "bsid/rng.hpp"

namespace bsid {

std::size_t Dataset::positive_count() const {
    std::size_t n = 0;
    for (int y : labels) n += static_cast<std::size_t>(y);
    return n;
}

const std::string& Dataset::category_at(std::size_t row, std::size_t var) const {
    const auto& spec = schema.variables[var];
    const auto idx = static_cast<std::size_t>(values(row, var));
    return spec.categories[idx];
}

namespace {

// RFC 4180 field scanner; handles quoted fields, escaped quotes and embedded
// newlines. Returns one record per call.
class CsvReader {
public:
    explicit CsvReader(const std::string& text) : text_(text) {}

    bool next_record(std::vector<std::string>& fields) {
        fields.clear();
        if (pos_ >= text_.size()) return false;
        std::string field;
        bool quoted = false;
        for (;;) {
            if (pos_ >= text_.size()) {
                fields.push_back(std::move(field));
                return true;
            }
            const char c = text_[pos_++];
            if (quoted) {
                if (c == '"') {
                    if (pos_ < text_.size() && text_[pos_] == '"') {
                        field.push_back('"');
                        ++pos_;
                    } else {
                        quoted = false;
                    }
                } else {
                    field.push_back(c);
                }
            } else if (c == '"' && field.empty()) {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else if (c == '\n') {
                if (!field.empty() && field.back() == '\r') field.pop_back();
                fields.push_back(std::move(field));
                return true;
            } else {
                field.push_back(c);
            }
        }
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

double parse_numeric(const std::string& s, std::size_t row, const std::string& column) {
    if (s.empty()) {
        throw RowError(row, "missing value in column '" + column + "'");
    }
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
        throw RowError(row, "unparseable numeric '" + s + "' in column '" + column + "'");
    }
    return v;
}

std::string format_numeric(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string quote_csv(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

}  // namespace

Dataset parse_csv(const std::string& text, const Schema& schema) {
    schema.validate();
    CsvReader reader(text);

    std::vector<std::string> header;
    if (!reader.next_record(header)) {
        throw DataError("CSV has no header row");
    }

    const std::size_t nvars = schema.variable_count();
    std::vector<int> column_of(nvars, -1);
    int target_column = -1;
    for (std::size_t v = 0; v < nvars; ++v) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] == schema.variables[v].name) {
                column_of[v] = static_cast<int>(c);
                break;
            }
        }
        if (column_of[v] < 0) {
            throw SchemaError("CSV is missing column '" + schema.variables[v].name + "'");
        }
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == schema.target.name) {
            target_column = static_cast<int>(c);
            break;
        }
    }
    if (target_column < 0) {
        throw SchemaError("CSV is missing target column '" + schema.target.name + "'");
    }

    std::vector<double> cells;
    std::vector<int> labels;
    std::vector<std::string> fields;
    std::size_t row = 0;
    while (reader.next_record(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
        if (fields.size() < header.size()) {
            throw RowError(row, "expected " + std::to_string(header.size()) + " fields, got " +
                                    std::to_string(fields.size()));
        }
        for (std::size_t v = 0; v < nvars; ++v) {
            const auto& spec = schema.variables[v];
            const std::string& raw = fields[static_cast<std::size_t>(column_of[v])];
            if (spec.is_numeric()) {
                cells.push_back(parse_numeric(raw, row, spec.name));
            } else {
                if (raw.empty()) {
                    throw RowError(row, "missing value in column '" + spec.name + "'");
                }
                const int idx = spec.category_index(raw);
                if (idx < 0) {
                    throw RowError(row, "unknown category '" + raw + "' in column '" + spec.name +
                                            "'");
                }
                cells.push_back(static_cast<double>(idx));
            }
        }
        const std::string& raw_label = fields[static_cast<std::size_t>(target_column)];
        const int label_idx = schema.target.category_index(raw_label);
        if (label_idx < 0) {
            throw RowError(row, "unknown category '" + raw_label + "' in target column '" +
                                    schema.target.name + "'");
        }
        labels.push_back(label_idx);
        ++row;
    }

    Dataset ds;
    ds.schema = schema;
    ds.values = Matrix::from_values(row, nvars, std::move(cells));
    ds.labels = std::move(labels);
    return ds;
}

Dataset load_csv(const std::string& path, const Schema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dataset file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), schema);
}

std::string dataset_to_csv(const Dataset& ds) {
    std::ostringstream out;
    const std::size_t nvars = ds.schema.variable_count();
    for (std::size_t v = 0; v < nvars; ++v) {
        out << quote_csv(ds.schema.variables[v].name) << ",";
    }
    out << quote_csv(ds.schema.target.name) << "\n";
    for (std::size_t i = 0; i < ds.row_count(); ++i) {
        for (std::size_t v = 0; v < nvars; ++v) {
            const auto& spec = ds.schema.variables[v];
            if (spec.is_numeric()) {
                out << format_numeric(ds.values(i, v));
            } else {
                out << quote_csv(ds.category_at(i, v));
            }
            out << ",";
        }
        out << quote_csv(ds.schema.target.categories[static_cast<std::size_t>(ds.labels[i])]);
        out << "\n";
    }
    return out.str();
}

void save_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write dataset file: " + path);
    out << dataset_to_csv(ds);
}

DatasetProfile profile(const Dataset& ds) {
    if (ds.row_count() == 0) throw DataError("cannot profile an empty dataset");

    DatasetProfile prof;
    prof.rows = ds.row_count();
    prof.positives = ds.positive_count();
    prof.prevalence = static_cast<double>(prof.positives) / static_cast<double>(prof.rows);

    const std::size_t n = ds.row_count();
    for (std::size_t v = 0; v < ds.schema.variable_count(); ++v) {
        const auto& spec = ds.schema.variables[v];
        VariableSummary summary;
        summary.name = spec.name;
        summary.kind = spec.kind;
        if (spec.is_numeric()) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sum += ds.values(i, v);
            }
            summary.mean = sum / static_cast<double>(n);
            std::vector<double> sorted;
            sorted.reserve(n);
            for (std::size_t i = 0; i < n; ++i) sorted.push_back(ds.values(i, v));
            std::sort(sorted.begin(), sorted.end());
            summary.distinct = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == 0 || sorted[i] != sorted[i - 1]) ++summary.distinct;
            }
        } else {
            std::vector<std::size_t> counts(spec.categories.size(), 0);
            for (std::size_t i = 0; i < n; ++i) {
                counts[static_cast<std::size_t>(ds.values(i, v))]++;
            }
            std::size_t best = 0;
            for (std::size_t c = 1; c < counts.size(); ++c) {
                if (counts[c] > counts[best]) best = c;
            }
            summary.mode = spec.categories[best];
            summary.distinct = 0;
            for (auto c : counts) {
                if (c > 0) ++summary.distinct;
            }
        }
        prof.variables.push_back(std::move(summary));
    }
    return prof;
}

std::uint64_t dataset_fingerprint(const Dataset& ds) {
    const std::string schema_text = schema_to_text(ds.schema);
    std::uint64_t h = fnv1a64(schema_text);
    h ^= fnv1a64(ds.values.data(), ds.values.size() * sizeof(double));
    h *= 0x100000001b3ULL;
    h ^= fnv1a64(ds.labels.data(), ds.labels.size() * sizeof(int));
    return h;
}

}  // namespace bsid
