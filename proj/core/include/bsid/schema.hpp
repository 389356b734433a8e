#pragma once

#include <string>
#include <vector>

namespace bsid {

enum class VariableKind { Categorical, Ordinal, Binary, Numeric };

const char* to_string(VariableKind kind);
VariableKind variable_kind_from_string(const std::string& s);

// One dataset variable: a named column with a kind and, for non-numeric
// kinds, an ordered category vocabulary.
struct VariableSpec {
    std::string name;
    VariableKind kind = VariableKind::Categorical;
    std::vector<std::string> categories;

    bool is_numeric() const { return kind == VariableKind::Numeric; }
    // Index of a category name, or -1.
    int category_index(const std::string& value) const;
};

// Ordered feature variables plus a binary target. The canonical BSNG schema
// ships as a file (see data/bsng_schema.txt); toy schemas are fine for tests.
struct Schema {
    std::vector<VariableSpec> variables;
    VariableSpec target;

    std::size_t variable_count() const { return variables.size(); }
    int variable_index(const std::string& name) const;
    void validate() const;  // throws SchemaError on structural violations
};

// Schema file grammar: an INI-style text format.
//   [variable]
//   name = Month
//   kind = categorical            # categorical | ordinal | binary | numeric
//   categories = January | February | ...
//   [target]
//   name = Black Spot
//   categories = Non-blackspot | Blackspot   # negative | positive
// Lines starting with '#' are comments. Category lists use '|' separators.
Schema load_schema(const std::string& path);
Schema parse_schema(const std::string& text);
std::string schema_to_text(const Schema& schema);

}  // namespace bsid
