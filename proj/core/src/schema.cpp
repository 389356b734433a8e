#include "bsid/schema.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "bsid/errors.hpp"

namespace bsid {

const char* to_string(VariableKind kind) {
    switch (kind) {
        case VariableKind::Categorical: return "categorical";
        case VariableKind::Ordinal: return "ordinal";
        case VariableKind::Binary: return "binary";
        case VariableKind::Numeric: return "numeric";
    }
    return "unknown";
}

VariableKind variable_kind_from_string(const std::string& s) {
    if (s == "categorical") return VariableKind::Categorical;
    if (s == "ordinal") return VariableKind::Ordinal;
    if (s == "binary") return VariableKind::Binary;
    if (s == "numeric") return VariableKind::Numeric;
    throw SchemaError("unknown variable kind: '" + s + "'");
}

int VariableSpec::category_index(const std::string& value) const {
    for (std::size_t i = 0; i < categories.size(); ++i) {
        if (categories[i] == value) return static_cast<int>(i);
    }
    return -1;
}

int Schema::variable_index(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

void Schema::validate() const {
    std::unordered_set<std::string> names;
    for (const auto& var : variables) {
        if (var.name.empty()) throw SchemaError("variable with empty name");
        if (!names.insert(var.name).second) {
            throw SchemaError("duplicate variable name: '" + var.name + "'");
        }
        if (var.kind == VariableKind::Numeric) {
            if (!var.categories.empty()) {
                throw SchemaError("numeric variable '" + var.name + "' must not list categories");
            }
        } else if (var.categories.size() < 2) {
            throw SchemaError("variable '" + var.name + "' needs at least 2 categories");
        }
        if (var.kind == VariableKind::Binary && var.categories.size() != 2) {
            throw SchemaError("binary variable '" + var.name + "' must have exactly 2 categories");
        }
    }
    if (target.name.empty()) throw SchemaError("schema has no target");
    if (names.count(target.name)) {
        throw SchemaError("target name collides with a variable: '" + target.name + "'");
    }
    if (target.kind != VariableKind::Binary || target.categories.size() != 2) {
        throw SchemaError("target must be binary with 2 categories");
    }
    if (variables.empty()) throw SchemaError("schema lists no variables");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_categories(const std::string& s) {
    std::vector<std::string> out;
    std::string current;
    std::stringstream ss(s);
    while (std::getline(ss, current, '|')) {
        const std::string t = trim(current);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

}  // namespace

Schema parse_schema(const std::string& text) {
    Schema schema;
    VariableSpec current;
    bool in_variable = false;
    bool in_target = false;
    bool kind_seen = false;

    auto flush = [&]() {
        if (in_variable) {
            if (!kind_seen) throw SchemaError("variable '" + current.name + "' is missing a kind");
            schema.variables.push_back(current);
        } else if (in_target) {
            current.kind = VariableKind::Binary;
            schema.target = current;
        }
        current = VariableSpec{};
        in_variable = in_target = kind_seen = false;
    };

    std::stringstream ss(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t == "[variable]") {
            flush();
            in_variable = true;
            continue;
        }
        if (t == "[target]") {
            flush();
            in_target = true;
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw SchemaError("schema line " + std::to_string(line_no) + ": expected key = value");
        }
        if (!in_variable && !in_target) {
            throw SchemaError("schema line " + std::to_string(line_no) +
                              ": key outside a [variable]/[target] section");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key == "name") {
            current.name = value;
        } else if (key == "kind") {
            current.kind = variable_kind_from_string(value);
            kind_seen = true;
        } else if (key == "categories") {
            current.categories = split_categories(value);
        } else {
            throw SchemaError("schema line " + std::to_string(line_no) + ": unknown key '" + key +
                              "'");
        }
    }
    flush();
    schema.validate();
    return schema;
}

Schema load_schema(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open schema file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_schema(buffer.str());
}

std::string schema_to_text(const Schema& schema) {
    std::ostringstream out;
    auto write_var = [&](const VariableSpec& var, bool is_target) {
        out << (is_target ? "[target]\n" : "[variable]\n");
        out << "name = " << var.name << "\n";
        if (!is_target) out << "kind = " << to_string(var.kind) << "\n";
        if (!var.categories.empty()) {
            out << "categories = ";
            for (std::size_t i = 0; i < var.categories.size(); ++i) {
                if (i) out << " | ";
                out << var.categories[i];
            }
            out << "\n";
        }
        out << "\n";
    };
    for (const auto& var : schema.variables) write_var(var, false);
    write_var(schema.target, true);
    return out.str();
}

}  // namespace bsid
