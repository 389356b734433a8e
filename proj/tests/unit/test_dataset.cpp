#include <doctest.h>

#include <set>

#include "bsid/dataset.hpp"
#include "bsid/errors.hpp"
#include "bsid/folds.hpp"
#include "bsid/schema.hpp"

using namespace bsid;

namespace {

const char* kToySchema = R"(# toy weather schema
[variable]
name = Condition
kind = categorical
categories = Sunny | Cloudy | Rainy | Snowy

[variable]
name = Month
kind = categorical
categories = June | July | August

[variable]
name = Temperature
kind = numeric

[variable]
name = Windy
kind = binary
categories = No | Yes

[target]
name = Incident
categories = None | Crash
)";

const char* kToyCsv =
    "Condition,Month,Temperature,Windy,Incident\n"
    "Sunny,July,21.5,No,None\n"
    "Cloudy,June,14.25,Yes,Crash\n"
    "Sunny,August,30,No,None\n"
    "Rainy,July,12,Yes,Crash\n"
    "Snowy,July,-3.5,Yes,None\n";

}  // namespace

TEST_SUITE("dataset") {

TEST_CASE("schema parses kinds, categories and target") {
    const Schema s = parse_schema(kToySchema);
    CHECK(s.variable_count() == 4);
    CHECK(s.variables[0].kind == VariableKind::Categorical);
    CHECK(s.variables[0].categories.size() == 4);
    CHECK(s.variables[2].kind == VariableKind::Numeric);
    CHECK(s.variables[3].kind == VariableKind::Binary);
    CHECK(s.target.name == "Incident");
    CHECK(s.target.categories[1] == "Crash");
}

TEST_CASE("schema round trips through text") {
    const Schema s = parse_schema(kToySchema);
    const Schema again = parse_schema(schema_to_text(s));
    CHECK(again.variable_count() == s.variable_count());
    for (std::size_t i = 0; i < s.variable_count(); ++i) {
        CHECK(again.variables[i].name == s.variables[i].name);
        CHECK(again.variables[i].kind == s.variables[i].kind);
        CHECK(again.variables[i].categories == s.variables[i].categories);
    }
}

TEST_CASE("schema structural validation") {
    CHECK_THROWS_AS(parse_schema("[variable]\nname = A\nkind = numeric\n"), SchemaError);
    CHECK_THROWS_AS(parse_schema(R"([variable]
name = A
kind = binary
categories = x | y | z

[target]
name = T
categories = n | p
)"),
                    SchemaError);
    CHECK_THROWS_AS(parse_schema(R"([variable]
name = A
kind = categorical
categories = x | y

[variable]
name = A
kind = numeric

[target]
name = T
categories = n | p
)"),
                    SchemaError);
}

TEST_CASE("csv loads and validates against the schema") {
    const Schema s = parse_schema(kToySchema);
    const Dataset ds = parse_csv(kToyCsv, s);
    CHECK(ds.row_count() == 5);
    CHECK(ds.positive_count() == 2);
    CHECK(ds.category_at(0, 0) == "Sunny");
    CHECK(ds.values(1, 2) == 14.25);
    CHECK(ds.labels == std::vector<int>{0, 1, 0, 1, 0});
}

TEST_CASE("csv errors carry location detail") {
    const Schema s = parse_schema(kToySchema);

    SUBCASE("unknown category names row and value") {
        const std::string bad =
            "Condition,Month,Temperature,Windy,Incident\n"
            "Sunny,July,21.5,No,None\n"
            "Sunny,Juny,10,No,None\n";
        try {
            parse_csv(bad, s);
            FAIL("expected RowError");
        } catch (const RowError& e) {
            CHECK(e.row_index == 1);
            CHECK(std::string(e.what()).find("Juny") != std::string::npos);
        }
    }
    SUBCASE("unparseable numeric") {
        const std::string bad =
            "Condition,Month,Temperature,Windy,Incident\n"
            "Sunny,July,warm,No,None\n";
        CHECK_THROWS_AS(parse_csv(bad, s), RowError);
    }
    SUBCASE("missing value is rejected") {
        const std::string bad =
            "Condition,Month,Temperature,Windy,Incident\n"
            "Sunny,July,,No,None\n";
        CHECK_THROWS_AS(parse_csv(bad, s), RowError);
    }
    SUBCASE("missing column is a schema error naming it") {
        const std::string bad = "Condition,Month,Windy,Incident\nSunny,July,No,None\n";
        try {
            parse_csv(bad, s);
            FAIL("expected SchemaError");
        } catch (const SchemaError& e) {
            CHECK(std::string(e.what()).find("Temperature") != std::string::npos);
        }
    }
    SUBCASE("header-only file yields an empty dataset") {
        const Dataset ds = parse_csv("Condition,Month,Temperature,Windy,Incident\n", s);
        CHECK(ds.row_count() == 0);
    }
}

TEST_CASE("quoted fields and extra columns are handled") {
    Schema s = parse_schema(kToySchema);
    s.variables[0].categories.push_back("Sunny, with fog");
    const std::string csv =
        "Extra,Condition,Month,Temperature,Windy,Incident\n"
        "x,\"Sunny, with fog\",July,1.5,No,\"None\"\n";
    const Dataset ds = parse_csv(csv, s);
    CHECK(ds.row_count() == 1);
    CHECK(ds.category_at(0, 0) == "Sunny, with fog");
}

TEST_CASE("profile reports modes, means and prevalence") {
    const Schema s = parse_schema(kToySchema);
    const Dataset ds = parse_csv(kToyCsv, s);
    const auto prof = profile(ds);
    CHECK(prof.rows == 5);
    CHECK(prof.positives == 2);
    CHECK(prof.prevalence == doctest::Approx(0.4));
    CHECK(prof.variables[0].mode == "Sunny");
    CHECK(prof.variables[1].mode == "July");
    CHECK(prof.variables[2].mean == doctest::Approx((21.5 + 14.25 + 30 + 12 - 3.5) / 5.0));
    CHECK(prof.variables[3].mode == "Yes");
}

TEST_CASE("profile of a single row uses that row") {
    const Schema s = parse_schema(kToySchema);
    const Dataset ds = parse_csv(
        "Condition,Month,Temperature,Windy,Incident\nRainy,June,7.5,Yes,Crash\n", s);
    const auto prof = profile(ds);
    CHECK(prof.variables[0].mode == "Rainy");
    CHECK(prof.variables[2].mean == 7.5);
}

TEST_CASE("profile round trips through csv serialization") {
    const Schema s = parse_schema(kToySchema);
    const Dataset ds = parse_csv(kToyCsv, s);
    const Dataset reloaded = parse_csv(dataset_to_csv(ds), s);
    CHECK(reloaded.values == ds.values);
    CHECK(reloaded.labels == ds.labels);
    const auto p1 = profile(ds);
    const auto p2 = profile(reloaded);
    for (std::size_t i = 0; i < p1.variables.size(); ++i) {
        CHECK(p1.variables[i].mode == p2.variables[i].mode);
        CHECK(p1.variables[i].mean == p2.variables[i].mean);
    }
}

TEST_CASE("profile of empty dataset raises") {
    const Schema s = parse_schema(kToySchema);
    const Dataset ds = parse_csv("Condition,Month,Temperature,Windy,Incident\n", s);
    CHECK_THROWS_AS(profile(ds), DataError);
}

TEST_CASE("stratified folds balance positives") {
    std::vector<int> labels(1811, 0);
    for (int i = 0; i < 142; ++i) labels[static_cast<std::size_t>(i * 12)] = 1;
    const auto plan = stratified_kfold(labels, 5, Rng(3));

    std::vector<int> positives(5, 0);
    std::vector<int> totals(5, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        totals[static_cast<std::size_t>(plan.fold_assignment[i])]++;
        if (labels[i]) positives[static_cast<std::size_t>(plan.fold_assignment[i])]++;
    }
    int total = 0;
    for (int f = 0; f < 5; ++f) {
        CHECK((positives[f] == 28 || positives[f] == 29));
        total += totals[f];
    }
    CHECK(total == 1811);
}

TEST_CASE("balanced two-fold split is exactly half and half") {
    std::vector<int> labels{1, 0, 1, 0, 1, 0, 1, 0};
    const auto plan = stratified_kfold(labels, 2, Rng(9));
    for (int f = 0; f < 2; ++f) {
        int size = 0;
        int pos = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (plan.fold_assignment[i] == f) {
                ++size;
                pos += labels[i];
            }
        }
        CHECK(size == 4);
        CHECK(pos == 2);
    }
}

TEST_CASE("fold assignment is deterministic under the seed") {
    std::vector<int> labels(200, 0);
    for (int i = 0; i < 30; ++i) labels[static_cast<std::size_t>(i * 6)] = 1;
    const auto a = stratified_kfold(labels, 5, Rng(42));
    const auto b = stratified_kfold(labels, 5, Rng(42));
    CHECK(a.fold_assignment == b.fold_assignment);
    const auto c = stratified_kfold(labels, 5, Rng(43));
    CHECK(a.fold_assignment != c.fold_assignment);
}

TEST_CASE("folds partition the index set for random label vectors") {
    Rng rng(1234);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 20 + rng.below(300);
        const std::size_t k = 2 + rng.below(5);
        std::vector<int> labels(n, 0);
        for (std::size_t i = 0; i < n; ++i) labels[i] = rng.below(2) ? 1 : 0;
        std::size_t pos = 0;
        for (int y : labels) pos += static_cast<std::size_t>(y);
        if (pos < k || n - pos < k) continue;

        const auto plan = stratified_kfold(labels, k, rng.child(trial));
        std::set<std::size_t> seen;
        for (std::size_t f = 0; f < k; ++f) {
            for (const auto idx : plan.validation_indices(static_cast<int>(f))) {
                CHECK(seen.insert(idx).second);
            }
        }
        CHECK(seen.size() == n);
    }
}

TEST_CASE("too few class members raises a stratification error") {
    std::vector<int> labels{1, 0, 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(stratified_kfold(labels, 2, Rng(1)), DataError);
    CHECK_THROWS_AS(stratified_kfold(labels, 1, Rng(1)), ParamError);
}

}  // TEST_SUITE
