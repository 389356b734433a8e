#include <doctest.h>

#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef BSID_TOOL_PATH
#define BSID_TOOL_PATH "bsid"
#endif
#ifndef BSID_DATA_DIR
#define BSID_DATA_DIR "data"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
    const std::string command = std::string(BSID_TOOL_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buffer{};
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::fgets(buffer.data(), buffer.size(), pipe)) result.output += buffer.data();
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct ScratchDir {
    fs::path path;
    ScratchDir() {
        path = fs::temp_directory_path() / ("bsid_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
    std::string str(const char* name) const { return (path / name).string(); }
};

const std::string kSchema = std::string(BSID_DATA_DIR) + "/bsng_schema.txt";
const std::string kDataset = std::string(BSID_DATA_DIR) + "/bsng_synthetic.csv";

// A reduced dataset shared by the slower commands.
struct SmallData {
    ScratchDir dir;
    std::string csv;
    SmallData() : csv(dir.str("small.csv")) {
        const auto r = run("synth --rows 220 --positives 36 --locations 100 --seed 5 --out-csv " +
                           csv);
        REQUIRE(r.exit_code == 0);
    }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate reports the canonical totals with exit zero") {
    const auto r = run("validate --dataset " + kDataset + " --schema " + kSchema);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("1811 rows, 142 positive") != std::string::npos);
}

TEST_CASE("validate flags a corrupted row with its index") {
    ScratchDir dir;
    std::string csv = slurp(kDataset);
    // Break the Month field of data row 2 (0-based).
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) pos = csv.find('\n', pos) + 1;
    const std::size_t comma1 = csv.find(',', pos);
    const std::size_t comma2 = csv.find(',', comma1 + 1);
    csv.replace(comma1 + 1, comma2 - comma1 - 1, "Juny");
    const std::string bad = dir.str("bad.csv");
    std::ofstream(bad) << csv;

    const auto r = run("validate --dataset " + bad + " --schema " + kSchema);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("row 2") != std::string::npos);
    CHECK(r.output.find("Juny") != std::string::npos);
}

TEST_CASE("missing files exit with the usage code") {
    const auto r = run("validate --dataset /no/such/file.csv --schema " + kSchema);
    CHECK(r.exit_code == 2);
    const auto r2 = run("validate --dataset " + kDataset + " --schema /no/such/schema.txt");
    CHECK(r2.exit_code == 2);
}

TEST_CASE("profile prints the published modes and fails on empty data") {
    const auto r = run("profile --dataset " + kDataset + " --schema " + kSchema);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("mode=July") != std::string::npos);
    CHECK(r.output.find("mode=Monday") != std::string::npos);

    ScratchDir dir;
    const std::string empty = dir.str("empty.csv");
    {
        std::string header = slurp(kDataset);
        std::ofstream(empty) << header.substr(0, header.find('\n') + 1);
    }
    const auto re = run("profile --dataset " + empty + " --schema " + kSchema);
    CHECK(re.exit_code == 1);
}

TEST_CASE("profile output ordering follows the schema") {
    const auto r = run("profile --dataset " + kDataset + " --schema " + kSchema);
    const auto year = r.output.find("Year");
    const auto month = r.output.find("Month");
    const auto age = r.output.find("Driver's age");
    CHECK(year < month);
    CHECK(month < age);
}

TEST_CASE("audit accounts the one-hot width at exactly 687") {
    const auto r = run("audit --schema " + kSchema);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("687 (expected 687)") != std::string::npos);
}

TEST_CASE("encode exports a matrix of the audited width") {
    SmallData small;
    const std::string out = small.dir.str("encoded.csv");
    const auto r = run("encode --dataset " + small.csv + " --schema " + kSchema +
                       " --mode onehot --matrix-out " + out);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("220x687") != std::string::npos);
}

TEST_CASE("benchmark subsets produce the requested rows and identical bytes per seed") {
    SmallData small;
    const std::string base = " --dataset " + small.csv + " --schema " + kSchema + " --folds 4" +
                             " --set trees.count=6 --set nn.epochs=2 --set mixup.pairs=40" +
                             " --set mixup.copies=2 --skip-proposed";
    const std::string out1 = small.dir.str("run1");
    const std::string out2 = small.dir.str("run2");
    const auto r1 = run("benchmark --seed 7 --out " + out1 +
                        " --families naive_bayes,decision_tree --variants onehot" + base);
    CHECK(r1.exit_code == 0);
    const auto r2 = run("benchmark --seed 7 --out " + out2 +
                        " --families naive_bayes,decision_tree --variants onehot" + base);
    CHECK(r2.exit_code == 0);

    CHECK(slurp(out1 + "/benchmark.json") == slurp(out2 + "/benchmark.json"));
    CHECK(slurp(out1 + "/benchmark.txt") == slurp(out2 + "/benchmark.txt"));
    CHECK(slurp(out1 + "/benchmark.csv") == slurp(out2 + "/benchmark.csv"));

    // Two families, one variant: exactly two data rows in the CSV.
    std::size_t lines = 0;
    const std::string csv = slurp(out1 + "/benchmark.csv");
    for (char c : csv) lines += c == '\n' ? 1 : 0;
    CHECK(lines == 3);  // header + 2 cells
}

TEST_CASE("benchmark is byte-identical across worker counts") {
    SmallData small;
    const std::string base = " --dataset " + small.csv + " --schema " + kSchema + " --folds 4" +
                             " --set trees.count=6 --set nn.epochs=2 --set mixup.pairs=40" +
                             " --set mixup.copies=2 --skip-proposed --seed 11" +
                             " --families naive_bayes,decision_tree,knn --variants original,onehot";
    const std::string out1 = small.dir.str("w1");
    const std::string out8 = small.dir.str("w8");
    CHECK(run("benchmark --workers 1 --out " + out1 + base).exit_code == 0);
    CHECK(run("benchmark --workers 8 --out " + out8 + base).exit_code == 0);
    CHECK(slurp(out1 + "/benchmark.json") == slurp(out8 + "/benchmark.json"));
    CHECK(slurp(out1 + "/benchmark.csv") == slurp(out8 + "/benchmark.csv"));
    CHECK(slurp(out1 + "/benchmark.txt") == slurp(out8 + "/benchmark.txt"));
}

TEST_CASE("commands leave their input files untouched") {
    SmallData small;
    const std::string before = slurp(small.csv);
    (void)run("profile --dataset " + small.csv + " --schema " + kSchema);
    (void)run("evaluate --family knn --variant original --seed 3 --folds 4 --out " +
              small.dir.str("eval") + " --dataset " + small.csv + " --schema " + kSchema);
    CHECK(slurp(small.csv) == before);
    CHECK(slurp(kSchema) == slurp(kSchema));
}

TEST_CASE("train then predict appends score and label columns deterministically") {
    SmallData small;
    const std::string artifact = small.dir.str("model.bsid");
    const std::string train_args =
        "train --dataset " + small.csv + " --schema " + kSchema + " --seed 5 --artifact " +
        artifact + " --set nn.epochs=3 --set mixup.pairs=40 --set mixup.copies=2";
    CHECK(run(train_args).exit_code == 0);

    const std::string scored1 = small.dir.str("scored1.csv");
    const std::string scored2 = small.dir.str("scored2.csv");
    const std::string predict_args = "predict --dataset " + small.csv + " --schema " + kSchema +
                                     " --artifact " + artifact + " --scored-out ";
    CHECK(run(predict_args + scored1).exit_code == 0);
    CHECK(run(predict_args + scored2).exit_code == 0);
    CHECK(slurp(scored1) == slurp(scored2));

    const std::string content = slurp(scored1);
    const std::string header = content.substr(0, content.find('\n'));
    CHECK(header.find(",score,label") != std::string::npos);

    // Score values are probabilities strictly inside (0,1).
    std::stringstream ss(content);
    std::string line;
    std::getline(ss, line);
    std::size_t rows = 0;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        const auto last = line.rfind(',');
        const auto second_last = line.rfind(',', last - 1);
        const double score = std::stod(line.substr(second_last + 1, last - second_last - 1));
        CHECK(score > 0.0);
        CHECK(score < 1.0);
        ++rows;
    }
    CHECK(rows == 220);
}

TEST_CASE("predict with a wrong-schema csv exits with the data code") {
    SmallData small;
    const std::string artifact = small.dir.str("model.bsid");
    CHECK(run("train --dataset " + small.csv + " --schema " + kSchema +
              " --seed 5 --artifact " + artifact +
              " --set nn.epochs=2 --set mixup.pairs=20 --set mixup.copies=2")
              .exit_code == 0);

    // A csv that drops a required column fails schema resolution.
    const std::string content = slurp(small.csv);
    const std::string renamed = small.dir.str("renamed.csv");
    std::string edited = content;
    const auto pos = edited.find("Weekday");
    edited.replace(pos, 7, "Wochtag");
    std::ofstream(renamed) << edited;
    const auto r = run("predict --dataset " + renamed + " --schema " + kSchema + " --artifact " +
                       artifact + " --scored-out " + small.dir.str("x.csv"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("Weekday") != std::string::npos);
}

TEST_CASE("tune selects the singleton grid point and reports the lattice") {
    SmallData small;
    const std::string grid = small.dir.str("grid.json");
    std::ofstream(grid) << R"({"knn.k": [3]})";
    const std::string out = small.dir.str("tune_out");
    const auto r = run("tune --family knn --variant original --seed 9 --folds 4 --grid " + grid +
                       " --dataset " + small.csv + " --schema " + kSchema + " --out " + out);
    CHECK(r.exit_code == 0);
    const std::string report = slurp(out + "/tune.json");
    CHECK(report.find("\"best_index\": 0") != std::string::npos);
    CHECK(report.find("f1_mean") != std::string::npos);

    std::ofstream(grid) << "{}";
    const auto re = run("tune --family knn --variant original --seed 9 --grid " + grid +
                        " --dataset " + small.csv + " --schema " + kSchema);
    CHECK(re.exit_code == 2);
}

TEST_CASE("inspect summarizes a saved artifact") {
    SmallData small;
    const std::string artifact = small.dir.str("model.bsid");
    CHECK(run("train --dataset " + small.csv + " --schema " + kSchema +
              " --seed 5 --artifact " + artifact +
              " --set nn.epochs=2 --set mixup.pairs=20 --set mixup.copies=2")
              .exit_code == 0);
    const auto r = run("inspect --artifact " + artifact);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("one-hot width:  687") != std::string::npos);
    CHECK(r.output.find("latent width:   32") != std::string::npos);
}

}  // TEST_SUITE
