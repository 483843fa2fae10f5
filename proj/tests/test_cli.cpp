#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const char* kCli = SONOTHERM_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
    const std::string cmd = std::string(kCli) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

} // namespace

TEST_CASE("usage errors exit 1") {
    CHECK(run("") == 1);
    CHECK(run("fieldd") == 1);
    CHECK(run("aggregate") == 1); // --records required
}

TEST_CASE("field command writes CSV and greymap") {
    TempDir dir("sonotherm_cli_field");
    // small array to keep the run quick
    write_file(dir.path / "cfg.json",
               R"({"array": {"rows": 3, "cols": 3, "corner_trim": 0},
                   "grid": {"nu": 11, "nv": 11}})");
    CHECK(run("field --config " + (dir.path / "cfg.json").string() + " --out " +
              dir.path.string()) == 0);
    CHECK(fs::exists(dir.path / "field.csv"));
    CHECK(fs::exists(dir.path / "field.pgm"));
    CHECK(slurp(dir.path / "field.pgm").substr(0, 2) == "P5");
    // plane height recorded in the metadata
    CHECK(slurp(dir.path / "field.csv").find(",0.2\n") != std::string::npos);
}

TEST_CASE("model errors exit 2") {
    TempDir dir("sonotherm_cli_err");
    write_file(dir.path / "bad.json", R"({"array": {"pitch_m": -1.0}})");
    CHECK(run("field --config " + (dir.path / "bad.json").string() + " --out " +
              dir.path.string()) == 2);
    write_file(dir.path / "unknown.json", R"({"no_such_key": 1})");
    CHECK(run("field --config " + (dir.path / "unknown.json").string() + " --out " +
              dir.path.string()) == 2);
}

TEST_CASE("protocol output is byte-identical for a fixed seed") {
    TempDir dir("sonotherm_cli_proto");
    const std::string base = "protocol --out ";
    CHECK(run(base + (dir.path / "a").string() + " --seed 7") == 0);
    CHECK(run(base + (dir.path / "b").string() + " --seed 7") == 0);
    CHECK(run(base + (dir.path / "c").string() + " --seed 8") == 0);
    const std::string a = slurp(dir.path / "a" / "trial_plan.csv");
    CHECK(!a.empty());
    CHECK(a == slurp(dir.path / "b" / "trial_plan.csv"));
    CHECK(a != slurp(dir.path / "c" / "trial_plan.csv"));
}

TEST_CASE("aggregate on an empty records file exits 2") {
    TempDir dir("sonotherm_cli_agg");
    write_file(dir.path / "records.csv", "participant,trial_index,pattern,response\n");
    CHECK(run("aggregate --records " + (dir.path / "records.csv").string() + " --out " +
              dir.path.string()) == 2);
}

TEST_CASE("aggregate produces the confusion table") {
    TempDir dir("sonotherm_cli_agg2");
    std::ostringstream rec;
    rec << "participant,trial_index,pattern,response\n";
    int idx = 0;
    for (int i = 0; i < 10; ++i)
        rec << "0," << idx++ << ",SP,HeatOnly\n";
    for (int i = 0; i < 10; ++i)
        rec << "0," << idx++ << ",AM,VibrationOnly\n";
    for (int i = 0; i < 10; ++i)
        rec << "0," << idx++ << ",None,None\n";
    write_file(dir.path / "records.csv", rec.str());
    CHECK(run("aggregate --records " + (dir.path / "records.csv").string() + " --out " +
              dir.path.string()) == 0);
    const std::string csv = slurp(dir.path / "confusion.csv");
    CHECK(csv.find("SP,100,0,0,0") != std::string::npos);
    CHECK(csv.find("None,0,0,0,100") != std::string::npos);
}

TEST_CASE("thermal command is idempotent on outputs") {
    TempDir dir("sonotherm_cli_thermal");
    write_file(dir.path / "cfg.json",
               R"({"array": {"rows": 4, "cols": 4, "corner_trim": 0, "ref_amplitude_pa": 40.0},
                   "duration_s": 1.0, "sample_period_s": 0.05,
                   "grid": {"nu": 21, "nv": 21}})");
    const std::string cmd = "thermal --config " + (dir.path / "cfg.json").string() + " --out ";
    CHECK(run(cmd + (dir.path / "a").string()) == 0);
    CHECK(run(cmd + (dir.path / "b").string()) == 0);
    const std::string a = slurp(dir.path / "a" / "probes.csv");
    CHECK(!a.empty());
    CHECK(a == slurp(dir.path / "b" / "probes.csv"));
}
