// Drives the installed CLI binary as a subprocess: exit codes, file outputs,
// stdout report mode.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("pspca_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(PSPCA_CLI_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("") == 2);
  CHECK(run("pca") == 2);                      // missing --input
  CHECK(run("frobnicate --input x.csv") == 2); // unknown subcommand
  TempDir tmp;
  write_file(tmp.file("x.csv"), "a,b\n1,2\n3,4\n5,6\n");
  CHECK(run("spca --input " + tmp.file("x.csv") + " --k 1 --method nonsense") == 2);
  CHECK(run("bench --input " + tmp.file("x.csv") + " --methods ,") == 2);
  CHECK(run("spca --input " + tmp.file("x.csv") + " --k 1 --alpha 7") == 2);
}

TEST_CASE("computational and data errors exit with 1") {
  TempDir tmp;
  CHECK(run("pca --input " + tmp.file("missing.csv")) == 1);
  write_file(tmp.file("bad.csv"), "a,b\n1,NA\n");
  CHECK(run("pca --input " + tmp.file("bad.csv")) == 1);
}

TEST_CASE("pca and spca write reports") {
  TempDir tmp;
  const std::string csv = tmp.file("x.csv");
  write_file(csv,
             "a,b,c\n1,2,0.5\n2,4.1,0.0\n3,5.9,-0.5\n4,8.2,0.25\n5,9.9,-0.25\n");
  const std::string report = tmp.file("report.json");
  CHECK(run("pca --input " + csv + " --k 2 --out " + report) == 0);
  const std::string doc = read_file(report);
  CHECK(doc.find("\"command\":\"pca\"") != std::string::npos);
  CHECK(doc.find("\"column_names\":[\"a\",\"b\",\"c\"]") != std::string::npos);

  CHECK(run("spca --input " + csv + " --k 1 --alpha 0.9 --method forward --out " +
            report) == 0);
  CHECK(read_file(report).find("\"command\":\"spca\"") != std::string::npos);

  // stdout mode: the report is the entire stdout payload
  const std::string stdout_file = tmp.file("stdout.json");
  const std::string cmd = std::string(PSPCA_CLI_BIN) + " pca --input " + csv +
                          " --k 1 > " + stdout_file + " 2>/dev/null";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  const std::string piped = read_file(stdout_file);
  REQUIRE(!piped.empty());
  CHECK(piped[0] == '{');
  CHECK(piped.find("\"command\":\"pca\"") != std::string::npos);
}

TEST_CASE("simulate writes data and truth, then spca recovers") {
  TempDir tmp;
  const std::string csv = tmp.file("sim.csv");
  const std::string truth = tmp.file("truth.json");
  CHECK(run("simulate --n 200 --p 20 --spikes 10,5 --support-size 4 --sigma 0.1 "
            "--seed 7 --out " + csv + " --truth " + truth) == 0);
  CHECK(read_file(truth).find("\"schema\":\"pspca-truth/1\"") != std::string::npos);

  const std::string report = tmp.file("fit.json");
  CHECK(run("spca --input " + csv + " --k 2 --alpha 0.95 --method forward --out " +
            report) == 0);
  const std::string doc = read_file(report);
  CHECK(doc.find("\"support\":[0,1,2,3]") != std::string::npos);
  CHECK(doc.find("\"support\":[4,5,6,7]") != std::string::npos);

  // bad simulate flags are usage errors
  CHECK(run("simulate --n 200 --p 5 --spikes 10,5 --support-size 4 --out " +
            csv) == 1);  // supports do not fit: library-level bad_support
  CHECK(run("simulate --n 200 --p 20 --spikes nope --support-size 4 --out " +
            csv) == 2);
}

TEST_CASE("bench writes the report and the flat table") {
  TempDir tmp;
  const std::string spec = tmp.file("spec.json");
  write_file(spec,
             R"({"n":150,"p":12,"spikes":[8.0,4.0],"support_size":3,"sigma":0.2,"seed":9})");
  const std::string report = tmp.file("bench.json");
  const std::string table = tmp.file("bench.csv");
  CHECK(run("bench --simulate " + spec +
            " --methods forward,threshold,exhaustive --k 2 --alpha 0.9 --out " +
            report + " --csv " + table) == 0);
  CHECK(read_file(report).find("\"reference_cardinalities\"") != std::string::npos);
  const std::string flat = read_file(table);
  CHECK(flat.find("method,component") == 0);
  CHECK(flat.find("forward,0,") != std::string::npos);
  CHECK(flat.find("threshold,0,") != std::string::npos);

  // default table path derives from --out
  CHECK(run("bench --simulate " + spec + " --methods forward --k 1 --out " +
            report) == 0);
  CHECK(read_file(tmp.file("bench.csv")).find("method,component") == 0);

  CHECK(run("bench --methods forward --k 1 --out " + report) == 2);  // no input
}
