#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <unistd.h>

#include "afrel/cli.hpp"
#include "afrel/io.hpp"
#include "afrel/suites.hpp"
#include "support.hpp"

using namespace afrel;
using cli::Status;
using Json = nlohmann::json;

namespace {

namespace fs = std::filesystem;

// Scratch directory holding the JSON inputs, one per process.
class Files {
 public:
  Files() : dir_(fs::temp_directory_path() / ("afrel_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
    put("full2.json", {{"d", 2}, {"matrix", {{1, 1}, {1, 1}}}});
    put("golden.json", {{"d", 2}, {"matrix", {{1, 1}, {1, 0}}}});
    put("swap.json", {{"d", 2}, {"matrix", {{0, 1}, {1, 0}}}});
    put("const0.json", {{"constant", 0.0}});
    put("const1.json", {{"constant", 1.0}});
    put("sym.json", {{"range", 1}, {"values", {{"1", 1.0}, {"2", 5.0}}}});
    put("dead.json", {{"levels", 2},
                      {"vertices", {{0}, {0, 1}, {0}}},
                      {"edges", {{{{"id", 0}, {"source", 0}, {"range", 0}}, {{"id", 1}, {"source", 0}, {"range", 1}}},
                                 {{{"id", 0}, {"source", 0}, {"range", 0}}}}}});
    put("chain.json", {{"sets", {4, 2}}, {"maps", {{0, 0, 1, 1}}}});
    put("chain_data.json", {{"sets", {4, 2}}, {"maps", {{0, 0, 1, 1}}}, {"bprime", {{1, 1, 2, 2}}}});
    put("stationary.json", io::to_json(stationary_from_matrix(test::all_ones(), 4)));
  }
  ~Files() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  std::string operator()(const std::string& name) const { return (dir_ / name).string(); }

  void put(const std::string& name, const Json& j) const { std::ofstream(dir_ / name) << j.dump(); }

 private:
  fs::path dir_;
};

const Files& files() {
  static const Files f;
  return f;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("kms on the full 2-shift") {
    const auto r = cli::run({"kms", "--sft", files()("full2.json"), "--potential", files()("const1.json")});
    CHECK(r.status == Status::Ok);
    CHECK(r.exit_code() == 0);
    CHECK(r.render() == "{\"beta\":0.6931471805599453}\n");
  }

  TEST_CASE("pressure on the full 2-shift") {
    const auto r = cli::run({"pressure", "--sft", files()("full2.json"), "--potential", files()("const0.json")});
    CHECK(r.render() == "{\"pressure\":0.6931471805599453}\n");
  }

  TEST_CASE("dead vertex fails validation with exit 1") {
    const auto r = cli::run({"validate", files()("dead.json")});
    CHECK(r.exit_code() == 1);
    CHECK_FALSE(r.payload["ok"].get<bool>());
    CHECK_FALSE(r.payload["violations"].empty());
  }

  TEST_CASE("refusals and unknown input") {
    const auto swap = cli::run({"harmonic", "--matrix", files()("swap.json")});
    CHECK(swap.status == Status::Refused);
    CHECK(swap.exit_code() == 1);
    CHECK_FALSE(swap.diagnostics.empty());
    const auto kms0 = cli::run({"kms", "--sft", files()("full2.json"), "--potential", files()("const0.json")});
    CHECK(kms0.status == Status::Refused);
    CHECK(cli::run({"bogus"}).status == Status::InvalidInput);
    CHECK(cli::run({"kms", "--nonsense"}).status == Status::InvalidInput);
    CHECK(cli::run({}).status == Status::InvalidInput);
    CHECK(cli::run({"validate", files()("missing.json")}).status == Status::InvalidInput);
  }

  TEST_CASE("exit codes follow the status") {
    CHECK(cli::CommandResult{Status::Ok, {}, {}}.exit_code() == 0);
    CHECK(cli::CommandResult{Status::InvalidInput, {}, {}}.exit_code() == 1);
    CHECK(cli::CommandResult{Status::Refused, {}, {}}.exit_code() == 1);
    CHECK(cli::CommandResult{Status::NoConvergence, {}, {}}.exit_code() == 2);
    CHECK(cli::CommandResult{Status::NoConvergence, {}, {}}.render().empty());
  }

  TEST_CASE("cphi of a one-symbol difference") {
    const auto r = cli::run(
        {"cphi", "--sft", files()("full2.json"), "--potential", files()("sym.json"), "--a", "12", "--b", "2", "--stub", "1"});
    REQUIRE(r.status == Status::Ok);
    CHECK(r.payload["c_phi"].get<double>() == doctest::Approx(1.0));
    CHECK(r.payload["lag"].get<int>() == 1);
  }

  TEST_CASE("harmonic and measure on the all-ones matrix") {
    const auto h = cli::run({"harmonic", "--matrix", files()("full2.json")});
    REQUIRE(h.status == Status::Ok);
    CHECK(h.payload["lambda"].get<double>() == doctest::Approx(2.0));
    const auto m = cli::run({"measure", "--diagram", files()("stationary.json"), "--cylinder",
                             std::to_string(StationaryDiagram::edge_id(1, 2, 2)) + "," +
                                 std::to_string(StationaryDiagram::edge_id(2, 1, 2))});
    REQUIRE(m.status == Status::Ok);
    CHECK(m.payload["measure"].get<double>() == doctest::Approx(0.125));
  }

  TEST_CASE("normalize with and without data") {
    const auto plain = cli::run({"normalize", "--chain", files()("chain.json")});
    REQUIRE(plain.status == Status::Ok);
    CHECK(plain.payload["tower"] == Json::parse("[[[0,2],[1,3]]]"));
    CHECK(plain.payload["valid"].get<bool>());
    const auto data = cli::run({"normalize", "--chain", files()("chain_data.json")});
    REQUIRE(data.status == Status::Ok);
    CHECK(data.payload["verification"]["ok"].get<bool>());
  }

  TEST_CASE("output is deterministic") {
    const std::vector<std::vector<std::string>> commands{
        {"pressure", "--sft", files()("golden.json"), "--potential", files()("sym.json"), "--eigen"},
        {"normalize", "--chain", files()("chain_data.json")},
        {"check", "--suite", "normalize", "--seed", "4"}};
    for (const auto& c : commands) CHECK(cli::run(c).render() == cli::run(c).render());
  }

  TEST_CASE("every library operation is reached from exactly one subcommand") {
    const auto& cov = cli::operation_coverage();
    const auto subs = cli::subcommands();
    const std::set<std::string> known(subs.begin(), subs.end());
    std::set<std::string> ops;
    for (const auto& c : cov) {
      CHECK(ops.insert(c.module + "." + c.operation).second);
      CHECK(known.count(c.subcommand) == 1);
    }
    for (const char* m : {"diagram", "cocycle", "markov", "harmonic", "transfer", "shift", "normalize"}) {
      bool found = false;
      for (const auto& c : cov) found = found || c.module == m;
      CHECK_MESSAGE(found, m);
    }
    // Each subcommand is usable: --help is not an error.
    for (const auto& s : subs) CHECK(cli::run({s, "--help"}).exit_code() == 0);
  }

  TEST_CASE("JSON round trips") {
    const auto d = stationary_from_matrix(test::golden(), 3);
    CHECK(io::to_json(io::diagram_from_json(io::to_json(d))) == io::to_json(d));
    Labelling f(Group::lattice(2));
    f.set(1, 0, GroupElement(std::vector<std::int64_t>{1, -2}));
    CHECK(io::to_json(io::labelling_from_json(io::to_json(f))) == io::to_json(f));
    const Potential phi(2, {{{0, 0}, 0.25}, {{0, 1}, -1.0}, {{1, 0}, 3.0}});
    CHECK(io::to_json(io::potential_from_json(io::to_json(phi, 2), 2), 2) == io::to_json(phi, 2));
    CHECK(io::to_json(io::matrix_from_json(io::to_json(test::one_to_four()))) == io::to_json(test::one_to_four()));
    CHECK(io::parse_path("3,0,2").edges == std::vector<int>{3, 0, 2});
    CHECK_AFREL_ERROR(io::parse_int_list("1,x"), ErrorKind::InvalidInput);
  }
}

TEST_SUITE("suites") {
  TEST_CASE("every named invariant suite passes") {
    for (const auto& name : suite_names()) {
      const SuiteResult r = run_suite(name, 0);
      CHECK_MESSAGE(r.ok(), (name + ": " + (r.failures.empty() ? std::string{} : r.failures.front())));
      CHECK(r.cases > 0);
    }
    CHECK_AFREL_ERROR(run_suite("nope", 0), ErrorKind::InvalidInput);
  }
}
