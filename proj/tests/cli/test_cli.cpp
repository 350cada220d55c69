#include "doctest.h"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "specconv/errors.hpp"
#include "specconv_cli/commands.hpp"
#include "specconv_cli/config.hpp"

using namespace specconv;
using namespace specconv::cli;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("specconv_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string write_config(const std::string& text) {
  static std::atomic<int> counter{0};
  const fs::path p = scratch_dir() / ("cfg" + std::to_string(counter++) + ".json");
  std::ofstream(p) << text;
  return p.string();
}

std::string config_file(const std::string& name) { return std::string(SPECCONV_CONFIG_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string data_section(const std::string& out) {
  const auto pos = out.find("## data\n");
  REQUIRE(pos != std::string::npos);
  return out.substr(pos + 8);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

// vector lines of a spectrum file, comments removed
std::vector<std::string> spectrum_vectors(const std::string& text) {
  std::vector<std::string> v;
  for (const auto& l : lines(text)) {
    if (!l.empty() && l[0] != '#') v.push_back(l);
  }
  return v;
}

std::vector<double> csv_last_column(const std::string& csv) {
  std::vector<double> v;
  const auto ls = lines(csv);
  for (std::size_t i = 1; i < ls.size(); ++i) v.push_back(std::stod(ls[i].substr(ls[i].rfind(',') + 1)));
  return v;
}

const char* kJp = R"({"sequence": {"builtin": "jorgensen-pedersen"}})";

}  // namespace

TEST_CASE("parse_config: builtins and inline levels") {
  const RunConfig jp = parse_config(kJp);
  const TripleSequence s = make_sequence(jp.sequence, jp.dimension);
  CHECK(s.dim() == 1);
  const Level lv = s.level(5);
  CHECK(lv.r(0, 0) == BigInt(4));
  CHECK(lv.b.to_vectors() == std::vector<IntVector>{IntVector{BigInt(0)}, IntVector{BigInt(2)}});
  CHECK(lv.l->to_vectors() == std::vector<IntVector>{IntVector{BigInt(0)}, IntVector{BigInt(1)}});

  const RunConfig ex = parse_config(R"({"sequence": {"builtin": "example-2.6", "max_k": 5}})");
  const TripleSequence e = make_sequence(ex.sequence, std::nullopt);
  CHECK(e.dim() == 2);
  CHECK(e.length() == std::optional<std::size_t>(5));
  // far digit 3 + 8^3 4! = 12291
  CHECK(e.digits(3).contains(IntVector{BigInt(12291), BigInt(0)}.view()));
  CHECK(e.matrix(3)(0, 0) == BigInt(32));

  const RunConfig in = parse_config(R"({
    "dimension": 1,
    "sequence": {"levels": [
      {"r": [[4]], "b": [[0], [2]], "l": [[0], [1]]},
      {"r": [["6"]], "b": [[0], ["123456789012345678901234567891"]]}
    ]}
  })");
  const TripleSequence t = make_sequence(in.sequence, in.dimension);
  CHECK(t.length() == std::optional<std::size_t>(2));
  CHECK(t.digits(2).contains(IntVector{BigInt::parse("123456789012345678901234567891")}.view()));
  CHECK_FALSE(t.spectrum(2).has_value());
  CHECK_THROWS_AS((void)t.level(3), IndexOutOfRange);
}

TEST_CASE("parse_config: cyclic inline levels repeat") {
  const RunConfig c = parse_config(R"({"sequence": {"levels": [
      {"r": [[4]], "b": [[0], [2]]}, {"r": [[3]], "b": [[0], [1], [2]]}], "cycle": true}})");
  const TripleSequence s = make_sequence(c.sequence, std::nullopt);
  CHECK_FALSE(s.length().has_value());
  CHECK(s.matrix(1)(0, 0) == BigInt(4));
  CHECK(s.matrix(2)(0, 0) == BigInt(3));
  CHECK(s.matrix(7)(0, 0) == BigInt(4));
  CHECK(s.digits(8).size() == 3);
}

TEST_CASE("parse_config rejects unknown fields with their path") {
  auto message = [](const std::string& text) {
    try {
      (void)parse_config(text);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "colour": 1})").find("/colour") != std::string::npos);
  CHECK(message(R"({"sequence": {"builtin": "jorgensen-pedersen", "maxk": 3}})").find("/sequence/maxk") !=
        std::string::npos);
  CHECK(message(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "check": {"check": []}})")
            .find("/check/check") != std::string::npos);
  CHECK(message(R"({"sequence": {"levels": [{"r": [[4]], "b": [[0], [2]], "L": []}]}})")
            .find("/sequence/levels/0/L") != std::string::npos);
}

TEST_CASE("parse_config: parse errors carry line and column") {
  try {
    (void)parse_config("{\n  \"sequence\": {\"builtin\": \"jorgensen-pedersen\"},\n  \"upto\": 3,,\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    const std::string m = e.what();
    CHECK(m.find("line 3") != std::string::npos);
    CHECK(m.find("column 13") != std::string::npos);
  }
  CHECK_THROWS_AS((void)parse_config(""), ParseError);
}

TEST_CASE("parse_config: validation errors") {
  auto bad = [](const char* text) { CHECK_THROWS_AS((void)parse_config(text), ValidationError); };
  bad(R"({})");
  bad(R"({"sequence": {"builtin": "nope"}})");
  bad(R"({"sequence": {"builtin": "example-2.6", "max_k": 0}})");
  bad(R"({"sequence": {"builtin": "jorgensen-pedersen", "levels": [{"r": [[4]], "b": [[0], [2]]}]}})");
  // #B < 2
  bad(R"({"sequence": {"levels": [{"r": [[4]], "b": [[0]]}]}})");
  // singular R
  bad(R"({"sequence": {"levels": [{"r": [[1, 2], [2, 4]], "b": [[0, 0], [1, 0]]}]}})");
  // ragged R and wrong digit dimension
  bad(R"({"sequence": {"levels": [{"r": [[1, 2], [2]], "b": [[0, 0], [1, 0]]}]}})");
  bad(R"({"sequence": {"levels": [{"r": [[2, 0], [0, 2]], "b": [[0, 0], [1]]}]}})");
  // repeated digit
  bad(R"({"sequence": {"levels": [{"r": [[4]], "b": [[0], [0]]}]}})");
  // dimension disagrees with the builtin
  bad(R"({"dimension": 1, "sequence": {"builtin": "example-2.6"}})");
  bad(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "upto": 0})");
  bad(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "upto": "ten"})");
  bad(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "check": {"checks": ["rcb"]}})");
  bad(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "check": {"pcc_level": "3/2"}})");
  bad(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "grid_pitch": "0"})");
  bad(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "grid_pitch": "1/x"})");
  bad(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "spectrum": {"chooser": "greedy"}})");
  bad(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "qscan": {"lo": "1", "hi": "1/2"}})");
  bad(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "seed": -1})");
  // the degenerate escape hatch admits singletons
  CHECK_NOTHROW((void)parse_config(R"({"sequence": {"levels": [{"r": [[4]], "b": [[0]]}], "allow_degenerate": true}})"));
}

TEST_CASE("emit_config round trip is idempotent") {
  std::vector<std::string> texts = {
      kJp,
      R"({"dimension": 1, "sequence": {"levels": [{"r": [[4]], "b": [[0], ["99999999999999999999999"]],
          "l": [[0], [1]]}], "cycle": true, "declared_contractivity": "1/4"}, "seed": 18446744073709551615,
          "grid_pitch": "2/64", "spectrum": {"chooser": "table", "table": [{"lambda": [1], "level": 2, "k": [-1]}],
          "delta0": "1/8"}, "qscan": {"spectrum": [[0], [1]]}, "equipos": {"y_radius": "1/10", "transfer_from": 7}})",
  };
  for (const auto& entry : fs::directory_iterator(SPECCONV_CONFIG_DIR)) texts.push_back(read_file(entry.path().string()));
  for (const auto& text : texts) {
    const RunConfig c = parse_config(text);
    const std::string once = emit_config(c);
    const std::string twice = emit_config(parse_config(once));
    CHECK(once == twice);
    CHECK(config_hash(c) == config_hash(parse_config(once)));
  }
  const RunConfig big = parse_config(texts[1]);
  CHECK(big.seed == std::optional<std::uint64_t>(18446744073709551615ULL));
  CHECK(*big.grid_pitch == Rational(BigInt(1), BigInt(32)));
  CHECK(emit_config(big).find("\"99999999999999999999999\"") != std::string::npos);
  // defaults are spelled out
  CHECK(emit_config(parse_config(kJp)).find("\"max_atoms\": 1000000") != std::string::npos);
  CHECK(config_hash(parse_config(kJp)) != config_hash(big));
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("cli: exit codes") {
  CHECK(run_cli({"check", "--config", config_file("jorgensen-pedersen-check.json")}).code == kOk);
  const CliResult broken = run_cli({"check", "--config", config_file("broken-triple-check.json")});
  CHECK(broken.code == kCheckFailed);
  CHECK(broken.out.find("0.70710678118654757,no") != std::string::npos);

  CHECK(run_cli({"check", "--config", write_config("{\"sequence\": 3}")}).code == kConfigError);
  CHECK(run_cli({"check", "--config", write_config("{\"sequence\": ")}).code == kConfigError);
  CHECK(run_cli({"check", "--config", (scratch_dir() / "missing.json").string()}).code == kConfigError);
  CHECK(run_cli({"check"}).code == kConfigError);
  CHECK(run_cli({"frobnicate"}).code == kConfigError);
  CHECK(run_cli({"check", "--config", write_config(kJp), "--grid-pitch", "one"}).code == kConfigError);
  // sampling without a seed
  CHECK(run_cli({"sample", "--config", write_config(kJp)}).code == kConfigError);
  // equivalence needs a compare sequence
  CHECK(run_cli({"check", "--config",
                 write_config(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "check": {"checks": ["equivalence"]}})")})
            .code == kConfigError);
  // resource caps
  CHECK(run_cli({"qscan", "--config", write_config(kJp), "--grid-pitch", "1/10000000"}).code == kResourceCap);
  CHECK(run_cli({"qscan", "--config", write_config(R"({"sequence": {"builtin": "jorgensen-pedersen"},
                 "qscan": {"truncation": 30}})")})
            .code == kResourceCap);
  CHECK(run_cli({"spectrum", "--config", config_file("example-2.6-spectrum.json"), "--max-atoms", "10"}).code ==
        kResourceCap);
  // a level without L cannot seed a spectrum
  CHECK(run_cli({"spectrum", "--config", write_config(R"({"sequence": {"levels": [{"r": [[4]], "b": [[0], [2]]}]},
                 "spectrum": {"levels": 1}})")})
            .code == kCheckFailed);
  // milestones past a finite sequence
  CHECK(run_cli({"spectrum", "--config", write_config(R"({"sequence": {"builtin": "jorgensen-pedersen", "max_k": 2},
                 "spectrum": {"levels": 3}})")})
            .code == kConfigError);
  CHECK(run_cli({"builtins"}).code == kOk);
  CHECK(run_cli({"--help"}).code == kOk);
}

TEST_CASE("cli: report header and wall time") {
  const CliResult r = run_cli({"check", "--config", config_file("jorgensen-pedersen-check.json")});
  const auto ls = lines(r.out);
  REQUIRE(ls.size() > 2);
  CHECK(ls[0] == "# specconv check");
  CHECK(ls[1].rfind("# config-hash ", 0) == 0);
  CHECK(ls[1].size() == std::string("# config-hash ").size() + 16);
  CHECK(r.out.find("wall-time") == std::string::npos);
  CHECK(r.err.find("wall-time") != std::string::npos);
  // the hash tracks flag overrides
  const CliResult t = run_cli({"check", "--config", config_file("jorgensen-pedersen-check.json"), "--tol", "1e-6"});
  CHECK(lines(t.out)[1] != ls[1]);
}

TEST_CASE("cli check: example-2.6 with K = 50") {
  const CliResult r = run_cli({"check", "--config", config_file("example-2.6-check.json")});
  CHECK(r.code == kOk);
  Rational sum;
  for (int k = 1; k <= 50; ++k) sum += Rational(BigInt(1), BigInt((k + 1) * (k + 1)));
  CHECK(r.out.find("rbc: K=50 sum=" + sum.to_string() + " ") != std::string::npos);
  CHECK(r.out.find("pcc: K=50 sum=" + sum.to_string() + " ") != std::string::npos);
  // Hadamard table: deviations below 1e-9 at every level
  std::size_t rows = 0;
  bool in_table = false;
  for (const auto& l : lines(r.out)) {
    if (l == "k,#B,#L,max_deviation,unitary") {
      in_table = true;
      continue;
    }
    if (in_table && l.rfind("result", 0) == 0) break;
    if (in_table) {
      ++rows;
      const auto parts = l.substr(0, l.rfind(','));
      CHECK(std::stod(parts.substr(parts.rfind(',') + 1)) < 1e-9);
      CHECK(l.substr(l.rfind(',') + 1) == "yes");
    }
  }
  CHECK(rows == 50);
  // margin table: 1 - 1/4 - 1/(4(k+1)) at k = 1
  CHECK(r.out.find("1,0.125,0.625\n") != std::string::npos);
  CHECK(r.out.find("result contractivity: pass") != std::string::npos);
}

TEST_CASE("cli check: jorgensen-pedersen RBC terms") {
  const CliResult r = run_cli({"check", "--config",
                               write_config(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "upto": 20,
                                 "check": {"checks": ["rbc"]}})")});
  // 2/4 = 1/2 lies outside [-1/2, 1/2), so every term is 1/2 and the series diverges
  CHECK(r.code == kCheckFailed);
  CHECK(r.out.find("verdict=diverging") != std::string::npos);
  CHECK(data_section(r.out).find("1,1/2,0.5") != std::string::npos);
}

TEST_CASE("cli check: equivalence of example-2.6 and its reduction") {
  const CliResult r = run_cli({"check", "--config", config_file("example-2.6-equivalence.json")});
  CHECK(r.code == kOk);
  CHECK(r.out.find("counts from the closed form") != std::string::npos);
  CHECK(r.out.find("verdict=certified") != std::string::npos);
  // enumeration agrees with the closed form for small K
  const CliResult e = run_cli({"check", "--config", write_config(R"({"sequence": {"builtin": "example-2.6"},
      "compare": {"levels": [{"r": [[8, 0], [0, 8]], "b": [[0, 0], [1, 0], [0, 1], [1, 1]]}], "cycle": true},
      "upto": 1, "check": {"checks": ["equivalence"]}})")});
  // B_1 = {(0,0), (0,1), (1,1), (17,0)} against {0,1}^2: one element differs each way
  CHECK(data_section(e.out).find("1,1/4,0.25") != std::string::npos);
}

TEST_CASE("cli spectrum: worked examples") {
  const CliResult jp = run_cli({"spectrum", "--config", config_file("jorgensen-pedersen-spectrum.json")});
  CHECK(jp.code == kOk);
  const auto v = spectrum_vectors(data_section(jp.out));
  CHECK(std::multiset<std::string>(v.begin(), v.end()) ==
        std::multiset<std::string>{"0", "1", "4", "5", "16", "17", "20", "21"});

  const CliResult one = run_cli({"spectrum", "--config",
                                 write_config(R"({"sequence": {"builtin": "example-2.6"}, "spectrum": {"levels": 1}})")});
  CHECK(one.code == kOk);
  // L_1 = 8{0,1} - 8 t_1 with t_1 = 1
  const auto l1 = spectrum_vectors(data_section(one.out));
  CHECK(std::multiset<std::string>(l1.begin(), l1.end()) ==
        std::multiset<std::string>{"-8 -8", "-8 0", "0 -8", "0 0"});

  const fs::path outp = scratch_dir() / "e26.spectrum";
  const CliResult ex = run_cli({"spectrum", "--config", config_file("example-2.6-spectrum.json"), "--out", outp.string()});
  CHECK(ex.code == kOk);
  CHECK(ex.out.find("## data") == std::string::npos);
  CHECK(spectrum_vectors(read_file(outp.string())).size() == 36);
  CHECK(ex.out.find("2,2,36,36,yes,") != std::string::npos);
}

TEST_CASE("cli qscan: exact spectrum, empty set and partial set") {
  const fs::path outp = scratch_dir() / "jp.spectrum";
  REQUIRE(run_cli({"spectrum", "--config",
                   write_config(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "spectrum": {"levels": 2}})"),
                   "--out", outp.string()})
              .code == kOk);
  const CliResult full = run_cli({"qscan", "--config",
                                  write_config(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "qscan": {"spectrum_file": ")" +
                                               outp.string() + R"(", "truncation": 2}})"),
                                  "--grid-pitch", "1/101"});
  CHECK(full.code == kOk);
  const auto q = csv_last_column(data_section(full.out));
  CHECK(q.size() == 101);
  for (double x : q) CHECK(std::abs(x - 1.0) < 1e-9);
  // the closed form gives the same Lambda_2
  CHECK(data_section(full.out) == data_section(run_cli({"qscan", "--config", config_file("jorgensen-pedersen-qscan.json")}).out));

  const CliResult empty = run_cli({"qscan", "--config",
                                   write_config(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "qscan": {"spectrum": []}})")});
  CHECK(empty.code == kOk);
  for (double x : csv_last_column(data_section(empty.out))) CHECK(x == 0.0);

  const CliResult part = run_cli({"qscan", "--config",
                                  write_config(R"({"sequence": {"builtin": "jorgensen-pedersen"},
                                    "qscan": {"spectrum": [[0], [1], [4]], "truncation": 2, "lo": "1/202"}})")});
  // Q(0) = 1 for any Lambda containing 0 inside Lambda_2, so the grid starts off the origin
  const auto pq = csv_last_column(data_section(part.out));
  CHECK(*std::max_element(pq.begin(), pq.end()) < 1.0);
}

TEST_CASE("cli sample: determinism and couplings") {
  const std::vector<std::string> args = {"sample", "--config", config_file("example-2.6-sample.json")};
  const CliResult a = run_cli(args);
  const CliResult b = run_cli(args);
  CHECK(a.code == kOk);
  CHECK(a.out == b.out);
  // every per-k frequency within 4 sigma of 1/(k+1)^2
  std::size_t yes = 0;
  for (const auto& l : lines(a.out)) {
    if (l.size() > 4 && l.substr(l.size() - 4) == ",yes") ++yes;
    CHECK(l.find(",no") == std::string::npos);
  }
  CHECK(yes == 20);
  // only the unreduced sums leave [0, 1)
  const auto first = a.out.find("mass outside [0, 1): ");
  const auto second = a.out.find("mass outside [0, 1): ", first + 1);
  REQUIRE(second != std::string::npos);
  CHECK(std::stod(a.out.substr(first + 21)) > 0.0);
  CHECK(std::stod(a.out.substr(second + 21)) == 0.0);

  const CliResult other_seed = run_cli({"sample", "--config", config_file("example-2.6-sample.json"), "--seed", "5"});
  CHECK(other_seed.out != a.out);

  const CliResult self = run_cli({"sample", "--config",
                                  write_config(R"({"sequence": {"builtin": "example-2.6"}, "upto": 6,
                                    "sample": {"draws": 500}})"),
                                  "--seed", "3"});
  CHECK(self.code == kOk);
  std::size_t zero_rows = 0;
  for (const auto& l : lines(self.out)) zero_rows += l.size() > 10 && l.substr(l.size() - 10) == ",0,0,0,yes";
  CHECK(zero_rows == 6);
  const auto data = lines(data_section(self.out));
  CHECK(data.front() == "draw,x1,x2");
  CHECK(data.size() == 501);
}

TEST_CASE("cli equipos: fixtures") {
  const CliResult one = run_cli({"equipos", "--config", config_file("singleton-equipos.json")});
  CHECK(one.code == kOk);
  CHECK(one.out.find("status witnessed, epsilon0 1\n") != std::string::npos);

  const CliResult broken = run_cli({"equipos", "--config", config_file("broken-equipos.json")});
  CHECK(broken.code == kCheckFailed);
  CHECK(broken.out.find("failed at start 0, x = (-1/2)") != std::string::npos);

  const CliResult ex = run_cli({"equipos", "--config",
                                write_config(R"({"sequence": {"builtin": "example-2.6-reduced",
                                  "declared_contractivity": "1/16"}, "grid_pitch": "1/8",
                                  "equipos": {"depth": 6, "transfer_from": 100}})")});
  CHECK(ex.code == kOk);
  const auto pos = ex.out.find("status witnessed, epsilon0 ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(ex.out.substr(pos + 27)) > 0.0);
  CHECK(ex.out.find("transferred bound ") != std::string::npos);
  // the transferred bound needs a known total-variation tail
  CHECK(run_cli({"equipos", "--config",
                 write_config(R"({"sequence": {"builtin": "jorgensen-pedersen"}, "equipos": {"transfer_from": 3}})")})
            .code == kConfigError);
}
