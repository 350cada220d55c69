#include "specconv_cli/config.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <set>

#include "json.hpp"
#include "specconv/builtins.hpp"
#include "specconv/errors.hpp"

namespace specconv::cli {

using json = nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

void expect_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) invalid(path, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      invalid(path + "/" + key, "unknown field");
    }
  }
}

BigInt get_bigint(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>()) : BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt::parse(j.get<std::string>());
    } catch (const std::exception&) {
      invalid(path, "not an integer: '" + j.get<std::string>() + "'");
    }
  }
  invalid(path, "expected an integer or a decimal string");
}

Rational get_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(get_bigint(j, path));
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception&) {
      invalid(path, "not a rational: '" + j.get<std::string>() + "'");
    }
  }
  invalid(path, "expected a rational as \"p/q\" or an integer");
}

std::size_t get_size(const json& j, const std::string& path, std::size_t min = 0) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    invalid(path, "expected a nonnegative integer");
  }
  const auto v = j.get<std::uint64_t>();
  if (v < min) invalid(path, "must be at least " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

std::uint64_t get_u64(const json& j, const std::string& path) {
  if (j.is_string()) {
    const BigInt b = get_bigint(j, path);
    if (b.sign() < 0 || b.bit_length() > 64) invalid(path, "expected a 64-bit unsigned integer");
    return std::stoull(b.to_string());
  }
  return get_size(j, path);
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) invalid(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < -1'000'000 || v > 1'000'000) invalid(path, "out of range");
  return static_cast<int>(v);
}

double get_double(const json& j, const std::string& path) {
  if (!j.is_number()) invalid(path, "expected a number");
  return j.get<double>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) invalid(path, "expected true or false");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) invalid(path, "expected a string");
  return j.get<std::string>();
}

std::vector<BigInt> get_vector(const json& j, const std::string& path) {
  if (!j.is_array()) invalid(path, "expected an array of integers");
  std::vector<BigInt> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(get_bigint(j[i], path + "/" + std::to_string(i)));
  return v;
}

std::vector<std::vector<BigInt>> get_rows(const json& j, const std::string& path) {
  if (!j.is_array()) invalid(path, "expected an array of integer vectors");
  std::vector<std::vector<BigInt>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(get_vector(j[i], path + "/" + std::to_string(i)));
  return rows;
}

std::vector<std::size_t> get_sizes(const json& j, const std::string& path, std::size_t min = 0) {
  if (!j.is_array()) invalid(path, "expected an array of nonnegative integers");
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(get_size(j[i], path + "/" + std::to_string(i), min));
  return v;
}

void check_level_open(const Rational& l, const std::string& path) {
  if (l.sign() <= 0 || l >= Rational(1)) invalid(path, "must lie in (0, 1)");
}

SequenceSpec parse_sequence(const json& j, const std::string& path) {
  expect_object(j, path, {"builtin", "max_k", "levels", "cycle", "allow_degenerate", "declared_contractivity"});
  SequenceSpec s;
  if (j.contains("builtin")) s.builtin = get_string(j["builtin"], path + "/builtin");
  if (j.contains("max_k")) s.max_k = get_size(j["max_k"], path + "/max_k", 1);
  if (j.contains("levels")) {
    const json& lv = j["levels"];
    if (!lv.is_array()) invalid(path + "/levels", "expected an array of levels");
    for (std::size_t i = 0; i < lv.size(); ++i) {
      const std::string p = path + "/levels/" + std::to_string(i);
      expect_object(lv[i], p, {"r", "b", "l"});
      if (!lv[i].contains("r") || !lv[i].contains("b")) invalid(p, "a level needs r and b");
      LevelSpec ls;
      ls.r = get_rows(lv[i]["r"], p + "/r");
      ls.b = get_rows(lv[i]["b"], p + "/b");
      if (lv[i].contains("l")) ls.l = get_rows(lv[i]["l"], p + "/l");
      s.levels.push_back(std::move(ls));
    }
  }
  if (j.contains("cycle")) s.cycle = get_bool(j["cycle"], path + "/cycle");
  if (j.contains("allow_degenerate")) s.allow_degenerate = get_bool(j["allow_degenerate"], path + "/allow_degenerate");
  if (j.contains("declared_contractivity")) {
    s.declared_contractivity = get_rational(j["declared_contractivity"], path + "/declared_contractivity");
    check_level_open(*s.declared_contractivity, path + "/declared_contractivity");
  }
  if (s.builtin.has_value() == !s.levels.empty()) invalid(path, "give exactly one of builtin and levels");
  if (s.builtin) {
    const auto& cat = builtin_catalog();
    if (std::none_of(cat.begin(), cat.end(), [&](const BuiltinInfo& b) { return b.name == *s.builtin; })) {
      invalid(path + "/builtin", "unknown builtin '" + *s.builtin + "'");
    }
    if (s.cycle) invalid(path + "/cycle", "only inline levels can cycle");
  }
  return s;
}

json emit_rows(const std::vector<std::vector<BigInt>>& rows) {
  json a = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.to_string());
    a.push_back(std::move(r));
  }
  return a;
}

json emit_vector(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

json emit_sequence(const SequenceSpec& s) {
  json j = json::object();
  if (s.builtin) j["builtin"] = *s.builtin;
  if (s.max_k) j["max_k"] = *s.max_k;
  if (!s.levels.empty()) {
    json lv = json::array();
    for (const auto& l : s.levels) {
      json o = {{"r", emit_rows(l.r)}, {"b", emit_rows(l.b)}};
      if (l.l) o["l"] = emit_rows(*l.l);
      lv.push_back(std::move(o));
    }
    j["levels"] = std::move(lv);
  }
  j["cycle"] = s.cycle;
  j["allow_degenerate"] = s.allow_degenerate;
  if (s.declared_contractivity) j["declared_contractivity"] = s.declared_contractivity->to_string();
  return j;
}

IntMatrix to_matrix(const std::vector<std::vector<BigInt>>& rows, std::size_t d, const std::string& path) {
  if (rows.size() != d) invalid(path, "expected a " + std::to_string(d) + " x " + std::to_string(d) + " matrix");
  for (const auto& row : rows) {
    if (row.size() != d) invalid(path, "expected a " + std::to_string(d) + " x " + std::to_string(d) + " matrix");
  }
  return IntMatrix::from_rows(rows);
}

DigitSet to_set(const std::vector<std::vector<BigInt>>& rows, std::size_t d, const std::string& path) {
  std::vector<IntVector> v;
  for (const auto& row : rows) {
    if (row.size() != d) invalid(path, "vectors must have " + std::to_string(d) + " coordinates");
    v.emplace_back(row);
  }
  try {
    return DigitSet::from_vectors(d, v);
  } catch (const specconv::Error& e) {
    invalid(path, e.what());
  }
}

const std::set<std::string>& known_checks() {
  static const std::set<std::string> k = {"hadamard", "rbc", "pcc", "contractivity", "three-series", "equivalence"};
  return k;
}

}  // namespace

TripleSequence make_sequence(const SequenceSpec& s, std::optional<std::size_t> dimension) {
  TripleSequence seq;
  if (s.builtin) {
    try {
      seq = make_builtin(*s.builtin, s.max_k);
    } catch (const specconv::Error& e) {
      invalid("/sequence/builtin", e.what());
    }
  } else {
    const std::size_t d = dimension ? *dimension : s.levels.front().r.size();
    if (d == 0) invalid("/sequence/levels/0/r", "empty matrix");
    std::vector<Level> levels;
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
      const std::string p = "/sequence/levels/" + std::to_string(i);
      Level lv{to_matrix(s.levels[i].r, d, p + "/r"), to_set(s.levels[i].b, d, p + "/b"), std::nullopt};
      if (s.levels[i].l) lv.l = to_set(*s.levels[i].l, d, p + "/l");
      levels.push_back(std::move(lv));
    }
    if (s.cycle) {
      auto shared = std::make_shared<const std::vector<Level>>(std::move(levels));
      TripleSequence::Source src;
      src.dim = d;
      src.matrix = [shared](std::size_t k) { return (*shared)[(k - 1) % shared->size()].r; };
      src.digits = [shared](std::size_t k) { return (*shared)[(k - 1) % shared->size()].b; };
      src.spectrum = [shared](std::size_t k) { return (*shared)[(k - 1) % shared->size()].l; };
      src.length = s.max_k;
      src.name = "inline-cycle";
      seq = TripleSequence(std::move(src));
    } else {
      seq = TripleSequence::from_levels(std::move(levels));
    }
    if (s.allow_degenerate) seq.allow_degenerate();
    // validate every stored level once
    for (std::size_t k = 1; k <= s.levels.size(); ++k) {
      try {
        (void)seq.level(k);
      } catch (const specconv::Error& e) {
        invalid("/sequence/levels/" + std::to_string(k - 1), e.what());
      }
    }
  }
  if (dimension && seq.dim() != *dimension) {
    invalid("/dimension", "sequence has dimension " + std::to_string(seq.dim()));
  }
  if (s.declared_contractivity) seq.set_declared_contractivity(*s.declared_contractivity);
  return seq;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  expect_object(j, "", {"dimension", "sequence", "compare", "upto", "tol", "seed", "max_atoms", "grid_pitch", "output",
                        "check", "spectrum", "qscan", "sample", "equipos"});
  RunConfig c;
  if (j.contains("dimension")) c.dimension = get_size(j["dimension"], "/dimension", 1);
  if (!j.contains("sequence")) invalid("/sequence", "missing");
  c.sequence = parse_sequence(j["sequence"], "/sequence");
  if (j.contains("compare")) c.compare = parse_sequence(j["compare"], "/compare");
  if (j.contains("upto")) c.upto = get_size(j["upto"], "/upto", 1);
  if (j.contains("tol")) c.tol = get_double(j["tol"], "/tol");
  if (!(c.tol > 0.0)) invalid("/tol", "must be positive");
  if (j.contains("seed")) c.seed = get_u64(j["seed"], "/seed");
  if (j.contains("max_atoms")) c.max_atoms = get_size(j["max_atoms"], "/max_atoms", 1);
  if (j.contains("grid_pitch")) {
    c.grid_pitch = get_rational(j["grid_pitch"], "/grid_pitch");
    if (c.grid_pitch->sign() <= 0) invalid("/grid_pitch", "must be positive");
  }
  if (j.contains("output")) c.output = get_string(j["output"], "/output");

  if (j.contains("check")) {
    const json& o = j["check"];
    expect_object(o, "/check", {"checks", "pcc_level", "pcc_subsequence", "radius", "cauchy_tol"});
    if (o.contains("checks")) {
      if (!o["checks"].is_array()) invalid("/check/checks", "expected an array of names");
      for (std::size_t i = 0; i < o["checks"].size(); ++i) {
        const std::string p = "/check/checks/" + std::to_string(i);
        std::string name = get_string(o["checks"][i], p);
        if (!known_checks().count(name)) invalid(p, "unknown check '" + name + "'");
        c.check.checks.push_back(std::move(name));
      }
    }
    if (o.contains("pcc_level")) c.check.pcc_level = get_rational(o["pcc_level"], "/check/pcc_level");
    if (o.contains("pcc_subsequence")) c.check.pcc_subsequence = get_sizes(o["pcc_subsequence"], "/check/pcc_subsequence", 1);
    if (o.contains("radius")) c.check.radius = get_rational(o["radius"], "/check/radius");
    if (o.contains("cauchy_tol")) c.check.cauchy_tol = get_double(o["cauchy_tol"], "/check/cauchy_tol");
  }
  check_level_open(c.check.pcc_level, "/check/pcc_level");
  if (c.check.radius.sign() <= 0) invalid("/check/radius", "must be positive");

  if (j.contains("spectrum")) {
    const json& o = j["spectrum"];
    expect_object(o, "/spectrum", {"milestones", "levels", "chooser", "radius", "depth", "table", "delta0"});
    if (o.contains("milestones")) c.spectrum.milestones = get_sizes(o["milestones"], "/spectrum/milestones", 1);
    if (o.contains("levels")) c.spectrum.levels = get_size(o["levels"], "/spectrum/levels", 1);
    if (o.contains("chooser")) c.spectrum.chooser = get_string(o["chooser"], "/spectrum/chooser");
    if (o.contains("radius")) c.spectrum.radius = get_int(o["radius"], "/spectrum/radius");
    if (o.contains("depth")) c.spectrum.depth = get_size(o["depth"], "/spectrum/depth", 1);
    if (o.contains("table")) {
      if (!o["table"].is_array()) invalid("/spectrum/table", "expected an array");
      for (std::size_t i = 0; i < o["table"].size(); ++i) {
        const std::string p = "/spectrum/table/" + std::to_string(i);
        const json& e = o["table"][i];
        expect_object(e, p, {"lambda", "level", "k"});
        if (!e.contains("lambda") || !e.contains("level") || !e.contains("k")) invalid(p, "needs lambda, level and k");
        c.spectrum.table.push_back(
            {get_vector(e["lambda"], p + "/lambda"), get_size(e["level"], p + "/level", 1), get_vector(e["k"], p + "/k")});
      }
    }
    if (o.contains("delta0")) c.spectrum.delta0 = get_rational(o["delta0"], "/spectrum/delta0");
  }
  if (c.spectrum.chooser != "zero" && c.spectrum.chooser != "windowed" && c.spectrum.chooser != "table") {
    invalid("/spectrum/chooser", "expected zero, windowed or table");
  }
  if (c.spectrum.radius < 0) invalid("/spectrum/radius", "must be nonnegative");
  if (c.spectrum.delta0 && c.spectrum.delta0->sign() <= 0) invalid("/spectrum/delta0", "must be positive");

  if (j.contains("qscan")) {
    const json& o = j["qscan"];
    expect_object(o, "/qscan", {"spectrum_file", "spectrum", "truncation", "lo", "hi", "max_points"});
    if (o.contains("spectrum_file")) c.qscan.spectrum_file = get_string(o["spectrum_file"], "/qscan/spectrum_file");
    if (o.contains("spectrum")) c.qscan.spectrum = get_rows(o["spectrum"], "/qscan/spectrum");
    if (o.contains("truncation")) c.qscan.truncation = get_size(o["truncation"], "/qscan/truncation", 1);
    if (o.contains("lo")) c.qscan.lo = get_rational(o["lo"], "/qscan/lo");
    if (o.contains("hi")) c.qscan.hi = get_rational(o["hi"], "/qscan/hi");
    if (o.contains("max_points")) c.qscan.max_points = get_size(o["max_points"], "/qscan/max_points", 1);
    if (c.qscan.spectrum_file && c.qscan.spectrum) invalid("/qscan", "give at most one of spectrum_file and spectrum");
  }
  if (!(c.qscan.lo < c.qscan.hi)) invalid("/qscan", "lo must be below hi");

  if (j.contains("sample")) {
    const json& o = j["sample"];
    expect_object(o, "/sample", {"draws", "write_draws", "histogram_bins"});
    if (o.contains("draws")) c.sample.draws = get_size(o["draws"], "/sample/draws", 1);
    if (o.contains("write_draws")) c.sample.write_draws = get_bool(o["write_draws"], "/sample/write_draws");
    if (o.contains("histogram_bins")) c.sample.histogram_bins = get_int(o["histogram_bins"], "/sample/histogram_bins");
    if (c.sample.histogram_bins < 1) invalid("/sample/histogram_bins", "must be at least 1");
  }

  if (j.contains("equipos")) {
    const json& o = j["equipos"];
    expect_object(o, "/equipos", {"tail_starts", "depth", "y_radius", "y_pitch", "k_window", "min_epsilon", "pcc_level",
                                  "transfer_from"});
    if (o.contains("tail_starts")) c.equipos.tail_starts = get_sizes(o["tail_starts"], "/equipos/tail_starts");
    if (o.contains("depth")) c.equipos.depth = get_size(o["depth"], "/equipos/depth", 1);
    if (o.contains("y_radius")) c.equipos.y_radius = get_rational(o["y_radius"], "/equipos/y_radius");
    if (o.contains("y_pitch")) c.equipos.y_pitch = get_rational(o["y_pitch"], "/equipos/y_pitch");
    if (o.contains("k_window")) c.equipos.k_window = get_int(o["k_window"], "/equipos/k_window");
    if (o.contains("min_epsilon")) c.equipos.min_epsilon = get_double(o["min_epsilon"], "/equipos/min_epsilon");
    if (o.contains("pcc_level")) c.equipos.pcc_level = get_rational(o["pcc_level"], "/equipos/pcc_level");
    if (o.contains("transfer_from")) c.equipos.transfer_from = get_size(o["transfer_from"], "/equipos/transfer_from", 1);
  }
  if (c.equipos.tail_starts.empty()) invalid("/equipos/tail_starts", "needs at least one start");
  if (c.equipos.k_window < 0) invalid("/equipos/k_window", "must be nonnegative");
  check_level_open(c.equipos.pcc_level, "/equipos/pcc_level");
  if (c.equipos.y_radius && c.equipos.y_radius->sign() < 0) invalid("/equipos/y_radius", "must be nonnegative");
  if (c.equipos.y_pitch && c.equipos.y_pitch->sign() <= 0) invalid("/equipos/y_pitch", "must be positive");

  // build once so level errors surface as configuration errors
  (void)make_sequence(c.sequence, c.dimension);
  if (c.compare) {
    const TripleSequence other = make_sequence(*c.compare, c.dimension);
    if (!c.dimension && other.dim() != make_sequence(c.sequence, std::nullopt).dim()) {
      invalid("/compare", "dimension differs from the sequence");
    }
  }
  return c;
}

std::string emit_config(const RunConfig& c) {
  json j = json::object();
  if (c.dimension) j["dimension"] = *c.dimension;
  j["sequence"] = emit_sequence(c.sequence);
  if (c.compare) j["compare"] = emit_sequence(*c.compare);
  j["upto"] = c.upto;
  j["tol"] = c.tol;
  if (c.seed) j["seed"] = *c.seed;
  j["max_atoms"] = c.max_atoms;
  if (c.grid_pitch) j["grid_pitch"] = c.grid_pitch->to_string();
  if (c.output) j["output"] = *c.output;

  json checks = json::array();
  for (const auto& s : c.check.checks) checks.push_back(s);
  j["check"] = {{"checks", checks},
                {"pcc_level", c.check.pcc_level.to_string()},
                {"pcc_subsequence", c.check.pcc_subsequence},
                {"radius", c.check.radius.to_string()},
                {"cauchy_tol", c.check.cauchy_tol}};

  json table = json::array();
  for (const auto& e : c.spectrum.table) {
    table.push_back({{"lambda", emit_vector(e.lambda)}, {"level", e.level}, {"k", emit_vector(e.k)}});
  }
  j["spectrum"] = {{"milestones", c.spectrum.milestones}, {"levels", c.spectrum.levels},
                   {"chooser", c.spectrum.chooser},       {"radius", c.spectrum.radius},
                   {"depth", c.spectrum.depth},           {"table", table}};
  if (c.spectrum.delta0) j["spectrum"]["delta0"] = c.spectrum.delta0->to_string();

  j["qscan"] = {{"truncation", c.qscan.truncation},
                {"lo", c.qscan.lo.to_string()},
                {"hi", c.qscan.hi.to_string()},
                {"max_points", c.qscan.max_points}};
  if (c.qscan.spectrum_file) j["qscan"]["spectrum_file"] = *c.qscan.spectrum_file;
  if (c.qscan.spectrum) j["qscan"]["spectrum"] = emit_rows(*c.qscan.spectrum);

  j["sample"] = {{"draws", c.sample.draws},
                 {"write_draws", c.sample.write_draws},
                 {"histogram_bins", c.sample.histogram_bins}};

  j["equipos"] = {{"tail_starts", c.equipos.tail_starts}, {"depth", c.equipos.depth},
                  {"k_window", c.equipos.k_window},       {"min_epsilon", c.equipos.min_epsilon},
                  {"pcc_level", c.equipos.pcc_level.to_string()}};
  if (c.equipos.y_radius) j["equipos"]["y_radius"] = c.equipos.y_radius->to_string();
  if (c.equipos.y_pitch) j["equipos"]["y_pitch"] = c.equipos.y_pitch->to_string();
  if (c.equipos.transfer_from) j["equipos"]["transfer_from"] = *c.equipos.transfer_from;
  return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const RunConfig& c) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(emit_config(c))));
  return buf;
}

}  // namespace specconv::cli
