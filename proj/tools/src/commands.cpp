#include "specconv_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "specconv/builtins.hpp"
#include "specconv/conditions.hpp"
#include "specconv/errors.hpp"
#include "specconv/measures.hpp"
#include "specconv/spectra.hpp"
#include "specconv/triples.hpp"

namespace specconv::cli {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool passes(Verdict v) { return v == Verdict::certified || v == Verdict::converged_numerically; }

std::string rat_row(const RatVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) s += ',';
    s += v[i].to_string();
  }
  return s;
}

std::string int_row(IntView v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].to_string();
  }
  return s;
}

std::string coord_header(const std::string& prefix, std::size_t d) {
  std::string s;
  for (std::size_t i = 1; i <= d; ++i) {
    if (i > 1) s += ',';
    s += prefix + std::to_string(i);
  }
  return s;
}

bool is_example_pair(const SequenceSpec& a, const SequenceSpec& b) {
  if (!a.builtin || !b.builtin) return false;
  const std::string x = *a.builtin;
  const std::string y = *b.builtin;
  return (x == "example-2.6" && y == "example-2.6-reduced") || (x == "example-2.6-reduced" && y == "example-2.6");
}

bool is_example_family(const SequenceSpec& s) {
  return s.builtin && (*s.builtin == "example-2.6" || *s.builtin == "example-2.6-reduced");
}

std::vector<std::string> requested_checks(const RunConfig& cfg, const TripleSequence& seq) {
  if (!cfg.check.checks.empty()) return cfg.check.checks;
  std::vector<std::string> c;
  if (seq.spectrum(1).has_value()) c.emplace_back("hadamard");
  for (const char* n : {"rbc", "pcc", "contractivity", "three-series"}) c.emplace_back(n);
  if (cfg.compare) c.emplace_back("equivalence");
  return c;
}

void append_section(std::string& data, const std::string& name, const std::string& csv) {
  data += "# " + name + "\n" + csv;
  if (!csv.empty() && csv.back() != '\n') data += '\n';
}

}  // namespace

CommandOutput cmd_check(const RunConfig& cfg) {
  const TripleSequence seq = make_sequence(cfg.sequence, cfg.dimension);
  const std::size_t upto = cfg.upto;
  CommandOutput out;
  std::ostringstream rep;
  bool all_pass = true;
  auto verdict_line = [&](const std::string& name, bool ok) {
    rep << "result " << name << ": " << (ok ? "pass" : "FAIL") << "\n\n";
    all_pass = all_pass && ok;
  };

  for (const std::string& check : requested_checks(cfg, seq)) {
    rep << "== " << check << " ==\n";
    if (check == "hadamard") {
      bool ok = true;
      rep << "k,#B,#L,max_deviation,unitary\n";
      for (std::size_t k = 1; k <= upto; ++k) {
        const Level lv = seq.level(k);
        if (!lv.l) {
          rep << k << "," << lv.b.size() << ",-,-,missing L\n";
          ok = false;
          continue;
        }
        const HadamardReport h = hadamard_check(lv.r, lv.b, *lv.l, cfg.tol);
        const bool good = h.square && h.max_deviation < cfg.tol;
        ok = ok && good;
        rep << k << "," << h.rows << "," << h.cols << "," << fmt(h.max_deviation) << "," << (good ? "yes" : "no")
            << "\n";
      }
      verdict_line(check, ok);
    } else if (check == "rbc") {
      const SeriesDiagnostics s = rbc_series(seq, upto);
      rep << summary_line(s) << "\n";
      append_section(out.data, "rbc", to_csv(s));
      verdict_line(check, passes(s.verdict));
    } else if (check == "pcc") {
      const PccDiagnostics p = pcc_series(seq, cfg.check.pcc_level, cfg.check.pcc_subsequence, upto);
      rep << summary_line(p.series) << "\n";
      rep << "l = " << cfg.check.pcc_level.to_string() << "\n";
      rep << "k,pcc_sup,margin\n";
      const double l = cfg.check.pcc_level.to_double();
      for (std::size_t k : p.series.indices) {
        const double sup = pcc_sup(seq.matrix(k));
        rep << k << "," << fmt(sup) << "," << fmt(1.0 - l - sup) << "\n";
      }
      rep << "min margin " << fmt(p.min_margin) << " at k=" << p.min_margin_index
          << (p.margin_positive ? " (positive)" : " (not positive)") << "\n";
      append_section(out.data, "pcc", to_csv(p.series));
      verdict_line(check, passes(p.series.verdict) && p.margin_positive);
    } else if (check == "contractivity") {
      const ContractivityReport c = contractivity_report(seq, upto);
      rep << "k,norm_upper\n";
      for (std::size_t i = 0; i < c.norms.size(); ++i) rep << i + 1 << "," << fmt(c.norms[i]) << "\n";
      rep << "max " << fmt(c.max_norm) << " at k=" << c.argmax << " declared "
          << (c.declared ? c.declared->to_string() : std::string("none")) << " verdict " << to_string(c.verdict)
          << "\n";
      verdict_line(check, c.verdict != ContractivityVerdict::fails);
    } else if (check == "three-series") {
      const ThreeSeries t = three_series(seq, cfg.check.radius, upto, cfg.check.cauchy_tol);
      rep << "r = " << cfg.check.radius.to_string() << "\n";
      rep << summary_line(t.outside) << "\n";
      rep << t.mean.name << ": K=" << upto << " sum=(" << rat_row(t.mean.total) << ") max_tail_increment="
          << fmt(t.mean.max_tail_increment) << " verdict=" << to_string(t.mean.verdict) << "\n";
      rep << summary_line(t.variance) << "\n";
      append_section(out.data, "three-series (i)", to_csv(t.outside));
      append_section(out.data, "three-series (ii)", to_csv(t.mean));
      append_section(out.data, "three-series (iii)", to_csv(t.variance));
      verdict_line(check, passes(t.outside.verdict) && passes(t.mean.verdict) && passes(t.variance.verdict));
    } else if (check == "equivalence") {
      if (!cfg.compare) throw ValidationError("/check/checks: equivalence needs a compare sequence");
      const TripleSequence other = make_sequence(*cfg.compare, cfg.dimension);
      SeriesDiagnostics s;
      if (is_example_pair(cfg.sequence, *cfg.compare)) {
        std::optional<TailBound> tail = seq.tail_bounds().reduction_defect;
        if (!tail) tail = other.tail_bounds().reduction_defect;
        s = equivalence_defect([](std::size_t k) { return example_2_6_reduction_counts(k); }, upto, tail);
        rep << "counts from the closed form\n";
      } else {
        s = equivalence_defect([&](std::size_t k) { return seq.digits(k); },
                               [&](std::size_t k) { return other.digits(k); }, upto);
      }
      rep << summary_line(s) << "\n";
      append_section(out.data, "equivalence", to_csv(s));
      verdict_line(check, passes(s.verdict));
    }
  }
  rep << "overall: " << (all_pass ? "pass" : "FAIL") << "\n";
  out.report = rep.str();
  out.exit_code = all_pass ? kOk : kCheckFailed;
  return out;
}

CommandOutput cmd_spectrum(const RunConfig& cfg) {
  const TripleSequence seq = make_sequence(cfg.sequence, cfg.dimension);
  const auto& sc = cfg.spectrum;
  std::vector<std::size_t> milestones = sc.milestones;
  if (milestones.empty()) {
    for (std::size_t j = 1; j <= sc.levels; ++j) milestones.push_back(j);
  }
  KChooser chooser;
  if (sc.chooser == "windowed") {
    chooser = KChooser::windowed(sc.radius, sc.depth);
  } else if (sc.chooser == "table") {
    std::map<KChoiceKey, IntVector> table;
    for (const auto& e : sc.table) {
      if (e.lambda.size() != seq.dim() || e.k.size() != seq.dim()) {
        throw ValidationError("/spectrum/table: vectors must have " + std::to_string(seq.dim()) + " coordinates");
      }
      table[{IntVector(e.lambda), e.level}] = IntVector(e.k);
    }
    chooser = KChooser::from_table(std::move(table));
  }
  SpectrumOptions opts;
  opts.delta0 = sc.delta0;
  opts.max_elements = cfg.max_atoms;
  opts.tol = cfg.tol;
  const SpectrumLevels s = build_spectrum(seq, milestones, chooser, opts);

  CommandOutput out;
  std::ostringstream rep;
  rep << "chooser " << sc.chooser << ", levels " << s.levels.size() << ", k-choices " << s.k_choices.size();
  if (chooser.kind == KChooser::Kind::windowed) rep << ", window boundary hits " << s.window_exhausted;
  rep << "\n";
  rep << "level,milestone,size,atoms,exact,max_deviation\n";
  bool ok = true;
  for (std::size_t j = 0; j < s.levels.size(); ++j) {
    const std::size_t m = s.milestones[j];
    rep << j + 1 << "," << m << "," << s.levels[j].size() << ",";
    std::size_t atoms = 1;
    bool capped = false;
    for (std::size_t k = 1; k <= m && !capped; ++k) {
      const std::size_t nb = seq.digits(k).size();
      if (atoms > cfg.max_atoms / nb) capped = true;
      atoms *= nb;
    }
    if (capped) {
      rep << ">" << cfg.max_atoms << ",skipped,-\n";
      continue;
    }
    const DiscreteMeasure mu = mu_truncate(seq, m, cfg.max_atoms);
    const ExactnessReport e = spectrum_exactness(mu, s.levels[j], cfg.tol);
    ok = ok && e.exact;
    rep << mu.size() << "," << (e.exact ? "yes" : "no") << "," << fmt(e.deviation) << "\n";
  }
  out.report = rep.str();
  out.data = to_text(s);
  out.exit_code = ok ? kOk : kCheckFailed;
  return out;
}

CommandOutput cmd_qscan(const RunConfig& cfg) {
  const TripleSequence seq = make_sequence(cfg.sequence, cfg.dimension);
  const auto& qc = cfg.qscan;
  const std::size_t d = seq.dim();
  DigitSet lambda(d);
  std::string source;
  if (qc.spectrum_file) {
    std::ifstream in(*qc.spectrum_file, std::ios::binary);
    if (!in) throw ValidationError("/qscan/spectrum_file: cannot read '" + *qc.spectrum_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const SpectrumLevels s = parse_spectrum_text(buf.str());
    if (s.dim != d) throw ValidationError("/qscan/spectrum_file: spectrum dimension differs from the sequence");
    if (!s.levels.empty()) lambda = s.levels.back();
    source = "file, last level";
  } else if (qc.spectrum) {
    std::vector<IntVector> v;
    for (const auto& row : *qc.spectrum) {
      if (row.size() != d) throw ValidationError("/qscan/spectrum: vectors must have " + std::to_string(d) + " coordinates");
      v.emplace_back(row);
    }
    try {
      lambda = DigitSet::from_vectors(d, v);
    } catch (const DuplicateElement& e) {
      throw ValidationError(std::string("/qscan/spectrum: ") + e.what());
    }
    source = "inline";
  } else {
    lambda = closed_form_spectrum(seq, qc.truncation, cfg.max_atoms);
    source = "closed form, " + std::to_string(qc.truncation) + " levels";
  }

  const Rational pitch = cfg.grid_pitch ? *cfg.grid_pitch : Rational(BigInt(1), BigInt(100));
  const Rational span = (qc.hi - qc.lo) / pitch;
  const BigInt per_dim_big = -(-span).floor();  // ceil
  if (per_dim_big.bit_length() > 40) throw ResourceCapExceeded("qscan grid too large");
  const auto per_dim = static_cast<std::size_t>(per_dim_big.small_value());
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (total > qc.max_points / per_dim) {
      throw ResourceCapExceeded("qscan grid has more than " + std::to_string(qc.max_points) + " points");
    }
    total *= per_dim;
  }

  const DiscreteMeasure mu = mu_truncate(seq, qc.truncation, cfg.max_atoms);
  CommandOutput out;
  out.data = coord_header("xi", d) + ",Q\n";
  double qmin = 0.0;
  double qmax = 0.0;
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t rem = n;
    for (std::size_t i = d; i-- > 0;) {
      idx[i] = rem % per_dim;
      rem /= per_dim;
    }
    RatVector xi(d);
    for (std::size_t i = 0; i < d; ++i) xi[i] = qc.lo + pitch * Rational(BigInt(idx[i]));
    const double q = q_eval(mu, lambda, xi);
    if (n == 0 || q < qmin) qmin = q;
    if (n == 0 || q > qmax) qmax = q;
    out.data += rat_row(xi) + "," + fmt(q) + "\n";
  }
  std::ostringstream rep;
  rep << "mu_" << qc.truncation << " with " << mu.size() << " atoms; Lambda (" << source << ") with " << lambda.size()
      << " elements\n";
  rep << "grid [" << qc.lo.to_string() << ", " << qc.hi.to_string() << ")^" << d << " pitch " << pitch.to_string()
      << ": " << total << " points\n";
  rep << "Q min " << fmt(qmin) << " max " << fmt(qmax) << "\n";
  out.report = rep.str();
  return out;
}

CommandOutput cmd_sample(const RunConfig& cfg) {
  if (!cfg.seed) throw ValidationError("/seed: sampling needs a seed (config or --seed)");
  const TripleSequence seq = make_sequence(cfg.sequence, cfg.dimension);
  const PointSetSequence a = scaled_digit_sets(seq);
  PointSetSequence b = a;
  std::optional<TripleSequence> other;
  if (cfg.compare) {
    other = make_sequence(*cfg.compare, cfg.dimension);
    b = scaled_digit_sets(*other);
  }
  const auto& sc = cfg.sample;
  const std::size_t d = seq.dim();
  if (sc.draws > cfg.max_atoms) {
    throw ResourceCapExceeded("sample draws exceed the cap " + std::to_string(cfg.max_atoms));
  }
  const CouplingReport r = coupled_sample(a, b, cfg.upto, sc.draws, *cfg.seed, true);

  std::ostringstream rep;
  rep << (cfg.compare ? "coupled sample" : "single-sequence sample") << ", K=" << cfg.upto << ", draws=" << r.draws
      << ", seed=" << r.seed << "\n";
  rep << "k,#A,#A',exact_probability,mismatches,frequency,within_4_sigma\n";
  for (const auto& lv : r.levels) {
    const double p = lv.exact_probability.to_double();
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(r.draws));
    const bool within = p == 0.0 ? lv.mismatches == 0 : std::abs(lv.frequency - p) <= 4.0 * sigma;
    rep << lv.k << "," << lv.size_a << "," << lv.size_b << "," << lv.exact_probability.to_string() << ","
        << lv.mismatches << "," << fmt(lv.frequency) << "," << (within ? "yes" : "no") << "\n";
  }
  rep << "sum of exact probabilities " << r.exact_sum.to_string() << " ~ " << fmt(r.exact_sum.to_double())
      << ", empirical " << fmt(r.empirical_sum) << "\n";

  // histograms of the first coordinate of sum_{k <= K} X_k (and of the Y sums)
  const auto bins = static_cast<std::size_t>(sc.histogram_bins);
  const double nd = static_cast<double>(r.draws);
  auto histogram = [&](const std::vector<double>& sums, const std::string& label) {
    std::vector<std::size_t> hist(bins + 2, 0);  // below 0, [i, i+1), at least bins
    for (std::size_t n = 0; n < r.draws; ++n) {
      const double x = sums[n * d];
      if (x < 0.0) {
        ++hist[0];
      } else if (x >= static_cast<double>(bins)) {
        ++hist[bins + 1];
      } else {
        ++hist[1 + static_cast<std::size_t>(x)];
      }
    }
    rep << "first coordinate histogram, " << label << "\nbin,count,frequency\n";
    rep << "(-inf;0)," << hist[0] << "," << fmt(hist[0] / nd) << "\n";
    for (std::size_t i = 0; i < bins; ++i) {
      rep << "[" << i << ";" << i + 1 << ")," << hist[i + 1] << "," << fmt(hist[i + 1] / nd) << "\n";
    }
    rep << "[" << bins << ";inf)," << hist[bins + 1] << "," << fmt(hist[bins + 1] / nd) << "\n";
    rep << "mass outside [0, " << bins << "): " << fmt((hist[0] + hist[bins + 1]) / nd) << "\n";
  };
  histogram(r.sums_x, seq.name());
  if (cfg.compare) histogram(r.sums_y, other->name());

  CommandOutput out;
  out.report = rep.str();
  if (sc.write_draws) {
    out.data = "draw," + coord_header("x", d);
    if (cfg.compare) out.data += "," + coord_header("y", d);
    out.data += "\n";
    for (std::size_t n = 0; n < r.draws; ++n) {
      out.data += std::to_string(n);
      for (std::size_t i = 0; i < d; ++i) out.data += "," + fmt(r.sums_x[n * d + i]);
      if (cfg.compare) {
        for (std::size_t i = 0; i < d; ++i) out.data += "," + fmt(r.sums_y[n * d + i]);
      }
      out.data += "\n";
    }
  }
  return out;
}

CommandOutput cmd_equipos(const RunConfig& cfg) {
  const TripleSequence seq = make_sequence(cfg.sequence, cfg.dimension);
  const auto& ec = cfg.equipos;
  EquiPositivityOptions o;
  o.tail_starts = ec.tail_starts;
  o.depth = ec.depth;
  if (cfg.grid_pitch) o.x_pitch = *cfg.grid_pitch;
  o.y_radius = ec.y_radius ? *ec.y_radius : default_y_radius(ec.pcc_level);
  o.y_pitch = ec.y_pitch;
  o.k_window = ec.k_window;
  o.min_epsilon = ec.min_epsilon;
  o.pcc_level = ec.pcc_level;
  if (ec.transfer_from && !is_example_family(cfg.sequence)) {
    throw ValidationError("/equipos/transfer_from: the total-variation tail is only known for the example-2.6 family");
  }
  const EquiPositivityReport r = equi_positivity_scan(seq, o);
  const std::size_t d = seq.dim();

  std::ostringstream rep;
  rep << "x grid pitch " << r.x_pitch.to_string() << " (" << r.x_points << " points), y ball radius "
      << o.y_radius.to_string() << " pitch " << r.y_pitch.to_string() << " (" << r.y_points << " points), k window "
      << r.k_window << ", delta0 " << r.delta0.to_string() << "\n";
  rep << "start,depth_used,epsilon\n";
  for (const auto& t : r.tails) rep << t.start << "," << t.depth_used << "," << fmt(t.epsilon) << "\n";
  rep << "status " << (r.witnessed ? "witnessed" : "FAILED") << ", epsilon0 " << fmt(r.epsilon0) << "\n";
  if (r.failed_at) rep << "failed at start " << *r.failed_start << ", x = (" << rat_row(*r.failed_at) << ")\n";
  if (r.window_exhausted) rep << "window boundary hits " << r.window_exhausted << "\n";
  if (r.witnesses_stable_from) rep << "witnesses stable from start " << *r.witnesses_stable_from << "\n";
  if (r.proof) {
    const ProofBound& p = *r.proof;
    rep << "proof bound: r " << fmt(p.r_theta) << ", a " << fmt(p.a) << ", C in [" << fmt(p.c.lower) << ", "
        << fmt(p.c.upper) << "], J " << p.j << ", bound " << fmt(p.bound) << ", truncation error "
        << fmt(p.truncation_error) << "\n";
  }
  int code = r.witnessed ? kOk : kCheckFailed;
  if (ec.transfer_from && r.witnessed) {
    const double tv = 2.0 * example_2_6_defect_tail(*ec.transfer_from);
    rep << "total variation tail at K=" << *ec.transfer_from << ": " << fmt(tv) << "\n";
    try {
      rep << "transferred bound " << fmt(perturbation_bound(tv, r.epsilon0)) << "\n";
    } catch (const BoundViolation&) {
      rep << "transferred bound: tail " << fmt(tv) << " is not below epsilon0\n";
      code = kCheckFailed;
    }
  }

  CommandOutput out;
  out.report = rep.str();
  out.exit_code = code;
  out.data = "start," + coord_header("x", d) + "," + coord_header("k", d) + ",value\n";
  for (const auto& t : r.tails) {
    for (const auto& w : t.witnesses) {
      out.data += std::to_string(t.start) + "," + rat_row(w.x) + "," + int_row(w.k.view()) + "," + fmt(w.value) + "\n";
    }
  }
  return out;
}

CommandOutput cmd_builtins() {
  CommandOutput out;
  out.report = "name,version,description\n";
  for (const auto& b : builtin_catalog()) out.report += b.name + "," + b.version + "," + b.description + "\n";
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"specconv: spectrality checks for infinite convolutions"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_atoms;
  std::optional<std::string> grid_pitch;
  std::optional<double> tol;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_path, "write the data artifact here instead of stdout");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--max-atoms", max_atoms, "cap on atoms and set sizes");
    sub->add_option("--grid-pitch", grid_pitch, "grid pitch as p/q");
    sub->add_option("--tol", tol, "unitarity tolerance");
  };
  struct Sub {
    const char* name;
    const char* help;
    CommandOutput (*fn)(const RunConfig&);
  };
  const Sub subs[] = {
      {"check", "run the condition checks", cmd_check},
      {"spectrum", "build a candidate spectrum level by level", cmd_spectrum},
      {"qscan", "evaluate Q on a rational grid", cmd_qscan},
      {"sample", "sample partial sums with a coupling", cmd_sample},
      {"equipos", "scan tails for equi-positivity", cmd_equipos},
  };
  std::vector<CLI::App*> handles;
  for (const auto& s : subs) {
    handles.push_back(app.add_subcommand(s.name, s.help));
    add_common(handles.back());
  }
  CLI::App* list = app.add_subcommand("builtins", "list the built-in sequences");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  if (list->parsed()) {
    out << cmd_builtins().report;
    return kOk;
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::size_t which = 0;
  while (!handles[which]->parsed()) ++which;
  int code = kOk;
  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw ValidationError("cannot read config file '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    RunConfig cfg = parse_config(buf.str());
    if (seed) cfg.seed = *seed;
    if (max_atoms) cfg.max_atoms = *max_atoms;
    if (tol) cfg.tol = *tol;
    if (out_path) cfg.output = *out_path;
    if (grid_pitch) {
      try {
        cfg.grid_pitch = Rational::parse(*grid_pitch);
      } catch (const std::exception&) {
        throw ValidationError("--grid-pitch: not a rational: '" + *grid_pitch + "'");
      }
      if (cfg.grid_pitch->sign() <= 0) throw ValidationError("--grid-pitch: must be positive");
    }
    if (!(cfg.tol > 0.0)) throw ValidationError("--tol: must be positive");

    CommandOutput res = subs[which].fn(cfg);
    out << "# specconv " << subs[which].name << "\n";
    out << "# config-hash " << config_hash(cfg) << "\n";
    if (cfg.seed) out << "# seed " << *cfg.seed << "\n";
    out << res.report;
    if (!res.data.empty()) {
      if (cfg.output) {
        std::ofstream f(*cfg.output, std::ios::binary);
        if (!f) throw ValidationError("cannot write '" + *cfg.output + "'");
        f << res.data;
        out << "# data written to " << *cfg.output << "\n";
      } else {
        out << "## data\n" << res.data;
      }
    }
    code = res.exit_code;
  } catch (const ParseError& e) {
    err << "config parse error: " << e.what() << "\n";
    code = kConfigError;
  } catch (const ValidationError& e) {
    err << "config error: " << e.what() << "\n";
    code = kConfigError;
  } catch (const ResourceCapExceeded& e) {
    err << "resource cap: " << e.what() << "\n";
    code = kResourceCap;
  } catch (const TruncationTooLarge& e) {
    err << "resource cap: " << e.what() << "\n";
    code = kResourceCap;
  } catch (const DimensionTooLarge& e) {
    err << "resource cap: " << e.what() << "\n";
    code = kResourceCap;
  } catch (const TripleInvalid& e) {
    err << "check failed: " << e.what() << "\n";
    code = kCheckFailed;
  } catch (const BoundViolation& e) {
    err << "check failed: " << e.what() << "\n";
    code = kCheckFailed;
  } catch (const specconv::Error& e) {
    err << "error: " << e.what() << "\n";
    code = kConfigError;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", secs);
  err << "wall-time " << wall << " s\n";
  return code;
}

}  // namespace specconv::cli
