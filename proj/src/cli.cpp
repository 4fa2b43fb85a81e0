#include "hmf/cli.hpp"

#include "hmf/harness.hpp"
#include "hmf/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace hmf {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  int n = 4;
  int p = 1;
  std::string group = "full";
  int level = 1;
  int maxlen = -1;  // -1: 6 for cosets/eval, 8 for verify/limits
  int box = 3;
  int s = 2;
  int t = 2;
  std::string m;
  double h = 0.0;
  std::uint64_t seed = HarnessConfig{}.seed;
  bool deterministic = false;
  std::string out = "json";
  std::string outfile;
  std::vector<std::string> thresholds;

  std::string series = "scalar";
  std::string points_file;
  std::vector<std::string> xs;
  std::vector<std::string> ys;
  std::vector<double> tvalues{10.0, 30.0, 100.0};

  bool all = false;
  std::vector<std::string> checks;
  bool verify_keys = false;
};

void add_common(CLI::App& cmd, Options& o) {
  cmd.add_option("--n", o.n, "algebra dimension")->capture_default_str();
  cmd.add_option("--p", o.p, "number of translation directions")->capture_default_str();
  cmd.add_option("--group", o.group, "group variant")
      ->check(CLI::IsMember({"full", "principal", "upper0", "lower0", "theta"}))
      ->capture_default_str();
  cmd.add_option("--level", o.level, "congruence level N")->capture_default_str();
  cmd.add_option("--maxlen", o.maxlen, "coset word-length limit L (default 6; 8 for verify, limits)");
  cmd.add_option("--box", o.box, "lattice box radius R")->capture_default_str();
  cmd.add_option("--s", o.s, "weight")->capture_default_str();
  cmd.add_option("--t", o.t, "right weight (biregular)")->capture_default_str();
  cmd.add_option("--m", o.m, "multi-index, e.g. 3,0,0,0");
  cmd.add_option("--h", o.h, "finite-difference step (0: default for the order)");
  cmd.add_option("--seed", o.seed, "random seed")->capture_default_str();
  cmd.add_flag("--deterministic", o.deterministic, "zero timings for reproducible output");
  cmd.add_option("--out", o.out, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd.add_option("--outfile", o.outfile, "write output here instead of stdout");
}

GroupDescriptor make_group(const Options& o) {
  try {
    return GroupDescriptor::make(o.n, o.p, parse_group_variant(o.group), o.level);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

SeriesSpec make_spec(const Options& o) {
  SeriesSpec spec;
  spec.group = make_group(o);
  spec.s = o.s;
  spec.t = o.t;
  if (!o.m.empty()) {
    try {
      spec.m = MultiIndex::parse(o.m);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  spec.word_limit = o.maxlen;
  spec.box_radius = o.box;
  return spec;
}

HarnessConfig make_config(const Options& o) {
  HarnessConfig cfg;
  cfg.seed = o.seed;
  cfg.deterministic = o.deterministic;
  for (const auto& a : o.thresholds) {
    try {
      cfg.thresholds.set(a);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  return cfg;
}

void emit(const Options& o, const std::string& text) {
  if (o.outfile.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.outfile);
  if (!f) throw std::runtime_error("cannot open " + o.outfile);
  f << text;
}

std::string reports_output(const Options& o, const std::vector<VerificationReport>& reports) {
  if (o.out == "csv") {
    std::ostringstream out;
    out << "check,status,measured,comparison,threshold,seconds,detail\n";
    for (const auto& r : reports) {
      auto detail = r.detail;
      for (auto& ch : detail) {
        if (ch == '"') ch = '\'';
      }
      out << r.check << "," << to_string(r.status) << "," << r.measured << "," << to_string(r.comparison) << ","
          << r.threshold << "," << r.seconds << ",\"" << detail << "\"\n";
    }
    return out.str();
  }
  ojson arr = ojson::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

int run_cosets(const Options& o) {
  const auto g = make_group(o);
  EnumerationOptions eo;
  eo.verify_keys = o.verify_keys;
  const auto reps = enumerate_cosets(g, o.maxlen, eo);
  if (o.out == "csv") {
    emit(o, cosets_csv(reps));
  } else {
    ojson arr = ojson::array();
    for (const auto& r : reps) arr.push_back(to_json(r));
    emit(o, arr.dump(2) + "\n");
  }
  return 0;
}

std::vector<double> parse_point(const std::string& s) {
  auto rows = parse_points(s);
  if (rows.size() != 1) throw UsageError("bad point '" + s + "'");
  return rows.front();
}

int run_eval(const Options& o) {
  const auto kind = [&] {
    try {
      return parse_series_kind(o.series);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  const auto spec = make_spec(o);
  const int n = o.n;

  std::vector<std::pair<std::vector<double>, std::vector<double>>> pts;
  if (!o.points_file.empty()) {
    std::ifstream f(o.points_file);
    if (!f) throw UsageError("cannot read points file " + o.points_file);
    std::stringstream buf;
    buf << f.rdbuf();
    for (auto& row : parse_points(buf.str())) {
      if (row.size() == static_cast<std::size_t>(2 * n) && kind == SeriesKind::Biregular) {
        pts.emplace_back(std::vector<double>(row.begin(), row.begin() + n), std::vector<double>(row.begin() + n, row.end()));
      } else {
        pts.emplace_back(row, std::vector<double>{});
      }
    }
  }
  for (std::size_t i = 0; i < o.xs.size(); ++i) {
    pts.emplace_back(parse_point(o.xs[i]), i < o.ys.size() ? parse_point(o.ys[i]) : std::vector<double>{});
  }
  if (kind == SeriesKind::Zeta) pts = {{{}, {}}};
  if (pts.empty()) throw UsageError("eval needs --x or --points");

  std::vector<EvaluatedPoint> rows;
  for (auto& [xv, yv] : pts) {
    EvaluatedPoint e;
    e.x = xv;
    e.y = yv;
    if (kind != SeriesKind::Zeta && xv.size() != static_cast<std::size_t>(n)) {
      throw UsageError("point has " + std::to_string(xv.size()) + " components, expected " + std::to_string(n));
    }
    switch (kind) {
      case SeriesKind::Scalar: e.result = scalar_eisenstein(VectorF(xv), spec); break;
      case SeriesKind::Vector: e.result = vector_eisenstein(VectorF(xv), spec); break;
      case SeriesKind::OddWeight: e.result = odd_weight_eisenstein(VectorF(xv), spec); break;
      case SeriesKind::Biregular: {
        if (e.y.empty()) e.y = e.x;
        if (e.y.size() != xv.size()) throw UsageError("x and y differ in dimension");
        e.result = biregular_eisenstein(VectorF(xv), VectorF(e.y), spec);
        break;
      }
      case SeriesKind::LatticeG:
      case SeriesKind::Zeta: {
        if (!spec.m) throw UsageError("series " + o.series + " needs --m");
        e.result.value = kind == SeriesKind::Zeta ? zeta_m(*spec.m, n, o.box)
                                                  : lattice_G_m(HalfSpacePoint(VectorF(xv)), *spec.m, n, o.box);
        break;
      }
    }
    rows.push_back(std::move(e));
  }
  if (o.out == "csv") {
    emit(o, series_csv(rows, kind == SeriesKind::Zeta ? 0 : n));
  } else {
    ojson arr = ojson::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    emit(o, arr.dump(2) + "\n");
  }
  return 0;
}

int run_verify(const Options& o) {
  if (!o.all && o.checks.empty()) throw UsageError("verify needs --all or --check NAME");
  const auto& known = check_names();
  for (const auto& c : o.checks) {
    if (std::find(known.begin(), known.end(), c) == known.end()) throw UsageError("unknown check '" + c + "'");
  }
  make_group(o);  // validates n, p
  SuiteOptions so;
  so.n = o.n;
  so.p = o.p;
  so.word_limit = o.maxlen;
  so.box_radius = o.box;
  so.tvalues = o.tvalues;
  const auto cfg = make_config(o);
  std::vector<VerificationReport> reports;
  for (const auto& c : o.all ? std::vector<std::string>{"all"} : o.checks) {
    for (auto& r : run_named_check(c, so, cfg)) reports.push_back(std::move(r));
  }
  emit(o, reports_output(o, reports));
  return suite_exit_code(reports);
}

int run_limits(const Options& o) {
  SeriesKind kind;
  try {
    kind = parse_series_kind(o.series);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const auto reports = check_limits(kind, make_spec(o), o.tvalues, make_config(o));
  emit(o, reports_output(o, reports));
  return suite_exit_code(reports);
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Hypercomplex modular forms: cosets, series evaluation and verification"};
  app.set_help_flag("--help", "print help");  // -h would clash with --h
  app.require_subcommand(1);
  Options o;

  auto* cosets = app.add_subcommand("cosets", "enumerate coset representatives");
  add_common(*cosets, o);
  cosets->add_flag("--verify-keys", o.verify_keys, "cross-check keys against same_coset");

  auto* eval = app.add_subcommand("eval", "evaluate a truncated series");
  add_common(*eval, o);
  eval->add_option("--series", o.series, "scalar|vector|oddweight|biregular|Gm|zeta")->capture_default_str();
  eval->add_option("--points", o.points_file, "file with one point per line (2n numbers: x then y)");
  eval->add_option("--x", o.xs, "evaluation point, comma separated");
  eval->add_option("--y", o.ys, "second point for biregular series");

  auto* verify = app.add_subcommand("verify", "run verification checks");
  add_common(*verify, o);
  verify->add_flag("--all", o.all, "run every check");
  verify->add_option("--check", o.checks, "check name")->check(CLI::IsMember(check_names()));
  verify->add_option("--threshold", o.thresholds, "override, name=value");
  verify->add_option("--tvalues", o.tvalues, "limit evaluation heights");

  auto* limits = app.add_subcommand("limits", "limit checks at x = t e_n");
  add_common(*limits, o);
  limits->add_option("--series", o.series, "scalar|oddweight|biregular")->capture_default_str();
  limits->add_option("--tvalues", o.tvalues, "increasing heights")->capture_default_str();
  limits->add_option("--threshold", o.thresholds, "override, name=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (o.maxlen < 0) o.maxlen = (verify->parsed() || limits->parsed()) ? 8 : 6;

  try {
    if (cosets->parsed()) return run_cosets(o);
    if (eval->parsed()) return run_eval(o);
    if (verify->parsed()) return run_verify(o);
    if (limits->parsed()) return run_limits(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SpecViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace hmf
