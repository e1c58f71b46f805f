#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ghost/analysis.hpp"
#include "ghost/model_spec.hpp"
#include "ghost/newton.hpp"
#include "ghost/slope_io.hpp"

namespace {

using ghost::Rational;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

struct Args {
  std::string model, weight, range, external, points, out, config;
  std::string format = "table";
  long long count = 0, n = 0, upto = 0;
  bool wadic = false;
};

ghost::SlopeOptions slope_options() {
  ghost::SlopeOptions opts;
  if (const char* t = std::getenv("GHOST_THREADS")) {
    int v = std::atoi(t);
    if (v > 0) opts.threads = v;
  }
  return opts;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f.good()) throw std::invalid_argument("cannot open output path: " + out_path);
  f << text;
}

std::pair<long long, long long> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos)
    throw std::invalid_argument("range must look like a..b");
  long long a = std::stoll(text.substr(0, dots));
  long long b = std::stoll(text.substr(dots + 2));
  if (b < a) throw std::invalid_argument("invalid range: " + text);
  return {a, b};
}

// Fills options that were not given on the command line from a JSON config.
void apply_config(const CLI::App* cmd, Args& a) {
  if (a.config.empty()) return;
  std::ifstream in(a.config);
  if (!in.good()) throw std::invalid_argument("cannot open config file: " + a.config);
  ordered_json j = ordered_json::parse(in);
  auto fill_str = [&](const char* key, std::string& slot) {
    auto* opt = cmd->get_option_no_throw(std::string("--") + key);
    if (j.contains(key) && (!opt || opt->count() == 0)) slot = j.at(key).get<std::string>();
  };
  auto fill_ll = [&](const char* key, long long& slot) {
    auto* opt = cmd->get_option_no_throw(std::string("--") + key);
    if (j.contains(key) && (!opt || opt->count() == 0)) slot = j.at(key).get<long long>();
  };
  fill_str("model", a.model);
  fill_str("weight", a.weight);
  fill_str("range", a.range);
  fill_str("external", a.external);
  fill_str("points", a.points);
  fill_str("format", a.format);
  fill_str("out", a.out);
  fill_ll("count", a.count);
  fill_ll("n", a.n);
  fill_ll("up-to", a.upto);
}

std::string polygon_text(const ghost::NewtonPolygon& np, const std::string& format) {
  if (format == "json") {
    ordered_json j;
    ordered_json vs = ordered_json::array();
    for (const auto& [x, y] : np.vertices) vs.push_back({x, ghost::rational_to_string(y)});
    ordered_json ss = ordered_json::array();
    for (const auto& [s, m] : np.slopes) ss.push_back({ghost::rational_to_string(s), m});
    j["vertices"] = vs;
    j["slopes"] = ss;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  if (format == "csv") {
    os << "x,y\n";
    for (const auto& [x, y] : np.vertices) os << x << "," << ghost::rational_to_string(y) << "\n";
    return os.str();
  }
  os << "vertices:";
  for (const auto& [x, y] : np.vertices) os << " (" << x << ", " << ghost::rational_to_string(y) << ")";
  os << "\nslopes:";
  for (const auto& [s, m] : np.slopes)
    os << " " << ghost::rational_to_string(s) << " x" << m;
  os << "\n";
  return os.str();
}

int cmd_dims(const Args& a) {
  auto model = ghost::load_model(a.model);
  auto [lo, hi] = parse_range(a.range.empty() ? "0..10" : a.range);
  std::ostringstream os;
  if (a.format == "json") {
    ordered_json rows = ordered_json::array();
    for (long long n = lo; n <= hi; ++n)
      rows.push_back({{"n", n},
                      {"k", model.params().k_of(n)},
                      {"d", model.d(n)},
                      {"dnew", model.dnew(n)},
                      {"dp", model.dp(n)}});
    os << ordered_json{{"model", model.description()}, {"rows", rows}}.dump(2) << "\n";
  } else if (a.format == "csv") {
    os << "n,k,d,dnew,dp\n";
    for (long long n = lo; n <= hi; ++n)
      os << n << "," << model.params().k_of(n) << "," << model.d(n) << "," << model.dnew(n) << ","
         << model.dp(n) << "\n";
  } else {
    os << "n\tk\td\td^new\td_p\n";
    for (long long n = lo; n <= hi; ++n)
      os << n << "\t" << model.params().k_of(n) << "\t" << model.d(n) << "\t" << model.dnew(n)
         << "\t" << model.dp(n) << "\n";
  }
  write_output(a.out, os.str());
  return kExitOk;
}

int cmd_coeffs(const Args& a) {
  auto model = ghost::load_model(a.model);
  ghost::GhostSeries series(model);
  ordered_json arr = ordered_json::array();
  for (long long i = 0; i <= a.upto; ++i) {
    auto c = series.coefficient(i);
    ordered_json zeros = ordered_json::array();
    for (const auto& [n, mult] : c->zeros) zeros.push_back({n, mult});
    arr.push_back({{"i", i}, {"zeros", zeros}, {"degree", c->degree}});
  }
  ordered_json j{{"model", model.description()}, {"coefficients", arr}};
  write_output(a.out, j.dump(2) + "\n");
  return kExitOk;
}

ghost::SlopeFile compute_slope_file(const Args& a, const ghost::DimensionModel& model,
                                    ghost::SlopeSequence& seq_out) {
  ghost::GhostSeries series(model);
  ghost::WeightPoint w = ghost::parse_weight(model.params(), a.weight);
  seq_out = ghost::ghost_slopes(series, w, a.count, slope_options());
  ghost::SlopeFile f;
  f.p = model.params().p;
  f.model = model.description();
  f.weight = ghost::weight_to_string(w);
  f.count = seq_out.count;
  f.slopes = seq_out.slopes;
  return f;
}

int cmd_slopes(const Args& a) {
  auto model = ghost::load_model(a.model);
  ghost::SlopeSequence seq;
  ghost::SlopeFile f = compute_slope_file(a, model, seq);
  std::ostringstream os;
  if (a.format == "json") {
    os << ghost::emit_slope_file(f);
  } else if (a.format == "csv") {
    os << "i,slope\n";
    for (size_t i = 0; i < f.slopes.size(); ++i)
      os << (i + 1) << "," << ghost::rational_to_string(f.slopes[i]) << "\n";
  } else {
    os << "model " << f.model << "  weight " << f.weight << "  certified "
       << (seq.certified ? "yes" : "no") << "\n";
    for (size_t i = 0; i < f.slopes.size(); ++i)
      os << (i + 1) << "\t" << ghost::rational_to_string(f.slopes[i]) << "\n";
  }
  write_output(a.out, os.str());
  return kExitOk;
}

int cmd_np(const Args& a) {
  if (!a.points.empty()) {
    std::ifstream in(a.points);
    if (!in.good()) throw std::invalid_argument("cannot open points file: " + a.points);
    ordered_json j = ordered_json::parse(in);
    std::vector<std::pair<long long, ghost::ExtRational>> pts;
    for (const auto& row : j) {
      long long x = row.at(0).get<long long>();
      std::string ys = row.at(1).get<std::string>();
      pts.push_back({x, ys == "inf" ? ghost::ExtRational::infinity()
                                    : ghost::ExtRational(ghost::rational_from_string(ys))});
    }
    write_output(a.out, polygon_text(ghost::lower_hull(pts), a.format));
    return kExitOk;
  }
  auto model = ghost::load_model(a.model);
  ghost::GhostSeries series(model);
  if (a.wadic) {
    auto seq = ghost::wadic_slopes(series, a.count, slope_options());
    auto rep = ghost::wadic_distinct_report(series, a.count, slope_options());
    std::ostringstream os;
    if (a.format == "json") {
      ordered_json arr = ordered_json::array();
      for (const auto& s : seq.slopes) arr.push_back(ghost::rational_to_string(s));
      os << ordered_json{{"model", model.description()},
                         {"wadic_slopes", arr},
                         {"certified", seq.certified},
                         {"distinct", rep.distinct},
                         {"all_distinct", rep.all_distinct}}
                .dump(2)
         << "\n";
    } else if (a.format == "csv") {
      os << "i,slope\n";
      for (size_t i = 0; i < seq.slopes.size(); ++i)
        os << (i + 1) << "," << ghost::rational_to_string(seq.slopes[i]) << "\n";
    } else {
      os << "w-adic slopes (certified " << (seq.certified ? "yes" : "no") << "), " << rep.distinct
         << " distinct of " << rep.count << ":\n";
      for (size_t i = 0; i < seq.slopes.size(); ++i)
        os << (i + 1) << "\t" << ghost::rational_to_string(seq.slopes[i]) << "\n";
    }
    write_output(a.out, os.str());
    return kExitOk;
  }
  ghost::WeightPoint w = ghost::parse_weight(model.params(), a.weight);
  auto np = ghost::ghost_polygon(series, w, a.count, slope_options());
  write_output(a.out, polygon_text(np, a.format));
  return kExitOk;
}

int cmd_dist(const Args& a) {
  auto model = ghost::load_model(a.model);
  ghost::GhostSeries series(model);
  auto r = ghost::distribution_report(series, a.n, slope_options());
  std::ostringstream os;
  if (a.format == "json") {
    os << ordered_json{{"model", model.description()},
                       {"n", r.n},
                       {"k", r.k},
                       {"normalizer", ghost::rational_to_string(r.normalizer)},
                       {"mass_low", ghost::rational_to_string(r.mass_low)},
                       {"mass_at_half", ghost::rational_to_string(r.mass_at_half)},
                       {"mass_high", ghost::rational_to_string(r.mass_high)},
                       {"ks_low", ghost::rational_to_string(r.ks_low)},
                       {"ks_high", ghost::rational_to_string(r.ks_high)},
                       {"limit_low", ghost::rational_to_string(r.limit_low)},
                       {"limit_half", ghost::rational_to_string(r.limit_half)},
                       {"limit_high", ghost::rational_to_string(r.limit_high)}}
              .dump(2)
       << "\n";
  } else {
    os << "n=" << r.n << " k=" << r.k << " normalizer=" << ghost::rational_to_string(r.normalizer)
       << "\n";
    os << "block\tmass\tlimit\tKS\n";
    os << "low\t" << ghost::rational_to_string(r.mass_low) << "\t"
       << ghost::rational_to_string(r.limit_low) << "\t" << ghost::rational_to_string(r.ks_low)
       << "\n";
    os << "half\t" << ghost::rational_to_string(r.mass_at_half) << "\t"
       << ghost::rational_to_string(r.limit_half) << "\t-\n";
    os << "high\t" << ghost::rational_to_string(r.mass_high) << "\t"
       << ghost::rational_to_string(r.limit_high) << "\t" << ghost::rational_to_string(r.ks_high)
       << "\n";
  }
  write_output(a.out, os.str());
  return kExitOk;
}

int cmd_gouvea(const Args& a) {
  auto model = ghost::load_model(a.model);
  ghost::GhostSeries series(model);
  auto r = ghost::gouvea_check(series, a.n, slope_options());
  std::ostringstream os;
  if (a.format == "json") {
    os << ordered_json{{"model", model.description()},
                       {"n", r.n},
                       {"k", r.k},
                       {"ratio_old", ghost::rational_to_string(r.ratio_old)},
                       {"ratio_classical", ghost::rational_to_string(r.ratio_classical)},
                       {"limit_old", ghost::rational_to_string(r.limit_old)},
                       {"limit_classical", ghost::rational_to_string(r.limit_classical)},
                       {"buzzard_bound", r.buzzard_bound}}
              .dump(2)
       << "\n";
  } else {
    os << "n=" << r.n << " k=" << r.k << "\n"
       << "s_d(n)/k = " << ghost::rational_to_string(r.ratio_old)
       << "  (limit " << ghost::rational_to_string(r.limit_old) << ")\n"
       << "s_dp(n)/k = " << ghost::rational_to_string(r.ratio_classical) << "  (limit "
       << ghost::rational_to_string(r.limit_classical) << ")\n"
       << "buzzard bound s_d <= (k-1)/(p+1): " << (r.buzzard_bound ? "holds" : "FAILS") << "\n";
  }
  write_output(a.out, os.str());
  return kExitOk;
}

int cmd_ss(const Args& a) {
  auto model = ghost::load_model(a.model);
  ghost::GhostSeries series(model);
  auto r = ghost::semistable_check(series, a.n, slope_options());
  std::ostringstream os;
  if (a.format == "json") {
    os << ordered_json{{"model", model.description()},
                       {"n", r.n},
                       {"vacuous", r.vacuous},
                       {"break_at_d", r.break_at_d},
                       {"break_at_dsum", r.break_at_dsum},
                       {"no_interior_vertex", r.no_interior_vertex},
                       {"slope", r.vacuous ? "-" : ghost::rational_to_string(r.slope)},
                       {"predicted", r.vacuous ? "-" : ghost::rational_to_string(r.predicted)},
                       {"deviation", r.vacuous ? "-" : ghost::rational_to_string(r.deviation)}}
              .dump(2)
       << "\n";
  } else if (r.vacuous) {
    os << "n=" << r.n << ": d^new(n) = 0, vacuous pass\n";
  } else {
    os << "n=" << r.n << ": breakpoints at d(n) and d(n)+d^new(n): "
       << (r.break_at_d && r.break_at_dsum && r.no_interior_vertex ? "present" : "MISSING")
       << "\nsemistable slope " << ghost::rational_to_string(r.slope) << ", predicted center "
       << ghost::rational_to_string(r.predicted) << ", deviation "
       << ghost::rational_to_string(r.deviation) << "\n";
  }
  write_output(a.out, os.str());
  return r.passed() ? kExitOk : kExitVerificationFailure;
}

int cmd_ap(const Args& a) {
  auto model = ghost::load_model(a.model);
  ghost::GhostSeries series(model);
  ghost::WeightPoint w = ghost::parse_weight(model.params(), a.weight);
  auto params = ghost::ap_parameters(model, w);
  auto seq = ghost::ghost_slopes(series, w, a.count, slope_options());
  auto rep = ghost::ap_verify(seq, params);
  std::ostringstream os;
  if (a.format == "json") {
    ordered_json viols = ordered_json::array();
    for (const auto& v : rep.violations)
      viols.push_back({{"i", v.i},
                       {"got", ghost::rational_to_string(v.got)},
                       {"expected", ghost::rational_to_string(v.expected)}});
    os << ordered_json{{"model", model.description()},
                       {"weight", ghost::weight_to_string(w)},
                       {"Q", params.Q},
                       {"Q_r", params.Q_r},
                       {"r", params.r},
                       {"common_difference", ghost::rational_to_string(params.common_difference)},
                       {"checked_range", {rep.i_lo + 1, rep.i_hi}},
                       {"violations", viols},
                       {"verified", rep.verified}}
              .dump(2)
       << "\n";
  } else {
    os << "Q = " << params.Q << ", Q_r = " << params.Q_r << ", r = " << params.r
       << ", common difference D = " << ghost::rational_to_string(params.common_difference) << "\n"
       << "shift identity s_{i+Q_r} = s_i + D checked for " << rep.i_lo << " < i <= " << rep.i_hi
       << ": " << (rep.verified ? "verified" : "FAILED") << "\n";
    for (const auto& v : rep.violations)
      os << "  violation at i=" << v.i << ": got " << ghost::rational_to_string(v.got)
         << ", expected " << ghost::rational_to_string(v.expected) << "\n";
  }
  write_output(a.out, os.str());
  return rep.verified ? kExitOk : kExitVerificationFailure;
}

int cmd_axioms(const Args& a) {
  auto model = ghost::load_model(a.model);
  auto [lo, hi] = parse_range(a.range.empty() ? "-20..60" : a.range);
  auto r = ghost::verify_axioms(model, lo, hi);
  std::ostringstream os;
  if (a.format == "json") {
    os << ordered_json{{"model", model.description()},
                       {"window", {lo, hi}},
                       {"nd_d", r.nd_d},
                       {"nd_dsum", r.nd_dsum},
                       {"nd_dp", r.nd_dp},
                       {"ql_d", r.ql_d},
                       {"ql_dnew", r.ql_dnew},
                       {"ql_dsum", r.ql_dsum},
                       {"ql_dp", r.ql_dp},
                       {"growth", r.growth},
                       {"A", ghost::rational_to_string(r.A)},
                       {"B", ghost::rational_to_string(r.B)},
                       {"B_equals_pminus1_A", r.b_is_pminus1_a},
                       {"failures", r.failures},
                       {"all_pass", r.all_pass()}}
              .dump(2)
       << "\n";
  } else {
    os << "window [" << lo << ", " << hi << "]\n"
       << "(ND) d: " << (r.nd_d ? "ok" : "FAIL") << "  d+d^new: " << (r.nd_dsum ? "ok" : "FAIL")
       << "  d_p: " << (r.nd_dp ? "ok" : "FAIL") << "\n"
       << "(QL) d: " << (r.ql_d ? "ok" : "FAIL") << "  d^new: " << (r.ql_dnew ? "ok" : "FAIL")
       << "  d+d^new: " << (r.ql_dsum ? "ok" : "FAIL") << "  d_p: " << (r.ql_dp ? "ok" : "FAIL")
       << "\n"
       << "(G): " << (r.growth ? "ok" : "FAIL") << "\n"
       << "A = " << ghost::rational_to_string(r.A) << ", B = " << ghost::rational_to_string(r.B)
       << ", B = (p-1)A: " << (r.b_is_pminus1_a ? "yes" : "no") << "\n";
    for (const auto& f : r.failures) os << "  " << f << "\n";
  }
  write_output(a.out, os.str());
  return r.all_pass() ? kExitOk : kExitVerificationFailure;
}

int cmd_compare(const Args& a) {
  auto model = ghost::load_model(a.model);
  ghost::SlopeFile external = ghost::read_slope_file(a.external);
  Args args = a;
  if (args.weight.empty()) args.weight = external.weight;
  if (args.count == 0) args.count = external.count;
  ghost::SlopeSequence seq;
  ghost::SlopeFile computed = compute_slope_file(args, model, seq);
  auto rep = ghost::compare_slopes(computed.slopes, external.slopes);
  std::ostringstream os;
  os << "compared " << rep.compared << " slopes: " << (rep.all_match ? "match" : "MISMATCH")
     << "\n";
  if (!rep.all_match) os << "first mismatch at index " << rep.first_mismatch << "\n";
  if (!rep.note.empty()) os << rep.note << "\n";
  write_output(a.out, os.str());
  return rep.all_match ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ghost: abstract ghost series, Newton polygons and slope analysis"};
  app.require_subcommand(1);

  Args a;
  auto add_common = [&](CLI::App* cmd, bool with_weight, bool with_count) {
    cmd->add_option("--model", a.model, "model descriptor (inline, JSON, or path)");
    cmd->add_option("--format", a.format, "output format: table|json|csv");
    cmd->add_option("--out", a.out, "write output to a file");
    cmd->add_option("--config", a.config, "JSON config supplying unset options");
    if (with_weight) cmd->add_option("--weight", a.weight, "int:K | boundary:V | near:K,ALPHA");
    if (with_count) cmd->add_option("--count", a.count, "number of slopes");
    return cmd;
  };

  auto* dims = add_common(app.add_subcommand("dims", "dimension table over an n-range"), false, false);
  dims->add_option("--range", a.range, "n range a..b");
  auto* coeffs = add_common(app.add_subcommand("coeffs", "ghost coefficient dump"), false, false);
  coeffs->add_option("--up-to", a.upto, "largest coefficient index");
  auto* slopes = add_common(app.add_subcommand("slopes", "certified slopes at a weight"), true, true);
  auto* np = add_common(app.add_subcommand("np", "Newton polygon"), true, true);
  np->add_flag("--wadic", a.wadic, "w-adic polygon (hull of (i, deg g_i))");
  np->add_option("--points", a.points, "raw point list file [[x,\"y\"],...]");
  auto* dist = add_common(app.add_subcommand("dist", "slope distribution report"), false, false);
  dist->add_option("--n", a.n, "weight index n");
  auto* gouvea = add_common(app.add_subcommand("gouvea", "highest old/classical slope ratios"), false, false);
  gouvea->add_option("--n", a.n, "weight index n");
  auto* ss = add_common(app.add_subcommand("ss", "semistable breakpoint check"), false, false);
  ss->add_option("--n", a.n, "weight index n");
  auto* ap = add_common(app.add_subcommand("ap", "arithmetic progression parameters + verification"), true, true);
  auto* axioms = add_common(app.add_subcommand("axioms", "verify (G)/(ND)/(QL)/(LG)"), false, false);
  axioms->add_option("--range", a.range, "n range a..b");
  auto* compare = add_common(app.add_subcommand("compare", "diff computed slopes against an external list"), true, true);
  compare->add_option("--external", a.external, "external slope file (JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    apply_config(cmd, a);
    if (cmd == dims) return cmd_dims(a);
    if (cmd == coeffs) return cmd_coeffs(a);
    if (cmd == slopes) return cmd_slopes(a);
    if (cmd == np) return cmd_np(a);
    if (cmd == dist) return cmd_dist(a);
    if (cmd == gouvea) return cmd_gouvea(a);
    if (cmd == ss) return cmd_ss(a);
    if (cmd == ap) return cmd_ap(a);
    if (cmd == axioms) return cmd_axioms(a);
    if (cmd == compare) return cmd_compare(a);
    std::cerr << "error: unknown subcommand\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
