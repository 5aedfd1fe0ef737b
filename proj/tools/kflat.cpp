#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "kflat/counting.hpp"
#include "kflat/deform.hpp"
#include "kflat/generators.hpp"
#include "kflat/homology.hpp"
#include "kflat/surface_io.hpp"
#include "kflat/triangulation.hpp"

using namespace kflat;
namespace fs = std::filesystem;

namespace {

constexpr int kValidationFailure = 2;
constexpr int kRelationViolation = 3;

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// %.17g round-trips; snprintf ignores the locale unless setlocale was called
std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_field(fields[i]);
  return line + "\n";
}

// a file path if it exists, otherwise a generator name
FlatSurface open_surface(const std::string& spec) {
  FlatSurface s;
  try {
    s = fs::exists(spec) ? load_surface(spec) : builtin_surface(spec);
  } catch (const Error& e) {
    throw ValidationFailure(spec + ": " + e.what());
  }
  const ValidationReport r = validate(s);
  if (!r.ok()) throw ValidationFailure(spec + ": " + r.issues.front());
  return s;
}

StratumSignature signature_arg(const std::string& text) {
  try {
    return parse_signature(text);
  } catch (const Error& e) {
    throw ValidationFailure(e.what());
  }
}

// "1,2,5" or "lo:hi:n" (n evenly spaced points)
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> g;
  try {
    if (std::count(text.begin(), text.end(), ':') == 2) {
      const auto a = text.find(':'), b = text.find(':', a + 1);
      const double lo = parse_number(text.substr(0, a)), hi = parse_number(text.substr(a + 1, b - a - 1));
      const int n = std::stoi(text.substr(b + 1));
      if (n < 1) throw ValidationFailure("grid needs at least one point");
      for (int i = 0; i < n; ++i) g.push_back(n == 1 ? hi : lo + (hi - lo) * i / (n - 1));
    } else {
      std::stringstream ss(text);
      for (std::string tok; std::getline(ss, tok, ',');) g.push_back(parse_number(tok));
    }
  } catch (const Error& e) {
    throw ValidationFailure(std::string("bad grid: ") + e.what());
  } catch (const std::logic_error&) {
    throw ValidationFailure("bad grid '" + text + "'");
  }
  if (g.empty()) throw ValidationFailure("empty grid");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0)) throw ValidationFailure("grid values must be positive");
    if (i && !(g[i] > g[i - 1])) throw ValidationFailure("grid must be increasing");
  }
  return g;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  try {
    for (std::string tok; std::getline(ss, tok, ',');) v.push_back(std::stoi(tok));
  } catch (const std::logic_error&) {
    throw ValidationFailure("bad integer list '" + text + "'");
  }
  return v;
}

template <class F>
void parallel_for(int n, int workers, F f) {
  std::atomic<int> next{0};
  auto run = [&] {
    for (int i; (i = next++) < n;) f(i);
  };
  std::vector<std::jthread> pool;
  for (int w = 1; w < std::min(workers, n); ++w) pool.emplace_back(run);
  run();
}

struct PredictionArgs {
  std::string which;  // empty: no hyperelliptic prediction
  std::string params;
  std::string signature;  // overrides the measured one
  double constant = 0;    // known constant, compared against both forms
};

// coefficients of L^2 for the cylinder count, already divided by the area
std::optional<std::pair<double, double>> predicted(const PredictionArgs& p, const FlatSurface& s) {
  if (p.constant > 0) return std::pair{p.constant, p.constant};
  if (p.which.empty()) return std::nullopt;
  const StratumSignature sig = p.signature.empty() ? stratum_signature(s) : signature_arg(p.signature);
  const SVPrediction pr = predict_hyperelliptic(sig, parse_case(p.which), PredictionForm::theorem, parse_ints(p.params));
  const double a = area(s);
  return std::pair{pr.theorem / a, pr.display / a};
}

void check_prediction_args(const PredictionArgs& p) {
  if (!p.signature.empty()) signature_arg(p.signature);
  try {
    if (!p.which.empty()) parse_case(p.which);
  } catch (const Error& e) {
    throw ValidationFailure(e.what());
  }
  if (p.constant < 0) throw ValidationFailure("constant must be positive");
}

void add_prediction_options(CLI::App* c, PredictionArgs& p) {
  c->add_option("--case", p.which, "hyperelliptic case a, b or c");
  c->add_option("--params", p.params, "decomposition parameters, comma separated");
  c->add_option("--signature", p.signature, "signature used for the prediction, e.g. \"k=3 g=3 mu=8,4\"");
  c->add_option("--constant", p.constant, "known constant to compare against instead");
}

std::string blank_or(bool ok, double x) { return ok ? num(x) : ""; }

// One row per grid point. cesaro uses log scale t = ln L, so it is blank for L <= 1.
// With note set, a prediction that cannot be made leaves its columns blank.
std::vector<std::vector<std::string>> estimate_rows(const FlatSurface& s, const std::vector<double>& grid,
                                                    const EnumerationOptions& opt, const PredictionArgs& p,
                                                    std::string* note = nullptr) {
  const CylinderSet cs = enumerate_cylinders(s, grid.back(), opt);
  std::optional<std::pair<double, double>> pred;
  try {
    pred = predicted(p, s);
  } catch (const Error& e) {
    if (!note) throw;
    *note = std::string("no prediction: ") + e.what();
  }
  std::vector<std::vector<std::string>> rows;
  for (double L : grid) {
    const long long nsc = count(cs.saddles.spectrum, L).N, ncyl = count(cs.spectrum, L).N;
    const bool log_ok = L > 1;
    const double csc = log_ok ? cesaro_average(cs.saddles.spectrum, std::log(L)) : 0;
    const double ccyl = log_ok ? cesaro_average(cs.spectrum, std::log(L)) : 0;
    rows.push_back({num(L), std::to_string(nsc), std::to_string(ncyl), blank_or(log_ok, csc), blank_or(log_ok, ccyl),
                    num(nsc / (L * L)), num(ncyl / (L * L)), blank_or(bool(pred), pred ? pred->first : 0),
                    blank_or(bool(pred), pred ? pred->second : 0),
                    blank_or(pred && log_ok, pred ? ccyl / pred->first : 0),
                    blank_or(pred && log_ok, pred ? ccyl / pred->second : 0), opt.oriented ? "1" : "0",
                    std::to_string(s.k())});
  }
  return rows;
}

const std::vector<std::string> kEstimateHeader{"L",         "N_sc",         "N_cyl",         "cesaro_sc",
                                               "cesaro_cyl", "naive_sc",    "naive_cyl",     "pred_theorem",
                                               "pred_display", "ratio_theorem", "ratio_display", "oriented", "k"};

std::ostream& output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path);
  return file;
}

// ---- experiment

struct ExperimentConfig {
  std::vector<std::string> inputs;
  std::string grid = "2:20:10";
  bool oriented = true;
  PredictionArgs prediction;
  int workers = 1;
  std::uint64_t seed = 1;
  int samples = 0;
  double eps = 0;  // 0: systole/20
  std::string out;
};

struct Job {
  std::string name;
  FlatSurface surface;
  std::uint64_t seed = 0;  // 0: use the surface as given
  double eps = 0;
};

struct JobResult {
  std::vector<std::vector<std::string>> rows;
  std::string summary;
  bool relation_ok = true;
};

JobResult run_job(const Job& job, const std::vector<double>& grid, const ExperimentConfig& cfg, int workers) {
  JobResult r;
  try {
    FlatSurface s = job.surface;
    if (job.seed) s = perturb_in_stratum(s, job.eps > 0 ? job.eps : systole(s) / 20, job.seed);
    const FlatSurface base = delaunay_triangulation(s);
    const EnumerationOptions opt{cfg.oriented, workers};
    const CoverRelationReport rel = cover_relation_report(base, holonomy_cover(base), grid, opt);
    r.relation_ok = rel.ok();
    std::string note;
    const auto est = estimate_rows(base, grid, opt, cfg.prediction, &note);
    // failures not tied to a grid point (area, diagnostics) mark every row
    const std::size_t per_point = static_cast<std::size_t>(std::count_if(
        rel.failures.begin(), rel.failures.end(), [](const std::string& f) { return f.find(" at L=") != std::string::npos; }));
    const bool global_ok = rel.failures.size() == per_point;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const CoverRelationRow& c = rel.rows[i];
      const long long k = rel.k;
      const bool ok = global_ok && c.cover_sc == k * c.orbit_sc && c.cover_sc == k * c.direct_sc &&
                      c.cover_cyl == k * c.orbit_cyl && c.cover_cyl == k * c.direct_cyl;
      std::vector<std::string> row{job.name};
      row.insert(row.end(), est[i].begin(), est[i].end());
      row.push_back(ok ? "ok" : "violated");
      row.push_back(note);
      r.rows.push_back(row);
    }
    std::ostringstream sm;
    sm << job.name << ": " << stratum_signature(s).to_string() << ", area " << num(area(s)) << ", cover relations "
       << (rel.ok() ? "ok" : "VIOLATED") << "\n";
    for (const auto& f : rel.failures) sm << "  " << f << "\n";
    if (!note.empty()) sm << "  " << note << "\n";
    const auto& last = est.back();
    if (!last[9].empty()) {
      const double rt = std::stod(last[9]), rd = std::stod(last[10]);
      sm << "  at L=" << last[0] << ": N_cyl=" << last[2] << ", cesaro/theorem=" << last[9]
         << ", cesaro/display=" << last[10] << ", closer to " << (std::abs(std::log(rt)) <= std::abs(std::log(rd)) ? "theorem" : "display")
         << " form\n";
    }
    r.summary = sm.str();
  } catch (const std::exception& e) {
    std::vector<std::string> row(kEstimateHeader.size() + 3);
    row.front() = job.name;
    row.back() = std::string("error: ") + e.what();
    r.rows = {row};
    r.summary = job.name + ": error: " + e.what() + "\n";
  }
  return r;
}

int run_experiment(const ExperimentConfig& cfg) {
  if (cfg.workers < 1) throw ValidationFailure("worker count must be at least 1");
  if (cfg.inputs.empty()) throw ValidationFailure("no input surfaces");
  if (cfg.samples < 0 || cfg.eps < 0) throw ValidationFailure("sample count and eps must be non-negative");
  const std::vector<double> grid = parse_grid(cfg.grid);
  check_prediction_args(cfg.prediction);
  std::vector<Job> jobs;
  for (const auto& in : cfg.inputs) {
    const FlatSurface s = open_surface(in);
    const std::string name = fs::exists(in) ? fs::path(in).stem().string() : in;
    if (cfg.samples == 0) jobs.push_back({name, s});
    for (int i = 0; i < cfg.samples; ++i)
      jobs.push_back({name + "#" + std::to_string(i), s, cfg.seed + 1000003ull * jobs.size() + i, cfg.eps});
  }
  // parallel over surfaces when there are several, inside the enumeration otherwise
  const int outer = jobs.size() > 1 ? cfg.workers : 1, inner = jobs.size() > 1 ? 1 : cfg.workers;
  std::vector<JobResult> results(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), outer, [&](int i) { results[i] = run_job(jobs[i], grid, cfg, inner); });

  std::string csv, summary;
  std::vector<std::string> header{"surface"};
  header.insert(header.end(), kEstimateHeader.begin(), kEstimateHeader.end());
  header.push_back("cover_relation");
  header.push_back("status");
  csv = join(header);
  bool ok = true;
  for (const auto& r : results) {
    for (const auto& row : r.rows) csv += join(row);
    summary += r.summary;
    ok = ok && r.relation_ok;
  }
  if (cfg.out.empty()) {
    std::cout << csv;
    std::cerr << summary;
  } else {
    fs::create_directories(cfg.out);
    std::ofstream(fs::path(cfg.out) / "experiment.csv", std::ios::binary) << csv;
    std::ofstream(fs::path(cfg.out) / "summary.txt", std::ios::binary) << summary;
    std::cout << summary;
  }
  return ok ? 0 : kRelationViolation;
}

// ---- small commands

int cmd_validate(const std::string& spec) {
  FlatSurface s;
  try {
    s = fs::exists(spec) ? load_surface(spec) : builtin_surface(spec);
  } catch (const Error& e) {
    std::cout << "invalid: " << e.what() << "\n";
    return kValidationFailure;
  }
  const ValidationReport r = validate(s);
  if (r.ok()) {
    std::cout << "valid " << stratum_signature(s).to_string() << "\n";
    return 0;
  }
  for (const auto& issue : r.issues) std::cout << "invalid: " << issue << "\n";
  return kValidationFailure;
}

void cmd_info(const FlatSurface& s) {
  const SingularityTable t = singularities(s);
  std::cout << "k " << s.k() << "\npolygons " << s.polygon_count() << "\ngluings " << s.gluings().size() << "\narea "
            << num(area(s)) << "\ngenus " << genus(s) << "\nsignature " << stratum_signature(s).to_string() << "\n";
  for (const auto& e : t.entries)
    std::cout << "singularity " << e.id << " order " << e.order << " angle " << num(e.cone_angle / std::numbers::pi)
              << "pi corners " << e.corners.size() << "\n";
}

int report_cover(const FlatSurface& s, const CoverResult& cr, int d) {
  const StratumSignature sig = stratum_signature(s);
  const CoverSignaturePrediction pred =
      d == s.k() ? predict_cover_signature(sig) : predict_intermediate_signature(sig, d);
  std::cout << "degree " << d << "\ncomponents " << cr.component_count << "\nprimitive " << (cr.primitive ? 1 : 0)
            << "\narea " << num(area(cr.cover)) << " (base " << num(area(s)) << ")\n";
  const CheckReport checks = deck_generator_checks(cr);
  for (const auto& f : checks.failures) std::cout << "deck check failed: " << f << "\n";
  bool ok = checks.ok();
  if (cr.primitive) {
    const StratumSignature got = stratum_signature(cr.cover), want = pred.as_signature(s.k() / d);
    std::cout << "measured " << got.to_string() << "\npredicted " << want.to_string() << "\n";
    ok = ok && got == want;
  } else {
    std::cout << "cover is disconnected; no signature prediction\n";
  }
  std::cout << (ok ? "relations ok" : "relations VIOLATED") << "\n";
  return ok ? 0 : kRelationViolation;
}

int cover_degree(const FlatSurface& s, int d) {
  if (d == 0) return s.k();
  if (d < 1 || s.k() % d) throw ValidationFailure("degree must divide k");
  return d;
}

void cmd_predict(const StratumSignature& sig, const std::string& which, const std::string& params) {
  const HyperellipticCase c = parse_case(which);
  const QuadraticTargetSignature t = hyperelliptic_target_stratum(sig, c, parse_ints(params));
  const SVPrediction p = predict_hyperelliptic(sig, c, PredictionForm::theorem, parse_ints(params));
  std::cout << "signature " << sig.to_string() << "\ncase " << case_name(c) << "\ntarget quadratic orders";
  for (int o : t.orders) std::cout << " " << o;
  std::cout << "\nn1 " << p.n1 << "\nn2 " << p.n2 << "\nc_simple " << num(c_simple(p.n1, p.n2)) << "\nc_envelope "
            << num(c_envelope(p.n1, p.n2)) << "\nc_hat " << num(p.c_hat) << "\ntheorem " << num(p.theorem)
            << "  (pi c_hat / k^2, times L^2/Area)\ndisplay " << num(p.display)
            << "  (2 pi c_hat / k^2, times L^2/Area)\n";
}

void cmd_invariants(const FlatSurface& s) {
  const StratumSignature sig = stratum_signature(s);
  const HomologyData h = h1_basis(s);
  std::cout << "signature " << sig.to_string() << "\nh1_rank " << h.rank << "\n";
  const CoverResult cr = holonomy_cover(s);
  std::cout << "cover " << (cr.primitive ? stratum_signature(cr.cover).to_string() : std::string("disconnected"))
            << "\n";
  if (cr.primitive) {
    const DeckActionMatrix T = deck_action(cr, h1_basis(cr.cover));
    for (const auto& d : T.diagnostics) std::cout << "deck action: " << d << "\n";
    for (const auto& [d, m] : eigenspace_multiplicities(T, s.k())) std::cout << "eigenspace Phi_" << d << " " << m << "\n";
    if (s.k() > 1) std::cout << "expected Phi_" << s.k() << " " << expected_primitive_eigenspace_dimension(sig) << "\n";
  }
  const bool even = std::all_of(sig.mu.begin(), sig.mu.end(), [](int m) { return m % 2 == 0; });
  if (s.k() == 1 && even && sig.g > 0) {
    const SpinForm f = spin_form(s);
    std::cout << "spin_parity " << f.arf(symplectic_basis(f.h)) << "\n";
  }
}

const std::vector<std::string> kRecordHeader{"kind", "length", "dir_x", "dir_y", "start", "end", "height", "oriented"};

void cmd_saddles(const FlatSurface& s, double L, const EnumerationOptions& opt, std::ostream& out) {
  const SaddleConnectionSet sc = enumerate_saddle_connections(s, L, opt);
  out << join(kRecordHeader);
  for (const auto& r : sc.records) {
    const Vec2 d = r.holonomy * (1 / r.length);
    out << join({"sc", num(r.length), num(d.x), num(d.y), std::to_string(r.start), std::to_string(r.end), "",
                 opt.oriented ? "1" : "0"});
  }
}

void cmd_cylinders(const FlatSurface& s, double L, const EnumerationOptions& opt, std::ostream& out) {
  const CylinderSet cs = enumerate_cylinders(s, L, opt);
  out << join(kRecordHeader);
  for (const auto& c : cs.records)
    out << join({"cyl", num(c.circumference), num(c.direction.x), num(c.direction.y), "", "", num(c.height),
                 opt.oriented ? "1" : "0"});
  for (const auto& d : cs.diagnostics) std::cerr << "diagnostic: " << d << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flat surfaces with k-differentials: covers, saddle connections, cylinders, counting."};
  app.require_subcommand(1);

  std::string surface, out, grid, mode;
  double max_length = 4, t = 0, s_factor = 1, eps = 0;
  bool oriented = true;
  int workers = 1, degree = 0, cylinder = 0, count_n = 1;
  std::uint64_t seed = 1;
  std::string sig_text, which = "a", params;
  PredictionArgs pred;
  ExperimentConfig cfg;

  auto surface_arg = [&](CLI::App* c) { c->add_option("surface", surface, "surface file or generator name")->required(); };
  auto enum_args = [&](CLI::App* c) {
    c->add_option("--max-length", max_length, "length cutoff")->check(CLI::PositiveNumber);
    c->add_option("--oriented", oriented, "count v and -v separately (1) or once (0)");
    c->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a surface");
  surface_arg(validate_cmd);
  auto* info = app.add_subcommand("info", "print basic data of a surface");
  surface_arg(info);
  auto* unfold = app.add_subcommand("unfold", "build the holonomy or an intermediate cover");
  surface_arg(unfold);
  unfold->add_option("--degree", degree, "cover degree dividing k (default k)");
  unfold->add_option("--out", out, "write the cover here");
  auto* predict_cover = app.add_subcommand("predict-cover", "Riemann-Hurwitz prediction for a signature");
  predict_cover->add_option("--signature", sig_text, "e.g. \"k=2 g=0 mu=-1,-1,-1,-1\"")->required();
  predict_cover->add_option("--degree", degree, "cover degree dividing k (default k)");
  auto* saddles = app.add_subcommand("saddles", "saddle connections as CSV");
  auto* cylinders = app.add_subcommand("cylinders", "cylinders as CSV");
  for (auto* c : {saddles, cylinders}) {
    surface_arg(c);
    enum_args(c);
    c->add_option("--out", out, "CSV file (default stdout)");
  }
  auto* count_cmd = app.add_subcommand("count", "counting function on a grid of lengths");
  auto* estimate = app.add_subcommand("estimate", "Cesaro estimates and predictions on a grid of lengths");
  for (auto* c : {count_cmd, estimate}) {
    surface_arg(c);
    c->add_option("--grid", grid, "lengths \"1,2,5\" or \"lo:hi:n\"")->required();
    c->add_option("--oriented", oriented, "count v and -v separately (1) or once (0)");
    c->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--out", out, "CSV file (default stdout)");
  }
  add_prediction_options(estimate, pred);
  auto* predict = app.add_subcommand("predict", "Siegel-Veech predictions for a hyperelliptic locus");
  predict->add_option("--signature", sig_text, "signature, e.g. \"k=3 g=3 mu=6,6\"");
  int pk = 0, pg = -1;
  std::string pmu;
  predict->add_option("--k", pk, "k");
  predict->add_option("--g", pg, "genus");
  predict->add_option("--mu", pmu, "orders, comma separated");
  predict->add_option("--case", which, "a, b or c");
  predict->add_option("--params", params, "decomposition parameters");
  auto* invariants = app.add_subcommand("invariants", "homology, eigenspaces and spin parity");
  surface_arg(invariants);
  auto* deform = app.add_subcommand("deform", "shear or stretch a cylinder");
  deform->add_option("mode", mode, "shear or stretch")->required()->check(CLI::IsMember({"shear", "stretch"}));
  surface_arg(deform);
  deform->add_option("--cylinder", cylinder, "index into the cylinder list at --max-length")->required();
  deform->add_option("--max-length", max_length, "cutoff for the cylinder list")->check(CLI::PositiveNumber);
  deform->add_option("--t", t, "shear parameter");
  deform->add_option("--s", s_factor, "stretch factor");
  deform->add_option("--out", out, "write the surface here (default stdout)");
  auto* sample = app.add_subcommand("sample", "random perturbations in the stratum");
  surface_arg(sample);
  sample->add_option("--eps", eps, "perturbation size (default systole/20)");
  sample->add_option("--seed", seed, "base seed");
  sample->add_option("--count", count_n, "number of samples")->check(CLI::PositiveNumber);
  sample->add_option("--out", out, "output directory")->required();
  sample->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  auto* experiment = app.add_subcommand("experiment", "covers, counts, estimates and predictions for many surfaces");
  experiment->set_config("--config", "", "INI/TOML file with the same options");
  experiment->add_option("surfaces", cfg.inputs, "surface files or generator names")->required();
  experiment->add_option("--grid", cfg.grid, "lengths \"1,2,5\" or \"lo:hi:n\"");
  experiment->add_option("--oriented", cfg.oriented, "count v and -v separately (1) or once (0)");
  experiment->add_option("--workers", cfg.workers, "worker threads");
  experiment->add_option("--seed", cfg.seed, "base seed for sampling");
  experiment->add_option("--sample", cfg.samples, "perturbed samples per input (0: inputs as given)");
  experiment->add_option("--eps", cfg.eps, "perturbation size (default systole/20)");
  experiment->add_option("--out", cfg.out, "output directory (default: CSV on stdout)");
  add_prediction_options(experiment, cfg.prediction);

  CLI11_PARSE(app, argc, argv);

  try {
    std::ofstream file;
    const EnumerationOptions opt{oriented, workers};
    if (*validate_cmd) return cmd_validate(surface);
    if (*info) cmd_info(open_surface(surface));
    if (*unfold) {
      const FlatSurface s = open_surface(surface);
      const int d = cover_degree(s, degree);
      const CoverResult cr = d == s.k() ? holonomy_cover(s) : intermediate_cover(s, d);
      const int code = report_cover(s, cr, d);
      if (!out.empty()) save_surface(out, cr.cover);
      return code;
    }
    if (*predict_cover) {
      const StratumSignature sig = signature_arg(sig_text);
      const int d = degree ? degree : sig.k;
      if (d < 1 || sig.k % d) throw ValidationFailure("degree must divide k");
      const auto p = d == sig.k ? predict_cover_signature(sig) : predict_intermediate_signature(sig, d);
      std::cout << p.as_signature(sig.k / d).to_string() << "\n";
    }
    if (*saddles) cmd_saddles(open_surface(surface), max_length, opt, output(out, file));
    if (*cylinders) cmd_cylinders(open_surface(surface), max_length, opt, output(out, file));
    if (*count_cmd || *estimate) {
      const FlatSurface s = open_surface(surface);
      const auto g = parse_grid(grid);
      check_prediction_args(pred);
      auto rows = estimate_rows(s, g, opt, pred);
      std::ostream& o = output(out, file);
      if (*count_cmd) {
        o << join({"L", "N_sc", "N_cyl", "oriented", "k"});
        for (const auto& r : rows) o << join({r[0], r[1], r[2], r[11], r[12]});
      } else {
        o << join(kEstimateHeader);
        for (const auto& r : rows) o << join(r);
      }
    }
    if (*predict) {
      StratumSignature sig;
      if (!sig_text.empty()) {
        sig = signature_arg(sig_text);
      } else {
        try {
          sig = make_signature(pk, pg, parse_ints(pmu));
        } catch (const Error& e) {
          throw ValidationFailure(e.what());
        }
      }
      cmd_predict(sig, which, params);
    }
    if (*invariants) cmd_invariants(open_surface(surface));
    if (*deform) {
      const FlatSurface s = open_surface(surface);
      const CylinderSet cs = enumerate_cylinders(s, max_length);
      if (cylinder < 0 || cylinder >= static_cast<int>(cs.records.size()))
        throw Error("cylinder " + std::to_string(cylinder) + " out of range; " + std::to_string(cs.records.size()) +
                    " cylinders up to length " + num(max_length));
      const Cylinder& c = cs.records[cylinder];
      const DeformResult r = mode == "shear" ? cylinder_shear(s, c, t) : cylinder_stretch(s, c, s_factor);
      std::cerr << "cylinder circumference " << num(c.circumference) << " height " << num(c.height) << " -> "
                << num(r.cylinder.height) << "; area " << num(area(s)) << " -> " << num(area(r.surface)) << "\n";
      write_surface(output(out, file), r.surface);
    }
    if (*sample) {
      const FlatSurface s = open_surface(surface);
      const double e = eps > 0 ? eps : systole(s) / 20;
      fs::create_directories(out);
      std::vector<std::string> errors(count_n);
      parallel_for(count_n, workers, [&](int i) {
        try {
          char name[32];
          std::snprintf(name, sizeof name, "sample_%04d.srf", i);
          save_surface((fs::path(out) / name).string(), perturb_in_stratum(s, e, seed + i));
        } catch (const std::exception& ex) {
          errors[i] = ex.what();
        }
      });
      int failed = 0;
      for (int i = 0; i < count_n; ++i)
        if (!errors[i].empty()) std::cerr << "sample " << i << ": " << errors[i] << "\n", ++failed;
      std::cout << "wrote " << count_n - failed << " samples, eps " << num(e) << "\n";
      if (failed) return 1;
    }
    if (*experiment) return run_experiment(cfg);
  } catch (const ValidationFailure& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
