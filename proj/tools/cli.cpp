// resolvent-atlas command-line front end. Talks to the library only through
// the C API in resolvent_atlas.h.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "resolvent_atlas.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitViolation = 3;
constexpr double kOracleTol = 1e-8;

struct Failure {
  std::string status;
  std::string message;
};

void check(ra_status st) {
  if (st != RA_OK) throw Failure{ra_status_name(st), ra_last_error()};
}

[[noreturn]] void input_error(const std::string& message) { throw Failure{"invalid_argument", message}; }

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using Matrix = std::unique_ptr<ra_matrix, Deleter<ra_matrix, ra_matrix_destroy>>;
using Spectrum = std::unique_ptr<ra_spectrum, Deleter<ra_spectrum, ra_spectrum_destroy>>;
using Sweep = std::unique_ptr<ra_bound_sweep, Deleter<ra_bound_sweep, ra_bound_sweep_destroy>>;
using Markov = std::unique_ptr<ra_markov, Deleter<ra_markov, ra_markov_destroy>>;
using Quantum = std::unique_ptr<ra_quantum, Deleter<ra_quantum, ra_quantum_destroy>>;
using Report = std::unique_ptr<ra_verify_report, Deleter<ra_verify_report, ra_verify_destroy>>;

template <class H, class F>
H make(F&& producer) {
  typename H::pointer raw = nullptr;
  check(producer(&raw));
  return H(raw);
}

std::string fmt(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json complex_json(ra_complex z) { return Json::array({z.re, z.im}); }

double parse_real(const std::string& text, const char* what) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  if (b != e && *b == '+') ++b;
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e || b == e || !std::isfinite(v))
    input_error(std::string("invalid ") + what + ": '" + text + "'");
  return v;
}

std::size_t parse_size(const std::string& text, const char* what) {
  std::size_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty())
    input_error(std::string("invalid ") + what + ": '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

Matrix load_matrix(const std::string& path) {
  return make<Matrix>([&](ra_matrix** out) { return ra_matrix_load(path.c_str(), out); });
}

Spectrum parse_spectrum(const std::string& text) {
  return make<Spectrum>([&](ra_spectrum** out) { return ra_spectrum_parse(text.c_str(), out); });
}

Json matrix_json(const ra_matrix* m) {
  const std::size_t rows = ra_matrix_rows(m), cols = ra_matrix_cols(m);
  std::vector<ra_complex> entries(rows * cols);
  check(ra_matrix_entries(m, entries.data(), entries.size()));
  Json list = Json::array();
  for (const ra_complex& z : entries) list.push_back(complex_json(z));
  return Json{{"rows", rows}, {"cols", cols}, {"entries", std::move(list)}};
}

Json spectrum_json(const ra_spectrum* s) {
  Json list = Json::array();
  for (std::size_t k = 0; k < ra_spectrum_degree(s); ++k) {
    ra_complex z;
    check(ra_spectrum_get(s, k, &z));
    list.push_back(complex_json(z));
  }
  return list;
}

void print_json(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

struct Globals {
  std::uint64_t seed = 0;
  std::string format = "json";

  bool csv() const { return format == "csv"; }
};

// ---- bound ---------------------------------------------------------------

struct BoundArgs {
  std::string matrix, spectrum, grid, zeta, assume = "contraction", norm = "spectral";
  unsigned threads = 0;
};

int cmd_bound(const Globals& g, const BoundArgs& a) {
  if (a.matrix.empty() == a.spectrum.empty()) input_error("give exactly one of --matrix or --spectrum");
  if (a.grid.empty() == a.zeta.empty()) input_error("give exactly one of --grid or --zeta");

  ra_assumption assumption = RA_ASSUME_CONTRACTION;
  double c = 1.0;
  if (a.assume.rfind("power:", 0) == 0) {
    assumption = RA_ASSUME_POWER_BOUNDED;
    c = parse_real(a.assume.substr(6), "power-bound constant");
    if (!(c > 0.0)) input_error("power-bound constant must be positive");
  } else if (a.assume != "contraction") {
    input_error("--assume takes contraction or power:C");
  }
  ra_norm_kind norm = RA_NORM_SPECTRAL;
  if (a.norm == "one") norm = RA_NORM_ONE_TO_ONE;
  else if (a.norm != "spectral") input_error("--norm takes spectral or one");

  std::vector<ra_complex> grid;
  if (!a.zeta.empty()) {
    ra_complex z;
    check(ra_parse_complex(a.zeta.c_str(), &z));
    grid.push_back(z);
  } else {
    ra_complex* pts = nullptr;
    std::size_t count = 0;
    check(ra_parse_grid(a.grid.c_str(), &pts, &count));
    grid.assign(pts, pts + count);
    ra_complex_array_free(pts);
  }

  Matrix matrix = a.matrix.empty() ? nullptr : load_matrix(a.matrix);
  Spectrum spectrum = a.spectrum.empty() ? nullptr : parse_spectrum(a.spectrum);
  Sweep sweep = make<Sweep>([&](ra_bound_sweep** out) {
    return ra_bound_report(matrix.get(), spectrum.get(), grid.data(), grid.size(), assumption, c, norm, a.threads, out);
  });
  Spectrum used = make<Spectrum>([&](ra_spectrum** out) { return ra_bound_sweep_spectrum(sweep.get(), out); });

  const bool hypothesis = ra_bound_sweep_hypothesis_holds(sweep.get());
  if (matrix && !hypothesis) std::cerr << "warning: matrix does not satisfy the assumption; domination not checked\n";

  const std::size_t n = ra_bound_sweep_size(sweep.get());
  std::vector<ra_bound_record> records(n);
  for (std::size_t k = 0; k < n; ++k) {
    check(ra_bound_sweep_record(sweep.get(), k, &records[k]));
    if (records[k].skipped) std::cerr << "warning: grid point " << k << ": " << ra_bound_sweep_warning(sweep.get(), k) << '\n';
  }

  struct Field {
    const char* name;
    uint32_t bit;
    double ra_bound_record::*value;
  };
  const Field fields[] = {
      {"optimal_contraction_bound", RA_HAS_OPTIMAL, &ra_bound_record::optimal_contraction},
      {"corollary_bound", RA_HAS_COROLLARY, &ra_bound_record::corollary},
      {"beta_refined_bound", RA_HAS_BETA_REFINED, &ra_bound_record::beta_refined},
      {"power_bounded_bound", RA_HAS_POWER_BOUNDED, &ra_bound_record::power_bounded},
      {"unit_circle_bound", RA_HAS_UNIT_CIRCLE, &ra_bound_record::unit_circle},
      {"raw_wiener_bound", RA_HAS_RAW_WIENER, &ra_bound_record::raw_wiener},
      {"actual_norm", RA_HAS_ACTUAL, &ra_bound_record::actual_norm},
  };

  if (g.csv()) {
    std::cout << "index,zeta_re,zeta_im,skipped";
    for (const Field& f : fields) std::cout << ',' << f.name;
    std::cout << ",equality,violations\n";
    for (std::size_t k = 0; k < n; ++k) {
      const ra_bound_record& r = records[k];
      std::cout << k << ',' << fmt(r.zeta.re) << ',' << fmt(r.zeta.im) << ',' << (r.skipped ? 1 : 0);
      for (const Field& f : fields) {
        std::cout << ',';
        if (r.present & f.bit) std::cout << fmt(r.*f.value);
      }
      std::cout << ',' << (r.equality ? 1 : 0) << ',' << r.violation_count << '\n';
    }
  } else {
    Json doc;
    doc["command"] = "bound";
    doc["assumption"] = assumption == RA_ASSUME_CONTRACTION ? "contraction" : "power_bounded";
    doc["power_bound_constant"] = c;
    doc["norm"] = a.norm;
    doc["spectrum"] = spectrum_json(used.get());
    doc["hypothesis_holds"] = hypothesis;
    Json list = Json::array();
    for (std::size_t k = 0; k < n; ++k) {
      const ra_bound_record& r = records[k];
      Json rec;
      rec["index"] = k;
      rec["zeta"] = complex_json(r.zeta);
      rec["skipped"] = static_cast<bool>(r.skipped);
      if (r.skipped) rec["warning"] = ra_bound_sweep_warning(sweep.get(), k);
      for (const Field& f : fields)
        if (r.present & f.bit) rec[f.name] = r.*f.value;
      rec["equality"] = static_cast<bool>(r.equality);
      Json violations = Json::array();
      for (std::size_t v = 0; v < r.violation_count; ++v) violations.push_back(ra_bound_sweep_violation(sweep.get(), k, v));
      rec["violations"] = std::move(violations);
      list.push_back(std::move(rec));
    }
    doc["records"] = std::move(list);
    doc["violation_count"] = ra_bound_sweep_violation_count(sweep.get());
    print_json(doc);
  }

  if (ra_bound_sweep_violation_count(sweep.get()) == 0) return kExitOk;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t v = 0; v < records[k].violation_count; ++v)
      std::cerr << "violation: " << ra_bound_sweep_violation(sweep.get(), k, v) << '\n';
  return kExitViolation;
}

// ---- toeplitz ------------------------------------------------------------

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (const std::string& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_size(part, "dimension"));
      continue;
    }
    const std::size_t lo = parse_size(part.substr(0, dots), "dimension");
    const std::size_t hi = parse_size(part.substr(dots + 2), "dimension");
    if (hi < lo) input_error("empty dimension range '" + part + "'");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  for (std::size_t v : out)
    if (v == 0 || v > 256) input_error("dimensions must lie in 1..256");
  return out;
}

int cmd_toeplitz(const Globals& g, const std::string& sizes, const std::string& betas) {
  std::vector<double> beta_list;
  for (const std::string& b : split(betas, ',')) beta_list.push_back(parse_real(b, "beta"));

  struct Row {
    std::size_t n;
    double beta;
    std::optional<double> theta;
    double closed, svd, delta;
  };
  std::vector<Row> rows;
  bool mismatch = false;
  for (std::size_t n : parse_sizes(sizes)) {
    for (double beta : beta_list) {
      Row row{n, beta, std::nullopt, 0.0, 0.0, 0.0};
      if (n >= 2 && beta > 0.0) {
        double theta = 0.0;
        check(ra_solve_theta_star(n, beta, &theta));
        row.theta = theta;
      }
      check(ra_toeplitz_norm(n, beta, &row.closed));
      Matrix m = make<Matrix>([&](ra_matrix** out) { return ra_toeplitz_matrix(n, beta, out); });
      check(ra_spectral_norm(m.get(), &row.svd));
      row.delta = std::abs(row.closed - row.svd);
      mismatch = mismatch || row.delta > kOracleTol;
      rows.push_back(row);
    }
  }

  if (g.csv()) {
    std::cout << "n,beta,theta_star,norm_closed,norm_svd,delta\n";
    for (const Row& r : rows)
      std::cout << r.n << ',' << fmt(r.beta) << ',' << (r.theta ? fmt(*r.theta) : "") << ',' << fmt(r.closed) << ','
                << fmt(r.svd) << ',' << fmt(r.delta) << '\n';
  } else {
    Json list = Json::array();
    for (const Row& r : rows) {
      Json rec{{"n", r.n}, {"beta", r.beta}};
      rec["theta_star"] = r.theta ? Json(*r.theta) : Json(nullptr);
      rec["norm_closed"] = r.closed;
      rec["norm_svd"] = r.svd;
      rec["delta"] = r.delta;
      list.push_back(std::move(rec));
    }
    print_json(Json{{"command", "toeplitz"}, {"records", std::move(list)}});
  }
  if (mismatch) std::cerr << "violation: closed-form and SVD norms differ by more than 1e-8\n";
  return mismatch ? kExitViolation : kExitOk;
}

// ---- model ---------------------------------------------------------------

struct ModelArgs {
  std::string spectrum, resolvent, extremal;
  bool sort_modulus = false;
};

int cmd_model(const Globals& g, const ModelArgs& a) {
  if (a.spectrum.empty() == a.extremal.empty()) input_error("give exactly one of --spectrum or --extremal");
  Matrix m;
  if (!a.extremal.empty()) {
    if (!a.resolvent.empty()) input_error("--resolvent applies to --spectrum only");
    const auto colon = a.extremal.find(':');
    if (colon == std::string::npos) input_error("--extremal takes n:a");
    const std::size_t n = parse_size(a.extremal.substr(0, colon), "dimension");
    const double param = parse_real(a.extremal.substr(colon + 1), "eigenvalue");
    m = make<Matrix>([&](ra_matrix** out) { return ra_extremal_contraction(n, param, out); });
  } else {
    Spectrum s = parse_spectrum(a.spectrum);
    if (a.sort_modulus) s = make<Spectrum>([&](ra_spectrum** out) { return ra_spectrum_sorted_by_modulus(s.get(), out); });
    if (a.resolvent.empty()) {
      m = make<Matrix>([&](ra_matrix** out) { return ra_model_operator(s.get(), out); });
    } else {
      ra_complex zeta;
      check(ra_parse_complex(a.resolvent.c_str(), &zeta));
      m = make<Matrix>([&](ra_matrix** out) { return ra_model_resolvent(s.get(), zeta, out); });
    }
  }

  if (!g.csv()) {
    print_json(matrix_json(m.get()));
    return kExitOk;
  }
  const std::size_t rows = ra_matrix_rows(m.get()), cols = ra_matrix_cols(m.get());
  std::vector<ra_complex> e(rows * cols);
  check(ra_matrix_entries(m.get(), e.data(), e.size()));
  for (const ra_complex& z : e)
    if (z.im != 0.0) input_error("CSV output holds real matrices only; use --format json");
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) std::cout << (j ? "," : "") << fmt(e[i * cols + j].re);
    std::cout << '\n';
  }
  return kExitOk;
}

// ---- identity-check ------------------------------------------------------

int cmd_identity(const Globals& g, const std::string& suite, std::size_t instances) {
  struct Suite {
    const char* name;
    ra_identity_kind kind;
    std::size_t default_instances;
  };
  const Suite all[] = {{"combi1", RA_IDENTITY_COMBI1, 100},
                       {"combi2-part1", RA_IDENTITY_COMBI2_PART1, 100},
                       {"combi2-part2", RA_IDENTITY_COMBI2_PART2, 100},
                       {"gtilde-h2", RA_IDENTITY_GTILDE_H2, 25}};
  struct Row {
    const char* name;
    ra_identity_result result;
  };
  std::vector<Row> rows;
  for (const Suite& s : all) {
    if (suite != "all" && suite != s.name) continue;
    Row row{s.name, {}};
    check(ra_identity_suite(s.kind, instances ? instances : s.default_instances, g.seed, &row.result));
    rows.push_back(row);
  }
  if (rows.empty()) input_error("unknown suite '" + suite + "'");

  bool failed = false;
  for (const Row& r : rows) failed = failed || r.result.failures > 0;
  if (g.csv()) {
    std::cout << "suite,instances,failures,max_relative_gap,tolerance\n";
    for (const Row& r : rows)
      std::cout << r.name << ',' << r.result.instances << ',' << r.result.failures << ','
                << fmt(r.result.max_relative_gap) << ',' << fmt(r.result.tolerance) << '\n';
  } else {
    Json list = Json::array();
    for (const Row& r : rows)
      list.push_back(Json{{"suite", r.name},
                          {"instances", r.result.instances},
                          {"failures", r.result.failures},
                          {"max_relative_gap", r.result.max_relative_gap},
                          {"tolerance", r.result.tolerance}});
    print_json(Json{{"command", "identity-check"}, {"seed", g.seed}, {"suites", std::move(list)}});
  }
  return failed ? kExitViolation : kExitOk;
}

// ---- markov --------------------------------------------------------------

struct MarkovArgs {
  std::string matrix, superoperator;
  bool quantum = false;
  std::size_t samples = 1000;
};

int cmd_markov_classical(const Globals& g, const std::string& path) {
  Matrix t = load_matrix(path);
  Markov chain = make<Markov>([&](ra_markov** out) { return ra_markov_create(t.get(), out); });
  Matrix proj = make<Matrix>([&](ra_matrix** out) { return ra_markov_stationary_projection(chain.get(), out); });
  double kappa = 0.0;
  check(ra_markov_kappa_exact(chain.get(), &kappa));
  ra_kappa_cl_bounds b;
  check(ra_markov_kappa_bounds(chain.get(), &b));
  Matrix diff = make<Matrix>([&](ra_matrix** out) { return ra_matrix_subtract(t.get(), proj.get(), out); });
  double power = 0.0;
  check(ra_power_sup_norm(diff.get(), RA_NORM_ONE_TO_ONE, 100, &power));

  const std::size_t n = ra_matrix_rows(t.get());
  std::vector<double> stationary(n);
  for (std::size_t i = 0; i < n; ++i) {
    ra_complex z;
    check(ra_matrix_get(proj.get(), i, 0, &z));
    stationary[i] = z.re;
  }
  const bool sandwich = b.lower <= kappa + kOracleTol && kappa <= std::min(b.upper_cited, b.upper_new) + kOracleTol;
  const bool power_ok = power <= 2.0 + 1e-12;

  if (g.csv()) {
    std::cout << "n,kappa_exact,lower,upper_cited,upper_new,subdominant_gap,sub_spectrum_gap,power_sup_norm,sandwich_holds\n"
              << n << ',' << fmt(kappa) << ',' << fmt(b.lower) << ',' << fmt(b.upper_cited) << ',' << fmt(b.upper_new)
              << ',' << fmt(b.subdominant_gap) << ',' << fmt(b.sub_spectrum_gap) << ',' << fmt(power) << ','
              << (sandwich ? 1 : 0) << '\n';
  } else {
    Json doc{{"command", "markov"}, {"kind", "classical"}, {"n", n}};
    doc["stationary_distribution"] = stationary;
    doc["kappa_exact"] = kappa;
    doc["bounds"] = Json{{"lower", b.lower}, {"upper_cited", b.upper_cited}, {"upper_new", b.upper_new}};
    doc["subdominant_gap"] = b.subdominant_gap;
    doc["sub_spectrum_gap"] = b.sub_spectrum_gap;
    doc["power_sup_norm"] = power;
    doc["sandwich_holds"] = sandwich;
    print_json(doc);
  }
  if (sandwich && power_ok) return kExitOk;
  std::cerr << "violation: condition-number sandwich or power bound fails\n";
  return kExitViolation;
}

int cmd_markov_quantum(const Globals& g, const MarkovArgs& a) {
  Matrix s = load_matrix(a.superoperator);
  Quantum q = make<Quantum>([&](ra_quantum** out) { return ra_quantum_create(s.get(), out); });
  ra_kappa_qu_bounds b;
  check(ra_quantum_kappa_bounds(q.get(), &b));
  double estimate = 0.0;
  check(ra_quantum_monte_carlo_lower(q.get(), a.samples, g.seed, &estimate));
  const bool ok = estimate <= b.upper * (1.0 + kOracleTol);

  if (g.csv()) {
    std::cout << "dimension,lower,upper,gap,monte_carlo_lower,samples,seed\n"
              << ra_quantum_dimension(q.get()) << ',' << fmt(b.lower) << ',' << fmt(b.upper) << ',' << fmt(b.gap) << ','
              << fmt(estimate) << ',' << a.samples << ',' << g.seed << '\n';
  } else {
    Json doc{{"command", "markov"}, {"kind", "quantum"}, {"dimension", ra_quantum_dimension(q.get())}};
    doc["bounds"] = Json{{"lower", b.lower}, {"upper", b.upper}};
    doc["gap"] = b.gap;
    doc["monte_carlo_lower"] = estimate;
    doc["samples"] = a.samples;
    doc["seed"] = g.seed;
    print_json(doc);
  }
  if (ok) return kExitOk;
  std::cerr << "violation: Monte-Carlo estimate exceeds the upper bound\n";
  return kExitViolation;
}

int cmd_markov(const Globals& g, const MarkovArgs& a) {
  if (a.quantum) {
    if (a.superoperator.empty() || !a.matrix.empty()) input_error("--quantum needs --superoperator FILE");
    return cmd_markov_quantum(g, a);
  }
  if (a.matrix.empty() || !a.superoperator.empty()) input_error("give --matrix FILE (or --quantum --superoperator FILE)");
  return cmd_markov_classical(g, a.matrix);
}

// ---- verify --------------------------------------------------------------

int cmd_verify(const Globals& g) {
  Report report = make<Report>([&](ra_verify_report** out) { return ra_verify_run(g.seed, out); });
  bool all = true;
  Json list = Json::array();
  if (g.csv()) std::cout << "id,name,passed,detail\n";
  for (std::size_t k = 0; k < ra_verify_count(report.get()); ++k) {
    int id = 0, passed = 0;
    const char* name = nullptr;
    const char* detail = nullptr;
    check(ra_verify_get(report.get(), k, &id, &passed, &name, &detail));
    all = all && passed;
    if (g.csv())
      std::cout << id << ',' << name << ',' << passed << ",\"" << detail << "\"\n";
    else
      list.push_back(Json{{"id", id}, {"name", name}, {"passed", static_cast<bool>(passed)}, {"detail", detail}});
  }
  if (!g.csv()) print_json(Json{{"command", "verify"}, {"seed", g.seed}, {"criteria", std::move(list)}, {"passed", all}});
  return all ? kExitOk : kExitViolation;
}

std::uint64_t seed_from_env() {
  const char* env = std::getenv("RESOLVENT_ATLAS_SEED");
  if (!env || !*env) return 0;
  const std::string text = env;
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    input_error("RESOLVENT_ATLAS_SEED must be an unsigned 64-bit integer");
  return v;
}

int report_failure(const Globals& g, const Failure& f) {
  std::cerr << "error: " << f.message << '\n';
  if (!g.csv()) print_json(Json{{"error", Json{{"status", f.status}, {"message", f.message}}}});
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resolvent-norm bounds for non-normal matrices"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "RNG seed (overrides RESOLVENT_ATLAS_SEED; default 0)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  BoundArgs bound;
  CLI::App* bound_cmd = app.add_subcommand("bound", "Evaluate resolvent bounds over a grid of points");
  bound_cmd->add_option("--matrix", bound.matrix, "Matrix file (JSON or .csv)");
  bound_cmd->add_option("--spectrum", bound.spectrum, "Comma-separated eigenvalues, e.g. \"0.5,0.3+0.2i\"");
  bound_cmd->add_option("--grid", bound.grid, "circle:R:N | segment:Z1:Z2:N | list:Z1,Z2,...");
  bound_cmd->add_option("--zeta", bound.zeta, "Single evaluation point");
  bound_cmd->add_option("--assume", bound.assume, "contraction | power:C");
  bound_cmd->add_option("--norm", bound.norm, "spectral | one (power-bounded assumption only)");
  bound_cmd->add_option("--threads", bound.threads, "Worker threads (0 = hardware)");

  std::string sizes = "1..20", betas = "2";
  CLI::App* toeplitz_cmd = app.add_subcommand("toeplitz", "Tabulate Toeplitz norms against the SVD oracle");
  toeplitz_cmd->add_option("--n", sizes, "Dimensions: list and ranges, e.g. 1..20,32");
  toeplitz_cmd->add_option("--beta", betas, "Comma-separated beta values in [0, 2]");

  ModelArgs model;
  CLI::App* model_cmd = app.add_subcommand("model", "Emit the model operator, its resolvent, or an extremal matrix");
  model_cmd->add_option("--spectrum", model.spectrum, "Comma-separated eigenvalues");
  model_cmd->add_option("--resolvent", model.resolvent, "Emit the model resolvent at this point");
  model_cmd->add_option("--extremal", model.extremal, "n:a for the extremal contraction");
  model_cmd->add_flag("--sort-modulus", model.sort_modulus, "Order the spectrum by modulus first");

  std::string suite = "all";
  std::size_t instances = 0;
  CLI::App* identity_cmd = app.add_subcommand("identity-check", "Run randomized identity suites");
  identity_cmd->add_option("--suite", suite, "combi1 | combi2-part1 | combi2-part2 | gtilde-h2 | all");
  identity_cmd->add_option("--instances", instances, "Instances per suite (0 = suite default)");

  MarkovArgs markov;
  CLI::App* markov_cmd = app.add_subcommand("markov", "Condition-number audit of a classical or quantum chain");
  markov_cmd->add_option("--matrix", markov.matrix, "Column-stochastic transition matrix file");
  markov_cmd->add_flag("--quantum", markov.quantum, "Analyse a quantum channel");
  markov_cmd->add_option("--superoperator", markov.superoperator, "n^2 x n^2 superoperator file (column stacking)");
  markov_cmd->add_option("--samples", markov.samples, "Monte-Carlo samples for the quantum lower witness");

  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the full verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    g.seed = seed ? *seed : seed_from_env();
    if (bound_cmd->parsed()) return cmd_bound(g, bound);
    if (toeplitz_cmd->parsed()) return cmd_toeplitz(g, sizes, betas);
    if (model_cmd->parsed()) return cmd_model(g, model);
    if (identity_cmd->parsed()) return cmd_identity(g, suite, instances);
    if (markov_cmd->parsed()) return cmd_markov(g, markov);
    if (verify_cmd->parsed()) return cmd_verify(g);
  } catch (const Failure& f) {
    return report_failure(g, f);
  }
  return kExitInput;
}
