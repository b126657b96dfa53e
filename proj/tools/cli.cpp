#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <new>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kronspin/errors.hpp"
#include "kronspin/hamiltonian.hpp"
#include "kronspin/io.hpp"
#include "kronspin/kron.hpp"
#include "kronspin/linalg.hpp"
#include "kronspin/matfree.hpp"
#include "kronspin/spin.hpp"

namespace kronspin::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Largest Kronecker product the kron command will materialise (entries).
constexpr std::size_t kMaxKronEntries = std::size_t{1} << 28;
constexpr int kMaxBenchSites = 40;

struct Shared {
  double tol = -1.0;  // negative: use the command default
  bool json = false;
  std::string out;
  std::uint64_t seed = 1;

  double tolerance(double fallback) const { return tol > 0.0 ? tol : fallback; }
};

// Thrown by commands for a specific exit status with a message for stderr.
struct Exit {
  int code;
  std::string message;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void emit(const Shared& shared, const std::string& text, std::ostream& out) {
  if (shared.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(shared.out, std::ios::binary);
  if (!file) throw Exit{kExitUsage, "cannot open '" + shared.out + "' for writing"};
  file << text;
}

json report_skeleton(const std::string& command, std::vector<std::string> inputs) {
  return json{{"command", command}, {"inputs", std::move(inputs)}, {"results", json::array()}};
}

std::string finish_report(json& report, Clock::time_point start) {
  report["elapsed"] = seconds_since(start);
  return report.dump(2) + "\n";
}

ComplexMatrix random_like(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Complex> entries(rows * cols);
  for (Complex& z : entries) z = {dist(rng), dist(rng)};
  return ComplexMatrix(rows, cols, std::move(entries));
}

// ---------------------------------------------------------------- kron

int cmd_kron(const std::string& file_a, const std::string& file_b, const Shared& shared,
             std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const ComplexMatrix a = read_matrix_file(file_a);
  const ComplexMatrix b = read_matrix_file(file_b);
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (a.rows() > kMaxKronEntries / b.rows() || a.cols() > kMaxKronEntries / b.cols() ||
      rows > kMaxKronEntries / cols) {
    throw CapacityError("kron: result " + std::to_string(a.rows()) + "*" + std::to_string(b.rows()) +
                        " x " + std::to_string(a.cols()) + "*" + std::to_string(b.cols()) +
                        " exceeds " + std::to_string(kMaxKronEntries) + " entries");
  }
  const ComplexMatrix c = kron(a, b);
  const std::string summary = "(" + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                              ") (x) (" + std::to_string(b.rows()) + "x" +
                              std::to_string(b.cols()) + ") -> " + std::to_string(c.rows()) +
                              "x" + std::to_string(c.cols());

  if (!shared.out.empty()) write_matrix_file(shared.out, c);
  std::ostream& info = shared.out.empty() ? err : out;
  if (shared.json) {
    json report = report_skeleton("kron", {file_a, file_b});
    report["results"].push_back({{"kind", "shape"},
                                 {"check", "dimension law"},
                                 {"tolerance", 0.0},
                                 {"passed", true},
                                 {"rows", c.rows()},
                                 {"cols", c.cols()},
                                 {"note", summary}});
    if (!shared.out.empty()) report["output"] = shared.out;
    info << finish_report(report, start);
  } else {
    info << summary << "\n";
  }
  if (shared.out.empty()) out << format_matrix(c);
  return kExitOk;
}

// ---------------------------------------------------------------- verify-properties

struct Row {
  ResidualReport report;
  std::string status = "ok";  // ok, singular, not_applicable
  bool gating = true;
};

json row_json(const Row& row) {
  const ResidualReport& r = row.report;
  json j{{"kind", "residual"},
         {"check", r.property_name},
         {"tolerance", r.tolerance},
         {"residual", row.status == "ok" ? number_or_null(r.residual) : json(nullptr)},
         {"passed", r.passed},
         {"expect_equal", r.expect_equal},
         {"gating", row.gating},
         {"status", row.status},
         {"note", r.note},
         {"witness", nullptr}};
  if (r.witness) j["witness"] = {r.witness->row, r.witness->col};
  return j;
}

std::string table(const std::vector<Row>& rows) {
  std::ostringstream ss;
  char line[512];
  std::snprintf(line, sizeof(line), "%-70s %-10s %-9s %-6s %s\n", "check", "residual",
                "tol", "result", "note");
  ss << line;
  for (const Row& row : rows) {
    const ResidualReport& r = row.report;
    std::string result = r.passed ? "pass" : "FAIL";
    if (row.status != "ok") result = "n/a";
    else if (!row.gating) result = r.passed ? "equal" : "differ";
    const std::string residual = row.status == "ok" ? sci(r.residual) : "-";
    std::snprintf(line, sizeof(line), "%-70s %-10s %-9s %-6s %s\n", r.property_name.c_str(),
                  residual.c_str(), sci(r.tolerance).c_str(), result.c_str(), r.note.c_str());
    ss << line;
  }
  return ss.str();
}

Row not_applicable(int index, double tol, const std::string& status, const std::string& why) {
  Row row;
  row.report.property_name = "property " + std::to_string(index);
  row.report.tolerance = tol;
  row.report.note = why;
  row.status = status;
  return row;
}

int cmd_verify(const std::string& file_a, const std::string& file_b, const Shared& shared,
               std::ostream& out) {
  const auto start = Clock::now();
  const double tol = shared.tolerance(kDefaultTolerance);
  const ComplexMatrix a = read_matrix_file(file_a);
  const ComplexMatrix b = read_matrix_file(file_b);
  std::mt19937_64 rng(shared.seed);

  // Second operands for the sum and product laws are seeded random partners.
  const ComplexMatrix a2 = random_like(a.rows(), a.cols(), rng);
  const ComplexMatrix b2 = random_like(b.rows(), b.cols(), rng);
  const ComplexMatrix a_right = random_like(a.cols(), a.cols(), rng);
  const ComplexMatrix b_right = random_like(b.cols(), b.cols(), rng);
  std::uniform_real_distribution<double> scalar(-2.0, 2.0);
  const std::vector<double> st{scalar(rng), scalar(rng)};

  std::vector<Row> rows;
  auto run_check = [&](int index, std::vector<ComplexMatrix> ops, std::span<const double> s) {
    try {
      Row row;
      row.report = check_property(index, ops, s, tol);
      const std::vector<ResidualReport> diagnostics = std::move(row.report.diagnostics);
      row.report.diagnostics.clear();
      rows.push_back(row);
      for (const ResidualReport& d : diagnostics) {
        Row diag;
        diag.report = d;
        // The reversed-order form is informational; the shuffled form is an identity.
        diag.gating = d.property_name.find("reversed order") == std::string::npos ||
                      d.property_name.find("shuffle") != std::string::npos;
        rows.push_back(diag);
      }
    } catch (const SingularityError& e) {
      rows.push_back(not_applicable(index, tol, "singular", e.what()));
    } catch (const ShapeError& e) {
      rows.push_back(not_applicable(index, tol, "not_applicable", e.what()));
    }
  };

  run_check(1, {a, b}, {});
  run_check(2, {identity(a.rows()), identity(b.rows())}, {});
  run_check(3, {a, a2, b}, {});
  run_check(4, {a, b, b2}, {});
  run_check(5, {a, b}, st);
  run_check(6, {a, b}, {});
  run_check(7, {a, a_right, b, b_right}, {});
  run_check(8, {a, b}, {});

  bool ok = true;
  for (const Row& row : rows)
    if (row.status == "ok" && row.gating && !row.report.passed) ok = false;

  if (shared.json) {
    json report = report_skeleton("verify-properties", {file_a, file_b});
    report["tolerance"] = tol;
    report["seed"] = shared.seed;
    for (const Row& row : rows) report["results"].push_back(row_json(row));
    report["passed"] = ok;
    emit(shared, finish_report(report, start), out);
  } else {
    emit(shared, table(rows) + (ok ? "all expected checks passed\n" : "some checks FAILED\n"),
         out);
  }
  return ok ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  std::string spec;
  std::string engine = "dense";
  std::size_t k = 1;
  std::string which = "lowest";
  std::string format = "csv";
  std::size_t max_iter = 300;
};

int cmd_spectrum(const SpectrumArgs& args, const Shared& shared, std::ostream& out,
                 std::ostream& err) {
  const auto start = Clock::now();
  const HamiltonianSpec spec = read_spec_file(args.spec);
  const std::string hash = spec_hash(spec);
  Spectrum s;
  double tol = 0.0;

  if (args.engine == "dense") {
    tol = shared.tolerance(kHermitianTolerance);
    ComplexMatrix h(1, 1);
    try {
      h = build_general(spec);
    } catch (const CapacityError& e) {
      throw Exit{kExitEngine, std::string(e.what()) + "; use --engine lanczos for " +
                                  std::to_string(spec.n_sites()) + " sites"};
    }
    s = eigh(h);
  } else {
    tol = shared.tolerance(kDefaultTolerance);
    LanczosOptions opt;
    opt.which = args.which == "highest" ? Extremal::highest : Extremal::lowest;
    opt.k = args.k;
    opt.tol = tol;
    opt.max_iter = args.max_iter;
    opt.seed = shared.seed;
    try {
      s = lanczos_extremal(spec_to_kronsum(spec), opt);
    } catch (const ConvergenceError& e) {
      std::string msg = std::string(e.what()) + "; best estimates:";
      for (std::size_t i = 0; i < e.estimates().size(); ++i) {
        msg += " " + shortest(e.estimates()[i]);
        if (i < e.residuals().size()) msg += " (residual " + sci(e.residuals()[i]) + ")";
      }
      throw Exit{kExitConvergence, msg};
    }
  }

  const bool as_json = shared.json || args.format == "json";
  std::string text;
  if (as_json) {
    json report = report_skeleton("spectrum", {args.spec});
    report["spec_hash"] = hash;
    report["engine"] = args.engine;
    json values = json::array();
    for (double v : s.eigenvalues) values.push_back(v);
    report["results"].push_back({{"kind", "spectrum"},
                                 {"check", "eigenvalues"},
                                 {"tolerance", tol},
                                 {"engine", args.engine},
                                 {"spec_hash", hash},
                                 {"which", args.engine == "dense" ? "all" : args.which},
                                 {"n_sites", spec.n_sites()},
                                 {"dimension", s.dimension},
                                 {"operator_dimension", s.operator_dimension},
                                 {"eigenvalues", values}});
    text = finish_report(report, start);
  } else {
    text = "# spec_hash=" + hash + ", engine=" + args.engine + ", tol=" + shortest(tol) + "\n";
    text += "index,eigenvalue\n";
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      text += std::to_string(i) + "," + shortest(s.eigenvalues[i]) + "\n";
    }
  }
  emit(shared, text, out);
  if (!shared.out.empty()) {
    err << s.eigenvalues.size() << " eigenvalues written to " << shared.out << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- conserved

struct ConservedArgs {
  std::string spec;
  std::string engine = "auto";
  double anisotropy = 0.0;
};

constexpr int kDenseConservedMax = 8;

int cmd_conserved(const ConservedArgs& args, const Shared& shared, std::ostream& out) {
  const auto start = Clock::now();
  const double tol = shared.tolerance(1e-8);
  const HamiltonianSpec spec = read_spec_file(args.spec);
  const int n = spec.n_sites();
  std::string engine = args.engine;
  if (engine == "auto") engine = n <= kDenseConservedMax ? "dense" : "matfree";

  double r_hz = 0.0, r_hs2 = 0.0, r_szs2 = 0.0;
  if (engine == "dense") {
    ComplexMatrix h(1, 1);
    try {
      h = build_general(spec);
    } catch (const CapacityError& e) {
      throw Exit{kExitEngine, std::string(e.what()) + "; use --engine matfree"};
    }
    if (args.anisotropy != 0.0) {
      const ComplexMatrix sz = pauli(PauliAxis::z);
      for (const CouplingEdge& edge : spec.couplings())
        add_scaled(h, args.anisotropy * edge.strength, lift_pair(sz, edge.i, sz, edge.j, n));
    }
    const ComplexMatrix sz = total_component(PauliAxis::z, n);
    const ComplexMatrix s2 = total_spin_squared(n);
    r_hz = conserved_residual(h, sz);
    r_hs2 = conserved_residual(h, s2);
    r_szs2 = conserved_residual(sz, s2);
  } else {
    KronSum h = spec_to_kronsum(spec);
    if (args.anisotropy != 0.0) {
      const Local2 sz = pauli_local(PauliAxis::z);
      for (const CouplingEdge& edge : spec.couplings())
        h.add_pair(args.anisotropy * edge.strength, edge.i, sz, edge.j, sz);
    }
    const KronSum sz = total_component_sum(PauliAxis::z, n);
    const KronSum s2 = total_spin_squared_sum(n);
    r_hz = commutator_probe(h, sz, shared.seed);
    r_hs2 = commutator_probe(h, s2, shared.seed);
    r_szs2 = commutator_probe(sz, s2, shared.seed);
  }

  std::vector<Row> rows;
  const std::pair<const char*, double> checks[] = {
      {"[H, S_z]", r_hz}, {"[H, S^2]", r_hs2}, {"[S_z, S^2]", r_szs2}};
  for (const auto& [name, residual] : checks) {
    Row row;
    row.report = ResidualReport::equality(name, residual, tol);
    row.report.note = engine == "dense" ? "Frobenius norm" : "||(AB - BA) x||, random unit x";
    rows.push_back(row);
  }
  bool ok = true;
  for (const Row& row : rows) ok = ok && row.report.passed;

  if (shared.json) {
    json report = report_skeleton("conserved", {args.spec});
    report["engine"] = engine;
    report["spec_hash"] = spec_hash(spec);
    report["tolerance"] = tol;
    if (args.anisotropy != 0.0) report["anisotropy"] = args.anisotropy;
    for (const Row& row : rows) report["results"].push_back(row_json(row));
    report["passed"] = ok;
    emit(shared, finish_report(report, start), out);
  } else {
    std::string text = "engine: " + engine + "\n" + table(rows);
    text += ok ? "all commutators vanish\n" : "conservation FAILED\n";
    emit(shared, text, out);
  }
  return ok ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string n_list = "10..16";
  std::size_t terms = 0;
  int repeats = 3;
};

std::vector<int> parse_n_list(const std::string& text) {
  auto to_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw Exit{kExitUsage, "--n-list: cannot parse '" + std::string(s) + "'"};
    }
    return v;
  };
  std::vector<int> values;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = to_int(std::string_view(text).substr(0, dots));
    const int hi = to_int(std::string_view(text).substr(dots + 2));
    if (hi < lo) throw Exit{kExitUsage, "--n-list: empty range " + text};
    for (int n = lo; n <= hi; ++n) values.push_back(n);
  } else {
    std::string_view rest = text;
    while (true) {
      const auto comma = rest.find(',');
      values.push_back(to_int(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  for (int n : values) {
    if (n < 2 || n > kMaxBenchSites) {
      throw Exit{kExitUsage, "--n-list: site counts must lie in [2, " +
                                 std::to_string(kMaxBenchSites) + "], got " + std::to_string(n)};
    }
  }
  return values;
}

// Chain Hamiltonian, or `terms` exchange terms cycling along the chain.
KronSum bench_operator(int n, std::size_t terms) {
  if (terms == 0) return spec_to_kronsum(HamiltonianSpec::chain(n, 1.0, 0.5));
  KronSum op(n);
  for (std::size_t t = 0; t < terms; ++t) {
    const int site = static_cast<int>((t / 3) % static_cast<std::size_t>(n - 1)) + 1;
    const Local2 s = pauli_local(kPauliAxes[t % 3]);
    op.add_pair(1.0, site, s, site + 1, s);
  }
  return op;
}

int cmd_bench(const BenchArgs& args, const Shared& shared, std::ostream& out) {
  const auto start = Clock::now();
  if (args.repeats < 1) throw Exit{kExitUsage, "--repeats must be at least 1"};
  const std::vector<int> ns = parse_n_list(args.n_list);
  const unsigned workers = default_workers();

  struct Sample {
    int n;
    std::size_t terms;
    double best;
    double median;
    double spread;
    double amplitudes;
  };
  std::vector<Sample> samples;
  for (int n : ns) {
    try {
      const KronSum op = bench_operator(n, args.terms);
      const StateVector x = StateVector::random(n, shared.seed);
      std::vector<Complex> y(x.size());
      std::vector<double> times;
      for (int r = 0; r < args.repeats; ++r) {
        std::fill(y.begin(), y.end(), Complex{});
        const auto t0 = Clock::now();
        matvec_accumulate(op, x.amplitudes(), y, workers);
        times.push_back(seconds_since(t0));
      }
      std::sort(times.begin(), times.end());
      const double median = times[times.size() / 2];
      samples.push_back({n, op.terms().size(), times.front(), median,
                         median > 0.0 ? (times.back() - times.front()) / median : 0.0,
                         static_cast<double>(op.terms().size()) * static_cast<double>(x.size())});
    } catch (const std::bad_alloc&) {
      throw Exit{kExitCapacity, "allocation failed for a 2^" + std::to_string(n) + " state (n=" +
                                    std::to_string(n) + ")"};
    }
  }

  // Least-squares slope of log2(time) against n: the exponent of 2^n.
  std::optional<double> exponent;
  std::optional<double> band;
  if (samples.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (const Sample& s : samples) {
      mx += s.n;
      my += std::log2(std::max(s.best, 1e-12));
    }
    mx /= samples.size();
    my /= samples.size();
    double sxx = 0.0, sxy = 0.0;
    for (const Sample& s : samples) {
      sxx += (s.n - mx) * (s.n - mx);
      sxy += (s.n - mx) * (std::log2(std::max(s.best, 1e-12)) - my);
    }
    exponent = sxy / sxx;
    if (samples.size() >= 3) {
      double sse = 0.0;
      for (const Sample& s : samples) {
        const double fit = my + *exponent * (s.n - mx);
        sse += std::pow(std::log2(std::max(s.best, 1e-12)) - fit, 2);
      }
      band = 2.0 * std::sqrt(sse / static_cast<double>(samples.size() - 2) / sxx);
    }
  }

  if (shared.json) {
    json report = report_skeleton("bench", {});
    report["workers"] = workers;
    report["repeats"] = args.repeats;
    for (const Sample& s : samples) {
      report["results"].push_back({{"kind", "timing"},
                                   {"check", "matvec n=" + std::to_string(s.n)},
                                   {"tolerance", s.spread},
                                   {"n_sites", s.n},
                                   {"terms", s.terms},
                                   {"seconds", s.best},
                                   {"median_seconds", s.median},
                                   {"amplitudes_touched", s.amplitudes}});
    }
    if (exponent) {
      report["results"].push_back({{"kind", "scaling"},
                                   {"check", "scaling exponent in 2^n"},
                                   {"tolerance", band ? json(*band) : json(nullptr)},
                                   {"exponent", *exponent}});
    }
    emit(shared, finish_report(report, start), out);
  } else {
    std::ostringstream ss;
    char line[256];
    std::snprintf(line, sizeof(line), "%4s %6s %12s %12s %14s %10s\n", "n", "terms",
                  "best_s", "median_s", "amplitudes", "ns/amp");
    ss << "workers: " << workers << ", repeats: " << args.repeats << "\n" << line;
    for (const Sample& s : samples) {
      std::snprintf(line, sizeof(line), "%4d %6zu %12.6f %12.6f %14.0f %10.3f\n", s.n, s.terms,
                    s.best, s.median, s.amplitudes, 1e9 * s.best / s.amplitudes);
      ss << line;
    }
    if (exponent) {
      ss << "scaling exponent in 2^n: " << std::fixed;
      ss.precision(3);
      ss << *exponent;
      if (band) ss << " +/- " << *band;
      ss << "\n";
    }
    emit(shared, ss.str(), out);
  }
  return kExitOk;
}

void add_shared(CLI::App* sub, Shared& shared, bool with_seed) {
  sub->add_option("--tol", shared.tol, "Tolerance (command default if omitted)")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--json", shared.json, "Emit a JSON run report");
  sub->add_option("--out", shared.out, "Output path");
  if (with_seed) sub->add_option("--seed", shared.seed, "Random seed");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kronecker products and spin-1/2 Hamiltonians", "kronspin"};
  app.require_subcommand(1);
  Shared shared;

  std::string file_a, file_b;
  auto* kron_cmd = app.add_subcommand("kron", "Write A (x) B in matrix text format");
  kron_cmd->add_option("A", file_a, "Matrix file")->required();
  kron_cmd->add_option("B", file_b, "Matrix file")->required();
  add_shared(kron_cmd, shared, false);

  auto* verify_cmd = app.add_subcommand("verify-properties", "Check the Kronecker product laws");
  verify_cmd->add_option("A", file_a, "Matrix file")->required();
  verify_cmd->add_option("B", file_b, "Matrix file")->required();
  add_shared(verify_cmd, shared, true);

  SpectrumArgs sargs;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues of a spin Hamiltonian");
  spectrum_cmd->add_option("spec", sargs.spec, "Spec file (JSON)")->required();
  spectrum_cmd->add_option("--engine", sargs.engine)
      ->check(CLI::IsMember({"dense", "lanczos"}))
      ->capture_default_str();
  spectrum_cmd->add_option("--k", sargs.k, "Eigenvalues to find (lanczos)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  spectrum_cmd->add_option("--which", sargs.which)
      ->check(CLI::IsMember({"lowest", "highest"}))
      ->capture_default_str();
  spectrum_cmd->add_option("--format", sargs.format)
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  spectrum_cmd->add_option("--max-iter", sargs.max_iter)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_shared(spectrum_cmd, shared, true);

  ConservedArgs cargs;
  auto* conserved_cmd =
      app.add_subcommand("conserved", "Residuals of [H, S_z], [H, S^2] and [S_z, S^2]");
  conserved_cmd->add_option("spec", cargs.spec, "Spec file (JSON)")->required();
  conserved_cmd->add_option("--engine", cargs.engine)
      ->check(CLI::IsMember({"auto", "dense", "matfree"}))
      ->capture_default_str();
  conserved_cmd->add_option("--debug-anisotropy", cargs.anisotropy,
                            "Add delta * J_ij s_z s_z per coupling (breaks S^2)");
  add_shared(conserved_cmd, shared, true);

  BenchArgs bargs;
  auto* bench_cmd = app.add_subcommand("bench", "Time matrix-free matvec across n");
  bench_cmd->add_option("--n-list", bargs.n_list, "e.g. 10,12,14 or 10..16")
      ->capture_default_str();
  bench_cmd->add_option("--terms", bargs.terms, "Fixed term count (0: full chain)")
      ->capture_default_str();
  bench_cmd->add_option("--repeats", bargs.repeats)->capture_default_str();
  add_shared(bench_cmd, shared, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*kron_cmd) return cmd_kron(file_a, file_b, shared, out, err);
    if (*verify_cmd) return cmd_verify(file_a, file_b, shared, out);
    if (*spectrum_cmd) return cmd_spectrum(sargs, shared, out, err);
    if (*conserved_cmd) return cmd_conserved(cargs, shared, out);
    if (*bench_cmd) return cmd_bench(bargs, shared, out);
  } catch (const Exit& e) {
    err << "kronspin: " << e.message << "\n";
    return e.code;
  } catch (const ParseError& e) {
    err << "kronspin: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizingError& e) {
    err << "kronspin: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const CapacityError& e) {
    err << "kronspin: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ConvergenceError& e) {
    err << "kronspin: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::bad_alloc&) {
    err << "kronspin: allocation failed\n";
    return kExitCapacity;
  } catch (const Error& e) {
    err << "kronspin: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace kronspin::cli
