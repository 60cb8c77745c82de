// telechan: command-line front end.
//
//   telechan channel-probs --builtin phasegate --theta 3.14159265 --n 2
//   telechan fig2 --out fig2.csv --plot-out fig2.dat
//   telechan cv-bound --builtin epr:4 --r-src 4 --r-probe 4
//   telechan simulate --builtin perfect --input plus --trials 10000 --seed 7
//
// Exit codes: 0 success, 1 convergence or quality failure, 2 input error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "telechan/capacity.hpp"
#include "telechan/channel.hpp"
#include "telechan/cv_gaussian.hpp"
#include "telechan/errors.hpp"
#include "telechan/io.hpp"
#include "telechan/linalg.hpp"
#include "telechan/resource.hpp"
#include "telechan/teleport_sim.hpp"

namespace {

using namespace telechan;

constexpr int kExitOk = 0;
constexpr int kExitQuality = 1;
constexpr int kExitInput = 2;

/// Thrown for flag combinations the library cannot see.
struct UsageError : Error {
  using Error::Error;
};

struct Options {
  std::string builtin;
  std::string resource_file;
  std::optional<double> theta;
  std::string theta_grid;
  std::optional<int> n;
  int n_min = 10;
  int n_max = 23;
  double r_src = 4.0;
  double r_probe = 4.0;
  std::optional<double> nu;
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  std::string out;
  std::string plot_out;
  std::string format;
  double tolerance = kDefaultConvergenceTol;
  std::string input = "mixed";
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) throw UsageError("cannot parse " + what + " '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_double(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e6) throw UsageError(what + " must be an integer, got '" + s + "'");
  return static_cast<int>(v);
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + opt.out + "'");
  f << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

std::string require_format(const Options& opt, std::initializer_list<const char*> allowed, const char* command) {
  const std::string f = opt.format.empty() ? *allowed.begin() : opt.format;
  for (const char* a : allowed)
    if (f == a) return f;
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : "|") + a;
  throw UsageError(std::string(command) + " supports --format " + list + ", got '" + f + "'");
}

// --- qubit media ------------------------------------------------------------

struct BuiltinArg {
  std::string name;
  std::vector<std::string> args;
};

BuiltinArg parse_builtin(const std::string& text) {
  auto parts = split(text, ':');
  BuiltinArg choice{parts.front(), {}};
  choice.args.assign(parts.begin() + 1, parts.end());
  return choice;
}

ResourceState qubit_medium(const Options& opt) {
  if (opt.builtin.empty() == opt.resource_file.empty()) {
    throw UsageError("exactly one of --builtin or --resource-file is required");
  }
  if (!opt.resource_file.empty()) {
    ResourceState chi = io::load_resource_file(opt.resource_file);
    if (opt.n && *opt.n != chi.n()) throw UsageError("--n does not match the resource file");
    return chi;
  }
  const BuiltinArg choice = parse_builtin(opt.builtin);
  int n = opt.n.value_or(choice.name == "perm" ? 2 : 1);
  if (choice.name == "perfect" || choice.name == "mixed") {
    if (!choice.args.empty()) throw UsageError("builtin '" + choice.name + "' takes no parameters");
    return choice.name == "perfect" ? perfect_bells(n) : fully_mixed(n);
  }
  if (choice.name == "phasegate") {
    if (choice.args.size() > 2) throw UsageError("use phasegate[:theta[:n]]");
    double theta = opt.theta.value_or(0.0);
    if (!choice.args.empty()) theta = parse_double(choice.args[0], "theta");
    if (choice.args.size() == 2) n = parse_int(choice.args[1], "n");
    return ResourceState::phase_gate_chain(n, theta);
  }
  if (choice.name == "perm") {
    if (choice.args.size() > 1) throw UsageError("use perm[:n]");
    if (!choice.args.empty()) n = parse_int(choice.args[0], "n");
    return ResourceState::permutation_mixture(n);
  }
  throw UsageError("unknown builtin '" + choice.name + "' (perfect|mixed|phasegate[:theta:n]|perm[:n])");
}

// --- commands ---------------------------------------------------------------

int cmd_channel_probs(const Options& opt) {
  const std::string format = require_format(opt, {"csv", "json"}, "channel-probs");
  const PauliChannel ch = channel_from_resource(qubit_medium(opt));
  auto entries = ch.probs().nonzero_entries();
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first.index() < b.first.index();
  });
  const double entropy = channel_entropy(ch);
  const double fidelity = entanglement_fidelity(ch);
  if (format == "json") {
    io::Json j = io::channel_to_json(ch);
    j["entropy_bits"] = entropy;
    j["entanglement_fidelity"] = fidelity;
    io::Json sorted = io::Json::array();
    for (const auto& [k, p] : entries) sorted.push_back(io::Json::array({k.to_string(), p}));
    j["sorted"] = std::move(sorted);
    emit(opt, j.dump(2) + "\n");
    return kExitOk;
  }
  std::string text = "# n=" + std::to_string(ch.n()) + "\n";
  text += "# entropy_bits=" + format_number(entropy) + "\n";
  text += "# entanglement_fidelity=" + format_number(fidelity) + "\n";
  text += "word,probability\n";
  for (const auto& [k, p] : entries) text += k.to_string() + "," + format_number(p) + "\n";
  emit(opt, text);
  return kExitOk;
}

std::vector<double> theta_grid(const Options& opt) {
  std::vector<double> thetas;
  if (opt.theta_grid.empty()) {
    for (int i = 0; i <= 10; ++i) thetas.push_back(i / 10.0 * std::numbers::pi);
    return thetas;
  }
  for (const auto& part : split(opt.theta_grid, ',')) {
    thetas.push_back(parse_double(part, "theta/pi grid value") * std::numbers::pi);
  }
  return thetas;
}

int cmd_fig2(const Options& opt) {
  const std::string format = require_format(opt, {"csv", "plotdata", "json"}, "fig2");
  std::vector<double> thetas = theta_grid(opt);
  if (opt.theta) thetas = {*opt.theta};
  const CapacityTable table = phase_gate_capacity_curve(thetas, opt.n_min, opt.n_max, opt.tolerance);
  if (format == "csv") {
    emit(opt, to_csv(table));
  } else if (format == "plotdata") {
    emit(opt, to_plotdata(table));
  } else {
    io::Json j;
    j["n_min"] = opt.n_min;
    j["n_max"] = opt.n_max;
    j["tolerance"] = opt.tolerance;
    io::Json rows = io::Json::array();
    for (const auto& r : table.rows) rows.push_back({{"theta", r.theta}, {"n", r.n}, {"rate", clamp_rate(r.rate)}});
    j["rows"] = std::move(rows);
    io::Json est = io::Json::array();
    for (const auto& e : table.estimates) {
      est.push_back({{"theta", e.theta}, {"theta_over_pi", e.theta / std::numbers::pi}, {"rate", clamp_rate(e.rate)},
                     {"gap", e.gap}, {"converged", e.converged}});
    }
    j["estimates"] = std::move(est);
    emit(opt, j.dump(2) + "\n");
  }
  if (!opt.plot_out.empty()) write_file(opt.plot_out, to_plotdata(table));
  for (const auto& e : table.estimates) {
    std::fprintf(stderr, "theta/pi=%-6s Q(%d)=%.6f gap=%.3e %s\n", format_number(e.theta / std::numbers::pi).c_str(),
                 e.n_max, clamp_rate(e.rate), e.gap, e.converged ? "converged" : "NOT converged");
  }
  return table.all_converged() ? kExitOk : kExitQuality;
}

cv::CovMatrix cv_medium(const Options& opt, int& n) {
  if (opt.builtin.empty() == opt.resource_file.empty()) {
    throw UsageError("exactly one of --builtin or --resource-file is required");
  }
  if (!opt.resource_file.empty()) {
    cv::CovMatrix g = io::load_cov_file(opt.resource_file);
    if (g.modes() % 2 != 0) throw ValidationError("dimension", "medium needs 2n modes");
    n = g.modes() / 2;
    if (opt.n && *opt.n != n) throw UsageError("--n does not match the covariance file");
    return g;
  }
  const BuiltinArg choice = parse_builtin(opt.builtin);
  n = opt.n.value_or(1);
  if (choice.args.size() > 1) throw UsageError("use " + choice.name + "[:value]");
  if (choice.name == "epr") {
    const double r = choice.args.empty() ? 4.0 : parse_double(choice.args[0], "squeezing r");
    return cv::epr_medium(n, r, opt.nu.value_or(1.0));
  }
  if (choice.name == "thermal") {
    const double nu = choice.args.empty() ? opt.nu.value_or(2.0) : parse_double(choice.args[0], "nu");
    return cv::thermal_medium(n, nu);
  }
  if (choice.name == "vacuum") {
    if (!choice.args.empty()) throw UsageError("builtin 'vacuum' takes no parameters");
    return cv::thermal_medium(n, 1.0);
  }
  throw UsageError("unknown CV builtin '" + choice.name + "' (epr[:r]|thermal[:nu]|vacuum)");
}

io::Json real_matrix_json(const cv::RealMatrix& m) {
  io::Json rows = io::Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    io::Json row = io::Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string vector_text(const cv::RealVector& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_number(v(i));
  return s;
}

int cmd_cv_bound(const Options& opt) {
  const std::string format = require_format(opt, {"text", "json"}, "cv-bound");
  int n = 0;
  const cv::CovMatrix medium = cv_medium(opt, n);
  const cv::CvBoundReport rep = cv::cv_capacity_upper(medium, n, opt.r_src, opt.r_probe);
  if (format == "json") {
    io::Json j;
    j["n"] = n;
    j["r_src"] = rep.r_src;
    j["r_probe"] = rep.r_probe;
    j["noise_covariance"] = real_matrix_json(rep.channel.noise);
    j["cj_symplectic"] = std::vector<double>(rep.cj_symplectic.data(), rep.cj_symplectic.data() + rep.cj_symplectic.size());
    j["pt_symplectic"] = std::vector<double>(rep.pt_symplectic.data(), rep.pt_symplectic.data() + rep.pt_symplectic.size());
    j["log_negativity"] = rep.log_negativity;
    j["bound_per_mode"] = rep.bound_per_mode;
    emit(opt, j.dump(2) + "\n");
    return kExitOk;
  }
  std::string t;
  t += "n               " + std::to_string(n) + "\n";
  t += "r_src           " + format_number(rep.r_src) + "\n";
  t += "r_probe         " + format_number(rep.r_probe) + "\n";
  t += "noise N         (x1..xn, y1..yn)\n";
  for (Eigen::Index r = 0; r < rep.channel.noise.rows(); ++r) {
    t += "               ";
    for (Eigen::Index c = 0; c < rep.channel.noise.cols(); ++c) t += " " + format_number(rep.channel.noise(r, c));
    t += "\n";
  }
  t += "cj symplectic   " + vector_text(rep.cj_symplectic) + "\n";
  t += "pt symplectic   " + vector_text(rep.pt_symplectic) + "\n";
  t += "log negativity  " + format_number(rep.log_negativity) + "\n";
  t += "bound per mode  " + format_number(rep.bound_per_mode) + "\n";
  emit(opt, t);
  return kExitOk;
}

ComplexMatrix product_state(int n, const ComplexVector& single) {
  ComplexVector v = single;
  for (int j = 1; j < n; ++j) v = kron(v, single);
  return v * v.adjoint();
}

ComplexMatrix input_state(const Options& opt, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  const auto choice = parse_builtin(opt.input);
  const double h = 1.0 / std::sqrt(2.0);
  if (choice.name == "mixed") return ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  if (choice.name == "zero" || choice.name == "one" || choice.name == "plus" || choice.name == "minus") {
    ComplexVector s(2);
    if (choice.name == "zero") s << 1, 0;
    if (choice.name == "one") s << 0, 1;
    if (choice.name == "plus") s << h, h;
    if (choice.name == "minus") s << h, -h;
    return product_state(n, s);
  }
  if (choice.name == "random") {
    const std::uint64_t s = choice.args.empty() ? 1 : static_cast<std::uint64_t>(parse_int(choice.args[0], "input seed"));
    std::mt19937_64 rng(s);
    std::normal_distribution<double> g;
    ComplexMatrix a(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) a(r, c) = Complex(g(rng), g(rng));
    ComplexMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
  }
  // Anything else is a JSON file {"matrix": [[[re, im], ...], ...]}.
  const io::Json j = io::read_json_file(opt.input);
  if (!j.is_object() || !j.contains("matrix")) throw ValidationError("schema", "input file needs a 'matrix' field");
  ComplexMatrix rho = io::complex_matrix_from_json(j["matrix"], "input matrix");
  validate_density_matrix(rho, d, "input state");
  return rho;
}

ResourceState dense_for_simulation(const ResourceState& chi) {
  if (chi.n() > 2) throw SizeError("simulate: n=" + std::to_string(chi.n()) + " exceeds the simulation cutoff 2");
  return chi.is_dense() ? chi : ResourceState::dense(chi.n(), to_dense_matrix(chi));
}

int cmd_simulate(const Options& opt) {
  require_format(opt, {"json"}, "simulate");
  if (opt.trials < 1) throw UsageError("--trials must be >= 1");
  const ResourceState chi = dense_for_simulation(qubit_medium(opt));
  const ComplexMatrix rho = input_state(opt, chi.n());
  const SimReport rep = simulate_teleportation(chi, rho, static_cast<std::uint64_t>(opt.trials), opt.seed);
  emit(opt, io::sim_report_to_json(rep).dump(2) + "\n");

  const double bound = 5.0 / std::sqrt(static_cast<double>(rep.trials));
  std::FILE* summary = opt.out.empty() ? stderr : stdout;
  std::fprintf(summary, "trials %llu  seed %llu  generator %s\n", static_cast<unsigned long long>(rep.trials),
               static_cast<unsigned long long>(rep.seed), rep.generator.c_str());
  std::fprintf(summary, "%-6s %10s %12s %10s %12s\n", "word", "outcome", "p(outcome)", "pauli", "p_k");
  for (std::size_t k = 0; k < rep.outcome_counts.size(); ++k) {
    std::fprintf(summary, "%-6s %10llu %12.6f %10llu %12.6f\n",
                 PauliString::from_index(rep.n, k).to_string().c_str(),
                 static_cast<unsigned long long>(rep.outcome_counts[k]), rep.outcome_probabilities[k],
                 static_cast<unsigned long long>(rep.pauli_counts[k]), rep.predicted_probs[k]);
  }
  std::fprintf(summary, "tv_distance %.6g (5/sqrt(trials) = %.6g)\n", rep.tv_distance, bound);
  std::fprintf(summary, "outcome_tv_distance %.6g\n", rep.outcome_tv_distance);
  std::fprintf(summary, "trace_distance %.6g\n", rep.trace_distance);
  const bool ok = rep.tv_distance < bound && rep.outcome_tv_distance < bound;
  return ok ? kExitOk : kExitQuality;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation-induced correlated Pauli and Gaussian noise channels"};
  app.require_subcommand(1);
  Options opt;

  auto add_medium = [&opt](CLI::App* sub) {
    sub->add_option("--builtin", opt.builtin, "Builtin medium");
    sub->add_option("--resource-file", opt.resource_file, "Medium JSON file");
    sub->add_option("--n", opt.n, "Number of pairs");
  };
  auto add_output = [&opt](CLI::App* sub) {
    sub->add_option("--out", opt.out, "Output file (default: stdout)");
    sub->add_option("--format", opt.format, "Output format");
  };

  auto* probs = app.add_subcommand("channel-probs", "Pauli probabilities p_k of a qubit medium");
  add_medium(probs);
  probs->add_option("--theta", opt.theta, "Phase shift in radians (phasegate)");
  add_output(probs);

  auto* fig2 = app.add_subcommand("fig2", "Phase-gate capacity curve Q(n) = 1 - S/n");
  fig2->add_option("--theta-grid", opt.theta_grid, "Comma-separated theta/pi values (default 0,0.1,...,1)");
  fig2->add_option("--theta", opt.theta, "Single phase shift in radians");
  fig2->add_option("--n-min", opt.n_min, "Smallest n")->capture_default_str();
  fig2->add_option("--n-max", opt.n_max, "Largest n")->capture_default_str();
  fig2->add_option("--tolerance", opt.tolerance, "Convergence tolerance at n_max")->capture_default_str();
  fig2->add_option("--plot-out", opt.plot_out, "Also write the plot data to this file");
  add_output(fig2);

  auto* cvb = app.add_subcommand("cv-bound", "Log-negativity bound of a Gaussian medium");
  add_medium(cvb);
  cvb->add_option("--r-src", opt.r_src, "Source squeezing")->capture_default_str();
  cvb->add_option("--r-probe", opt.r_probe, "Probe squeezing")->capture_default_str();
  cvb->add_option("--nu", opt.nu, "Thermal symplectic value");
  add_output(cvb);

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo teleportation protocol");
  add_medium(sim);
  sim->add_option("--theta", opt.theta, "Phase shift in radians (phasegate)");
  sim->add_option("--input", opt.input, "mixed|zero|one|plus|minus|random[:seed]|<file.json>")->capture_default_str();
  sim->add_option("--trials", opt.trials, "Number of trials")->capture_default_str();
  sim->add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
  add_output(sim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (probs->parsed()) return cmd_channel_probs(opt);
    if (fig2->parsed()) return cmd_fig2(opt);
    if (cvb->parsed()) return cmd_cv_bound(opt);
    return cmd_simulate(opt);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
