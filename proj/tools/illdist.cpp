// illdist: residue-class structure toolkit for finite lattice point sets.
//
// Subcommands: gen, profile, sample, solve, pipeline, verify. All randomized
// commands require a seed (default 0) that is echoed in every report, and
// all file outputs are written atomically (temp file + rename). Exit codes:
// 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "illdist/error.hpp"
#include "illdist/generators.hpp"
#include "illdist/pipeline.hpp"
#include "illdist/point_set.hpp"
#include "illdist/polynomial.hpp"
#include "illdist/primes.hpp"
#include "illdist/report.hpp"
#include "illdist/residue.hpp"
#include "illdist/sampling.hpp"
#include "illdist/siegel.hpp"

namespace {

using illdist::Coord;
using illdist::errc;
using illdist::Json;
using illdist::raise;
using illdist::require;

std::vector<Coord> parse_int_list(const std::string& text, const char* what) {
  std::vector<Coord> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    Coord v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + end, v);
    if (ec != std::errc() || ptr != text.data() + end)
      raise(errc::usage_error, std::string(what) + ": bad integer list '" +
                                   text + "'");
    values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

// --config file: a JSON object of long-flag-name -> value, merged under
// explicit command-line flags.
class ConfigFile {
 public:
  void load(const std::string& path) {
    const std::string text = illdist::read_text_file(path);
    try {
      json_ = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      raise(errc::config_parse_error,
            path + ": " + e.what());
    }
    require(json_.is_object(), errc::config_parse_error,
            path + ": top level must be a JSON object");
    static const std::vector<std::string> known = {
        "n",     "d",        "kappa",  "tau",    "eta",   "eps",
        "seed",  "trials",   "input",  "output", "variant", "epsilon",
        "rho",   "m",        "degree", "threads", "mode", "prime_bound",
        "coeffs", "yvals",   "zvals",  "c_bound", "c1",   "c2",
        "c3",    "c4",       "C1",     "C2",     "c_d",  "max_iterations",
        "poly"};
    for (const auto& [key, value] : json_.items())
      require(std::find(known.begin(), known.end(), key) != known.end(),
              errc::config_parse_error, path + ": unknown key '" + key + "'");
    path_ = path;
    loaded_ = true;
  }

  template <typename T>
  void merge(const CLI::App* cmd, const std::string& name, T& value) const {
    if (!loaded_ || !json_.contains(name)) return;
    // config keys use underscores; some flags spell them with dashes
    const CLI::Option* opt = cmd->get_option_no_throw("--" + name);
    if (opt == nullptr) {
      std::string dashed = name;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      opt = cmd->get_option_no_throw("--" + dashed);
    }
    if (opt != nullptr && opt->count() > 0) return;  // explicit flag wins
    try {
      value = json_.at(name).get<T>();
    } catch (const nlohmann::json::exception& e) {
      raise(errc::config_parse_error,
            path_ + ": key '" + name + "': " + e.what());
    }
  }

 private:
  Json json_;
  std::string path_;
  bool loaded_ = false;
};

void emit(const std::string& content, const std::string& output_path) {
  if (output_path.empty())
    std::cout << content;
  else
    illdist::write_text_atomic(output_path, content);
}

Json parse_json_file(const std::string& path) {
  const std::string text = illdist::read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    raise(errc::parse_error, path + ": " + e.what());
  }
}

illdist::LatticePointSet load_input_set(const std::string& path) {
  require(!path.empty(), errc::usage_error, "--input is required");
  return illdist::load_set_file(path);
}

struct CommonFlags {
  std::string input, output, config_path;
  Coord n = 0;
  int d = 0;
  double kappa = -1.0, tau = 1.0, eta = 1.0, eps = 0.1;
  std::uint64_t seed = 0;
  std::int64_t trials = 64;
  int threads = 1;
  double c1 = 0.1, c2 = 0.1, c3 = 0.1, c4 = 0.25;
  double C1 = 1.0, C2 = 1.0, c_d = 1.0;
  std::int64_t max_iterations = 0;
};

void add_common_pipeline_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--input", f.input, "point-set file");
  cmd->add_option("--output", f.output, "output path (stdout when absent)");
  cmd->add_option("--config", f.config_path, "JSON config file merged under flags");
  cmd->add_option("--n", f.n, "box bound N (must match the input header)");
  cmd->add_option("--d", f.d, "dimension d (must match the input header)");
  cmd->add_option("--kappa", f.kappa, "occupancy exponent kappa in [0, d)");
  cmd->add_option("--tau", f.tau, "window scale tau > 0");
  cmd->add_option("--eta", f.eta, "characteristic-size scale eta > 0");
  cmd->add_option("--seed", f.seed, "random seed (echoed in reports)");
  cmd->add_option("--trials", f.trials, "tuple search trials");
  cmd->add_option("--threads", f.threads, "worker thread cap");
  cmd->add_option("--c1", f.c1, "good-prime fraction constant");
  cmd->add_option("--c2", f.c2, "good-x fraction constant");
  cmd->add_option("--c3", f.c3, "S' density constant");
  cmd->add_option("--c4", f.c4, "coverage threshold constant");
}

void merge_common(const ConfigFile& cfg, const CLI::App* cmd, CommonFlags& f) {
  cfg.merge(cmd, "input", f.input);
  cfg.merge(cmd, "output", f.output);
  cfg.merge(cmd, "n", f.n);
  cfg.merge(cmd, "d", f.d);
  cfg.merge(cmd, "kappa", f.kappa);
  cfg.merge(cmd, "tau", f.tau);
  cfg.merge(cmd, "eta", f.eta);
  cfg.merge(cmd, "seed", f.seed);
  cfg.merge(cmd, "trials", f.trials);
  cfg.merge(cmd, "threads", f.threads);
  cfg.merge(cmd, "c1", f.c1);
  cfg.merge(cmd, "c2", f.c2);
  cfg.merge(cmd, "c3", f.c3);
  cfg.merge(cmd, "c4", f.c4);
}

// pipeline/sample/profile take (N, d) from the set file; explicit --n/--d
// must agree with the header when given.
void check_header_flags(const illdist::LatticePointSet& S, Coord n, int d) {
  if (n != 0)
    require(n == S.box_bound, errc::header_mismatch,
            "--n " + std::to_string(n) + " conflicts with file N=" +
                std::to_string(S.box_bound));
  if (d != 0)
    require(d == S.dim, errc::header_mismatch,
            "--d " + std::to_string(d) + " conflicts with file d=" +
                std::to_string(S.dim));
}

int run_cli(int argc, char** argv) {
  CLI::App app{"residue-class structure toolkit for lattice point sets"};
  app.require_subcommand(1);
  ConfigFile cfg;

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate an ill-distributed set");
  std::string gen_variant, gen_mode = "small", gen_coeffs, gen_yvals, gen_zvals;
  std::string gen_input, gen_output, gen_config;
  Coord gen_n = 0;
  int gen_d = 0, gen_m = 1;
  double gen_epsilon = 0.5, gen_rho = 0.0;
  std::uint64_t gen_seed = 0, gen_prime_bound = 2;
  gen->add_option("--variant", gen_variant,
                  "crt | product | perturbed | graph_shift")->required();
  gen->add_option("--n", gen_n, "box bound N");
  gen->add_option("--d", gen_d, "Cartesian power for the product variant");
  gen->add_option("--epsilon", gen_epsilon, "occupancy exponent of Example-style sets");
  gen->add_option("--mode", gen_mode, "crt mode: small | full");
  gen->add_option("--prime-bound", gen_prime_bound, "crt full-mode prime bound B");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--coeffs", gen_coeffs, "perturbed variant: f coefficients, constant first");
  gen->add_option("--yvals", gen_yvals, "perturbed variant: Y as a comma list");
  gen->add_option("--rho", gen_rho, "graph_shift variant: coefficient scale N^rho");
  gen->add_option("--m", gen_m, "graph_shift variant: monomial degree");
  gen->add_option("--zvals", gen_zvals, "graph_shift variant: Z as a comma list");
  gen->add_option("--input", gen_input, "product variant: base set X");
  gen->add_option("--output", gen_output, "output path (stdout when absent)");
  gen->add_option("--config", gen_config, "JSON config file merged under flags");

  // ---- profile ----
  auto* profile = app.add_subcommand("profile", "occupancy profile over the prime window");
  CommonFlags pf;
  double pf_c_bound = 1.0;
  add_common_pipeline_flags(profile, pf);
  profile->add_option("--c-bound", pf_c_bound, "occupancy limit scale c");

  // ---- sample ----
  auto* sample = app.add_subcommand("sample", "select a characteristic subset");
  CommonFlags sf;
  add_common_pipeline_flags(sample, sf);

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "small polynomial vanishing on a point set");
  std::string sv_input, sv_output, sv_config;
  int sv_degree = 0;
  solve->add_option("--input", sv_input, "point-set file with Sigma");
  solve->add_option("--degree", sv_degree, "degree cap D (default: choose_degree(|Sigma|, d))");
  solve->add_option("--output", sv_output, "polynomial JSON path (stdout when absent)");
  solve->add_option("--config", sv_config, "JSON config file merged under flags");

  // ---- pipeline ----
  auto* pipeline = app.add_subcommand("pipeline", "full structure pipeline with iteration");
  CommonFlags plf;
  std::string pl_poly_out;
  double pl_eps = 0.1, pl_C1 = 1.0, pl_C2 = 1.0, pl_c_d = 1.0;
  std::int64_t pl_max_iterations = 0;
  add_common_pipeline_flags(pipeline, plf);
  pipeline->add_option("--eps", pl_eps, "target uncovered fraction in (0, 1)");
  pipeline->add_option("--C1", pl_C1, "constant of eta >= C1 tau^kappa");
  pipeline->add_option("--C2", pl_C2, "constant of tau >= C2 eta^(1/d)");
  pipeline->add_option("--c-d", pl_c_d, "scale of the reported asymptotic value bound");
  pipeline->add_option("--max-iterations", pl_max_iterations,
                       "round budget (default: 4 ceil(1/eps))");
  pipeline->add_option("--poly", pl_poly_out, "also write the product polynomial here");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "re-check a polynomial against a set");
  std::string vf_input, vf_poly, vf_output, vf_config;
  double vf_kappa = -1.0, vf_tau = 1.0;
  verify->add_option("--input", vf_input, "point-set file");
  verify->add_option("--poly", vf_poly, "polynomial JSON file");
  verify->add_option("--kappa", vf_kappa, "window kappa for the divisor check");
  verify->add_option("--tau", vf_tau, "window tau for the divisor check");
  verify->add_option("--output", vf_output, "report path (stdout when absent)");
  verify->add_option("--config", vf_config, "JSON config file merged under flags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    raise(errc::usage_error, e.what());
  }

  if (gen->parsed()) {
    if (!gen_config.empty()) cfg.load(gen_config);
    cfg.merge(gen, "n", gen_n);
    cfg.merge(gen, "d", gen_d);
    cfg.merge(gen, "epsilon", gen_epsilon);
    cfg.merge(gen, "mode", gen_mode);
    cfg.merge(gen, "prime_bound", gen_prime_bound);
    cfg.merge(gen, "seed", gen_seed);
    cfg.merge(gen, "coeffs", gen_coeffs);
    cfg.merge(gen, "yvals", gen_yvals);
    cfg.merge(gen, "rho", gen_rho);
    cfg.merge(gen, "m", gen_m);
    cfg.merge(gen, "zvals", gen_zvals);
    cfg.merge(gen, "input", gen_input);
    cfg.merge(gen, "output", gen_output);

    illdist::GeneratorSpec spec;
    if (gen_variant == "crt") {
      const auto mode = [&] {
        if (gen_mode == "small") return illdist::CrtMode::small;
        if (gen_mode == "full") return illdist::CrtMode::full;
        raise(errc::usage_error, "--mode must be small or full");
      }();
      require(gen_n >= 2, errc::usage_error, "--n is required");
      spec = illdist::CrtSpec{gen_epsilon, mode, gen_prime_bound};
    } else if (gen_variant == "product") {
      require(gen_d >= 1, errc::usage_error, "--d (the power) must be >= 1");
      spec = illdist::ProductSpec{load_input_set(gen_input), gen_d};
    } else if (gen_variant == "perturbed") {
      require(gen_n >= 2, errc::usage_error, "--n is required");
      require(!gen_coeffs.empty(), errc::usage_error, "--coeffs is required");
      require(!gen_yvals.empty(), errc::usage_error, "--yvals is required");
      spec = illdist::PerturbedSpec{parse_int_list(gen_coeffs, "--coeffs"),
                                    parse_int_list(gen_yvals, "--yvals")};
    } else if (gen_variant == "graph_shift") {
      require(gen_n >= 2, errc::usage_error, "--n is required");
      require(!gen_zvals.empty(), errc::usage_error, "--zvals is required");
      spec = illdist::GraphShiftSpec{gen_rho, gen_m,
                                     parse_int_list(gen_zvals, "--zvals")};
    } else {
      raise(errc::usage_error, "unknown --variant '" + gen_variant + "'");
    }
    const illdist::LatticePointSet out_set =
        illdist::generate_set(gen_n, spec, gen_seed);
    if (gen_output.empty()) {
      std::ostringstream buf;
      illdist::save_set(out_set, buf);
      std::cout << buf.str();
    } else {
      illdist::save_set_file(out_set, gen_output);
    }
    return 0;
  }

  if (profile->parsed()) {
    if (!pf.config_path.empty()) cfg.load(pf.config_path);
    merge_common(cfg, profile, pf);
    cfg.merge(profile, "c_bound", pf_c_bound);
    require(pf.kappa >= 0.0, errc::usage_error, "--kappa is required");
    auto S = load_input_set(pf.input);
    check_header_flags(S, pf.n, pf.d);
    auto window = illdist::primes_in_window(S.box_bound, S.dim, pf.kappa, pf.tau);
    auto report = illdist::check_ill_distribution(S, window, pf.kappa, pf_c_bound);

    Json j;
    j["config"] = {{"n", S.box_bound}, {"d", S.dim},   {"kappa", pf.kappa},
                   {"tau", pf.tau},    {"c_bound", pf_c_bound}};
    j["window"] = {{"lower", window.lower},
                   {"upper", window.upper},
                   {"primes_count", window.primes.size()},
                   {"chebyshev_mass", window.chebyshev_mass}};
    Json per_prime = Json::array();
    for (const auto& e : report.per_prime)
      per_prime.push_back({{"p", e.p},
                           {"occupancy", e.occupancy},
                           {"limit", e.limit},
                           {"flagged", e.flagged}});
    j["per_prime"] = std::move(per_prime);
    j["pass"] = report.pass;
    j["empty_window"] = report.empty_window;
    emit(illdist::render_json(j), pf.output);
    return 0;
  }

  if (sample->parsed()) {
    if (!sf.config_path.empty()) cfg.load(sf.config_path);
    merge_common(cfg, sample, sf);
    require(sf.kappa >= 0.0, errc::usage_error, "--kappa is required");
    auto S = load_input_set(sf.input);
    check_header_flags(S, sf.n, sf.d);
    auto window = illdist::primes_in_window(S.box_bound, S.dim, sf.kappa, sf.tau);
    illdist::SamplingParams params;
    params.eta = sf.eta;
    params.r = illdist::characteristic_size(S.box_bound, S.dim, sf.kappa, sf.eta);
    params.trials = sf.trials;
    params.c1 = sf.c1;
    params.c2 = sf.c2;
    params.c3 = sf.c3;
    params.c4 = sf.c4;
    params.threads = sf.threads;
    auto result = illdist::select_characteristic(S, window, params, sf.seed);

    std::vector<double> cov;
    for (const auto& x : result.s_prime) cov.push_back(result.coverage.at(x));
    std::sort(cov.begin(), cov.end());
    const double cov_min = cov.empty() ? 0.0 : cov.front();
    const double cov_median =
        cov.empty() ? 0.0
                    : (cov.size() % 2 ? cov[cov.size() / 2]
                                      : 0.5 * (cov[cov.size() / 2 - 1] +
                                               cov[cov.size() / 2]));

    Json j;
    j["config"] = {{"n", S.box_bound}, {"d", S.dim},     {"kappa", sf.kappa},
                   {"tau", sf.tau},    {"eta", sf.eta},  {"seed", sf.seed},
                   {"trials", sf.trials}, {"c1", sf.c1}, {"c2", sf.c2},
                   {"c3", sf.c3},      {"c4", sf.c4}};
    j["window"] = {{"lower", window.lower},
                   {"upper", window.upper},
                   {"primes_count", window.primes.size()},
                   {"chebyshev_mass", window.chebyshev_mass}};
    j["sampling"] = {{"r", params.r},
                     {"trials", sf.trials},
                     {"good_primes", result.good_primes.size()},
                     {"s_prime_size", result.s_prime.size()},
                     {"coverage_min", cov_min},
                     {"coverage_median", cov_median}};
    Json tuple = Json::array();
    for (const auto& point : result.tuple) tuple.push_back(point);
    j["characteristic"] = std::move(tuple);
    emit(illdist::render_json(j), sf.output);
    return 0;
  }

  if (solve->parsed()) {
    if (!sv_config.empty()) cfg.load(sv_config);
    cfg.merge(solve, "input", sv_input);
    cfg.merge(solve, "degree", sv_degree);
    cfg.merge(solve, "output", sv_output);
    if (solve->count("--degree") > 0 || sv_degree != 0)
      require(sv_degree >= 1, errc::usage_error, "--degree must be >= 1");
    auto sigma = load_input_set(sv_input);
    const int D = sv_degree >= 1
                      ? sv_degree
                      : illdist::choose_degree(
                            static_cast<std::int64_t>(sigma.size()), sigma.dim);
    auto instance = illdist::make_siegel_instance(sigma.points, sigma.dim, D,
                                                  sigma.box_bound);
    auto P = illdist::solve_vanishing(instance);
    emit(illdist::render_json(illdist::polynomial_to_json(P, sigma.box_bound)),
         sv_output);
    return 0;
  }

  if (pipeline->parsed()) {
    if (!plf.config_path.empty()) cfg.load(plf.config_path);
    merge_common(cfg, pipeline, plf);
    cfg.merge(pipeline, "eps", pl_eps);
    cfg.merge(pipeline, "C1", pl_C1);
    cfg.merge(pipeline, "C2", pl_C2);
    cfg.merge(pipeline, "c_d", pl_c_d);
    cfg.merge(pipeline, "max_iterations", pl_max_iterations);
    cfg.merge(pipeline, "poly", pl_poly_out);
    require(plf.kappa >= 0.0, errc::usage_error, "--kappa is required");
    auto S = load_input_set(plf.input);
    check_header_flags(S, plf.n, plf.d);

    illdist::PipelineConfig pc;
    pc.N = S.box_bound;
    pc.d = S.dim;
    pc.kappa = plf.kappa;
    pc.eta = plf.eta;
    pc.tau = plf.tau;
    pc.eps = pl_eps;
    pc.seed = plf.seed;
    pc.trials = plf.trials;
    pc.C1 = pl_C1;
    pc.C2 = pl_C2;
    pc.c_d = pl_c_d;
    pc.c1 = plf.c1;
    pc.c2 = plf.c2;
    pc.c3 = plf.c3;
    pc.c4 = plf.c4;
    pc.max_iterations = pl_max_iterations;
    pc.threads = plf.threads;

    const auto constants = illdist::constants_check(pc);
    if (!constants.ok)
      std::cerr << "warning: asymptotic constants not satisfied ("
                << constants.explanation << ")\n";

    auto outcome = illdist::iterate(S, pc);
    emit(illdist::render_json(illdist::iterate_report_to_json(pc, outcome)),
         plf.output);
    if (!pl_poly_out.empty())
      illdist::write_text_atomic(
          pl_poly_out, illdist::render_json(illdist::polynomial_to_json(
                           outcome.product, pc.N)));
    if (outcome.budget_exceeded) {
      std::cerr << "error: " << illdist::errc_name(errc::iteration_budget_exceeded)
                << ": covered fraction " << outcome.covered_fraction
                << " after " << outcome.rounds.size() << " rounds\n";
      return 1;
    }
    return 0;
  }

  if (verify->parsed()) {
    if (!vf_config.empty()) cfg.load(vf_config);
    cfg.merge(verify, "input", vf_input);
    cfg.merge(verify, "poly", vf_poly);
    cfg.merge(verify, "kappa", vf_kappa);
    cfg.merge(verify, "tau", vf_tau);
    cfg.merge(verify, "output", vf_output);
    auto S = load_input_set(vf_input);
    require(!vf_poly.empty(), errc::usage_error, "--poly is required");
    auto [P, poly_n] = illdist::polynomial_from_json(parse_json_file(vf_poly));
    require(P.dim() == S.dim, errc::dimension_mismatch,
            "polynomial dimension does not match the set");
    require(poly_n == S.box_bound, errc::header_mismatch,
            "polynomial N does not match the set");

    std::int64_t vanishing = 0;
    for (const auto& x : S.points)
      if (P.evaluate(x) == 0) ++vanishing;
    const auto measure = illdist::measure_polynomial(P, S.box_bound);

    Json j;
    j["config"] = {{"n", S.box_bound}, {"d", S.dim}};
    j["polynomial"] = {{"degree", measure.degree},
                       {"height", measure.height.get_str()},
                       {"complexity", measure.complexity}};
    j["vanishing_count"] = vanishing;
    j["proportion"] =
        static_cast<double>(vanishing) / static_cast<double>(S.size());
    if (vf_kappa >= 0.0) {
      auto window =
          illdist::primes_in_window(S.box_bound, S.dim, vf_kappa, vf_tau);
      const double cap = illdist::log_mpz(measure.height) +
                         illdist::log_mpz(illdist::binomial_mpz(
                             measure.degree + S.dim, S.dim)) +
                         measure.degree * std::log(static_cast<double>(S.box_bound));
      std::int64_t forced = 0, violations = 0;
      for (const auto& x : S.points) {
        if (illdist::divisor_weight(P, x, window) > cap) {
          ++forced;
          if (P.evaluate(x) != 0) ++violations;
        }
      }
      j["window"] = {{"lower", window.lower},
                     {"upper", window.upper},
                     {"primes_count", window.primes.size()},
                     {"chebyshev_mass", window.chebyshev_mass}};
      j["forced_count"] = forced;
      j["forced_violations"] = violations;
    }
    emit(illdist::render_json(j), vf_output);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const illdist::error& e) {
    const bool usage = e.code() == errc::usage_error ||
                       e.code() == errc::config_parse_error;
    std::cerr << "error: " << e.code_name() << ": " << e.what() << "\n";
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: INTERNAL_ERROR: " << e.what() << "\n";
    return 1;
  }
}
