#include "illdist/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "illdist/error.hpp"

namespace illdist {

Json config_to_json(const PipelineConfig& config) {
  Json j;
  j["n"] = config.N;
  j["d"] = config.d;
  j["kappa"] = config.kappa;
  j["eta"] = config.eta;
  j["tau"] = config.tau;
  j["eps"] = config.eps;
  j["seed"] = config.seed;
  j["trials"] = config.trials;
  j["C1"] = config.C1;
  j["C2"] = config.C2;
  j["c_d"] = config.c_d;
  j["c1"] = config.c1;
  j["c2"] = config.c2;
  j["c3"] = config.c3;
  j["c4"] = config.c4;
  j["max_iterations"] = config.max_iterations;
  return j;
}

Json polynomial_to_json(const IntegerPolynomial& P, Coord N) {
  require(!P.is_zero(), errc::zero_polynomial,
          "refusing to serialize the zero polynomial");
  Json j;
  j["v"] = 1;
  j["d"] = P.dim();
  j["N"] = N;
  Json terms = Json::array();
  for (const auto& [e, c] : P.terms()) {
    Json term;
    term["e"] = e;
    term["c"] = c.get_str();
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

std::pair<IntegerPolynomial, Coord> polynomial_from_json(const Json& j) {
  try {
    require(j.at("v").get<int>() == 1, errc::parse_error,
            "unsupported polynomial file version");
    const int d = j.at("d").get<int>();
    const auto n = j.at("N").get<Coord>();
    require(d >= 1, errc::parse_error, "polynomial dimension must be >= 1");
    require(n >= 2, errc::parse_error, "polynomial box bound must be >= 2");
    IntegerPolynomial P(d);
    Exponents prev;
    GradedLexLess less;
    for (const auto& term : j.at("terms")) {
      Exponents e = term.at("e").get<Exponents>();
      require(static_cast<int>(e.size()) == d, errc::parse_error,
              "exponent vector length mismatch");
      if (!prev.empty())
        require(less(prev, e), errc::parse_error,
                "terms must be strictly ascending in graded-lex order");
      const std::string c = term.at("c").get<std::string>();
      mpz_class coeff;
      require(coeff.set_str(c, 10) == 0, errc::parse_error,
              "bad coefficient '" + c + "'");
      require(coeff != 0, errc::parse_error, "zero coefficient stored");
      P.add_term(e, coeff);
      prev = std::move(e);
    }
    require(!P.is_zero(), errc::parse_error, "polynomial file has no terms");
    return {std::move(P), n};
  } catch (const nlohmann::json::exception& e) {
    raise(errc::parse_error, std::string("polynomial JSON: ") + e.what());
  }
}

Json window_to_json(const StructureReport& rep) {
  Json w;
  w["lower"] = rep.window_lower;
  w["upper"] = rep.window_upper;
  w["primes_count"] = rep.primes_count;
  w["chebyshev_mass"] = rep.chebyshev_mass;
  return w;
}

namespace {

Json sampling_to_json(const StructureReport& rep) {
  Json s;
  s["r"] = rep.r;
  s["trials"] = rep.trials;
  s["good_primes"] = rep.good_primes;
  s["s_prime_size"] = rep.s_prime_size;
  s["coverage_min"] = rep.coverage_min;
  s["coverage_median"] = rep.coverage_median;
  s["winner_meets_c1"] = rep.winner_meets_c1;
  s["s_prime_meets_c3"] = rep.s_prime_meets_c3;
  return s;
}

Json siegel_to_json(const StructureReport& rep) {
  Json s;
  s["D"] = rep.D;
  s["R"] = rep.R;
  s["log_height_bound"] = rep.log_height_bound;
  s["sigma_size"] = rep.sigma_size;
  s["height"] = rep.height.get_str();
  return s;
}

Json result_to_json(const StructureReport& rep) {
  Json r;
  r["degree"] = rep.degree;
  r["height"] = rep.height.get_str();
  r["complexity"] = rep.complexity;
  r["vanishing_count"] = rep.vanishing_count;
  r["proportion"] = rep.proportion;
  r["forced_count"] = rep.forced_count;
  r["forced_violations"] = rep.forced_violations;
  r["asymptotic_log_bound"] = rep.asymptotic_log_bound;
  return r;
}

}  // namespace

Json round_to_json(const StructureReport& rep) {
  Json j;
  j["input_size"] = rep.input_size;
  j["window"] = window_to_json(rep);
  j["sampling"] = sampling_to_json(rep);
  j["siegel"] = siegel_to_json(rep);
  j["result"] = result_to_json(rep);
  return j;
}

Json run_once_report_to_json(const PipelineConfig& config,
                             const StructureReport& rep) {
  Json j;
  j["config"] = config_to_json(config);
  j["window"] = window_to_json(rep);
  j["sampling"] = sampling_to_json(rep);
  j["siegel"] = siegel_to_json(rep);
  j["result"] = result_to_json(rep);
  return j;
}

Json iterate_report_to_json(const PipelineConfig& config,
                            const IterateOutcome& outcome) {
  Json j;
  j["config"] = config_to_json(config);
  if (!outcome.rounds.empty()) {
    j["window"] = window_to_json(outcome.rounds.front());
    j["sampling"] = sampling_to_json(outcome.rounds.front());
    j["siegel"] = siegel_to_json(outcome.rounds.front());
  }
  Json iterations = Json::array();
  for (const StructureReport& rep : outcome.rounds)
    iterations.push_back(round_to_json(rep));
  j["iterations"] = std::move(iterations);

  Json result;
  result["rounds"] = outcome.rounds.size();
  result["degree"] = outcome.degree;
  result["height"] = outcome.height.get_str();
  result["complexity"] = outcome.complexity;
  result["vanishing_count"] = outcome.covered_count;
  result["proportion"] = outcome.covered_fraction;
  result["covered_fraction"] = outcome.covered_fraction;
  result["reached_target"] = outcome.reached_target;
  result["budget_exceeded"] = outcome.budget_exceeded;
  result["forced_violations"] = outcome.forced_violations_total;
  j["result"] = std::move(result);
  return j;
}

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    require(out.good(), errc::io_write_failed, "cannot open " + tmp);
    out << content;
    out.flush();
    require(out.good(), errc::io_write_failed, "write failed for " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  require(!ec, errc::io_write_failed, "rename to " + path + " failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::io_not_found, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace illdist
