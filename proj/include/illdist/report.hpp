#ifndef ILLDIST_REPORT_HPP
#define ILLDIST_REPORT_HPP

#include <json.hpp>

#include <string>

#include "illdist/pipeline.hpp"
#include "illdist/polynomial.hpp"

namespace illdist {

using Json = nlohmann::ordered_json;

// JSON forms of the project's file artifacts. Field order is fixed;
// rendering an identical value always yields identical bytes, which is what
// the determinism guarantees are stated against. The thread cap is execution
// machinery and is deliberately absent from the config echo.

Json config_to_json(const PipelineConfig& config);

// Polynomial file: {"v":1, "d":…, "N":…, "terms":[{"e":[…], "c":"…"}…]}
// with terms ascending in graded-lex order and coefficients as decimal
// strings.
Json polynomial_to_json(const IntegerPolynomial& P, Coord N);
std::pair<IntegerPolynomial, Coord> polynomial_from_json(const Json& j);

Json window_to_json(const StructureReport& rep);
Json round_to_json(const StructureReport& rep);

// Full pipeline report: config echo, first-round window/sampling/siegel
// blocks, per-round iteration trace, combined result.
Json iterate_report_to_json(const PipelineConfig& config,
                            const IterateOutcome& outcome);

Json run_once_report_to_json(const PipelineConfig& config,
                             const StructureReport& rep);

std::string render_json(const Json& j);  // the exact bytes written to disk

void write_text_atomic(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace illdist

#endif
