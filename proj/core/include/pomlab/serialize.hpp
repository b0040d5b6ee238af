#pragma once

// JSON forms of boxes, strategies and results.
//
//   NSBox       {"probs": [16 numbers, index 8a + 4b + 2x + y]}
//   Matrix      {"re": [[...]], "im": [[...]]}   ("im" optional on input)
//   GameResult  {"n", "per_pair": [{"x": "01", "y": 1, "p": ...}], "average", "parity_leak"}
//   RoundLog    {"rounds", "successes", "seed", "empirical_rate"}
//   PomStrategy {"theory": "...", "n": 2, ...}; see README for each theory.
//
// Parsing errors surface as ValidationError.

#include <nlohmann/json.hpp>
#include <string>

#include "pomlab/nsbox.hpp"
#include "pomlab/pomgame.hpp"
#include "pomlab/qcore.hpp"

namespace pomlab {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const Json &j);

Json box_to_json(const NSBox &box);
NSBox box_from_json(const Json &j);

Json strategy_to_json(const PomStrategy &strat);
PomStrategy strategy_from_json(const Json &j);

Json game_result_to_json(const PomInstance &inst, const GameResult &result);
Json round_log_to_json(const RoundLog &log);

/// Parses text; wraps syntax errors in ValidationError.
Json parse_json(const std::string &text);
/// Reads and parses a file.
Json load_json_file(const std::string &path);

/// Rounds every floating-point number in the tree to 10 significant digits.
Json round_numbers(const Json &j);

/// printf("%.10g").
std::string format_number(double v);

}  // namespace pomlab
