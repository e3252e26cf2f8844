#pragma once

#include "qmut/coxeter.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace qmut {

// Matrix entries can exceed 2^53, so they serialize as decimal strings;
// parsing accepts numbers or strings.
nlohmann::json json_from_int(const Int& x);
Int int_from_json(const nlohmann::json& j);

nlohmann::json json_from_row(const std::vector<Int>& row);
nlohmann::json json_from_mat(const Mat& m);
Mat mat_from_json(const nlohmann::json& j);

// Sequences, orderings, and words cross the boundary 1-based.
nlohmann::json json_from_indices(const std::vector<int>& w);
std::vector<int> indices_from_json(const nlohmann::json& j, int n);

// Quiver files: {"n": <int>, "b": [[...]]}; entries that fit in 64 bits are
// plain numbers.
nlohmann::json quiver_to_json(const ExchangeMatrix& b);
ExchangeMatrix quiver_from_json(const nlohmann::json& j);

// Named built-in quivers, or a path to a JSON file.
ExchangeMatrix load_quiver(const std::string& name_or_path);
ExchangeMatrix builtin_markov();
ExchangeMatrix builtin_q233();

// "1,2,3" with 1-based vertices -> 0-based indices.
std::vector<int> parse_indices(const std::string& csv, int n);
std::string format_indices(const std::vector<int>& w);

// Reflection word as space-separated 1-based letters, e.g. "2 1 3 1 2".
std::string word_to_string(const Word& w);

// FNV-1a over the canonical dump; stable across runs for replay checks.
std::string digest64(const nlohmann::json& j);

// Appends one JSON line {"time", "command", "config", "digest", "pass"}.
void append_run_record(const std::string& path, const std::string& command,
                       const nlohmann::json& config, const std::string& digest, bool pass);

}  // namespace qmut
