#pragma once

/// File formats:
///   • signals — CSV (one sample per line, 1-d) or raw binary: 16-byte header
///     `MFSG` + u32 version + u32 d + u32 J (little-endian), then 2^{dJ}
///     little-endian IEEE-754 doubles in row-major order,
///   • coefficient pyramids — NDJSON: one header record
///     {"type":"pyramid","d":…,"J":…,"normalization":"Linf","coarse":[…]}
///     followed by one {"i":…,"j":…,"k":[…],"c":…} record per nonzero
///     coefficient (scale-major, orientation, then position order),
///   • leader pyramids — NDJSON: header record
///     {"type":"leaders","d":…,"J_trunc":…,"p":…,"guard":…} followed by
///     {"j":…,"k":[…],"dp":…} records for nonzero leaders,
///   • sequence descriptors — {"kind":"powerlog","s":…,"b":…} or
///     {"kind":"table","values":[…]}, also accepted in the shorthand forms
///     "powerlog:s[,b]" and "table:v0,v1,…",
///   • indices in [1, ∞] — JSON number or the string "inf".
///
/// All writers emit byte-deterministic output for identical inputs.

#include <string>

#include <nlohmann/json.hpp>

#include "leaderscope/admissible.hpp"
#include "leaderscope/leaders.hpp"
#include "leaderscope/wavelet.hpp"

namespace leaderscope {

/// Reads a signal, sniffing the binary magic and falling back to CSV.
Signal read_signal(const std::string& path);

void write_signal_csv(const Signal& signal, const std::string& path);
void write_signal_binary(const Signal& signal, const std::string& path);

CoefficientPyramid read_pyramid(const std::string& path);
void write_pyramid(const CoefficientPyramid& pyramid, const std::string& path);

LeaderPyramid read_leaders(const std::string& path);
void write_leaders(const LeaderPyramid& leaders, const std::string& path);

/// Parses a sequence descriptor (JSON object or shorthand string).
AdmissibleSequence parse_sequence(const std::string& descriptor);

/// JSON descriptor of a sequence (inverse of parse_sequence where possible;
/// derived sequences without an exact model are emitted as 65-entry tables).
nlohmann::json sequence_json(const AdmissibleSequence& sigma);

/// Parses "inf" (any case) or a number in [1, ∞); validates the index range.
double parse_index(const std::string& text, const char* what = "index");

/// Encodes an index as a JSON number, or "inf" for ∞.
nlohmann::json index_json(double value);

}  // namespace leaderscope
