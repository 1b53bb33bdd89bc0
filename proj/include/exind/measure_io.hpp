#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "exind/measure.hpp"

namespace exind {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads `{"d": <int>, "atoms": [{"omega": [...], "mass": <float>}, ...]}`.
/// Entries within kZeroSnap of 0 are snapped first; remaining negative or
/// non-finite numbers are a ParseError. The returned measure is canonical but
/// not necessarily valid (see `validate`).
ExponentMeasure measure_from_json(const nlohmann::json& doc);
ExponentMeasure parse_measure(std::string_view text);
ExponentMeasure load_measure(const std::filesystem::path& path);

nlohmann::json to_json(const ExponentMeasure& measure);

}  // namespace exind
