#include "exind/measure_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace exind {
namespace {

double read_number(const nlohmann::json& value, const std::string& where) {
  if (!value.is_number()) throw ParseError(where + " must be a number");
  double v = value.get<double>();
  if (!std::isfinite(v)) throw ParseError(where + " is not finite");
  if (std::abs(v) <= kZeroSnap) v = 0.0;
  if (v < 0.0) throw ParseError(where + " is negative");
  return v;
}

}  // namespace

ExponentMeasure measure_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("measure document must be a JSON object");
  if (!doc.contains("d") || !doc["d"].is_number_integer()) throw ParseError("field \"d\" must be an integer");
  const auto d = doc["d"].get<long long>();
  if (d < 1 || d > static_cast<long long>(IndexSet::kMaxDim)) throw ParseError("field \"d\" must lie in 1..64");
  if (!doc.contains("atoms") || !doc["atoms"].is_array()) throw ParseError("field \"atoms\" must be an array");

  std::vector<SpectralAtom> atoms;
  for (std::size_t j = 0; j < doc["atoms"].size(); ++j) {
    const auto& item = doc["atoms"][j];
    const std::string where = "atoms[" + std::to_string(j) + "]";
    if (!item.is_object()) throw ParseError(where + " must be an object");
    if (!item.contains("omega") || !item["omega"].is_array()) throw ParseError(where + ".omega must be an array");
    if (!item.contains("mass")) throw ParseError(where + ".mass is missing");
    SpectralAtom atom;
    for (std::size_t i = 0; i < item["omega"].size(); ++i) {
      atom.omega.push_back(read_number(item["omega"][i], where + ".omega[" + std::to_string(i) + "]"));
    }
    atom.mass = read_number(item["mass"], where + ".mass");
    atoms.push_back(std::move(atom));
  }
  return ExponentMeasure(static_cast<std::size_t>(d), std::move(atoms));
}

ExponentMeasure parse_measure(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return measure_from_json(doc);
}

ExponentMeasure load_measure(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_measure(buffer.str());
}

nlohmann::json to_json(const ExponentMeasure& measure) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& atom : measure.atoms()) atoms.push_back({{"omega", atom.omega}, {"mass", atom.mass}});
  return {{"d", measure.dim()}, {"atoms", std::move(atoms)}};
}

}  // namespace exind
