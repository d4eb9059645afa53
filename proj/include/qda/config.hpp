#pragma once
// Program configurations (one snapshot of scalars, structure contents, and
// pointer positions) and their encoding into data words:
//   [nil cell] [scalar cells, declaration order] [structures, declaration
//   order; arrays bracketed by the lo/hi range markers]
// Null pointers ride the nil cell; an index parked before cell 0 or at/past
// the end rides the corresponding marker.

#include <vector>

#include <json.hpp>

#include "qda/words.hpp"

namespace qda {

struct PointerBinding {
  enum class Kind { Null, Cell, Low, High };
  Kind kind = Kind::Null;
  int structure = 0;
  int index = 0; // Cell only

  static PointerBinding null() { return {}; }
  static PointerBinding cell(int s, int i) { return {Kind::Cell, s, i}; }
  static PointerBinding low(int s) { return {Kind::Low, s, 0}; }
  static PointerBinding high(int s) { return {Kind::High, s, 0}; }
  bool operator==(const PointerBinding&) const = default;
};

struct ProgramConfig {
  std::vector<int> scalar_values;              // parallel to session scalars
  std::vector<std::vector<std::vector<int>>> cells; // [structure][cell][component]
  std::vector<PointerBinding> bindings;        // parallel to session pointers
  bool operator==(const ProgramConfig&) const = default;
};

// Throws std::runtime_error when a binding does not fit the session.
DataWord encode_config(const Session& s, const ProgramConfig& c);

nlohmann::json config_to_json(const Session& s, const ProgramConfig& c);
ProgramConfig config_from_json(const Session& s, const nlohmann::json& j);

// JSON-lines trace files: one configuration per line.
std::vector<ProgramConfig> read_trace_file(const Session& s, const std::string& path);
void write_trace_file(const Session& s, const std::vector<ProgramConfig>& cs,
                      const std::string& path);

std::string render_config(const Session& s, const ProgramConfig& c);

}  // namespace qda
