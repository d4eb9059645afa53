#pragma once
// Exhaustive enumeration of bounded program configurations for a session and
// bounded-model comparison of invariant formulas. This is the validation
// harness: formulas are never handed to a solver here, they are evaluated on
// every configuration within the bounds.

#include <functional>
#include <optional>

#include "qda/automaton.hpp"
#include "qda/logic.hpp"

namespace qda {

struct ModelBounds {
  int min_cells = 0; // per structure
  int max_cells = 4;
  int min_total_cells = 0;
  int max_total_cells = -1; // -1: no cap beyond the per-structure one
  std::optional<int> data_min, data_max; // default: the session's range
};

// Calls fn on every configuration within the bounds: structure sizes, cell
// data, scalar values, and pointer bindings per the session's domains. Head
// pointers sit on cell 0 or are null exactly when their structure is empty;
// free pointers are null or any cell; index pointers are any cell, the hi
// marker, or the lo marker when allowed. Returns false when fn stopped the
// walk by returning false.
bool for_each_model(const Session& s, const ModelBounds& b,
                    const std::function<bool(const ProgramConfig&)>& fn);

// First configuration where the two formulas disagree, if any.
std::optional<ProgramConfig> bounded_disagreement(const LogicFormula& f,
                                                  const LogicFormula& g,
                                                  const Session& s,
                                                  const ModelBounds& b);

// First configuration violating f1 => f2, if any.
std::optional<ProgramConfig> bounded_nonimplication(const LogicFormula& f1,
                                                    const LogicFormula& f2,
                                                    const Session& s,
                                                    const ModelBounds& b);

// Whether the automaton accepts the data word encoding the configuration.
bool accepts_config(const Qda& a, const ProgramConfig& c);

}  // namespace qda
