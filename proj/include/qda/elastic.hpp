#pragma once
// Elastic automata: every blank transition is a self-loop. Elastification is
// the least elastic over-approximation of an automaton's valuation language,
// obtained by a powerset construction that closes under blank steps.

#include "qda/automaton.hpp"

namespace qda {

bool is_elastic(const Qda& a);

struct ElasticQda {
  Qda a;
};

// Subset construction with blank closure over the partial transition map as
// given: an explicit dead state participates in the closure, the implicit
// sink never does. The result is minimized.
ElasticQda elastify(const Qda& a);

}  // namespace qda
