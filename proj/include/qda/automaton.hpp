#pragma once
// Deterministic Moore-style automata over symbolic letters with a data
// formula at every state. The transition map is partial: a missing edge is an
// implicit sink whose output is bottom (false). A data word is accepted when
// every placement of the universal variables over its structure positions
// runs to a state whose formula the placed data satisfies.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qda/config.hpp"
#include "qda/lattice.hpp"
#include "qda/words.hpp"

namespace qda {

struct Qda {
  std::shared_ptr<const Session> session;
  struct State {
    DataFormula out;
    std::map<Letter, int> next;
  };
  std::vector<State> states;
  int initial = 0;

  std::optional<int> run(const SymbolicWord& w) const;
  // bottom when the run falls off the transition map
  DataFormula output_of(const SymbolicWord& w) const;

  // Scalar terms read their value from the word's scalar cells; sessions
  // that keep scalars out of the encoding must pass the environment instead.
  bool accepts_valuation(const ValuationWord& v,
                         const std::vector<int>* scalars = nullptr) const;
  bool accepts(const DataWord& w, const std::vector<int>* scalars = nullptr) const;

  // all letters on transitions, sorted, plus the blank letter
  std::vector<Letter> alphabet() const;
  size_t transition_count() const;
};

// Function-preserving minimization: trims unreachable states, merges
// output-equivalent ones, and drops everything equivalent to the implicit
// sink. States come out numbered in breadth-first order.
Qda minimize(const Qda& a);

// Sends every invalid word (repeated or missing names or universal variables)
// to bottom, leaving outputs on valid words unchanged. Composing with
// minimize gives the canonical automaton of the valid-word language.
Qda normalize_for_language(const Qda& a);

// Sends every word that is not a structurally well-formed configuration
// encoding (nil cell first, arrays bracketed by their markers, list cells
// after their head, pointers and variables only on cells of their own
// structure) to bottom. Learned hypotheses are total, so without this they
// drag along states reachable only by ill-formed words.
Qda restrict_to_encodings(const Qda& a);

// minimize(normalize_for_language(restrict_to_encodings(a))): the canonical
// automaton of the language of well-formed encodings.
Qda canonicalize_encodings(const Qda& a);

bool isomorphic(const Qda& a, const Qda& b);

struct InclusionResult {
  bool holds = false;
  SymbolicWord witness; // shortest, then lexicographically least, when !holds
};
// Pointwise lattice order of automaton outputs over all valid words.
InclusionResult included(const Qda& a, const Qda& b);

std::string to_dot(const Qda& a);

}  // namespace qda
