#pragma once
// Compilation of elastic automata into quantified invariants: one guarded
// conjunct per simple path, plus a closing conjunct asserting that the path
// guards cover every valuation. The list flavor speaks reachability and
// successor; the array flavor relaxes order between universal variables to
// non-strict and weakens the affected bodies accordingly.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qda/elastic.hpp"
#include "qda/logic.hpp"

namespace qda {

enum class Flavor { Strand, Apf };

struct PathFormula {
  std::vector<int> states;  // machine states, letters.size() + 1 entries
  std::vector<Letter> letters;
  std::vector<int> y_order;  // variable indices in reading order
  Guard cover_guard;         // atoms over the variables as read
  Guard guard;               // same atoms, variables renamed to reading order
  DataFormula body;          // output formula, renamed to match guard
  int out_state = 0;
};

// Rewrites the outputs of states reached by placing a universal variable on
// an auxiliary cell (nil, range marker, scalar) to top, splitting states
// shared with ordinary paths. Irrelevant-loop removal and variable renaming
// are per-path concerns handled inside simple_paths.
ElasticQda normalize(const ElasticQda& e);

// All valid simple paths from the initial state to a non-bottom output,
// with their guards and bodies. Paths placing universal variables on
// auxiliary cells are dropped; their conjuncts are vacuous.
std::vector<PathFormula> simple_paths(const ElasticQda& e);

struct TranslatedFormula {
  Flavor flavor = Flavor::Strand;
  std::shared_ptr<const Session> session;
  std::vector<PathFormula> paths;

  LogicFormula to_formula() const;
  std::string render() const;
};

TranslatedFormula translate(const ElasticQda& e, Flavor flavor);
TranslatedFormula to_strand(const ElasticQda& e);
TranslatedFormula to_apf(const ElasticQda& e);

}  // namespace qda
