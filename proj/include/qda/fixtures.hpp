#pragma once
// The benchmark programs: a session per program, a trace generator that
// streams every loop-head configuration over a bounded input space, and the
// reference sizes the learned automata are checked against. Also a few
// hand-built machines and invariants the tests compare structural output to.

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qda/automaton.hpp"
#include "qda/config.hpp"
#include "qda/logic.hpp"

namespace qda {

using ConfigSink = std::function<void(const ProgramConfig&)>;
using TraceGen = std::function<void(int max_cells, int dmin, int dmax, const ConfigSink&)>;

struct Fixture {
  std::string name;
  std::shared_ptr<const Session> session;
  // Stream the loop-head configurations reached on every input with at most
  // max_cells cells per structure and data drawn from [dmin, dmax]. This is
  // the ground truth the generalization check replays against.
  TraceGen trace;
  // Training inputs for the pipeline. Defaults to trace; a few fixtures thin
  // the largest inputs instead of enumerating the full product.
  TraceGen train;
  // Default structure bound for training. The inner sorting loops need 5:
  // their loop variable stays at least one cell short of the high end, so
  // length-4 arrays never show a blank between the quantified cells and the
  // variable, and the learner has no edge there for elastification to pump.
  int train_cells = 4;
  int reference_states = 0;        // expected final automaton size
  bool needs_elastification = false; // learned machine is not already elastic
};

const std::vector<Fixture>& all_fixtures();
const Fixture* find_fixture(const std::string& name);

// Sorted-scan example: head starts a list, i marks how far a scan has walked,
// and the data is sorted up to i. The hand-built machine records sortedness
// on adjacent variable pairs only (a blank between y1 and y2 falls into a
// dead state), so it is not elastic; sorted_scan_elastic_qda() is the variant
// whose blank step at that point self-loops instead.
std::shared_ptr<const Session> sorted_scan_session();
// Same letters, but i is an index ranging over 0..n rather than a cell-or-nil
// pointer; used when enumerating models for the array-logic reading.
std::shared_ptr<const Session> sorted_scan_index_session();
Qda sorted_scan_qda();
Qda sorted_scan_elastic_qda();

// The invariants the sorted-scan machine denotes, one per target logic.
LogicFormula sorted_scan_list_invariant();
LogicFormula sorted_scan_array_invariant();

// Two machines over a headless list with no pointers at all. They accept the
// same data words but different valuation words: one constrains every
// odd-position pair at even distance, the other only consecutive ones, and
// transitivity closes the gap at the data level.
std::shared_ptr<const Session> parity_session();
std::pair<Qda, Qda> parity_twins();

// Hand-built elastic machine for list-find and the invariant the search loop
// maintains: the list is sorted, and everything strictly before cur is
// below the key.
Qda list_find_golden();
LogicFormula list_find_invariant();

}  // namespace qda
