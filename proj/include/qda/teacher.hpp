#pragma once
// The passive teacher: folds execution traces into a finite map from symbolic
// words to data formulas (joining over every structure valuation of every
// configuration), answers membership by lookup (bottom outside the map), and
// answers equivalence by containment of the sample in the hypothesis.

#include <map>
#include <optional>
#include <vector>

#include "qda/automaton.hpp"
#include "qda/config.hpp"
#include "qda/learner.hpp"

namespace qda {

struct SampleSet {
  std::shared_ptr<const Session> session;
  std::map<SymbolicWord, DataFormula> entries;
  // how many configurations fed each entry (a config counts once per word,
  // however many placements of it map there)
  std::map<SymbolicWord, long> contributors;

  void add_config(const ProgramConfig& c);
  size_t size() const { return entries.size(); }
};

SampleSet build_samples(std::shared_ptr<const Session> session,
                        const std::vector<ProgramConfig>& configs);

class PassiveTeacher {
 public:
  explicit PassiveTeacher(const SampleSet& samples);

  const std::vector<Letter>& alphabet() const { return alphabet_; }
  DataFormula membership(const SymbolicWord& w) const;
  // shortest (then lexicographically least) sample word whose formula the
  // hypothesis does not dominate
  std::optional<SymbolicWord> counterexample(const Qda& hypothesis) const;

  // Wire the sample map into the generic Moore learner; returns the learned
  // machine as an automaton (complete over the sample alphabet).
  Qda learn(LearnStats* stats) const;

 private:
  const SampleSet* samples_;
  std::vector<Letter> alphabet_;
};

}  // namespace qda
