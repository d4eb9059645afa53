#pragma once
// End-to-end pipeline: traces -> samples -> learn -> minimize -> elastify ->
// translate, plus the bounded adequacy and generalization checks and the
// bench report.

#include <optional>
#include <string>
#include <vector>

#include "qda/checker.hpp"
#include "qda/elastic.hpp"
#include "qda/fixtures.hpp"
#include "qda/teacher.hpp"
#include "qda/translate.hpp"

namespace qda {

struct PipelineBounds {
  int max_cells = 4;
  // data range; defaults to the session's range
  std::optional<int> data_min, data_max;
  // when > 0, compare automaton acceptance against both translations on
  // every model up to this many cells
  int adequacy_max_cells = 0;
};

struct AdequacyReport {
  long long models = 0;
  bool strand_exact = true; // acceptance == list-flavor formula on every model
  bool apf_sound = true;    // acceptance implies array-flavor formula
  std::optional<ProgramConfig> witness;
};

struct PipelineReport {
  std::string fixture;
  long long configs = 0; // loop-head configurations observed
  long long samples = 0; // distinct symbolic words in the sample map
  LearnStats stats;
  int learned_states = 0;
  int minimized_states = 0;
  int elastic_states = 0;
  bool elastification_required = false;
  bool teacher_contained = true; // every sample entry below the learned output
  Qda minimized;
  ElasticQda elastic;
  TranslatedFormula strand, apf;
  std::optional<AdequacyReport> adequacy;
  double learn_seconds = 0;
  double total_seconds = 0;
};

PipelineReport run_pipeline(const Fixture& f, const PipelineBounds& b);

// Replay the program on a larger input space; returns (checked, rejected)
// counts of loop-head configurations against the elastic automaton.
std::pair<long long, long long> generalization_gap(const Fixture& f, const ElasticQda& e,
                                                   const PipelineBounds& test);

std::string bench_table(const std::vector<PipelineReport>& rows);

}  // namespace qda
