#include "qda/pipeline.hpp"

#include <chrono>
#include <cstdio>

namespace qda {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PipelineReport run_pipeline(const Fixture& f, const PipelineBounds& b) {
  auto t0 = std::chrono::steady_clock::now();
  PipelineReport r;
  r.fixture = f.name;

  int lo = b.data_min.value_or(f.session->data_min);
  int hi = b.data_max.value_or(f.session->data_max);

  SampleSet samples;
  samples.session = f.session;
  const TraceGen& gen = f.train ? f.train : f.trace;
  gen(b.max_cells, lo, hi, [&](const ProgramConfig& c) {
    ++r.configs;
    samples.add_config(c);
  });
  r.samples = (long long)samples.size();

  PassiveTeacher teacher(samples);
  auto t1 = std::chrono::steady_clock::now();
  Qda learned = teacher.learn(&r.stats);
  r.learn_seconds = seconds_since(t1);
  r.learned_states = (int)learned.states.size();

  // The passive teacher only checks that the hypothesis covers the sample,
  // so the raw machine drags along states reachable only by words that
  // encode no configuration. Canonicalizing over well-formed encodings
  // collapses those into the sink before anything downstream looks at it.
  r.minimized = canonicalize_encodings(learned);
  r.minimized_states = (int)r.minimized.states.size();
  r.elastification_required = !is_elastic(r.minimized);
  r.elastic = r.elastification_required ? elastify(r.minimized) : ElasticQda{r.minimized};
  r.elastic_states = (int)r.elastic.a.states.size();

  // the learner's own claim of convergence is not trusted: re-check that the
  // minimized machine dominates every sample entry
  for (const auto& [w, out] : samples.entries) {
    if (!DataFormula::leq(out, r.minimized.output_of(w))) {
      r.teacher_contained = false;
      break;
    }
  }

  r.strand = to_strand(r.elastic);
  r.apf = to_apf(r.elastic);

  if (b.adequacy_max_cells > 0) {
    AdequacyReport ad;
    LogicFormula fs = r.strand.to_formula();
    LogicFormula fa = r.apf.to_formula();
    ModelBounds mb;
    mb.max_cells = b.adequacy_max_cells;
    mb.data_min = lo;
    mb.data_max = hi;
    const Session& s = *f.session;
    for_each_model(s, mb, [&](const ProgramConfig& c) {
      ++ad.models;
      bool acc = accepts_config(r.elastic.a, c);
      bool hs = holds(fs, s, c);
      bool ha = holds(fa, s, c);
      if (acc != hs || (acc && !ha)) {
        if (acc != hs) ad.strand_exact = false;
        if (acc && !ha) ad.apf_sound = false;
        if (!ad.witness) ad.witness = c;
        return false; // stop at the first disagreement
      }
      return true;
    });
    r.adequacy = std::move(ad);
  }

  r.total_seconds = seconds_since(t0);
  return r;
}

std::pair<long long, long long> generalization_gap(const Fixture& f, const ElasticQda& e,
                                                   const PipelineBounds& test) {
  int lo = test.data_min.value_or(f.session->data_min);
  int hi = test.data_max.value_or(f.session->data_max);
  long long checked = 0, rejected = 0;
  f.trace(test.max_cells, lo, hi, [&](const ProgramConfig& c) {
    ++checked;
    if (!accepts_config(e.a, c)) ++rejected;
  });
  return {checked, rejected};
}

std::string bench_table(const std::vector<PipelineReport>& rows) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %8s %8s %6s %5s %7s %8s %6s %10s %8s\n",
                "fixture", "configs", "samples", "mem", "eq", "states", "elastic",
                "flag", "reference", "time");
  out += line;
  out += std::string(96, '-') + "\n";
  for (const PipelineReport& r : rows) {
    char refcol[32];
    const Fixture* f = find_fixture(r.fixture);
    if (f)
      std::snprintf(refcol, sizeof refcol, "%d/%s", f->reference_states,
                    f->needs_elastification ? "yes" : "no");
    else
      std::snprintf(refcol, sizeof refcol, "-");
    std::snprintf(line, sizeof line,
                  "%-16s %8lld %8lld %6ld %5ld %7d %8d %6s %10s %7.2fs\n",
                  r.fixture.c_str(), r.configs, r.samples, r.stats.membership_queries,
                  r.stats.equivalence_queries, r.minimized_states, r.elastic_states,
                  r.elastification_required ? "yes" : "no", refcol, r.total_seconds);
    out += line;
  }
  return out;
}

}  // namespace qda
