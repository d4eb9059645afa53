// Command-line front end: generate traces from the bundled fixture programs,
// learn and elastify automata, translate them to quantified formulas, and
// check formulas against each other or against traces on bounded models.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qda/checker.hpp"
#include "qda/elastic.hpp"
#include "qda/fixtures.hpp"
#include "qda/io.hpp"
#include "qda/pipeline.hpp"
#include "qda/translate.hpp"

using namespace qda;

namespace {

int cmd_gen_traces(const std::string& fixture, const std::string& out,
                   const std::string& session_out, int max_cells,
                   std::optional<int> dmin, std::optional<int> dmax) {
  const Fixture* f = find_fixture(fixture);
  if (!f) {
    std::cerr << "unknown fixture: " << fixture << "\n";
    return 2;
  }
  int lo = dmin.value_or(f->session->data_min);
  int hi = dmax.value_or(f->session->data_max);
  std::vector<ProgramConfig> configs;
  f->trace(max_cells, lo, hi, [&](const ProgramConfig& c) { configs.push_back(c); });
  write_trace_file(*f->session, configs, out);
  if (!session_out.empty()) write_session_file(*f->session, session_out);
  std::cout << "wrote " << configs.size() << " configurations to " << out << "\n";
  return 0;
}

int cmd_learn(const std::string& session_path, const std::string& traces_path,
              const std::string& out) {
  auto session = read_session_file(session_path);
  auto configs = read_trace_file(*session, traces_path);
  SampleSet samples = build_samples(session, configs);
  PassiveTeacher teacher(samples);
  LearnStats stats;
  Qda learned = minimize(teacher.learn(&stats));
  write_qda_file(learned, out);
  std::cout << "configs " << configs.size() << ", samples " << samples.size()
            << ", membership " << stats.membership_queries << ", equivalence "
            << stats.equivalence_queries << ", states " << learned.states.size()
            << (is_elastic(learned) ? ", elastic" : ", not elastic") << "\n";
  return 0;
}

int cmd_elastify(const std::string& in, const std::string& out) {
  Qda a = read_qda_file(in);
  if (is_elastic(a)) {
    write_qda_file(minimize(a), out);
    std::cout << "already elastic, " << a.states.size() << " states\n";
  } else {
    ElasticQda e = elastify(a);
    write_qda_file(e.a, out);
    std::cout << "elastified: " << a.states.size() << " -> " << e.a.states.size()
              << " states\n";
  }
  return 0;
}

int cmd_translate(const std::string& in, const std::string& flavor_name,
                  const std::string& out, const std::string& smt_out) {
  Qda a = read_qda_file(in);
  if (!is_elastic(a)) {
    std::cerr << "input automaton is not elastic; run elastify first\n";
    return 2;
  }
  Flavor flavor = flavor_name == "apf" ? Flavor::Apf : Flavor::Strand;
  TranslatedFormula f = translate(ElasticQda{a}, flavor);
  if (!out.empty()) write_formula_file(f, out);
  if (!smt_out.empty()) {
    std::ofstream s(smt_out);
    s << emit_smtlib(f);
  }
  std::cout << f.render();
  return 0;
}

int cmd_check(const std::string& session_path, const std::string& formula_path,
              const std::string& against_path, const std::string& reference,
              const std::string& traces_path, int max_cells, std::optional<int> dmin,
              std::optional<int> dmax) {
  auto session = read_session_file(session_path);
  TranslatedFormula tf = read_formula_file(formula_path);
  LogicFormula f = tf.to_formula();

  ModelBounds mb;
  mb.max_cells = max_cells;
  if (dmin) mb.data_min = *dmin;
  if (dmax) mb.data_max = *dmax;

  std::optional<LogicFormula> other;
  if (!against_path.empty()) other = read_formula_file(against_path).to_formula();
  if (!reference.empty()) {
    if (reference == "list-find")
      other = list_find_invariant();
    else if (reference == "sorted-scan-list")
      other = sorted_scan_list_invariant();
    else if (reference == "sorted-scan-array")
      other = sorted_scan_array_invariant();
    else {
      std::cerr << "unknown reference invariant: " << reference << "\n";
      return 2;
    }
  }

  bool ok = true;
  if (other) {
    auto witness = bounded_disagreement(f, *other, *session, mb);
    if (witness) {
      std::cout << "FAIL: formulas disagree on " << render_config(*session, *witness)
                << "\n";
      ok = false;
    } else {
      std::cout << "PASS: formulas agree on all models (max " << mb.max_cells
                << " cells)\n";
    }
  }
  if (!traces_path.empty()) {
    auto configs = read_trace_file(*session, traces_path);
    long long bad = 0;
    for (const auto& c : configs)
      if (!holds(f, *session, c)) {
        if (bad == 0)
          std::cout << "FAIL: formula rejects " << render_config(*session, c) << "\n";
        ++bad;
      }
    if (bad)
      ok = false;
    else
      std::cout << "PASS: formula holds on all " << configs.size() << " traced configurations\n";
  }
  if (!other && traces_path.empty()) {
    std::cerr << "nothing to check: pass --against, --reference, or --traces\n";
    return 2;
  }
  return ok ? 0 : 1;
}

int cmd_bench(const std::vector<std::string>& names, int max_cells, int dmin,
              int dmax, const std::string& out_path) {
  std::vector<PipelineReport> rows;
  bool ok = true;
  for (const Fixture& f : all_fixtures()) {
    if (!names.empty() &&
        std::find(names.begin(), names.end(), f.name) == names.end())
      continue;
    PipelineBounds b;
    b.max_cells = max_cells > 0 ? max_cells : f.train_cells;
    if (dmin <= dmax) {
      b.data_min = dmin;
      b.data_max = dmax;
    }
    PipelineReport r = run_pipeline(f, b);
    if (!r.teacher_contained) ok = false;
    rows.push_back(std::move(r));
  }
  std::string table = bench_table(rows);
  std::cout << table;
  if (!out_path.empty()) {
    std::ofstream o(out_path);
    o << table;
  }
  return ok ? 0 : 1;
}

int cmd_dot(const std::string& in, const std::string& out) {
  Qda a = read_qda_file(in);
  std::string dot = to_dot(a);
  if (out.empty()) {
    std::cout << dot;
  } else {
    std::ofstream o(out);
    o << dot;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariant learning over data words"};
  app.require_subcommand(1);

  // gen-traces
  std::string fixture, traces_out, session_out;
  int max_cells = 4;
  std::optional<int> dmin, dmax;
  auto* gen = app.add_subcommand("gen-traces", "run a fixture program and record traces");
  gen->add_option("--fixture", fixture, "fixture name")->required();
  gen->add_option("--out", traces_out, "trace file (json lines)")->required();
  gen->add_option("--session-out", session_out, "also write the session file");
  gen->add_option("--max-cells", max_cells, "largest structure size");
  gen->add_option("--data-min", dmin, "smallest data value");
  gen->add_option("--data-max", dmax, "largest data value");

  // learn
  std::string session_path, traces_path, qda_out;
  auto* learn = app.add_subcommand("learn", "learn an automaton from traces");
  learn->add_option("--session", session_path, "session file")->required();
  learn->add_option("--traces", traces_path, "trace file")->required();
  learn->add_option("--out", qda_out, "output automaton file")->required();

  // elastify
  std::string qda_in, qda_out2;
  auto* ela = app.add_subcommand("elastify", "over-approximate by an elastic automaton");
  ela->add_option("--in", qda_in, "input automaton")->required();
  ela->add_option("--out", qda_out2, "output automaton")->required();

  // translate
  std::string tr_in, flavor = "strand", formula_out, smt_out;
  auto* tr = app.add_subcommand("translate", "compile an elastic automaton to a formula");
  tr->add_option("--in", tr_in, "input automaton (must be elastic)")->required();
  tr->add_option("--flavor", flavor, "strand or apf")
      ->check(CLI::IsMember({"strand", "apf"}));
  tr->add_option("--out", formula_out, "formula file");
  tr->add_option("--smtlib", smt_out, "also emit smt-lib 2 text");

  // check
  std::string chk_session, chk_formula, chk_against, chk_reference, chk_traces;
  int chk_cells = 4;
  std::optional<int> chk_dmin, chk_dmax;
  auto* chk = app.add_subcommand("check", "compare formulas or validate traces");
  chk->add_option("--session", chk_session, "session file")->required();
  chk->add_option("--formula", chk_formula, "formula file")->required();
  chk->add_option("--against", chk_against, "second formula file");
  chk->add_option("--reference", chk_reference,
                  "built-in invariant: list-find, sorted-scan-list, sorted-scan-array");
  chk->add_option("--traces", chk_traces, "trace file the formula must accept");
  chk->add_option("--max-cells", chk_cells, "model bound");
  chk->add_option("--data-min", chk_dmin, "smallest data value");
  chk->add_option("--data-max", chk_dmax, "largest data value");

  // bench
  std::vector<std::string> bench_names;
  int bench_cells = 0;
  std::string bench_out;
  auto* bn = app.add_subcommand("bench", "run the full pipeline on the fixtures");
  bn->add_option("--fixture", bench_names, "subset of fixtures (default: all)");
  bn->add_option("--max-cells", bench_cells,
                 "largest structure size (default: per-fixture training bound)");
  int bench_dmin = 1, bench_dmax = 0; // unset unless both given
  bn->add_option("--data-min", bench_dmin, "smallest data value");
  bn->add_option("--data-max", bench_dmax, "largest data value");
  bn->add_option("--out", bench_out, "also write the table to a file");

  // dot
  std::string dot_in, dot_out;
  auto* dt = app.add_subcommand("dot", "render an automaton as graphviz");
  dt->add_option("--in", dot_in, "input automaton")->required();
  dt->add_option("--out", dot_out, "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_gen_traces(fixture, traces_out, session_out, max_cells, dmin, dmax);
    if (learn->parsed()) return cmd_learn(session_path, traces_path, qda_out);
    if (ela->parsed()) return cmd_elastify(qda_in, qda_out2);
    if (tr->parsed()) return cmd_translate(tr_in, flavor, formula_out, smt_out);
    if (chk->parsed())
      return cmd_check(chk_session, chk_formula, chk_against, chk_reference, chk_traces,
                       chk_cells, chk_dmin, chk_dmax);
    if (bn->parsed())
      return cmd_bench(bench_names, bench_cells, bench_dmin, bench_dmax, bench_out);
    if (dt->parsed()) return cmd_dot(dot_in, dot_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
