#include "qda/teacher.hpp"

#include <set>
#include <stdexcept>

namespace qda {

void SampleSet::add_config(const ProgramConfig& c) {
  DataWord w = encode_config(*session, c);
  const auto& u = session->universe;
  std::set<SymbolicWord> touched;
  for (const auto& placement : structure_valuations(*session, w, session->y_count)) {
    ValuationWord v = apply_valuation(w, placement);
    SymbolicWord sym = symbolic_of(v);
    std::vector<int> values(u->terms.size(), 0);
    for (size_t t = 0; t < u->terms.size(); ++t) {
      const Term& term = u->terms[t];
      if (term.kind == Term::Kind::Register)
        values[t] = w[placement[term.var]].data[term.comp];
      else
        values[t] = c.scalar_values[term.scalar];
    }
    DataFormula f = DataFormula::abstract_values(u, values);
    auto it = entries.find(sym);
    if (it == entries.end())
      entries.emplace(sym, std::move(f));
    else
      it->second = DataFormula::join(it->second, f);
    touched.insert(std::move(sym));
  }
  for (const auto& sym : touched) ++contributors[sym];
}

SampleSet build_samples(std::shared_ptr<const Session> session,
                        const std::vector<ProgramConfig>& configs) {
  SampleSet s;
  s.session = std::move(session);
  for (const auto& c : configs) s.add_config(c);
  return s;
}

PassiveTeacher::PassiveTeacher(const SampleSet& samples) : samples_(&samples) {
  std::set<Letter> ls;
  for (const auto& [w, f] : samples.entries)
    for (const Letter& l : w) ls.insert(l);
  // blank and the bare universal letters are always available, whether or not
  // a sample happened to use them
  ls.insert(blank_letter());
  for (int y = 0; y < samples.session->y_count; ++y) ls.insert(Letter{0, (int8_t)y});
  alphabet_.assign(ls.begin(), ls.end());
  // An empty sample set is fine: the learner converges to the all-bottom
  // automaton after a single equivalence query.
}

DataFormula PassiveTeacher::membership(const SymbolicWord& w) const {
  auto it = samples_->entries.find(w);
  if (it != samples_->entries.end()) return it->second;
  return DataFormula::bottom(samples_->session->universe);
}

std::optional<SymbolicWord> PassiveTeacher::counterexample(const Qda& hypothesis) const {
  const SymbolicWord* best = nullptr;
  for (const auto& [w, f] : samples_->entries) {
    if (!DataFormula::leq(f, hypothesis.output_of(w))) {
      if (!best || w.size() < best->size() || (w.size() == best->size() && w < *best))
        best = &w;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

Qda PassiveTeacher::learn(LearnStats* stats) const {
  auto session = samples_->session;
  const auto& alpha = alphabet_;

  auto to_word = [&](const std::vector<int>& w) {
    SymbolicWord sw;
    sw.reserve(w.size());
    for (int a : w) sw.push_back(alpha[a]);
    return sw;
  };
  auto to_qda = [&](const MooreHypothesis<DataFormula>& h) {
    Qda q;
    q.session = session;
    q.initial = h.initial;
    q.states.resize(h.outputs.size());
    for (size_t i = 0; i < h.outputs.size(); ++i) {
      q.states[i].out = h.outputs[i];
      for (size_t a = 0; a < alpha.size(); ++a) q.states[i].next[alpha[a]] = h.next[i][a];
    }
    return q;
  };

  MooreTeacher<DataFormula> t;
  t.alphabet_size = (int)alpha.size();
  t.membership = [&](const std::vector<int>& w) { return membership(to_word(w)); };
  t.equivalence =
      [&](const MooreHypothesis<DataFormula>& h) -> std::optional<std::vector<int>> {
    auto cex = counterexample(to_qda(h));
    if (!cex) return std::nullopt;
    std::vector<int> w;
    for (const Letter& l : *cex) {
      auto it = std::lower_bound(alpha.begin(), alpha.end(), l);
      w.push_back((int)(it - alpha.begin()));
    }
    return w;
  };

  return to_qda(learn_moore(t, stats));
}

}  // namespace qda
