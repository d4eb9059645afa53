#include "qda/checker.hpp"

#include <numeric>

namespace qda {

namespace {

struct ModelWalk {
  const Session& s;
  const ModelBounds& b;
  const std::function<bool(const ProgramConfig&)>& fn;
  int dmin, dmax;
  ProgramConfig c;

  bool sizes(int st) {
    if (st == (int)s.structures.size()) {
      int total = 0;
      for (const auto& cells : c.cells) total += (int)cells.size();
      if (total < b.min_total_cells) return true;
      if (b.max_total_cells >= 0 && total > b.max_total_cells) return true;
      return bindings(0);
    }
    for (int len = b.min_cells; len <= b.max_cells; ++len) {
      c.cells[st].assign(len, std::vector<int>(s.arity, dmin));
      if (!sizes(st + 1)) return false;
    }
    return true;
  }

  bool bindings(int p) {
    if (p == (int)s.pointers.size()) return scalars(0);
    const PointerDomain& d = s.domains[p];
    int len = (int)c.cells[d.structure].size();
    switch (d.kind) {
      case PointerDomain::Kind::Head:
        c.bindings[p] = len == 0 ? PointerBinding::null()
                                 : PointerBinding::cell(d.structure, 0);
        return bindings(p + 1);
      case PointerDomain::Kind::Free:
        c.bindings[p] = PointerBinding::null();
        if (!bindings(p + 1)) return false;
        for (int i = 0; i < len; ++i) {
          c.bindings[p] = PointerBinding::cell(d.structure, i);
          if (!bindings(p + 1)) return false;
        }
        return true;
      case PointerDomain::Kind::Index:
        if (d.allow_low) {
          c.bindings[p] = PointerBinding::low(d.structure);
          if (!bindings(p + 1)) return false;
        }
        for (int i = 0; i < len; ++i) {
          c.bindings[p] = PointerBinding::cell(d.structure, i);
          if (!bindings(p + 1)) return false;
        }
        c.bindings[p] = PointerBinding::high(d.structure);
        return bindings(p + 1);
    }
    return true;
  }

  bool scalars(int k) {
    if (k == (int)s.scalars.size()) return data(0, 0, 0);
    for (int v = dmin; v <= dmax; ++v) {
      c.scalar_values[k] = v;
      if (!scalars(k + 1)) return false;
    }
    return true;
  }

  bool data(int st, int cell, int comp) {
    if (st == (int)s.structures.size()) return fn(c);
    if (cell == (int)c.cells[st].size()) return data(st + 1, 0, 0);
    if (comp == s.arity) return data(st, cell + 1, 0);
    for (int v = dmin; v <= dmax; ++v) {
      c.cells[st][cell][comp] = v;
      if (!data(st, cell, comp + 1)) return false;
    }
    return true;
  }
};

} // namespace

bool for_each_model(const Session& s, const ModelBounds& b,
                    const std::function<bool(const ProgramConfig&)>& fn) {
  ProgramConfig c;
  c.cells.resize(s.structures.size());
  c.bindings.assign(s.pointers.size(), PointerBinding::null());
  c.scalar_values.assign(s.scalars.size(), 0);
  ModelWalk w{s, b, fn, b.data_min.value_or(s.data_min),
              b.data_max.value_or(s.data_max), std::move(c)};
  return w.sizes(0);
}

std::optional<ProgramConfig> bounded_disagreement(const LogicFormula& f,
                                                  const LogicFormula& g,
                                                  const Session& s,
                                                  const ModelBounds& b) {
  std::optional<ProgramConfig> found;
  for_each_model(s, b, [&](const ProgramConfig& c) {
    if (holds(f, s, c) != holds(g, s, c)) {
      found = c;
      return false;
    }
    return true;
  });
  return found;
}

std::optional<ProgramConfig> bounded_nonimplication(const LogicFormula& f1,
                                                    const LogicFormula& f2,
                                                    const Session& s,
                                                    const ModelBounds& b) {
  std::optional<ProgramConfig> found;
  for_each_model(s, b, [&](const ProgramConfig& c) {
    if (holds(f1, s, c) && !holds(f2, s, c)) {
      found = c;
      return false;
    }
    return true;
  });
  return found;
}

bool accepts_config(const Qda& a, const ProgramConfig& c) {
  return a.accepts(encode_config(*a.session, c), &c.scalar_values);
}

}  // namespace qda
