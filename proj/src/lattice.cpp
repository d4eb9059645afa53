#include "qda/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace qda {

namespace {

bool comparable(const Term& a, const Term& b) {
  if (a.kind == Term::Kind::Register && b.kind == Term::Kind::Register) {
    if (a.var == b.var) return a.comp != b.comp;
    return a.comp == b.comp;
  }
  return true; // scalar vs anything
}

uint8_t swap_mask(uint8_t m) {
  uint8_t r = m & (RelEq | RelNe);
  if (m & RelLt) r |= RelGt;
  if (m & RelGt) r |= RelLt;
  if (m & RelLe) r |= RelGe;
  if (m & RelGe) r |= RelLe;
  return r;
}

} // namespace

std::shared_ptr<const AtomUniverse> AtomUniverse::make(int y_count, int arity,
                                                       std::vector<std::string> scalars) {
  auto u = std::make_shared<AtomUniverse>();
  u->y_count = y_count;
  u->arity = arity;
  u->scalars = std::move(scalars);
  for (int y = 0; y < y_count; ++y)
    for (int c = 0; c < arity; ++c) u->terms.push_back(Term::reg(y, c));
  for (size_t s = 0; s < u->scalars.size(); ++s) u->terms.push_back(Term::scal((int)s));
  size_t n = u->terms.size();
  u->slot_.assign(n * n, -1);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (!comparable(u->terms[i], u->terms[j])) continue;
      int slot = (int)u->pairs.size();
      u->pairs.emplace_back((int)i, (int)j);
      u->slot_[i * n + j] = slot;
      u->slot_[j * n + i] = slot;
    }
  }
  return u;
}

int AtomUniverse::term_index(const Term& t) const {
  for (size_t i = 0; i < terms.size(); ++i)
    if (terms[i] == t) return (int)i;
  return -1;
}

int AtomUniverse::pair_slot(int i, int j, bool& swapped) const {
  size_t n = terms.size();
  int slot = slot_[(size_t)i * n + (size_t)j];
  swapped = slot >= 0 && pairs[slot].first == j;
  return slot;
}

std::string AtomUniverse::render_term(const Term& t) const {
  if (t.kind == Term::Kind::Scalar) return scalars[t.scalar];
  std::ostringstream os;
  os << "d(y" << (t.var + 1) << ")";
  if (arity > 1) os << "[" << t.comp << "]";
  return os.str();
}

std::optional<Term> AtomUniverse::parse_term(const std::string& text) const {
  if (text.rfind("d(y", 0) == 0) {
    size_t close = text.find(')');
    if (close == std::string::npos) return std::nullopt;
    int var = 0;
    try {
      var = std::stoi(text.substr(3, close - 3)) - 1;
    } catch (...) {
      return std::nullopt;
    }
    int comp = 0;
    if (close + 1 < text.size()) {
      if (text[close + 1] != '[' || text.back() != ']') return std::nullopt;
      try {
        comp = std::stoi(text.substr(close + 2, text.size() - close - 3));
      } catch (...) {
        return std::nullopt;
      }
    }
    Term t = Term::reg(var, comp);
    if (term_index(t) < 0) return std::nullopt;
    return t;
  }
  for (size_t s = 0; s < scalars.size(); ++s)
    if (scalars[s] == text) return Term::scal((int)s);
  return std::nullopt;
}

const char* rel_text(Rel r) {
  switch (r) {
    case RelLt: return "<";
    case RelGt: return ">";
    case RelLe: return "<=";
    case RelGe: return ">=";
    case RelEq: return "=";
    case RelNe: return "!=";
  }
  return "?";
}

DataFormula DataFormula::top(std::shared_ptr<const AtomUniverse> u) {
  DataFormula f;
  f.u_ = std::move(u);
  f.rel_.assign(f.u_->pairs.size(), 0);
  return f;
}

DataFormula DataFormula::bottom(std::shared_ptr<const AtomUniverse> u) {
  DataFormula f = top(std::move(u));
  f.bottom_ = true;
  return f;
}

bool DataFormula::is_top() const {
  if (bottom_) return false;
  for (uint8_t m : rel_)
    if (m) return false;
  return true;
}

DataFormula& DataFormula::require(const Term& a, Rel rel, const Term& b) {
  if (bottom_) return *this;
  int i = u_->term_index(a), j = u_->term_index(b);
  if (i < 0 || j < 0) throw std::runtime_error("term not in universe: " + u_->render_term(i < 0 ? a : b));
  bool swapped = false;
  int slot = u_->pair_slot(i, j, swapped);
  if (slot < 0) throw std::runtime_error("incomparable terms");
  uint8_t m = (uint8_t)rel;
  rel_[slot] |= swapped ? swap_mask(m) : m;
  saturate();
  return *this;
}

void DataFormula::saturate() {
  if (bottom_) return;
  // Close over a dense matrix covering every term pair, including pairs the
  // universe cannot express; a derivation may pass through an inexpressible
  // intermediate fact (e.g. both components of one variable tied to the same
  // scalar). Only universe slots are kept at the end.
  size_t n = u_->terms.size();
  std::vector<uint8_t> m(n * n, 0);
  for (size_t s = 0; s < rel_.size(); ++s) {
    if (!rel_[s]) continue;
    size_t i = (size_t)u_->pairs[s].first, j = (size_t)u_->pairs[s].second;
    m[i * n + j] |= rel_[s];
    m[j * n + i] |= swap_mask(rel_[s]);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        uint8_t x = m[i * n + j];
        if (!x) continue;
        uint8_t before = x;
        if (x & RelLt) x |= RelLe | RelNe;
        if (x & RelGt) x |= RelGe | RelNe;
        if (x & RelEq) x |= RelLe | RelGe;
        if ((x & RelLe) && (x & RelGe)) x |= RelEq;
        if ((x & RelLe) && (x & RelNe)) x |= RelLt;
        if ((x & RelGe) && (x & RelNe)) x |= RelGt;
        if ((x & RelEq) && (x & RelNe)) {
          bottom_ = true;
          std::fill(rel_.begin(), rel_.end(), 0);
          return;
        }
        if (x != before) {
          changed = true;
          m[i * n + j] = x;
          m[j * n + i] = swap_mask(x);
        }
      }
    }
    for (size_t a = 0; a < n; ++a) {
      for (size_t b = 0; b < n; ++b) {
        if (b == a) continue;
        uint8_t ab = m[a * n + b];
        if (!ab) continue;
        for (size_t c = 0; c < n; ++c) {
          if (c == a || c == b) continue;
          uint8_t bc = m[b * n + c];
          if (!bc) continue;
          uint8_t out = 0;
          if ((ab & RelLe) && (bc & RelLe)) {
            out |= RelLe;
            if ((ab & RelLt) || (bc & RelLt)) out |= RelLt;
          }
          if ((ab & RelGe) && (bc & RelGe)) {
            out |= RelGe;
            if ((ab & RelGt) || (bc & RelGt)) out |= RelGt;
          }
          if ((ab & RelEq) && (bc & RelEq)) out |= RelEq;
          if ((ab & RelEq) && (bc & RelNe)) out |= RelNe;
          if ((ab & RelNe) && (bc & RelEq)) out |= RelNe;
          if (out && (m[a * n + c] | out) != m[a * n + c]) {
            m[a * n + c] |= out;
            m[c * n + a] = swap_mask(m[a * n + c]);
            changed = true;
          }
        }
      }
    }
  }
  for (size_t s = 0; s < rel_.size(); ++s)
    rel_[s] = m[(size_t)u_->pairs[s].first * n + (size_t)u_->pairs[s].second];
}

DataFormula DataFormula::join(const DataFormula& a, const DataFormula& b) {
  assert(a.u_ == b.u_);
  if (a.bottom_) return b;
  if (b.bottom_) return a;
  DataFormula r = top(a.u_);
  for (size_t s = 0; s < r.rel_.size(); ++s) r.rel_[s] = a.rel_[s] & b.rel_[s];
  // intersection of saturated sets is saturated
  return r;
}

bool DataFormula::leq(const DataFormula& a, const DataFormula& b) {
  assert(a.u_ == b.u_);
  if (a.bottom_) return true;
  if (b.bottom_) return false;
  for (size_t s = 0; s < a.rel_.size(); ++s)
    if ((b.rel_[s] & a.rel_[s]) != b.rel_[s]) return false;
  return true;
}

bool DataFormula::eval(const std::vector<int>& values) const {
  if (bottom_) return false;
  for (size_t s = 0; s < rel_.size(); ++s) {
    uint8_t m = rel_[s];
    if (!m) continue;
    int va = values[u_->pairs[s].first];
    int vb = values[u_->pairs[s].second];
    if ((m & RelLt) && !(va < vb)) return false;
    if ((m & RelGt) && !(va > vb)) return false;
    if ((m & RelLe) && !(va <= vb)) return false;
    if ((m & RelGe) && !(va >= vb)) return false;
    if ((m & RelEq) && !(va == vb)) return false;
    if ((m & RelNe) && !(va != vb)) return false;
  }
  return true;
}

DataFormula DataFormula::abstract_values(std::shared_ptr<const AtomUniverse> u,
                                         const std::vector<int>& values) {
  DataFormula f = top(std::move(u));
  for (size_t s = 0; s < f.rel_.size(); ++s) {
    int va = values[f.u_->pairs[s].first];
    int vb = values[f.u_->pairs[s].second];
    if (va < vb)
      f.rel_[s] = RelLt | RelLe | RelNe;
    else if (va > vb)
      f.rel_[s] = RelGt | RelGe | RelNe;
    else
      f.rel_[s] = RelEq | RelLe | RelGe;
  }
  // exact order types are transitively closed already
  return f;
}

DataFormula DataFormula::rename_vars(const std::vector<int>& perm) const {
  if (bottom_) return *this;
  DataFormula f = top(u_);
  auto rename = [&](Term t) {
    if (t.kind == Term::Kind::Register) t.var = perm[t.var];
    return t;
  };
  for (size_t s = 0; s < rel_.size(); ++s) {
    if (!rel_[s]) continue;
    Term a = rename(u_->terms[u_->pairs[s].first]);
    Term b = rename(u_->terms[u_->pairs[s].second]);
    int i = u_->term_index(a), j = u_->term_index(b);
    assert(i >= 0 && j >= 0);
    bool sw;
    int slot = u_->pair_slot(i, j, sw);
    assert(slot >= 0);
    f.rel_[slot] |= sw ? swap_mask(rel_[s]) : rel_[s];
  }
  return f;
}

DataFormula DataFormula::weaken_for_equality(int var_i, int var_j) const {
  if (bottom_) return *this;
  DataFormula f = *this;
  for (size_t s = 0; s < f.rel_.size(); ++s) {
    const Term& a = u_->terms[u_->pairs[s].first];
    const Term& b = u_->terms[u_->pairs[s].second];
    if (a.kind != Term::Kind::Register || b.kind != Term::Kind::Register) continue;
    bool hit = (a.var == var_i && b.var == var_j) || (a.var == var_j && b.var == var_i);
    if (!hit) continue;
    uint8_t m = f.rel_[s];
    if (m & RelLt) m = (uint8_t)((m & ~RelLt) | RelLe);
    if (m & RelGt) m = (uint8_t)((m & ~RelGt) | RelGe);
    m &= (uint8_t)~RelNe;
    f.rel_[s] = m;
  }
  // weakening cannot introduce contradictions; masks stay canonical
  return f;
}

bool DataFormula::operator==(const DataFormula& o) const {
  if (bottom_ != o.bottom_) return false;
  if (bottom_) return true;
  return rel_ == o.rel_;
}

size_t DataFormula::hash() const {
  size_t h = bottom_ ? 0x9e3779b97f4a7c15ull : 0x243f6a8885a308d3ull;
  if (!bottom_)
    for (uint8_t m : rel_) h = h * 1099511628211ull + m;
  return h;
}

std::vector<DataFormula::Literal> DataFormula::literals() const {
  std::vector<Literal> out;
  if (bottom_) return out;
  for (size_t s = 0; s < rel_.size(); ++s) {
    uint8_t m = rel_[s];
    if (!m) continue;
    const Term& a = u_->terms[u_->pairs[s].first];
    const Term& b = u_->terms[u_->pairs[s].second];
    if (m & RelEq)
      out.push_back({a, RelEq, b});
    else if (m & RelLt)
      out.push_back({a, RelLt, b});
    else if (m & RelGt)
      out.push_back({b, RelLt, a});
    else if (m & RelLe)
      out.push_back({a, RelLe, b});
    else if (m & RelGe)
      out.push_back({b, RelLe, a});
    else
      out.push_back({a, RelNe, b});
  }
  return out;
}

std::string DataFormula::render() const {
  if (bottom_) return "false";
  auto lits = literals();
  if (lits.empty()) return "true";
  std::ostringstream os;
  for (size_t i = 0; i < lits.size(); ++i) {
    if (i) os << " & ";
    os << u_->render_term(lits[i].a) << " " << rel_text(lits[i].rel) << " "
       << u_->render_term(lits[i].b);
  }
  return os.str();
}

std::optional<DataFormula> DataFormula::parse(std::shared_ptr<const AtomUniverse> u,
                                              const std::string& text) {
  auto trim = [](std::string s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return std::string();
    return s.substr(b, e - b + 1);
  };
  std::string t = trim(text);
  if (t == "true") return top(std::move(u));
  if (t == "false") return bottom(std::move(u));
  DataFormula f = top(u);
  size_t pos = 0;
  while (pos < t.size()) {
    size_t amp = t.find('&', pos);
    std::string lit = trim(t.substr(pos, amp == std::string::npos ? std::string::npos : amp - pos));
    pos = amp == std::string::npos ? t.size() : amp + 1;
    if (lit.empty()) return std::nullopt;
    static const struct { const char* text; Rel rel; } ops[] = {
        {"<=", RelLe}, {">=", RelGe}, {"!=", RelNe}, {"<", RelLt}, {">", RelGt}, {"=", RelEq}};
    size_t best = std::string::npos;
    Rel rel = RelEq;
    size_t op_len = 0;
    for (auto& op : ops) {
      size_t p = lit.find(op.text);
      if (p != std::string::npos && (best == std::string::npos || p < best ||
                                     (p == best && strlen(op.text) > op_len))) {
        best = p;
        rel = op.rel;
        op_len = strlen(op.text);
      }
    }
    if (best == std::string::npos) return std::nullopt;
    auto lhs = u->parse_term(trim(lit.substr(0, best)));
    auto rhs = u->parse_term(trim(lit.substr(best + op_len)));
    if (!lhs || !rhs) return std::nullopt;
    if (rel == RelGt) {
      f.require(*rhs, RelLt, *lhs);
    } else if (rel == RelGe) {
      f.require(*rhs, RelLe, *lhs);
    } else {
      f.require(*lhs, rel, *rhs);
    }
    if (f.is_bottom()) return f;
  }
  return f;
}

}  // namespace qda
