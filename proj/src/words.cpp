#include "qda/words.hpp"

#include <sstream>

namespace qda {

bool is_valid_word(const Session& s, const SymbolicWord& w) {
  uint32_t seen = 0;
  uint32_t y_seen = 0;
  for (const Letter& l : w) {
    if (l.ptrs & seen) return false;
    seen |= l.ptrs;
    if (l.y >= 0) {
      if (l.y >= s.y_count) return false;
      uint32_t yb = 1u << l.y;
      if (y_seen & yb) return false;
      y_seen |= yb;
    }
  }
  return seen == s.required_mask() && y_seen == (1u << s.y_count) - 1u;
}

std::string render_letter(const Session& s, const Letter& l) {
  std::ostringstream os;
  bool any = false;
  const auto& names = s.letter_names();
  for (size_t i = 0; i < names.size(); ++i) {
    if (l.ptrs & (1u << i)) {
      if (any) os << ",";
      os << names[i];
      any = true;
    }
  }
  if (!any) os << "-";
  os << "/";
  if (l.y >= 0)
    os << "y" << (int)(l.y + 1);
  else
    os << "-";
  return os.str();
}

std::optional<Letter> parse_letter(const Session& s, const std::string& text) {
  size_t slash = text.rfind('/');
  if (slash == std::string::npos) return std::nullopt;
  std::string names = text.substr(0, slash);
  std::string ytag = text.substr(slash + 1);
  Letter l;
  if (names != "-") {
    size_t pos = 0;
    while (pos <= names.size()) {
      size_t comma = names.find(',', pos);
      std::string n = names.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      int idx = s.name_bit_index(n);
      if (idx < 0) return std::nullopt;
      l.ptrs |= 1u << idx;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (ytag != "-") {
    if (ytag.size() < 2 || ytag[0] != 'y') return std::nullopt;
    int y = 0;
    try {
      y = std::stoi(ytag.substr(1)) - 1;
    } catch (...) {
      return std::nullopt;
    }
    if (y < 0 || y >= s.y_count) return std::nullopt;
    l.y = (int8_t)y;
  }
  return l;
}

std::string render_word(const Session& s, const SymbolicWord& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << " ";
    os << render_letter(s, w[i]);
  }
  return os.str();
}

bool is_structure_position(const Session& s, const Letter& l) {
  return (l.ptrs & s.aux_mask()) == 0;
}

namespace {
void valuation_rec(const std::vector<int>& positions, int k, std::vector<int>& cur,
                   std::vector<bool>& used, std::vector<std::vector<int>>& out) {
  if ((int)cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (size_t i = 0; i < positions.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    cur.push_back(positions[i]);
    valuation_rec(positions, k, cur, used, out);
    cur.pop_back();
    used[i] = false;
  }
}
} // namespace

std::vector<std::vector<int>> all_valuations(size_t word_len, int k) {
  std::vector<int> positions(word_len);
  for (size_t i = 0; i < word_len; ++i) positions[i] = (int)i;
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<bool> used(positions.size(), false);
  valuation_rec(positions, k, cur, used, out);
  return out;
}

std::vector<std::vector<int>> structure_valuations(const Session& s, const DataWord& w, int k) {
  std::vector<int> positions;
  for (size_t i = 0; i < w.size(); ++i)
    if (is_structure_position(s, w[i].letter)) positions.push_back((int)i);
  std::vector<std::vector<int>> out;
  if ((int)positions.size() < k) return out; // too short: no valuations
  std::vector<int> cur;
  std::vector<bool> used(positions.size(), false);
  valuation_rec(positions, k, cur, used, out);
  return out;
}

ValuationWord apply_valuation(const DataWord& w, const std::vector<int>& placement) {
  ValuationWord v = w;
  for (size_t y = 0; y < placement.size(); ++y) v[placement[y]].letter.y = (int8_t)y;
  return v;
}

SymbolicWord symbolic_of(const ValuationWord& w) {
  SymbolicWord s;
  s.reserve(w.size());
  for (const Cell& c : w) s.push_back(c.letter);
  return s;
}

}  // namespace qda
