#pragma once
// Letters and words. A letter pairs a set of variable names (as bits into the
// session's name table) with at most one universal variable. A data word is a
// sequence of letters without universal variables, each cell carrying a data
// tuple; placing the universal variables on distinct positions yields a
// valuation word, and erasing the data gives the symbolic words the learner
// runs on.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qda/session.hpp"

namespace qda {

struct Letter {
  uint32_t ptrs = 0;
  int8_t y = -1; // -1: no universal variable
  auto operator<=>(const Letter&) const = default;
};

inline Letter blank_letter() { return Letter{}; }
inline bool is_blank(const Letter& l) { return l.ptrs == 0 && l.y < 0; }

using SymbolicWord = std::vector<Letter>;

struct Cell {
  Letter letter;
  std::vector<int> data; // one value per tuple component
};
using DataWord = std::vector<Cell>;      // letters carry no universal variable
using ValuationWord = std::vector<Cell>; // letters may carry one

// Every required name bit and every universal variable occurs exactly once.
bool is_valid_word(const Session& s, const SymbolicWord& w);

std::string render_letter(const Session& s, const Letter& l); // "head,cur/y1", "-/-"
std::optional<Letter> parse_letter(const Session& s, const std::string& text);
std::string render_word(const Session& s, const SymbolicWord& w);

// Universal variables range over structure cells only: positions whose letter
// carries no nil, marker, or scalar name.
bool is_structure_position(const Session& s, const Letter& l);

// All injective placements of k universal variables, as position tuples in
// lexicographic order. The generic version ranges over every position.
std::vector<std::vector<int>> all_valuations(size_t word_len, int k);
// Placements restricted to structure positions of a data word.
std::vector<std::vector<int>> structure_valuations(const Session& s, const DataWord& w, int k);

ValuationWord apply_valuation(const DataWord& w, const std::vector<int>& placement);
SymbolicWord symbolic_of(const ValuationWord& w);

}  // namespace qda
