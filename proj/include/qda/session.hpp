#pragma once
// A session fixes everything the automata and formulas range over: pointer
// and scalar variable names, the structures they point into, the number of
// universal variables, the data range, and the constraint universe.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qda/lattice.hpp"

namespace qda {

struct StructureDecl {
  enum class Kind { List, Array };
  Kind kind = Kind::List;
  std::string name;
  // Lists: the pointer that labels cell 0. Arrays leave it empty; their words
  // are bracketed by the lo/hi range markers instead.
  std::string head;
};

// Where a pointer may point when models are enumerated.
struct PointerDomain {
  enum class Kind {
    Head,   // cell 0 of its structure, or null when the structure is empty
    Free,   // null or any cell of its structure
    Index,  // any cell, or one past the end (the hi marker)
  };
  Kind kind = Kind::Free;
  int structure = 0;
  bool allow_low = false; // Index only: may also sit before cell 0
};

class Session {
 public:
  std::string name;
  std::vector<std::string> pointers;
  std::vector<PointerDomain> domains; // parallel to pointers
  std::vector<std::string> scalars;
  std::vector<StructureDecl> structures;
  int y_count = 1;
  int arity = 1;
  int data_min = 0, data_max = 3;
  bool nil_cell = true;     // encode a leading cell carrying nil and null pointers
  bool scalar_cells = true; // encode scalars as singleton cells after the nil cell

  std::shared_ptr<const AtomUniverse> universe;

  // Build the letter name table and the universe. Must be called once after
  // the fields above are filled in.
  void finalize();

  const std::vector<std::string>& letter_names() const { return names_; }
  uint32_t nil_bit() const { return nil_bit_; }
  uint32_t low_bit() const { return low_bit_; }
  uint32_t high_bit() const { return high_bit_; }
  uint32_t scalar_bit(int idx) const { return scalar_bits_[idx]; }
  uint32_t pointer_bit(int idx) const { return pointer_bits_[idx]; }
  // nil, markers, and scalar cells; universal variables never sit on these
  uint32_t aux_mask() const { return aux_mask_; }
  // every valid word carries each of these name bits exactly once
  uint32_t required_mask() const { return required_mask_; }

  int pointer_index(const std::string& name) const;
  int name_bit_index(const std::string& name) const; // position in letter_names
  bool has_array() const;
  int structure_index(const std::string& name) const;

  static std::shared_ptr<Session> make(std::string name);

 private:
  std::vector<std::string> names_;
  uint32_t nil_bit_ = 0, low_bit_ = 0, high_bit_ = 0;
  std::vector<uint32_t> scalar_bits_, pointer_bits_;
  uint32_t aux_mask_ = 0, required_mask_ = 0;
};

}  // namespace qda
