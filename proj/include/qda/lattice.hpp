#pragma once
// Conjunctive order-constraint domain over data terms.
//
// A formula is either bottom (unsatisfiable) or a conjunction of order
// literals (<, <=, =, !=) between pairs of terms. Terms name the data seen
// at a universal variable's cell (one tuple component of it) or a scalar
// program variable. The literal set is kept saturated so that the lattice
// order can be decided by plain set containment and the join by set
// intersection.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qda {

struct Term {
  enum class Kind : uint8_t { Register, Scalar };
  Kind kind = Kind::Register;
  int var = 0;     // universal variable index (Register)
  int comp = 0;    // tuple component (Register)
  int scalar = 0;  // scalar index (Scalar)

  static Term reg(int var, int comp = 0) { return Term{Kind::Register, var, comp, 0}; }
  static Term scal(int idx) { return Term{Kind::Scalar, 0, 0, idx}; }
  auto operator<=>(const Term&) const = default;
};

// The fixed set of term pairs a session may constrain. Registers of different
// variables are compared per component; the components of one variable are
// comparable with each other; scalars are comparable with everything.
struct AtomUniverse {
  int y_count = 0;
  int arity = 1;
  std::vector<std::string> scalars;
  std::vector<Term> terms;                // canonical order: registers, then scalars
  std::vector<std::pair<int, int>> pairs; // index pairs (i < j) into terms

  static std::shared_ptr<const AtomUniverse> make(int y_count, int arity,
                                                  std::vector<std::string> scalars);
  int term_index(const Term& t) const;
  // pair slot for terms (i, j); swapped is set when the stored pair is (j, i)
  int pair_slot(int i, int j, bool& swapped) const;
  std::string render_term(const Term& t) const;
  std::optional<Term> parse_term(const std::string& text) const;

private:
  std::vector<int> slot_; // dense terms_count x terms_count lookup, -1 where incomparable
};

// Relation bits for one ordered term pair (a, b).
enum Rel : uint8_t {
  RelLt = 1,
  RelGt = 2,
  RelLe = 4,
  RelGe = 8,
  RelEq = 16,
  RelNe = 32,
};

class DataFormula {
 public:
  DataFormula() = default;
  static DataFormula top(std::shared_ptr<const AtomUniverse> u);
  static DataFormula bottom(std::shared_ptr<const AtomUniverse> u);

  bool is_bottom() const { return bottom_; }
  bool is_top() const;

  // Conjoin the literal "a rel b" and re-saturate. Returns *this.
  DataFormula& require(const Term& a, Rel rel, const Term& b);

  // Least upper bound: intersection of saturated literal sets.
  static DataFormula join(const DataFormula& a, const DataFormula& b);
  // True iff a implies b; on saturated sets this is containment of b's
  // literals in a's.
  static bool leq(const DataFormula& a, const DataFormula& b);

  // values is parallel to universe().terms
  bool eval(const std::vector<int>& values) const;
  // Exact abstraction of one data valuation.
  static DataFormula abstract_values(std::shared_ptr<const AtomUniverse> u,
                                     const std::vector<int>& values);

  // Remap register variables: var i becomes perm[i].
  DataFormula rename_vars(const std::vector<int>& perm) const;
  // Weaken so the formula tolerates variables i and j denoting the same cell:
  // strict order between their components becomes non-strict, disequalities
  // between them are dropped.
  DataFormula weaken_for_equality(int var_i, int var_j) const;

  bool operator==(const DataFormula& o) const;
  size_t hash() const;

  std::string render() const; // "d(y1) <= d(y2) & k < d(y2)", "true", "false"
  static std::optional<DataFormula> parse(std::shared_ptr<const AtomUniverse> u,
                                          const std::string& text);

  const std::shared_ptr<const AtomUniverse>& universe() const { return u_; }
  uint8_t pair_mask(int slot) const { return bottom_ ? 0 : rel_[slot]; }

  struct Literal {
    Term a;
    Rel rel;
    Term b;
  };
  // Strongest literal per constrained pair, in canonical pair order.
  std::vector<Literal> literals() const;

 private:
  std::shared_ptr<const AtomUniverse> u_;
  bool bottom_ = false;
  std::vector<uint8_t> rel_;

  void saturate();
  friend struct DataFormulaHash;
};

struct DataFormulaHash {
  size_t operator()(const DataFormula& f) const { return f.hash(); }
};

const char* rel_text(Rel r);

}  // namespace qda
