#pragma once
// Structural atoms over pointer and universal variables, guards, and the
// formula trees produced by the translator (or written by hand as reference
// invariants). Atoms have positional semantics: a pointer denotes the cell
// index its binding names (-1 before the first cell, size one past the last),
// a universal variable denotes the cell of its valuation. Everything is
// evaluated against a bounded program configuration.

#include <optional>
#include <string>
#include <vector>

#include "qda/config.hpp"
#include "qda/lattice.hpp"

namespace qda {

struct AtomRef {
  enum class Kind { Ptr, Y, Start, End };
  Kind kind = Kind::Ptr;
  int idx = 0; // pointer index / universal variable index / structure index
  static AtomRef ptr(int i) { return {Kind::Ptr, i}; }
  static AtomRef y(int i) { return {Kind::Y, i}; }
  static AtomRef start(int s) { return {Kind::Start, s}; }
  static AtomRef end(int s) { return {Kind::End, s}; }
  auto operator<=>(const AtomRef&) const = default;
};

struct StructAtom {
  enum class Kind {
    PtrNull, // a is a null pointer
    AtLow,   // a sits before the first array cell
    AtHigh,  // a sits one past the last array cell
    PtrEq,   // a and b name the same position
    Reach,   // a strictly/weakly precedes b in the same structure
    Dist,    // b sits exactly dist cells after a
  };
  Kind kind = Kind::PtrEq;
  AtomRef a, b;
  bool strict = true; // Reach only
  int dist = 0;       // Dist only

  static StructAtom null(AtomRef a) { return {Kind::PtrNull, a, {}, true, 0}; }
  static StructAtom at_low(AtomRef a) { return {Kind::AtLow, a, {}, true, 0}; }
  static StructAtom at_high(AtomRef a) { return {Kind::AtHigh, a, {}, true, 0}; }
  static StructAtom eq(AtomRef a, AtomRef b) { return {Kind::PtrEq, a, b, true, 0}; }
  static StructAtom reach(AtomRef a, AtomRef b, bool strict) {
    return {Kind::Reach, a, b, strict, 0};
  }
  static StructAtom at_dist(AtomRef a, AtomRef b, int d) {
    return {Kind::Dist, a, b, true, d};
  }
  auto operator<=>(const StructAtom&) const = default;
};

struct Guard {
  std::vector<StructAtom> atoms; // conjunction
  auto operator<=>(const Guard&) const = default;
};

// Formula tree. Forall nodes quantify the session's full variable vector
// injectively over structure cells; with fewer cells than variables they are
// vacuously true. Coverage nodes assert that every valuation satisfies at
// least one of the guards (the closing conjunct of a translation).
struct LogicFormula {
  enum class Kind { Const, Fact, Forall, Coverage, And, Or };
  Kind kind = Kind::Const;
  bool value = true;                   // Const
  StructAtom fact;                     // Fact: atom without universal variables
  Guard guard;                         // Forall
  std::optional<DataFormula> body;     // Forall
  std::vector<Guard> cover;            // Coverage
  bool cover_ignores_weak_yy = false;  // Coverage, array flavor
  std::vector<LogicFormula> kids;      // And / Or

  static LogicFormula constant(bool v);
  static LogicFormula fact_atom(StructAtom a);
  static LogicFormula forall(Guard g, DataFormula b);
  static LogicFormula coverage(std::vector<Guard> gs, bool ignore_weak_yy);
  static LogicFormula conj(std::vector<LogicFormula> kids);
  static LogicFormula disj(std::vector<LogicFormula> kids);
};

// One universal valuation: a cell slot per variable.
struct CellSlot {
  int structure = 0;
  int index = 0;
  auto operator<=>(const CellSlot&) const = default;
};

bool eval_atom(const StructAtom& atom, const Session& s, const ProgramConfig& c,
               const std::vector<CellSlot>& valuation);
bool holds(const LogicFormula& f, const Session& s, const ProgramConfig& c);

std::string render_ref(const AtomRef& r, const Session& s);
std::string render_atom(const StructAtom& a, const Session& s);
std::string render_guard(const Guard& g, const Session& s);

}  // namespace qda
