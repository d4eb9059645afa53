#pragma once
// Serialization: sessions, automata, and translated formulas round-trip
// through JSON; SMT-LIB text is emitted for external solvers, never solved
// here. Data-word traces live in config.hpp.

#include <memory>
#include <string>

#include <json.hpp>

#include "qda/automaton.hpp"
#include "qda/translate.hpp"

namespace qda {

nlohmann::json session_to_json(const Session& s);
std::shared_ptr<Session> session_from_json(const nlohmann::json& j); // finalized
std::shared_ptr<Session> read_session_file(const std::string& path);
void write_session_file(const Session& s, const std::string& path);

nlohmann::json qda_to_json(const Qda& a);
Qda qda_from_json(const nlohmann::json& j);
Qda read_qda_file(const std::string& path);
void write_qda_file(const Qda& a, const std::string& path);

nlohmann::json formula_to_json(const TranslatedFormula& f);
TranslatedFormula formula_from_json(const nlohmann::json& j);
TranslatedFormula read_formula_file(const std::string& path);
void write_formula_file(const TranslatedFormula& f, const std::string& path);

// Quantified SMT-LIB 2 assertion of the invariant: the array flavor uses the
// arrays theory over integer indices, the list flavor an uninterpreted cell
// sort with axiomatized successor/reachability. Ends with (check-sat).
std::string emit_smtlib(const TranslatedFormula& f);

}  // namespace qda
