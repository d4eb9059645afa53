#include "qda/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

using nlohmann::json;

namespace qda {

DataWord encode_config(const Session& s, const ProgramConfig& c) {
  if (c.scalar_values.size() != s.scalars.size())
    throw std::runtime_error("scalar count mismatch");
  if (c.cells.size() != s.structures.size())
    throw std::runtime_error("structure count mismatch");
  if (c.bindings.size() != s.pointers.size())
    throw std::runtime_error("binding count mismatch");

  DataWord w;
  std::vector<int> zeros(s.arity, 0);

  uint32_t null_bits = 0, low_bits = 0, high_bits = 0;
  std::vector<std::vector<uint32_t>> cell_bits(s.structures.size());
  for (size_t st = 0; st < s.structures.size(); ++st)
    cell_bits[st].assign(c.cells[st].size(), 0);

  for (size_t p = 0; p < c.bindings.size(); ++p) {
    const PointerBinding& b = c.bindings[p];
    uint32_t bit = s.pointer_bit((int)p);
    switch (b.kind) {
      case PointerBinding::Kind::Null:
        if (!s.nil_cell) throw std::runtime_error("null pointer but session has no nil cell");
        null_bits |= bit;
        break;
      case PointerBinding::Kind::Cell:
        if (b.structure < 0 || b.structure >= (int)c.cells.size() || b.index < 0 ||
            b.index >= (int)c.cells[b.structure].size())
          throw std::runtime_error("pointer binding out of range");
        cell_bits[b.structure][b.index] |= bit;
        break;
      case PointerBinding::Kind::Low:
      case PointerBinding::Kind::High:
        if (b.structure < 0 || b.structure >= (int)s.structures.size() ||
            s.structures[b.structure].kind != StructureDecl::Kind::Array)
          throw std::runtime_error("range binding on a non-array structure");
        (b.kind == PointerBinding::Kind::Low ? low_bits : high_bits) |= bit;
        break;
    }
  }

  if (s.nil_cell) w.push_back({Letter{s.nil_bit() | null_bits, -1}, zeros});
  if (s.scalar_cells) {
    for (size_t k = 0; k < s.scalars.size(); ++k) {
      std::vector<int> d(s.arity, c.scalar_values[k]);
      w.push_back({Letter{s.scalar_bit((int)k), -1}, d});
    }
  }
  for (size_t st = 0; st < s.structures.size(); ++st) {
    bool arr = s.structures[st].kind == StructureDecl::Kind::Array;
    if (arr) w.push_back({Letter{s.low_bit() | low_bits, -1}, zeros});
    for (size_t i = 0; i < c.cells[st].size(); ++i) {
      if ((int)c.cells[st][i].size() != s.arity)
        throw std::runtime_error("cell arity mismatch");
      w.push_back({Letter{cell_bits[st][i], -1}, c.cells[st][i]});
    }
    if (arr) w.push_back({Letter{s.high_bit() | high_bits, -1}, zeros});
  }
  return w;
}

json config_to_json(const Session& s, const ProgramConfig& c) {
  json j;
  json sc = json::object();
  for (size_t k = 0; k < s.scalars.size(); ++k) sc[s.scalars[k]] = c.scalar_values[k];
  j["scalars"] = sc;
  j["structures"] = c.cells;
  json ptrs = json::object();
  for (size_t p = 0; p < s.pointers.size(); ++p) {
    const PointerBinding& b = c.bindings[p];
    switch (b.kind) {
      case PointerBinding::Kind::Null: ptrs[s.pointers[p]] = nullptr; break;
      case PointerBinding::Kind::Cell:
        ptrs[s.pointers[p]] = json{{"s", b.structure}, {"i", b.index}};
        break;
      case PointerBinding::Kind::Low:
        ptrs[s.pointers[p]] = json{{"s", b.structure}, {"end", "lo"}};
        break;
      case PointerBinding::Kind::High:
        ptrs[s.pointers[p]] = json{{"s", b.structure}, {"end", "hi"}};
        break;
    }
  }
  j["ptrs"] = ptrs;
  return j;
}

ProgramConfig config_from_json(const Session& s, const json& j) {
  ProgramConfig c;
  c.scalar_values.resize(s.scalars.size(), 0);
  if (j.contains("scalars"))
    for (size_t k = 0; k < s.scalars.size(); ++k)
      if (j["scalars"].contains(s.scalars[k])) c.scalar_values[k] = j["scalars"][s.scalars[k]];
  c.cells.resize(s.structures.size());
  const json& sts = j.at("structures");
  if (sts.size() != s.structures.size()) throw std::runtime_error("structure count mismatch");
  for (size_t st = 0; st < sts.size(); ++st) {
    for (const auto& cell : sts[st]) {
      if (cell.is_array())
        c.cells[st].push_back(cell.get<std::vector<int>>());
      else
        c.cells[st].push_back({cell.get<int>()});
      if ((int)c.cells[st].back().size() != s.arity)
        throw std::runtime_error("cell arity mismatch");
    }
  }
  c.bindings.resize(s.pointers.size());
  const json& ptrs = j.at("ptrs");
  for (size_t p = 0; p < s.pointers.size(); ++p) {
    const json& b = ptrs.at(s.pointers[p]);
    if (b.is_null()) {
      c.bindings[p] = PointerBinding::null();
    } else if (b.contains("end")) {
      int st = b.at("s");
      c.bindings[p] =
          b.at("end") == "lo" ? PointerBinding::low(st) : PointerBinding::high(st);
    } else {
      c.bindings[p] = PointerBinding::cell(b.at("s"), b.at("i"));
    }
  }
  return c;
}

std::vector<ProgramConfig> read_trace_file(const Session& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  std::vector<ProgramConfig> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(config_from_json(s, json::parse(line)));
  }
  return out;
}

void write_trace_file(const Session& s, const std::vector<ProgramConfig>& cs,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
  for (const auto& c : cs) out << config_to_json(s, c).dump() << "\n";
}

std::string render_config(const Session& s, const ProgramConfig& c) {
  std::ostringstream os;
  for (size_t k = 0; k < s.scalars.size(); ++k)
    os << s.scalars[k] << "=" << c.scalar_values[k] << " ";
  for (size_t st = 0; st < c.cells.size(); ++st) {
    os << s.structures[st].name << "=[";
    for (size_t i = 0; i < c.cells[st].size(); ++i) {
      if (i) os << ",";
      if (s.arity == 1) {
        os << c.cells[st][i][0];
      } else {
        os << "(";
        for (int a = 0; a < s.arity; ++a) {
          if (a) os << ",";
          os << c.cells[st][i][a];
        }
        os << ")";
      }
    }
    os << "] ";
  }
  for (size_t p = 0; p < s.pointers.size(); ++p) {
    os << s.pointers[p];
    const PointerBinding& b = c.bindings[p];
    switch (b.kind) {
      case PointerBinding::Kind::Null: os << "=nil"; break;
      case PointerBinding::Kind::Cell:
        os << "@" << b.structure << ":" << b.index;
        break;
      case PointerBinding::Kind::Low: os << "@lo"; break;
      case PointerBinding::Kind::High: os << "@hi"; break;
    }
    if (p + 1 < s.pointers.size()) os << " ";
  }
  return os.str();
}

}  // namespace qda
