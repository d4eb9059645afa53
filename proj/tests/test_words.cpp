#include <doctest.h>

#include <map>
#include <memory>

#include "qda/checker.hpp"
#include "qda/config.hpp"
#include "qda/fixtures.hpp"
#include "qda/words.hpp"

using namespace qda;

namespace {

std::shared_ptr<const Session> list_session() {
  auto s = Session::make("words-list");
  s->structures = {{StructureDecl::Kind::List, "list", "head"}};
  s->pointers = {"head", "cur"};
  s->domains = {{PointerDomain::Kind::Head, 0, false},
                {PointerDomain::Kind::Free, 0, false}};
  s->scalars = {"k"};
  s->y_count = 2;
  s->finalize();
  return s;
}

std::shared_ptr<const Session> array_session() {
  auto s = Session::make("words-array");
  s->structures = {{StructureDecl::Kind::Array, "a", ""}};
  s->pointers = {"i"};
  s->domains = {{PointerDomain::Kind::Index, 0, false}};
  s->y_count = 1;
  s->finalize();
  return s;
}

// Test-only inverse of encode_config: walk the word back into a config using
// only the session's letter table. Exercised as the round-trip oracle below.
// Adjacent lists have no separator in the word, so a later list's head bit is
// what ends the current one.
ProgramConfig decode_word(const Session& s, const DataWord& w) {
  ProgramConfig c;
  c.scalar_values.resize(s.scalars.size(), 0);
  c.cells.resize(s.structures.size());
  c.bindings.resize(s.pointers.size());

  auto bind_all = [&](const Letter& l, PointerBinding b) {
    for (size_t p = 0; p < s.pointers.size(); ++p)
      if (l.ptrs & s.pointer_bit((int)p)) c.bindings[p] = b;
  };
  auto head_bit = [&](size_t st) -> uint32_t {
    const std::string& h = s.structures[st].head;
    int idx = h.empty() ? -1 : s.pointer_index(h);
    return idx < 0 ? 0u : s.pointer_bit(idx);
  };

  size_t pos = 0;
  if (s.nil_cell) bind_all(w[pos++].letter, PointerBinding::null());
  if (s.scalar_cells)
    for (size_t i = 0; i < s.scalars.size(); ++i) c.scalar_values[i] = w[pos++].data[0];
  for (size_t st = 0; st < s.structures.size(); ++st) {
    bool arr = s.structures[st].kind == StructureDecl::Kind::Array;
    if (arr) bind_all(w[pos++].letter, PointerBinding::low((int)st));
    while (pos < w.size() && is_structure_position(s, w[pos].letter)) {
      bool starts_later_list = false;
      for (size_t k = st + 1; k < s.structures.size(); ++k)
        if (uint32_t hb = head_bit(k); hb && (w[pos].letter.ptrs & hb))
          starts_later_list = true;
      if (starts_later_list) break;
      bind_all(w[pos].letter, PointerBinding::cell((int)st, (int)c.cells[st].size()));
      c.cells[st].push_back(w[pos].data);
      ++pos;
    }
    if (arr) bind_all(w[pos++].letter, PointerBinding::high((int)st));
  }
  return c;
}

}  // namespace

TEST_CASE("encoding a list with a scalar") {
  auto s = list_session();
  ProgramConfig c;
  c.scalar_values = {4};
  c.cells = {{{3}, {5}}};
  c.bindings = {PointerBinding::cell(0, 0), PointerBinding::null()};

  DataWord w = encode_config(*s, c);
  REQUIRE(w.size() == 4);
  // nil cell carries nil and the null pointer, data pinned to 0
  CHECK(w[0].letter.ptrs == (s->nil_bit() | s->pointer_bit(1)));
  CHECK(w[0].data == std::vector<int>{0});
  CHECK(w[1].letter.ptrs == s->scalar_bit(0));
  CHECK(w[1].data == std::vector<int>{4});
  CHECK(w[2].letter.ptrs == s->pointer_bit(0));
  CHECK(w[2].data == std::vector<int>{3});
  CHECK(is_blank(w[3].letter));
  CHECK(w[3].data == std::vector<int>{5});
}

TEST_CASE("encoding with no variables at all") {
  auto s = Session::make("words-min");
  s->structures = {{StructureDecl::Kind::List, "list", ""}};
  s->y_count = 1;
  s->finalize();
  ProgramConfig c;
  c.cells = {{}};
  DataWord w = encode_config(*s, c);
  REQUIRE(w.size() == 1);
  CHECK(w[0].letter.ptrs == s->nil_bit());
}

TEST_CASE("encoding an array with the index one past the end") {
  auto s = array_session();
  ProgramConfig c;
  c.cells = {{{7}}};
  c.bindings = {PointerBinding::high(0)};

  DataWord w = encode_config(*s, c);
  REQUIRE(w.size() == 4);
  CHECK(w[0].letter.ptrs == s->nil_bit());
  CHECK(w[1].letter.ptrs == s->low_bit());
  CHECK(is_blank(w[2].letter));
  CHECK(w[2].data == std::vector<int>{7});
  CHECK(w[3].letter.ptrs == (s->high_bit() | s->pointer_bit(0)));
}

TEST_CASE("encoding rejects dangling bindings") {
  auto s = list_session();
  ProgramConfig c;
  c.scalar_values = {0};
  c.cells = {{{1}}};
  c.bindings = {PointerBinding::cell(0, 0), PointerBinding::cell(0, 3)};
  CHECK_THROWS(encode_config(*s, c));
}

TEST_CASE("valuation placements") {
  CHECK(all_valuations(4, 2).size() == 12);
  CHECK(all_valuations(2, 1).size() == 2);
  CHECK(all_valuations(1, 2).empty());

  SUBCASE("structure placements skip aux cells") {
    auto s = list_session();
    ProgramConfig c;
    c.scalar_values = {1};
    c.cells = {{{2}, {3}}};
    c.bindings = {PointerBinding::cell(0, 0), PointerBinding::null()};
    DataWord w = encode_config(*s, c);
    // word is nil, k, cell, cell: only the last two admit variables
    auto vs = structure_valuations(*s, w, 2);
    CHECK(vs.size() == 2);
    for (const auto& placement : vs)
      for (int p : placement) CHECK(is_structure_position(*s, w[p].letter));
  }
}

TEST_CASE("symbolic projection and validity") {
  auto s = list_session();
  ProgramConfig c;
  c.scalar_values = {1};
  c.cells = {{{2}, {3}}};
  c.bindings = {PointerBinding::cell(0, 0), PointerBinding::cell(0, 1)};
  DataWord w = encode_config(*s, c);

  auto vs = structure_valuations(*s, w, 2);
  REQUIRE(!vs.empty());
  ValuationWord v = apply_valuation(w, vs[0]);
  SymbolicWord sym = symbolic_of(v);
  CHECK(sym.size() == w.size());
  CHECK(is_valid_word(*s, sym));

  SUBCASE("duplicate pointer is invalid") {
    SymbolicWord bad = sym;
    bad[0].ptrs |= s->pointer_bit(0); // head also occurs at its cell
    CHECK_FALSE(is_valid_word(*s, bad));
  }

  SUBCASE("missing universal variable is invalid") {
    SymbolicWord bad = sym;
    for (Letter& l : bad)
      if (l.y == 1) l.y = -1;
    CHECK_FALSE(is_valid_word(*s, bad));
  }
}

TEST_CASE("letter rendering round-trips") {
  auto s = list_session();
  Letter l{s->pointer_bit(0) | s->pointer_bit(1), 0};
  std::string text = render_letter(*s, l);
  CHECK(text == "head,cur/y1");
  auto back = parse_letter(*s, text);
  REQUIRE(back.has_value());
  CHECK(*back == l);
  CHECK(render_letter(*s, blank_letter()) == "-/-");
  CHECK(parse_letter(*s, "-/-") == blank_letter());
  CHECK_FALSE(parse_letter(*s, "bogus/y1").has_value());
}

TEST_CASE("encoding is injective and decodable on bounded configs") {
  for (const char* name : {"list-find", "array-find", "list-reverse"}) {
    const Fixture* f = find_fixture(name);
    REQUIRE(f != nullptr);
    const Session& s = *f->session;
    ModelBounds b;
    b.max_cells = 2;
    std::map<std::string, ProgramConfig> seen;
    for_each_model(s, b, [&](const ProgramConfig& c) {
      DataWord w = encode_config(s, c);
      // serialize the word as the map key; sessions that keep scalars out of
      // the word pass them alongside, so they join the key explicitly
      std::string key;
      for (const Cell& cell : w) {
        key += render_letter(s, cell.letter);
        for (int d : cell.data) key += " " + std::to_string(d);
        key += "|";
      }
      if (!s.scalar_cells)
        for (int v : c.scalar_values) key += " s" + std::to_string(v);
      auto [it, inserted] = seen.emplace(key, c);
      if (!inserted) CHECK(it->second == c); // distinct configs, distinct words

      ProgramConfig back = decode_word(s, w);
      if (!s.scalar_cells) back.scalar_values = c.scalar_values;
      CHECK(back == c);
      return true;
    });
    CHECK(seen.size() > 0);
  }
}
