#include "qda/session.hpp"

#include <stdexcept>

namespace qda {

void Session::finalize() {
  names_.clear();
  scalar_bits_.clear();
  pointer_bits_.clear();
  nil_bit_ = low_bit_ = high_bit_ = 0;
  aux_mask_ = required_mask_ = 0;

  auto add = [&](const std::string& n) {
    uint32_t bit = 1u << names_.size();
    names_.push_back(n);
    if (names_.size() > 31) throw std::runtime_error("too many letter names");
    return bit;
  };
  if (nil_cell) {
    nil_bit_ = add("nil");
    aux_mask_ |= nil_bit_;
    required_mask_ |= nil_bit_;
  }
  if (has_array()) {
    low_bit_ = add("lo");
    high_bit_ = add("hi");
    aux_mask_ |= low_bit_ | high_bit_;
    required_mask_ |= low_bit_ | high_bit_;
  }
  if (scalar_cells) {
    for (const auto& s : scalars) {
      uint32_t b = add(s);
      scalar_bits_.push_back(b);
      aux_mask_ |= b;
      required_mask_ |= b;
    }
  } else {
    scalar_bits_.assign(scalars.size(), 0);
  }
  for (const auto& p : pointers) {
    uint32_t b = add(p);
    pointer_bits_.push_back(b);
    required_mask_ |= b;
  }
  if (domains.empty()) domains.resize(pointers.size());
  if (domains.size() != pointers.size())
    throw std::runtime_error("pointer domain list does not match pointers");
  universe = AtomUniverse::make(y_count, arity, scalars);
}

int Session::pointer_index(const std::string& name) const {
  for (size_t i = 0; i < pointers.size(); ++i)
    if (pointers[i] == name) return (int)i;
  return -1;
}

int Session::name_bit_index(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return (int)i;
  return -1;
}

bool Session::has_array() const {
  for (const auto& s : structures)
    if (s.kind == StructureDecl::Kind::Array) return true;
  return false;
}

int Session::structure_index(const std::string& name) const {
  for (size_t i = 0; i < structures.size(); ++i)
    if (structures[i].name == name) return (int)i;
  return -1;
}

std::shared_ptr<Session> Session::make(std::string name) {
  auto s = std::make_shared<Session>();
  s->name = std::move(name);
  return s;
}

}  // namespace qda
