#include "nbmu/bisim.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace nbmu {

std::size_t Relation::count() const {
  std::size_t c = 0;
  for (const auto& r : rows_) c += r.count();
  return c;
}

std::vector<std::pair<StateId, StateId>> Relation::pairs() const {
  std::vector<std::pair<StateId, StateId>> out;
  for (StateId l = 0; l < rows_.size(); ++l)
    for (auto r : members(rows_[l])) out.emplace_back(l, r);
  return out;
}

StateSet Relation::image(const StateSet& left) const {
  StateSet out(right_size_);
  for (auto l : members(left)) out |= rows_[l];
  return out;
}

StateSet Relation::preimage(const StateSet& right) const {
  StateSet out(rows_.size());
  for (StateId l = 0; l < rows_.size(); ++l)
    if (rows_[l].intersects(right)) out.set(l);
  return out;
}

bool Relation::full() const {
  StateSet covered(right_size_);
  for (const auto& r : rows_) {
    if (r.none()) return false;
    covered |= r;
  }
  return covered.all();
}

Relation& Relation::operator|=(const Relation& other) {
  if (other.left_size() != left_size() || other.right_size_ != right_size_)
    throw std::invalid_argument("relation union: different shapes");
  for (StateId l = 0; l < rows_.size(); ++l) rows_[l] |= other.rows_[l];
  return *this;
}

namespace {

void check_vocabulary(const NeighborhoodModel& a, const NeighborhoodModel& b) {
  if (a.vocabulary() != b.vocabulary()) throw std::invalid_argument("bisimulation: vocabulary mismatch");
}

bool harmonious(const NeighborhoodModel& a, StateId s, const NeighborhoodModel& b, StateId t) {
  for (const auto& [v, z] : a.valuation)
    if (z.test(s) != b.valuation.at(v).test(t)) return false;
  return true;
}

std::vector<std::vector<StateSet>> families(const NeighborhoodModel& m, NeighborhoodMode mode) {
  if (mode == NeighborhoodMode::Generators) return m.gens;
  std::vector<std::vector<StateSet>> out;
  for (StateId s = 0; s < m.size(); ++s) out.push_back(upward_closure(m, s));
  return out;
}

// Zig: every neighborhood Z of s has some Z' of t with Z' inside R[Z].
// Zag: every neighborhood Z' of t has some Z of s with Z inside R^-1[Z'].
bool pair_ok(const std::vector<StateSet>& ns, const std::vector<StateSet>& nt, const Relation& r) {
  for (const auto& z : ns) {
    auto img = r.image(z);
    if (std::none_of(nt.begin(), nt.end(), [&](const StateSet& z2) { return z2.is_subset_of(img); }))
      return false;
  }
  for (const auto& z2 : nt) {
    auto pre = r.preimage(z2);
    if (std::none_of(ns.begin(), ns.end(), [&](const StateSet& z) { return z.is_subset_of(pre); }))
      return false;
  }
  return true;
}

}  // namespace

bool is_bisimulation(const NeighborhoodModel& left, const NeighborhoodModel& right, const Relation& r,
                     NeighborhoodMode mode) {
  check_vocabulary(left, right);
  if (r.left_size() != left.size() || r.right_size() != right.size())
    throw std::invalid_argument("is_bisimulation: relation does not fit the models");
  const auto fl = families(left, mode);
  const auto fr = families(right, mode);
  for (const auto& [s, t] : r.pairs()) {
    if (!harmonious(left, s, right, t)) return false;
    if (!pair_ok(fl[s], fr[t], r)) return false;
  }
  return true;
}

Relation greatest_bisimulation(const NeighborhoodModel& left, const NeighborhoodModel& right,
                               NeighborhoodMode mode) {
  check_vocabulary(left, right);
  const auto fl = families(left, mode);
  const auto fr = families(right, mode);
  Relation r(left.size(), right.size());
  for (StateId s = 0; s < left.size(); ++s)
    for (StateId t = 0; t < right.size(); ++t)
      if (harmonious(left, s, right, t)) r.add(s, t);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [s, t] : r.pairs()) {
      if (!pair_ok(fl[s], fr[t], r)) {
        r.remove(s, t);
        changed = true;
      }
    }
  }
  return r;
}

bool bisimilar(const NeighborhoodModel& left, StateId l, const NeighborhoodModel& right, StateId r) {
  return greatest_bisimulation(left, right).contains(l, r);
}

bool globally_bisimilar(const NeighborhoodModel& left, StateId l, const NeighborhoodModel& right, StateId r) {
  auto g = greatest_bisimulation(left, right);
  return g.full() && g.contains(l, r);
}

Relation insertion_graph(const InsertionMap& ins, std::size_t union_size) {
  Relation r(ins.image.size(), union_size);
  for (StateId u = 0; u < ins.image.size(); ++u) r.add(u, ins.image[u]);
  return r;
}

std::string dump_relation(const Relation& r, const NeighborhoodModel& left, const NeighborhoodModel& right) {
  std::vector<std::pair<std::string, std::string>> named;
  for (const auto& [s, t] : r.pairs()) named.emplace_back(left.states[s], right.states[t]);
  std::sort(named.begin(), named.end());
  nlohmann::ordered_json doc;
  doc["pairs"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : named) doc["pairs"].push_back({a, b});
  return doc.dump();
}

}  // namespace nbmu
