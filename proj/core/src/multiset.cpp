#include "wfoc/multiset.hpp"

namespace wfoc {

void Multiset::add(WeightSeq seq, std::uint64_t multiplicity) {
  if (multiplicity == 0) return;
  items_[std::move(seq)] += multiplicity;
}

void Multiset::merge(const Multiset& other) {
  for (const auto& [seq, k] : other.items_) items_[seq] += k;
}

std::uint64_t Multiset::cardinality() const {
  std::uint64_t total = 0;
  for (const auto& entry : items_) total += entry.second;
  return total;
}

std::uint64_t Multiset::count(const WeightSeq& seq) const {
  auto it = items_.find(seq);
  return it == items_.end() ? 0 : it->second;
}

Multiset Multiset::append(const Weight& w) const {
  Multiset out;
  for (const auto& [seq, k] : items_) {
    WeightSeq longer = seq;
    longer.push_back(w);
    out.items_.emplace_hint(out.items_.end(), std::move(longer), k);
  }
  return out;
}

std::string format_seq(const WeightSeq& seq) {
  std::string out = "[";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) out += ',';
    out += seq[i].to_string();
  }
  return out + "]";
}

std::string Multiset::to_string() const {
  if (items_.empty()) return "{}\n";
  std::string out;
  for (const auto& [seq, k] : items_) out += std::to_string(k) + " x " + format_seq(seq) + "\n";
  return out;
}

Multiset operator+(Multiset a, const Multiset& b) {
  a.merge(b);
  return a;
}

}  // namespace wfoc
