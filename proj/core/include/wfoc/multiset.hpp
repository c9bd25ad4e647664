#pragma once

#include "wfoc/weight.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wfoc {

using WeightSeq = std::vector<Weight>;

// Finite multiset of weight sequences; stored multiplicities are >= 1.
class Multiset {
 public:
  using Map = std::map<WeightSeq, std::uint64_t>;

  Multiset() = default;
  static Multiset singleton(WeightSeq seq) {
    Multiset m;
    m.add(std::move(seq));
    return m;
  }

  void add(WeightSeq seq, std::uint64_t multiplicity = 1);
  void merge(const Multiset& other);  // pointwise sum
  Multiset& operator+=(const Multiset& other) {
    merge(other);
    return *this;
  }

  bool empty() const { return items_.empty(); }
  std::uint64_t cardinality() const;  // with multiplicity
  std::size_t distinct() const { return items_.size(); }
  std::uint64_t count(const WeightSeq& seq) const;
  const Map& items() const { return items_; }

  // Every sequence extended by w on the right.
  Multiset append(const Weight& w) const;

  // One "k x [w1,w2,...]" line per distinct sequence, lexicographic order.
  std::string to_string() const;

  friend bool operator==(const Multiset&, const Multiset&) = default;

 private:
  Map items_;
};

Multiset operator+(Multiset a, const Multiset& b);

std::string format_seq(const WeightSeq& seq);

}  // namespace wfoc
