#pragma once

#include "wfoc/automaton.hpp"
#include "wfoc/multiset.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace wfoc {

// Number extended with one infinite element: +inf for min-plus, -inf for max-plus.
struct Tropical {
  bool infinite = false;
  Rational value{0};
  friend bool operator==(const Tropical&, const Tropical&) = default;
};

using Language = std::set<std::string>;
using SemiringValue = std::variant<Rational, bool, Tropical, Language, Multiset>;

enum class SemiringKind { kNatural, kBoolean, kMinPlus, kMaxPlus, kLanguages, kMultiset };

class Semiring {
 public:
  // natural | boolean | minplus | maxplus | languages | multiset (alias multiset_seqs)
  static Semiring builtin(std::string_view name);
  explicit Semiring(SemiringKind kind) : kind_(kind) {}

  SemiringKind kind() const { return kind_; }
  std::string name() const;
  bool commutative() const { return kind_ != SemiringKind::kLanguages && kind_ != SemiringKind::kMultiset; }
  bool idempotent() const;

  SemiringValue zero() const;
  SemiringValue one() const;
  SemiringValue plus(const SemiringValue& x, const SemiringValue& y) const;
  SemiringValue times(const SemiringValue& x, const SemiringValue& y) const;
  // x + x + ... + x (k times); zero for k = 0.
  SemiringValue scale(const SemiringValue& x, std::uint64_t k) const;

  // Interpretation of an automaton weight; throws InputError when w does not
  // embed (symbolic weight in a numeric semiring, number in languages).
  SemiringValue embed(const Weight& w) const;
  std::string format(const SemiringValue& v) const;

 private:
  SemiringKind kind_;
};

SemiringValue aggr_sp(const Semiring& s, const Multiset& m);
// Maximum over sequences of their average; nullopt stands for -inf (empty input).
std::optional<Rational> aggr_ma(const Multiset& m);
std::string format_ma(const std::optional<Rational>& v);

SemiringValue concrete_semantics(const WeightedAutomaton& a, std::span<const Letter> w, const Semiring& s);
std::optional<Rational> concrete_semantics_ma(const WeightedAutomaton& a, std::span<const Letter> w);

}  // namespace wfoc
