#include "wfoc/semiring.hpp"

#include "wfoc/analysis.hpp"
#include "wfoc/error.hpp"

namespace wfoc {

Semiring Semiring::builtin(std::string_view name) {
  if (name == "natural") return Semiring(SemiringKind::kNatural);
  if (name == "boolean") return Semiring(SemiringKind::kBoolean);
  if (name == "minplus") return Semiring(SemiringKind::kMinPlus);
  if (name == "maxplus") return Semiring(SemiringKind::kMaxPlus);
  if (name == "languages") return Semiring(SemiringKind::kLanguages);
  if (name == "multiset" || name == "multiset_seqs") return Semiring(SemiringKind::kMultiset);
  throw InputError("unknown semiring '" + std::string(name) + "'");
}

std::string Semiring::name() const {
  switch (kind_) {
    case SemiringKind::kNatural: return "natural";
    case SemiringKind::kBoolean: return "boolean";
    case SemiringKind::kMinPlus: return "minplus";
    case SemiringKind::kMaxPlus: return "maxplus";
    case SemiringKind::kLanguages: return "languages";
    case SemiringKind::kMultiset: return "multiset";
  }
  return "?";
}

bool Semiring::idempotent() const {
  return kind_ == SemiringKind::kBoolean || kind_ == SemiringKind::kMinPlus || kind_ == SemiringKind::kMaxPlus ||
         kind_ == SemiringKind::kLanguages;
}

SemiringValue Semiring::zero() const {
  switch (kind_) {
    case SemiringKind::kNatural: return Rational(0);
    case SemiringKind::kBoolean: return false;
    case SemiringKind::kMinPlus:
    case SemiringKind::kMaxPlus: return Tropical{true, Rational(0)};
    case SemiringKind::kLanguages: return Language{};
    case SemiringKind::kMultiset: return Multiset{};
  }
  return Rational(0);
}

SemiringValue Semiring::one() const {
  switch (kind_) {
    case SemiringKind::kNatural: return Rational(1);
    case SemiringKind::kBoolean: return true;
    case SemiringKind::kMinPlus:
    case SemiringKind::kMaxPlus: return Tropical{false, Rational(0)};
    case SemiringKind::kLanguages: return Language{""};
    case SemiringKind::kMultiset: return Multiset::singleton({});
  }
  return Rational(1);
}

SemiringValue Semiring::plus(const SemiringValue& x, const SemiringValue& y) const {
  switch (kind_) {
    case SemiringKind::kNatural: return std::get<Rational>(x) + std::get<Rational>(y);
    case SemiringKind::kBoolean: return std::get<bool>(x) || std::get<bool>(y);
    case SemiringKind::kMinPlus:
    case SemiringKind::kMaxPlus: {
      const Tropical& a = std::get<Tropical>(x);
      const Tropical& b = std::get<Tropical>(y);
      if (a.infinite) return b;
      if (b.infinite) return a;
      const bool take_a = kind_ == SemiringKind::kMinPlus ? !(b.value < a.value) : !(a.value < b.value);
      return take_a ? a : b;
    }
    case SemiringKind::kLanguages: {
      Language out = std::get<Language>(x);
      const Language& b = std::get<Language>(y);
      out.insert(b.begin(), b.end());
      return out;
    }
    case SemiringKind::kMultiset: return std::get<Multiset>(x) + std::get<Multiset>(y);
  }
  return x;
}

SemiringValue Semiring::times(const SemiringValue& x, const SemiringValue& y) const {
  switch (kind_) {
    case SemiringKind::kNatural: return std::get<Rational>(x) * std::get<Rational>(y);
    case SemiringKind::kBoolean: return std::get<bool>(x) && std::get<bool>(y);
    case SemiringKind::kMinPlus:
    case SemiringKind::kMaxPlus: {
      const Tropical& a = std::get<Tropical>(x);
      const Tropical& b = std::get<Tropical>(y);
      if (a.infinite || b.infinite) return Tropical{true, Rational(0)};
      return Tropical{false, a.value + b.value};
    }
    case SemiringKind::kLanguages: {
      Language out;
      for (const auto& u : std::get<Language>(x)) {
        for (const auto& v : std::get<Language>(y)) out.insert(u + v);
      }
      return out;
    }
    case SemiringKind::kMultiset: {
      // Cauchy product: pairwise concatenation, multiplicities multiply.
      Multiset out;
      for (const auto& [s, k] : std::get<Multiset>(x).items()) {
        for (const auto& [t, l] : std::get<Multiset>(y).items()) {
          WeightSeq st = s;
          st.insert(st.end(), t.begin(), t.end());
          out.add(std::move(st), k * l);
        }
      }
      return out;
    }
  }
  return x;
}

SemiringValue Semiring::scale(const SemiringValue& x, std::uint64_t k) const {
  SemiringValue result = zero();
  SemiringValue base = x;
  while (k > 0) {
    if (k & 1) result = plus(result, base);
    k >>= 1;
    if (k > 0) base = plus(base, base);
  }
  return result;
}

SemiringValue Semiring::embed(const Weight& w) const {
  switch (kind_) {
    case SemiringKind::kNatural: return w.number();
    case SemiringKind::kBoolean: return w.number() != Rational(0);
    case SemiringKind::kMinPlus:
      if (!w.is_number() && w.symbol_name() == "inf") return Tropical{true, Rational(0)};
      return Tropical{false, w.number()};
    case SemiringKind::kMaxPlus: return Tropical{false, w.number()};
    case SemiringKind::kLanguages:
      if (w.is_number()) throw InputError("numeric weight " + w.to_string() + " does not embed into languages");
      return Language{w.symbol_name()};
    case SemiringKind::kMultiset: return Multiset::singleton({w});
  }
  return zero();
}

std::string Semiring::format(const SemiringValue& v) const {
  switch (kind_) {
    case SemiringKind::kNatural: return to_string(std::get<Rational>(v));
    case SemiringKind::kBoolean: return std::get<bool>(v) ? "true" : "false";
    case SemiringKind::kMinPlus:
    case SemiringKind::kMaxPlus: {
      const Tropical& t = std::get<Tropical>(v);
      if (t.infinite) return kind_ == SemiringKind::kMinPlus ? "inf" : "-inf";
      return to_string(t.value);
    }
    case SemiringKind::kLanguages: {
      std::string out = "{";
      bool first = true;
      for (const auto& u : std::get<Language>(v)) {
        if (!first) out += ',';
        first = false;
        out += '"' + u + '"';
      }
      return out + "}";
    }
    case SemiringKind::kMultiset: {
      std::string s = std::get<Multiset>(v).to_string();
      if (!s.empty() && s.back() == '\n') s.pop_back();
      return s;
    }
  }
  return "?";
}

SemiringValue aggr_sp(const Semiring& s, const Multiset& m) {
  SemiringValue total = s.zero();
  for (const auto& [seq, k] : m.items()) {
    SemiringValue prod = s.one();
    for (const Weight& w : seq) prod = s.times(prod, s.embed(w));
    total = s.plus(total, s.scale(prod, k));
  }
  return total;
}

std::optional<Rational> aggr_ma(const Multiset& m) {
  std::optional<Rational> best;
  for (const auto& entry : m.items()) {
    const WeightSeq& seq = entry.first;
    if (seq.empty()) throw InputError("average of an empty weight sequence");
    Rational sum(0);
    for (const Weight& w : seq) sum += w.number();
    const Rational avg = sum / static_cast<std::int64_t>(seq.size());
    if (!best || *best < avg) best = avg;
  }
  return best;
}

std::string format_ma(const std::optional<Rational>& v) { return v ? to_string(*v) : "-inf"; }

SemiringValue concrete_semantics(const WeightedAutomaton& a, std::span<const Letter> w, const Semiring& s) {
  return aggr_sp(s, abstract_semantics(a, w));
}

std::optional<Rational> concrete_semantics_ma(const WeightedAutomaton& a, std::span<const Letter> w) {
  return aggr_ma(abstract_semantics(a, w));
}

}  // namespace wfoc
