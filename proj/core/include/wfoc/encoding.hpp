#pragma once

#include "wfoc/automaton.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wfoc {

// Positions are 1-based.
using Valuation = std::map<std::string, std::size_t>;

// Σ_V = Σ × {0,1}^V. Letter (a, mask) has index a·2^|V| + mask, where bit i of
// mask belongs to vars()[i]. Names read "a:b0b1..." (character i is bit i);
// with V = ∅ the name is the base letter's.
class ExtAlphabet {
 public:
  ExtAlphabet() = default;
  ExtAlphabet(Alphabet base, std::vector<std::string> vars);

  const Alphabet& base() const { return base_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t num_vars() const { return vars_.size(); }
  std::uint32_t full_mask() const { return (std::uint32_t{1} << vars_.size()) - 1; }
  std::size_t size() const { return base_.size() << vars_.size(); }
  // Materialized letter names, usable as an automaton alphabet.
  const Alphabet& alphabet() const { return ext_; }

  Letter letter(Letter base_letter, std::uint32_t mask) const {
    return static_cast<Letter>((base_letter << vars_.size()) | mask);
  }
  Letter base_of(Letter a) const { return a >> vars_.size(); }
  std::uint32_t mask_of(Letter a) const { return a & full_mask(); }
  std::optional<std::size_t> var_index(const std::string& v) const;
  std::size_t var_at(const std::string& v) const;  // throws ScopeError

  // V ∪ {v}, v appended as the last (most significant) bit.
  ExtAlphabet extend(const std::string& v) const;
  // V ∖ {v}, remaining variables keep their relative order.
  ExtAlphabet remove(const std::string& v) const;

  friend bool operator==(const ExtAlphabet& a, const ExtAlphabet& b) {
    return a.base_ == b.base_ && a.vars_ == b.vars_;
  }

 private:
  Alphabet base_;
  std::vector<std::string> vars_;
  Alphabet ext_;
};

// Throws InputError when sigma misses a variable of V or points outside u.
Word encode(const ExtAlphabet& ext, std::span<const Letter> u, const Valuation& sigma);

struct Decoded {
  Word word;
  Valuation valuation;
};
// nullopt iff some variable row is not in 0*10*.
std::optional<Decoded> decode(const ExtAlphabet& ext, std::span<const Letter> ext_word);

// One row per variable, as 0/1 characters.
std::vector<std::string> bit_rows(const ExtAlphabet& ext, std::span<const Letter> ext_word);

}  // namespace wfoc
