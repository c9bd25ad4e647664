#include "wfoc/encoding.hpp"

#include "wfoc/error.hpp"

#include <algorithm>

namespace wfoc {

namespace {

std::vector<std::string> ext_names(const Alphabet& base, const std::vector<std::string>& vars) {
  if (vars.empty()) return base.names();
  std::vector<std::string> names;
  const std::uint32_t masks = std::uint32_t{1} << vars.size();
  for (const auto& a : base.names()) {
    for (std::uint32_t m = 0; m < masks; ++m) {
      std::string n = a + ":";
      for (std::size_t i = 0; i < vars.size(); ++i) n += (m >> i) & 1 ? '1' : '0';
      names.push_back(std::move(n));
    }
  }
  return names;
}

}  // namespace

ExtAlphabet::ExtAlphabet(Alphabet base, std::vector<std::string> vars)
    : base_(std::move(base)), vars_(std::move(vars)) {
  if (vars_.size() > 16) throw LimitError("at most 16 free variables are supported");
  std::vector<std::string> sorted = vars_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ScopeError("duplicate variable in variable set");
  }
  ext_ = Alphabet(ext_names(base_, vars_));
}

std::optional<std::size_t> ExtAlphabet::var_index(const std::string& v) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

std::size_t ExtAlphabet::var_at(const std::string& v) const {
  if (auto i = var_index(v)) return *i;
  throw ScopeError("variable '" + v + "' is not in the variable set");
}

ExtAlphabet ExtAlphabet::extend(const std::string& v) const {
  if (var_index(v)) throw ScopeError("variable '" + v + "' is already in the variable set");
  std::vector<std::string> vars = vars_;
  vars.push_back(v);
  return ExtAlphabet(base_, std::move(vars));
}

ExtAlphabet ExtAlphabet::remove(const std::string& v) const {
  const std::size_t i = var_at(v);
  std::vector<std::string> vars = vars_;
  vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(i));
  return ExtAlphabet(base_, std::move(vars));
}

Word encode(const ExtAlphabet& ext, std::span<const Letter> u, const Valuation& sigma) {
  Word out(u.begin(), u.end());
  for (auto& a : out) {
    if (a >= ext.base().size()) throw InputError("letter outside the base alphabet");
    a = ext.letter(a, 0);
  }
  for (std::size_t i = 0; i < ext.num_vars(); ++i) {
    auto it = sigma.find(ext.vars()[i]);
    if (it == sigma.end()) throw InputError("valuation misses variable '" + ext.vars()[i] + "'");
    if (it->second < 1 || it->second > u.size()) {
      throw InputError("variable '" + ext.vars()[i] + "' points outside the word");
    }
    out[it->second - 1] |= std::uint32_t{1} << i;
  }
  return out;
}

std::optional<Decoded> decode(const ExtAlphabet& ext, std::span<const Letter> ext_word) {
  Decoded d;
  d.word.reserve(ext_word.size());
  std::vector<std::size_t> pos(ext.num_vars(), 0);
  for (std::size_t j = 0; j < ext_word.size(); ++j) {
    if (ext_word[j] >= ext.size()) throw InputError("letter outside the extended alphabet");
    d.word.push_back(ext.base_of(ext_word[j]));
    const std::uint32_t m = ext.mask_of(ext_word[j]);
    for (std::size_t i = 0; i < ext.num_vars(); ++i) {
      if (!((m >> i) & 1)) continue;
      if (pos[i] != 0) return std::nullopt;
      pos[i] = j + 1;
    }
  }
  for (std::size_t i = 0; i < ext.num_vars(); ++i) {
    if (pos[i] == 0) return std::nullopt;
    d.valuation[ext.vars()[i]] = pos[i];
  }
  return d;
}

std::vector<std::string> bit_rows(const ExtAlphabet& ext, std::span<const Letter> ext_word) {
  std::vector<std::string> rows(ext.num_vars());
  for (Letter a : ext_word) {
    for (std::size_t i = 0; i < ext.num_vars(); ++i) rows[i] += (ext.mask_of(a) >> i) & 1 ? '1' : '0';
  }
  return rows;
}

}  // namespace wfoc
