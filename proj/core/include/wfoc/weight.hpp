#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace wfoc {

using Rational = boost::rational<std::int64_t>;

// Exact weight: a rational number (integers have denominator 1) or an opaque
// symbolic token. Numbers order before symbols.
class Weight {
 public:
  Weight() : value_(Rational(0)) {}
  Weight(std::int64_t value) : value_(Rational(value)) {}  // NOLINT(implicit)
  explicit Weight(Rational value) : value_(value) {}

  static Weight symbol(std::string name);
  // Accepts "12", "-3", "7/4", or a token of [A-Za-z_][A-Za-z0-9_']*.
  static Weight parse(std::string_view text);

  bool is_number() const { return std::holds_alternative<Rational>(value_); }
  bool is_integer() const { return is_number() && number().denominator() == 1; }
  const Rational& number() const;
  const std::string& symbol_name() const;

  std::string to_string() const;

  friend bool operator==(const Weight& a, const Weight& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Weight& a, const Weight& b);

 private:
  explicit Weight(std::string name) : value_(std::move(name)) {}
  std::variant<Rational, std::string> value_;
};

std::string to_string(const Rational& r);

}  // namespace wfoc
