#include "wfoc/weight.hpp"

#include "wfoc/error.hpp"

#include <cctype>
#include <charconv>

namespace wfoc {

namespace {

bool parse_int(std::string_view text, std::int64_t& out) {
  if (text.empty()) return false;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool is_token(std::string_view text) {
  if (text.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(text[0])) || text[0] == '_')) return false;
  for (char c : text) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  }
  return true;
}

}  // namespace

Weight Weight::symbol(std::string name) {
  if (!is_token(name)) throw InputError("invalid symbolic weight '" + name + "'");
  return Weight(std::move(name));
}

Weight Weight::parse(std::string_view text) {
  std::int64_t num = 0;
  if (parse_int(text, num)) return Weight(num);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t den = 0;
    if (parse_int(text.substr(0, slash), num) && parse_int(text.substr(slash + 1), den)) {
      if (den == 0) throw InputError("zero denominator in weight '" + std::string(text) + "'");
      return Weight(Rational(num, den));
    }
  }
  if (is_token(text)) return Weight(std::string(text));
  throw InputError("invalid weight '" + std::string(text) + "'");
}

const Rational& Weight::number() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  throw InputError("symbolic weight '" + std::get<std::string>(value_) + "' is not a number");
}

const std::string& Weight::symbol_name() const {
  if (const auto* s = std::get_if<std::string>(&value_)) return *s;
  throw InputError("weight " + to_string() + " is not symbolic");
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string Weight::to_string() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return wfoc::to_string(*r);
  return std::get<std::string>(value_);
}

std::strong_ordering operator<=>(const Weight& a, const Weight& b) {
  if (a.is_number() != b.is_number()) {
    return a.is_number() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.is_number()) {
    const Rational& x = a.number();
    const Rational& y = b.number();
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  return a.symbol_name() <=> b.symbol_name();
}

}  // namespace wfoc
