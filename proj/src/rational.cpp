#include "sympten/rational.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace sympten {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational rational_from_string(const std::string& input) {
  std::string s = input;
  if (s.empty()) throw std::invalid_argument("empty numeric string");
  bool neg = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    pos = 1;
  }
  s = s.substr(pos);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den) || den == "0")
      throw std::invalid_argument("bad rational literal: " + input);
    Rational r{mpz_class(num, 10), mpz_class(den, 10)};
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    std::string tail = s.substr(e + 1);
    s = s.substr(0, e);
    char* end = nullptr;
    exp10 = std::strtol(tail.c_str(), &end, 10);
    if (tail.empty() || (end && *end != '\0'))
      throw std::invalid_argument("bad exponent in: " + input);
  }
  std::string digits = s;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    digits = s.substr(0, dot) + s.substr(dot + 1);
    exp10 -= static_cast<long>(s.size() - dot - 1);
  }
  if (!all_digits(digits)) throw std::invalid_argument("bad numeric literal: " + input);
  Rational r{mpz_class(digits, 10)};
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  if (exp10 >= 0)
    r *= Rational(pow10);
  else
    r /= Rational(pow10);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

std::string rational_to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string double_to_string(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double double_from_string(const std::string& s) {
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const Rational r = rational_from_string(s);
    return mpz_get_d(r.get_num().get_mpz_t()) / mpz_get_d(r.get_den().get_mpz_t());
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || (end && *end != '\0'))
    throw std::invalid_argument("bad numeric literal: " + s);
  return v;
}

}  // namespace sympten
