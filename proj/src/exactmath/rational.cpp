#include "xxxlab/exactmath/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace xxxlab {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(long num, long den) { return make_rational(Integer(num), Integer(den)); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

Integer parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("malformed integer");
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("malformed integer: " + std::string(s));
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return Integer(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    std::string_view whole = text.substr(0, dot);
    std::string digits = std::string(whole) + std::string(frac);
    if (whole.empty() || whole == "-" || whole == "+") digits = std::string(whole) + "0" + std::string(frac);
    Integer num = parse_integer(digits);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    return make_rational(num, den);
  }
  return Rational(parse_integer(text));
}

double to_double(const Rational& q) { return q.get_d(); }

std::optional<Rational> rational_reconstruct(Complex x, std::int64_t bound) {
  constexpr double kTol = 1e-9;
  if (bound <= 0 || !std::isfinite(x.real()) || std::abs(x.real()) > 1e15 || std::abs(x.imag()) >= kTol) return std::nullopt;
  // Continued-fraction convergents of the real part.
  double v = x.real();
  Integer p_prev = 1, q_prev = 0;
  Integer p = static_cast<long>(std::floor(v)), q = 1;
  double frac = v - std::floor(v);
  for (int iter = 0; iter < 64; ++iter) {
    if (q > bound) break;
    Rational cand = make_rational(p, q);
    if (std::abs(v - to_double(cand)) < kTol) return cand;
    if (frac < 1e-15) break;
    double inv = 1.0 / frac;
    double a = std::floor(inv);
    frac = inv - a;
    Integer ai = static_cast<long>(a);
    Integer p_next = ai * p + p_prev;
    Integer q_next = ai * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  return std::nullopt;
}

}  // namespace xxxlab
