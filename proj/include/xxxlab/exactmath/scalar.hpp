#pragma once

// Uniform access to the three scalar rings used across the library:
// Rational (exact), Complex (double precision) and AlgebraElement (exact,
// Q[x]/(chi) for a squarefree chi). Generic code goes through these helpers
// instead of calling type-specific functions.

#include <cmath>
#include <complex>

#include "xxxlab/exactmath/rational.hpp"

namespace xxxlab {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational lift(const Rational& q) { return q; }
  static double magnitude(const Rational& x) { return std::abs(to_double(x)); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& x) { return x == Complex{}; }
  static Complex lift(const Rational& q) { return {to_double(q), 0.0}; }
  static double magnitude(const Complex& x) { return std::abs(x); }
};

template <class T>
bool is_zero(const T& x) {
  return ScalarTraits<T>::is_zero(x);
}

template <class T>
T lift(const Rational& q) {
  return ScalarTraits<T>::lift(q);
}

template <class T>
double magnitude(const T& x) {
  return ScalarTraits<T>::magnitude(x);
}

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

}  // namespace xxxlab
