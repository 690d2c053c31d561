#pragma once

// Elements of Q[x]/(chi) for a monic squarefree chi.
//
// When chi is the characteristic polynomial of a generator X of a
// commutative matrix algebra with simple spectrum, Q[x]/(chi) is isomorphic
// to the algebra itself and to the product of the residue fields at the
// roots of chi. Computing with the class of x therefore handles every joint
// eigenvalue tuple at once, exactly, even when the tuples are irrational.

#include <memory>
#include <vector>

#include "xxxlab/exactmath/poly.hpp"

namespace xxxlab {

class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(long c) : value_(ExactPoly::constant(Rational(c))) {}  // NOLINT
  AlgebraElement(const Rational& c) : value_(ExactPoly::constant(c)) {}  // NOLINT
  AlgebraElement(std::shared_ptr<const ExactPoly> modulus, ExactPoly value);

  /// The class of x in Q[x]/(modulus).
  static AlgebraElement generator(std::shared_ptr<const ExactPoly> modulus);

  const ExactPoly& value() const { return value_; }
  const std::shared_ptr<const ExactPoly>& modulus() const { return mod_; }
  bool is_zero() const { return value_.is_zero(); }
  bool is_rational() const { return value_.degree() <= 0; }
  /// The rational value of a constant element (throws otherwise).
  Rational as_rational() const;

  /// Image under x -> root, i.e. the component at one point of the spectrum.
  Complex embed(Complex root) const;

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  /// Division is only defined by rational (constant) elements.
  friend AlgebraElement operator/(const AlgebraElement& a, const AlgebraElement& b);
  AlgebraElement operator-() const { return AlgebraElement(0) - *this; }
  AlgebraElement& operator+=(const AlgebraElement& b) { return *this = *this + b; }
  AlgebraElement& operator-=(const AlgebraElement& b) { return *this = *this - b; }
  AlgebraElement& operator*=(const AlgebraElement& b) { return *this = *this * b; }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return (a - b).is_zero();
  }

 private:
  static std::shared_ptr<const ExactPoly> common(const AlgebraElement& a, const AlgebraElement& b);
  void reduce();

  std::shared_ptr<const ExactPoly> mod_;
  ExactPoly value_;
};

template <>
struct ScalarTraits<AlgebraElement> {
  static constexpr bool exact = true;
  static bool is_zero(const AlgebraElement& x) { return x.is_zero(); }
  static AlgebraElement lift(const Rational& q) { return AlgebraElement(q); }
  static double magnitude(const AlgebraElement& x) { return max_abs_coeff(x.value()); }
};

}  // namespace xxxlab
