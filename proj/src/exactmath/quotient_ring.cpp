#include "xxxlab/exactmath/quotient_ring.hpp"

namespace xxxlab {

AlgebraElement::AlgebraElement(std::shared_ptr<const ExactPoly> modulus, ExactPoly value)
    : mod_(std::move(modulus)), value_(std::move(value)) {
  if (mod_ && !mod_->is_monic()) throw Error(ErrorCode::InvalidArgument, "quotient ring modulus must be monic");
  reduce();
}

AlgebraElement AlgebraElement::generator(std::shared_ptr<const ExactPoly> modulus) {
  return AlgebraElement(std::move(modulus), ExactPoly::monomial(1));
}

Rational AlgebraElement::as_rational() const {
  if (!is_rational()) throw Error(ErrorCode::InvalidArgument, "algebra element is not a rational constant");
  return value_.coeff(0);
}

Complex AlgebraElement::embed(Complex root) const { return to_float(value_).evaluate(root); }

std::shared_ptr<const ExactPoly> AlgebraElement::common(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.mod_ && b.mod_ && a.mod_ != b.mod_ && !(*a.mod_ == *b.mod_))
    throw Error(ErrorCode::InvalidArgument, "mixing elements of different quotient rings");
  return a.mod_ ? a.mod_ : b.mod_;
}

void AlgebraElement::reduce() {
  if (mod_ && value_.degree() >= mod_->degree()) value_ = divmod(value_, *mod_).second;
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  return AlgebraElement(AlgebraElement::common(a, b), a.value_ + b.value_);
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  return AlgebraElement(AlgebraElement::common(a, b), a.value_ - b.value_);
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  return AlgebraElement(AlgebraElement::common(a, b), a.value_ * b.value_);
}

AlgebraElement operator/(const AlgebraElement& a, const AlgebraElement& b) {
  if (!b.is_rational() || b.is_zero())
    throw Error(ErrorCode::InvalidArgument, "quotient ring division is only defined by nonzero rationals");
  Rational inv = 1 / b.as_rational();
  return AlgebraElement(a.mod_, inv * a.value_);
}

}  // namespace xxxlab
