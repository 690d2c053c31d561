#include "xxxlab/exactmath/poly.hpp"

#include <atomic>

namespace xxxlab {

namespace {
std::atomic<double> g_float_eps{1e-12};
}

double float_poly_epsilon() { return g_float_eps.load(); }
void set_float_poly_epsilon(double eps) { g_float_eps.store(eps); }

FloatPoly to_float(const ExactPoly& p) {
  return p.map<Complex>([](const Rational& q) { return Complex(to_double(q), 0.0); });
}

}  // namespace xxxlab
