#include "xxxlab/exactmath/combinatorics.hpp"

namespace xxxlab {

long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace xxxlab
