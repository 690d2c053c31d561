#pragma once

namespace xxxlab {

/// Binomial coefficient, 0 outside 0 <= k <= n.
long long binomial(int n, int k);

}  // namespace xxxlab
