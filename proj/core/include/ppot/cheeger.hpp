#pragma once

#include "ppot/graph.hpp"

namespace ppot {

/// Largest graph cheeger_constant_exact will enumerate.
inline constexpr std::size_t kCheegerEnumerationLimit = 22;

/// min over nonempty S with |S| <= |V|/2 of |boundary edges of S| / |S|, by
/// enumerating every subset. Throws TooLarge above the enumeration limit and
/// InvalidArgument for a single vertex.
double cheeger_constant_exact(const Graph& g);

struct CheegerCheck {
  double c1 = 0.0;  // sum |f| / sum |df|
  double cp = 0.0;  // sum |f|^p / sum |df|^p
  /// c1 <= 1/h, the co-area bound (with relative slack 1e-12).
  bool within_bound = false;
};

/// Measures the isoperimetric constants of f, which must vanish outside
/// `support`. Throws InvalidArgument when it does not and ZeroGradient when f
/// is nonzero but has no gradient.
CheegerCheck cheeger_functional_check(const Graph& g, const VertexFunction& f, const VertexSet& support,
                                      double h, double p);

}  // namespace ppot
