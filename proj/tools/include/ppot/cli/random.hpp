#pragma once

#include <cstddef>
#include <random>

#include "ppot/graph.hpp"

namespace ppot::cli {

using Rng = std::mt19937_64;

/// Uniform random spanning tree by attachment plus `extra_fraction * n`
/// further distinct edges. Connected by construction.
Graph random_connected_graph(Rng& rng, std::size_t n, double extra_fraction = 1.0);

/// Independent uniform values in [lo, hi].
VertexFunction random_function(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0);

}  // namespace ppot::cli
