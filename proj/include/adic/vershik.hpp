#pragma once

#include <vector>

#include "adic/diagram.hpp"

namespace adic {

/// Levels searched beyond the explicit prefix for a non-extremal edge.
inline constexpr int kDefaultExtensionBound = 64;

enum class Order { Less, Equal, Greater, Incomparable };

struct OrbitLog {
    PathRep base;
    long steps = 0;
    std::vector<PathRep> entries;  // entries[0] == base
};

PathRep minimal_path(const Diagram& d);
PathRep maximal_path(const Diagram& d);

/// V_B, with V_B(x_max) = x_min. May lengthen the explicit prefix.
PathRep successor(const Diagram& d, const PathRep& p, int extensionBound = kDefaultExtensionBound);
PathRep predecessor(const Diagram& d, const PathRep& p, int extensionBound = kDefaultExtensionBound);

Order compare(const Diagram& d, const PathRep& p, const PathRep& q);

/// |n| successor (n > 0) or predecessor (n < 0) steps from p.
OrbitLog orbit(const Diagram& d, const PathRep& p, long n, long maxSteps = 1L << 22);

}  // namespace adic
