#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "adic/builders.hpp"
#include "adic/diagram.hpp"

namespace fixtures {

inline adic::SubstitutionSpec abb_substitution()
{
    return {{"a", "b"}, {{0, 1, 1}, {0, 1}}};
}

inline adic::Diagram abb()
{
    return adic::validate(adic::from_substitution(abb_substitution()));
}

/// One vertex, `clock` level-1 edges, tau(a) = a^m.
inline adic::Diagram single_vertex(int clock, int m)
{
    adic::DiagramSpec s;
    s.alphabet = {"a"};
    s.level1 = {clock};
    s.templates = {{"t", {std::vector<adic::Vertex>(m, 0)}}};
    s.cycle = {0};
    return adic::validate(s);
}

/// q = (2, 3, 3, 3, ...).
inline adic::OdometerSpec odometer_23()
{
    return {{2}, {3}};
}

/// q = (2, 2, 2, ...).
inline adic::OdometerSpec odometer_2()
{
    return {{}, {2}};
}

/// Two letters, s = (2, 4, 8) then a tripling tail that keeps one hole per
/// period away from the origin.
inline adic::ToeplitzSpec toeplitz_spec()
{
    adic::ToeplitzSpec t;
    t.alphabet = {"a", "b"};
    t.stages = {{2, {{0, 0}}}, {4, {{1, 1}}}, {8, {{3, 0}}}};
    t.tail = {{3, {{0, 1}, {2, 0}}}};
    t.widthBound = 6;
    return t;
}

inline std::mt19937_64& rng()
{
    static std::mt19937_64 g(20240611);
    return g;
}

/// Mixed-radix digits of n (least significant first) for the quotient list q.
inline std::vector<std::int64_t> digits(std::int64_t n, const adic::OdometerSpec& q, int L)
{
    std::vector<std::int64_t> out(L, 0);
    for (int i = 0; i < L; ++i) {
        const auto b = q.quotient(i + 1);
        out[i] = n % b;
        n /= b;
    }
    return out;
}

}  // namespace fixtures
