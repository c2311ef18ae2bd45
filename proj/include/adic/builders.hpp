#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adic/diagram.hpp"

namespace adic {

// ---------------------------------------------------------------------------
// Substitutions
// ---------------------------------------------------------------------------

struct SubstitutionSpec {
    std::vector<std::string> alphabet;
    std::vector<std::vector<int>> words;  // words[a] = tau(a) as letter indices
};

/// Stationary diagram of a proper primitive substitution; one clock edge
/// per level-1 vertex.
DiagramSpec from_substitution(const SubstitutionSpec& s);

/// Letter-count primitivity (some power of the substitution matrix is positive).
bool is_primitive(const SubstitutionSpec& s);

/// tau applied n times to a single letter.
std::vector<int> iterate_substitution(const SubstitutionSpec& s, int letter, int n);

// ---------------------------------------------------------------------------
// Odometers
// ---------------------------------------------------------------------------

/// Quotients q_1, q_2, ...: the prefix, then the cycle repeated forever.
struct OdometerSpec {
    std::vector<std::int64_t> prefix;
    std::vector<std::int64_t> cycle;

    std::int64_t quotient(int n) const;  // n >= 1
};

/// Multiplicity of each prime; nullopt encodes infinite multiplicity.
using PrimeMultiplicity = std::map<std::int64_t, std::optional<std::int64_t>>;

struct OdometerCanonical {
    std::int64_t N = 1;  // product of finite-multiplicity primes, with multiplicity
    std::int64_t M = 1;  // product of infinite-multiplicity primes, each once
    PrimeMultiplicity multiplicity;
};

OdometerCanonical odometer_canonical(const OdometerSpec& o);
bool odometers_equivalent(const OdometerSpec& a, const OdometerSpec& b);

DiagramSpec from_odometer(const OdometerSpec& o);

/// Addition with carry on the first L digits; digits[0] is the q_1 digit.
std::vector<std::int64_t> oplus(const std::vector<std::int64_t>& x,
                                const std::vector<std::int64_t>& y,
                                const OdometerSpec& q, int L);

/// How path labels of from_odometer(o) read as odometer digits: when N = 1
/// the single clock edge carries no digit and level n >= 2 holds digit n-1.
struct OdometerReading {
    OdometerSpec quotients;
    int firstLevel = 1;
};

OdometerReading odometer_reading(const OdometerSpec& o);
std::vector<std::int64_t> path_digits(const OdometerReading& r, const PathRep& p, int L);

// ---------------------------------------------------------------------------
// Toeplitz sequences
// ---------------------------------------------------------------------------

struct ToeplitzStage {
    std::int64_t period = 0;
    std::map<std::int64_t, int> fill;  // position in [0, period) -> letter
};

/// Continuation stage: multiply the period by `ratio` and fill the listed
/// holes, indexed in increasing position order within the new period.
struct ToeplitzTailStage {
    std::int64_t ratio = 0;
    std::map<std::int64_t, int> holes;
};

struct ToeplitzSpec {
    std::vector<std::string> alphabet;
    std::vector<ToeplitzStage> stages;
    std::vector<ToeplitzTailStage> tail;  // repeated cyclically; may be empty
    std::int64_t widthBound = 0;          // declared K; 0 = unchecked
};

struct ToeplitzResult {
    DiagramSpec diagram;
    std::vector<std::vector<std::string>> words;  // words[k-1] = W_k, vertex order
    std::int64_t horizon = 0;
    std::vector<int> window;               // x on [-horizon, horizon)
    std::vector<std::int64_t> periods;     // s_k for each harvested level
    std::vector<std::size_t> holesPerStage;
    int widthK = 0;
};

/// Expands the (finite + tail) stage list to `count` concrete stages.
std::vector<ToeplitzStage> expand_stages(const ToeplitzSpec& t, std::size_t count);

ToeplitzResult from_toeplitz(const ToeplitzSpec& t, std::int64_t horizon);

}  // namespace adic
