#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adic/error.hpp"

namespace adic {

/// Vertex labels are interned as indices into DiagramSpec::alphabet.
using Vertex = int;

/// Sentinel range of level-1 edges.
inline constexpr Vertex kClock = -1;

/// One level's edge set: words[a] lists the ranges of the edges leaving a,
/// in edge-label order. An empty word means a is absent at that level.
struct Template {
    std::string id;
    std::vector<std::vector<Vertex>> words;

    bool operator==(const Template&) const = default;
};

/// Ordered Bratteli diagram with an eventually periodic template schedule.
///
/// Level 1 carries `level1[a]` clock edges from each vertex a (0 = absent).
/// Level n >= 2 uses templates[prefix[n-2]] while n-2 < prefix.size(), and
/// cycles through `cycle` afterwards.
struct DiagramSpec {
    std::vector<std::string> alphabet;
    std::vector<int> level1;
    std::vector<Template> templates;
    std::vector<int> prefix;
    std::vector<int> cycle;

    bool operator==(const DiagramSpec&) const = default;
};

enum class Tail { Min, Max };

/// A path in X_B that agrees with the minimal (or maximal) path above its
/// explicit prefix. labels[0] is the level-1 clock label x_1.
struct PathRep {
    std::vector<int> labels;
    Tail tail = Tail::Min;

    int depth() const { return static_cast<int>(labels.size()); }
    bool operator==(const PathRep&) const = default;
};

/// Result of structural analysis. focus[i] is the common range (a vertex of
/// level i+1) of the label-0 edges at level i+2, over one prefix+cycle span.
struct PropertyReport {
    int widthK = 0;
    std::vector<std::optional<Vertex>> focus;
    bool focused = false;
    bool primitive = false;
    int primitiveSpan = 0;  // cycle repetitions needed for a positive product
    bool uniqueMinimal = false;
    bool uniqueMaximal = false;
    bool properlyOrdered = false;
    bool equalPathNumber = false;
};

/// Cuts n_1 < n_2 < ... given as an explicit list followed by a constant
/// stride. The implicit n_0 = 0 is not listed.
struct TelescopeCuts {
    std::vector<int> explicitCuts;
    std::optional<int> stride;
};

/// A validated diagram: the spec plus derived per-level data. Immutable.
class Diagram {
public:
    const DiagramSpec& spec() const { return m_spec; }

    int num_vertices() const { return static_cast<int>(m_spec.alphabet.size()); }
    const std::string& name(Vertex a) const { return m_spec.alphabet.at(a); }

    /// First level using cycle[0] is cycle_start() + 1.
    int cycle_start() const { return static_cast<int>(m_spec.prefix.size()) + 1; }
    int cycle_length() const { return static_cast<int>(m_spec.cycle.size()); }

    int template_index_at(int level) const;
    const Template& template_at(int level) const;

    bool has_vertex(int level, Vertex a) const;
    std::vector<Vertex> vertices(int level) const;

    /// l^n_a: the largest edge label leaving a at this level, or -1 if absent.
    int max_label(int level, Vertex a) const;
    /// Range of the edge with the given label; kClock at level 1.
    Vertex range(int level, Vertex a, int label) const;
    /// Number of edges at a level.
    int edge_count(int level) const;

    /// The unique minimal/maximal vertex chain, if it exists.
    bool has_chain(Tail kind) const;
    Vertex chain_vertex(Tail kind, int level) const;

    /// Label carried by the extremal chain edge at `level`.
    int chain_label(Tail kind, int level) const;

private:
    friend Diagram validate(const DiagramSpec& spec);

    DiagramSpec m_spec;
    std::optional<Vertex> m_minFixed;
    std::optional<Vertex> m_maxFixed;
    int m_minPeriodic = 0;
    int m_maxPeriodic = 0;

    void compute_chains();
    std::optional<Vertex> fixed_point(Tail kind, int& periodicCount) const;
};

Diagram validate(const DiagramSpec& spec);

PropertyReport analyze(const Diagram& d);

DiagramSpec telescope(const Diagram& d, const TelescopeCuts& cuts);

/// n-th cut of a cut description (n >= 1).
int cut_level(const TelescopeCuts& cuts, int n);

/// Cuts equivalent to telescoping by `outer` and then by `inner`.
TelescopeCuts compose_cuts(const TelescopeCuts& outer, const TelescopeCuts& inner);

/// Re-expresses a path of d in the labels of telescope(d, cuts). The result
/// has depth equal to the number of cuts needed to cover p's prefix.
PathRep telescope_recode(const Diagram& d, const TelescopeCuts& cuts, const PathRep& p);

/// Materializes tail labels so that p has at least `depth` explicit labels.
PathRep extend_to(const Diagram& d, PathRep p, int depth);

/// Sources a_1..a_L of the explicit prefix.
std::vector<Vertex> source_chain(const Diagram& d, const PathRep& p);

/// Number of paths from vertex `from` at level n down to `to` at level m.
std::uint64_t path_count(const Diagram& d, Vertex from, int n, Vertex to, int m);

/// Incidence matrix of a level: entry [a][b] counts edges a -> b.
std::vector<std::vector<std::uint64_t>> incidence_matrix(const Diagram& d, int level);

}  // namespace adic
