#include "adic/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace adic {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidAlphabet: return "InvalidAlphabet";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::EmptySchedule: return "EmptySchedule";
    case ErrorCode::ZeroClockEdges: return "ZeroClockEdges";
    case ErrorCode::CutsNotMonotone: return "CutsNotMonotone";
    case ErrorCode::CutsBreakPeriodicity: return "CutsBreakPeriodicity";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::MinTailUndefined: return "MinTailUndefined";
    case ErrorCode::MaxTailUndefined: return "MaxTailUndefined";
    case ErrorCode::BadLevels: return "BadLevels";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotFocused: return "NotFocused";
    case ErrorCode::NotProperlyOrdered: return "NotProperlyOrdered";
    case ErrorCode::ExtensionBoundExceeded: return "ExtensionBoundExceeded";
    case ErrorCode::InconsistentPath: return "InconsistentPath";
    case ErrorCode::OrbitTooLong: return "OrbitTooLong";
    case ErrorCode::NotProper: return "NotProper";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::EmptyQuotients: return "EmptyQuotients";
    case ErrorCode::InvalidQuotient: return "InvalidQuotient";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::IncompleteFill: return "IncompleteFill";
    case ErrorCode::OverlappingFill: return "OverlappingFill";
    case ErrorCode::Periodic: return "Periodic";
    case ErrorCode::WidthBoundViolated: return "WidthBoundViolated";
    case ErrorCode::Unstabilized: return "Unstabilized";
    case ErrorCode::WidthExceedsTailKnowledge: return "WidthExceedsTailKnowledge";
    case ErrorCode::InsufficientCoverage: return "InsufficientCoverage";
    case ErrorCode::UnsaturatedHarvest: return "UnsaturatedHarvest";
    case ErrorCode::AmbiguousRule: return "AmbiguousRule";
    case ErrorCode::InsufficientHarvest: return "InsufficientHarvest";
    case ErrorCode::UnseenContext: return "UnseenContext";
    case ErrorCode::DeductionStuck: return "DeductionStuck";
    case ErrorCode::DepthExceedsCore: return "DepthExceedsCore";
    case ErrorCode::Mismatch: return "Mismatch";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// Diagram accessors
// ---------------------------------------------------------------------------

int Diagram::template_index_at(int level) const
{
    if (level < 2) {
        throw Error(ErrorCode::BadLevels, "level " + std::to_string(level) + " has no template");
    }
    const auto i = static_cast<std::size_t>(level - 2);
    if (i < m_spec.prefix.size()) {
        return m_spec.prefix[i];
    }
    return m_spec.cycle[(i - m_spec.prefix.size()) % m_spec.cycle.size()];
}

const Template& Diagram::template_at(int level) const
{
    return m_spec.templates[template_index_at(level)];
}

bool Diagram::has_vertex(int level, Vertex a) const
{
    return max_label(level, a) >= 0;
}

std::vector<Vertex> Diagram::vertices(int level) const
{
    std::vector<Vertex> out;
    for (Vertex a = 0; a < num_vertices(); ++a) {
        if (has_vertex(level, a)) {
            out.push_back(a);
        }
    }
    return out;
}

int Diagram::max_label(int level, Vertex a) const
{
    if (a < 0 || a >= num_vertices()) {
        return -1;
    }
    if (level == 1) {
        return m_spec.level1[a] - 1;
    }
    return static_cast<int>(template_at(level).words[a].size()) - 1;
}

Vertex Diagram::range(int level, Vertex a, int label) const
{
    const int top = max_label(level, a);
    if (label < 0 || label > top) {
        throw Error(ErrorCode::LabelOutOfRange,
                    "label " + std::to_string(label) + " at level " + std::to_string(level) +
                        " exceeds l=" + std::to_string(top));
    }
    if (level == 1) {
        return kClock;
    }
    return template_at(level).words[a][label];
}

int Diagram::edge_count(int level) const
{
    int total = 0;
    for (Vertex a = 0; a < num_vertices(); ++a) {
        total += max_label(level, a) + 1;
    }
    return total;
}

bool Diagram::has_chain(Tail kind) const
{
    return kind == Tail::Min ? m_minFixed.has_value() : m_maxFixed.has_value();
}

Vertex Diagram::chain_vertex(Tail kind, int level) const
{
    const auto& fixed = kind == Tail::Min ? m_minFixed : m_maxFixed;
    if (!fixed) {
        throw Error(kind == Tail::Min ? ErrorCode::MinTailUndefined : ErrorCode::MaxTailUndefined,
                    kind == Tail::Min ? "no unique minimal path" : "no unique maximal path");
    }
    const int ns = cycle_start();
    const int c = cycle_length();
    int top = ns;
    if (level > ns) {
        top = ns + ((level - ns + c - 1) / c) * c;
    }
    Vertex v = *fixed;
    for (int m = top; m > level; --m) {
        v = range(m, v, kind == Tail::Min ? 0 : max_label(m, v));
    }
    return v;
}

int Diagram::chain_label(Tail kind, int level) const
{
    if (kind == Tail::Min) {
        return 0;
    }
    return max_label(level, chain_vertex(Tail::Max, level));
}

// Extremal paths correspond to periodic points of the extremal-range map
// composed over one cycle; uniqueness needs exactly one, which is then fixed.
std::optional<Vertex> Diagram::fixed_point(Tail kind, int& periodicCount) const
{
    const int ns = cycle_start();
    const int c = cycle_length();
    const auto verts = vertices(ns);
    auto composed = [&](Vertex v) {
        for (int m = ns + c; m > ns; --m) {
            v = range(m, v, kind == Tail::Min ? 0 : max_label(m, v));
        }
        return v;
    };
    std::vector<Vertex> periodic;
    for (Vertex v : verts) {
        Vertex w = v;
        for (std::size_t p = 0; p < verts.size(); ++p) {
            w = composed(w);
            if (w == v) {
                periodic.push_back(v);
                break;
            }
        }
    }
    periodicCount = static_cast<int>(periodic.size());
    if (periodic.size() == 1) {
        return periodic.front();
    }
    return std::nullopt;
}

void Diagram::compute_chains()
{
    m_minFixed = fixed_point(Tail::Min, m_minPeriodic);
    m_maxFixed = fixed_point(Tail::Max, m_maxPeriodic);
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

Diagram validate(const DiagramSpec& spec)
{
    const int n = static_cast<int>(spec.alphabet.size());
    if (n == 0) {
        throw Error(ErrorCode::InvalidAlphabet, "empty alphabet");
    }
    std::set<std::string> names;
    for (const auto& s : spec.alphabet) {
        if (s.empty() || !names.insert(s).second) {
            throw Error(ErrorCode::InvalidAlphabet, "vertex labels must be nonempty and unique");
        }
    }
    if (static_cast<int>(spec.level1.size()) != n) {
        throw Error(ErrorCode::ZeroClockEdges, "level-1 counts do not cover the alphabet");
    }
    if (std::any_of(spec.level1.begin(), spec.level1.end(), [](int c) { return c < 0; }) ||
        std::all_of(spec.level1.begin(), spec.level1.end(), [](int c) { return c == 0; })) {
        throw Error(ErrorCode::ZeroClockEdges, "level 1 needs positive clock-edge counts");
    }
    if (spec.cycle.empty()) {
        throw Error(ErrorCode::EmptySchedule, "schedule cycle is empty");
    }
    std::set<std::string> ids;
    for (const auto& t : spec.templates) {
        if (!ids.insert(t.id).second) {
            throw Error(ErrorCode::InvalidAlphabet, "duplicate template id " + t.id);
        }
        if (static_cast<int>(t.words.size()) != n) {
            throw Error(ErrorCode::LevelMismatch, "template " + t.id + " does not cover the alphabet");
        }
        for (const auto& w : t.words) {
            for (Vertex v : w) {
                if (v < 0 || v >= n) {
                    throw Error(ErrorCode::LevelMismatch, "template " + t.id + " names an unknown vertex");
                }
            }
        }
    }
    auto check_index = [&](int i) {
        if (i < 0 || i >= static_cast<int>(spec.templates.size())) {
            throw Error(ErrorCode::EmptySchedule, "schedule references a missing template");
        }
    };
    std::for_each(spec.prefix.begin(), spec.prefix.end(), check_index);
    std::for_each(spec.cycle.begin(), spec.cycle.end(), check_index);

    Diagram d;
    d.m_spec = spec;

    // Levels up to one full cycle past the prefix, plus the wrap-around level.
    const int last = d.cycle_start() + d.cycle_length() + 1;
    for (int level = 2; level <= last; ++level) {
        const auto& t = d.template_at(level);
        std::set<Vertex> ranges;
        for (const auto& w : t.words) {
            ranges.insert(w.begin(), w.end());
        }
        const auto below = d.vertices(level - 1);
        if (d.vertices(level).empty() ||
            std::set<Vertex>(below.begin(), below.end()) != ranges) {
            throw Error(ErrorCode::LevelMismatch,
                        "ranges of template " + t.id + " at level " + std::to_string(level) +
                            " differ from the vertices of level " + std::to_string(level - 1));
        }
    }
    d.compute_chains();
    return d;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

namespace {

using BoolMatrix = std::vector<std::vector<bool>>;

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b)
{
    const std::size_t n = a.size();
    BoolMatrix out(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (!a[i][k]) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (b[k][j]) {
                    out[i][j] = true;
                }
            }
        }
    }
    return out;
}

}  // namespace

PropertyReport analyze(const Diagram& d)
{
    PropertyReport r;
    const int ns = d.cycle_start();
    const int c = d.cycle_length();
    const int last = ns + c;
    const int n = d.num_vertices();

    r.equalPathNumber = true;
    for (int level = 1; level <= last; ++level) {
        const auto verts = d.vertices(level);
        r.widthK = std::max({r.widthK, static_cast<int>(verts.size()), d.edge_count(level)});
        std::set<int> outDegrees;
        for (Vertex a : verts) {
            outDegrees.insert(d.max_label(level, a));
        }
        if (outDegrees.size() > 1) {
            r.equalPathNumber = false;
        }
    }

    r.focused = true;
    for (int level = 2; level <= last; ++level) {
        std::set<Vertex> minimalRanges;
        for (Vertex a : d.vertices(level)) {
            minimalRanges.insert(d.range(level, a, 0));
        }
        if (minimalRanges.size() == 1) {
            r.focus.emplace_back(*minimalRanges.begin());
        } else {
            r.focus.emplace_back(std::nullopt);
            r.focused = false;
        }
    }

    // Positivity of the incidence product over k cycle repetitions.
    BoolMatrix cycleProduct(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) {
        cycleProduct[a][a] = true;
    }
    for (int level = ns + c; level > ns; --level) {
        BoolMatrix m(n, std::vector<bool>(n, false));
        for (Vertex a : d.vertices(level)) {
            for (Vertex b : d.template_at(level).words[a]) {
                m[a][b] = true;
            }
        }
        cycleProduct = bool_product(cycleProduct, m);
    }
    const auto base = d.vertices(ns);
    BoolMatrix power = cycleProduct;
    const int bound = std::max(1, r.widthK * r.widthK);
    for (int k = 1; k <= bound; ++k) {
        bool positive = true;
        for (Vertex a : base) {
            for (Vertex b : base) {
                positive = positive && power[a][b];
            }
        }
        if (positive) {
            r.primitive = true;
            r.primitiveSpan = k;
            break;
        }
        power = bool_product(power, cycleProduct);
    }

    r.uniqueMinimal = d.has_chain(Tail::Min);
    r.uniqueMaximal = d.has_chain(Tail::Max);
    r.properlyOrdered = r.primitive && r.uniqueMinimal && r.uniqueMaximal;
    return r;
}

// ---------------------------------------------------------------------------
// telescope
// ---------------------------------------------------------------------------

namespace {

void check_cuts(const TelescopeCuts& cuts)
{
    int prev = 0;
    for (int c : cuts.explicitCuts) {
        if (c <= prev) {
            throw Error(ErrorCode::CutsNotMonotone, "cuts must be strictly increasing and positive");
        }
        prev = c;
    }
    if (!cuts.stride) {
        throw Error(ErrorCode::CutsBreakPeriodicity, "a finite cut list cannot telescope an infinite diagram");
    }
    if (*cuts.stride <= 0) {
        throw Error(ErrorCode::CutsNotMonotone, "stride must be positive");
    }
}

// Ordered ranges (at level lo >= 1) of all paths from a at level hi.
std::vector<Vertex> expand(const Diagram& d, Vertex a, int hi, int lo)
{
    std::vector<Vertex> word{a};
    for (int m = hi; m > lo; --m) {
        std::vector<Vertex> next;
        for (Vertex v : word) {
            const auto& w = d.template_at(m).words[v];
            next.insert(next.end(), w.begin(), w.end());
        }
        word = std::move(next);
    }
    return word;
}

std::uint64_t paths_down(const Diagram& d, Vertex v, int level, int lo)
{
    if (level == lo || v == kClock) {
        return 1;
    }
    std::uint64_t total = 0;
    for (int e = 0; e <= d.max_label(level, v); ++e) {
        const std::uint64_t sub = paths_down(d, d.range(level, v, e), level - 1, lo);
        if (__builtin_add_overflow(total, sub, &total)) {
            throw Error(ErrorCode::Overflow, "path count exceeds 64 bits");
        }
    }
    return total;
}

}  // namespace

int cut_level(const TelescopeCuts& cuts, int n)
{
    if (n <= 0) {
        return 0;
    }
    const int e = static_cast<int>(cuts.explicitCuts.size());
    if (n <= e) {
        return cuts.explicitCuts[n - 1];
    }
    if (!cuts.stride) {
        throw Error(ErrorCode::CutsBreakPeriodicity, "cut index beyond the explicit list");
    }
    const int base = e == 0 ? 0 : cuts.explicitCuts.back();
    return base + (n - e) * *cuts.stride;
}

TelescopeCuts compose_cuts(const TelescopeCuts& outer, const TelescopeCuts& inner)
{
    check_cuts(outer);
    check_cuts(inner);
    // Beyond this index both cut functions are in their stride regime.
    const int e1 = static_cast<int>(outer.explicitCuts.size());
    int k0 = static_cast<int>(inner.explicitCuts.size());
    while (cut_level(inner, k0) < e1) {
        ++k0;
    }
    TelescopeCuts out;
    for (int k = 1; k <= k0; ++k) {
        out.explicitCuts.push_back(cut_level(outer, cut_level(inner, k)));
    }
    out.stride = *outer.stride * *inner.stride;
    return out;
}

DiagramSpec telescope(const Diagram& d, const TelescopeCuts& cuts)
{
    check_cuts(cuts);
    const auto& src = d.spec();
    DiagramSpec out;
    out.alphabet = src.alphabet;

    const int n1 = cut_level(cuts, 1);
    out.level1.assign(src.alphabet.size(), 0);
    for (Vertex a : d.vertices(n1)) {
        out.level1[a] = static_cast<int>(paths_down(d, a, n1, 0));
    }

    auto block_template = [&](int lo, int hi) {
        Template t;
        for (int m = hi; m > lo; --m) {
            t.id += (t.id.empty() ? "" : "*") + d.template_at(m).id;
        }
        t.words.resize(src.alphabet.size());
        for (Vertex a : d.vertices(hi)) {
            t.words[a] = expand(d, a, hi, lo);
        }
        return t;
    };
    auto intern = [&](Template t) {
        for (std::size_t i = 0; i < out.templates.size(); ++i) {
            if (out.templates[i].id == t.id) {
                return static_cast<int>(i);
            }
        }
        out.templates.push_back(std::move(t));
        return static_cast<int>(out.templates.size()) - 1;
    };

    const int e = static_cast<int>(cuts.explicitCuts.size());
    const int stride = *cuts.stride;
    int j = 2;
    while (!(j - 1 >= e && cut_level(cuts, j - 1) >= d.cycle_start())) {
        out.prefix.push_back(intern(block_template(cut_level(cuts, j - 1), cut_level(cuts, j))));
        ++j;
    }
    const int period = d.cycle_length() / std::gcd(d.cycle_length(), stride);
    for (int i = 0; i < period; ++i, ++j) {
        out.cycle.push_back(intern(block_template(cut_level(cuts, j - 1), cut_level(cuts, j))));
    }
    return out;
}

PathRep telescope_recode(const Diagram& d, const TelescopeCuts& cuts, const PathRep& p)
{
    check_cuts(cuts);
    int blocks = 0;
    while (cut_level(cuts, blocks) < p.depth()) {
        ++blocks;
    }
    const PathRep full = extend_to(d, p, cut_level(cuts, blocks));
    const auto sources = source_chain(d, full);

    PathRep out;
    out.tail = p.tail;
    for (int k = 1; k <= blocks; ++k) {
        const int lo = cut_level(cuts, k - 1);
        const int hi = cut_level(cuts, k);
        std::uint64_t rank = 0;
        for (int i = hi; i > lo; --i) {
            const Vertex a = sources[i - 1];
            for (int e = 0; e < full.labels[i - 1]; ++e) {
                rank += paths_down(d, d.range(i, a, e), i - 1, lo);
            }
        }
        out.labels.push_back(static_cast<int>(rank));
    }
    return out;
}

// ---------------------------------------------------------------------------
// paths
// ---------------------------------------------------------------------------

PathRep extend_to(const Diagram& d, PathRep p, int depth)
{
    for (int level = p.depth() + 1; level <= depth; ++level) {
        p.labels.push_back(d.chain_label(p.tail, level));
    }
    return p;
}

std::vector<Vertex> source_chain(const Diagram& d, const PathRep& p)
{
    const int depth = p.depth();
    std::vector<Vertex> sources(depth);
    if (depth == 0) {
        return sources;
    }
    Vertex a = d.chain_vertex(p.tail, depth);
    for (int level = depth; level >= 1; --level) {
        sources[level - 1] = a;
        const int x = p.labels[level - 1];
        if (x < 0 || x > d.max_label(level, a)) {
            throw Error(ErrorCode::LabelOutOfRange,
                        "label " + std::to_string(x) + " at level " + std::to_string(level));
        }
        a = d.range(level, a, x);
    }
    return sources;
}

std::uint64_t path_count(const Diagram& d, Vertex from, int n, Vertex to, int m)
{
    if (n <= m || m < 1) {
        throw Error(ErrorCode::BadLevels, "path_count needs n > m >= 1");
    }
    std::vector<std::uint64_t> counts(d.num_vertices(), 0);
    if (!d.has_vertex(n, from)) {
        return 0;
    }
    counts[from] = 1;
    for (int level = n; level > m; --level) {
        std::vector<std::uint64_t> next(d.num_vertices(), 0);
        for (Vertex a = 0; a < d.num_vertices(); ++a) {
            if (counts[a] == 0) {
                continue;
            }
            for (Vertex b : d.template_at(level).words[a]) {
                if (__builtin_add_overflow(next[b], counts[a], &next[b])) {
                    throw Error(ErrorCode::Overflow, "path count exceeds 64 bits");
                }
            }
        }
        counts = std::move(next);
    }
    return to >= 0 && to < d.num_vertices() ? counts[to] : 0;
}

std::vector<std::vector<std::uint64_t>> incidence_matrix(const Diagram& d, int level)
{
    if (level < 2) {
        throw Error(ErrorCode::BadLevels, "incidence matrices start at level 2");
    }
    const int n = d.num_vertices();
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n, 0));
    for (Vertex a : d.vertices(level)) {
        for (Vertex b : d.template_at(level).words[a]) {
            ++m[a][b];
        }
    }
    return m;
}

}  // namespace adic
