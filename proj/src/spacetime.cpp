#include "adic/spacetime.hpp"

#include <algorithm>

#include "adic/vershik.hpp"

namespace adic {

std::string to_string(const Diagram& d, const Symbol& s)
{
    switch (s.kind) {
    case Symbol::Kind::Clock:
        return "C";
    case Symbol::Kind::ClockEdge:
        return d.name(s.vertex) + "!" + std::to_string(s.label);
    case Symbol::Kind::Edge:
        return d.name(s.vertex) + "@" + d.spec().templates.at(s.tmpl).id + "#" + std::to_string(s.label);
    }
    return "?";
}

namespace {

Vertex vertex_by_name(const Diagram& d, const std::string& name)
{
    const auto& alpha = d.spec().alphabet;
    const auto it = std::find(alpha.begin(), alpha.end(), name);
    if (it == alpha.end()) {
        throw Error(ErrorCode::ParseError, "unknown vertex '" + name + "'");
    }
    return static_cast<Vertex>(it - alpha.begin());
}

int parse_label(const std::string& text, std::size_t from)
{
    if (from >= text.size()) {
        throw Error(ErrorCode::ParseError, "missing label in '" + text + "'");
    }
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text.substr(from), &used);
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad label in '" + text + "'");
    }
    if (used != text.size() - from || v < 0) {
        throw Error(ErrorCode::ParseError, "bad label in '" + text + "'");
    }
    return v;
}

}  // namespace

Symbol parse_symbol(const Diagram& d, const std::string& text)
{
    if (text == "C") {
        return Symbol::clock();
    }
    const auto at = text.find('@');
    if (at != std::string::npos) {
        const auto hash = text.find('#', at);
        if (hash == std::string::npos) {
            throw Error(ErrorCode::ParseError, "edge symbol without label: '" + text + "'");
        }
        const auto id = text.substr(at + 1, hash - at - 1);
        const auto& ts = d.spec().templates;
        const auto it = std::find_if(ts.begin(), ts.end(), [&](const Template& t) { return t.id == id; });
        if (it == ts.end()) {
            throw Error(ErrorCode::ParseError, "unknown template '" + id + "'");
        }
        return Symbol::edge(vertex_by_name(d, text.substr(0, at)), static_cast<int>(it - ts.begin()),
                            parse_label(text, hash + 1));
    }
    const auto bang = text.find('!');
    if (bang != std::string::npos) {
        return Symbol::clock_edge(vertex_by_name(d, text.substr(0, bang)), parse_label(text, bang + 1));
    }
    throw Error(ErrorCode::ParseError, "unrecognised symbol '" + text + "'");
}

Row encode_row(const Diagram& d, const PathRep& p, int width)
{
    if (p.tail == Tail::Max && !d.has_chain(Tail::Max) && width > p.depth()) {
        throw Error(ErrorCode::WidthExceedsTailKnowledge, "maximal tail is not unique");
    }
    if (p.tail == Tail::Min && !d.has_chain(Tail::Min) && width > p.depth()) {
        throw Error(ErrorCode::WidthExceedsTailKnowledge, "minimal tail is not unique");
    }
    const PathRep full = extend_to(d, p, width);
    const auto sources = source_chain(d, full);
    Row row(width);
    for (int j = 1; j <= width; ++j) {
        const int x = full.labels[j - 1];
        row[j - 1] = j == 1 ? Symbol::clock_edge(sources[0], x)
                            : Symbol::edge(sources[j - 1], d.template_index_at(j), x);
    }
    return row;
}

bool row_consistent(const Diagram& d, const Row& row)
{
    for (std::size_t i = 0; i < row.size(); ++i) {
        const Symbol& s = row[i];
        const int level = static_cast<int>(i) + 1;
        const bool kindOk = level == 1 ? s.kind == Symbol::Kind::ClockEdge
                                       : s.kind == Symbol::Kind::Edge && s.tmpl == d.template_index_at(level);
        if (!kindOk || s.label < 0 || s.label > d.max_label(level, s.vertex)) {
            return false;
        }
        if (i > 0 && d.range(level, s.vertex, s.label) != row[i - 1].vertex) {
            return false;
        }
    }
    return true;
}

PathRep row_path(const Row& row)
{
    PathRep p;
    for (const auto& s : row) {
        if (s.is_clock()) {
            break;
        }
        p.labels.push_back(s.label);
    }
    return p;
}

const Symbol& DiagramPatch::at(int m, int j) const
{
    static const Symbol kClockSymbol = Symbol::clock();
    if (j <= 0) {
        return kClockSymbol;
    }
    if (!has_row(m) || j > width) {
        throw Error(ErrorCode::InsufficientCoverage,
                    "(" + std::to_string(m) + ", " + std::to_string(j) + ") outside the patch");
    }
    return grid[m - m0][j - 1];
}

DiagramPatch patch(const Diagram& d, const PathRep& p, int m0, int m1, int width)
{
    if (m0 > m1 || width < 1) {
        throw Error(ErrorCode::BadLevels, "empty patch");
    }
    DiagramPatch out;
    out.m0 = m0;
    out.m1 = m1;
    out.width = width;
    out.base = p;
    out.paths.resize(static_cast<std::size_t>(m1 - m0) + 1);
    auto slot = [&](int m) -> PathRep& { return out.paths[m - m0]; };
    // Paths are built outward from whichever row of the range is nearest the base.
    const int anchor = std::clamp(0, m0, m1);
    slot(anchor) = orbit(d, p, anchor).entries.back();
    for (int m = anchor + 1; m <= m1; ++m) {
        slot(m) = successor(d, slot(m - 1));
    }
    for (int m = anchor - 1; m >= m0; --m) {
        slot(m) = predecessor(d, slot(m + 1));
    }
    out.grid.reserve(out.paths.size());
    for (const auto& q : out.paths) {
        out.grid.push_back(encode_row(d, q, width));
    }
    return out;
}

TileSet harvest_tiles(const std::vector<DiagramPatch>& patches)
{
    TileSet ts;
    bool first = true;
    for (const auto& p : patches) {
        if (first || p.m0 < ts.m0) {
            ts.m0 = p.m0;
        }
        if (first || p.m1 > ts.m1) {
            ts.m1 = p.m1;
        }
        first = false;
        for (int m = p.m0; m < p.m1; ++m) {
            for (int j = -1; j < p.width; ++j) {
                ts.tiles.insert(Tile{p.at(m + 1, j), p.at(m + 1, j + 1), p.at(m, j), p.at(m, j + 1)});
            }
        }
    }
    return ts;
}

TileSet harvest_saturated(const Diagram& d, const std::vector<PathRep>& bases, int m0, int m1, int width)
{
    std::vector<DiagramPatch> small, large;
    for (const auto& b : bases) {
        small.push_back(patch(d, b, m0, m1, width));
        large.push_back(patch(d, b, 2 * m0, 2 * m1, width));
    }
    TileSet a = harvest_tiles(small);
    TileSet b = harvest_tiles(large);
    b.saturated = a.tiles == b.tiles;
    return b;
}

AdmissibilityReport admissible(const DiagramPatch& p, const TileSet& tiles)
{
    AdmissibilityReport r;
    for (int m = p.m0; m < p.m1 && r.admissible; ++m) {
        for (int j = -1; j < p.width; ++j) {
            const Tile t{p.at(m + 1, j), p.at(m + 1, j + 1), p.at(m, j), p.at(m, j + 1)};
            if (!tiles.tiles.count(t)) {
                r.admissible = false;
                r.violation = std::make_pair(m, j);
                r.violatingTile = t;
                break;
            }
        }
    }
    if (p.has_row(0)) {
        r.boundaryChecked = true;
        r.boundaryOk = p.at(0, 0).is_clock() && p.at(0, 1).kind == Symbol::Kind::ClockEdge;
    }
    return r;
}

Shape l_shape()
{
    return {"L", {{-1, -1}, {-1, 0}, {0, -1}}, {0, 0}};
}

Shape widened_shape()
{
    return {"widened", {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}}, {0, 0}};
}

Shape ray_shape(int w)
{
    const int lo = -1;
    const int hi = w - 2;
    Shape s{"ray" + std::to_string(w), {}, {0, 0}};
    for (int j = -1 + lo - hi; j <= -1; ++j) {
        s.known.emplace_back(0, j);
    }
    for (int j = lo - hi; j <= 0; ++j) {
        s.known.emplace_back(-1, j);
    }
    for (int j = 1 + lo - hi; j <= 1; ++j) {
        s.known.emplace_back(-2, j);
    }
    return s;
}

DeterminismCertificate determinism_check(const std::vector<DiagramPatch>& patches, const Shape& shape)
{
    DeterminismCertificate c;
    c.shape = shape;
    c.functional = true;
    int dmLo = shape.target.first, dmHi = shape.target.first;
    int djHi = shape.target.second;
    for (const auto& [dm, dj] : shape.known) {
        dmLo = std::min(dmLo, dm);
        dmHi = std::max(dmHi, dm);
        djHi = std::max(djHi, dj);
    }
    std::map<std::vector<Symbol>, Placement> firstSeen;
    std::vector<Symbol> ctx(shape.known.size());
    for (std::size_t pi = 0; pi < patches.size(); ++pi) {
        const auto& p = patches[pi];
        for (int m = p.m0 - dmLo; m + dmHi <= p.m1; ++m) {
            // Further left every offset is a clock column.
            for (int j = 1 - djHi; j + djHi <= p.width; ++j) {
                for (std::size_t k = 0; k < shape.known.size(); ++k) {
                    ctx[k] = p.at(m + shape.known[k].first, j + shape.known[k].second);
                }
                const Symbol& target = p.at(m + shape.target.first, j + shape.target.second);
                ++c.placements;
                const auto [it, inserted] = c.table.emplace(ctx, target);
                if (inserted) {
                    firstSeen.emplace(ctx, Placement{pi, m, j});
                } else if (it->second != target && !c.counterexample) {
                    c.functional = false;
                    c.counterexample = Counterexample{ctx, it->second, target, firstSeen.at(ctx), Placement{pi, m, j}};
                }
            }
        }
    }
    if (c.placements == 0) {
        throw Error(ErrorCode::InsufficientCoverage, "no placement of shape " + shape.name + " fits the patches");
    }
    if (!c.functional) {
        c.table.clear();
    }
    return c;
}

std::optional<Symbol> deduce(const DeterminismCertificate& c, const std::vector<Symbol>& context)
{
    const auto it = c.table.find(context);
    if (it == c.table.end()) {
        return std::nullopt;
    }
    return it->second;
}

}  // namespace adic
