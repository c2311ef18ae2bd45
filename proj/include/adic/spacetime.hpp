#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adic/diagram.hpp"

namespace adic {

/// One letter of the spacetime alphabet.
struct Symbol {
    enum class Kind : unsigned char { Clock, ClockEdge, Edge };

    Kind kind = Kind::Clock;
    Vertex vertex = 0;  // source vertex (ClockEdge, Edge)
    int tmpl = -1;      // template index into the diagram spec (Edge only)
    int label = 0;

    static Symbol clock() { return {}; }
    static Symbol clock_edge(Vertex a, int i) { return {Kind::ClockEdge, a, -1, i}; }
    static Symbol edge(Vertex a, int tmpl, int x) { return {Kind::Edge, a, tmpl, x}; }

    bool is_clock() const { return kind == Kind::Clock; }
    auto operator<=>(const Symbol&) const = default;
};

struct SymbolHash {
    std::size_t operator()(const Symbol& s) const noexcept
    {
        std::size_t h = static_cast<std::size_t>(s.kind);
        h = h * 1000003u + static_cast<std::size_t>(s.vertex + 1);
        h = h * 1000003u + static_cast<std::size_t>(s.tmpl + 1);
        return h * 1000003u + static_cast<std::size_t>(s.label);
    }
};

/// "C", "a!0" or "a@T1#2".
std::string to_string(const Diagram& d, const Symbol& s);
Symbol parse_symbol(const Diagram& d, const std::string& text);

/// Columns 1..width of a spacetime row; columns <= 0 are Clock implicitly.
using Row = std::vector<Symbol>;

Row encode_row(const Diagram& d, const PathRep& p, int width);

/// Source of column j+1 equals the range of the edge at column j+2, for all j.
bool row_consistent(const Diagram& d, const Row& row);

/// Labels read off a row (MinTail beyond its width).
PathRep row_path(const Row& row);

/// Rows m0..m1 of the spacetime diagram of `base`.
struct DiagramPatch {
    int m0 = 0;
    int m1 = 0;
    int width = 0;
    PathRep base;
    std::vector<Row> grid;       // grid[m - m0]
    std::vector<PathRep> paths;  // paths[m - m0] = V^m(base)

    /// Symbol at row m, column j; Clock for j <= 0.
    const Symbol& at(int m, int j) const;
    bool has_row(int m) const { return m >= m0 && m <= m1; }
};

DiagramPatch patch(const Diagram& d, const PathRep& p, int m0, int m1, int width);

/// A 2x2 block: [0] = (m+1, j), [1] = (m+1, j+1), [2] = (m, j), [3] = (m, j+1).
using Tile = std::array<Symbol, 4>;

struct TileSet {
    std::set<Tile> tiles;
    bool saturated = false;
    int m0 = 0;
    int m1 = 0;
};

/// All 2x2 blocks with lower-left corner at columns -1..width-1.
TileSet harvest_tiles(const std::vector<DiagramPatch>& patches);

/// Harvests rows [m0, m1] and [2 m0, 2 m1] from each base; saturated when the
/// doubled extent adds no tile.
TileSet harvest_saturated(const Diagram& d, const std::vector<PathRep>& bases, int m0, int m1, int width);

struct AdmissibilityReport {
    bool admissible = true;
    std::optional<std::pair<int, int>> violation;  // lower-left (m, j) of the first bad block
    std::optional<Tile> violatingTile;
    bool boundaryChecked = false;  // row 0 present
    bool boundaryOk = false;       // row 0 has Clock at column 0 and ClockEdge at column 1
};

AdmissibilityReport admissible(const DiagramPatch& p, const TileSet& tiles);

/// Known offsets and a target offset over (row, column); offsets are
/// relative to the placement anchor.
struct Shape {
    std::string name;
    std::vector<std::pair<int, int>> known;
    std::pair<int, int> target;
};

/// Known {(m,j-1),(m,j),(m+1,j-1)}, target (m+1,j).
Shape l_shape();
/// l_shape plus (m,j+1).
Shape widened_shape();
/// The CA neighbourhood seen symbol-wise: window width w with offsets (lo, hi).
Shape ray_shape(int w);

struct Placement {
    std::size_t patch = 0;
    int m = 0;
    int j = 0;
};

struct Counterexample {
    std::vector<Symbol> context;
    Symbol first;
    Symbol second;
    Placement firstAt;
    Placement secondAt;
};

struct DeterminismCertificate {
    Shape shape;
    bool functional = false;
    std::size_t placements = 0;
    std::map<std::vector<Symbol>, Symbol> table;
    std::optional<Counterexample> counterexample;
};

DeterminismCertificate determinism_check(const std::vector<DiagramPatch>& patches, const Shape& shape);

/// Fills a target from the certificate's table; nullopt when the context is unseen.
std::optional<Symbol> deduce(const DeterminismCertificate& c, const std::vector<Symbol>& context);

}  // namespace adic
