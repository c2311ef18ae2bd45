#pragma once

#include <string>

#include <json.hpp>

#include "adic/builders.hpp"
#include "adic/ca.hpp"
#include "adic/diagram.hpp"
#include "adic/spacetime.hpp"

namespace adic {

/// Insertion-ordered so that alphabets given as object keys keep their order.
using Json = nlohmann::ordered_json;

/// Throws ParseError carrying the byte offset of the syntax error.
Json parse_json(const std::string& text);
std::string dump(const Json& j);

Json to_json(const DiagramSpec& s);
DiagramSpec diagram_from_json(const Json& j);

Json to_json(const PathRep& p);
PathRep path_from_json(const Json& j);

Json to_json(const SubstitutionSpec& s);
SubstitutionSpec substitution_from_json(const Json& j);

Json to_json(const OdometerSpec& o);
OdometerSpec odometer_from_json(const Json& j);

Json to_json(const ToeplitzSpec& t);
ToeplitzSpec toeplitz_from_json(const Json& j);

Json to_json(const PropertyReport& r, const Diagram& d);

/// Array of 2x2 string matrices, upper row first.
Json to_json(const TileSet& t, const Diagram& d);
TileSet tiles_from_json(const Json& j, const Diagram& d);

// Steps, rule contexts and configurations are written in display order:
// deep columns on the left, the clock on the right.
Json step_to_json(const Step& s, const Diagram& d);
Step step_from_json(const Json& j, const Diagram& d);

/// [{"ctx":[step,...],"out":step}], sorted.
Json to_json(const RuleTable& r, const Diagram& d);
RuleTable rule_from_json(const Json& j, const Diagram& d);

/// {"left":{"cycle":[...]},"core":[...],"right":"clock","origin":k,"time":t}.
Json to_json(const CAConfig& c, const Diagram& d);
CAConfig config_from_json(const Json& j, const Diagram& d);

/// Self-contained: embeds the diagram spec. Rows list columns 1..width.
Json to_json(const DiagramPatch& p, const Diagram& d);
DiagramPatch patch_from_json(const Json& j, const Diagram& d);

Json to_json(const ConjugacyReport& r, const Diagram& d);

/// Rows m1 (top) down to m0, columns width (left) down to -1 (right).
std::string render_grid(const DiagramPatch& p, const Diagram& d, int m0, int m1);

struct PgmImage {
    std::string pgm;     // binary P5
    std::string legend;  // "gray<TAB>symbol" per line
};

/// One gray level per distinct symbol; each cell is a scale x scale block.
PgmImage render_pgm(const DiagramPatch& p, const Diagram& d, int m0, int m1, int scale = 8);

}  // namespace adic
