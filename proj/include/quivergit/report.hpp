#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quivergit/analysis.hpp"

namespace quivergit {

// Slice of the request: explicit spec in kernel-basis coordinates, or the
// identity chart (only meaningful when d-perp has rank exactly 2, where the
// plane itself is the picture).
struct SliceRequest {
    bool identity = false;
    RationalVector p, u1, u2;
};

struct AnalysisRequest {
    Quiver quiver;
    DimensionVector d;
    std::optional<SliceRequest> slice;
    std::optional<Character> base;
};

// Line-oriented request text; see README for the schema.  Errors carry
// 1-based line/column positions.
AnalysisRequest parse_request(const std::string& text);

// JSON mirror of the same schema.
AnalysisRequest parse_request_json(const std::string& text);

// Canonical text form; parse(serialize(r)) == r.
std::string serialize_request(const AnalysisRequest& request);

struct WallRow {
    int id = 0;  // 1-based, canonical class order
    IntVector e;
    std::vector<std::string> clause;  // arrow names; empty means "always"
    IntVector normal;                 // slope normal n_e
    int hyperplane = -1;
    SliceObject line;     // restriction to the slice, when one is given
    std::string extends;  // extension side of the semistable half-space
};

struct AnalysisDocument {
    AnalysisRequest request;
    QuiverAnalysis analysis;
    std::optional<SliceSpec> slice;
    bool identity_chart = false;
    std::vector<WallRow> walls;
    // Per chamber, arrow index -> limit of the divisor character on the slice.
    std::vector<std::map<int, SliceObject>> divisor_limits;
    std::optional<int> base_chamber;
    std::vector<int> pseudoeffective;
    std::vector<std::string> warnings;
};

AnalysisDocument build_document(const AnalysisRequest& request);

// Fixed-width tables; honors NO_COLOR via the color flag.
std::string render_tables(const AnalysisDocument& doc, bool color = false);

// Individual sections of the same report.
std::string render_header(const AnalysisDocument& doc);
std::string render_walls_table(const AnalysisDocument& doc, bool color = false);
std::string render_chambers_table(const AnalysisDocument& doc, bool color = false);
std::string render_stable_matrix(const AnalysisDocument& doc, bool color = false);

std::string render_json(const AnalysisDocument& doc);

struct SvgOptions {
    // xmin, xmax, ymin, ymax in slice coordinates; bounding box of the
    // content plus margin 1 when absent.
    std::optional<std::array<Rational, 4>> viewport;
    Rational yscale = 1;
};

std::string render_svg(const AnalysisDocument& doc, const SvgOptions& options = {});

}  // namespace quivergit
