#include "quivergit/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace quivergit {

namespace {

using Json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int column_of(const std::string& line, const std::string& token) {
    size_t pos = token.empty() ? std::string::npos : line.find(token);
    return pos == std::string::npos ? 1 : static_cast<int>(pos) + 1;
}

}  // namespace

AnalysisRequest parse_request(const std::string& text) {
    std::vector<std::string> vertices;
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    std::optional<IntVector> d;
    std::optional<SliceRequest> slice;
    std::optional<Character> base;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        size_t colon = body.find(':');
        if (colon == std::string::npos)
            throw ParseError("expected 'key: value'", lineno, 1);
        std::string key = trim(body.substr(0, colon));
        std::string value = trim(body.substr(colon + 1));

        if (key == "vertices") {
            if (!vertices.empty()) throw ParseError("repeated 'vertices' line", lineno, 1);
            vertices = split_ws(value);
            if (vertices.empty()) throw ParseError("no vertices declared", lineno, 1);
        } else if (key.rfind("arrow ", 0) == 0 || key == "arrow") {
            std::string name = trim(key.substr(5));
            if (name.empty()) throw ParseError("arrow without a name", lineno, 1);
            auto toks = split_ws(value);
            if (toks.size() != 3 || toks[1] != "->")
                throw ParseError("arrow '" + name + "': expected 'src -> tgt'", lineno,
                                 column_of(line, value));
            arrows.emplace_back(name, toks[0], toks[2]);
        } else if (key == "d") {
            if (d) throw ParseError("repeated 'd' line", lineno, 1);
            IntVector entries;
            for (const auto& tok : split_ws(value)) {
                try {
                    entries.push_back(std::stoll(tok));
                } catch (const std::exception&) {
                    throw ParseError("dimension entry '" + tok + "' is not an integer",
                                     lineno, column_of(line, tok));
                }
            }
            if (entries.empty()) throw ParseError("empty dimension vector", lineno, 1);
            d = std::move(entries);
        } else if (key == "slice") {
            if (slice) throw ParseError("repeated 'slice' line", lineno, 1);
            SliceRequest s;
            if (value == "identity") {
                s.identity = true;
            } else {
                // p = ... ; u1 = ... ; u2 = ...
                std::map<std::string, RationalVector> parts;
                std::istringstream parts_in(value);
                std::string part;
                while (std::getline(parts_in, part, ';')) {
                    part = trim(part);
                    size_t eq = part.find('=');
                    if (eq == std::string::npos)
                        throw ParseError("slice: expected 'name = entries'", lineno,
                                         column_of(line, part));
                    std::string name = trim(part.substr(0, eq));
                    RationalVector vec;
                    for (const auto& tok : split_ws(trim(part.substr(eq + 1)))) {
                        try {
                            vec.push_back(parse_rational(tok));
                        } catch (const ParseError& e) {
                            throw ParseError(std::string("slice: ") + e.what(), lineno,
                                             column_of(line, tok));
                        }
                    }
                    if (!parts.emplace(name, std::move(vec)).second)
                        throw ParseError("slice: repeated vector '" + name + "'", lineno, 1);
                }
                for (const char* name : {"p", "u1", "u2"})
                    if (!parts.count(name))
                        throw ParseError(std::string("slice: missing vector '") + name + "'",
                                         lineno, 1);
                s.p = parts["p"];
                s.u1 = parts["u1"];
                s.u2 = parts["u2"];
            }
            slice = std::move(s);
        } else if (key == "base") {
            if (base) throw ParseError("repeated 'base' line", lineno, 1);
            Character theta;
            for (const auto& tok : split_ws(value)) {
                try {
                    theta.push_back(std::stoll(tok));
                } catch (const std::exception&) {
                    throw ParseError("base entry '" + tok + "' is not an integer", lineno,
                                     column_of(line, tok));
                }
            }
            base = std::move(theta);
        } else {
            throw ParseError("unknown key '" + key + "'", lineno, 1);
        }
    }

    if (vertices.empty()) throw ParseError("missing 'vertices' line");
    if (!d) throw ParseError("missing dimension vector ('d:' line)");

    AnalysisRequest request{Quiver(std::move(vertices), std::move(arrows)),
                            DimensionVector{*d}, std::move(slice), std::move(base)};
    if (static_cast<int>(request.d.entries.size()) != request.quiver.num_vertices())
        throw ParseError("dimension vector has " + std::to_string(request.d.entries.size()) +
                         " entries for " + std::to_string(request.quiver.num_vertices()) +
                         " vertices");
    if (!request.d.is_thin())
        throw UnsupportedError(
            "dimension vector is not thin (0/1); only thin vectors are supported, "
            "see README scope notes");
    return request;
}

namespace {

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_object() && j.contains("num") && j.contains("den"))
        return Rational(BigInt(j["num"].get<long long>()), BigInt(j["den"].get<long long>()));
    throw ParseError("expected a rational (integer, \"p/q\", or {num,den})");
}

}  // namespace

AnalysisRequest parse_request_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    if (j.contains("arrows"))
        for (const auto& a : j["arrows"])
            arrows.emplace_back(a.at("name").get<std::string>(),
                                a.at("source").get<std::string>(),
                                a.at("target").get<std::string>());
    IntVector d = j.at("d").get<IntVector>();

    std::optional<SliceRequest> slice;
    if (j.contains("slice") && !j["slice"].is_null()) {
        SliceRequest s;
        const auto& js = j["slice"];
        if (js.is_string() && js.get<std::string>() == "identity") {
            s.identity = true;
        } else if (js.is_object() && js.value("identity", false)) {
            s.identity = true;
        } else {
            for (const char* name : {"p", "u1", "u2"}) {
                if (!js.contains(name))
                    throw ParseError(std::string("slice: missing vector '") + name + "'");
                RationalVector vec;
                for (const auto& entry : js[name]) vec.push_back(rational_from_json(entry));
                if (name[0] == 'p')
                    s.p = std::move(vec);
                else if (name[1] == '1')
                    s.u1 = std::move(vec);
                else
                    s.u2 = std::move(vec);
            }
        }
        slice = std::move(s);
    }
    std::optional<Character> base;
    if (j.contains("base") && !j["base"].is_null()) base = j["base"].get<IntVector>();

    AnalysisRequest request{Quiver(std::move(vertices), std::move(arrows)),
                            DimensionVector{std::move(d)}, std::move(slice), std::move(base)};
    if (static_cast<int>(request.d.entries.size()) != request.quiver.num_vertices())
        throw ParseError("dimension vector length mismatch");
    if (!request.d.is_thin())
        throw UnsupportedError("dimension vector is not thin (0/1)");
    return request;
}

std::string serialize_request(const AnalysisRequest& request) {
    std::ostringstream out;
    out << "vertices:";
    for (const auto& v : request.quiver.vertices()) out << " " << v;
    out << "\n";
    for (const auto& a : request.quiver.arrows())
        out << "arrow " << a.name << ": " << request.quiver.vertices()[a.source] << " -> "
            << request.quiver.vertices()[a.target] << "\n";
    out << "d:";
    for (long long x : request.d.entries) out << " " << x;
    out << "\n";
    if (request.slice) {
        if (request.slice->identity) {
            out << "slice: identity\n";
        } else {
            auto vec = [&](const RationalVector& v) {
                std::string s;
                for (size_t i = 0; i < v.size(); ++i)
                    s += (i ? " " : "") + format_rational(v[i]);
                return s;
            };
            out << "slice: p = " << vec(request.slice->p) << " ; u1 = "
                << vec(request.slice->u1) << " ; u2 = " << vec(request.slice->u2) << "\n";
        }
    }
    if (request.base) {
        out << "base:";
        for (long long x : *request.base) out << " " << x;
        out << "\n";
    }
    return out.str();
}

namespace {

IntVector negated(IntVector v) {
    for (auto& x : v) x = -x;
    return v;
}

// Extension side of { form <= 0 } on the slice, from the in-slice gradient of
// -form: x wins over y, matching the published table convention.
std::string extension_side(const Rational& c1, const Rational& c2) {
    if (c1 > 0) return "pos. x-axis";
    if (c1 < 0) return "neg. x-axis";
    if (c2 > 0) return "pos. y-axis";
    if (c2 < 0) return "neg. y-axis";
    return "";
}

}  // namespace

AnalysisDocument build_document(const AnalysisRequest& request) {
    AnalysisDocument doc;
    doc.request = request;
    doc.analysis = analyze(request.quiver, request.d);
    const QuiverAnalysis& a = doc.analysis;
    doc.warnings = a.warnings;
    if (a.quiver.num_vertices() != request.quiver.num_vertices())
        doc.warnings.push_back("restricted to the support of d: " +
                               std::to_string(a.quiver.num_vertices()) + " of " +
                               std::to_string(request.quiver.num_vertices()) +
                               " vertices remain");

    if (request.slice) {
        if (request.slice->identity) {
            if (a.dim() != 2)
                throw Error("identity chart requires d-perp of rank 2, got rank " +
                            std::to_string(a.dim()));
            doc.identity_chart = true;
        } else {
            auto check = [&](const RationalVector& v, const char* name) {
                if (static_cast<int>(v.size()) != a.dim())
                    throw ParseError(std::string("slice vector ") + name + " has " +
                                     std::to_string(v.size()) + " entries; kernel rank is " +
                                     std::to_string(a.dim()));
            };
            check(request.slice->p, "p");
            check(request.slice->u1, "u1");
            check(request.slice->u2, "u2");
            doc.slice.emplace(request.slice->p, request.slice->u1, request.slice->u2);
        }
    }

    for (size_t i = 0; i < a.classes.size(); ++i) {
        WallRow row;
        row.id = static_cast<int>(i) + 1;
        row.e = a.classes[i].e;
        for (int k : a.classes[i].boundary_arrows)
            row.clause.push_back(a.quiver.arrows()[k].name);
        row.normal = a.classes[i].slope_normal;
        row.hyperplane = a.dedup.index_map[i].first;
        // Orientation of the restriction follows the semistable side
        // { theta . n_e <= 0 }, i.e. the form -n_e.
        IntVector row_form = restrict_form(negated(a.classes[i].slope_normal), a.basis);
        if (doc.slice) {
            row.line = restrict_to_slice(row_form, *doc.slice);
            auto [c0, c1, c2] = slice_form(row_form, *doc.slice);
            if (row.line.kind == SliceObject::Kind::Line)
                row.extends = extension_side(c1, c2);
        } else if (doc.identity_chart) {
            if (is_zero(row_form)) {
                row.line.kind = SliceObject::Kind::FullSlice;
            } else {
                row.line.kind = SliceObject::Kind::Line;
                row.line.a = {Rational(0), Rational(0)};
                IntVector dir = primitive_direction({Rational(row_form[1]),
                                                     Rational(-row_form[0])});
                row.line.b = {Rational(dir[0]), Rational(dir[1])};
                row.extends = extension_side(Rational(row_form[0]), Rational(row_form[1]));
            }
        }
        doc.walls.push_back(std::move(row));
    }

    doc.divisor_limits.resize(a.chambers.size());
    for (size_t c = 0; c < a.chambers.size(); ++c) {
        for (const auto& [arrow, chi] : a.chambers[c].divisor_characters) {
            RationalVector coords = a.kernel_coordinates(chi);
            if (doc.slice) {
                doc.divisor_limits[c][arrow] = direction_on_slice(coords, *doc.slice);
            } else if (doc.identity_chart) {
                SliceObject obj;
                obj.kind = SliceObject::Kind::Direction;
                IntVector dir = primitive_direction(coords);
                obj.b = {Rational(dir[0]), Rational(dir[1])};
                doc.divisor_limits[c][arrow] = obj;
            }
        }
    }

    if (request.base) {
        Character theta = *request.base;
        if (static_cast<int>(theta.size()) != request.quiver.num_vertices())
            throw Error("base character has wrong length");
        // Drop coordinates outside the support of d.
        Character restricted;
        for (size_t i = 0; i < theta.size(); ++i)
            if (request.d.entries[i] != 0) restricted.push_back(theta[i]);
        LocateResult where = locate_chamber(a, restricted);
        switch (where.kind) {
            case LocateResult::Kind::Chamber:
                doc.base_chamber = where.chamber;
                doc.pseudoeffective = pseudoeffective_cone(a, where.chamber);
                break;
            case LocateResult::Kind::NonAmpleCell:
                throw Error("base character has empty semistable locus (not G-ample)");
            case LocateResult::Kind::OnWall: {
                std::string walls;
                for (int h : where.hyperplanes)
                    walls += (walls.empty() ? "" : ", ") + std::to_string(h + 1);
                throw Error("base character lies on wall(s) " + walls +
                            "; pick an interior stability condition");
            }
        }
    }
    return doc;
}

// ---------------------------------------------------------------------------
// text rendering

namespace {

std::string int_vec(const IntVector& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string rat_pair(const std::array<Rational, 2>& v) {
    return "(" + format_rational(v[0]) + "," + format_rational(v[1]) + ")";
}

std::string rat_vec(const RationalVector& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_rational(v[i]);
    return s + ")";
}

std::string clause_text(const std::vector<std::string>& clause) {
    if (clause.empty()) return "(always)";
    std::string s;
    for (const auto& name : clause) s += name + "=";
    return s + "0";
}

std::string slice_a_text(const SliceObject& line) {
    if (line.kind != SliceObject::Kind::Line) return "-";
    if (line.a[0] == 0 && line.a[1] == 0) return "0";
    return rat_pair(line.a);
}

std::string slice_b_text(const SliceObject& line) {
    switch (line.kind) {
        case SliceObject::Kind::Line: return rat_pair(line.b);
        case SliceObject::Kind::FullSlice: return "(whole slice)";
        case SliceObject::Kind::Absent: return "(absent)";
        default: return "-";
    }
}

std::string limit_text(const SliceObject& obj) {
    switch (obj.kind) {
        case SliceObject::Kind::Point: return "point " + rat_pair(obj.a);
        case SliceObject::Kind::Direction: return "direction " + rat_pair(obj.b);
        case SliceObject::Kind::ExitsSlice: return "exits slice via " + rat_pair(obj.a);
        default: return "-";
    }
}

std::string signs_text(const std::vector<int>& signs) {
    std::string s;
    for (int x : signs) s += x > 0 ? '+' : x < 0 ? '-' : '.';
    return s.empty() ? "-" : s;
}

void emit_table(std::ostringstream& out, const std::vector<std::vector<std::string>>& rows,
                bool color) {
    if (rows.empty()) return;
    std::vector<size_t> width(rows[0].size(), 0);
    for (const auto& row : rows)
        for (size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        std::string line;
        for (size_t j = 0; j < rows[i].size(); ++j) {
            std::string cell = rows[i][j];
            cell.resize(width[j], ' ');
            line += cell;
            if (j + 1 < rows[i].size()) line += "  ";
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        if (i == 0 && color) line = "\033[1m" + line + "\033[0m";
        out << "  " << line << "\n";
        if (i == 0) {
            std::string rule;
            for (size_t j = 0; j < width.size(); ++j) {
                rule += std::string(width[j], '-');
                if (j + 1 < width.size()) rule += "  ";
            }
            out << "  " << rule << "\n";
        }
    }
}

}  // namespace

std::string render_header(const AnalysisDocument& doc) {
    const QuiverAnalysis& a = doc.analysis;
    std::ostringstream out;
    out << "quiver: " << a.quiver.num_vertices() << " vertices, " << a.quiver.num_arrows()
        << " arrows; d = " << int_vec(a.d.entries);
    std::string flags;
    if (a.validation.thin) flags += " thin";
    if (a.validation.sincere) flags += " sincere";
    if (a.validation.coprime) flags += " coprime";
    flags += a.validation.acyclic ? " acyclic" : " cyclic";
    out << " [" << trim(flags) << "]\n";
    out << "kernel basis of d-perp:";
    for (const auto& b : a.basis) out << " " << int_vec(b);
    out << "\n";
    return out.str();
}

std::string render_walls_table(const AnalysisDocument& doc, bool color) {
    const QuiverAnalysis& a = doc.analysis;
    const bool with_slice = doc.slice.has_value() || doc.identity_chart;
    std::ostringstream out;
    out << "walls (" << a.classes.size() << " classes, " << a.dedup.hyperplanes.size()
        << " hyperplanes):\n";
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header = {"id", "e", "occurs iff", "normal", "plane"};
    if (with_slice) {
        header.push_back("a");
        header.push_back("b");
        header.push_back("extends to");
    }
    rows.push_back(header);
    for (const auto& w : doc.walls) {
        std::vector<std::string> row = {std::to_string(w.id), int_vec(w.e),
                                        clause_text(w.clause), int_vec(w.normal),
                                        w.hyperplane < 0
                                            ? "-"
                                            : "H" + std::to_string(w.hyperplane + 1)};
        if (with_slice) {
            row.push_back(slice_a_text(w.line));
            row.push_back(slice_b_text(w.line));
            row.push_back(w.extends.empty() ? "-" : w.extends);
        }
        rows.push_back(std::move(row));
    }
    emit_table(out, rows, color);
    return out.str();
}

std::string render_chambers_table(const AnalysisDocument& doc, bool color) {
    const QuiverAnalysis& a = doc.analysis;
    const bool with_slice = doc.slice.has_value() || doc.identity_chart;
    std::ostringstream out;
    out << "chambers (" << a.chambers.size() << " G-ample, " << a.nonample_cells.size()
        << " cells with empty semistable locus, " << a.cells.size() << " cells total):\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"chamber", "signs", "witness", "Z", "rho", "semistable locus"});
    for (const auto& c : a.chambers) {
        std::string z;
        for (int arrow : c.unstable_divisors)
            z += (z.empty() ? "" : ",") + ("N(" + a.quiver.arrows()[arrow].name + ")");
        if (z.empty()) z = "-";
        rows.push_back({c.label, signs_text(c.signs), rat_vec(c.witness), z,
                        c.picard ? std::to_string(*c.picard) : "undefined",
                        c.cnf.to_string(a.quiver)});
    }
    emit_table(out, rows, color);
    for (size_t c = 0; c < a.chambers.size(); ++c) {
        for (const auto& [arrow, chi] : a.chambers[c].divisor_characters) {
            out << "  " << a.chambers[c].label << ": chi_" << a.quiver.arrows()[arrow].name
                << " = " << int_vec(chi);
            if (with_slice) {
                auto it = doc.divisor_limits[c].find(arrow);
                if (it != doc.divisor_limits[c].end())
                    out << " -> " << limit_text(it->second);
            }
            out << "\n";
        }
    }
    return out.str();
}

std::string render_stable_matrix(const AnalysisDocument& doc, bool color) {
    const QuiverAnalysis& a = doc.analysis;
    std::ostringstream out;
    if (a.chambers.empty()) {
        out << "stable chambers: none (no G-ample chamber)\n";
        return out.str();
    }
    out << "stable chambers (row: base, column: candidate):\n";
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header = {""};
    for (const auto& c : a.chambers) header.push_back(c.label);
    rows.push_back(header);
    for (size_t i = 0; i < a.chambers.size(); ++i) {
        std::vector<std::string> row = {a.chambers[i].label};
        for (size_t j = 0; j < a.chambers.size(); ++j)
            row.push_back(a.stable[i][j] ? "x" : ".");
        rows.push_back(std::move(row));
    }
    emit_table(out, rows, color);
    for (size_t i = 0; i < a.chambers.size(); ++i) {
        out << "  " << a.chambers[i].label << " -> {";
        bool first = true;
        for (size_t j = 0; j < a.chambers.size(); ++j) {
            if (!a.stable[i][j]) continue;
            out << (first ? "" : ", ") << a.chambers[j].label;
            first = false;
        }
        out << "}\n";
    }
    return out.str();
}

std::string render_tables(const AnalysisDocument& doc, bool color) {
    const QuiverAnalysis& a = doc.analysis;
    std::ostringstream out;
    out << render_header(doc) << "\n";
    out << render_walls_table(doc, color) << "\n";
    out << render_chambers_table(doc, color) << "\n";
    out << render_stable_matrix(doc, color);

    if (doc.base_chamber) {
        out << "\npseudoeffective cone of the quotient at base "
            << a.chambers[*doc.base_chamber].label << ": {";
        for (size_t k = 0; k < doc.pseudoeffective.size(); ++k)
            out << (k ? ", " : "") << a.chambers[doc.pseudoeffective[k]].label;
        out << "}\n";
    }

    if (!doc.warnings.empty()) {
        out << "\nwarnings:\n";
        for (const auto& w : doc.warnings) out << "  - " << w << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// JSON rendering

namespace {

Json rational_json(const Rational& x) {
    Json j;
    BigInt num = numerator(x), den = denominator(x);
    // entries stay tiny in practice; strings avoid any overflow question
    if (num >= std::numeric_limits<long long>::min() &&
        num <= std::numeric_limits<long long>::max())
        j["num"] = static_cast<long long>(num);
    else
        j["num"] = num.str();
    if (den <= std::numeric_limits<long long>::max())
        j["den"] = static_cast<long long>(den);
    else
        j["den"] = den.str();
    return j;
}

Json rational_vec_json(const RationalVector& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(rational_json(x));
    return j;
}

Json slice_object_json(const SliceObject& obj) {
    Json j;
    switch (obj.kind) {
        case SliceObject::Kind::Line:
            j["kind"] = "line";
            j["a"] = Json::array({rational_json(obj.a[0]), rational_json(obj.a[1])});
            j["b"] = Json::array({rational_json(obj.b[0]), rational_json(obj.b[1])});
            break;
        case SliceObject::Kind::FullSlice: j["kind"] = "full-slice"; break;
        case SliceObject::Kind::Absent: j["kind"] = "absent"; break;
        case SliceObject::Kind::Point:
            j["kind"] = "point";
            j["at"] = Json::array({rational_json(obj.a[0]), rational_json(obj.a[1])});
            break;
        case SliceObject::Kind::Direction:
            j["kind"] = "direction";
            j["dir"] = Json::array({rational_json(obj.b[0]), rational_json(obj.b[1])});
            break;
        case SliceObject::Kind::ExitsSlice:
            j["kind"] = "exits-slice";
            j["via"] = Json::array({rational_json(obj.a[0]), rational_json(obj.a[1])});
            break;
    }
    return j;
}

}  // namespace

std::string render_json(const AnalysisDocument& doc) {
    const QuiverAnalysis& a = doc.analysis;
    Json j;
    j["quiver"]["vertices"] = a.quiver.vertices();
    j["quiver"]["arrows"] = Json::array();
    for (const auto& arrow : a.quiver.arrows())
        j["quiver"]["arrows"].push_back({{"name", arrow.name},
                                         {"source", a.quiver.vertices()[arrow.source]},
                                         {"target", a.quiver.vertices()[arrow.target]}});
    j["d"] = a.d.entries;
    j["validation"] = {{"thin", a.validation.thin},
                       {"sincere", a.validation.sincere},
                       {"coprime", a.validation.coprime},
                       {"acyclic", a.validation.acyclic}};
    j["kernel_basis"] = a.basis;

    j["walls"] = Json::array();
    for (const auto& w : doc.walls) {
        Json row;
        row["id"] = w.id;
        row["e"] = w.e;
        row["occurs_iff"] = w.clause;
        row["always"] = w.clause.empty();
        row["slope_normal"] = w.normal;
        row["hyperplane"] = w.hyperplane;
        if (doc.slice || doc.identity_chart) {
            row["slice"] = slice_object_json(w.line);
            row["extends_to"] = w.extends;
        }
        j["walls"].push_back(std::move(row));
    }

    j["hyperplanes"] = Json::array();
    for (const auto& h : a.dedup.hyperplanes) {
        Json row;
        row["normal"] = h.normal;
        row["sources"] = Json::array();
        for (auto [cls, sign] : h.sources)
            row["sources"].push_back({{"class", cls + 1}, {"sign", sign}});
        j["hyperplanes"].push_back(std::move(row));
    }

    j["cells"] = Json::array();
    for (size_t c = 0; c < a.cells.size(); ++c) {
        Json row;
        row["signs"] = signs_text(a.cells[c].signs);
        row["witness"] = rational_vec_json(a.cells[c].witness);
        row["chamber"] =
            a.cell_to_chamber[c] >= 0 ? Json(a.chambers[a.cell_to_chamber[c]].label) : Json();
        j["cells"].push_back(std::move(row));
    }

    j["chambers"] = Json::array();
    for (size_t c = 0; c < a.chambers.size(); ++c) {
        const auto& chamber = a.chambers[c];
        Json row;
        row["label"] = chamber.label;
        row["cells"] = chamber.cells;
        row["signs"] = signs_text(chamber.signs);
        row["witness"] = rational_vec_json(chamber.witness);
        row["forbidden_classes"] = Json::array();
        for (int i : chamber.forbidden) row["forbidden_classes"].push_back(i + 1);
        Json cnf = Json::array();
        for (const auto& clause : chamber.cnf.clauses) {
            Json names = Json::array();
            for (int arrow : clause) names.push_back(a.quiver.arrows()[arrow].name);
            cnf.push_back(std::move(names));
        }
        row["cnf"] = std::move(cnf);
        row["cnf_text"] = chamber.cnf.to_string(a.quiver);
        row["g_ample"] = chamber.g_ample;
        Json divisors = Json::array();
        for (int arrow : chamber.unstable_divisors)
            divisors.push_back(a.quiver.arrows()[arrow].name);
        row["unstable_divisors"] = std::move(divisors);
        Json characters = Json::object();
        for (const auto& [arrow, chi] : chamber.divisor_characters) {
            Json entry;
            entry["character"] = chi;
            auto it = doc.divisor_limits[c].find(arrow);
            if (it != doc.divisor_limits[c].end())
                entry["slice_limit"] = slice_object_json(it->second);
            characters[a.quiver.arrows()[arrow].name] = std::move(entry);
        }
        row["divisor_characters"] = std::move(characters);
        row["picard"] = chamber.picard ? Json(*chamber.picard) : Json();
        j["chambers"].push_back(std::move(row));
    }

    Json matrix = Json::array();
    for (const auto& row : a.stable) matrix.push_back(row);
    j["stable_matrix"] = std::move(matrix);
    if (doc.base_chamber) {
        j["base_chamber"] = a.chambers[*doc.base_chamber].label;
        Json pseff = Json::array();
        for (int k : doc.pseudoeffective) pseff.push_back(a.chambers[k].label);
        j["pseudoeffective"] = std::move(pseff);
    }
    j["warnings"] = doc.warnings;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// SVG rendering

namespace {

using Point2 = std::array<Rational, 2>;

struct HalfPlane {
    // g0 + g1 s + g2 t >= 0
    Rational g0, g1, g2;
    Rational eval(const Point2& p) const { return g0 + g1 * p[0] + g2 * p[1]; }
};

std::vector<Point2> clip_polygon(std::vector<Point2> poly, const HalfPlane& h) {
    std::vector<Point2> out;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Point2& cur = poly[i];
        const Point2& nxt = poly[(i + 1) % n];
        Rational vc = h.eval(cur), vn = h.eval(nxt);
        if (vc >= 0) out.push_back(cur);
        if ((vc > 0 && vn < 0) || (vc < 0 && vn > 0)) {
            Rational t = vc / (vc - vn);
            out.push_back({cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])});
        }
    }
    return out;
}

Rational polygon_area2(const std::vector<Point2>& poly) {
    Rational s = 0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % poly.size()];
        s += p[0] * q[1] - q[0] * p[1];
    }
    return s < 0 ? -s : s;
}

// Clip the line a + t b to [xmin,xmax] x [ymin,ymax]; false when outside.
bool clip_line(const Point2& a, const Point2& b, const std::array<Rational, 4>& box,
               Point2& p0, Point2& p1) {
    // Liang-Barsky over rationals with an unbounded parameter range.
    bool lo_set = false, hi_set = false;
    Rational tlo = 0, thi = 0;
    auto apply = [&](const Rational& num, const Rational& den) -> bool {
        // constraint: num + t*den >= 0
        if (den == 0) return num >= 0;
        Rational t = -num / den;
        if (den > 0) {
            if (!lo_set || t > tlo) { tlo = t; lo_set = true; }
        } else {
            if (!hi_set || t < thi) { thi = t; hi_set = true; }
        }
        return true;
    };
    if (!apply(a[0] - box[0], b[0])) return false;   // x >= xmin
    if (!apply(box[1] - a[0], -b[0])) return false;  // x <= xmax
    if (!apply(a[1] - box[2], b[1])) return false;   // y >= ymin
    if (!apply(box[3] - a[1], -b[1])) return false;  // y <= ymax
    if (!lo_set || !hi_set) throw InternalError("unclipped slice line");
    if (tlo > thi) return false;
    p0 = {a[0] + tlo * b[0], a[1] + tlo * b[1]};
    p1 = {a[0] + thi * b[0], a[1] + thi * b[1]};
    return true;
}

}  // namespace

std::string render_svg(const AnalysisDocument& doc, const SvgOptions& options) {
    const QuiverAnalysis& a = doc.analysis;
    if (!doc.slice && !doc.identity_chart)
        throw Error("svg output requires a slice (or 'slice: identity' for rank 2)");
    const Rational ys = options.yscale;
    if (ys <= 0) throw Error("yscale must be positive");

    // Chamber label anchors: slice projection of the witness, with the
    // centroid of the visible region as fallback; divisor markers.
    std::vector<std::optional<Point2>> witness_proj(a.chambers.size());
    for (size_t c = 0; c < a.chambers.size(); ++c) {
        if (doc.identity_chart) {
            const auto& w = a.chambers[c].witness;
            Rational m = 0;
            for (const auto& x : w) {
                Rational ax = x < 0 ? -x : x;
                if (ax > m) m = ax;
            }
            if (m > 0) witness_proj[c] = Point2{w[0] / m, w[1] / m};
        } else {
            RationalVector coeffs;
            if (solve_columns({doc.slice->p, doc.slice->u1, doc.slice->u2},
                              a.chambers[c].witness, coeffs) &&
                coeffs[0] > 0)
                witness_proj[c] = Point2{coeffs[1] / coeffs[0], coeffs[2] / coeffs[0]};
        }
    }

    std::array<Rational, 4> box;
    if (options.viewport) {
        box = *options.viewport;
        if (box[0] >= box[1] || box[2] >= box[3]) throw Error("empty viewport");
    } else {
        std::vector<Point2> anchors;
        anchors.push_back({Rational(0), Rational(0)});
        for (const auto& w : doc.walls)
            if (w.line.kind == SliceObject::Kind::Line) anchors.push_back(w.line.a);
        for (const auto& p : witness_proj)
            if (p) anchors.push_back(*p);
        for (const auto& limits : doc.divisor_limits)
            for (const auto& [arrow, obj] : limits)
                if (obj.kind == SliceObject::Kind::Point) anchors.push_back(obj.a);
        box = {anchors[0][0], anchors[0][0], anchors[0][1], anchors[0][1]};
        for (const auto& p : anchors) {
            box[0] = std::min(box[0], p[0]);
            box[1] = std::max(box[1], p[0]);
            box[2] = std::min(box[2], p[1]);
            box[3] = std::max(box[3], p[1]);
        }
        box[0] -= 1; box[1] += 1; box[2] -= 1; box[3] += 1;
    }

    const Rational margin = 40;
    const Rational inner = 560;
    Rational scale = inner / (box[1] - box[0]);
    Rational width = inner + 2 * margin;
    Rational height = (box[3] - box[2]) * ys * scale + 2 * margin;
    auto sx = [&](const Rational& x) { return margin + (x - box[0]) * scale; };
    auto sy = [&](const Rational& y) { return margin + (box[3] - y) * ys * scale; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << decimal6(width)
        << "\" height=\"" << decimal6(height) << "\" viewBox=\"0 0 " << decimal6(width) << " "
        << decimal6(height) << "\">\n";
    out << "<!-- GIT chamber decomposition on the slice; viewport x in ["
        << format_rational(box[0]) << "," << format_rational(box[1]) << "], y in ["
        << format_rational(box[2]) << "," << format_rational(box[3]) << "], yscale "
        << format_rational(ys) << " -->\n";
    out << "<rect x=\"" << decimal6(margin) << "\" y=\"" << decimal6(margin) << "\" width=\""
        << decimal6(inner) << "\" height=\"" << decimal6((box[3] - box[2]) * ys * scale)
        << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";

    int visible = 0;
    // one line per hyperplane; orientation is immaterial for drawing
    for (size_t h = 0; h < a.dedup.hyperplanes.size(); ++h) {
        SliceObject line;
        if (doc.identity_chart) {
            const IntVector& m = a.dedup.hyperplanes[h].normal;
            line.kind = SliceObject::Kind::Line;
            line.a = {Rational(0), Rational(0)};
            IntVector dir = primitive_direction({Rational(m[1]), Rational(-m[0])});
            line.b = {Rational(dir[0]), Rational(dir[1])};
        } else {
            IntVector form(a.dedup.hyperplanes[h].normal.begin(),
                           a.dedup.hyperplanes[h].normal.end());
            line = restrict_to_slice(form, *doc.slice);
        }
        if (line.kind != SliceObject::Kind::Line) {
            out << "<!-- hyperplane H" << h + 1 << ": "
                << (line.kind == SliceObject::Kind::FullSlice ? "covers the whole slice"
                                                              : "does not meet the slice")
                << " -->\n";
            continue;
        }
        Point2 p0, p1;
        if (!clip_line(line.a, line.b, box, p0, p1)) {
            out << "<!-- hyperplane H" << h + 1 << ": outside the viewport -->\n";
            continue;
        }
        ++visible;
        out << "<line class=\"wall\" x1=\"" << decimal6(sx(p0[0])) << "\" y1=\""
            << decimal6(sy(p0[1])) << "\" x2=\"" << decimal6(sx(p1[0])) << "\" y2=\""
            << decimal6(sy(p1[1])) << "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
    }

    // chamber labels
    for (size_t c = 0; c < a.chambers.size(); ++c) {
        std::optional<Point2> pos = witness_proj[c];
        bool inside = pos && (*pos)[0] > box[0] && (*pos)[0] < box[1] && (*pos)[1] > box[2] &&
                      (*pos)[1] < box[3];
        if (!inside) {
            // centroid of the chamber trace clipped to the viewport
            std::vector<Point2> poly = {{box[0], box[2]},
                                        {box[1], box[2]},
                                        {box[1], box[3]},
                                        {box[0], box[3]}};
            for (const auto& [normal, sign] : a.chambers[c].closure_inequalities) {
                HalfPlane hp;
                if (doc.identity_chart) {
                    hp = {Rational(0), Rational(sign * normal[0]), Rational(sign * normal[1])};
                } else {
                    auto [c0, c1, c2] = slice_form(normal, *doc.slice);
                    hp = {sign * c0, sign * c1, sign * c2};
                }
                poly = clip_polygon(std::move(poly), hp);
                if (poly.empty()) break;
            }
            if (poly.size() < 3 || polygon_area2(poly) == 0) {
                out << "<!-- chamber " << a.chambers[c].label
                    << ": no visible area in the viewport -->\n";
                continue;
            }
            Rational cx = 0, cy = 0;
            for (const auto& p : poly) {
                cx += p[0];
                cy += p[1];
            }
            pos = Point2{cx / static_cast<long long>(poly.size()),
                         cy / static_cast<long long>(poly.size())};
        }
        ++visible;
        out << "<text class=\"chamber\" x=\"" << decimal6(sx((*pos)[0])) << "\" y=\""
            << decimal6(sy((*pos)[1])) << "\" font-family=\"sans-serif\" font-size=\"16\" "
               "text-anchor=\"middle\">" << a.chambers[c].label << "</text>\n";
    }

    // divisor character markers, deduplicated across chambers
    std::map<int, SliceObject> markers;
    for (const auto& limits : doc.divisor_limits)
        for (const auto& [arrow, obj] : limits) markers.emplace(arrow, obj);
    Rational half_extent = std::min((box[1] - box[0]) / 2, (box[3] - box[2]) / 2);
    Point2 center = {(box[0] + box[1]) / 2, (box[2] + box[3]) / 2};
    for (const auto& [arrow, obj] : markers) {
        const std::string name = a.quiver.arrows()[arrow].name;
        if (obj.kind != SliceObject::Kind::Point) continue;
        if (obj.a[0] < box[0] || obj.a[0] > box[1] || obj.a[1] < box[2] ||
            obj.a[1] > box[3]) {
            out << "<!-- chi_" << name << ": limit point outside the viewport -->\n";
            continue;
        }
        ++visible;
        out << "<circle class=\"character\" cx=\"" << decimal6(sx(obj.a[0])) << "\" cy=\""
            << decimal6(sy(obj.a[1])) << "\" r=\"4\" fill=\"#000000\"/>\n";
        out << "<text class=\"character-label\" x=\"" << decimal6(sx(obj.a[0]) + 8)
            << "\" y=\"" << decimal6(sy(obj.a[1]) - 8)
            << "\" font-family=\"sans-serif\" font-size=\"13\">chi_" << name << "</text>\n";
    }
    // direction markers have no location of their own: draw them at the
    // viewport center only when some located content is visible
    for (const auto& [arrow, obj] : markers) {
        const std::string name = a.quiver.arrows()[arrow].name;
        if (obj.kind == SliceObject::Kind::ExitsSlice) {
            out << "<!-- chi_" << name << ": leaves the slice side (flagged) -->\n";
            continue;
        }
        if (obj.kind != SliceObject::Kind::Direction) continue;
        Rational m = 0;
        for (const auto& x : obj.b) {
            Rational ax = x < 0 ? -x : x;
            if (ax > m) m = ax;
        }
        if (m == 0 || visible == 0) {
            out << "<!-- chi_" << name << ": direction marker suppressed -->\n";
            continue;
        }
        // arrow from 55% to 80% of the half extent along the direction
        Point2 unit = {obj.b[0] / m, obj.b[1] / m};
        auto at = [&](const Rational& f) {
            return Point2{center[0] + unit[0] * half_extent * f,
                          center[1] + unit[1] * half_extent * f};
        };
        Point2 tail = at(Rational(11, 20)), head = at(Rational(4, 5));
        out << "<line class=\"dir\" x1=\"" << decimal6(sx(tail[0])) << "\" y1=\""
            << decimal6(sy(tail[1])) << "\" x2=\"" << decimal6(sx(head[0])) << "\" y2=\""
            << decimal6(sy(head[1]))
            << "\" stroke=\"#000000\" stroke-width=\"1.5\" marker-end=\"url(#tip)\"/>\n";
        out << "<text class=\"character-label\" x=\"" << decimal6(sx(head[0]) + 6)
            << "\" y=\"" << decimal6(sy(head[1]) - 6)
            << "\" font-family=\"sans-serif\" font-size=\"13\">chi_" << name << "</text>\n";
    }

    if (visible == 0) out << "<!-- warning: viewport excludes all content -->\n";
    out << "<defs><marker id=\"tip\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
           "markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\">"
           "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#000000\"/></marker></defs>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace quivergit
