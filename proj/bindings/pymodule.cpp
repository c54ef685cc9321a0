// Python bindings for the chamber pipeline.  The heavy objects stay in C++;
// structured results cross the boundary as JSON text (exact rationals as
// num/den pairs) and the python package layers the ergonomics on top.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quivergit/report.hpp"

namespace py = pybind11;
using namespace quivergit;

namespace {

struct Document {
    AnalysisDocument doc;

    static Document from_text(const std::string& text) {
        return {build_document(parse_request(text))};
    }
    static Document from_json(const std::string& text) {
        return {build_document(parse_request_json(text))};
    }

    std::string tables(bool color) const { return render_tables(doc, color); }
    std::string json() const { return render_json(doc); }
    std::string svg(std::optional<std::array<std::string, 4>> viewport,
                    const std::string& yscale) const {
        SvgOptions options;
        options.yscale = parse_rational(yscale);
        if (viewport) {
            std::array<Rational, 4> box;
            for (int k = 0; k < 4; ++k) box[k] = parse_rational((*viewport)[k]);
            options.viewport = box;
        }
        return render_svg(doc, options);
    }

    size_t num_chambers() const { return doc.analysis.chambers.size(); }
    std::vector<std::string> chamber_labels() const {
        std::vector<std::string> out;
        for (const auto& c : doc.analysis.chambers) out.push_back(c.label);
        return out;
    }
    std::vector<std::optional<long long>> picard_numbers() const {
        std::vector<std::optional<long long>> out;
        for (const auto& c : doc.analysis.chambers) out.push_back(c.picard);
        return out;
    }
    std::vector<std::vector<bool>> stable_matrix() const { return doc.analysis.stable; }
    std::vector<std::string> pseudoeffective(const std::string& label) const {
        for (size_t i = 0; i < doc.analysis.chambers.size(); ++i) {
            if (doc.analysis.chambers[i].label != label) continue;
            std::vector<std::string> out;
            for (int j : pseudoeffective_cone(doc.analysis, static_cast<int>(i)))
                out.push_back(doc.analysis.chambers[j].label);
            return out;
        }
        throw Error("no such chamber: " + label);
    }
    std::string locate(const Character& theta) const {
        // over the declared vertex set, dead coordinates dropped like the CLI
        Character restricted;
        for (size_t i = 0; i < theta.size(); ++i)
            if (doc.request.d.entries.at(i) != 0) restricted.push_back(theta[i]);
        auto where = locate_chamber(doc.analysis, restricted);
        switch (where.kind) {
            case LocateResult::Kind::Chamber:
                return doc.analysis.chambers[where.chamber].label;
            case LocateResult::Kind::NonAmpleCell: return "(empty semistable locus)";
            default: {
                std::string out = "on wall:";
                for (int h : where.hyperplanes) out += " H" + std::to_string(h + 1);
                return out;
            }
        }
    }
    std::pair<bool, std::vector<std::string>> oracle_check_result() const {
        auto r = oracle_check(doc.analysis);
        return {r.ok, r.failures};
    }
    std::vector<std::string> warnings() const { return doc.warnings; }
};

}  // namespace

PYBIND11_MODULE(_quivergit, m) {
    m.doc() = "exact GIT wall-and-chamber decompositions for thin quiver moduli";

    // base first: translators run in reverse registration order
    py::register_exception<Error>(m, "AnalysisError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "RequestParseError", PyExc_ValueError);
    py::register_exception<UnsupportedError>(m, "UnsupportedInput", PyExc_ValueError);

    py::class_<Document>(m, "Document")
        .def_static("from_text", &Document::from_text, py::arg("text"))
        .def_static("from_json", &Document::from_json, py::arg("text"))
        .def("tables", &Document::tables, py::arg("color") = false)
        .def("json", &Document::json)
        .def("svg", &Document::svg, py::arg("viewport") = py::none(),
             py::arg("yscale") = "1")
        .def_property_readonly("num_chambers", &Document::num_chambers)
        .def_property_readonly("chamber_labels", &Document::chamber_labels)
        .def("picard_numbers", &Document::picard_numbers)
        .def("stable_matrix", &Document::stable_matrix)
        .def("pseudoeffective", &Document::pseudoeffective, py::arg("label"))
        .def("locate", &Document::locate, py::arg("theta"))
        .def("oracle_check", &Document::oracle_check_result)
        .def("warnings", &Document::warnings);

    m.def(
        "kernel_basis",
        [](const IntVector& d) { return kernel_basis(DimensionVector{d}); }, py::arg("d"),
        "integer basis of the lattice orthogonal to d");

    m.def(
        "king_semistability",
        [](const std::vector<std::string>& vertices,
           const std::vector<std::tuple<std::string, std::string, std::string>>& arrows,
           const IntVector& d, const std::map<std::string, bool>& pattern,
           const Character& theta) {
            Quiver quiver(vertices, arrows);
            ThinRepPattern rep;
            rep.nonzero.assign(quiver.num_arrows(), false);
            for (const auto& [name, nonzero] : pattern) {
                int k = quiver.arrow_index(name);
                if (k < 0) throw Error("unknown arrow: " + name);
                rep.nonzero[k] = nonzero;
            }
            return std::string(
                to_string(king_semistability(quiver, DimensionVector{d}, rep, theta)));
        },
        py::arg("vertices"), py::arg("arrows"), py::arg("d"), py::arg("pattern"),
        py::arg("theta"),
        "brute-force slope semistability of a zero/nonzero pattern");

    m.def(
        "picard_general",
        [](long long rk_chi, long long components, long long rk_units_invariant,
           long long rk_units_quotient) {
            auto r = picard_general(
                {rk_chi, components, rk_units_invariant, rk_units_quotient});
            if (!r.consistent) throw Error("negative Picard number: inconsistent inputs");
            return r.value;
        },
        py::arg("rk_chi"), py::arg("components"), py::arg("rk_units_invariant") = 0,
        py::arg("rk_units_quotient") = 0);

    m.def(
        "picard_mds_quotient",
        [](long long rho_y, long long rk_chi, long long components) {
            auto r = picard_mds_quotient(rho_y, rk_chi, components);
            if (!r.consistent) throw Error("negative Picard number: inconsistent inputs");
            return r.value;
        },
        py::arg("rho_y"), py::arg("rk_chi"), py::arg("components"));
}
