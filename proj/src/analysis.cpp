#include "quivergit/analysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace quivergit {

SemistableCNF SemistableCNF::from_clauses(std::vector<std::vector<int>> raw) {
    SemistableCNF cnf;
    for (auto& clause : raw) {
        std::sort(clause.begin(), clause.end());
        clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
        if (clause.empty()) cnf.has_empty_clause = true;
    }
    if (cnf.has_empty_clause) return cnf;  // the empty clause subsumes everything
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    // Drop clauses containing an earlier (smaller) clause.
    for (const auto& clause : raw) {
        bool subsumed = false;
        for (const auto& kept : cnf.clauses) {
            if (kept.size() >= clause.size()) break;
            if (std::includes(clause.begin(), clause.end(), kept.begin(), kept.end())) {
                subsumed = true;
                break;
            }
        }
        if (!subsumed) cnf.clauses.push_back(clause);
    }
    return cnf;
}

bool SemistableCNF::evaluate(const ThinRepPattern& pattern) const {
    if (has_empty_clause) return false;
    for (const auto& clause : clauses) {
        bool satisfied = false;
        for (int arrow : clause) {
            if (pattern.nonzero[arrow]) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied) return false;
    }
    return true;
}

std::vector<int> SemistableCNF::singleton_arrows() const {
    std::vector<int> out;
    for (const auto& clause : clauses)
        if (clause.size() == 1) out.push_back(clause[0]);
    std::sort(out.begin(), out.end());
    return out;
}

std::string SemistableCNF::to_string(const Quiver& quiver) const {
    if (has_empty_clause) return "(empty semistable locus)";
    if (clauses.empty()) return "(all representations semistable)";
    std::string out;
    for (size_t i = 0; i < clauses.size(); ++i) {
        if (i) out += " ∧ ";
        const auto& clause = clauses[i];
        if (clause.size() > 1) out += "(";
        for (size_t j = 0; j < clause.size(); ++j) {
            if (j) out += " ∨ ";
            out += quiver.arrows()[clause[j]].name + "≠0";
        }
        if (clause.size() > 1) out += ")";
    }
    return out;
}

bool SemistableCNF::operator<(const SemistableCNF& other) const {
    if (has_empty_clause != other.has_empty_clause)
        return has_empty_clause < other.has_empty_clause;
    return clauses < other.clauses;
}

std::vector<int> forbidden_subdims(const RationalVector& witness,
                                   const std::vector<IntVector>& class_forms) {
    std::vector<int> out;
    for (size_t i = 0; i < class_forms.size(); ++i) {
        if (is_zero(class_forms[i])) continue;
        Rational v = dot(witness, class_forms[i]);
        if (v == 0)
            throw InternalError("chamber witness lies on the wall of class " +
                                std::to_string(i));
        if (v > 0) out.push_back(static_cast<int>(i));
    }
    return out;
}

SemistableCNF build_cnf(const std::vector<int>& forbidden,
                        const std::vector<SubdimensionClass>& classes) {
    std::vector<std::vector<int>> raw;
    raw.reserve(forbidden.size());
    for (int i : forbidden) raw.push_back(classes[i].boundary_arrows);
    return SemistableCNF::from_clauses(std::move(raw));
}

RationalVector QuiverAnalysis::kernel_coordinates(const Character& theta) const {
    if (static_cast<int>(theta.size()) != quiver.num_vertices())
        throw Error("character has wrong length");
    long long pairing = dot(theta, d.entries);
    if (pairing != 0)
        throw Error("character not in d-perp: pairing with d is " +
                    std::to_string(pairing));
    std::vector<RationalVector> columns;
    columns.reserve(basis.size());
    for (const auto& b : basis) columns.push_back(to_rational(b));
    RationalVector coords;
    if (!solve_columns(columns, to_rational(theta), coords))
        throw InternalError("kernel basis does not span d-perp");
    return coords;
}

Character QuiverAnalysis::integral_witness(int chamber) const {
    const auto& w = chambers.at(chamber).witness;
    RationalVector ambient(quiver.num_vertices(), Rational(0));
    for (size_t k = 0; k < basis.size(); ++k)
        for (int i = 0; i < quiver.num_vertices(); ++i)
            ambient[i] += w[k] * basis[k][i];
    return primitive_direction(ambient);
}

namespace {

// Forbidden classes of a cell read off the sign vector: the restriction of
// n_e equals (relative sign) * positive multiple of the hyperplane normal.
std::vector<int> forbidden_from_signs(const ChamberCell& cell, const DedupResult& dedup) {
    std::vector<int> out;
    for (size_t i = 0; i < dedup.index_map.size(); ++i) {
        auto [h, sign] = dedup.index_map[i];
        if (h < 0) continue;
        if (sign * cell.signs[h] > 0) out.push_back(static_cast<int>(i));
    }
    return out;
}

void merge_chambers(QuiverAnalysis& a) {
    const int num_h = static_cast<int>(a.dedup.hyperplanes.size());
    std::map<SemistableCNF, std::vector<int>> groups;
    std::vector<SemistableCNF> cell_cnf(a.cells.size());
    a.cell_to_chamber.assign(a.cells.size(), -1);

    for (size_t c = 0; c < a.cells.size(); ++c) {
        auto forbidden = forbidden_from_signs(a.cells[c], a.dedup);
        cell_cnf[c] = build_cnf(forbidden, a.classes);
        if (cell_cnf[c].has_empty_clause)
            a.nonample_cells.push_back(static_cast<int>(c));
        else
            groups[cell_cnf[c]].push_back(static_cast<int>(c));
    }

    // Chambers ordered by their least member cell (cells are already in
    // lexicographic sign order).
    std::vector<const std::pair<const SemistableCNF, std::vector<int>>*> ordered;
    for (const auto& g : groups) ordered.push_back(&g);
    std::sort(ordered.begin(), ordered.end(),
              [](auto* x, auto* y) { return x->second.front() < y->second.front(); });

    bool acyclic = a.validation.acyclic;
    for (const auto* group : ordered) {
        GitChamber chamber;
        chamber.cells = group->second;
        chamber.cnf = group->first;
        chamber.g_ample = true;
        chamber.label = "C" + std::to_string(a.chambers.size() + 1);

        chamber.signs.assign(num_h, 0);
        const auto& first = a.cells[chamber.cells.front()];
        for (int h = 0; h < num_h; ++h) {
            int s = first.signs[h];
            for (int c : chamber.cells)
                if (a.cells[c].signs[h] != s) { s = 0; break; }
            chamber.signs[h] = s;
        }
        // The union of the group must be exactly the cone cut out by the
        // constant signs; a mismatch would contradict convexity of classes.
        int completions = 0;
        for (const auto& cell : a.cells) {
            bool inside = true;
            for (int h = 0; h < num_h && inside; ++h)
                if (chamber.signs[h] != 0 && cell.signs[h] != chamber.signs[h])
                    inside = false;
            if (inside) ++completions;
        }
        if (completions != static_cast<int>(chamber.cells.size()))
            throw InternalError("chamber merge is not convex: " +
                                std::to_string(completions) + " cells complete " +
                                chamber.label);

        for (int h = 0; h < num_h; ++h)
            if (chamber.signs[h] != 0)
                chamber.closure_inequalities.emplace_back(a.dedup.hyperplanes[h].normal,
                                                          chamber.signs[h]);

        chamber.witness = a.cells[chamber.cells.front()].witness;
        chamber.forbidden = forbidden_from_signs(a.cells[chamber.cells.front()], a.dedup);
        chamber.unstable_divisors = chamber.cnf.singleton_arrows();
        for (int arrow : chamber.unstable_divisors) {
            Character chi(a.quiver.num_vertices(), 0);
            chi[a.quiver.arrows()[arrow].source] += 1;
            chi[a.quiver.arrows()[arrow].target] -= 1;
            chamber.divisor_characters.emplace_back(arrow, std::move(chi));
        }
        if (acyclic) {
            long long r = static_cast<long long>(chamber.unstable_divisors.size());
            chamber.picard = a.quiver.num_vertices() - (r + 1);
        }
        for (int c : chamber.cells)
            a.cell_to_chamber[c] = static_cast<int>(a.chambers.size());
        a.chambers.push_back(std::move(chamber));
    }
}

}  // namespace

QuiverAnalysis analyze(const Quiver& quiver, const DimensionVector& d) {
    ValidationReport validation = validate(quiver, d);
    if (!validation.analyzable())
        throw UnsupportedError("analysis requires a thin (0/1) dimension vector");

    QuiverAnalysis a;
    std::tie(a.quiver, a.d) = restrict_to_support(quiver, d);
    a.validation = validation;
    a.warnings = validation.warnings;
    a.basis = kernel_basis(a.d);
    a.classes = enumerate_subdimensions(a.quiver, a.d);

    a.class_forms.reserve(a.classes.size());
    for (const auto& c : a.classes)
        a.class_forms.push_back(restrict_form(c.slope_normal, a.basis));
    a.dedup = dedup_hyperplanes(a.class_forms);
    for (int i : a.dedup.dropped)
        a.warnings.push_back("class " + std::to_string(i + 1) +
                             " restricts to zero on d-perp; never a wall");

    a.cells = enumerate_chambers(a.dedup.hyperplanes, a.dim());
    for (auto& cell : a.cells) cell.arrangement = &a.dedup.hyperplanes;
    merge_chambers(a);
    a.stable = stable_matrix(a);
    for (size_t i = 0; i < a.chambers.size(); ++i)
        if (!a.stable[i][i])
            a.warnings.push_back("chamber " + a.chambers[i].label +
                                 " is not stable with respect to itself");
    return a;
}

bool stable_wrt(const QuiverAnalysis& analysis, const GitChamber& base,
                const GitChamber& candidate) {
    for (const auto& [arrow, chi] : base.divisor_characters) {
        RationalVector coords = analysis.kernel_coordinates(chi);
        if (!closure_contains(candidate.closure_inequalities, coords)) return false;
    }
    return true;
}

std::vector<std::vector<bool>> stable_matrix(const QuiverAnalysis& analysis) {
    const size_t n = analysis.chambers.size();
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            m[i][j] = stable_wrt(analysis, analysis.chambers[i], analysis.chambers[j]);
    return m;
}

std::vector<int> pseudoeffective_cone(const QuiverAnalysis& analysis, int base) {
    if (base < 0 || base >= static_cast<int>(analysis.chambers.size()))
        throw Error("no such chamber");
    std::vector<int> out;
    for (size_t j = 0; j < analysis.chambers.size(); ++j)
        if (analysis.stable[base][j]) out.push_back(static_cast<int>(j));
    return out;
}

PicardResult picard_general(const PicardFormulaInputs& in) {
    if (in.rk_character_group < 0 || in.component_count < 0 ||
        in.rk_units_invariant < 0 || in.rk_units_quotient < 0)
        throw Error("picard formula inputs must be nonnegative");
    PicardResult r;
    r.value = in.rk_character_group - (in.component_count + in.rk_units_invariant) +
              in.rk_units_quotient;
    r.consistent = r.value >= 0;
    return r;
}

PicardResult picard_mds_quotient(long long rho_y, long long rk_chi_g,
                                 long long component_count) {
    if (rho_y < 0 || rk_chi_g < 0 || component_count < 0)
        throw Error("picard formula inputs must be nonnegative");
    PicardResult r;
    r.value = rho_y + rk_chi_g - component_count;
    r.consistent = r.value >= 0;
    return r;
}

LocateResult locate_chamber(const QuiverAnalysis& analysis, const Character& theta) {
    RationalVector coords = analysis.kernel_coordinates(theta);
    LocateResult result;
    std::vector<int> signs;
    signs.reserve(analysis.dedup.hyperplanes.size());
    for (size_t h = 0; h < analysis.dedup.hyperplanes.size(); ++h) {
        Rational v = dot(coords, analysis.dedup.hyperplanes[h].normal);
        if (v == 0)
            result.hyperplanes.push_back(static_cast<int>(h));
        else
            signs.push_back(v > 0 ? 1 : -1);
    }
    if (!result.hyperplanes.empty()) {
        result.kind = LocateResult::Kind::OnWall;
        return result;
    }
    for (size_t c = 0; c < analysis.cells.size(); ++c) {
        if (analysis.cells[c].signs == signs) {
            result.cell = static_cast<int>(c);
            int chamber = analysis.cell_to_chamber[c];
            if (chamber >= 0) {
                result.kind = LocateResult::Kind::Chamber;
                result.chamber = chamber;
            } else {
                result.kind = LocateResult::Kind::NonAmpleCell;
            }
            return result;
        }
    }
    throw InternalError("point with full sign vector missing from the cell list");
}

OracleCheckResult oracle_check(const QuiverAnalysis& analysis) {
    OracleCheckResult result;
    const int arrows = analysis.quiver.num_arrows();
    const int n = analysis.quiver.num_vertices();
    if (arrows > kMaxOracleArrows)
        throw UnsupportedError("oracle check is exhaustive and limited to " +
                               std::to_string(kMaxOracleArrows) + " arrows");
    if (n > 20) throw UnsupportedError("oracle check is limited to 20 vertices");

    // The brute force is the same subset scan as king_semistability, with
    // the per-subset data hoisted out of the pattern loop.  Witnesses lie in
    // d-perp, so theta . n_e has the sign of the subset sum of theta.
    std::vector<Character> witnesses;
    for (size_t i = 0; i < analysis.chambers.size(); ++i) {
        witnesses.push_back(analysis.integral_witness(static_cast<int>(i)));
        if (dot(witnesses.back(), analysis.d.entries) != 0)
            throw InternalError("integral witness left d-perp");
    }

    const unsigned subsets = 1u << n;
    // arrows leaving each vertex subset
    std::vector<unsigned> leaving(subsets, 0);
    for (unsigned m = 1; m + 1 < subsets; ++m)
        for (int k = 0; k < arrows; ++k) {
            const auto& a = analysis.quiver.arrows()[k];
            if (((m >> a.source) & 1) && !((m >> a.target) & 1)) leaving[m] |= 1u << k;
        }
    std::vector<std::vector<long long>> subset_sum(analysis.chambers.size());
    for (size_t i = 0; i < analysis.chambers.size(); ++i) {
        subset_sum[i].assign(subsets, 0);
        for (unsigned m = 1; m < subsets; ++m) {
            unsigned low = m & (m - 1);
            int bit = __builtin_ctz(m);
            subset_sum[i][m] = subset_sum[i][low] + witnesses[i][bit];
        }
    }
    std::vector<std::vector<unsigned>> clause_masks(analysis.chambers.size());
    for (size_t i = 0; i < analysis.chambers.size(); ++i)
        for (const auto& clause : analysis.chambers[i].cnf.clauses) {
            unsigned mask = 0;
            for (int k : clause) mask |= 1u << k;
            clause_masks[i].push_back(mask);
        }

    auto king_at = [&](size_t chamber, unsigned pattern) {
        bool tie = false;
        for (unsigned m = 1; m + 1 < subsets; ++m) {
            if (pattern & leaving[m]) continue;  // some nonzero arrow leaves m
            long long s = subset_sum[chamber][m];
            if (s > 0) return Semistability::Unstable;
            if (s == 0) tie = true;
        }
        return tie ? Semistability::StrictlySemistable : Semistability::Stable;
    };

    const unsigned patterns = 1u << arrows;
    for (unsigned pattern = 0; pattern < patterns; ++pattern) {
        ++result.patterns_checked;
        for (size_t i = 0; i < analysis.chambers.size(); ++i) {
            bool cnf_ok = !analysis.chambers[i].cnf.has_empty_clause;
            for (unsigned mask : clause_masks[i])
                if (!(pattern & mask)) { cnf_ok = false; break; }
            Semistability king = king_at(i, pattern);
            if (cnf_ok != (king != Semistability::Unstable)) {
                result.ok = false;
                result.failures.push_back("chamber " + analysis.chambers[i].label +
                                          ", pattern mask " + std::to_string(pattern) +
                                          ": CNF says " + (cnf_ok ? "semistable" : "unstable") +
                                          ", King oracle says " + to_string(king));
            }
            if (pattern + 1 == patterns && king != Semistability::Stable) {
                // all-nonzero pattern: stability and semistability coincide
                result.ok = false;
                result.failures.push_back("chamber " + analysis.chambers[i].label +
                                          ": generic representation is " + to_string(king) +
                                          " instead of stable");
            }
        }
    }
    // Divisor soundness: x_alpha is forced nonzero exactly when killing it
    // destabilizes.
    for (size_t i = 0; i < analysis.chambers.size(); ++i) {
        const auto& chamber = analysis.chambers[i];
        for (int k = 0; k < arrows; ++k) {
            unsigned pattern = (patterns - 1) & ~(1u << k);
            bool unstable = king_at(i, pattern) == Semistability::Unstable;
            bool divisor = std::find(chamber.unstable_divisors.begin(),
                                     chamber.unstable_divisors.end(),
                                     k) != chamber.unstable_divisors.end();
            if (unstable != divisor) {
                result.ok = false;
                result.failures.push_back("chamber " + chamber.label + ", arrow " +
                                          analysis.quiver.arrows()[k].name +
                                          ": divisor flag and King oracle disagree");
            }
        }
    }
    return result;
}

}  // namespace quivergit
