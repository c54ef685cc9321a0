#include "quivergit/geometry.hpp"

#include <algorithm>
#include <map>

namespace quivergit {

IntVector restrict_form(const IntVector& ambient, const std::vector<IntVector>& basis) {
    IntVector form;
    form.reserve(basis.size());
    for (const auto& b : basis) form.push_back(dot(ambient, b));
    return form;
}

DedupResult dedup_hyperplanes(const std::vector<IntVector>& subspace_normals) {
    DedupResult result;
    result.index_map.assign(subspace_normals.size(), {-1, 0});
    std::map<IntVector, int> seen;
    for (size_t i = 0; i < subspace_normals.size(); ++i) {
        if (is_zero(subspace_normals[i])) {
            result.dropped.push_back(static_cast<int>(i));
            continue;
        }
        int sign = 1;
        IntVector canon = canonical_primitive(subspace_normals[i], &sign);
        auto [it, inserted] =
            seen.emplace(canon, static_cast<int>(result.hyperplanes.size()));
        if (inserted) result.hyperplanes.push_back({canon, {}});
        result.hyperplanes[it->second].sources.emplace_back(static_cast<int>(i), sign);
        result.index_map[i] = {it->second, sign};
    }
    return result;
}

namespace {

struct Constraint {
    RationalVector coeffs;
    bool strict;
};

// Bounds on variable k imposed by constraints whose leading variable is k,
// kept for back-substitution.
struct Level {
    std::vector<Constraint> bounds;
};

}  // namespace

std::optional<RationalVector> strict_feasible(
    const std::vector<RationalVector>& strict,
    const std::vector<RationalVector>& nonstrict, int dim) {
    std::vector<Constraint> current;
    current.reserve(strict.size() + nonstrict.size());
    for (const auto& c : strict) current.push_back({c, true});
    for (const auto& c : nonstrict) current.push_back({c, false});
    for (auto& c : current) {
        if (static_cast<int>(c.coeffs.size()) != dim)
            throw InternalError("strict_feasible: form arity mismatch");
    }

    std::vector<Level> levels(dim);
    for (int k = dim - 1; k >= 0; --k) {
        std::vector<Constraint> lower, upper, rest;
        for (auto& c : current) {
            const Rational& ck = c.coeffs[k];
            if (ck > 0)
                lower.push_back(std::move(c));
            else if (ck < 0)
                upper.push_back(std::move(c));
            else {
                c.coeffs.resize(k);
                rest.push_back(std::move(c));
            }
        }
        // Positive combinations eliminating x_k; strictness is inherited
        // from either parent.
        for (const auto& lo : lower) {
            for (const auto& up : upper) {
                Constraint combined;
                combined.strict = lo.strict || up.strict;
                combined.coeffs.resize(k);
                const Rational& lk = lo.coeffs[k];
                const Rational& uk = up.coeffs[k];
                bool zero = true;
                for (int i = 0; i < k; ++i) {
                    combined.coeffs[i] = lo.coeffs[i] * (-uk) + up.coeffs[i] * lk;
                    if (combined.coeffs[i] != 0) zero = false;
                }
                if (zero) {
                    if (combined.strict) return std::nullopt;  // 0 > 0
                    continue;
                }
                rest.push_back(std::move(combined));
            }
        }
        for (auto& c : lower) levels[k].bounds.push_back(std::move(c));
        for (auto& c : upper) levels[k].bounds.push_back(std::move(c));
        current = std::move(rest);
    }
    // Fully eliminated constraints are homogeneous, hence 0 ? 0.
    for (const auto& c : current)
        if (c.strict) return std::nullopt;

    RationalVector x(dim, Rational(0));
    for (int k = 0; k < dim; ++k) {
        bool has_lower = false, has_upper = false;
        bool lower_strict = false, upper_strict = false;
        Rational lo = 0, up = 0;
        for (const auto& c : levels[k].bounds) {
            Rational rest = 0;
            for (int i = 0; i < k; ++i) rest += c.coeffs[i] * x[i];
            Rational bound = -rest / c.coeffs[k];
            if (c.coeffs[k] > 0) {
                if (!has_lower || bound > lo) {
                    lo = bound;
                    lower_strict = c.strict;
                    has_lower = true;
                } else if (bound == lo) {
                    lower_strict = lower_strict || c.strict;
                }
            } else {
                if (!has_upper || bound < up) {
                    up = bound;
                    upper_strict = c.strict;
                    has_upper = true;
                } else if (bound == up) {
                    upper_strict = upper_strict || c.strict;
                }
            }
        }
        if (has_lower && has_upper) {
            if (lo > up || (lo == up && (lower_strict || upper_strict)))
                throw InternalError("strict_feasible: inconsistent back-substitution");
            x[k] = lo == up ? lo : (lo + up) / 2;
        } else if (has_lower) {
            x[k] = lo + 1;
        } else if (has_upper) {
            x[k] = up - 1;
        }
    }
    return x;
}

std::vector<std::pair<IntVector, int>> ChamberCell::closure_inequalities() const {
    if (!arrangement) throw InternalError("cell without arrangement back-pointer");
    std::vector<std::pair<IntVector, int>> out;
    out.reserve(signs.size());
    for (size_t k = 0; k < signs.size(); ++k)
        out.emplace_back((*arrangement)[k].normal, signs[k]);
    return out;
}

std::vector<ChamberCell> enumerate_chambers(const std::vector<Hyperplane>& hyperplanes,
                                            int dim) {
    const int n = static_cast<int>(hyperplanes.size());
    if (n > kMaxScanHyperplanes)
        throw UnsupportedError(
            "arrangement has " + std::to_string(n) + " hyperplanes, above the scan bound " +
            std::to_string(kMaxScanHyperplanes) +
            "; an incremental enumeration mode would be required");

    std::vector<ChamberCell> cells;
    std::vector<int> signs(n, 0);
    std::vector<RationalVector> forms;
    forms.reserve(n);

    // Lexicographic DFS over sign vectors (+ before -).  Pruning infeasible
    // prefixes yields exactly the cells the full scan would keep.
    auto descend = [&](auto&& self, int k) -> void {
        for (int sign : {+1, -1}) {
            signs[k] = sign;
            RationalVector form(hyperplanes[k].normal.begin(), hyperplanes[k].normal.end());
            if (sign < 0)
                for (auto& c : form) c = -c;
            forms.push_back(std::move(form));
            if (auto witness = strict_feasible(forms, {}, dim)) {
                if (k + 1 == n) {
                    ChamberCell cell;
                    cell.signs = signs;
                    cell.witness = std::move(*witness);
                    cells.push_back(std::move(cell));
                } else {
                    self(self, k + 1);
                }
            }
            forms.pop_back();
        }
        signs[k] = 0;
    };
    if (n == 0) {
        ChamberCell cell;
        cell.witness.assign(dim, Rational(0));
        cells.push_back(std::move(cell));
    } else {
        descend(descend, 0);
    }
    return cells;
}

bool closure_contains(const std::vector<std::pair<IntVector, int>>& inequalities,
                      const RationalVector& point) {
    for (const auto& [normal, sign] : inequalities) {
        Rational v = dot(point, normal);
        if (sign > 0 ? v < 0 : v > 0) return false;
    }
    return true;
}

SliceSpec::SliceSpec(RationalVector p_, RationalVector u1_, RationalVector u2_)
    : p(std::move(p_)), u1(std::move(u1_)), u2(std::move(u2_)) {
    if (p.size() != u1.size() || p.size() != u2.size())
        throw ParseError("slice vectors have mismatched lengths");
    if (is_zero(u1) || is_zero(u2)) throw ParseError("slice direction is zero");
    // u1, u2 independent and p outside their span; otherwise rays through
    // the origin could meet the slice more than once.
    RationalVector sol;
    if (solve_columns({u1}, u2, sol))
        throw ParseError("degenerate slice: u1 and u2 are proportional");
    if (solve_columns({u1, u2}, p, sol))
        throw ParseError("degenerate slice: p lies in the span of u1 and u2");
}

std::array<Rational, 3> slice_form(const IntVector& form, const SliceSpec& slice) {
    return {dot(slice.p, form), dot(slice.u1, form), dot(slice.u2, form)};
}

SliceObject restrict_to_slice(const IntVector& form, const SliceSpec& slice) {
    auto [c0, c1, c2] = slice_form(form, slice);
    SliceObject out;
    if (c1 == 0 && c2 == 0) {
        out.kind = c0 == 0 ? SliceObject::Kind::FullSlice : SliceObject::Kind::Absent;
        return out;
    }
    out.kind = SliceObject::Kind::Line;
    if (c2 != 0)
        out.a = {Rational(0), -c0 / c2};
    else
        out.a = {-c0 / c1, Rational(0)};
    IntVector dir = primitive_direction({c2, -c1});
    out.b = {Rational(dir[0]), Rational(dir[1])};
    return out;
}

SliceObject direction_on_slice(const RationalVector& chi, const SliceSpec& slice) {
    if (is_zero(chi)) throw Error("direction_on_slice: zero character");
    RationalVector coeffs;
    if (!solve_columns({slice.p, slice.u1, slice.u2}, chi, coeffs))
        throw Error("slice does not capture the direction: character outside span(p,u1,u2)");
    const Rational& cp = coeffs[0];
    SliceObject out;
    if (cp > 0) {
        out.kind = SliceObject::Kind::Point;
        out.a = {coeffs[1] / cp, coeffs[2] / cp};
    } else if (cp == 0) {
        out.kind = SliceObject::Kind::Direction;
        IntVector dir = primitive_direction({coeffs[1], coeffs[2]});
        out.b = {Rational(dir[0]), Rational(dir[1])};
    } else {
        out.kind = SliceObject::Kind::ExitsSlice;
        out.a = {coeffs[1] / cp, coeffs[2] / cp};
    }
    return out;
}

}  // namespace quivergit
