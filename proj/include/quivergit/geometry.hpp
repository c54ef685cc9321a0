#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "quivergit/rational.hpp"

namespace quivergit {

/*
  Exact rational geometry for a central hyperplane arrangement inside the
  lattice subspace d-perp, written in coordinates with respect to a fixed
  integer basis of that subspace.

  Feasibility of systems of strict homogeneous inequalities is decided by
  Fourier-Motzkin elimination with strict/nonstrict bookkeeping; the witness
  comes out of the back-substitution and is deterministic for a fixed input
  order.  Chambers of the arrangement are enumerated by a lexicographic scan
  over sign vectors with infeasible prefixes pruned, which produces the same
  list as the naive 2^n scan.
*/

// Hyperplane of the deduplicated arrangement.  The normal is a primitive
// integer form on subspace coordinates with the first nonzero entry
// positive.  sources lists (input index, relative sign) of every input
// normal that restricts to this hyperplane.
struct Hyperplane {
    IntVector normal;
    std::vector<std::pair<int, int>> sources;
};

struct DedupResult {
    std::vector<Hyperplane> hyperplanes;
    // input index -> (hyperplane index, relative sign); hyperplane -1 when
    // the input restricts to zero on the subspace.
    std::vector<std::pair<int, int>> index_map;
    std::vector<int> dropped;  // inputs with zero restriction
};

// Open full-dimensional cone of the arrangement: one sign per hyperplane and
// an interior rational witness.
struct ChamberCell {
    std::vector<int> signs;  // +1 / -1 per hyperplane
    RationalVector witness;
    std::vector<std::pair<IntVector, int>> closure_inequalities() const;
    const std::vector<Hyperplane>* arrangement = nullptr;
};

// Pairing of an ambient integer vector against a subspace basis; the result
// is the induced linear form in subspace coordinates.
IntVector restrict_form(const IntVector& ambient,
                        const std::vector<IntVector>& basis);

DedupResult dedup_hyperplanes(const std::vector<IntVector>& subspace_normals);

// Exact point with every strict form positive and every nonstrict form
// nonnegative, or nothing when the system is infeasible.
std::optional<RationalVector> strict_feasible(
    const std::vector<RationalVector>& strict,
    const std::vector<RationalVector>& nonstrict, int dim);

inline constexpr int kMaxScanHyperplanes = 24;

std::vector<ChamberCell> enumerate_chambers(const std::vector<Hyperplane>& hyperplanes,
                                            int dim);

bool closure_contains(const std::vector<std::pair<IntVector, int>>& inequalities,
                      const RationalVector& point);

// Affine 2-plane x(s,t) = p + s u1 + t u2 inside the subspace, in subspace
// coordinates.  Rays through the origin meet it at most once because p is
// not in the span of u1, u2.
struct SliceSpec {
    RationalVector p, u1, u2;
    SliceSpec(RationalVector p_, RationalVector u1_, RationalVector u2_);
};

struct SliceObject {
    enum class Kind { Line, FullSlice, Absent, Point, Direction, ExitsSlice };
    Kind kind = Kind::Absent;
    std::array<Rational, 2> a{};  // line anchor / point / exit ray point
    std::array<Rational, 2> b{};  // line direction / direction
};

// Restriction of { form = 0 } to the slice: coefficients (c0, c1, c2) of
// c0 + c1 s + c2 t.
std::array<Rational, 3> slice_form(const IntVector& form, const SliceSpec& slice);

// Line (orientation follows the sign of `form`), FullSlice, or Absent.
SliceObject restrict_to_slice(const IntVector& form, const SliceSpec& slice);

// Limit on the slice of translation by chi: decompose chi over (p, u1, u2).
// Positive p-coefficient gives a Point, zero gives a Direction, negative is
// flagged as leaving the slice side.  Throws when chi is not in the span.
SliceObject direction_on_slice(const RationalVector& chi, const SliceSpec& slice);

}  // namespace quivergit
