#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quivergit/geometry.hpp"
#include "quivergit/quiver.hpp"

namespace quivergit {

/*
  From the arrangement to GIT data.

  Every open cell of the sign-vector arrangement determines the set of
  forbidden sub-dimension classes (positive pairing at the witness) and from
  it the semistable locus as a positive CNF over the arrows.  Distinct cells
  can share the same locus: crossing a hyperplane whose clause is subsumed
  does not change the CNF.  A GIT chamber is the union of the cells with one
  fixed locus; since GIT classes are convex and rational polyhedral, that
  union is an open convex cone cut out by the hyperplanes whose sign is
  constant across the group, which is what the merge below computes and
  verifies.

  Cells whose locus is empty (some always-occurring class is forbidden) are
  not G-ample; their union is a single GIT class but generally not convex,
  so they are reported individually and excluded from the stable-chamber
  machinery.
*/

// Positive CNF over arrow indices: each clause reads "at least one of these
// arrows is nonzero".  Canonical form is subsumption-free with clauses
// sorted by size, then lexicographically.  An empty clause subsumes
// everything, so a CNF with empty semistable locus is stored as
// has_empty_clause with no other clauses.
struct SemistableCNF {
    std::vector<std::vector<int>> clauses;
    bool has_empty_clause = false;

    static SemistableCNF from_clauses(std::vector<std::vector<int>> raw);
    bool evaluate(const ThinRepPattern& pattern) const;
    std::vector<int> singleton_arrows() const;
    std::string to_string(const Quiver& quiver) const;

    bool operator==(const SemistableCNF&) const = default;
    bool operator<(const SemistableCNF& other) const;
};

// A GIT chamber: a maximal open class of stability conditions with one
// semistable locus, together with the report data attached to its quotient.
struct GitChamber {
    std::string label;
    std::vector<int> cells;       // member cells, ascending
    std::vector<int> signs;       // per hyperplane: +1/-1 constant, 0 varying
    RationalVector witness;       // witness of the least member cell
    std::vector<int> forbidden;   // class indices positive at the witness
    SemistableCNF cnf;
    bool g_ample = false;
    std::vector<int> unstable_divisors;  // arrows forced nonzero (singleton clauses)
    std::vector<std::pair<int, Character>> divisor_characters;  // arrow, eps_src - eps_tgt
    std::optional<long long> picard;

    std::vector<std::pair<IntVector, int>> closure_inequalities;  // constant signs only
};

// Full pipeline state for one quiver + thin dimension vector.
struct QuiverAnalysis {
    Quiver quiver;  // support restriction
    DimensionVector d;
    ValidationReport validation;
    std::vector<IntVector> basis;  // kernel lattice basis of d-perp
    std::vector<SubdimensionClass> classes;
    std::vector<IntVector> class_forms;  // kernel restriction of each slope normal
    DedupResult dedup;
    std::vector<ChamberCell> cells;
    std::vector<GitChamber> chambers;   // G-ample, labeled C1, C2, ...
    std::vector<int> nonample_cells;    // cells with empty semistable locus
    std::vector<int> cell_to_chamber;   // chamber index or -1
    std::vector<std::vector<bool>> stable;  // stable[i][j]: chamber j stable wrt base i
    std::vector<std::string> warnings;

    int dim() const { return static_cast<int>(basis.size()); }
    // Coordinates of theta (over the restricted vertex set) with respect to
    // the kernel basis; throws with the offending pairing value when theta
    // is not in d-perp.
    RationalVector kernel_coordinates(const Character& theta) const;
    // Integer stability condition interior to the chamber: the ambient
    // witness with denominators cleared.
    Character integral_witness(int chamber) const;
};

QuiverAnalysis analyze(const Quiver& quiver, const DimensionVector& d);

// Class indices with positive pairing at the witness.  Throws InternalError
// if some class pairs to zero: witnesses must be off every wall.
std::vector<int> forbidden_subdims(const RationalVector& witness,
                                   const std::vector<IntVector>& class_forms);

SemistableCNF build_cnf(const std::vector<int>& forbidden,
                        const std::vector<SubdimensionClass>& classes);

// True iff every divisor character of the base lies in the closure of the
// candidate chamber.  Translation by a closure element keeps interior points
// interior, so this matches the quantified definition of a stable class.
bool stable_wrt(const QuiverAnalysis& analysis, const GitChamber& base,
                const GitChamber& candidate);

std::vector<std::vector<bool>> stable_matrix(const QuiverAnalysis& analysis);

// G-ample chambers stable with respect to the base: the chamber
// decomposition of the pseudoeffective cone of the base quotient.
std::vector<int> pseudoeffective_cone(const QuiverAnalysis& analysis, int base);

struct PicardFormulaInputs {
    long long rk_character_group = 0;
    long long component_count = 0;
    long long rk_units_invariant = 0;
    long long rk_units_quotient = 0;
};

struct PicardResult {
    long long value = 0;
    bool consistent = true;  // false when the formula comes out negative
};

// rk chi(G) - (|Z/G| + rk E(X)^G) + rk E(Y)
PicardResult picard_general(const PicardFormulaInputs& inputs);

// rho(Y) + rk chi(G) - |Z(V)/G|, for geometric quotients of Mori dream spaces.
PicardResult picard_mds_quotient(long long rho_y, long long rk_chi_g,
                                 long long component_count);

struct LocateResult {
    enum class Kind { Chamber, NonAmpleCell, OnWall };
    Kind kind = Kind::OnWall;
    int chamber = -1;              // Kind::Chamber
    int cell = -1;                 // Kind::Chamber / Kind::NonAmpleCell
    std::vector<int> hyperplanes;  // Kind::OnWall
};

LocateResult locate_chamber(const QuiverAnalysis& analysis, const Character& theta);

// Exhaustive King-vs-CNF equivalence check over all zero/nonzero patterns,
// plus stability coincidence and divisor soundness at every chamber witness.
struct OracleCheckResult {
    bool ok = true;
    long long patterns_checked = 0;
    std::vector<std::string> failures;
};

OracleCheckResult oracle_check(const QuiverAnalysis& analysis);

inline constexpr int kMaxOracleArrows = 12;

}  // namespace quivergit
