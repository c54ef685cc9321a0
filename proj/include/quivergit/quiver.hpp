#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quivergit/rational.hpp"

namespace quivergit {

/*
  Quivers with thin (0/1) dimension vectors.

  A representation of a quiver assigns a vector space of dimension d_i to
  every vertex i and a linear map to every arrow.  For thin d the maps are
  scalars, a subrepresentation is determined by its support (a vertex subset
  with no nonzero arrow leaving it), and King's slope criterion for a
  stability condition theta turns into sign conditions on the pairings
  theta . n_e over the proper sub-dimension vectors e, where

      n_e = (sum d) e - (sum e) d.

  theta-semistability of the class e is theta . n_e <= 0; the classes with
  positive pairing are the ones a semistable representation must avoid.
*/

struct Arrow {
    std::string name;
    int source = 0;
    int target = 0;
};

class Quiver {
public:
    Quiver() = default;
    // Throws ParseError on duplicate names or dangling endpoints.
    Quiver(std::vector<std::string> vertices,
           std::vector<std::tuple<std::string, std::string, std::string>> arrows);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }

    int vertex_index(const std::string& name) const;  // -1 if unknown
    int arrow_index(const std::string& name) const;   // -1 if unknown

    bool has_oriented_cycle() const;

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::map<std::string, int> vertex_index_;
    std::map<std::string, int> arrow_index_;
};

struct DimensionVector {
    IntVector entries;

    bool is_thin() const;
    bool is_sincere() const;
    // gcd of the nonzero entries is 1; false for the zero vector.
    bool is_coprime() const;
    long long total() const;
};

// Element of Z^{Q_0}; identified with a character of the acting group.
using Character = IntVector;

// theta lies in d-perp iff the pairing vanishes.
bool in_d_perp(const Character& theta, const DimensionVector& d);

// One proper nonzero sub-dimension class of a thin sincere d.
struct SubdimensionClass {
    IntVector e;                       // 0/1 vector, proper and nonzero
    std::vector<int> boundary_arrows;  // arrows leaving supp(e), by index
    bool always_occurs = false;        // no arrow leaves the support
    IntVector slope_normal;            // n_e = (sum d) e - (sum e) d
};

// Zero/nonzero pattern of a thin representation, indexed by arrow.
struct ThinRepPattern {
    std::vector<bool> nonzero;
};

struct ValidationReport {
    bool thin = false;
    bool sincere = false;
    bool coprime = false;
    bool acyclic = false;
    std::vector<std::string> warnings;
    // The analysis pipeline only accepts thin dimension vectors.
    bool analyzable() const { return thin; }
};

enum class Semistability { Stable, StrictlySemistable, Unstable };

const char* to_string(Semistability s);

ValidationReport validate(const Quiver& quiver, const DimensionVector& d);

// Deletes vertices with d_i = 0 together with their arrows.  Throws on empty
// support.
std::pair<Quiver, DimensionVector> restrict_to_support(const Quiver& quiver,
                                                       const DimensionVector& d);

// Integer basis of the rank n-1 lattice { theta : theta . d = 0 }, built by
// a gcd chain over the nonzero entries; deterministic in the input order.
std::vector<IntVector> kernel_basis(const DimensionVector& d);

// All proper nonzero sub-dimension classes of a thin sincere d, ordered by
// support size, then lexicographically on the 0/1 vector.
std::vector<SubdimensionClass> enumerate_subdimensions(const Quiver& quiver,
                                                       const DimensionVector& d);

// Brute force over all vertex subsets; the reference oracle for the chamber
// pipeline.
Semistability king_semistability(const Quiver& quiver, const DimensionVector& d,
                                 const ThinRepPattern& pattern,
                                 const Character& theta);

}  // namespace quivergit
