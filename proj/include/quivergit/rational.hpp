#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "quivergit/errors.hpp"

namespace quivergit {

// All geometry in this library is exact.  Rationals are arbitrary precision;
// integer vectors (characters, slope normals, kernel basis vectors) stay in
// machine integers since their entries are bounded by small multiples of the
// vertex count.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;
using IntVector = std::vector<long long>;

long long vec_gcd(const IntVector& v);

// Divide by the gcd of the entries, keeping orientation.  Zero stays zero.
IntVector primitive(IntVector v);

// Primitive with the first nonzero entry made positive.  *flipped is set to
// -1 if the orientation was reversed, +1 otherwise.
IntVector canonical_primitive(IntVector v, int* flipped = nullptr);

long long dot(const IntVector& a, const IntVector& b);
Rational dot(const RationalVector& a, const IntVector& b);
Rational dot(const RationalVector& a, const RationalVector& b);

bool is_zero(const IntVector& v);
bool is_zero(const RationalVector& v);

RationalVector to_rational(const IntVector& v);

// Primitive integer vector positively proportional to a rational vector.
IntVector primitive_direction(const RationalVector& v);

// Solves A x = rhs by exact Gaussian elimination, where A is given by
// columns.  Returns false when the system is inconsistent; when the kernel is
// nontrivial the solution with free variables set to zero is returned.
bool solve_columns(const std::vector<RationalVector>& columns,
                   const RationalVector& rhs, RationalVector& solution);

// "p/q" or plain integer; used by the request parser.
Rational parse_rational(const std::string& text);

std::string format_rational(const Rational& x);

// Fixed six decimal digits, round half away from zero.  Only the SVG emitter
// is allowed to use this.
std::string decimal6(const Rational& x);

}  // namespace quivergit
