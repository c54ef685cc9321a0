#include "quivergit/rational.hpp"

#include <cstdlib>
#include <numeric>

namespace quivergit {

long long vec_gcd(const IntVector& v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

IntVector primitive(IntVector v) {
    long long g = vec_gcd(v);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

IntVector canonical_primitive(IntVector v, int* flipped) {
    v = primitive(std::move(v));
    int sign = 1;
    for (long long x : v) {
        if (x != 0) {
            sign = x > 0 ? 1 : -1;
            break;
        }
    }
    if (sign < 0)
        for (auto& x : v) x = -x;
    if (flipped) *flipped = sign;
    return v;
}

long long dot(const IntVector& a, const IntVector& b) {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const RationalVector& a, const IntVector& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const IntVector& v) {
    for (long long x : v)
        if (x != 0) return false;
    return true;
}

bool is_zero(const RationalVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

RationalVector to_rational(const IntVector& v) {
    return RationalVector(v.begin(), v.end());
}

IntVector primitive_direction(const RationalVector& v) {
    // Clear denominators, then divide by the gcd of the numerators.
    BigInt lcm = 1;
    for (const auto& x : v) {
        BigInt den = denominator(x);
        lcm = lcm / gcd(lcm, den) * den;
    }
    std::vector<BigInt> scaled;
    scaled.reserve(v.size());
    BigInt g = 0;
    for (const auto& x : v) {
        BigInt n = numerator(x) * (lcm / denominator(x));
        g = gcd(g, abs(n));
        scaled.push_back(n);
    }
    IntVector out(v.size(), 0);
    if (g == 0) return out;
    for (size_t i = 0; i < v.size(); ++i)
        out[i] = static_cast<long long>(scaled[i] / g);
    return out;
}

bool solve_columns(const std::vector<RationalVector>& columns,
                   const RationalVector& rhs, RationalVector& solution) {
    const size_t cols = columns.size();
    const size_t rows = rhs.size();
    // Augmented matrix, row major.
    std::vector<RationalVector> m(rows, RationalVector(cols + 1, Rational(0)));
    for (size_t j = 0; j < cols; ++j) {
        if (columns[j].size() != rows)
            throw InternalError("solve_columns: column size mismatch");
        for (size_t i = 0; i < rows; ++i) m[i][j] = columns[j][i];
    }
    for (size_t i = 0; i < rows; ++i) m[i][cols] = rhs[i];

    std::vector<int> pivot_of_col(cols, -1);
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pr = row;
        while (pr < rows && m[pr][col] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(m[row], m[pr]);
        Rational inv = m[row][col];
        for (size_t j = col; j <= cols; ++j) m[row][j] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (size_t j = col; j <= cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivot_of_col[col] = static_cast<int>(row);
        ++row;
    }
    for (size_t i = row; i < rows; ++i)
        if (m[i][cols] != 0) return false;
    solution.assign(cols, Rational(0));
    for (size_t col = 0; col < cols; ++col)
        if (pivot_of_col[col] >= 0) solution[col] = m[pivot_of_col[col]][cols];
    return true;
}

Rational parse_rational(const std::string& text) {
    size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw ParseError("not a rational number: '" + text + "'");
    }
}

std::string format_rational(const Rational& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) s += "/" + denominator(x).str();
    return s;
}

std::string decimal6(const Rational& x) {
    const BigInt scale = 1000000;
    bool neg = x < 0;
    Rational y = neg ? -x : x;
    BigInt t = numerator(y) * scale;
    BigInt q = t / denominator(y);
    BigInt r = t % denominator(y);
    if (2 * r >= denominator(y)) ++q;
    BigInt ip = q / scale;
    BigInt fp = q % scale;
    std::string frac = fp.str();
    frac.insert(frac.begin(), 6 - frac.size(), '0');
    std::string out = ip.str() + "." + frac;
    if (neg && q != 0) out.insert(out.begin(), '-');
    return out;
}

}  // namespace quivergit
