#include "quivergit/quiver.hpp"

#include <algorithm>
#include <numeric>

namespace quivergit {

Quiver::Quiver(std::vector<std::string> vertices,
               std::vector<std::tuple<std::string, std::string, std::string>> arrows)
    : vertices_(std::move(vertices)) {
    for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
        if (vertices_[i].empty()) throw ParseError("empty vertex name");
        if (!vertex_index_.emplace(vertices_[i], i).second)
            throw ParseError("duplicate vertex '" + vertices_[i] + "'");
    }
    for (const auto& [name, src, tgt] : arrows) {
        if (name.empty()) throw ParseError("empty arrow name");
        auto s = vertex_index_.find(src);
        if (s == vertex_index_.end())
            throw ParseError("arrow '" + name + "' uses undeclared vertex '" + src + "'");
        auto t = vertex_index_.find(tgt);
        if (t == vertex_index_.end())
            throw ParseError("arrow '" + name + "' uses undeclared vertex '" + tgt + "'");
        int idx = static_cast<int>(arrows_.size());
        if (!arrow_index_.emplace(name, idx).second)
            throw ParseError("duplicate arrow '" + name + "'");
        arrows_.push_back({name, s->second, t->second});
    }
}

int Quiver::vertex_index(const std::string& name) const {
    auto it = vertex_index_.find(name);
    return it == vertex_index_.end() ? -1 : it->second;
}

int Quiver::arrow_index(const std::string& name) const {
    auto it = arrow_index_.find(name);
    return it == arrow_index_.end() ? -1 : it->second;
}

bool Quiver::has_oriented_cycle() const {
    // Depth-first search with the usual white/grey/black coloring.
    const int n = num_vertices();
    std::vector<std::vector<int>> out(n);
    for (const auto& a : arrows_) {
        if (a.source == a.target) return true;
        out[a.source].push_back(a.target);
    }
    std::vector<int> color(n, 0);
    std::vector<std::pair<int, size_t>> stack;
    for (int start = 0; start < n; ++start) {
        if (color[start] != 0) continue;
        stack.push_back({start, 0});
        color[start] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < out[v].size()) {
                int w = out[v][next++];
                if (color[w] == 1) return true;
                if (color[w] == 0) {
                    color[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

bool DimensionVector::is_thin() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](long long x) { return x == 0 || x == 1; });
}

bool DimensionVector::is_sincere() const {
    return !entries.empty() &&
           std::all_of(entries.begin(), entries.end(), [](long long x) { return x > 0; });
}

bool DimensionVector::is_coprime() const {
    long long g = 0;
    for (long long x : entries) g = std::gcd(g, x < 0 ? -x : x);
    return g == 1;
}

long long DimensionVector::total() const {
    return std::accumulate(entries.begin(), entries.end(), 0LL);
}

bool in_d_perp(const Character& theta, const DimensionVector& d) {
    return dot(theta, d.entries) == 0;
}

const char* to_string(Semistability s) {
    switch (s) {
        case Semistability::Stable: return "stable";
        case Semistability::StrictlySemistable: return "strictly-semistable";
        case Semistability::Unstable: return "unstable";
    }
    return "?";
}

ValidationReport validate(const Quiver& quiver, const DimensionVector& d) {
    if (static_cast<int>(d.entries.size()) != quiver.num_vertices())
        throw ParseError("dimension vector has " + std::to_string(d.entries.size()) +
                         " entries for " + std::to_string(quiver.num_vertices()) +
                         " vertices");
    for (long long x : d.entries)
        if (x < 0) throw ParseError("negative dimension vector entry");
    ValidationReport report;
    report.thin = d.is_thin();
    report.sincere = d.is_sincere();
    report.coprime = d.is_coprime();
    report.acyclic = !quiver.has_oriented_cycle();
    if (!report.acyclic)
        report.warnings.push_back("oriented cycle: quotient not projective");
    if (!report.thin)
        report.warnings.push_back("dimension vector is not thin; analysis unsupported");
    return report;
}

std::pair<Quiver, DimensionVector> restrict_to_support(const Quiver& quiver,
                                                       const DimensionVector& d) {
    if (static_cast<int>(d.entries.size()) != quiver.num_vertices())
        throw ParseError("dimension vector size mismatch");
    std::vector<std::string> vertices;
    for (int i = 0; i < quiver.num_vertices(); ++i)
        if (d.entries[i] != 0) vertices.push_back(quiver.vertices()[i]);
    if (vertices.empty()) throw UnsupportedError("dimension vector has empty support");
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    for (const auto& a : quiver.arrows()) {
        if (d.entries[a.source] == 0 || d.entries[a.target] == 0) continue;
        arrows.emplace_back(a.name, quiver.vertices()[a.source], quiver.vertices()[a.target]);
    }
    IntVector entries;
    for (long long x : d.entries)
        if (x != 0) entries.push_back(x);
    return {Quiver(std::move(vertices), std::move(arrows)), DimensionVector{entries}};
}

std::vector<IntVector> kernel_basis(const DimensionVector& d) {
    const int n = static_cast<int>(d.entries.size());
    if (is_zero(d.entries)) throw UnsupportedError("kernel basis of the zero vector");

    // Extended gcd, deterministic: egcd(a, 0) = (a, 1, 0).
    auto egcd = [](long long a, long long b) {
        long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
        while (b != 0) {
            long long q = a / b;
            std::tie(a, b) = std::make_pair(b, a - q * b);
            std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
            std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
        }
        return std::array<long long, 3>{a, x0, y0};
    };

    std::vector<IntVector> basis;
    // Running combination u with u . d = g over the nonzero entries seen so
    // far; each new nonzero entry contributes one kernel vector.
    IntVector u(n, 0);
    long long g = 0;
    for (int j = 0; j < n; ++j) {
        long long dj = d.entries[j];
        if (dj == 0) {
            IntVector v(n, 0);
            v[j] = 1;
            basis.push_back(std::move(v));
            continue;
        }
        if (g == 0) {
            u[j] = 1;
            g = dj;
            continue;
        }
        auto [ng, s, t] = egcd(g, dj);
        IntVector v(n, 0);
        for (int i = 0; i < n; ++i) v[i] = u[i] * (dj / ng);
        v[j] -= g / ng;
        basis.push_back(canonical_primitive(std::move(v)));
        for (int i = 0; i < n; ++i) u[i] *= s;
        u[j] += t;
        g = ng;
    }
    return basis;
}

std::vector<SubdimensionClass> enumerate_subdimensions(const Quiver& quiver,
                                                       const DimensionVector& d) {
    if (!d.is_thin()) throw UnsupportedError("sub-dimension enumeration requires thin d");
    if (!d.is_sincere())
        throw UnsupportedError("sub-dimension enumeration requires sincere d; "
                               "restrict to the support first");
    const int n = quiver.num_vertices();
    if (n > 24) throw UnsupportedError("too many vertices for subset enumeration");
    const long long total = d.total();

    std::vector<unsigned> masks;
    for (unsigned m = 1; m + 1 < (1u << n); ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [n](unsigned a, unsigned b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        if (pa != pb) return pa < pb;
        // Lexicographic on the 0/1 vector (e_0, e_1, ...).
        for (int i = 0; i < n; ++i) {
            unsigned ba = (a >> i) & 1, bb = (b >> i) & 1;
            if (ba != bb) return ba < bb;
        }
        return false;
    });

    std::vector<SubdimensionClass> classes;
    classes.reserve(masks.size());
    for (unsigned m : masks) {
        SubdimensionClass c;
        c.e.assign(n, 0);
        for (int i = 0; i < n; ++i) c.e[i] = (m >> i) & 1;
        for (int k = 0; k < quiver.num_arrows(); ++k) {
            const auto& a = quiver.arrows()[k];
            if (c.e[a.source] == 1 && c.e[a.target] == 0) c.boundary_arrows.push_back(k);
        }
        c.always_occurs = c.boundary_arrows.empty();
        long long size = std::accumulate(c.e.begin(), c.e.end(), 0LL);
        c.slope_normal.assign(n, 0);
        for (int i = 0; i < n; ++i)
            c.slope_normal[i] = total * c.e[i] - size * d.entries[i];
        classes.push_back(std::move(c));
    }
    return classes;
}

Semistability king_semistability(const Quiver& quiver, const DimensionVector& d,
                                 const ThinRepPattern& pattern, const Character& theta) {
    if (!d.is_thin() || !d.is_sincere())
        throw UnsupportedError("king_semistability requires thin sincere d");
    if (static_cast<int>(pattern.nonzero.size()) != quiver.num_arrows())
        throw ParseError("pattern does not cover every arrow");
    const int n = quiver.num_vertices();
    const long long total = d.total();
    const long long pairing = dot(theta, d.entries);

    bool tie = false;
    for (unsigned m = 1; m + 1 < (1u << n); ++m) {
        // supp(e) carries a subrepresentation iff no nonzero arrow leaves it.
        bool closed = true;
        for (int k = 0; k < quiver.num_arrows() && closed; ++k) {
            const auto& a = quiver.arrows()[k];
            if (pattern.nonzero[k] && ((m >> a.source) & 1) && !((m >> a.target) & 1))
                closed = false;
        }
        if (!closed) continue;
        long long size = __builtin_popcount(m);
        long long theta_e = 0;
        for (int i = 0; i < n; ++i)
            if ((m >> i) & 1) theta_e += theta[i];
        // theta . n_e with n_e = total*e - size*d.
        long long slope = total * theta_e - size * pairing;
        if (slope > 0) return Semistability::Unstable;
        if (slope == 0) tie = true;
    }
    return tie ? Semistability::StrictlySemistable : Semistability::Stable;
}

}  // namespace quivergit
