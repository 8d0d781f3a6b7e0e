#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library.

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

inline std::uint64_t test_seed() {
    if (const char* s = std::getenv("IMG_TEST_SEED")) return std::strtoull(s, nullptr, 10);
    return 20240611;
}

// The f1 recursion as raw tables: generator 0,1,2 = a,b,c; a letter is
// (generator, +1 | -1). Permutations are 0-based image arrays.
struct RawRecursion {
    int d = 6;
    std::vector<std::vector<int>> perm;
    std::vector<std::vector<std::vector<std::pair<int, int>>>> sec;

    static RawRecursion f1() {
        RawRecursion r;
        // a = <b', 1, b, c', 1, c> (1 3)(2 5)(4 6)
        r.perm.push_back({2, 4, 0, 5, 1, 3});
        r.sec.push_back({{{1, -1}}, {}, {{1, 1}}, {{2, -1}}, {}, {{2, 1}}});
        // b = <b, b', 1, c, c', 1> (2 3 5 6)
        r.perm.push_back({0, 2, 4, 3, 5, 1});
        r.sec.push_back({{{1, 1}}, {{1, -1}}, {}, {{2, 1}}, {{2, -1}}, {}});
        // c = <1,1,1,1,1,1> (1 2 3)(4 5 6)
        r.perm.push_back({1, 2, 0, 4, 5, 3});
        r.sec.push_back({{}, {}, {}, {}, {}, {}});
        return r;
    }

    int inv_perm(int g, int y) const {
        for (int x = 0; x < d; ++x)
            if (perm[g][x] == y) return x;
        return -1;
    }

    // One letter on a word, recursively.
    std::vector<int> act_letter(std::pair<int, int> l, std::vector<int> w) const {
        if (w.empty()) return w;
        int x = w[0];
        std::vector<int> rest(w.begin() + 1, w.end());
        if (l.second > 0) {
            for (auto s : sec[l.first][x]) rest = act_letter(s, rest);
            rest.insert(rest.begin(), perm[l.first][x]);
        } else {
            // (g^-1)|_x = (g|_{x'})^-1 where x' maps to x, letters reversed.
            int xp = inv_perm(l.first, x);
            const auto& s = sec[l.first][xp];
            for (auto it = s.rbegin(); it != s.rend(); ++it) rest = act_letter({it->first, -it->second}, rest);
            rest.insert(rest.begin(), xp);
        }
        return rest;
    }

    std::vector<int> act(const std::vector<std::pair<int, int>>& word, std::vector<int> w) const {
        for (auto l : word) w = act_letter(l, w);
        return w;
    }
};

// Word as signed letters from a compact string like "ab4c'" over a, b, c.
inline std::vector<std::pair<int, int>> raw_word(const std::string& s) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < s.size();) {
        int g = s[i] - 'a';
        ++i;
        int sign = 1;
        if (i < s.size() && s[i] == '\'') {
            sign = -1;
            ++i;
        }
        int k = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) k = 10 * k + (s[i++] - '0');
        if (k == 0) k = 1;
        for (int j = 0; j < k; ++j) out.push_back({g, sign});
    }
    return out;
}

// Components of an undirected graph given by successor arrays, by BFS.
inline std::size_t bfs_components(const std::vector<std::vector<std::uint32_t>>& succ, std::size_t n) {
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (const auto& s : succ)
        for (std::size_t v = 0; v < n; ++v) {
            adj[v].push_back(s[v]);
            adj[s[v]].push_back(static_cast<std::uint32_t>(v));
        }
    std::vector<bool> seen(n, false);
    std::size_t comps = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++comps;
        std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(s)};
        seen[s] = true;
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (auto u : adj[queue[i]])
                if (!seen[u]) {
                    seen[u] = true;
                    queue.push_back(u);
                }
    }
    return comps;
}

// Minimal DOT reader for `"x" -> "y" [label="g"];` and `"x";` statements.
struct DotGraph {
    std::set<std::string> nodes;
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    bool ok = false;
};

inline DotGraph parse_dot(const std::string& text) {
    DotGraph g;
    static const std::regex header(R"(^\s*digraph\s+\w+\s*\{)");
    static const std::regex edge(R"re(^\s*"([^"]*)"\s*->\s*"([^"]*)"\s*\[label="([^"]*)"\];\s*$)re");
    static const std::regex node(R"re(^\s*"([^"]*)";\s*$)re");
    static const std::regex comment(R"(^\s*(//.*)?$)");
    std::size_t pos = 0;
    bool opened = false, closed = false;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        std::smatch m;
        if (!opened) {
            if (!std::regex_search(line, header)) return g;
            opened = true;
        } else if (std::regex_match(line, m, edge)) {
            g.edges.emplace_back(m[1], m[2], m[3]);
            g.nodes.insert(m[1]);
            g.nodes.insert(m[2]);
        } else if (std::regex_match(line, m, node)) {
            g.nodes.insert(m[1]);
        } else if (line.find('}') != std::string::npos) {
            closed = true;
        } else if (!std::regex_match(line, comment)) {
            return g;
        }
    }
    g.ok = opened && closed;
    return g;
}

// Fractions on long long with explicit gcd, kept apart from the library's
// rational type.
struct Frac {
    long long n = 0, d = 1;
    Frac(long long a = 0, long long b = 1) : n(a), d(b) { norm(); }
    void norm() {
        if (d < 0) n = -n, d = -d;
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) n /= g, d /= g;
    }
    Frac operator+(const Frac& o) const { return Frac(n * o.d + o.n * d, d * o.d); }
    Frac operator-(const Frac& o) const { return Frac(n * o.d - o.n * d, d * o.d); }
    Frac operator*(const Frac& o) const { return Frac(n * o.n, d * o.d); }
    Frac operator/(const Frac& o) const { return Frac(n * o.d, d * o.n); }
    bool operator==(const Frac& o) const { return n == o.n && d == o.d; }
    bool operator>=(const Frac& o) const { return n * o.d >= o.n * d; }
    bool zero() const { return n == 0; }
};

// Dense polynomials over Frac, coefficient i of z^i.
using Poly = std::vector<Frac>;

inline void trim(Poly& p) {
    while (p.size() > 1 && p.back().zero()) p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    trim(r);
    return r;
}

inline Poly add(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = a[i] + b[i];
    trim(a);
    return a;
}

inline Poly scale(Poly a, Frac c) {
    for (auto& x : a) x = x * c;
    trim(a);
    return a;
}

// Quotient and remainder by a monic divisor.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& m) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    if (a.size() < m.size()) return {Poly{Frac(0)}, a};
    Poly q(a.size() - dm);
    for (std::size_t s = q.size(); s-- > 0;) {
        Frac c = a[s + dm];
        q[s] = c;
        for (std::size_t j = 0; j <= dm; ++j) a[s + j] = a[s + j] - c * m[j];
    }
    a.resize(dm == 0 ? 1 : dm);
    trim(a);
    return {q, a};
}

inline bool is_zero(const Poly& p) { return p.size() == 1 && p[0].zero(); }

// Largest k with m^k dividing p.
inline unsigned multiplicity(Poly p, const Poly& m) {
    unsigned k = 0;
    while (!is_zero(p)) {
        auto [q, r] = divmod(p, m);
        if (!is_zero(r)) break;
        p = q;
        ++k;
    }
    return k;
}

// P(z) = 2/27 (z^2 + 3)^3 (z^2 - 1) + 1
inline Poly polynomial_P() {
    Poly z2p3{Frac(3), Frac(0), Frac(1)}, z2m1{Frac(-1), Frac(0), Frac(1)};
    Poly p = mul(mul(mul(z2p3, z2p3), z2p3), z2m1);
    return add(scale(p, Frac(2, 27)), Poly{Frac(1)});
}

inline Frac eval(const Poly& p, Frac z) {
    Frac r(0);
    for (std::size_t i = p.size(); i-- > 0;) r = r * z + p[i];
    return r;
}

}  // namespace oracle
