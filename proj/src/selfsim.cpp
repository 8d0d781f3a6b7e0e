#include "imgrowth/selfsim.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "imgrowth/errors.hpp"

namespace img {

namespace {

void check_letter(const Presentation& p, std::size_t x) {
    if (x >= p.degree()) throw OutOfRange("letter " + std::to_string(x + 1) + " outside 1.." + std::to_string(p.degree()));
}

// Image of x under g together with g|_x.
std::pair<std::size_t, Element> step(const Presentation& p, const Element& g, std::size_t x) {
    Element s;
    for (Letter l : g.letters()) {
        s *= p.letter_section(l, x);
        x = p.letter_perm(l)[x];
    }
    return {x, std::move(s)};
}

// Largest level with at most 4096 vertices, used for cheap order bounds.
unsigned probe_level(const Presentation& p) {
    unsigned n = 1;
    std::uint64_t pts = p.degree();
    while (pts * p.degree() <= 4096) {
        pts *= p.degree();
        ++n;
    }
    return n;
}

}  // namespace

Perm root_perm(const Presentation& p, const Element& g) {
    Perm r(p.degree());
    for (Letter l : g.letters()) r = r.then(p.letter_perm(l));
    return r;
}

Element section(const Presentation& p, const Element& g, std::size_t x) {
    check_letter(p, x);
    return step(p, g, x).second;
}

Element section_at(const Presentation& p, const Element& g, const TreeWord& v) {
    Element cur = g;
    for (auto x : v) {
        check_letter(p, x);
        cur = step(p, cur, x).second;
    }
    return cur;
}

TreeWord act(const Presentation& p, const Element& g, const TreeWord& v) {
    TreeWord out;
    out.reserve(v.size());
    Element cur = g;
    for (auto x : v) {
        check_letter(p, x);
        auto [y, s] = step(p, cur, x);
        out.push_back(static_cast<std::uint32_t>(y));
        cur = std::move(s);
    }
    return out;
}

TrivialResult is_trivial(const Presentation& p, const Element& g, const Limits& limits) {
    struct Node {
        Element e;
        std::size_t parent;
        std::uint32_t letter;
    };
    TrivialResult res;
    std::vector<Node> nodes;
    std::unordered_map<Element, std::size_t, ElementHash> seen;
    nodes.push_back({g, SIZE_MAX, 0});
    seen.emplace(g, 0);
    const std::size_t d = p.degree();
    for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
        Element e = nodes[idx].e;
        if (e.is_identity()) continue;
        std::vector<Element> secs(d);
        for (std::size_t x = 0; x < d; ++x) {
            auto [y, s] = step(p, e, x);
            if (y != x) {
                TreeWord w{static_cast<std::uint32_t>(x)};
                for (std::size_t k = idx; nodes[k].parent != SIZE_MAX; k = nodes[k].parent) w.push_back(nodes[k].letter);
                std::reverse(w.begin(), w.end());
                res.trivial = Decision::No;
                res.witness = std::move(w);
                res.states = nodes.size();
                return res;
            }
            secs[x] = std::move(s);
        }
        for (std::size_t x = 0; x < d; ++x) {
            if (secs[x].is_identity() || seen.count(secs[x])) continue;
            if (nodes.size() >= limits.max_states) {
                res.trivial = Decision::Inconclusive;
                res.states = nodes.size();
                return res;
            }
            seen.emplace(secs[x], nodes.size());
            nodes.push_back({secs[x], idx, static_cast<std::uint32_t>(x)});
        }
    }
    res.trivial = Decision::Yes;
    res.states = nodes.size();
    return res;
}

TrivialResult equal(const Presentation& p, const Element& g, const Element& h, const Limits& limits) {
    return is_trivial(p, g * h.inverse(), limits);
}

namespace {

std::optional<std::pair<unsigned, std::uint64_t>> guard_for(const Presentation& p, const Element& g, unsigned e,
                                                            const Limits& limits) {
    unsigned top = probe_level(p);
    LevelEngine eng(p, limits);
    for (unsigned n = 1; n <= top; ++n) {
        std::uint64_t m = array_order(eng.element(g, n));
        if (std::gcd(m, static_cast<std::uint64_t>(e)) > 1) return std::make_pair(n, m);
    }
    return std::nullopt;
}

}  // namespace

namespace {

std::optional<Certificate> plain_certificate(const Presentation& p, const Element& h, const Limits& limits) {
    const std::size_t d = p.degree();
    for (unsigned e = 2; e <= limits.e_max; ++e) {
        auto guard = guard_for(p, h, e, limits);
        if (!guard) continue;
        // Breadth-first over words fixed by h^e, carrying the section.
        std::vector<std::pair<TreeWord, Element>> frontier{{TreeWord{}, h.pow(e)}};
        for (unsigned depth = 1; depth <= limits.depth_max && !frontier.empty(); ++depth) {
            std::vector<std::pair<TreeWord, Element>> next;
            for (const auto& [v, s] : frontier) {
                for (std::size_t x = 0; x < d; ++x) {
                    auto [y, sx] = step(p, s, x);
                    if (y != x) continue;
                    TreeWord w = v;
                    w.push_back(static_cast<std::uint32_t>(x));
                    if (equal(p, sx, h, limits).trivial == Decision::Yes) {
                        Certificate c;
                        c.h = h;
                        c.e = e;
                        c.v = std::move(w);
                        c.guard_level = guard->first;
                        c.guard_order = guard->second;
                        return c;
                    }
                    next.emplace_back(std::move(w), std::move(sx));
                }
            }
            frontier = std::move(next);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Certificate> infinite_order_certificate(const Presentation& p, const Element& g, const Limits& limits) {
    if (is_trivial(p, g, limits).trivial != Decision::No) return std::nullopt;
    const std::size_t d = p.degree();
    std::vector<std::pair<TreeWord, Element>> frontier{{TreeWord{}, g}};
    for (unsigned depth = 0; depth <= limits.depth_max && !frontier.empty(); ++depth) {
        std::vector<std::pair<TreeWord, Element>> next;
        for (const auto& [u, h] : frontier) {
            if (h.is_identity()) continue;
            if (depth > 0 && is_trivial(p, h, limits).trivial != Decision::No) continue;
            if (auto c = plain_certificate(p, h, limits)) {
                c->g = g;
                c->prefix = u;
                return c;
            }
            if (depth == limits.depth_max) continue;
            for (std::size_t x = 0; x < d; ++x) {
                auto [y, s] = step(p, h, x);
                if (y != x) continue;
                TreeWord w = u;
                w.push_back(static_cast<std::uint32_t>(x));
                next.emplace_back(std::move(w), std::move(s));
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

bool verify_certificate(const Presentation& p, const Certificate& c, const Limits& limits) {
    if (c.e < 2 || c.v.empty()) return false;
    if (act(p, c.g, c.prefix) != c.prefix) return false;
    if (equal(p, section_at(p, c.g, c.prefix), c.h, limits).trivial != Decision::Yes) return false;
    Element he = c.h.pow(c.e);
    if (act(p, he, c.v) != c.v) return false;
    if (equal(p, section_at(p, he, c.v), c.h, limits).trivial != Decision::Yes) return false;
    if (is_trivial(p, c.h, limits).trivial != Decision::No) return false;
    if (c.guard_level == 0) return false;
    std::uint64_t m = array_order(level_action(p, c.h, c.guard_level, limits));
    return m == c.guard_order && std::gcd(m, static_cast<std::uint64_t>(c.e)) > 1;
}

OrderResult element_order(const Presentation& p, const Element& g, const Limits& limits) {
    OrderResult r;
    std::uint64_t m = array_order(level_action(p, g, probe_level(p), limits));
    for (std::uint64_t k = m; k <= limits.k_max; k += m) {
        auto t = is_trivial(p, g.pow(static_cast<long long>(k)), limits);
        if (t.trivial == Decision::Yes) {
            r.kind = OrderResult::Finite;
            r.order = k;
            return r;
        }
        if (t.trivial == Decision::Inconclusive) {
            r.note = "triviality of power " + std::to_string(k) + " undecided within the state budget";
            return r;
        }
    }
    if (auto c = infinite_order_certificate(p, g, limits)) {
        r.kind = OrderResult::Infinite;
        r.certificate = std::move(c);
        return r;
    }
    r.note = "no power up to " + std::to_string(limits.k_max) + " is trivial and no certificate was found";
    return r;
}

}  // namespace img
