// Acceptance checks: one PASS/FAIL line per criterion, with timing.
#include <chrono>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "imgrowth/catalog.hpp"
#include "imgrowth/errors.hpp"

using namespace img;

namespace {

struct Check {
    std::string detail;
    bool ok = true;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

const CatalogEntry& f1() {
    static const CatalogEntry e = catalog_get("f1");
    return e;
}
const Presentation& pres() { return *f1().presentation; }

Check orders() {
    Check c;
    const std::pair<const char*, std::uint64_t> want[] = {{"a", 2}, {"b", 24}, {"c", 3}};
    for (auto [g, n] : want) {
        auto o = element_order(pres(), pres().parse(g));
        c.expect(o.kind == OrderResult::Finite && o.order == n, std::string("order of ") + g);
    }
    return c;
}

Check relations() {
    Check c;
    auto results = run_identity_suite(pres(), f1().identities);
    c.expect(results.size() >= 7, "suite too short");
    for (const auto& r : results) c.expect(r.verdict == Decision::Yes, r.line + " " + r.detail);
    // The headline relations and patterns, stated directly.
    for (const char* rel : {"acb", "(bc)^2", "c^3"})
        c.expect(is_trivial(pres(), pres().parse(rel)).trivial == Decision::Yes, rel);
    auto p1 = verify_identity(pres(), pres().parse("b^-8"), parse_pattern(pres(), "<b^-8, 1, 1, c, 1, 1> ()"));
    c.expect(p1.passed(), "b^-8 pattern");
    auto p2 = verify_identity(pres(), pres().parse("[(b^8c^-1b^-4c)^2, b^-8]"),
                              parse_pattern(pres(), "<1, 1, 1, [b^2,c], 1, 1> ()"));
    c.expect(p2.passed(), "commutator pattern");
    return c;
}

std::vector<Element> witnesses() { return pres().parse_list("ab4,ab12,ab20"); }

Check certificates() {
    Check c;
    auto ws = witnesses();
    for (const auto& w : ws) {
        auto cert = infinite_order_certificate(pres(), w);
        c.expect(cert.has_value(), "no certificate for " + pres().format(w));
        if (!cert) continue;
        c.expect(cert->e == 2, "exponent");
        c.expect(cert->prefix.size() + cert->v.size() <= 2, "certificate level");
        c.expect(verify_certificate(pres(), *cert), "recheck");
    }
    for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t j = i + 1; j < ws.size(); ++j)
            c.expect(equal(pres(), ws[i], ws[j]).trivial == Decision::No, "distinctness");
    return c;
}

Check free_semigroup() {
    Check c;
    auto ws = witnesses();
    const unsigned N = 5;
    auto r = certify_free_semigroup(pres(), ws, N, default_start_level(N), 8);
    c.expect(r.kind == FreeSemigroupResult::Certified, "not certified: " + r.note);
    c.expect(r.words == 363, "word count " + std::to_string(r.words));
    c.expect(r.level <= 8, "level");
    c.expect(recheck_free_semigroup(pres(), ws, r), "independent recheck");
    const unsigned radius = 4;
    auto census = ball_census(pres(), ws, r.level, radius);
    c.expect(census.complete, "census incomplete");
    for (unsigned k = 0; k < census.counts.size(); ++k) {
        std::uint64_t bound = 1;
        for (unsigned i = 0; i <= k; ++i) bound *= 3;
        bound = (bound - 1) / 2 - 1;
        c.expect(census.counts[k] >= bound, "census radius " + std::to_string(k));
    }
    return c;
}

Check tiling() {
    Check c;
    const auto& rule = *f1().rule;
    for (unsigned n = 1; n <= 4; ++n) {
        CellComplex cx(rule, n);
        std::string at = " at level " + std::to_string(n);
        std::uint64_t six = 1;
        for (unsigned i = 0; i < n; ++i) six *= 6;
        c.expect(cx.tiles().size() == 2 * six, "tile count" + at);
        c.expect(cx.euler_characteristic() == 2, "Euler characteristic" + at);
        c.expect(cx.colors_alternate(), "colors" + at);
        auto e = invariant_edge_report(cx, "1", "inf");
        c.expect(e.invariant, "edge not invariant" + at);
        c.expect(e.vertices.size() == (1u << n) + 1, "edge vertices" + at);
        c.expect(e.alternating, "types" + at);
        for (std::size_t i = 1; i + 1 < e.vertices.size(); ++i) {
            const auto& v = e.vertices[i];
            if (v.type == "1") c.expect(v.flower_degree == 8, "b-flower " + v.name);
            if (v.type == "inf") c.expect(v.flower_degree == 2, "a-flower " + v.name);
        }
    }
    return c;
}

Check oracle_equivalence() {
    Check c;
    for (unsigned n = 1; n <= 3; ++n) {
        auto r = intertwine_entry(f1(), n, std::nullopt, std::nullopt);
        c.expect(r.ok, "level " + std::to_string(n) + ": " + r.detail);
    }
    return c;
}

Check criterion() {
    Check c;
    struct Want {
        const char* name;
        std::uint64_t kp, kq;
        const char* w1;
    };
    for (const auto& w : {Want{"f1", 8, 2, "ab^4"}, Want{"sierpinski-3", 2, 2, "ab"}, Want{"poly-P", 4, 4, nullptr}}) {
        auto e = catalog_get(w.name);
        auto r = check_conditions(*e.portrait, *e.edge);
        std::string at = std::string(" for ") + w.name;
        c.expect(r.a.ok && r.b.ok && r.c.ok && r.d.ok && r.e.ok && r.exponential_growth, "conditions" + at);
        c.expect(r.k_p == w.kp && r.k_q == w.kq, "constants" + at);
        if (w.w1) c.expect(r.w1 == w.w1, "witness " + r.w1 + at);
        if (r.k_p && r.k_q) {
            auto bf = brute_force_degrees(*e.portrait, *e.edge, *r.k_p, *r.k_q, 5);
            c.expect(bf.ok, "brute force" + at + ": " + bf.detail);
        }
    }
    try {
        catalog_get("sierpinski-4");
        c.expect(false, "sierpinski-4 accepted");
    } catch (const OutOfRange& e) {
        c.expect(std::string(e.what()).find("condition (c)") != std::string::npos, "rejection reason");
    }
    return c;
}

Check ramification() {
    Check c;
    const auto& P = *f1().portrait;
    auto alpha = ramification_function(P);
    const std::pair<const char*, std::uint64_t> want[] = {{"1", 24}, {"-1", 3}, {"inf", 2}};
    for (auto [v, n] : want) {
        const auto& a = alpha[P.index(v)];
        c.expect(!a.infinite && a.value == n, std::string("alpha at ") + v);
    }
    auto o = orbifold_characteristic(P);
    c.expect(o.classification == "hyperbolic", "classification");
    for (const auto& [g, label] : f1().generators) {
        auto ord = element_order(pres(), pres().parse(g));
        c.expect(ord.kind == OrderResult::Finite && ord.order == alpha[P.index(label)].value, "order of " + g);
    }
    return c;
}

Check obstruction() {
    Check c;
    std::mt19937_64 rng(20240611);
    for (int t = 0; t < 25; ++t) {
        ObstructionInput in;
        in.curve = "g";
        long long num = 0, den = 1;
        std::size_t n = 1 + rng() % 8;
        for (std::size_t i = 0; i < n; ++i) {
            ObstructionInput::Component comp{static_cast<unsigned>(1 + rng() % 9), rng() % 4 == 0, rng() % 5 != 0};
            in.components.push_back(comp);
            if (comp.peripheral || !comp.homotopic) continue;
            num = num * comp.degree + den;
            den *= comp.degree;
            long long g = std::gcd(num, den);
            num /= g;
            den /= g;
        }
        auto r = thurston_lambda(in);
        c.expect(r.lambda.numerator() == num && r.lambda.denominator() == den, "hand arithmetic");
        std::reverse(in.components.begin(), in.components.end());
        c.expect(thurston_lambda(in).lambda == r.lambda, "permutation invariance");
        in.components.push_back({2, false, true});
        c.expect(thurston_lambda(in).lambda > r.lambda, "monotonicity");
    }
    auto e = catalog_get("obstructed-3");
    auto r = thurston_lambda(*e.obstruction);
    c.expect(r.lambda == Rational(1) && r.obstruction, "obstructed entry");
    return c;
}

Check recurrence() {
    Check c;
    auto ws = pres().parse_list("b,(b^4)^c");
    auto r = recurrence_witness(pres(), 0, ws);
    c.expect(r.sections.size() == 2, "sections");
    if (r.sections.size() == 2) {
        c.expect(equal(pres(), r.sections[0], pres().parse("b")).trivial == Decision::Yes, "section of b");
        c.expect(equal(pres(), r.sections[1], pres().parse("c^-1b^-1")).trivial == Decision::Yes,
                 "section of (b^4)^c");
    }
    c.expect(r.generates, "sections generate");
    auto gens = pres().parse_list("a,b,c");
    for (unsigned n = 1; n <= 5; ++n) c.expect(level_transitive(pres(), gens, n), "level " + std::to_string(n));
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "generator orders", 10, orders},
        {2, "relation suite", 30, relations},
        {3, "infinite-order certificates", 10, certificates},
        {4, "free semigroup", 120, free_semigroup},
        {5, "tiling structure", 60, tiling},
        {6, "tile and word actions agree", 60, oracle_equivalence},
        {7, "criterion checker", 10, criterion},
        {8, "ramification and orbifold", 1, ramification},
        {9, "obstruction arithmetic", 1, obstruction},
        {10, "recurrence witness", 30, recurrence},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = cr.run();
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s > cr.limit_s) c.expect(false, "took longer than " + std::to_string(cr.limit_s) + " s");
        std::printf("%s criterion %d (%s) %.3f s%s%s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name, s,
                    c.detail.empty() ? "" : ": ", c.detail.c_str());
        if (!c.ok) ++failed;
    }
    return failed ? 1 : 0;
}
