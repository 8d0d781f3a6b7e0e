#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "imgrowth/catalog.hpp"
#include "imgrowth/errors.hpp"
#include "oracles.hpp"

using namespace img;

namespace {

Portrait portrait_of(const char* name) { return *catalog_get(name).portrait; }

AlphaValue alpha_at(const Portrait& P, const std::vector<AlphaValue>& a, const char* v) { return a[P.index(v)]; }

// lcm of deg(f^k, q) over all q, k with f^k(q) = p, by walking preimage chains.
std::uint64_t brute_alpha(const Portrait& P, std::size_t p, unsigned depth) {
    std::uint64_t out = 1;
    std::vector<std::pair<std::size_t, std::uint64_t>> frontier{{p, 1}};
    for (unsigned k = 0; k < depth; ++k) {
        std::vector<std::pair<std::size_t, std::uint64_t>> next;
        for (auto [v, d] : frontier)
            for (std::size_t q = 0; q < P.vertices.size(); ++q)
                if (P.vertices[q].image == v) {
                    std::uint64_t dq = d * P.vertices[q].degree;
                    out = std::lcm(out, dq);
                    next.emplace_back(q, dq);
                }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("portrait parsing and validation") {
    Portrait P = portrait_of("f1");
    CHECK(P.vertices.size() == 8);
    validate_portrait(P);
    Portrait bad = P;
    bad.vertices[P.index("c0")].image = P.index("c1");
    CHECK_THROWS_AS(validate_portrait(bad), ValidationError);
    CHECK_THROWS_AS(parse_portrait(R"({"vertices":[{"name":"x","post":true}],"edges":[]})"), ValidationError);
    CHECK_THROWS_AS(parse_portrait("[1,2"), ParseError);
    CHECK(parse_portrait(portrait_json(P)).vertices.size() == P.vertices.size());
}

TEST_CASE("ramification function") {
    Portrait P = portrait_of("f1");
    auto a = ramification_function(P);
    CHECK(alpha_at(P, a, "1").value == 24);
    CHECK(alpha_at(P, a, "-1").value == 3);
    CHECK(alpha_at(P, a, "inf").value == 2);
    for (const char* v : {"1", "-1", "inf"}) CHECK(alpha_at(P, a, v).value == brute_alpha(P, P.index(v), 8));

    Portrait one;
    one.add("x", true);
    one.set_edge(0, 0, 1);
    CHECK(ramification_function(one)[0].value == 1);

    Portrait basilica;
    auto z = basilica.add("0", true), m = basilica.add("-1", true);
    basilica.set_edge(z, m, 2);
    basilica.set_edge(m, z, 1);
    auto b = ramification_function(basilica);
    CHECK(b[z].infinite);
    CHECK(b[m].infinite);
}

TEST_CASE("orbifold characteristic") {
    auto o = orbifold_characteristic(portrait_of("f1"));
    CHECK(o.chi == Rational(-1, 8));
    CHECK(format_rational(o.chi) == "-1/8");
    CHECK(o.classification == "hyperbolic");
    oracle::Frac hand = oracle::Frac(2) - (oracle::Frac(23, 24) + oracle::Frac(2, 3) + oracle::Frac(1, 2));
    CHECK(hand == oracle::Frac(o.chi.numerator(), o.chi.denominator()));

    Portrait lattes;
    for (const char* n : {"p", "q", "r", "s"}) lattes.add(n, true);
    lattes.add("u", false);
    lattes.add("v", false);
    lattes.add("w", false);
    lattes.add("x", false);
    // Each critical point maps to a postcritical point with degree 2.
    lattes.set_edge(4, 0, 2);
    lattes.set_edge(5, 1, 2);
    lattes.set_edge(6, 2, 2);
    lattes.set_edge(7, 3, 2);
    lattes.set_edge(0, 1, 1);
    lattes.set_edge(1, 2, 1);
    lattes.set_edge(2, 3, 1);
    lattes.set_edge(3, 0, 1);
    auto l = orbifold_characteristic(lattes);
    CHECK(l.chi == Rational(0));
    CHECK(l.classification == "parabolic");
}

TEST_CASE("orders of f1 generators equal the ramification values") {
    auto e = catalog_get("f1");
    const auto& p = *e.presentation;
    auto a = ramification_function(*e.portrait);
    for (const auto& [g, label] : e.generators) {
        auto o = element_order(p, p.parse(g));
        REQUIRE(o.kind == OrderResult::Finite);
        CHECK(o.order == a[e.portrait->index(label)].value);
    }
}

TEST_CASE("restricted portraits") {
    auto f1 = catalog_get("f1");
    Portrait r = restricted_portrait(*f1.portrait, *f1.edge);
    CHECK(r.vertices.size() == 3);
    CHECK(r.vertices[r.index("a0")].degree == 2);
    CHECK(r.vertices[r.vertices[r.index("a0")].image].name == "inf");
    CHECK(r.vertices[r.vertices[r.index("inf")].image].name == "1");
    CHECK(r.vertices[r.index("inf")].degree == 4);

    auto s = catalog_get("sierpinski-3");
    Portrait rs = restricted_portrait(*s.portrait, *s.edge);
    CHECK(rs.vertices[rs.vertices[rs.index("b0")].image].name == "1");
    CHECK(rs.vertices[rs.index("b0")].degree == 2);
    CHECK(rs.vertices[rs.vertices[rs.index("a0")].image].name == "inf");
    CHECK(rs.vertices[rs.index("a0")].degree == 2);
    CHECK(rs.vertices[rs.vertices[rs.index("inf")].image].name == "inf");

    auto poly = catalog_get("poly-P");
    Portrait rp = restricted_portrait(*poly.portrait, *poly.edge);
    CHECK(rp.vertices[rp.vertices[rp.index("0")].image].name == "-1");
    CHECK(rp.vertices[rp.index("0")].degree == 4);

    EdgeData missing = *f1.edge;
    missing.interior[0].name = "nowhere";
    CHECK_THROWS_AS(restricted_portrait(*f1.portrait, missing), ValidationError);
}

TEST_CASE("polynomial portrait matches exact arithmetic") {
    using namespace oracle;
    Poly P = polynomial_P();
    CHECK(P.size() == 9);
    CHECK(eval(P, Frac(1)) == Frac(1));
    CHECK(eval(P, Frac(-1)) == Frac(1));
    CHECK(eval(P, Frac(0)) == Frac(-1));
    // deg(P, z0) = multiplicity of z0 in P - P(z0).
    Poly minus_one = add(P, Poly{Frac(-1)});
    Poly plus_one = add(P, Poly{Frac(1)});
    CHECK(multiplicity(plus_one, Poly{Frac(0), Frac(1)}) == 4);                      // z at 0
    CHECK(multiplicity(minus_one, Poly{Frac(3), Frac(0), Frac(1)}) == 3);            // z^2 + 3 at +-sqrt3 i
    CHECK(multiplicity(minus_one, Poly{Frac(-1), Frac(1)}) == 1);                    // z - 1
    CHECK(multiplicity(minus_one, Poly{Frac(1), Frac(1)}) == 1);                     // z + 1
    Portrait portrait = portrait_of("poly-P");
    auto deg = [&](const char* v) { return portrait.vertices[portrait.index(v)].degree; };
    auto img = [&](const char* v) { return portrait.vertices[portrait.vertices[portrait.index(v)].image].name; };
    CHECK(deg("0") == 4);
    CHECK(img("0") == "-1");
    CHECK(deg("sqrt3i") == 3);
    CHECK(deg("-sqrt3i") == 3);
    CHECK(img("sqrt3i") == "1");
    CHECK(deg("1") == 1);
    CHECK(deg("-1") == 1);
    CHECK(img("-1") == "1");
    CHECK(img("1") == "1");
    CHECK(deg("inf") == P.size() - 1);
    // Riemann-Hurwitz: 2d - 2 critical multiplicity in total.
    unsigned total = 0;
    for (const auto& v : portrait.vertices) total += v.degree - 1;
    CHECK(total == 2 * (P.size() - 1) - 2);
}

TEST_CASE("criterion on the catalog maps") {
    struct Want {
        const char* name;
        std::uint64_t kp, kq;
        const char* witness;
        const char* point;
        std::uint64_t degree;
    };
    for (const auto& w : {Want{"f1", 8, 2, "ab^4", "c0", 3}, Want{"sierpinski-3", 2, 2, "ab", "c0", 3},
                          Want{"poly-P", 4, 4, "a^2b^2", "sqrt3i", 3}, Want{"sierpinski-5", 2, 2, "ab", "c0", 3},
                          Want{"obstructed-3", 2, 2, "ab", "c0", 3}}) {
        auto e = catalog_get(w.name);
        auto c = check_conditions(*e.portrait, *e.edge);
        INFO(w.name);
        CHECK(c.a.ok);
        CHECK(c.b.ok);
        CHECK(c.c.ok);
        CHECK(c.c1.ok);
        CHECK(c.c2.ok);
        CHECK(c.d.ok);
        CHECK(c.e.ok);
        CHECK(c.infinite_order);
        CHECK(c.exponential_growth);
        CHECK(c.evenness_ok);
        CHECK(c.k_p == w.kp);
        CHECK(c.k_q == w.kq);
        CHECK(c.w1 == w.witness);
        CHECK(c.witness_point.substr(0, std::string(w.point).size()) == w.point);
        CHECK(c.witness_degree == w.degree);
        CHECK(c.witness_degree % w.kp != 0);
        auto bf = brute_force_degrees(*e.portrait, *e.edge, *c.k_p, *c.k_q, 5);
        CHECK(bf.ok);
        for (unsigned n = 1; n <= 5; ++n)
            CHECK(bf.vertex_counts[n - 1] == static_cast<std::size_t>(std::pow(e.edge->d_E(), n)) + 1);
    }
}

TEST_CASE("pulled-back edge degrees agree with subdivision flowers") {
    for (const char* name : {"f1", "sierpinski-3"}) {
        auto e = catalog_get(name);
        for (unsigned n = 1; n <= 3; ++n) {
            auto pulled = pull_back_edge(*e.portrait, *e.edge, n);
            auto rep = invariant_edge_report(CellComplex(*e.rule, n), e.edge->p, e.edge->q);
            REQUIRE(pulled.vertices.size() == rep.vertices.size());
            for (std::size_t i = 0; i < rep.vertices.size(); ++i) {
                CHECK(pulled.vertices[i].first == rep.vertices[i].type);
                CHECK(pulled.vertices[i].second == rep.vertices[i].flower_degree);
            }
        }
    }
}

TEST_CASE("criterion detects violated conditions") {
    auto f1 = catalog_get("f1");
    // (b): p must be fixed.
    auto c = check_conditions(*f1.portrait, *f1.edge);
    EdgeData swapped = *f1.edge;
    std::swap(swapped.p, swapped.q);
    auto s = check_conditions(*f1.portrait, swapped);
    CHECK_FALSE(s.b.ok);
    CHECK_FALSE(s.exponential_growth);
    // (d): unbalanced sectors.
    EdgeData lopsided = *f1.edge;
    lopsided.real_symmetric = false;
    lopsided.interior[0].sectors = std::make_pair(1u, 3u);
    auto d = check_conditions(*f1.portrait, lopsided);
    CHECK_FALSE(d.d.ok);
    CHECK_FALSE(d.infinite_order);
    // (e): drop the critical points off the orbit of p.
    Portrait small = restricted_portrait(*f1.portrait, *f1.edge);
    auto e = check_conditions(small, *f1.edge);
    CHECK(e.infinite_order);
    CHECK_FALSE(e.e.ok);
    CHECK_FALSE(e.exponential_growth);
    CHECK(c.exponential_growth);
}

TEST_CASE("condition (c) fails when interior degrees differ by type") {
    // q fixed, deg(g, q) = 1, interior of type p has degree 2 but another has 4.
    Portrait P;
    auto p = P.add("p", true), q = P.add("q", true), u = P.add("u", false), v = P.add("v", false),
         w = P.add("w", false);
    P.set_edge(p, p, 1);
    P.set_edge(q, q, 1);
    P.set_edge(u, p, 2);
    P.set_edge(v, q, 2);
    P.set_edge(w, p, 4);
    EdgeData E;
    E.name = "E";
    E.p = "p";
    E.q = "q";
    E.interior = {{"u", "p", 2, std::nullopt}, {"v", "q", 2, std::nullopt}, {"w", "p", 4, std::nullopt}};
    E.real_symmetric = true;
    auto c = check_conditions(P, E);
    CHECK_FALSE(c.c1.ok);
    CHECK_FALSE(c.c.ok);
    CHECK_FALSE(c.exponential_growth);
}

TEST_CASE("obstruction coefficient") {
    auto lambda = [](std::vector<ObstructionInput::Component> cs) {
        ObstructionInput in;
        in.curve = "g";
        in.components = std::move(cs);
        return thurston_lambda(in);
    };
    auto a = lambda({{2, false, true}, {4, false, true}, {4, false, true}});
    CHECK(a.lambda == Rational(1));
    CHECK(a.obstruction);
    auto b = lambda({{3, false, true}, {3, false, true}, {3, true, false}});
    CHECK(b.lambda == Rational(2, 3));
    CHECK_FALSE(b.obstruction);
    auto c = lambda({{1, true, false}});
    CHECK(c.lambda == Rational(0));
    CHECK_FALSE(c.obstruction);

    auto obstructed = catalog_get("obstructed-3");
    REQUIRE(obstructed.obstruction.has_value());
    auto o = thurston_lambda(*obstructed.obstruction);
    CHECK(o.lambda == Rational(1));
    CHECK(o.obstruction);
    CHECK_THROWS_AS(parse_obstruction(R"({"curve":"g","components":[{"degree":0}]})"), ValidationError);
}

TEST_CASE("obstruction coefficient on random component lists") {
    std::mt19937_64 rng(oracle::test_seed() + 9);
    for (int t = 0; t < 40; ++t) {
        ObstructionInput in;
        in.curve = "g";
        std::size_t n = 1 + rng() % 8;
        oracle::Frac hand(0);
        for (std::size_t i = 0; i < n; ++i) {
            ObstructionInput::Component c{static_cast<unsigned>(1 + rng() % 9), rng() % 4 == 0, rng() % 5 != 0};
            if (!c.peripheral && c.homotopic) hand = hand + oracle::Frac(1, c.degree);
            in.components.push_back(c);
        }
        auto r = thurston_lambda(in);
        CHECK(oracle::Frac(r.lambda.numerator(), r.lambda.denominator()) == hand);
        CHECK(r.obstruction == (hand >= oracle::Frac(1)));

        ObstructionInput shuffled = in;
        std::shuffle(shuffled.components.begin(), shuffled.components.end(), rng);
        CHECK(thurston_lambda(shuffled).lambda == r.lambda);

        ObstructionInput more = in;
        more.components.push_back({static_cast<unsigned>(1 + rng() % 9), false, true});
        CHECK(thurston_lambda(more).lambda > r.lambda);
    }
}
