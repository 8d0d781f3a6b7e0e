#include <doctest.h>

#include <set>

#include "imgrowth/analysis.hpp"
#include "imgrowth/catalog.hpp"
#include "imgrowth/errors.hpp"
#include "oracles.hpp"

using namespace img;

namespace {

const Presentation& f1() {
    static const Presentation p = parse_presentation(catalog_file("f1.presentation"));
    return p;
}

std::vector<Element> abc() { return f1().parse_list("a,b,c"); }

}  // namespace

TEST_CASE("schreier graph on level 1") {
    const auto& p = f1();
    auto g = schreier_graph(p, abc(), 1);
    CHECK(g.vertices() == 6);
    CHECK(g.targets[0] == std::vector<std::uint32_t>{2, 4, 0, 5, 1, 3});
    CHECK(g.targets[1] == std::vector<std::uint32_t>{0, 2, 4, 3, 5, 1});
    CHECK(g.targets[2] == std::vector<std::uint32_t>{1, 2, 0, 4, 5, 3});
    auto id = schreier_graph(p, {Element()}, 3);
    for (std::uint32_t v = 0; v < 216; ++v) CHECK(id.targets[0][v] == v);
}

TEST_CASE("schreier connectivity matches BFS") {
    const auto& p = f1();
    for (unsigned n = 1; n <= 4; ++n) {
        auto g = schreier_graph(p, abc(), n);
        CHECK(component_count(g) == oracle::bfs_components(g.targets, g.vertices()));
        CHECK(component_count(g) == 1);
    }
    auto c = schreier_graph(p, p.parse_list("c"), 1);
    CHECK(component_count(c) == 2);
    CHECK_FALSE(level_transitive(p, p.parse_list("c"), 1));
    for (unsigned n = 1; n <= 5; ++n) CHECK(level_transitive(p, abc(), n));
}

TEST_CASE("schreier graphs are functorial under the prefix map") {
    const auto& p = f1();
    auto hi = schreier_graph(p, abc(), 3), lo = schreier_graph(p, abc(), 2);
    for (std::size_t k = 0; k < 3; ++k)
        for (std::uint32_t v = 0; v < hi.vertices(); ++v) CHECK(hi.targets[k][v] / 6 == lo.targets[k][v / 6]);
}

TEST_CASE("DOT export parses back to the same graph") {
    const auto& p = f1();
    for (unsigned n = 1; n <= 2; ++n) {
        auto g = schreier_graph(p, abc(), n);
        auto d = oracle::parse_dot(export_dot(g));
        REQUIRE(d.ok);
        CHECK(d.nodes.size() == g.vertices());
        CHECK(d.edges.size() == 3 * g.vertices());
        std::set<std::tuple<std::string, std::string, std::string>> want;
        for (std::size_t k = 0; k < 3; ++k)
            for (std::uint32_t v = 0; v < g.vertices(); ++v)
                want.emplace(p.format_word(index_word(v, 6, n)), p.format_word(index_word(g.targets[k][v], 6, n)),
                             g.labels[k]);
        CHECK(std::set(d.edges.begin(), d.edges.end()) == want);
    }
    auto empty = oracle::parse_dot(export_dot(schreier_graph(p, {}, 1)));
    CHECK(empty.ok);
    CHECK(empty.nodes.size() == 6);
    CHECK(empty.edges.empty());
    // Deterministic output.
    CHECK(export_dot(schreier_graph(p, abc(), 2)) == export_dot(schreier_graph(p, abc(), 2)));
}

TEST_CASE("recurrence witnesses") {
    const auto& p = f1();
    auto r = recurrence_witness(p, 0, p.parse_list("b,(b^4)^c"));
    REQUIRE(r.sections.size() == 2);
    CHECK(p.format(r.sections[0]) == "b");
    CHECK(equal(p, r.sections[1], p.parse("c^-1b^-1")).trivial == Decision::Yes);
    CHECK(r.generates);
    for (std::size_t g = 0; g < 3; ++g) {
        REQUIRE(r.expressions[g].has_value());
        Element e;
        for (long long c : *r.expressions[g]) e *= c > 0 ? r.sections[c - 1] : r.sections[-c - 1].inverse();
        CHECK(equal(p, e, Element::generator(g)).trivial == Decision::Yes);
    }
    auto none = recurrence_witness(p, 0, {Element()});
    CHECK_FALSE(none.generates);
    CHECK_THROWS_AS(recurrence_witness(p, 0, p.parse_list("a")), ValidationError);
}

TEST_CASE("census") {
    const auto& p = f1();
    auto c = ball_census(p, abc(), 1, 1);
    CHECK(c.complete);
    CHECK(c.counts == std::vector<std::uint64_t>{1, 6});
    auto one = ball_census(p, {Element()}, 3, 4);
    for (auto x : one.counts) CHECK(x == 1);
    auto big = ball_census(p, p.parse_list("ab4,ab12,ab20"), 6, 3);
    REQUIRE(big.counts.size() == 4);
    CHECK(big.counts[3] >= 40);
}

TEST_CASE("census is monotone in radius and level") {
    const auto& p = f1();
    auto gens = p.parse_list("ab4,ab12,ab20");
    std::vector<std::uint64_t> prev;
    for (unsigned n = 1; n <= 4; ++n) {
        auto c = ball_census(p, gens, n, 3);
        REQUIRE(c.complete);
        CHECK(c.counts[0] == 1);
        for (std::size_t r = 1; r < c.counts.size(); ++r) CHECK(c.counts[r] >= c.counts[r - 1]);
        if (!prev.empty())
            for (std::size_t r = 0; r < c.counts.size(); ++r) CHECK(c.counts[r] >= prev[r]);
        prev = c.counts;
    }
}

TEST_CASE("census stops at the state budget") {
    const auto& p = f1();
    Limits l;
    l.max_census_states = 50;
    auto c = ball_census(p, abc(), 4, 10, l);
    CHECK_FALSE(c.complete);
    CHECK(c.radius_reached < 10);
    CHECK(c.counts.size() == c.radius_reached + 1);
}

TEST_CASE("free semigroup certificates") {
    const auto& p = f1();
    CHECK(default_start_level(3) == 5);
    CHECK(default_start_level(5) == 6);
    auto gens = p.parse_list("ab4,ab12,ab20");
    auto r = certify_free_semigroup(p, gens, 3, default_start_level(3), 10);
    REQUIRE(r.kind == FreeSemigroupResult::Certified);
    CHECK(r.words == 39);
    CHECK(recheck_free_semigroup(p, gens, r));

    // Independent re-check through the raw tables.
    auto raw = oracle::RawRecursion::f1();
    const char* names[] = {"ab4", "ab12", "ab20"};
    std::set<std::vector<std::vector<int>>> seen;
    for (const auto& w : r.word_list) {
        std::string s;
        for (auto i : w) s += names[i];
        std::vector<std::vector<int>> imgs;
        bool moves = false;
        for (auto pt : r.points) {
            auto v = index_word(pt, 6, r.level);
            std::vector<int> rv(v.begin(), v.end());
            auto im = raw.act(oracle::raw_word(s), rv);
            moves |= im != rv;
            imgs.push_back(im);
        }
        CHECK(moves);
        CHECK(seen.insert(imgs).second);
    }

    auto single = certify_free_semigroup(p, p.parse_list("a"), 1, 1, 10);
    CHECK(single.kind == FreeSemigroupResult::Certified);
    CHECK(single.words == 1);
}

TEST_CASE("free semigroup counterexample needs a proof of equality") {
    const auto& p = f1();
    auto r = certify_free_semigroup(p, p.parse_list("c"), 3, 1, 4);
    REQUIRE(r.kind == FreeSemigroupResult::Counterexample);
    Element x = semigroup_word({p.parse("c")}, r.pair.first), y = semigroup_word({p.parse("c")}, r.pair.second);
    CHECK(equal(p, x, y).trivial == Decision::Yes);
}

TEST_CASE("wreath pattern identities") {
    const auto& p = f1();
    auto check = [&](const char* lhs, const char* pat) {
        return verify_identity(p, p.parse(lhs), parse_pattern(p, pat));
    };
    CHECK(check("b^-8", "<b^-8, 1, 1, c, 1, 1> ()").passed());
    CHECK(check("[(b^8c^-1b^-4c)^2, b^-8]", "<1, 1, 1, [b^2,c], 1, 1> ()").passed());
    CHECK(check("1", "<1,1,1,1,1,1> ()").passed());
    CHECK(check("(ab4)^2", "<ab4, ., ., ., ., .> ?").passed());
    CHECK_FALSE(check("b^-8", "<b^-8, 1, 1, 1, 1, 1> ()").passed());
    CHECK_FALSE(check("a", "<1,1,1,1,1,1> ()").passed());
}

TEST_CASE("identity suite for f1") {
    const auto& p = f1();
    auto results = run_identity_suite(p, catalog_file("f1.identities"));
    CHECK(results.size() >= 14);
    for (const auto& r : results) {
        INFO(r.line);
        CHECK(r.verdict == Decision::Yes);
    }
    auto bad = run_identity_suite(p, "eq a = b\nsection b @ 1 = c\n");
    CHECK(bad[0].verdict == Decision::No);
    CHECK(bad[1].verdict == Decision::No);
    CHECK_THROWS_AS(run_identity_suite(p, "guess a = b\n"), ParseError);
}
