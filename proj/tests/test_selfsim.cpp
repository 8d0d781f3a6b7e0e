#include <doctest.h>

#include "imgrowth/catalog.hpp"
#include "imgrowth/errors.hpp"
#include "oracles.hpp"

using namespace img;

namespace {

const Presentation& f1() {
    static const Presentation p = parse_presentation(catalog_file("f1.presentation"));
    return p;
}

std::vector<int> to_raw(const TreeWord& v) { return std::vector<int>(v.begin(), v.end()); }

TreeWord random_word(std::mt19937_64& rng, unsigned maxlen) {
    TreeWord v(rng() % (maxlen + 1));
    for (auto& x : v) x = static_cast<std::uint32_t>(rng() % 6);
    return v;
}

// Random element as a compact string over a, b, c with primes for inverses.
std::string random_text(std::mt19937_64& rng, int maxlen) {
    std::string s;
    int len = 1 + static_cast<int>(rng() % maxlen);
    for (int i = 0; i < len; ++i) {
        s += static_cast<char>('a' + rng() % 3);
        if (rng() % 2) s += '\'';
    }
    return s;
}

}  // namespace

TEST_CASE("root permutations and sections") {
    const auto& p = f1();
    CHECK(root_perm(p, p.parse("a")).to_cycles() == "(1 3)(2 5)(4 6)");
    CHECK(root_perm(p, p.parse("c")).to_cycles() == "(1 2 3)(4 5 6)");
    CHECK(root_perm(p, p.parse("1")).is_identity());
    CHECK(p.format(section(p, p.parse("a"), 0)) == "b^-1");
    CHECK(p.format(section(p, p.parse("b"), 3)) == "c");
    for (std::size_t x = 0; x < 6; ++x) CHECK(section(p, Element(), x).is_identity());
    CHECK(section_at(p, p.parse("ab4"), {}) == p.parse("ab4"));
    CHECK(equal(p, section_at(p, p.parse("b^-8"), {3}), p.parse("c")).trivial == Decision::Yes);
    CHECK(equal(p, section_at(p, p.parse("(ab4)^2"), {0}), p.parse("ab4")).trivial == Decision::Yes);
    CHECK_THROWS_AS(section(p, p.parse("a"), 6), OutOfRange);
}

TEST_CASE("act agrees with the raw recursion tables") {
    const auto& p = f1();
    auto raw = oracle::RawRecursion::f1();
    CHECK(p.format_word(act(p, p.parse("a"), p.parse_word("1"))) == "3");
    CHECK(p.format_word(act(p, p.parse("c"), p.parse_word("4"))) == "5");
    // b fixes 1 and b|_1 = b fixes 1 again.
    CHECK(p.format_word(act(p, p.parse("b"), p.parse_word("11"))) == "11");
    std::mt19937_64 rng(oracle::test_seed());
    for (int t = 0; t < 300; ++t) {
        std::string g = random_text(rng, 8);
        TreeWord v = random_word(rng, 5);
        CHECK(to_raw(act(p, p.parse(g), v)) == raw.act(oracle::raw_word(g), to_raw(v)));
    }
}

TEST_CASE("right action law") {
    const auto& p = f1();
    std::mt19937_64 rng(oracle::test_seed() + 1);
    for (int t = 0; t < 200; ++t) {
        Element g = p.parse(random_text(rng, 6)), h = p.parse(random_text(rng, 6));
        TreeWord v = random_word(rng, 5);
        CHECK(act(p, g * h, v) == act(p, h, act(p, g, v)));
    }
}

TEST_CASE("section cocycle") {
    const auto& p = f1();
    std::mt19937_64 rng(oracle::test_seed() + 2);
    for (int t = 0; t < 60; ++t) {
        Element g = p.parse(random_text(rng, 5)), h = p.parse(random_text(rng, 5));
        std::size_t x = rng() % 6;
        Element lhs = section(p, g * h, x);
        Element rhs = section(p, g, x) * section(p, h, root_perm(p, g)[x]);
        CHECK(equal(p, lhs, rhs).trivial == Decision::Yes);
    }
}

TEST_CASE("level actions") {
    const auto& p = f1();
    auto a1 = level_action(p, p.parse("a"), 1);
    CHECK(a1 == std::vector<std::uint32_t>{2, 4, 0, 5, 1, 3});
    for (unsigned n = 0; n <= 4; ++n) {
        auto id = level_action(p, Element(), n);
        for (std::uint32_t v = 0; v < id.size(); ++v) CHECK(id[v] == v);
        auto acb = level_action(p, p.parse("acb"), n);
        CHECK(acb == id);
    }
    CHECK_THROWS_AS(level_action(p, p.parse("a"), 20), BudgetExceeded);
}

TEST_CASE("level actions are bijective and prefix compatible") {
    const auto& p = f1();
    std::mt19937_64 rng(oracle::test_seed() + 3);
    for (int t = 0; t < 20; ++t) {
        Element g = p.parse(random_text(rng, 6));
        auto hi = level_action(p, g, 4), lo = level_action(p, g, 3);
        std::vector<bool> hit(hi.size(), false);
        for (std::uint32_t v = 0; v < hi.size(); ++v) {
            hit[hi[v]] = true;
            CHECK(hi[v] / 6 == lo[v / 6]);
        }
        CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
        for (std::uint32_t v = 0; v < hi.size(); v += 97)
            CHECK(word_index(act(p, g, index_word(v, 6, 4)), 6) == hi[v]);
    }
}

TEST_CASE("triviality") {
    const auto& p = f1();
    CHECK(is_trivial(p, p.parse("acb")).trivial == Decision::Yes);
    CHECK(is_trivial(p, p.parse("b^24")).trivial == Decision::Yes);
    auto r = is_trivial(p, p.parse("b^12"));
    REQUIRE(r.trivial == Decision::No);
    CHECK(act(p, p.parse("b^12"), r.witness) != r.witness);
    CHECK(equal(p, p.parse("c^2"), p.parse("c^-1")).trivial == Decision::Yes);
    CHECK(equal(p, p.parse("a"), p.parse("b")).trivial == Decision::No);
    CHECK(equal(p, p.parse("ab4"), p.parse("ab4")).trivial == Decision::Yes);
    Limits tiny;
    tiny.max_states = 1;
    CHECK(is_trivial(p, p.parse("[(b^9c)^2, b^-8]"), tiny).trivial == Decision::Inconclusive);
}

TEST_CASE("triviality verdicts are sound") {
    const auto& p = f1();
    auto raw = oracle::RawRecursion::f1();
    std::mt19937_64 rng(oracle::test_seed() + 4);
    for (int t = 0; t < 150; ++t) {
        std::string s = random_text(rng, 7);
        Element g = p.parse(s);
        auto r = is_trivial(p, g);
        REQUIRE(r.trivial != Decision::Inconclusive);
        if (r.trivial == Decision::No) {
            CHECK(raw.act(oracle::raw_word(s), to_raw(r.witness)) != to_raw(r.witness));
        } else {
            for (unsigned n = 1; n <= 5; ++n) {
                auto a = level_action(p, g, n);
                for (std::uint32_t v = 0; v < a.size(); ++v) REQUIRE(a[v] == v);
            }
        }
    }
    // The relators give trivial elements that are not freely trivial.
    for (const char* s : {"acb", "bcbc", "ccc", "aa", "(acb)^(ab)", "[(b^9c)^2, b^-8]"}) {
        Element g = p.parse(s);
        REQUIRE(is_trivial(p, g).trivial == Decision::Yes);
        for (unsigned n = 1; n <= 6; ++n) {
            auto a = level_action(p, g, n);
            for (std::uint32_t v = 0; v < a.size(); ++v) REQUIRE(a[v] == v);
        }
    }
}

TEST_CASE("orders") {
    const auto& p = f1();
    auto o = [&](const char* s) { return element_order(p, p.parse(s)); };
    CHECK(o("a").kind == OrderResult::Finite);
    CHECK(o("a").order == 2);
    CHECK(o("b").order == 24);
    CHECK(o("c").order == 3);
    CHECK(o("1").order == 1);
    CHECK(o("bc").order == 2);
    auto inf = o("ab4");
    REQUIRE(inf.kind == OrderResult::Infinite);
    CHECK(inf.certificate->e == 2);
    CHECK(p.format_word(inf.certificate->v) == "1");
}

TEST_CASE("infinite order certificates") {
    const auto& p = f1();
    for (const char* s : {"ab4", "ab12", "ab20", "[c,b^4]"}) {
        auto c = infinite_order_certificate(p, p.parse(s));
        REQUIRE(c.has_value());
        CHECK(verify_certificate(p, *c));
        CHECK(c->e >= 2);
        CHECK(c->v.size() + c->prefix.size() <= 3);
    }
    auto ab12 = infinite_order_certificate(p, p.parse("ab12"));
    CHECK(ab12->e == 2);
    CHECK(ab12->v.size() <= 2);
    CHECK_FALSE(infinite_order_certificate(p, p.parse("c")).has_value());
    CHECK_FALSE(infinite_order_certificate(p, p.parse("1")).has_value());
}

TEST_CASE("certificates are re-checked from their fields") {
    const auto& p = f1();
    auto raw = oracle::RawRecursion::f1();
    auto c = *infinite_order_certificate(p, p.parse("ab4"));
    // h^e fixes v, h^e|_v = h, and g fixes the prefix, checked through the raw tables.
    Element he = c.h.pow(c.e);
    CHECK(raw.act(oracle::raw_word("ab4ab4"), to_raw(c.v)) == to_raw(c.v));
    CHECK(equal(p, section_at(p, he, c.v), c.h).trivial == Decision::Yes);
    CHECK(is_trivial(p, c.g).trivial == Decision::No);
    Certificate bad = c;
    bad.e = 3;
    CHECK_FALSE(verify_certificate(p, bad));
    bad = c;
    bad.v = {1};
    CHECK_FALSE(verify_certificate(p, bad));
}
