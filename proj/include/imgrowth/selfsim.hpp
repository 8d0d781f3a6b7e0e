#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "imgrowth/element.hpp"

namespace img {

struct Limits {
    std::size_t max_states = 1000000;       // closure size in is_trivial
    std::uint64_t max_level_points = 20000000;  // largest d^n for level actions
    unsigned k_max = 128;                   // order search bound
    unsigned e_max = 8;                     // certificate exponent bound
    unsigned depth_max = 3;                 // certificate word length bound
    std::size_t max_tiles = 200000;
    std::size_t max_census_states = 200000;
};

Perm root_perm(const Presentation& p, const Element& g);
// g|_x for a single letter x (0-based).
Element section(const Presentation& p, const Element& g, std::size_t x);
Element section_at(const Presentation& p, const Element& g, const TreeWord& v);
TreeWord act(const Presentation& p, const Element& g, const TreeWord& v);

// Index of a level-n word with letters most significant first.
std::uint64_t word_index(const TreeWord& v, std::size_t d);
TreeWord index_word(std::uint64_t index, std::size_t d, unsigned n);

// Caches generator actions level by level. Thread safe.
class LevelEngine {
public:
    LevelEngine(const Presentation& p, const Limits& limits = {});

    const Presentation& presentation() const { return p_; }
    std::uint64_t points(unsigned n) const;
    // Action of a signed generator on level n.
    const std::vector<std::uint32_t>& letter(Letter l, unsigned n);
    std::vector<std::uint32_t> element(const Element& g, unsigned n);
    // out[v] = b[a[v]]
    static void compose(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                        std::vector<std::uint32_t>& out);

private:
    void ensure(unsigned n);

    const Presentation& p_;
    Limits limits_;
    std::mutex mu_;
    // levels_[n][gen] and inverse counterpart
    std::vector<std::vector<std::unique_ptr<std::vector<std::uint32_t>>>> fwd_;
    std::vector<std::vector<std::unique_ptr<std::vector<std::uint32_t>>>> inv_;
};

std::vector<std::uint32_t> level_action(const Presentation& p, const Element& g, unsigned n,
                                        const Limits& limits = {});
std::uint64_t array_order(const std::vector<std::uint32_t>& a);

enum class Decision { Yes, No, Inconclusive };

struct TrivialResult {
    Decision trivial = Decision::Inconclusive;
    TreeWord witness;            // moved word when trivial == No
    std::size_t states = 0;      // visited closure size
};

TrivialResult is_trivial(const Presentation& p, const Element& g, const Limits& limits = {});
// Decides g == h through g h^-1.
TrivialResult equal(const Presentation& p, const Element& g, const Element& h, const Limits& limits = {});

// g fixes prefix; with h = g|_prefix, h^e fixes v and h^e|_v = h.
// An empty prefix gives the plain pattern g^e|_v = g.
struct Certificate {
    Element g;
    TreeWord prefix;
    Element h;
    unsigned e = 0;
    TreeWord v;
    unsigned guard_level = 0;       // level whose action order shares a factor with e
    std::uint64_t guard_order = 0;
};

// Finite order m and h^e|_v = h with h^e fixing v force gcd(m, e) = 1, so a
// level action order of h sharing a factor with e rules out finite order.
// If g fixes the prefix, g^k|_prefix = h^k, so g inherits infinite order.
std::optional<Certificate> infinite_order_certificate(const Presentation& p, const Element& g,
                                                      const Limits& limits = {});
// Re-checks every certificate condition from scratch.
bool verify_certificate(const Presentation& p, const Certificate& c, const Limits& limits = {});

struct OrderResult {
    enum Kind { Finite, Infinite, Unknown } kind = Unknown;
    std::uint64_t order = 0;
    std::optional<Certificate> certificate;
    std::string note;
};

OrderResult element_order(const Presentation& p, const Element& g, const Limits& limits = {});

}  // namespace img
