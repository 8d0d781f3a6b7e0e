#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "imgrowth/selfsim.hpp"

namespace img {

struct SchreierGraph {
    unsigned level = 0;
    std::size_t degree = 0;
    std::vector<std::string> labels;                  // one per generator
    std::vector<std::vector<std::uint32_t>> targets;  // targets[g][v] = v^g
    std::size_t vertices() const;
};

SchreierGraph schreier_graph(const Presentation& p, const std::vector<Element>& gens, unsigned n,
                             const Limits& limits = {});
std::string export_dot(const SchreierGraph& g);
// Number of connected components of the underlying undirected graph.
std::size_t component_count(const SchreierGraph& g);
bool level_transitive(const Presentation& p, const std::vector<Element>& gens, unsigned n, const Limits& limits = {});

struct RecurrenceReport {
    std::vector<Element> sections;
    bool generates = false;
    // For each generator, a word over the sections and their inverses equal to it.
    std::vector<std::optional<std::vector<long long>>> expressions;
};

// Throws ValidationError if some witness moves letter x.
RecurrenceReport recurrence_witness(const Presentation& p, std::size_t x, const std::vector<Element>& witnesses,
                                    const Limits& limits = {});

// 128-bit fingerprint of a level action.
using Fingerprint = std::array<std::uint64_t, 2>;
Fingerprint fingerprint(const std::vector<std::uint32_t>& a);

struct CensusReport {
    unsigned level = 0;
    unsigned radius = 0;           // requested
    unsigned radius_reached = 0;   // last complete radius
    bool complete = false;
    std::vector<std::uint64_t> counts;  // counts[r] for r <= radius_reached
};

// Ball sizes in the level-n quotient for the symmetrized generator set.
CensusReport ball_census(const Presentation& p, const std::vector<Element>& gens, unsigned n, unsigned radius,
                         const Limits& limits = {});

struct FreeSemigroupResult {
    enum Kind { Certified, Counterexample, Inconclusive } kind = Inconclusive;
    unsigned level = 0;
    std::size_t words = 0;
    std::vector<std::vector<std::uint32_t>> word_list;  // generator indices, in enumeration order
    // Separating vertices and the image of each vertex under each word.
    std::vector<std::uint32_t> points;
    std::vector<std::vector<std::uint32_t>> images;
    std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> pair;  // counterexample
    std::vector<unsigned> levels_tried;
    std::string note;
};

// Smallest n with 2^(n-3) > N.
unsigned default_start_level(unsigned maxlen);

FreeSemigroupResult certify_free_semigroup(const Presentation& p, const std::vector<Element>& gens, unsigned maxlen,
                                           unsigned level_min, unsigned level_max, const Limits& limits = {});
// Recomputes the stored images with act() and checks pairwise separation.
bool recheck_free_semigroup(const Presentation& p, const std::vector<Element>& gens, const FreeSemigroupResult& r);
Element semigroup_word(const std::vector<Element>& gens, const std::vector<std::uint32_t>& w);

// Partial wreath pattern: "<p1,...,pd> (cycles)". '.' leaves a section
// unconstrained, '?' leaves the root unconstrained, no cycles means identity.
struct WreathPattern {
    std::optional<Perm> root;
    std::vector<std::optional<Element>> sections;
};

WreathPattern parse_pattern(const Presentation& p, std::string_view text);

struct IdentityCheck {
    bool root_ok = true;
    std::string root_actual;
    std::vector<std::optional<Decision>> sections;  // per position, empty if unconstrained
    bool passed() const;
    bool inconclusive() const;
};

IdentityCheck verify_identity(const Presentation& p, const Element& lhs, const WreathPattern& pattern,
                              const Limits& limits = {});

}  // namespace img
