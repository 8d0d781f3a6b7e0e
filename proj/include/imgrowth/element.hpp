#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imgrowth/perm.hpp"

namespace img {

// A signed generator: +(i+1) is generator i, -(i+1) its inverse.
using Letter = std::int32_t;

// Freely reduced word over the generators of a presentation. The empty word
// is the identity. No relations are ever applied during reduction.
class Element {
public:
    Element() = default;
    // Reduces the given letters.
    explicit Element(const std::vector<Letter>& letters);

    static Element generator(std::size_t index) { return Element(std::vector<Letter>{Letter(index + 1)}); }

    const std::vector<Letter>& letters() const { return w_; }
    std::size_t length() const { return w_.size(); }
    bool is_identity() const { return w_.empty(); }

    Element inverse() const;
    Element operator*(const Element& other) const;
    Element& operator*=(const Element& other);
    // Negative exponents give powers of the inverse.
    Element pow(long long k) const;
    // h^-1 * this * h
    Element conjugate(const Element& h) const;

    bool operator==(const Element& o) const { return w_ == o.w_; }
    bool operator!=(const Element& o) const { return w_ != o.w_; }
    bool operator<(const Element& o) const { return w_ < o.w_; }

private:
    std::vector<Letter> w_;
};

// [g,h] = g^-1 h^-1 g h
Element commutator(const Element& g, const Element& h);

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept;
};

// Vertex of the d-ary tree as 0-based letters.
using TreeWord = std::vector<std::uint32_t>;

// Wreath recursion: every generator has a root permutation and d sections.
class Presentation {
public:
    Presentation() = default;

    std::size_t degree() const { return d_; }
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    std::optional<std::size_t> find(std::string_view name) const;

    const Perm& root(std::size_t gen) const { return roots_[gen]; }
    const Element& section(std::size_t gen, std::size_t x) const { return sections_[gen][x]; }

    // Root permutation and sections for a signed letter.
    const Perm& letter_perm(Letter l) const;
    const Element& letter_section(Letter l, std::size_t x) const;

    // Longest section word length over all generators.
    std::size_t max_section_length() const;

    // Parses an element in the documented syntax, e.g. "ab4", "a*b^4",
    // "[c,b^4]", "(b^4)^c", "b'", "b^-8".
    Element parse(std::string_view text) const;
    // Comma separated list of elements.
    std::vector<Element> parse_list(std::string_view text) const;
    std::string format(const Element& e) const;

    // Tree words are written as letters 1..d, concatenated when d <= 9,
    // otherwise separated by dots.
    TreeWord parse_word(std::string_view text) const;
    std::string format_word(const TreeWord& v) const;

    // Low-level builder used by the text parser and by tests.
    void set_degree(std::size_t d);
    std::size_t add_generator(const std::string& name);
    void define(std::size_t gen, Perm root, std::vector<Element> sections);
    // Checks names, degrees and bijectivity; precomputes inverse tables.
    void finalize();

private:
    std::size_t d_ = 0;
    std::vector<std::string> names_;
    std::vector<Perm> roots_;
    std::vector<Perm> inv_roots_;
    std::vector<std::vector<Element>> sections_;
    std::vector<std::vector<Element>> inv_sections_;
};

// Source format, one directive per line, '#' starts a comment:
//   alphabet 6
//   a = <b', 1, b, c', 1, c> (1 3)(2 5)(4 6)
// The alphabet size defaults to the number of sections of the first
// generator that lists any.
Presentation parse_presentation(std::string_view text);
std::string format_presentation(const Presentation& p);

std::string format_word_1based(const TreeWord& v, std::size_t d);
TreeWord parse_word_1based(std::string_view text, std::size_t d);

}  // namespace img
