#include "imgrowth/element.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "imgrowth/errors.hpp"

namespace img {

namespace {

void push_reduced(std::vector<Letter>& w, Letter l) {
    if (!w.empty() && w.back() == -l)
        w.pop_back();
    else
        w.push_back(l);
}

}  // namespace

Element::Element(const std::vector<Letter>& letters) {
    w_.reserve(letters.size());
    for (Letter l : letters) push_reduced(w_, l);
}

Element Element::inverse() const {
    Element r;
    r.w_.reserve(w_.size());
    for (auto it = w_.rbegin(); it != w_.rend(); ++it) r.w_.push_back(-*it);
    return r;
}

Element& Element::operator*=(const Element& other) {
    for (Letter l : other.w_) push_reduced(w_, l);
    return *this;
}

Element Element::operator*(const Element& other) const {
    Element r = *this;
    r *= other;
    return r;
}

Element Element::pow(long long k) const {
    Element base = k < 0 ? inverse() : *this;
    unsigned long long n = k < 0 ? 0ULL - static_cast<unsigned long long>(k) : static_cast<unsigned long long>(k);
    Element r;
    for (unsigned long long i = 0; i < n; ++i) r *= base;
    return r;
}

Element Element::conjugate(const Element& h) const { return h.inverse() * *this * h; }

Element commutator(const Element& g, const Element& h) { return g.inverse() * h.inverse() * g * h; }

std::size_t ElementHash::operator()(const Element& e) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Letter l : e.letters()) {
        h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l));
        h *= 0x100000001b3ULL;
    }
    return h;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> Presentation::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

const Perm& Presentation::letter_perm(Letter l) const {
    return l > 0 ? roots_[static_cast<std::size_t>(l - 1)] : inv_roots_[static_cast<std::size_t>(-l - 1)];
}

const Element& Presentation::letter_section(Letter l, std::size_t x) const {
    return l > 0 ? sections_[static_cast<std::size_t>(l - 1)][x] : inv_sections_[static_cast<std::size_t>(-l - 1)][x];
}

std::size_t Presentation::max_section_length() const {
    std::size_t m = 0;
    for (const auto& secs : sections_)
        for (const auto& s : secs) m = std::max(m, s.length());
    return m;
}

void Presentation::set_degree(std::size_t d) {
    if (d < 2) throw ValidationError("alphabet size must be at least 2");
    d_ = d;
}

std::size_t Presentation::add_generator(const std::string& name) {
    if (name.empty()) throw ValidationError("empty generator name");
    for (char ch : name)
        if (!std::isalpha(static_cast<unsigned char>(ch)) && ch != '_')
            throw ValidationError("generator name '" + name + "' may only contain letters and '_'");
    if (find(name)) throw ValidationError("generator '" + name + "' declared twice");
    names_.push_back(name);
    roots_.emplace_back();
    sections_.emplace_back();
    return names_.size() - 1;
}

void Presentation::define(std::size_t gen, Perm root, std::vector<Element> sections) {
    roots_.at(gen) = std::move(root);
    sections_.at(gen) = std::move(sections);
}

void Presentation::finalize() {
    if (d_ < 2) throw ValidationError("alphabet size must be at least 2");
    inv_roots_.clear();
    inv_sections_.clear();
    for (std::size_t g = 0; g < names_.size(); ++g) {
        if (roots_[g].size() != d_) throw ValidationError("generator '" + names_[g] + "' has a permutation of the wrong degree");
        if (sections_[g].size() != d_)
            throw ValidationError("generator '" + names_[g] + "' has " + std::to_string(sections_[g].size()) +
                                  " sections, expected " + std::to_string(d_));
        for (const auto& s : sections_[g])
            for (Letter l : s.letters())
                if (l == 0 || static_cast<std::size_t>(std::abs(l)) > names_.size())
                    throw ValidationError("section of '" + names_[g] + "' uses an undeclared generator");
        Perm inv = roots_[g].inverse();
        std::vector<Element> isec(d_);
        // (g^-1)|_x = (g|_{x^(sigma^-1)})^-1
        for (std::size_t x = 0; x < d_; ++x) isec[x] = sections_[g][inv[x]].inverse();
        inv_roots_.push_back(std::move(inv));
        inv_sections_.push_back(std::move(isec));
    }
}

// ---------------------------------------------------------------------------

namespace {

class ElementParser {
public:
    ElementParser(const Presentation& p, std::string_view s) : p_(p), s_(s) {
        for (std::size_t i = 0; i < p.size(); ++i) order_.push_back(i);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return p.name(a).size() > p.name(b).size(); });
    }

    Element parse_all() {
        Element e = expr();
        skip_ws();
        if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return e;
    }

    std::vector<Element> parse_list() {
        std::vector<Element> out;
        for (;;) {
            out.push_back(expr());
            skip_ws();
            if (i_ >= s_.size()) break;
            if (s_[i_] != ',') fail("expected ','");
            ++i_;
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, 1, static_cast<int>(i_ + 1));
    }

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool at_factor_end() {
        skip_ws();
        while (i_ < s_.size() && s_[i_] == '*') {
            ++i_;
            skip_ws();
        }
        return i_ >= s_.size() || s_[i_] == ')' || s_[i_] == ']' || s_[i_] == ',';
    }

    Element expr() {
        Element e;
        bool any = false;
        while (!at_factor_end()) {
            e *= factor();
            any = true;
        }
        if (!any) fail("empty element");
        return e;
    }

    long long integer() {
        bool neg = false;
        if (i_ < s_.size() && s_[i_] == '-') {
            neg = true;
            ++i_;
        }
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected exponent");
        long long v = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            v = v * 10 + (s_[i_++] - '0');
            if (v > 1000000) fail("exponent too large");
        }
        return neg ? -v : v;
    }

    std::optional<std::size_t> name_here() {
        for (std::size_t g : order_) {
            const std::string& n = p_.name(g);
            if (s_.substr(i_, n.size()) == n) {
                i_ += n.size();
                return g;
            }
        }
        return std::nullopt;
    }

    Element atom() {
        skip_ws();
        if (i_ >= s_.size()) fail("unexpected end");
        char ch = s_[i_];
        if (ch == '(') {
            ++i_;
            Element e = expr();
            if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
            ++i_;
            return e;
        }
        if (ch == '[') {
            ++i_;
            Element g = expr();
            if (i_ >= s_.size() || s_[i_] != ',') fail("expected ',' in commutator");
            ++i_;
            Element h = expr();
            if (i_ >= s_.size() || s_[i_] != ']') fail("expected ']'");
            ++i_;
            return commutator(g, h);
        }
        if (ch == '1') {
            ++i_;
            if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("number where an element was expected");
            return Element();
        }
        if (auto g = name_here()) return Element::generator(*g);
        std::size_t end = i_;
        while (end < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
        if (end == i_) fail(std::string("unexpected character '") + ch + "'");
        fail("undeclared generator '" + std::string(s_.substr(i_, end - i_)) + "'");
    }

    Element factor() {
        Element e = atom();
        for (;;) {
            if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
                e = e.pow(integer());
                continue;
            }
            std::size_t save = i_;
            skip_ws();
            if (i_ < s_.size() && s_[i_] == '\'') {
                ++i_;
                e = e.inverse();
                continue;
            }
            if (i_ < s_.size() && s_[i_] == '^') {
                ++i_;
                skip_ws();
                if (i_ < s_.size() && (s_[i_] == '-' || std::isdigit(static_cast<unsigned char>(s_[i_])))) {
                    e = e.pow(integer());
                } else if (i_ < s_.size() && s_[i_] == '(') {
                    e = e.conjugate(atom());
                } else if (auto g = name_here()) {
                    e = e.conjugate(Element::generator(*g));
                } else {
                    fail("expected exponent or conjugator after '^'");
                }
                continue;
            }
            i_ = save;
            return e;
        }
    }

    const Presentation& p_;
    std::string_view s_;
    std::size_t i_ = 0;
    std::vector<std::size_t> order_;
};

}  // namespace

Element Presentation::parse(std::string_view text) const { return ElementParser(*this, text).parse_all(); }

std::vector<Element> Presentation::parse_list(std::string_view text) const {
    return ElementParser(*this, text).parse_list();
}

std::string Presentation::format(const Element& e) const {
    if (e.is_identity()) return "1";
    bool compact = std::all_of(names_.begin(), names_.end(), [](const std::string& n) { return n.size() == 1; });
    std::string out;
    const auto& w = e.letters();
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        long long k = static_cast<long long>(j - i) * (w[i] > 0 ? 1 : -1);
        if (!out.empty() && !compact) out += '*';
        out += names_[static_cast<std::size_t>(std::abs(w[i]) - 1)];
        if (k != 1) out += "^" + std::to_string(k);
        i = j;
    }
    return out;
}

std::string format_word_1based(const TreeWord& v, std::size_t d) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (d > 9 && i) s += '.';
        s += std::to_string(v[i] + 1);
    }
    return s;
}

TreeWord parse_word_1based(std::string_view text, std::size_t d) {
    TreeWord v;
    bool separated = text.find_first_of(".,") != std::string_view::npos || d > 9;
    std::size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '.' || ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("invalid letter in tree word '" + std::string(text) + "'");
        std::size_t x = 0;
        if (separated) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) x = x * 10 + (text[i++] - '0');
        } else {
            x = static_cast<std::size_t>(ch - '0');
            ++i;
        }
        if (x < 1 || x > d) throw OutOfRange("letter " + std::to_string(x) + " outside 1.." + std::to_string(d));
        v.push_back(static_cast<std::uint32_t>(x - 1));
    }
    return v;
}

TreeWord Presentation::parse_word(std::string_view text) const { return parse_word_1based(text, d_); }

std::string Presentation::format_word(const TreeWord& v) const { return format_word_1based(v, d_); }

}  // namespace img
