#include "imgrowth/perm.hpp"

#include <cctype>
#include <numeric>

#include "imgrowth/errors.hpp"

namespace img {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error(line > 0 ? msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)
                                  : msg),
      message_(msg),
      line_(line),
      column_(column) {}

void check_bijection(const std::vector<std::uint32_t>& images) {
    std::vector<bool> seen(images.size(), false);
    for (auto y : images) {
        if (y >= images.size() || seen[y]) throw ValidationError("permutation is not a bijection");
        seen[y] = true;
    }
}

Perm::Perm(std::size_t n) : img_(n) { std::iota(img_.begin(), img_.end(), 0u); }

Perm::Perm(std::vector<std::uint32_t> images) : img_(std::move(images)) { check_bijection(img_); }

Perm Perm::from_cycles(std::string_view text, std::size_t n) {
    Perm p(n);
    std::vector<bool> used(n, false);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    while (i < text.size()) {
        if (text[i] != '(') throw ParseError("expected '(' in permutation");
        ++i;
        std::vector<std::uint32_t> cyc;
        for (;;) {
            skip();
            if (i < text.size() && text[i] == ')') {
                ++i;
                break;
            }
            if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw ParseError("expected point in permutation cycle");
            std::size_t v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
            if (v < 1 || v > n) throw ValidationError("point " + std::to_string(v) + " outside 1.." + std::to_string(n));
            if (used[v - 1]) throw ValidationError("point " + std::to_string(v) + " repeated in permutation");
            used[v - 1] = true;
            cyc.push_back(static_cast<std::uint32_t>(v - 1));
            skip();
            if (i < text.size() && text[i] == ',') ++i;
        }
        for (std::size_t k = 0; k < cyc.size(); ++k) p.img_[cyc[k]] = cyc[(k + 1) % cyc.size()];
        skip();
    }
    return p;
}

bool Perm::is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != i) return false;
    return true;
}

Perm Perm::inverse() const {
    Perm q(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) q.img_[img_[i]] = static_cast<std::uint32_t>(i);
    return q;
}

Perm Perm::then(const Perm& other) const {
    Perm q(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) q.img_[i] = other.img_[img_[i]];
    return q;
}

std::vector<std::vector<std::uint32_t>> Perm::cycles() const {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<bool> seen(img_.size(), false);
    for (std::uint32_t i = 0; i < img_.size(); ++i) {
        if (seen[i] || img_[i] == i) continue;
        std::vector<std::uint32_t> c;
        for (std::uint32_t j = i; !seen[j]; j = img_[j]) {
            seen[j] = true;
            c.push_back(j);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::uint64_t Perm::order() const {
    std::uint64_t m = 1;
    for (const auto& c : cycles()) m = std::lcm(m, static_cast<std::uint64_t>(c.size()));
    return m;
}

std::string Perm::to_cycles() const {
    std::string s;
    for (const auto& c : cycles()) {
        s += '(';
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k) s += ' ';
            s += std::to_string(c[k] + 1);
        }
        s += ')';
    }
    return s.empty() ? "()" : s;
}

}  // namespace img
