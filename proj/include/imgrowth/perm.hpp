#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace img {

// Permutation of {0, ..., n-1}. Points act on the right: x^(p*q) = (x^p)^q.
// Text form uses disjoint cycles over 1-based points with fixed points omitted.
class Perm {
public:
    Perm() = default;
    explicit Perm(std::size_t n);
    explicit Perm(std::vector<std::uint32_t> images);

    static Perm identity(std::size_t n) { return Perm(n); }
    // Parses "(1 3)(2 5)(4 6)" on n points. Empty text is the identity.
    static Perm from_cycles(std::string_view text, std::size_t n);

    std::size_t size() const { return img_.size(); }
    std::uint32_t operator[](std::size_t x) const { return img_[x]; }
    std::uint32_t apply(std::size_t x) const { return img_[x]; }
    const std::vector<std::uint32_t>& images() const { return img_; }

    bool is_identity() const;
    Perm inverse() const;
    // this first, then other.
    Perm then(const Perm& other) const;
    Perm operator*(const Perm& other) const { return then(other); }
    std::uint64_t order() const;
    std::vector<std::vector<std::uint32_t>> cycles() const;
    std::string to_cycles() const;

    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return img_ != o.img_; }

private:
    std::vector<std::uint32_t> img_;
};

// Throws ValidationError unless images is a bijection of {0..n-1}.
void check_bijection(const std::vector<std::uint32_t>& images);

}  // namespace img
