#include <numeric>

#include "imgrowth/errors.hpp"
#include "imgrowth/selfsim.hpp"

namespace img {

std::uint64_t word_index(const TreeWord& v, std::size_t d) {
    std::uint64_t idx = 0;
    for (auto x : v) idx = idx * d + x;
    return idx;
}

TreeWord index_word(std::uint64_t index, std::size_t d, unsigned n) {
    TreeWord v(n);
    for (unsigned i = n; i-- > 0;) {
        v[i] = static_cast<std::uint32_t>(index % d);
        index /= d;
    }
    return v;
}

LevelEngine::LevelEngine(const Presentation& p, const Limits& limits) : p_(p), limits_(limits) {
    fwd_.reserve(64);
    inv_.reserve(64);
}

std::uint64_t LevelEngine::points(unsigned n) const {
    std::uint64_t m = 1;
    for (unsigned i = 0; i < n; ++i) {
        m *= p_.degree();
        if (m > limits_.max_level_points)
            throw BudgetExceeded("level " + std::to_string(n) + " has more than " + std::to_string(limits_.max_level_points) +
                                 " vertices");
    }
    return m;
}

void LevelEngine::compose(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                          std::vector<std::uint32_t>& out) {
    out.resize(a.size());
    for (std::size_t v = 0; v < a.size(); ++v) out[v] = b[a[v]];
}

void LevelEngine::ensure(unsigned n) {
    if (n >= 64) throw BudgetExceeded("level too large");
    std::lock_guard<std::mutex> lock(mu_);
    const std::size_t d = p_.degree();
    const std::size_t gens = p_.size();
    while (fwd_.size() <= n) {
        unsigned level = static_cast<unsigned>(fwd_.size());
        std::uint64_t size = points(level);
        std::vector<std::unique_ptr<std::vector<std::uint32_t>>> f(gens), b(gens);
        if (level == 0) {
            for (std::size_t g = 0; g < gens; ++g) {
                f[g] = std::make_unique<std::vector<std::uint32_t>>(1, 0);
                b[g] = std::make_unique<std::vector<std::uint32_t>>(1, 0);
            }
        } else {
            const std::uint64_t below = size / d;
            const auto& prev_f = fwd_[level - 1];
            const auto& prev_b = inv_[level - 1];
            std::vector<std::uint32_t> sec(below);
            for (std::size_t g = 0; g < gens; ++g) {
                auto arr = std::make_unique<std::vector<std::uint32_t>>(size);
                const Perm& root = p_.root(g);
                for (std::size_t x = 0; x < d; ++x) {
                    std::iota(sec.begin(), sec.end(), 0u);
                    for (Letter l : p_.section(g, x).letters()) {
                        const auto& la = l > 0 ? *prev_f[static_cast<std::size_t>(l - 1)] : *prev_b[static_cast<std::size_t>(-l - 1)];
                        for (auto& s : sec) s = la[s];
                    }
                    const std::uint64_t base = static_cast<std::uint64_t>(root[x]) * below;
                    std::uint32_t* out = arr->data() + x * below;
                    for (std::uint64_t r = 0; r < below; ++r) out[r] = static_cast<std::uint32_t>(base + sec[r]);
                }
                auto inv = std::make_unique<std::vector<std::uint32_t>>(size);
                for (std::uint64_t v = 0; v < size; ++v) (*inv)[(*arr)[v]] = static_cast<std::uint32_t>(v);
                f[g] = std::move(arr);
                b[g] = std::move(inv);
            }
        }
        fwd_.push_back(std::move(f));
        inv_.push_back(std::move(b));
    }
}

const std::vector<std::uint32_t>& LevelEngine::letter(Letter l, unsigned n) {
    ensure(n);
    std::lock_guard<std::mutex> lock(mu_);
    return l > 0 ? *fwd_[n][static_cast<std::size_t>(l - 1)] : *inv_[n][static_cast<std::size_t>(-l - 1)];
}

std::vector<std::uint32_t> LevelEngine::element(const Element& g, unsigned n) {
    std::vector<std::uint32_t> out(points(n));
    std::iota(out.begin(), out.end(), 0u);
    for (Letter l : g.letters()) {
        const auto& la = letter(l, n);
        for (auto& v : out) v = la[v];
    }
    return out;
}

std::vector<std::uint32_t> level_action(const Presentation& p, const Element& g, unsigned n, const Limits& limits) {
    LevelEngine eng(p, limits);
    return eng.element(g, n);
}

std::uint64_t array_order(const std::vector<std::uint32_t>& a) {
    std::vector<bool> seen(a.size(), false);
    std::uint64_t m = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (seen[i]) continue;
        std::uint64_t len = 0;
        for (std::size_t j = i; !seen[j]; j = a[j]) {
            seen[j] = true;
            ++len;
        }
        m = std::lcm(m, len);
    }
    return m;
}

}  // namespace img
