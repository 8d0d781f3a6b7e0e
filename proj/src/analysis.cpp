#include "imgrowth/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <map>
#include <set>

#include "imgrowth/errors.hpp"

namespace img {

std::size_t SchreierGraph::vertices() const {
    std::size_t v = 1;
    for (unsigned i = 0; i < level; ++i) v *= degree;
    return v;
}

SchreierGraph schreier_graph(const Presentation& p, const std::vector<Element>& gens, unsigned n, const Limits& limits) {
    LevelEngine eng(p, limits);
    SchreierGraph g;
    g.level = n;
    g.degree = p.degree();
    eng.points(n);
    for (const auto& e : gens) {
        g.labels.push_back(p.format(e));
        g.targets.push_back(eng.element(e, n));
    }
    return g;
}

std::string export_dot(const SchreierGraph& g) {
    std::ostringstream os;
    os << "digraph schreier {\n  // level " << g.level << "\n";
    const std::size_t n = g.vertices();
    std::vector<std::string> names(n);
    for (std::size_t v = 0; v < n; ++v) names[v] = format_word_1based(index_word(v, g.degree, g.level), g.degree);
    for (std::size_t v = 0; v < n; ++v) os << "  \"" << names[v] << "\";\n";
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t k = 0; k < g.targets.size(); ++k)
            os << "  \"" << names[v] << "\" -> \"" << names[g.targets[k][v]] << "\" [label=\"" << g.labels[k] << "\"];\n";
    os << "}\n";
    return os.str();
}

std::size_t component_count(const SchreierGraph& g) {
    const std::size_t n = g.vertices();
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t comps = n;
    for (const auto& t : g.targets)
        for (std::size_t v = 0; v < n; ++v) {
            auto a = find(static_cast<std::uint32_t>(v)), b = find(t[v]);
            if (a != b) {
                parent[a] = b;
                --comps;
            }
        }
    return comps;
}

bool level_transitive(const Presentation& p, const std::vector<Element>& gens, unsigned n, const Limits& limits) {
    return component_count(schreier_graph(p, gens, n, limits)) == 1;
}

RecurrenceReport recurrence_witness(const Presentation& p, std::size_t x, const std::vector<Element>& witnesses,
                                    const Limits& limits) {
    if (x >= p.degree()) throw OutOfRange("letter " + std::to_string(x + 1) + " outside 1.." + std::to_string(p.degree()));
    RecurrenceReport r;
    for (const auto& w : witnesses) {
        if (root_perm(p, w)[x] != x)
            throw ValidationError("witness " + p.format(w) + " moves letter " + std::to_string(x + 1));
        r.sections.push_back(section(p, w, x));
    }
    // Words of length <= 4 over the sections and their inverses.
    std::vector<Element> symbols;
    std::vector<long long> codes;
    for (std::size_t i = 0; i < r.sections.size(); ++i) {
        symbols.push_back(r.sections[i]);
        codes.push_back(static_cast<long long>(i + 1));
        symbols.push_back(r.sections[i].inverse());
        codes.push_back(-static_cast<long long>(i + 1));
    }
    LevelEngine eng(p, limits);
    const unsigned probe = 2;
    std::vector<std::pair<Element, std::vector<long long>>> words{{Element(), {}}};
    for (std::size_t len = 0, from = 0; len < 4; ++len) {
        std::size_t to = words.size();
        for (std::size_t i = from; i < to; ++i)
            for (std::size_t s = 0; s < symbols.size(); ++s) {
                auto code = words[i].second;
                if (!code.empty() && code.back() == -codes[s]) continue;
                code.push_back(codes[s]);
                words.emplace_back(words[i].first * symbols[s], std::move(code));
            }
        from = to;
    }
    r.generates = true;
    for (std::size_t g = 0; g < p.size(); ++g) {
        Element target = Element::generator(g);
        auto ta = eng.element(target, probe);
        std::optional<std::vector<long long>> found;
        for (const auto& [e, code] : words) {
            if (eng.element(e, probe) != ta) continue;
            if (equal(p, e, target, limits).trivial == Decision::Yes) {
                found = code;
                break;
            }
        }
        if (!found) r.generates = false;
        r.expressions.push_back(std::move(found));
    }
    return r;
}

Fingerprint fingerprint(const std::vector<std::uint32_t>& a) {
    // FNV-1a over the 32-bit entries, and a splitmix64 chain seeded by the size.
    std::uint64_t h1 = 0xcbf29ce484222325ULL;
    std::uint64_t h2 = 0x9e3779b97f4a7c15ULL ^ a.size();
    for (std::uint32_t x : a) {
        h1 = (h1 ^ x) * 0x100000001b3ULL;
        std::uint64_t z = h2 + x + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        h2 = z ^ (z >> 31);
    }
    return {h1, h2};
}

namespace {

struct FpHash {
    std::size_t operator()(const Fingerprint& f) const noexcept { return static_cast<std::size_t>(f[0] ^ (f[1] << 1)); }
};

}  // namespace

CensusReport ball_census(const Presentation& p, const std::vector<Element>& gens, unsigned n, unsigned radius,
                         const Limits& limits) {
    if (gens.empty()) throw ValidationError("census needs at least one generator");
    LevelEngine eng(p, limits);
    CensusReport rep;
    rep.level = n;
    rep.radius = radius;
    std::vector<std::vector<std::uint32_t>> sym;
    for (const auto& g : gens) {
        sym.push_back(eng.element(g, n));
        sym.push_back(eng.element(g.inverse(), n));
    }
    std::vector<std::uint32_t> id(eng.points(n));
    std::iota(id.begin(), id.end(), 0u);
    std::unordered_set<Fingerprint, FpHash> seen{fingerprint(id)};
    std::vector<std::vector<std::uint32_t>> frontier{id};
    rep.counts.push_back(1);
    std::vector<std::uint32_t> tmp;
    for (unsigned r = 1; r <= radius; ++r) {
        std::vector<std::vector<std::uint32_t>> next;
        for (const auto& a : frontier)
            for (const auto& s : sym) {
                LevelEngine::compose(a, s, tmp);
                if (seen.insert(fingerprint(tmp)).second) {
                    if (seen.size() > limits.max_census_states) {
                        rep.radius_reached = r - 1;
                        return rep;
                    }
                    next.push_back(tmp);
                }
            }
        rep.counts.push_back(seen.size());
        rep.radius_reached = r;
        frontier = std::move(next);
    }
    rep.complete = true;
    return rep;
}

unsigned default_start_level(unsigned maxlen) {
    unsigned n = 3;
    while ((1ULL << (n - 3)) <= maxlen) ++n;
    return n;
}

Element semigroup_word(const std::vector<Element>& gens, const std::vector<std::uint32_t>& w) {
    Element e;
    for (auto i : w) e *= gens[i];
    return e;
}

namespace {

// Visits every nonempty positive word of length <= maxlen in shortlex
// order, with its level action.
void for_each_word(const std::vector<std::vector<std::uint32_t>>& gens, unsigned maxlen,
                   const std::function<void(const std::vector<std::uint32_t>&, const std::vector<std::uint32_t>&)>& fn) {
    std::vector<std::vector<std::uint32_t>> stack(maxlen + 1);
    std::vector<std::uint32_t> word;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned depth, unsigned target) {
        if (depth == target) {
            fn(word, stack[depth]);
            return;
        }
        for (std::uint32_t g = 0; g < gens.size(); ++g) {
            word.push_back(g);
            if (depth == 0)
                stack[1] = gens[g];
            else
                LevelEngine::compose(stack[depth], gens[g], stack[depth + 1]);
            rec(depth + 1, target);
            word.pop_back();
        }
    };
    for (unsigned len = 1; len <= maxlen; ++len) rec(0, len);
}

}  // namespace

FreeSemigroupResult certify_free_semigroup(const Presentation& p, const std::vector<Element>& gens, unsigned maxlen,
                                           unsigned level_min, unsigned level_max, const Limits& limits) {
    if (gens.empty()) throw ValidationError("free semigroup check needs at least one generator");
    if (maxlen < 1) throw ValidationError("maximal length must be at least 1");
    FreeSemigroupResult res;
    LevelEngine eng(p, limits);
    std::vector<std::uint32_t> empty_word;

    for (unsigned n = level_min; n <= level_max; ++n) {
        std::uint64_t pts;
        try {
            pts = eng.points(n);
        } catch (const BudgetExceeded& e) {
            res.note = e.what();
            break;
        }
        res.levels_tried.push_back(n);
        std::vector<std::vector<std::uint32_t>> ga;
        for (const auto& g : gens) ga.push_back(eng.element(g, n));
        std::vector<std::uint32_t> id(pts);
        std::iota(id.begin(), id.end(), 0u);

        std::unordered_map<Fingerprint, std::size_t, FpHash> index;
        std::vector<std::vector<std::uint32_t>> words{empty_word};
        index.emplace(fingerprint(id), 0);
        std::vector<std::pair<std::size_t, std::size_t>> collisions;
        for_each_word(ga, maxlen, [&](const std::vector<std::uint32_t>& w, const std::vector<std::uint32_t>& a) {
            auto [it, fresh] = index.emplace(fingerprint(a), words.size());
            if (!fresh) collisions.emplace_back(it->second, words.size());
            words.push_back(w);
        });

        // A fingerprint match is a collision only if the full arrays agree.
        bool separated = true;
        for (auto [i, j] : collisions) {
            auto ai = eng.element(semigroup_word(gens, words[i]), n);
            auto aj = eng.element(semigroup_word(gens, words[j]), n);
            if (ai != aj) continue;
            separated = false;
            auto eq = equal(p, semigroup_word(gens, words[i]), semigroup_word(gens, words[j]), limits);
            if (eq.trivial == Decision::Yes) {
                res.kind = FreeSemigroupResult::Counterexample;
                res.level = n;
                res.pair = {words[i], words[j]};
                res.words = words.size() - 1;
                return res;
            }
        }
        if (!separated) continue;

        // Choose separating vertices among growing candidate sets.
        res.kind = FreeSemigroupResult::Certified;
        res.level = n;
        res.words = words.size() - 1;
        res.word_list.assign(words.begin() + 1, words.end());
        for (std::uint64_t budget = 64;; budget *= 4) {
            std::vector<std::uint32_t> cand;
            std::uint64_t stride = std::max<std::uint64_t>(1, pts / std::min(budget, pts));
            for (std::uint64_t v = 0; v < pts && cand.size() < budget; v += stride) cand.push_back(static_cast<std::uint32_t>(v));
            // table[c][word], word 0 is the identity
            std::vector<std::vector<std::uint32_t>> table(cand.size(), std::vector<std::uint32_t>(words.size()));
            for (std::size_t c = 0; c < cand.size(); ++c) table[c][0] = cand[c];
            std::size_t wi = 1;
            for_each_word(ga, maxlen, [&](const std::vector<std::uint32_t>&, const std::vector<std::uint32_t>& a) {
                for (std::size_t c = 0; c < cand.size(); ++c) table[c][wi] = a[cand[c]];
                ++wi;
            });
            // Greedy partition refinement.
            std::vector<std::uint32_t> cls(words.size(), 0);
            std::size_t classes = 1;
            std::vector<std::size_t> chosen;
            for (std::size_t c = 0; c < cand.size() && classes < words.size(); ++c) {
                std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> key;
                std::vector<std::uint32_t> ncls(words.size());
                for (std::size_t w = 0; w < words.size(); ++w) {
                    auto k = std::make_pair(cls[w], table[c][w]);
                    auto it = key.emplace(k, static_cast<std::uint32_t>(key.size())).first;
                    ncls[w] = it->second;
                }
                if (key.size() > classes) {
                    classes = key.size();
                    cls = std::move(ncls);
                    chosen.push_back(c);
                }
            }
            if (classes == words.size()) {
                for (auto c : chosen) res.points.push_back(cand[c]);
                res.images.assign(words.size() - 1, {});
                for (std::size_t w = 1; w < words.size(); ++w)
                    for (auto c : chosen) res.images[w - 1].push_back(table[c][w]);
                return res;
            }
            if (cand.size() >= pts) break;
        }
        res.kind = FreeSemigroupResult::Inconclusive;
        res.note = "internal: arrays differ but no separating vertex set was found";
        return res;
    }
    res.kind = FreeSemigroupResult::Inconclusive;
    if (res.note.empty()) res.note = "words not separated up to level " + std::to_string(level_max);
    return res;
}

bool recheck_free_semigroup(const Presentation& p, const std::vector<Element>& gens, const FreeSemigroupResult& r) {
    if (r.kind != FreeSemigroupResult::Certified) return false;
    if (r.images.size() != r.word_list.size()) return false;
    std::vector<TreeWord> pts;
    for (auto v : r.points) pts.push_back(index_word(v, p.degree(), r.level));
    std::set<std::vector<std::uint32_t>> seen;
    seen.insert(r.points);  // identity images
    for (std::size_t w = 0; w < r.word_list.size(); ++w) {
        Element e = semigroup_word(gens, r.word_list[w]);
        std::vector<std::uint32_t> imgs;
        for (const auto& v : pts) imgs.push_back(static_cast<std::uint32_t>(word_index(act(p, e, v), p.degree())));
        if (imgs != r.images[w]) return false;
        if (!seen.insert(imgs).second) return false;
    }
    return true;
}

WreathPattern parse_pattern(const Presentation& p, std::string_view text) {
    WreathPattern pat;
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || text[i] != '<') throw ParseError("pattern must start with '<'", 1, static_cast<int>(i + 1));
    int depth = 0;
    std::size_t from = i + 1, close = std::string_view::npos;
    std::vector<std::string> parts;
    for (std::size_t j = i + 1; j < text.size(); ++j) {
        char c = text[j];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (depth == 0 && (c == ',' || c == '>')) {
            parts.emplace_back(text.substr(from, j - from));
            from = j + 1;
            if (c == '>') {
                close = j;
                break;
            }
        }
    }
    if (close == std::string_view::npos) throw ParseError("missing '>' in pattern");
    if (parts.size() != p.degree())
        throw ParseError("pattern has " + std::to_string(parts.size()) + " entries, expected " + std::to_string(p.degree()));
    for (auto& s : parts) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        std::string t = b == std::string::npos ? "" : s.substr(b, e - b + 1);
        if (t == ".")
            pat.sections.emplace_back(std::nullopt);
        else
            pat.sections.emplace_back(p.parse(t));
    }
    std::string_view rest = text.substr(close + 1);
    auto b = rest.find_first_not_of(" \t");
    if (b != std::string_view::npos && rest.substr(b, 1) == "?") {
        if (rest.find_first_not_of(" \t", b + 1) != std::string_view::npos) throw ParseError("unexpected text after '?'");
    } else {
        pat.root = Perm::from_cycles(rest, p.degree());
    }
    return pat;
}

bool IdentityCheck::passed() const {
    if (!root_ok) return false;
    for (const auto& s : sections)
        if (s && *s != Decision::Yes) return false;
    return true;
}

bool IdentityCheck::inconclusive() const {
    if (!root_ok) return false;
    bool inc = false;
    for (const auto& s : sections) {
        if (s && *s == Decision::No) return false;
        if (s && *s == Decision::Inconclusive) inc = true;
    }
    return inc;
}

IdentityCheck verify_identity(const Presentation& p, const Element& lhs, const WreathPattern& pattern,
                              const Limits& limits) {
    IdentityCheck c;
    Perm r = root_perm(p, lhs);
    c.root_actual = r.to_cycles();
    if (pattern.root) c.root_ok = r == *pattern.root;
    for (std::size_t x = 0; x < p.degree(); ++x) {
        if (!pattern.sections[x]) {
            c.sections.emplace_back(std::nullopt);
            continue;
        }
        c.sections.emplace_back(equal(p, section(p, lhs, x), *pattern.sections[x], limits).trivial);
    }
    return c;
}

}  // namespace img
