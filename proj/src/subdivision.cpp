#include "imgrowth/subdivision.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "imgrowth/errors.hpp"

namespace img {

namespace {

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

}  // namespace

std::optional<std::uint32_t> RuleData::find_vertex(std::string_view name) const {
    for (std::uint32_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].name == name) return i;
    return std::nullopt;
}

int RuleData::post_index(std::string_view label) const {
    for (std::size_t k = 0; k < rule_.post_labels.size(); ++k)
        if (rule_.post_labels[k] == label) return static_cast<int>(k);
    return -1;
}

std::optional<std::pair<std::size_t, bool>> RuleData::zero_edge(std::string_view p, std::string_view q) const {
    int a = post_index(p), b = post_index(q);
    if (a < 0 || b < 0) return std::nullopt;
    const int mm = static_cast<int>(m());
    if ((a + 1) % mm == b) return std::make_pair(static_cast<std::size_t>(a), true);
    if ((b + 1) % mm == a) return std::make_pair(static_cast<std::size_t>(b), false);
    return std::nullopt;
}

RuleData::RuleData(const SubdivisionRule& rule) : rule_(rule) {
    std::vector<std::string> errors;
    auto fatal = [&](const std::string& msg) {
        errors.push_back(msg);
        throw ValidationError(join(errors, "\n"));
    };
    const std::size_t m = rule.post_labels.size();
    if (m < 2) fatal("at least two postcritical labels are required");
    if (std::set<std::string>(rule.post_labels.begin(), rule.post_labels.end()).size() != m)
        fatal("postcritical labels repeat");
    if (rule.degree < 1) fatal("degree must be positive");

    // Vertex registry: post labels, then curve order, then tile order.
    std::map<std::string, std::uint32_t> index;
    auto add = [&](const std::string& n) {
        if (index.count(n)) return;
        index[n] = static_cast<std::uint32_t>(vertices_.size());
        vertices_.push_back({n});
    };
    for (const auto& p : rule.post_labels) add(p);
    for (const auto& c : rule.curve) add(c);
    for (const auto& t : rule.tiles)
        for (const auto& v : t.vertices) add(v);
    for (auto& v : vertices_) {
        auto it = rule.images.find(v.name);
        if (it == rule.images.end()) {
            errors.push_back("vertex '" + v.name + "' has no image");
            continue;
        }
        int k = post_index(it->second);
        if (k < 0) {
            errors.push_back("vertex '" + v.name + "' maps to '" + it->second + "', which is not a postcritical label");
            continue;
        }
        v.image = static_cast<std::uint32_t>(k);
    }
    for (std::size_t k = 0; k < m; ++k) {
        post_vertex_.push_back(index[rule.post_labels[k]]);
        vertices_[post_vertex_[k]].post = static_cast<int>(k);
    }
    if (!errors.empty()) fatal("vertex images are incomplete");

    // Curve: starts at p_0 and meets the labels in order.
    if (rule.curve.empty() || rule.curve[0] != rule.post_labels[0]) fatal("curve must start at the first postcritical label");
    if (std::set<std::string>(rule.curve.begin(), rule.curve.end()).size() != rule.curve.size()) fatal("curve repeats a vertex");
    {
        std::vector<std::size_t> pos;
        for (const auto& p : rule.post_labels) {
            auto it = std::find(rule.curve.begin(), rule.curve.end(), p);
            if (it == rule.curve.end()) fatal("curve misses postcritical label '" + p + "'");
            pos.push_back(static_cast<std::size_t>(it - rule.curve.begin()));
        }
        for (std::size_t k = 1; k < m; ++k)
            if (pos[k] <= pos[k - 1]) fatal("curve meets the postcritical labels out of order");
        chain_.assign(m, {});
        for (std::size_t k = 0; k < m; ++k) {
            std::size_t from = pos[k], to = k + 1 < m ? pos[k + 1] : rule.curve.size();
            for (std::size_t i = from; i <= to; ++i) chain_[k].push_back(index[rule.curve[i % rule.curve.size()]]);
            for (std::size_t j = 1; j + 1 < chain_[k].size(); ++j) {
                vertices_[chain_[k][j]].curve_k = static_cast<int>(k);
                vertices_[chain_[k][j]].curve_pos = static_cast<std::uint32_t>(j);
            }
        }
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> curve_pair;  // unordered pair -> k
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j + 1 < chain_[k].size(); ++j) {
            auto a = chain_[k][j], b = chain_[k][j + 1];
            curve_pair[{std::min(a, b), std::max(a, b)}] = k;
        }

    // Tiles with corners indexed by the postcritical point they cover.
    std::size_t whites = 0, blacks = 0;
    std::map<std::string, std::uint32_t> edge_index;
    std::vector<int> edge_uses;
    for (std::uint32_t ti = 0; ti < rule.tiles.size(); ++ti) {
        const auto& t = rule.tiles[ti];
        (t.white ? whites : blacks)++;
        if (t.vertices.size() != m) {
            errors.push_back("tile '" + t.name + "' has " + std::to_string(t.vertices.size()) + " vertices, expected " + std::to_string(m));
            continue;
        }
        if (!t.edges.empty() && t.edges.size() != m) {
            errors.push_back("tile '" + t.name + "' lists " + std::to_string(t.edges.size()) + " edges, expected " + std::to_string(m));
            continue;
        }
        std::vector<std::uint32_t> vs;
        for (const auto& n : t.vertices) vs.push_back(index[n]);
        if (std::set<std::uint32_t>(vs.begin(), vs.end()).size() != m) {
            errors.push_back("tile '" + t.name + "' repeats a vertex");
            continue;
        }
        // White tiles cover p_0..p_{m-1} positively, black tiles negatively.
        std::optional<std::size_t> rot;
        for (std::size_t r = 0; r < m && !rot; ++r) {
            bool ok = true;
            for (std::size_t i = 0; i < m && ok; ++i) {
                std::size_t at = t.white ? (r + i) % m : (r + m - i) % m;
                ok = vertices_[vs[at]].image == i;
            }
            if (ok) rot = r;
        }
        if (!rot) {
            errors.push_back("tile '" + t.name + "' does not map onto the " + std::string(t.white ? "white" : "black") +
                             " 0-tile preserving orientation");
            continue;
        }
        Tile tile{t.name, t.white, t.top, std::vector<std::uint32_t>(m), std::vector<std::uint32_t>(m)};
        for (std::size_t k = 0; k < m; ++k) tile.corner[k] = vs[t.white ? (*rot + k) % m : (*rot + m - k) % m];
        for (std::size_t k = 0; k < m; ++k) {
            std::uint32_t a = tile.corner[k], b = tile.corner[(k + 1) % m];
            std::string ename;
            if (!t.edges.empty()) {
                std::size_t at = t.white ? (*rot + k) % m : (*rot + 2 * m - k - 1) % m;
                ename = t.edges[at];
            } else if (curve_pair.count({std::min(a, b), std::max(a, b)})) {
                ename = "curve:" + vertices_[std::min(a, b)].name + "-" + vertices_[std::max(a, b)].name;
            } else {
                ename = std::string(t.top ? "top:" : "bottom:") + vertices_[std::min(a, b)].name + "-" + vertices_[std::max(a, b)].name;
            }
            auto it = edge_index.find(ename);
            if (it == edge_index.end()) {
                Edge e;
                e.name = ename;
                e.k = static_cast<std::uint32_t>(k);
                e.start = a;
                e.end = b;
                e.tile[0] = ti;
                edge_index[ename] = static_cast<std::uint32_t>(edges_.size());
                edges_.push_back(e);
                edge_uses.push_back(1);
                tile.side[k] = static_cast<std::uint32_t>(edges_.size() - 1);
            } else {
                Edge& e = edges_[it->second];
                if (edge_uses[it->second] >= 2) {
                    errors.push_back("edge '" + ename + "' bounds more than two tiles");
                    continue;
                }
                if (e.k != k || e.start != a || e.end != b) {
                    errors.push_back("edge '" + ename + "' is glued inconsistently between tiles '" + rule.tiles[e.tile[0]].name +
                                     "' and '" + t.name + "'");
                    continue;
                }
                if (rule.tiles[e.tile[0]].white == t.white) {
                    errors.push_back("color alternation fails: tiles '" + rule.tiles[e.tile[0]].name + "' and '" + t.name +
                                     "' share edge '" + ename + "' and have the same color");
                    continue;
                }
                e.tile[1] = ti;
                edge_uses[it->second] = 2;
                tile.side[k] = it->second;
            }
        }
        tiles_.push_back(std::move(tile));
    }
    if (!errors.empty()) fatal("tiles are inconsistent");
    if (whites != rule.degree || blacks != rule.degree)
        errors.push_back("expected " + std::to_string(rule.degree) + " white and black tiles, found " + std::to_string(whites) +
                         " white and " + std::to_string(blacks) + " black");
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (edge_uses[e] != 2) errors.push_back("edge '" + edges_[e].name + "' bounds only one tile");
    for (const auto& [name, ends] : rule.gluing) {
        auto it = edge_index.find(name);
        if (it == edge_index.end()) {
            errors.push_back("gluing names unknown edge '" + name + "'");
            continue;
        }
        std::set<std::string> want{ends.first, ends.second};
        std::set<std::string> have{vertices_[edges_[it->second].start].name, vertices_[edges_[it->second].end].name};
        if (want != have) errors.push_back("gluing endpoints of '" + name + "' disagree with the tiles");
    }
    if (!errors.empty()) fatal("gluing is inconsistent");

    // Curve edges separate the faces; all other edges stay inside one face.
    chain_edges_.assign(m, {});
    std::set<std::uint32_t> on_curve;
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j + 1 < chain_[k].size(); ++j) {
            auto a = chain_[k][j], b = chain_[k][j + 1];
            std::optional<std::uint32_t> found;
            for (std::uint32_t e = 0; e < edges_.size(); ++e) {
                const auto& E = edges_[e];
                bool ends = (E.start == a && E.end == b) || (E.start == b && E.end == a);
                if (ends && tiles_[E.tile[0]].top != tiles_[E.tile[1]].top) found = e;
            }
            if (!found) {
                errors.push_back("no edge separates the faces between curve vertices '" + vertices_[a].name + "' and '" +
                                 vertices_[b].name + "'");
                continue;
            }
            edges_[*found].curve_k = static_cast<int>(k);
            edges_[*found].curve_pos = static_cast<std::uint32_t>(j);
            chain_edges_[k].push_back(*found);
            on_curve.insert(*found);
        }
    for (std::uint32_t e = 0; e < edges_.size(); ++e)
        if (!on_curve.count(e) && tiles_[edges_[e].tile[0]].top != tiles_[edges_[e].tile[1]].top)
            errors.push_back("edge '" + edges_[e].name + "' joins the two faces away from the curve");
    if (!errors.empty()) fatal("faces are inconsistent");

    // Flowers: walking positively around each vertex must visit every
    // incident tile corner exactly once.
    std::vector<std::vector<std::uint32_t>> incident(vertices_.size());
    for (std::uint32_t t = 0; t < tiles_.size(); ++t)
        for (auto v : tiles_[t].corner) incident[v].push_back(t);
    for (std::uint32_t v = 0; v < vertices_.size(); ++v) {
        if (incident[v].empty()) {
            errors.push_back("vertex '" + vertices_[v].name + "' lies on no tile");
            continue;
        }
        vertices_[v].tile = incident[v][0];
        std::size_t steps = 0;
        std::uint32_t t = incident[v][0];
        do {
            const auto& T = tiles_[t];
            std::size_t i = static_cast<std::size_t>(std::find(T.corner.begin(), T.corner.end(), v) - T.corner.begin());
            const auto& E = edges_[T.side[T.white ? (i + m - 1) % m : i]];
            t = E.tile[0] == t ? E.tile[1] : E.tile[0];
            ++steps;
        } while (t != incident[v][0] && steps <= incident[v].size());
        if (steps != incident[v].size() || steps % 2) {
            errors.push_back("tiles around vertex '" + vertices_[v].name + "' do not form a single flower");
            continue;
        }
        vertices_[v].degree = static_cast<unsigned>(steps / 2);
    }
    long long chi = static_cast<long long>(vertices_.size()) - static_cast<long long>(edges_.size()) + static_cast<long long>(tiles_.size());
    if (chi != 2) errors.push_back("Euler characteristic is " + std::to_string(chi) + ", expected 2");

    for (const auto& [g, label] : rule.generators)
        if (post_index(label) < 0) errors.push_back("generator '" + g + "' names unknown label '" + label + "'");
    for (const auto& [p, q] : rule.invariant_edges)
        if (!zero_edge(p, q)) errors.push_back("invariant edge [" + p + "," + q + "] is not a 0-edge");
    if (!errors.empty()) throw ValidationError(join(errors, "\n"));
}

Portrait RuleData::induced_portrait() const {
    Portrait p;
    for (std::size_t k = 0; k < m(); ++k) p.add(rule_.post_labels[k], true);
    for (const auto& v : vertices_)
        if (v.post < 0 && v.degree >= 2) p.add(v.name, false);
    for (const auto& v : vertices_) {
        auto i = p.find(v.name);
        if (i) p.set_edge(*i, static_cast<std::size_t>(v.image), v.degree);
    }
    return p;
}

EdgeData RuleData::edge_data(std::string_view p, std::string_view q) const {
    auto z = zero_edge(p, q);
    if (!z) throw ValidationError("[" + std::string(p) + "," + std::string(q) + "] is not a 0-edge");
    auto chain = chain_[z->first];
    if (!z->second) std::reverse(chain.begin(), chain.end());
    EdgeData e;
    e.p = std::string(p);
    e.q = std::string(q);
    e.name = "[" + e.p + "," + e.q + "]";
    for (std::size_t j = 1; j + 1 < chain.size(); ++j) {
        const auto& v = vertices_[chain[j]];
        EdgeData::Interior in;
        in.name = v.name;
        in.type = rule_.post_labels[v.image];
        in.degree = v.degree;
        unsigned top = 0, bottom = 0;
        for (const auto& t : tiles_)
            if (std::find(t.corner.begin(), t.corner.end(), chain[j]) != t.corner.end()) (t.top ? top : bottom)++;
        in.sectors = std::make_pair(top, bottom);
        e.interior.push_back(std::move(in));
    }
    return e;
}

RuleValidation validate_rule(const SubdivisionRule& rule) {
    RuleValidation r;
    try {
        RuleData data(rule);
        r.portrait = data.induced_portrait();
        validate_portrait(*r.portrait);
        r.ok = true;
    } catch (const ValidationError& e) {
        std::istringstream is(e.what());
        for (std::string line; std::getline(is, line);) r.errors.push_back(line);
    }
    return r;
}

// ---------------------------------------------------------------------------

CellComplex::CellComplex(const RuleData& rule, unsigned level, std::size_t max_tiles) : rule_(&rule), level_(level) {
    const std::size_t m = rule.m();
    {
        std::uint64_t tiles = 2;
        for (unsigned i = 0; i < level; ++i) {
            tiles *= rule.d();
            if (tiles > max_tiles)
                throw BudgetExceeded("level " + std::to_string(level) + " needs more than " + std::to_string(max_tiles) + " tiles");
        }
    }
    // Level 0: the two faces.
    for (std::size_t k = 0; k < m; ++k)
        vertices_.push_back({rule.rule().post_labels[k], static_cast<std::uint32_t>(k), 0, rule.post_vertex(k), 0});
    chains_.assign(m, {});
    for (std::size_t k = 0; k < m; ++k) {
        edges_.push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k), static_cast<std::uint32_t>((k + 1) % m), {0, 1}});
        chains_[k].push_back(static_cast<std::uint32_t>(k));
    }
    Tile w{"", true, true, UINT32_MAX, {}, {}}, b{"", false, false, UINT32_MAX, {}, {}};
    for (std::size_t k = 0; k < m; ++k) {
        w.corner.push_back(static_cast<std::uint32_t>(k));
        w.side.push_back(static_cast<std::uint32_t>(k));
    }
    b.corner = w.corner;
    b.side = w.side;
    tiles_ = {w, b};

    std::vector<std::uint32_t> top_tiles, bottom_tiles;
    for (std::uint32_t t = 0; t < rule.tiles().size(); ++t) (rule.tiles()[t].top ? top_tiles : bottom_tiles).push_back(t);

    for (unsigned n = 1; n <= level; ++n) {
        for (auto& v : vertices_) v.type = rule.post_image(v.type);
        std::vector<Vertex> verts = vertices_;
        std::vector<Edge> edges;
        std::vector<Tile> tiles;
        std::unordered_map<std::uint64_t, std::uint32_t> on_edge_vertex, on_edge_segment;
        const std::uint64_t stride = 1u << 16;
        for (std::uint32_t yi = 0; yi < tiles_.size(); ++yi) {
            const Tile& Y = tiles_[yi];
            const auto& pattern = Y.white ? top_tiles : bottom_tiles;
            std::unordered_map<std::uint32_t, std::uint32_t> local_vertex, local_edge;
            auto vertex_for = [&](std::uint32_t u) -> std::uint32_t {
                const auto& U = rule.vertices()[u];
                if (U.post >= 0) return Y.corner[static_cast<std::size_t>(U.post)];
                std::uint32_t* slot;
                if (U.curve_k >= 0) {
                    std::uint64_t key = Y.side[static_cast<std::size_t>(U.curve_k)] * stride + U.curve_pos;
                    auto [it, fresh] = on_edge_vertex.emplace(key, 0);
                    if (!fresh) return it->second;
                    slot = &it->second;
                } else {
                    auto [it, fresh] = local_vertex.emplace(u, 0);
                    if (!fresh) return it->second;
                    slot = &it->second;
                }
                std::string name = n == 1 ? U.name : Y.name + "/" + U.name;
                verts.push_back({name, U.image, n, u, 0});
                *slot = static_cast<std::uint32_t>(verts.size() - 1);
                return *slot;
            };
            auto edge_for = [&](std::uint32_t re) -> std::uint32_t {
                const auto& RE = rule.edges()[re];
                std::uint32_t* slot;
                if (RE.curve_k >= 0) {
                    std::uint64_t key = Y.side[static_cast<std::size_t>(RE.curve_k)] * stride + RE.curve_pos;
                    auto [it, fresh] = on_edge_segment.emplace(key, 0);
                    if (!fresh) return it->second;
                    slot = &it->second;
                } else {
                    auto [it, fresh] = local_edge.emplace(re, 0);
                    if (!fresh) return it->second;
                    slot = &it->second;
                }
                edges.push_back({RE.k, vertex_for(RE.start), vertex_for(RE.end), {UINT32_MAX, UINT32_MAX}});
                *slot = static_cast<std::uint32_t>(edges.size() - 1);
                return *slot;
            };
            for (auto ti : pattern) {
                const auto& T = rule.tiles()[ti];
                Tile Z;
                Z.name = n == 1 ? T.name : Y.name + "." + T.name;
                Z.white = T.white;
                Z.top = n == 1 ? T.top : Y.top;
                Z.parent = yi;
                const auto zi = static_cast<std::uint32_t>(tiles.size());
                for (std::size_t k = 0; k < m; ++k) Z.corner.push_back(vertex_for(T.corner[k]));
                for (std::size_t k = 0; k < m; ++k) {
                    auto e = edge_for(T.side[k]);
                    auto& slot = edges[e].tile[0] == UINT32_MAX ? edges[e].tile[0] : edges[e].tile[1];
                    slot = zi;
                    Z.side.push_back(e);
                }
                tiles.push_back(std::move(Z));
            }
        }
        // The curve chains refine segment by segment.
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<std::uint32_t> chain;
            std::uint32_t at = static_cast<std::uint32_t>(k);  // vertex p_k
            for (auto e : chains_[k]) {
                const Edge& E = edges_[e];
                const std::size_t segs = rule.chain_edges(E.k).size();
                bool forward = E.start == at;
                for (std::size_t j = 0; j < segs; ++j) {
                    std::size_t s = forward ? j : segs - 1 - j;
                    chain.push_back(on_edge_segment.at(e * stride + s));
                }
                at = forward ? E.end : E.start;
            }
            chains_[k] = std::move(chain);
        }
        vertices_ = std::move(verts);
        edges_ = std::move(edges);
        tiles_ = std::move(tiles);
    }
    for (std::uint32_t t = 0; t < tiles_.size(); ++t) {
        for (auto v : tiles_[t].corner) vertices_[v].tile = t;
        if (tiles_[t].white) white_.push_back(t);
    }
    if (level == 0) {
        tiles_[0].name = "0";
        tiles_[1].name = "0'";
    }
}

std::optional<std::uint32_t> CellComplex::find_vertex(std::string_view name) const {
    for (std::uint32_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].name == name) return i;
    return std::nullopt;
}

std::optional<std::uint32_t> CellComplex::find_tile(std::string_view name) const {
    for (std::uint32_t i = 0; i < tiles_.size(); ++i)
        if (tiles_[i].name == name) return i;
    return std::nullopt;
}

std::uint32_t CellComplex::next_around(std::uint32_t t, std::uint32_t v) const {
    const std::size_t m = rule_->m();
    const Tile& T = tiles_[t];
    auto it = std::find(T.corner.begin(), T.corner.end(), v);
    if (it == T.corner.end()) throw OutOfRange("vertex is not a corner of the tile");
    std::size_t i = static_cast<std::size_t>(it - T.corner.begin());
    const Edge& E = edges_[T.side[T.white ? (i + m - 1) % m : i]];
    return E.tile[0] == t ? E.tile[1] : E.tile[0];
}

std::vector<std::uint32_t> CellComplex::flower(std::uint32_t v) const {
    if (v >= vertices_.size()) throw OutOfRange("unknown vertex");
    std::vector<std::uint32_t> out;
    std::uint32_t start = vertices_[v].tile, t = start;
    do {
        out.push_back(t);
        t = next_around(t, v);
        if (out.size() > tiles_.size()) throw ValidationError("flower does not close");
    } while (t != start);
    return out;
}

std::vector<std::uint32_t> CellComplex::edge_vertices(std::size_t k) const {
    std::vector<std::uint32_t> out{static_cast<std::uint32_t>(k)};
    for (auto e : chains_.at(k)) {
        const Edge& E = edges_[e];
        out.push_back(E.start == out.back() ? E.end : E.start);
    }
    return out;
}

long long CellComplex::euler_characteristic() const {
    return static_cast<long long>(vertices_.size()) - static_cast<long long>(edges_.size()) + static_cast<long long>(tiles_.size());
}

bool CellComplex::colors_alternate() const {
    for (const auto& e : edges_)
        if (e.tile[0] == UINT32_MAX || e.tile[1] == UINT32_MAX || tiles_[e.tile[0]].white == tiles_[e.tile[1]].white) return false;
    for (std::uint32_t v = 0; v < vertices_.size(); ++v) {
        auto f = flower(v);
        if (f.size() % 2) return false;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (tiles_[f[i]].white == tiles_[f[(i + 1) % f.size()]].white) return false;
    }
    return true;
}

std::vector<std::uint32_t> CellComplex::rotation_action(std::size_t tau) const {
    if (tau >= rule_->m()) throw OutOfRange("postcritical index out of range");
    std::vector<std::uint32_t> pos(tiles_.size(), UINT32_MAX);
    for (std::uint32_t i = 0; i < white_.size(); ++i) pos[white_[i]] = i;
    std::vector<std::uint32_t> out(white_.size());
    for (std::uint32_t i = 0; i < white_.size(); ++i) {
        std::uint32_t t = white_[i];
        std::uint32_t v = tiles_[t].corner[tau];
        std::uint32_t next = next_around(next_around(t, v), v);
        out[i] = pos[next];
    }
    return out;
}

InvariantEdgeReport invariant_edge_report(const CellComplex& cx, std::string_view p, std::string_view q) {
    const RuleData& rule = cx.rule();
    auto z = rule.zero_edge(p, q);
    if (!z) throw ValidationError("[" + std::string(p) + "," + std::string(q) + "] is not a 0-edge");
    InvariantEdgeReport rep;
    // Invariant when every 1-edge along E maps onto E itself.
    rep.invariant = true;
    for (auto e : rule.chain_edges(z->first))
        if (rule.edges()[e].k != z->first) rep.invariant = false;
    if (!rep.invariant) {
        rep.detail = "some 1-edge of [" + std::string(p) + "," + std::string(q) + "] maps onto a different 0-edge";
        return rep;
    }
    auto verts = cx.edge_vertices(z->first);
    if (!z->second) std::reverse(verts.begin(), verts.end());
    const auto& labels = rule.rule().post_labels;
    rep.alternating = true;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const auto& V = cx.vertices()[verts[i]];
        EdgeVertexInfo info;
        info.name = V.name;
        info.type = labels[V.type];
        auto fl = cx.flower(verts[i]);
        info.flower_degree = static_cast<unsigned>(fl.size() / 2);
        for (auto t : fl) (cx.tiles()[t].top ? info.sector_top : info.sector_bottom)++;
        if (info.type != p && info.type != q) rep.alternating = false;
        if (i && info.type == rep.vertices.back().type) rep.alternating = false;
        rep.vertices.push_back(std::move(info));
    }
    rep.detail = std::to_string(verts.size()) + " vertices";
    return rep;
}

IntertwineResult intertwine(const std::vector<std::string>& names, const std::vector<std::vector<std::uint32_t>>& tile_action,
                            const std::vector<std::vector<std::uint32_t>>& word_action, std::uint32_t base_tile,
                            std::uint32_t base_word) {
    IntertwineResult r;
    if (tile_action.size() != word_action.size() || tile_action.size() != names.size())
        throw ValidationError("tile and word graphs have different generator sets");
    std::size_t nt = tile_action.empty() ? 0 : tile_action[0].size();
    std::size_t nw = word_action.empty() ? 0 : word_action[0].size();
    if (tile_action.empty()) {
        r.ok = base_tile == 0 && base_word == 0;
        r.word_of_tile = {0};
        r.detail = "no generators";
        return r;
    }
    if (nt != nw) {
        r.detail = "graphs have " + std::to_string(nt) + " and " + std::to_string(nw) + " vertices";
        return r;
    }
    if (base_tile >= nt || base_word >= nw) throw OutOfRange("base pair out of range");
    auto invert = [](const std::vector<std::vector<std::uint32_t>>& acts) {
        std::vector<std::vector<std::uint32_t>> inv;
        for (const auto& a : acts) {
            std::vector<std::uint32_t> b(a.size());
            for (std::uint32_t i = 0; i < a.size(); ++i) b[a[i]] = i;
            inv.push_back(std::move(b));
        }
        return inv;
    };
    const auto tile_inv = invert(tile_action), word_inv = invert(word_action);
    std::vector<std::uint32_t> w_of_t(nt, UINT32_MAX), t_of_w(nw, UINT32_MAX);
    w_of_t[base_tile] = base_word;
    t_of_w[base_word] = base_tile;
    std::deque<std::uint32_t> queue{base_tile};
    while (!queue.empty()) {
        std::uint32_t t = queue.front();
        queue.pop_front();
        std::uint32_t w = w_of_t[t];
        for (std::size_t g = 0; g < names.size(); ++g) {
            // forward edges and their reverses
            for (int dir = 0; dir < 2; ++dir) {
                std::uint32_t t2, w2;
                if (dir == 0) {
                    t2 = tile_action[g][t];
                    w2 = word_action[g][w];
                } else {
                    t2 = tile_inv[g][t];
                    w2 = word_inv[g][w];
                }
                if (w_of_t[t2] == UINT32_MAX && t_of_w[w2] == UINT32_MAX) {
                    w_of_t[t2] = w2;
                    t_of_w[w2] = t2;
                    queue.push_back(t2);
                } else if (w_of_t[t2] != w2 || t_of_w[w2] != t2) {
                    r.conflict_generator = names[g] + (dir ? "^-1" : "");
                    r.conflict_tile = std::to_string(t);
                    r.conflict_word = std::to_string(w);
                    r.detail = "conflict on a " + r.conflict_generator + "-edge";
                    r.word_of_tile = std::move(w_of_t);
                    return r;
                }
            }
        }
    }
    for (std::uint32_t t = 0; t < nt; ++t)
        if (w_of_t[t] == UINT32_MAX) r.unreachable.push_back(std::to_string(t));
    r.word_of_tile = std::move(w_of_t);
    r.ok = r.unreachable.empty();
    r.detail = r.ok ? "isomorphism" : std::to_string(r.unreachable.size()) + " tiles unreachable from the base tile";
    return r;
}

}  // namespace img
