#include "imgrowth/criterion.hpp"

#include <algorithm>
#include <json.hpp>
#include <numeric>
#include <set>

#include "imgrowth/errors.hpp"

namespace img {

using nlohmann::json;

std::string format_rational(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

json parse_json(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid ") + what + " JSON: " + e.what());
    }
}

template <class T>
T field(const json& j, const char* key, const char* what) {
    if (!j.contains(key)) throw ValidationError(std::string(what) + " is missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(std::string(what) + " has a malformed field '" + key + "'");
    }
}

}  // namespace

std::optional<std::size_t> Portrait::find(std::string_view name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].name == name) return i;
    return std::nullopt;
}

std::size_t Portrait::index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw OutOfRange("portrait has no vertex '" + std::string(name) + "'");
}

std::size_t Portrait::add(const std::string& name, bool post) {
    if (find(name)) throw ValidationError("portrait vertex '" + name + "' declared twice");
    vertices.push_back({name, post, vertices.size(), 0});
    return vertices.size() - 1;
}

void Portrait::set_edge(std::size_t from, std::size_t to, unsigned degree) {
    vertices.at(from).image = to;
    vertices.at(from).degree = degree;
}

Portrait parse_portrait(std::string_view text) {
    json j = parse_json(text, "portrait");
    Portrait p;
    for (const auto& v : field<json>(j, "vertices", "portrait"))
        p.add(field<std::string>(v, "name", "portrait vertex"), v.value("post", false));
    for (const auto& e : field<json>(j, "edges", "portrait")) {
        auto from = p.index(field<std::string>(e, "from", "portrait edge"));
        auto to = p.index(field<std::string>(e, "to", "portrait edge"));
        int deg = field<int>(e, "deg", "portrait edge");
        if (deg < 1) throw ValidationError("portrait edge from '" + p.vertices[from].name + "' has degree below 1");
        if (p.vertices[from].degree != 0) throw ValidationError("portrait vertex '" + p.vertices[from].name + "' has two images");
        p.set_edge(from, to, static_cast<unsigned>(deg));
    }
    validate_portrait(p);
    return p;
}

std::string portrait_json(const Portrait& p) {
    json j;
    j["vertices"] = json::array();
    j["edges"] = json::array();
    for (const auto& v : p.vertices) j["vertices"].push_back({{"name", v.name}, {"post", v.post}});
    for (const auto& v : p.vertices)
        j["edges"].push_back({{"from", v.name}, {"to", p.vertices[v.image].name}, {"deg", v.degree}});
    return j.dump(2);
}

void validate_portrait(const Portrait& p) {
    const std::size_t n = p.vertices.size();
    for (const auto& v : p.vertices) {
        if (v.degree == 0) throw ValidationError("portrait vertex '" + v.name + "' has no image");
        if (v.image >= n) throw ValidationError("portrait vertex '" + v.name + "' maps outside the portrait");
        if (!p.vertices[v.image].post)
            throw ValidationError("'" + v.name + "' maps to '" + p.vertices[v.image].name + "', which is not postcritical");
    }
}

std::vector<AlphaValue> ramification_function(const Portrait& p) {
    validate_portrait(p);
    const std::size_t n = p.vertices.size();
    std::vector<AlphaValue> alpha(n);
    // A cycle through a critical point forces infinity along the cycle.
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t cur = p.vertices[v].image;
        bool periodic = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (cur == v) {
                periodic = true;
                break;
            }
            cur = p.vertices[cur].image;
        }
        if (!periodic) continue;
        bool critical = false;
        cur = v;
        do {
            critical = critical || p.vertices[cur].degree >= 2;
            cur = p.vertices[cur].image;
        } while (cur != v);
        if (critical) alpha[v].infinite = true;
    }
    for (std::size_t round = 0;; ++round) {
        if (round > 2 * n + 2) throw ValidationError("ramification function did not stabilize");
        std::vector<AlphaValue> next = alpha;
        for (std::size_t u = 0; u < n; ++u) {
            auto& t = next[p.vertices[u].image];
            if (t.infinite) continue;
            if (alpha[u].infinite) {
                t.infinite = true;
                continue;
            }
            t.value = std::lcm(t.value, static_cast<std::uint64_t>(p.vertices[u].degree) * alpha[u].value);
        }
        if (next == alpha) break;
        alpha = std::move(next);
    }
    return alpha;
}

OrbifoldReport orbifold_characteristic(const Portrait& p) {
    auto alpha = ramification_function(p);
    OrbifoldReport r;
    r.chi = Rational(2);
    for (std::size_t v = 0; v < p.vertices.size(); ++v) {
        if (!p.vertices[v].post) continue;
        r.alpha.emplace_back(p.vertices[v].name, alpha[v]);
        r.chi -= alpha[v].infinite ? Rational(1) : Rational(1) - Rational(1, static_cast<long long>(alpha[v].value));
    }
    const Rational zero(0);
    r.classification = r.chi < zero ? "hyperbolic" : r.chi == zero ? "parabolic" : "invalid";
    return r;
}

EdgeData parse_edge(std::string_view text) {
    json j = parse_json(text, "edge data");
    EdgeData e;
    e.name = j.value("name", "");
    auto ends = field<std::vector<std::string>>(j, "endpoints", "edge data");
    if (ends.size() != 2) throw ValidationError("edge data needs exactly two endpoints");
    e.p = ends[0];
    e.q = ends[1];
    if (e.name.empty()) e.name = "[" + e.p + "," + e.q + "]";
    e.real_symmetric = j.value("real_symmetric", false);
    for (const auto& v : field<json>(j, "interior", "edge data")) {
        EdgeData::Interior in;
        in.name = field<std::string>(v, "name", "interior vertex");
        in.type = field<std::string>(v, "type", "interior vertex");
        int deg = field<int>(v, "deg", "interior vertex");
        if (deg < 1) throw ValidationError("interior vertex '" + in.name + "' has degree below 1");
        in.degree = static_cast<unsigned>(deg);
        if (v.contains("sectors")) {
            auto s = field<std::vector<unsigned>>(v, "sectors", "interior vertex");
            if (s.size() != 2) throw ValidationError("interior vertex '" + in.name + "' needs two sector counts");
            in.sectors = std::make_pair(s[0], s[1]);
        }
        e.interior.push_back(std::move(in));
    }
    if (j.contains("d_E") && j["d_E"].get<unsigned>() != e.d_E())
        throw ValidationError("edge data d_E disagrees with the interior vertex count");
    return e;
}

std::string edge_json(const EdgeData& e) {
    json j;
    j["name"] = e.name;
    j["endpoints"] = {e.p, e.q};
    j["d_E"] = e.d_E();
    j["interior"] = json::array();
    for (const auto& v : e.interior) {
        json x = {{"name", v.name}, {"type", v.type}, {"deg", v.degree}};
        if (v.sectors) x["sectors"] = {v.sectors->first, v.sectors->second};
        j["interior"].push_back(x);
    }
    j["real_symmetric"] = e.real_symmetric;
    return j.dump(2);
}

Portrait restricted_portrait(const Portrait& p, const EdgeData& e) {
    std::vector<std::string> names{e.p, e.q};
    for (const auto& v : e.interior) names.push_back(v.name);
    for (const auto& n : names)
        if (!p.find(n)) throw ValidationError("vertex '" + n + "' of edge " + e.name + " is missing from the portrait");
    for (const auto& n : {e.p, e.q})
        if (!p.vertices[p.index(n)].post) throw ValidationError("endpoint '" + n + "' of edge " + e.name + " is not postcritical");
    for (const auto& v : e.interior) {
        const auto& pv = p.vertices[p.index(v.name)];
        if (p.vertices[pv.image].name != v.type || pv.degree != v.degree)
            throw ValidationError("interior vertex '" + v.name + "' of edge " + e.name + " disagrees with the portrait");
    }
    // Closure under the map so the result is itself a portrait.
    std::vector<std::size_t> keep;
    std::set<std::size_t> seen;
    for (const auto& n : names) {
        std::size_t cur = p.index(n);
        while (seen.insert(cur).second) {
            keep.push_back(cur);
            cur = p.vertices[cur].image;
        }
    }
    Portrait r;
    for (auto k : keep) r.add(p.vertices[k].name, p.vertices[k].post);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        const auto& v = p.vertices[keep[i]];
        r.set_edge(i, r.index(p.vertices[v.image].name), v.degree);
    }
    return r;
}

CriterionReport check_conditions(const Portrait& P, const EdgeData& E, const std::string& gen_p, const std::string& gen_q) {
    validate_portrait(P);
    restricted_portrait(P, E);  // every vertex of E must be in the portrait
    CriterionReport r;
    const auto ip = P.index(E.p), iq = P.index(E.q);
    const auto& vp = P.vertices[ip];
    const auto& vq = P.vertices[iq];
    for (const auto& in : E.interior) {
        const auto& v = P.vertices[P.index(in.name)];
        if (P.vertices[v.image].name != in.type)
            throw ValidationError("interior vertex '" + in.name + "' has type " + in.type + " but maps to " +
                                  P.vertices[v.image].name);
        if (v.degree != in.degree)
            throw ValidationError("interior vertex '" + in.name + "' has degree " + std::to_string(in.degree) +
                                  " in the edge data and " + std::to_string(v.degree) + " in the portrait");
    }

    // (a) every 1-edge of E maps onto E: types along E lie in {p,q} and alternate.
    std::vector<std::string> types{P.vertices[vp.image].name};
    for (const auto& in : E.interior) types.push_back(in.type);
    types.push_back(P.vertices[vq.image].name);
    bool in_edge = true, alternating = true;
    for (std::size_t i = 0; i < types.size(); ++i) {
        if (types[i] != E.p && types[i] != E.q) in_edge = false;
        if (i && types[i] == types[i - 1]) alternating = false;
    }
    r.a.ok = in_edge && alternating && E.d_E() >= 2;
    r.a.detail = !in_edge ? "some vertex of E maps off the endpoints" : !alternating ? "types do not alternate along E"
                 : E.d_E() < 2                                      ? "d_E = 1"
                                                                    : "d_E = " + std::to_string(E.d_E());

    // (b)
    r.b.ok = vp.image == ip;
    r.b.detail = E.p + " maps to " + P.vertices[vp.image].name;

    // (c) via (c1)-(c4)
    std::set<unsigned> deg_p, deg_q;
    for (const auto& in : E.interior) (in.type == E.p ? deg_p : deg_q).insert(in.degree);
    r.c1.ok = deg_p.size() <= 1 && deg_q.size() <= 1 && !deg_q.empty();
    if (deg_p.size() == 1) r.k_p = *deg_p.begin();
    if (deg_q.size() == 1) r.k_q = *deg_q.begin();
    r.c1.detail = deg_p.size() > 1 ? "type-p interior degrees differ"
                  : deg_q.size() > 1 ? "type-q interior degrees differ"
                  : deg_q.empty()    ? "no interior vertex of type q"
                                     : "interior degrees are constant per type";
    r.c2.ok = vp.degree == 1;
    r.c2.detail = "deg at " + E.p + " = " + std::to_string(vp.degree);
    r.c3_applies = vq.image == iq;
    r.c4_applies = vq.image == ip;
    if (r.c3_applies) {
        r.c3.ok = vq.degree == 1;
        r.c3.detail = "deg at " + E.q + " = " + std::to_string(vq.degree);
    } else {
        r.c3.detail = "not applicable";
    }
    if (r.c4_applies) {
        if (r.k_q) {
            std::uint64_t want = *r.k_q * vq.degree;
            if (!r.k_p) r.k_p = want;
            r.c4.ok = *r.k_p == want;
            r.c4.detail = "k_p = " + std::to_string(*r.k_p) + ", k_q * deg at " + E.q + " = " + std::to_string(want);
        } else {
            r.c4.detail = "k_q undefined";
        }
    } else {
        r.c4.detail = "not applicable";
    }
    r.c.ok = r.c1.ok && r.c2.ok && ((r.c3_applies && r.c3.ok) || (r.c4_applies && r.c4.ok)) && r.k_p && r.k_q;
    r.c.detail = r.c.ok ? "k_p = " + std::to_string(*r.k_p) + ", k_q = " + std::to_string(*r.k_q)
                 : (!r.c3_applies && !r.c4_applies) ? E.q + " maps to neither endpoint"
                                                    : "local degrees along E are not constant per type";

    // (d) via (d')
    if (E.real_symmetric) {
        r.d.ok = true;
        r.d.detail = "E lies on a symmetry axis";
    } else {
        r.d.ok = true;
        for (const auto& in : E.interior) {
            if (!in.sectors) {
                r.d.ok = false;
                r.d.detail = "no sector data at " + in.name;
                break;
            }
            if (in.sectors->first != in.sectors->second) {
                r.d.ok = false;
                r.d.detail = "unbalanced sectors at " + in.name;
                break;
            }
        }
        if (r.d.ok) r.d.detail = "sectors balanced at every interior vertex";
    }

    if (r.a.ok && r.d.ok && r.k_p && r.k_q) {
        r.evenness_ok = *r.k_p % 2 == 0 && *r.k_q % 2 == 0;
        r.evenness_detail = r.evenness_ok ? "k_p and k_q are even" : "k_p or k_q is odd although (a) and (d) hold";
    }

    // (e) some c with g^k(c) = p and deg(g^k, c) not dividing k_p
    if (r.k_p) {
        const std::size_t n = P.vertices.size();
        for (std::size_t c = 0; c < n && !r.e.ok; ++c) {
            std::size_t cur = c;
            std::uint64_t deg = 1;
            for (std::size_t k = 1; k <= n; ++k) {
                deg *= P.vertices[cur].degree;
                cur = P.vertices[cur].image;
                if (cur == ip && *r.k_p % deg != 0) {
                    r.e.ok = true;
                    r.witness_point = P.vertices[c].name;
                    r.witness_degree = deg;
                    r.e.detail = "deg(g^" + std::to_string(k) + ", " + P.vertices[c].name + ") = " + std::to_string(deg) +
                                 " does not divide " + std::to_string(*r.k_p);
                    break;
                }
            }
        }
        if (!r.e.ok) r.e.detail = "every preimage degree of " + E.p + " divides k_p";
    } else {
        r.e.detail = "k_p undefined";
    }

    r.infinite_order = r.a.ok && r.b.ok && r.c.ok && r.d.ok && r.evenness_ok;
    r.exponential_growth = r.infinite_order && r.e.ok;
    if (r.infinite_order) {
        auto power = [](const std::string& g, std::uint64_t k) {
            return k == 0 ? std::string() : k == 1 ? g : g + "^" + std::to_string(k);
        };
        r.w1 = power(gen_q, *r.k_q / 2) + power(gen_p, *r.k_p / 2);
        r.w2 = power(gen_q, *r.k_q / 2) + power(gen_p, *r.k_p / 2 + *r.k_p);
    }
    return r;
}

PulledEdge pull_back_edge(const Portrait& P, const EdgeData& E, unsigned n) {
    restricted_portrait(P, E);
    const auto ip = P.index(E.p), iq = P.index(E.q);
    std::vector<std::size_t> ones{ip};
    for (const auto& in : E.interior) ones.push_back(P.index(in.name));
    ones.push_back(iq);
    PulledEdge cur;
    cur.vertices = {{E.p, 1}, {E.q, 1}};
    for (unsigned level = 1; level <= n; ++level) {
        PulledEdge next;
        next.level = level;
        for (std::size_t i = 0; i + 1 < ones.size(); ++i) {
            const auto& s0 = P.vertices[ones[i]];
            const auto& s1 = P.vertices[ones[i + 1]];
            bool forward = s0.image == ip;
            if (!forward && s0.image != iq) throw ValidationError("1-edge of " + E.name + " does not map onto E");
            auto list = cur.vertices;
            if (!forward) std::reverse(list.begin(), list.end());
            list.front().second *= s0.degree;
            list.back().second *= s1.degree;
            if (i > 0) list.erase(list.begin());
            next.vertices.insert(next.vertices.end(), list.begin(), list.end());
        }
        cur = std::move(next);
    }
    cur.level = n;
    return cur;
}

BruteForceCheck brute_force_degrees(const Portrait& P, const EdgeData& E, std::uint64_t k_p, std::uint64_t k_q,
                                    unsigned n) {
    BruteForceCheck r;
    for (unsigned level = 1; level <= n; ++level) {
        auto pe = pull_back_edge(P, E, level);
        r.vertex_counts.push_back(pe.vertices.size());
        for (std::size_t i = 1; i + 1 < pe.vertices.size(); ++i) {
            const auto& [type, deg] = pe.vertices[i];
            std::uint64_t want = type == E.p ? k_p : k_q;
            if (deg != want && r.ok) {
                r.ok = false;
                r.detail = "level " + std::to_string(level) + " vertex " + std::to_string(i) + " of type " + type +
                           " has degree " + std::to_string(deg) + ", expected " + std::to_string(want);
            }
        }
    }
    if (r.ok) r.detail = "all interior vertices match up to level " + std::to_string(n);
    return r;
}

ObstructionInput parse_obstruction(std::string_view text) {
    json j = parse_json(text, "obstruction");
    ObstructionInput o;
    o.curve = j.value("curve", "gamma");
    for (const auto& c : field<json>(j, "components", "obstruction input")) {
        ObstructionInput::Component comp;
        int deg = field<int>(c, "degree", "obstruction component");
        if (deg < 1) throw ValidationError("obstruction component degree must be at least 1");
        comp.degree = static_cast<unsigned>(deg);
        comp.peripheral = c.value("peripheral", false);
        comp.homotopic = c.value("homotopic", true);
        o.components.push_back(comp);
    }
    return o;
}

std::string obstruction_json(const ObstructionInput& o) {
    json j;
    j["curve"] = o.curve;
    j["components"] = json::array();
    for (const auto& c : o.components)
        j["components"].push_back({{"degree", c.degree}, {"peripheral", c.peripheral}, {"homotopic", c.homotopic}});
    return j.dump(2);
}

LambdaReport thurston_lambda(const ObstructionInput& in) {
    LambdaReport r;
    r.lambda = 0;
    for (const auto& c : in.components) {
        if (c.degree < 1) throw ValidationError("obstruction component degree must be at least 1");
        if (c.peripheral || !c.homotopic) continue;
        r.lambda += Rational(1, c.degree);
        ++r.counted;
    }
    r.obstruction = r.lambda >= Rational(1);
    return r;
}

}  // namespace img
