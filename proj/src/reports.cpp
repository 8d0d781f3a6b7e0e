#include "imgrowth/reports.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "imgrowth/errors.hpp"

namespace img {

using nlohmann::ordered_json;

namespace {

const Presentation& need_presentation(const CatalogEntry& m) {
    if (!m.presentation) throw OutOfRange("map '" + m.name + "' has no wreath recursion");
    return *m.presentation;
}

const RuleData& need_rule(const CatalogEntry& m) {
    if (!m.rule) throw OutOfRange("map '" + m.name + "' has no subdivision rule");
    return *m.rule;
}

const Portrait& need_portrait(const CatalogEntry& m) {
    if (!m.portrait) throw OutOfRange("map '" + m.name + "' has no ramification portrait");
    return *m.portrait;
}

Element need_element(const Presentation& p, const Params& a, const std::string& key = "element") {
    if (!a.has(key)) throw OutOfRange("missing --" + key);
    return p.parse(a.str(key));
}

std::vector<Element> gens_or_all(const Presentation& p, const Params& a) {
    if (a.has("gens")) return p.parse_list(a.str("gens"));
    std::vector<Element> out;
    for (std::size_t i = 0; i < p.size(); ++i) out.push_back(Element::generator(i));
    return out;
}

std::vector<std::string> names_of(const Presentation& p, const std::vector<Element>& gs) {
    std::vector<std::string> out;
    for (const auto& g : gs) out.push_back(p.format(g));
    return out;
}

ordered_json certificate_json(const Presentation& p, const Certificate& c) {
    ordered_json j;
    j["element"] = p.format(c.g);
    j["prefix"] = p.format_word(c.prefix);
    j["section"] = p.format(c.h);
    j["exponent"] = c.e;
    j["word"] = p.format_word(c.v);
    j["guard_level"] = c.guard_level;
    j["guard_order"] = c.guard_order;
    return j;
}

const char* decision_name(Decision d, const char* yes, const char* no) {
    return d == Decision::Yes ? yes : d == Decision::No ? no : "inconclusive";
}

Status decision_status(Decision d) {
    return d == Decision::Yes ? Status::Ok : d == Decision::No ? Status::Fails : Status::Inconclusive;
}

ordered_json alpha_json(const AlphaValue& v) {
    if (v.infinite) return "inf";
    return v.value;
}

std::string generator_at(const CatalogEntry& m, const std::string& label, const std::string& fallback) {
    for (const auto& [g, l] : m.generators)
        if (l == label) return g;
    return fallback;
}

// Generator name -> post index for tile actions, falling back to g1..gm.
std::vector<std::pair<std::string, std::size_t>> tile_generators(const CatalogEntry& m) {
    const RuleData& r = need_rule(m);
    std::vector<std::pair<std::string, std::size_t>> out;
    if (m.presentation) {
        for (const auto& g : shared_generators(m))
            out.emplace_back(g, static_cast<std::size_t>(r.post_index(m.generators.at(g))));
    } else if (!m.generators.empty()) {
        for (const auto& [g, label] : m.generators) out.emplace_back(g, static_cast<std::size_t>(r.post_index(label)));
    } else {
        for (std::size_t k = 0; k < r.m(); ++k) out.emplace_back("g" + std::to_string(k + 1), k);
    }
    return out;
}

std::pair<std::string, std::string> edge_endpoints(const CatalogEntry& m, const Params& a) {
    if (a.has("edge")) {
        std::string s = a.str("edge");
        auto c = s.find(',');
        if (c == std::string::npos) throw OutOfRange("--edge expects 'p,q'");
        return {s.substr(0, c), s.substr(c + 1)};
    }
    if (m.edge) return {m.edge->p, m.edge->q};
    const RuleData& r = need_rule(m);
    if (r.rule().invariant_edges.empty()) throw OutOfRange("no invariant edge given");
    return r.rule().invariant_edges.front();
}

std::string dot_id(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

void flatten(const ordered_json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        return;
    }
    if (j.is_array()) {
        bool scalars = std::all_of(j.begin(), j.end(), [](const auto& x) { return x.is_primitive(); });
        bool phrases = std::any_of(j.begin(), j.end(), [](const auto& x) {
            return x.is_string() && x.template get<std::string>().find(' ') != std::string::npos;
        });
        if (scalars && !phrases) {
            out << prefix << ":";
            for (const auto& x : j) out << ' ' << (x.is_string() ? x.template get<std::string>() : x.dump());
            out << '\n';
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
        return;
    }
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + path + "'", true);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw FileError("cannot read '" + path + "'", false);
    return ss.str();
}

CatalogEntry load_map(const MapSource& src) {
    CatalogEntry e;
    bool any_file = !src.presentation_file.empty() || !src.rule_file.empty() || !src.portrait_file.empty() ||
                    !src.edge_file.empty() || !src.obstruction_file.empty();
    if (!src.catalog.empty()) {
        e = catalog_get(src.catalog);
        if (!any_file) return e;
    } else {
        if (!any_file) throw OutOfRange("no map given; use a catalog name or input files");
        e.name = "custom";
    }
    if (!src.presentation_file.empty()) {
        e.presentation = parse_presentation(read_file(src.presentation_file));
        e.identities.clear();
    }
    if (!src.rule_file.empty()) {
        auto rule = parse_rule(read_file(src.rule_file));
        auto v = validate_rule(rule);
        if (!v.ok) throw ValidationError("rule: " + v.errors.front());
        e.generators = rule.generators;
        e.rule = std::make_shared<const RuleData>(rule);
        if (src.portrait_file.empty()) e.portrait = e.rule->induced_portrait();
        if (src.edge_file.empty()) {
            e.edge.reset();
            if (!rule.invariant_edges.empty())
                e.edge = e.rule->edge_data(rule.invariant_edges[0].first, rule.invariant_edges[0].second);
        }
    }
    if (!src.portrait_file.empty()) e.portrait = parse_portrait(read_file(src.portrait_file));
    if (!src.edge_file.empty()) e.edge = parse_edge(read_file(src.edge_file));
    if (!src.obstruction_file.empty()) e.obstruction = parse_obstruction(read_file(src.obstruction_file));
    validate_entry(e);
    return e;
}

void Params::set(const std::string& key, const std::string& value) { values_[key] = value; }

std::string Params::str(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

unsigned Params::uint(const std::string& key, unsigned fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& s = it->second;
    if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos)
        throw OutOfRange("--" + key + " expects a non-negative integer, got '" + s + "'");
    return static_cast<unsigned>(std::stoul(s));
}

Limits Params::limits() const {
    Limits l;
    if (has("budget-states")) {
        unsigned b = uint("budget-states", 0);
        if (b == 0) throw OutOfRange("--budget-states must be positive");
        l.max_states = b;
        l.max_census_states = b;
    }
    l.k_max = uint("k-max", l.k_max);
    l.max_tiles = uint("max-tiles", static_cast<unsigned>(l.max_tiles));
    return l;
}

std::string report_text(const ordered_json& j) {
    std::ostringstream out;
    flatten(j, "", out);
    return out.str();
}

Report op_act(const CatalogEntry& m, const Params& a) {
    const auto& p = need_presentation(m);
    Element g = need_element(p, a);
    TreeWord v = p.parse_word(a.str("word"));
    Report r;
    r.json["status"] = "ok";
    r.json["element"] = p.format(g);
    r.json["word"] = p.format_word(v);
    r.json["image"] = p.format_word(act(p, g, v));
    return r;
}

Report op_mul(const CatalogEntry& m, const Params& a) {
    const auto& p = need_presentation(m);
    Element g = need_element(p, a), h = need_element(p, a, "element2");
    Report r;
    r.json["status"] = "ok";
    r.json["product"] = p.format(g * h);
    return r;
}

Report op_section(const CatalogEntry& m, const Params& a) {
    const auto& p = need_presentation(m);
    Element g = need_element(p, a);
    TreeWord v = p.parse_word(a.str("word"));
    Report r;
    r.json["status"] = "ok";
    r.json["element"] = p.format(g);
    r.json["word"] = p.format_word(v);
    r.json["root"] = root_perm(p, g).to_cycles();
    r.json["section"] = p.format(section_at(p, g, v));
    return r;
}

Report op_trivial(const CatalogEntry& m, const Params& a) {
    const auto& p = need_presentation(m);
    Element g = need_element(p, a);
    auto t = is_trivial(p, g, a.limits());
    Report r;
    r.status = decision_status(t.trivial);
    r.json["status"] = decision_name(t.trivial, "trivial", "nontrivial");
    r.json["element"] = p.format(g);
    if (t.trivial == Decision::No) {
        r.json["witness"] = p.format_word(t.witness);
        r.json["image"] = p.format_word(act(p, g, t.witness));
    }
    r.json["states"] = t.states;
    return r;
}

Report op_equal(const CatalogEntry& m, const Params& a) {
    const auto& p = need_presentation(m);
    Element g = need_element(p, a), h = need_element(p, a, "element2");
    auto t = equal(p, g, h, a.limits());
    Report r;
    r.status = decision_status(t.trivial);
    r.json["status"] = decision_name(t.trivial, "equal", "distinct");
    if (t.trivial == Decision::No) {
        r.json["witness"] = p.format_word(t.witness);
        r.json["images"] = {p.format_word(act(p, g, t.witness)), p.format_word(act(p, h, t.witness))};
    }
    r.json["states"] = t.states;
    return r;
}

Report op_order(const CatalogEntry& m, const Params& a) {
    const auto& p = need_presentation(m);
    auto o = element_order(p, need_element(p, a), a.limits());
    Report r;
    switch (o.kind) {
        case OrderResult::Finite:
            r.json["status"] = "finite";
            r.json["order"] = o.order;
            break;
        case OrderResult::Infinite:
            r.json["status"] = "infinite";
            r.json["certificate"] = certificate_json(p, *o.certificate);
            break;
        case OrderResult::Unknown:
            r.status = Status::Inconclusive;
            r.json["status"] = "unknown";
            r.json["note"] = o.note;
            break;
    }
    return r;
}

Report op_inf_order(const CatalogEntry& m, const Params& a) {
    const auto& p = need_presentation(m);
    Element g = need_element(p, a);
    Limits lim = a.limits();
    Report r;
    r.json["element"] = p.format(g);
    if (auto c = infinite_order_certificate(p, g, lim)) {
        bool ok = verify_certificate(p, *c, lim);
        r.status = ok ? Status::Ok : Status::Fails;
        r.json["status"] = ok ? "certified" : "rejected";
        r.json["certificate"] = certificate_json(p, *c);
        return r;
    }
    auto o = element_order(p, g, lim);
    if (o.kind == OrderResult::Finite) {
        r.status = Status::Fails;
        r.json["status"] = "finite";
        r.json["order"] = o.order;
    } else {
        r.status = Status::Inconclusive;
        r.json["status"] = "not_found";
    }
    return r;
}

Report op_schreier(const CatalogEntry& m, const Params& a) {
    const auto& p = need_presentation(m);
    auto gens = gens_or_all(p, a);
    unsigned n = a.uint("level", 1);
    auto g = schreier_graph(p, gens, n, a.limits());
    Report r;
    r.json["status"] = "ok";
    r.json["level"] = n;
    r.json["vertices"] = g.vertices();
    r.json["generators"] = g.labels;
    std::size_t comps = component_count(g);
    r.json["components"] = comps;
    r.json["transitive"] = comps == 1;
    ordered_json adj = ordered_json::object();
    for (std::size_t k = 0; k < g.labels.size(); ++k) {
        ordered_json row = ordered_json::array();
        for (auto t : g.targets[k]) row.push_back(p.format_word(index_word(t, p.degree(), n)));
        adj[g.labels[k]] = std::move(row);
    }
    r.json["adjacency"] = std::move(adj);
    r.dot = export_dot(g);
    return r;
}

Report op_census(const CatalogEntry& m, const Params& a) {
    const auto& p = need_presentation(m);
    auto gens = gens_or_all(p, a);
    auto c = ball_census(p, gens, a.uint("level", 3), a.uint("radius", 3), a.limits());
    Report r;
    r.status = c.complete ? Status::Ok : Status::Inconclusive;
    r.json["status"] = c.complete ? "complete" : "partial";
    r.json["generators"] = names_of(p, gens);
    r.json["level"] = c.level;
    r.json["radius"] = c.radius;
    r.json["radius_reached"] = c.radius_reached;
    r.json["counts"] = c.counts;
    return r;
}

Report op_free_semigroup(const CatalogEntry& m, const Params& a) {
    const auto& p = need_presentation(m);
    if (!a.has("gens")) throw OutOfRange("missing --gens");
    auto gens = p.parse_list(a.str("gens"));
    unsigned maxlen = a.uint("maxlen", 3);
    if (maxlen == 0) throw OutOfRange("--maxlen must be positive");
    unsigned lo = a.uint("level", default_start_level(maxlen));
    unsigned hi = std::max(lo, a.uint("level-max", 10));
    auto res = certify_free_semigroup(p, gens, maxlen, lo, hi, a.limits());
    auto names = names_of(p, gens);
    auto word_name = [&](const std::vector<std::uint32_t>& w) {
        std::string s;
        for (auto i : w) s += (s.empty() ? "" : "*") + names[i];
        return s;
    };
    Report r;
    r.json["generators"] = names;
    r.json["maxlen"] = maxlen;
    r.json["words"] = res.words;
    r.json["levels_tried"] = res.levels_tried;
    switch (res.kind) {
        case FreeSemigroupResult::Certified: {
            r.json["status"] = "certified";
            r.json["level"] = res.level;
            ordered_json pts = ordered_json::array();
            for (auto v : res.points) pts.push_back(p.format_word(index_word(v, p.degree(), res.level)));
            r.json["points"] = std::move(pts);
            ordered_json imgs = ordered_json::object();
            for (std::size_t w = 0; w < res.word_list.size(); ++w) {
                ordered_json row = ordered_json::array();
                for (auto v : res.images[w]) row.push_back(p.format_word(index_word(v, p.degree(), res.level)));
                imgs[word_name(res.word_list[w])] = std::move(row);
            }
            r.json["images"] = std::move(imgs);
            break;
        }
        case FreeSemigroupResult::Counterexample:
            r.status = Status::Fails;
            r.json["status"] = "counterexample";
            r.json["level"] = res.level;
            r.json["witness"] = {word_name(res.pair.first), word_name(res.pair.second)};
            break;
        case FreeSemigroupResult::Inconclusive:
            r.status = Status::Inconclusive;
            r.json["status"] = "inconclusive";
            break;
    }
    if (!res.note.empty()) r.json["note"] = res.note;
    return r;
}

Report op_verify_identities(const CatalogEntry& m, const Params& a) {
    const auto& p = need_presentation(m);
    std::string suite = a.has("suite-file") ? read_file(a.str("suite-file")) : m.identities;
    if (suite.empty()) throw OutOfRange("map '" + m.name + "' has no identity suite; use --suite-file");
    auto results = run_identity_suite(p, suite, a.limits());
    Report r;
    bool failed = false, open = false;
    ordered_json rows = ordered_json::array();
    for (const auto& x : results) {
        failed |= x.verdict == Decision::No;
        open |= x.verdict == Decision::Inconclusive;
        ordered_json row;
        row["identity"] = x.line;
        row["verdict"] = decision_name(x.verdict, "pass", "fail");
        if (!x.detail.empty()) row["detail"] = x.detail;
        rows.push_back(std::move(row));
    }
    r.status = failed ? Status::Fails : open ? Status::Inconclusive : Status::Ok;
    r.json["status"] = failed ? "fail" : open ? "inconclusive" : "pass";
    r.json["checked"] = results.size();
    r.json["results"] = std::move(rows);
    return r;
}

Report op_recurrence(const CatalogEntry& m, const Params& a) {
    const auto& p = need_presentation(m);
    if (!a.has("gens")) throw OutOfRange("missing --gens");
    auto witnesses = p.parse_list(a.str("gens"));
    TreeWord x = p.parse_word(a.str("word", "1"));
    if (x.size() != 1) throw OutOfRange("--word must be a single letter");
    auto rep = recurrence_witness(p, x[0], witnesses, a.limits());
    Report r;
    r.status = rep.generates ? Status::Ok : Status::Fails;
    r.json["status"] = rep.generates ? "generates" : "does_not_generate";
    r.json["letter"] = p.format_word(x);
    r.json["sections"] = names_of(p, rep.sections);
    ordered_json ex = ordered_json::object();
    for (std::size_t g = 0; g < p.size(); ++g) {
        if (!rep.expressions[g]) {
            ex[p.name(g)] = nullptr;
            continue;
        }
        std::string s;
        for (long long c : *rep.expressions[g])
            s += (s.empty() ? "" : "*") + ("s" + std::to_string(c < 0 ? -c : c)) + (c < 0 ? "^-1" : "");
        ex[p.name(g)] = s.empty() ? "1" : s;
    }
    r.json["expressions"] = std::move(ex);
    return r;
}

Report op_subdivide(const CatalogEntry& m, const Params& a) {
    const RuleData& rule = need_rule(m);
    unsigned n = a.uint("level", 1);
    CellComplex cx(rule, n, a.limits().max_tiles);
    Report r;
    r.json["status"] = "ok";
    r.json["level"] = n;
    r.json["tiles"] = cx.tiles().size();
    r.json["white_tiles"] = cx.white_tiles().size();
    r.json["edges"] = cx.edges().size();
    r.json["vertices"] = cx.vertices().size();
    r.json["euler_characteristic"] = cx.euler_characteristic();
    r.json["colors_alternate"] = cx.colors_alternate();
    if (a.has("dump")) {
        const auto& labels = rule.rule().post_labels;
        ordered_json vs = ordered_json::array(), ts = ordered_json::array(), es = ordered_json::array();
        for (const auto& v : cx.vertices()) vs.push_back({{"name", v.name}, {"type", labels[v.type]}});
        for (const auto& t : cx.tiles()) {
            ordered_json corners = ordered_json::array();
            for (auto c : t.corner) corners.push_back(cx.vertices()[c].name);
            ts.push_back({{"name", t.name}, {"color", t.white ? "white" : "black"}, {"face", t.top ? "top" : "bottom"},
                          {"corners", std::move(corners)}});
        }
        for (const auto& e : cx.edges())
            es.push_back({cx.vertices()[e.start].name, cx.vertices()[e.end].name});
        r.json["complex"] = {{"vertices", std::move(vs)}, {"tiles", std::move(ts)}, {"edges", std::move(es)}};
    }
    return r;
}

Report op_flowers(const CatalogEntry& m, const Params& a) {
    const RuleData& rule = need_rule(m);
    unsigned n = a.uint("level", 1);
    CellComplex cx(rule, n, a.limits().max_tiles);
    const auto& labels = rule.rule().post_labels;
    Report r;
    r.json["status"] = "ok";
    r.json["level"] = n;
    auto entry = [&](std::uint32_t v, bool tiles) {
        auto fl = cx.flower(v);
        ordered_json j;
        j["vertex"] = cx.vertices()[v].name;
        j["type"] = labels[cx.vertices()[v].type];
        j["degree"] = fl.size() / 2;
        if (tiles) {
            ordered_json ts = ordered_json::array();
            for (auto t : fl) ts.push_back(cx.tiles()[t].name);
            j["tiles"] = std::move(ts);
        }
        return j;
    };
    if (a.has("vertex")) {
        auto v = cx.find_vertex(a.str("vertex"));
        if (!v) throw OutOfRange("no vertex '" + a.str("vertex") + "' at level " + std::to_string(n));
        r.json["flowers"] = ordered_json::array({entry(*v, true)});
    } else {
        ordered_json all = ordered_json::array();
        for (std::uint32_t v = 0; v < cx.vertices().size(); ++v) all.push_back(entry(v, false));
        r.json["flowers"] = std::move(all);
    }
    return r;
}

Report op_edge_report(const CatalogEntry& m, const Params& a) {
    const RuleData& rule = need_rule(m);
    unsigned n = a.uint("level", 1);
    auto [p, q] = edge_endpoints(m, a);
    CellComplex cx(rule, n, a.limits().max_tiles);
    auto rep = invariant_edge_report(cx, p, q);
    Report r;
    r.status = rep.invariant ? Status::Ok : Status::Fails;
    r.json["status"] = rep.invariant ? "invariant" : "not_invariant";
    r.json["edge"] = "[" + p + "," + q + "]";
    r.json["level"] = n;
    if (!rep.detail.empty()) r.json["detail"] = rep.detail;
    r.json["count"] = rep.vertices.size();
    r.json["alternating"] = rep.alternating;
    ordered_json vs = ordered_json::array();
    for (const auto& v : rep.vertices)
        vs.push_back({{"name", v.name},
                      {"type", v.type},
                      {"degree", v.flower_degree},
                      {"sectors", {v.sector_top, v.sector_bottom}}});
    r.json["vertices"] = std::move(vs);
    return r;
}

Report op_tile_action(const CatalogEntry& m, const Params& a) {
    const RuleData& rule = need_rule(m);
    unsigned n = a.uint("level", 1);
    CellComplex cx(rule, n, a.limits().max_tiles);
    const auto& white = cx.white_tiles();
    Report r;
    r.json["status"] = "ok";
    r.json["level"] = n;
    ordered_json names = ordered_json::array();
    for (auto t : white) names.push_back(cx.tiles()[t].name);
    r.json["tiles"] = names;
    ordered_json gens = ordered_json::object();
    std::ostringstream dot;
    dot << "digraph tiles {\n";
    for (auto t : white) dot << "  " << dot_id(cx.tiles()[t].name) << ";\n";
    for (const auto& [g, k] : tile_generators(m)) {
        auto act = cx.rotation_action(k);
        gens[g] = {{"point", rule.rule().post_labels[k]}, {"cycles", Perm(act).to_cycles()}};
        for (std::size_t i = 0; i < act.size(); ++i)
            dot << "  " << dot_id(cx.tiles()[white[i]].name) << " -> " << dot_id(cx.tiles()[white[act[i]]].name)
                << " [label=" << dot_id(g) << "];\n";
    }
    dot << "}\n";
    r.json["generators"] = std::move(gens);
    r.dot = dot.str();
    return r;
}

Report op_intertwine(const CatalogEntry& m, const Params& a) {
    unsigned n = a.uint("level", 1);
    std::optional<std::string> tile, word;
    if (a.has("base-tile")) tile = a.str("base-tile");
    if (a.has("base-word")) word = a.str("base-word");
    Limits lim = a.limits();
    auto res = intertwine_entry(m, n, tile, word, lim);
    Report r;
    r.status = res.ok ? Status::Ok : Status::Fails;
    r.json["status"] = res.ok ? "isomorphism" : "failed";
    r.json["level"] = n;
    r.json["generators"] = shared_generators(m);
    r.json["detail"] = res.detail;
    const auto& p = *m.presentation;
    CellComplex cx(*m.rule, n, lim.max_tiles);
    if (res.ok) {
        ordered_json corr = ordered_json::object();
        for (std::size_t i = 0; i < res.word_of_tile.size(); ++i)
            corr[cx.tiles()[cx.white_tiles()[i]].name] = p.format_word(index_word(res.word_of_tile[i], p.degree(), n));
        r.json["correspondence"] = std::move(corr);
    } else {
        if (!res.conflict_generator.empty())
            r.json["witness"] = {{"generator", res.conflict_generator},
                                 {"tile", res.conflict_tile},
                                 {"word", res.conflict_word}};
        if (!res.unreachable.empty()) r.json["unreachable"] = res.unreachable;
    }
    return r;
}

Report op_alpha(const CatalogEntry& m, const Params&) {
    const auto& P = need_portrait(m);
    auto alpha = ramification_function(P);
    Report r;
    r.json["status"] = "ok";
    ordered_json vals = ordered_json::object();
    for (std::size_t i = 0; i < P.vertices.size(); ++i) vals[P.vertices[i].name] = alpha_json(alpha[i]);
    r.json["alpha"] = std::move(vals);
    return r;
}

Report op_orbifold(const CatalogEntry& m, const Params&) {
    auto o = orbifold_characteristic(need_portrait(m));
    Report r;
    r.status = o.classification == "invalid" ? Status::Fails : Status::Ok;
    r.json["status"] = "ok";
    ordered_json vals = ordered_json::object();
    for (const auto& [name, v] : o.alpha) vals[name] = alpha_json(v);
    r.json["alpha"] = std::move(vals);
    r.json["chi"] = format_rational(o.chi);
    r.json["classification"] = o.classification;
    return r;
}

Report op_check_criterion(const CatalogEntry& m, const Params& a) {
    const auto& P = need_portrait(m);
    EdgeData E;
    if (a.has("edge")) {
        auto [p, q] = edge_endpoints(m, a);
        E = need_rule(m).edge_data(p, q);
    } else if (m.edge) {
        E = *m.edge;
    } else {
        throw OutOfRange("map '" + m.name + "' has no invariant edge data");
    }
    std::string gp = generator_at(m, E.p, "b"), gq = generator_at(m, E.q, "a");
    auto c = check_conditions(P, E, gp, gq);
    Report r;
    r.status = c.exponential_growth ? Status::Ok : Status::Fails;
    r.json["status"] = c.exponential_growth ? "exponential_growth" : c.infinite_order ? "infinite_order" : "fails";
    r.json["edge"] = "[" + E.p + "," + E.q + "]";
    r.json["p"] = E.p;
    r.json["q"] = E.q;
    r.json["d_E"] = E.d_E();
    ordered_json conds = ordered_json::object();
    auto put = [&](const char* key, const ConditionResult& x) { conds[key] = {{"ok", x.ok}, {"detail", x.detail}}; };
    put("a", c.a);
    put("b", c.b);
    put("c", c.c);
    put("c1", c.c1);
    put("c2", c.c2);
    if (c.c3_applies) put("c3", c.c3);
    if (c.c4_applies) put("c4", c.c4);
    put("d", c.d);
    put("e", c.e);
    r.json["conditions"] = std::move(conds);
    if (c.k_p) r.json["k_p"] = *c.k_p;
    if (c.k_q) r.json["k_q"] = *c.k_q;
    r.json["evenness"] = {{"ok", c.evenness_ok}, {"detail", c.evenness_detail}};
    if (!c.witness_point.empty())
        r.json["certificate_point"] = {{"name", c.witness_point}, {"degree", c.witness_degree}};
    r.json["infinite_order"] = c.infinite_order;
    r.json["exponential_growth"] = c.exponential_growth;
    if (!c.w1.empty()) r.json["witness"] = {c.w1, c.w2};

    if (c.k_p && c.k_q && c.a.ok) {
        unsigned depth = a.uint("level", 5);
        auto bf = brute_force_degrees(P, E, *c.k_p, *c.k_q, depth);
        r.json["brute_force"] = {{"levels", depth}, {"ok", bf.ok}, {"vertex_counts", bf.vertex_counts}};
        if (!bf.detail.empty()) r.json["brute_force"]["detail"] = bf.detail;
        if (!bf.ok) r.status = Status::Fails;
    }
    if (m.rule && c.k_p && c.k_q) {
        // Flower degrees of interior vertices on E at level 2 against k_p, k_q.
        CellComplex cx(*m.rule, 2, a.limits().max_tiles);
        auto rep = invariant_edge_report(cx, E.p, E.q);
        bool ok = rep.invariant;
        for (std::size_t i = 1; ok && i + 1 < rep.vertices.size(); ++i) {
            const auto& v = rep.vertices[i];
            ok = v.flower_degree == (v.type == E.p ? *c.k_p : *c.k_q);
        }
        r.json["flower_check"] = {{"level", 2}, {"ok", ok}};
        if (!ok) r.status = Status::Fails;
    }
    if (m.presentation && !c.w1.empty()) {
        ordered_json ws = ordered_json::array();
        for (const auto& w : {c.w1, c.w2}) {
            Element g = m.presentation->parse(w);
            auto cert = infinite_order_certificate(*m.presentation, g, a.limits());
            ordered_json j = {{"element", w}, {"certified", cert.has_value()}};
            if (cert) j["certificate"] = certificate_json(*m.presentation, *cert);
            ws.push_back(std::move(j));
        }
        r.json["witness_certificates"] = std::move(ws);
    }
    return r;
}

Report op_obstruction(const CatalogEntry& m, const Params&) {
    if (!m.obstruction) throw OutOfRange("map '" + m.name + "' has no obstruction data");
    auto l = thurston_lambda(*m.obstruction);
    Report r;
    r.status = l.obstruction ? Status::Ok : Status::Fails;
    r.json["status"] = l.obstruction ? "obstruction" : "no_obstruction";
    r.json["curve"] = m.obstruction->curve;
    r.json["lambda"] = format_rational(l.lambda);
    r.json["counted"] = l.counted;
    r.json["components"] = ordered_json::parse(obstruction_json(*m.obstruction))["components"];
    return r;
}

namespace {

std::vector<std::string> capabilities(const CatalogEntry& e) {
    std::vector<std::string> ops;
    if (e.presentation)
        for (const char* s : {"act", "mul", "section", "trivial", "equal", "order", "inf-order", "schreier", "census",
                              "free-semigroup", "recurrence"})
            ops.push_back(s);
    if (e.presentation && !e.identities.empty()) ops.push_back("verify-identities");
    if (e.rule)
        for (const char* s : {"subdivide", "flowers", "edge-report", "tile-action"}) ops.push_back(s);
    if (e.presentation && e.rule) ops.push_back("intertwine");
    if (e.portrait)
        for (const char* s : {"alpha", "orbifold"}) ops.push_back(s);
    if (e.portrait && e.edge) ops.push_back("check-criterion");
    if (e.obstruction) ops.push_back("obstruction");
    return ops;
}

}  // namespace

Report op_catalog_list(const Params&) {
    Report r;
    r.json["status"] = "ok";
    ordered_json rows = ordered_json::array();
    for (const auto& name : catalog_names()) {
        auto e = catalog_get(name);
        rows.push_back({{"name", e.name},
                        {"presentation", e.presentation.has_value()},
                        {"rule", e.rule != nullptr},
                        {"portrait", e.portrait.has_value()},
                        {"edge", e.edge.has_value()},
                        {"obstruction", e.obstruction.has_value()},
                        {"operations", capabilities(e)}});
    }
    r.json["entries"] = std::move(rows);
    r.json["families"] = {"sierpinski-n", "obstructed-n"};
    return r;
}

Report op_catalog_show(const std::string& name, const Params&) {
    auto e = catalog_get(name);
    Report r;
    r.json["status"] = "ok";
    r.json["name"] = e.name;
    r.json["description"] = e.description;
    if (!e.formula.empty()) r.json["formula"] = e.formula;
    r.json["notes"] = e.notes;
    r.json["operations"] = capabilities(e);
    if (e.presentation) r.json["presentation"] = format_presentation(*e.presentation);
    if (e.rule) {
        const auto& rule = e.rule->rule();
        r.json["rule"] = {{"degree", rule.degree},
                          {"post_labels", rule.post_labels},
                          {"tiles", rule.tiles.size()},
                          {"generators", rule.generators}};
    }
    if (e.portrait) r.json["portrait"] = ordered_json::parse(portrait_json(*e.portrait));
    if (e.edge) r.json["edge"] = ordered_json::parse(edge_json(*e.edge));
    if (e.obstruction) r.json["obstruction"] = ordered_json::parse(obstruction_json(*e.obstruction));
    return r;
}

}  // namespace img
