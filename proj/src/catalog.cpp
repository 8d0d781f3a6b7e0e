#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "imgrowth/catalog.hpp"
#include "imgrowth/errors.hpp"

namespace img {
namespace detail {
extern const std::pair<std::string_view, std::string_view> kCatalogFiles[];
extern const std::size_t kCatalogFileCount;
}  // namespace detail

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

void load_description(CatalogEntry& e, const std::string& key) {
    json j = json::parse(catalog_file("descriptions.json"));
    if (!j.contains(key)) return;
    const auto& p = j.at(key);
    e.description = p.value("description", "");
    e.formula = p.value("formula", "");
    if (p.contains("notes")) e.notes = p.at("notes").get<std::vector<std::string>>();
}

std::optional<unsigned> family_order(const std::string& name, const std::string& prefix) {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    std::string rest = name.substr(prefix.size());
    if (rest.empty() || rest.size() > 4 || rest.find_first_not_of("0123456789") != std::string::npos)
        throw OutOfRange("bad family parameter in '" + name + "'");
    return static_cast<unsigned>(std::stoul(rest));
}

}  // namespace

std::string catalog_file(std::string_view filename) {
    for (std::size_t i = 0; i < detail::kCatalogFileCount; ++i)
        if (detail::kCatalogFiles[i].first == filename) {
            std::string_view body = detail::kCatalogFiles[i].second;
            if (!body.empty() && body.front() == '\n') body.remove_prefix(1);
            return std::string(body);
        }
    throw OutOfRange("no catalog file '" + std::string(filename) + "'");
}

std::vector<std::string> catalog_names() { return {"f1", "sierpinski-3", "obstructed-3", "poly-P"}; }

CatalogEntry catalog_get(const std::string& name) {
    CatalogEntry e;
    e.name = name;
    if (name == "f1") {
        load_description(e, "f1");
        e.presentation = parse_presentation(catalog_file("f1.presentation"));
        auto rule = parse_rule(catalog_file("f1.rule.json"));
        e.generators = rule.generators;
        e.rule = std::make_shared<const RuleData>(rule);
        e.portrait = parse_portrait(catalog_file("f1.portrait.json"));
        e.edge = parse_edge(catalog_file("f1.edge.json"));
        e.identities = catalog_file("f1.identities");
    } else if (name == "poly-P") {
        load_description(e, "poly-P");
        e.portrait = parse_portrait(catalog_file("poly-P.portrait.json"));
        e.edge = parse_edge(catalog_file("poly-P.edge.json"));
        e.generators = {{"a", "-1"}, {"b", "1"}};
    } else if (auto n = family_order(name, "sierpinski-")) {
        load_description(e, "sierpinski");
        auto rule = sierpinski_rule(*n);
        e.generators = rule.generators;
        e.rule = std::make_shared<const RuleData>(rule);
    } else if (auto n = family_order(name, "obstructed-")) {
        load_description(e, "obstructed");
        auto rule = obstructed_rule(*n);
        e.generators = rule.generators;
        e.rule = std::make_shared<const RuleData>(rule);
        e.obstruction = obstructed_curve(*n);
    } else {
        throw OutOfRange("unknown catalog entry '" + name + "'");
    }
    if (e.rule && !e.portrait) e.portrait = e.rule->induced_portrait();
    if (e.rule && !e.edge) e.edge = e.rule->edge_data("1", "inf");
    validate_entry(e);
    return e;
}

std::vector<std::string> shared_generators(const CatalogEntry& e) {
    std::vector<std::string> out;
    if (!e.presentation || !e.rule) return out;
    for (const auto& g : e.presentation->names())
        if (e.generators.count(g)) out.push_back(g);
    return out;
}

void validate_entry(const CatalogEntry& e) {
    const std::string where = "catalog entry '" + e.name + "': ";
    if (e.portrait) validate_portrait(*e.portrait);
    if (e.rule) {
        auto v = validate_rule(e.rule->rule());
        if (!v.ok) throw ValidationError(where + "rule: " + v.errors.front());
        if (e.portrait) {
            // Every marked point of the stored portrait must agree with the induced one.
            Portrait induced = e.rule->induced_portrait();
            for (const auto& pv : e.portrait->vertices) {
                auto i = induced.find(pv.name);
                if (!i) throw ValidationError(where + "portrait point '" + pv.name + "' missing from the rule");
                const auto& iv = induced.vertices[*i];
                if (induced.vertices[iv.image].name != e.portrait->vertices[pv.image].name || iv.degree != pv.degree)
                    throw ValidationError(where + "portrait disagrees with the rule at '" + pv.name + "'");
            }
        }
        for (const auto& [g, label] : e.generators)
            if (e.rule->post_index(label) < 0)
                throw ValidationError(where + "generator '" + g + "' sits at unknown point '" + label + "'");
    }
    if (e.portrait && e.edge) restricted_portrait(*e.portrait, *e.edge);
    if (e.presentation && e.rule) {
        auto r = intertwine_entry(e, 1, std::nullopt, std::nullopt);
        if (!r.ok) throw ValidationError(where + "level-1 intertwine failed: " + r.detail);
    }
}

IntertwineResult intertwine_entry(const CatalogEntry& e, unsigned level, std::optional<std::string> base_tile,
                                  std::optional<std::string> base_word, const Limits& limits) {
    if (!e.presentation || !e.rule) throw ValidationError("intertwine needs a presentation and a rule");
    if (level == 0) throw OutOfRange("level must be at least 1");
    const Presentation& p = *e.presentation;
    CellComplex cx(*e.rule, level, limits.max_tiles);
    LevelEngine engine(p, limits);
    auto names = shared_generators(e);
    if (names.empty()) throw ValidationError("no generator has both a wreath recursion and a rule label");

    std::vector<std::vector<std::uint32_t>> tiles, words;
    for (const auto& g : names) {
        tiles.push_back(cx.rotation_action(static_cast<std::size_t>(e.rule->post_index(e.generators.at(g)))));
        words.push_back(engine.letter(static_cast<Letter>(*p.find(g) + 1), level));
    }
    if (!base_tile) {
        std::string t = "1";
        for (unsigned i = 1; i < level; ++i) t += ".1";
        base_tile = t;
    }
    auto t = cx.find_tile(*base_tile);
    if (!t) throw OutOfRange("no tile '" + *base_tile + "' at level " + std::to_string(level));
    auto wt = std::find(cx.white_tiles().begin(), cx.white_tiles().end(), *t);
    if (wt == cx.white_tiles().end()) throw OutOfRange("base tile '" + *base_tile + "' is black");
    TreeWord w = base_word ? p.parse_word(*base_word) : TreeWord(level, 0);
    if (w.size() != level) throw OutOfRange("base word must have length " + std::to_string(level));
    auto r = intertwine(names, tiles, words, static_cast<std::uint32_t>(wt - cx.white_tiles().begin()),
                        static_cast<std::uint32_t>(word_index(w, p.degree())));
    return r;
}

std::vector<IdentityResult> run_identity_suite(const Presentation& p, std::string_view suite, const Limits& limits) {
    std::vector<IdentityResult> out;
    std::istringstream in{std::string(suite)};
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        IdentityResult r;
        r.line = line;
        auto sp = line.find(' ');
        r.kind = line.substr(0, sp);
        std::string body = sp == std::string::npos ? "" : trim(line.substr(sp + 1));
        auto split = [&](std::string_view s, std::string_view sep) {
            auto at = s.find(sep);
            if (at == std::string_view::npos)
                throw ParseError("expected '" + trim(sep) + "' in identity line: " + line);
            return std::make_pair(trim(s.substr(0, at)), trim(s.substr(at + sep.size())));
        };
        if (r.kind == "eq") {
            auto [l, rhs] = split(body, "=");
            auto t = equal(p, p.parse(l), p.parse(rhs), limits);
            r.verdict = t.trivial;
            if (t.trivial == Decision::No) r.detail = "differ at " + p.format_word(t.witness);
        } else if (r.kind == "pattern") {
            auto [l, pat] = split(body, ":");
            auto c = verify_identity(p, p.parse(l), parse_pattern(p, pat), limits);
            r.verdict = c.passed() ? Decision::Yes : c.inconclusive() ? Decision::Inconclusive : Decision::No;
            if (!c.root_ok) r.detail = "root is " + c.root_actual;
            for (std::size_t x = 0; x < c.sections.size(); ++x)
                if (c.sections[x] && *c.sections[x] == Decision::No)
                    r.detail += (r.detail.empty() ? "" : "; ") + ("section " + std::to_string(x + 1) + " differs");
        } else if (r.kind == "section") {
            auto [l, rest] = split(body, "@");
            auto [word, rhs] = split(rest, "=");
            Element s = section_at(p, p.parse(l), p.parse_word(word));
            auto t = equal(p, s, p.parse(rhs), limits);
            r.verdict = t.trivial;
            if (t.trivial == Decision::No) r.detail = "section is " + p.format(s);
        } else if (r.kind == "infinite") {
            auto c = infinite_order_certificate(p, p.parse(body), limits);
            if (c && verify_certificate(p, *c, limits)) {
                r.verdict = Decision::Yes;
                r.detail = "certificate e=" + std::to_string(c->e) + " v=" + p.format_word(c->v);
            } else {
                r.verdict = Decision::Inconclusive;
                r.detail = "no certificate within bounds";
            }
        } else {
            throw ParseError("unknown identity kind '" + r.kind + "'");
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace img
