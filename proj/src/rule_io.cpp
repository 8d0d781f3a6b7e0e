#include <json.hpp>

#include "imgrowth/errors.hpp"
#include "imgrowth/subdivision.hpp"

namespace img {

using nlohmann::json;

SubdivisionRule parse_rule(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid rule JSON: ") + e.what());
    }
    SubdivisionRule r;
    try {
        r.name = j.value("name", "");
        r.description = j.value("description", "");
        r.post_labels = j.at("post_labels").get<std::vector<std::string>>();
        r.degree = j.at("degree").get<std::size_t>();
        r.curve = j.at("curve").get<std::vector<std::string>>();
        r.images = j.at("tile_images").get<std::map<std::string, std::string>>();
        for (const char* key : {"white_tiles", "black_tiles"}) {
            bool white = std::string(key) == "white_tiles";
            for (const auto& t : j.at(key)) {
                SubdivisionRule::Tile tile;
                tile.name = t.at("name").get<std::string>();
                tile.white = white;
                std::string face = t.at("face").get<std::string>();
                if (face != "top" && face != "bottom") throw ValidationError("tile '" + tile.name + "' has face '" + face + "'");
                tile.top = face == "top";
                tile.vertices = t.at("vertices").get<std::vector<std::string>>();
                if (t.contains("edges")) tile.edges = t.at("edges").get<std::vector<std::string>>();
                r.tiles.push_back(std::move(tile));
            }
        }
        if (j.contains("gluing"))
            for (auto& [name, ends] : j.at("gluing").items()) {
                auto v = ends.get<std::vector<std::string>>();
                if (v.size() != 2) throw ValidationError("gluing entry '" + name + "' needs two endpoints");
                r.gluing[name] = {v[0], v[1]};
            }
        if (j.contains("invariant_edges"))
            for (const auto& e : j.at("invariant_edges")) {
                auto v = e.get<std::vector<std::string>>();
                if (v.size() != 2) throw ValidationError("invariant edge needs two endpoints");
                r.invariant_edges.emplace_back(v[0], v[1]);
            }
        if (j.contains("generators")) r.generators = j.at("generators").get<std::map<std::string, std::string>>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed rule: ") + e.what());
    }
    return r;
}

std::string rule_json(const SubdivisionRule& r) {
    json j;
    j["name"] = r.name;
    if (!r.description.empty()) j["description"] = r.description;
    j["post_labels"] = r.post_labels;
    j["degree"] = r.degree;
    j["curve"] = r.curve;
    j["tile_images"] = r.images;
    j["white_tiles"] = json::array();
    j["black_tiles"] = json::array();
    for (const auto& t : r.tiles) {
        json x = {{"name", t.name}, {"face", t.top ? "top" : "bottom"}, {"vertices", t.vertices}};
        if (!t.edges.empty()) x["edges"] = t.edges;
        j[t.white ? "white_tiles" : "black_tiles"].push_back(x);
    }
    if (!r.gluing.empty()) {
        json g = json::object();
        for (const auto& [name, ends] : r.gluing) g[name] = {ends.first, ends.second};
        j["gluing"] = g;
    }
    j["invariant_edges"] = json::array();
    for (const auto& [p, q] : r.invariant_edges) j["invariant_edges"].push_back({p, q});
    if (!r.generators.empty()) j["generators"] = r.generators;
    return j.dump(2);
}

}  // namespace img
