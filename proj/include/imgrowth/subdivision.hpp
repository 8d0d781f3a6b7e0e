#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imgrowth/criterion.hpp"

namespace img {

// Two-tile subdivision rule given by its 1-complex. The 0-complex is two
// m-gons (white "top" face, black "bottom" face) glued along the curve
// through the postcritical points p_0..p_{m-1}, listed positively around
// the white face. Tile vertex lists are positive in the sphere orientation.
struct SubdivisionRule {
    struct Tile {
        std::string name;
        bool white = true;
        bool top = true;                    // inside the white 0-tile
        std::vector<std::string> vertices;  // positive order
        std::vector<std::string> edges;     // edges[i] joins vertices[i], vertices[i+1]; optional
    };
    std::string name;
    std::vector<std::string> post_labels;
    std::size_t degree = 0;
    std::vector<std::string> curve;  // 1-vertices along the curve from p_0
    std::map<std::string, std::string> images;
    std::vector<Tile> tiles;
    // Explicit edge endpoints; derived when empty.
    std::map<std::string, std::pair<std::string, std::string>> gluing;
    std::vector<std::pair<std::string, std::string>> invariant_edges;
    std::map<std::string, std::string> generators;  // generator name -> post label
    std::string description;
};

SubdivisionRule parse_rule(std::string_view json);
std::string rule_json(const SubdivisionRule& r);

// Validated, index-based form of a rule.
class RuleData {
public:
    struct Vertex {
        std::string name;
        std::uint32_t image = 0;    // post index
        int post = -1;              // post index if this is a 0-vertex
        int curve_k = -1;           // 0-edge index if interior to a 0-edge
        std::uint32_t curve_pos = 0;
        unsigned degree = 0;        // half the flower size
        std::uint32_t tile = 0;     // some incident tile
    };
    struct Edge {
        std::string name;
        std::uint32_t k = 0;            // maps onto 0-edge E_k
        std::uint32_t start = 0, end = 0;  // start maps to p_k
        std::uint32_t tile[2] = {0, 0};
        int curve_k = -1;
        std::uint32_t curve_pos = 0;    // segment index along E_k
    };
    struct Tile {
        std::string name;
        bool white = true;
        bool top = true;
        std::vector<std::uint32_t> corner;  // corner[k] maps to p_k
        std::vector<std::uint32_t> side;    // side[k] joins corner[k], corner[k+1]
    };

    explicit RuleData(const SubdivisionRule& rule);

    const SubdivisionRule& rule() const { return rule_; }
    std::size_t m() const { return rule_.post_labels.size(); }
    std::size_t d() const { return rule_.degree; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Tile>& tiles() const { return tiles_; }
    // 1-vertices along E_k from p_k to p_{k+1}, endpoints included.
    const std::vector<std::uint32_t>& chain(std::size_t k) const { return chain_[k]; }
    const std::vector<std::uint32_t>& chain_edges(std::size_t k) const { return chain_edges_[k]; }
    std::uint32_t post_vertex(std::size_t k) const { return post_vertex_[k]; }
    std::uint32_t post_image(std::size_t k) const { return vertices_[post_vertex_[k]].image; }
    std::optional<std::uint32_t> find_vertex(std::string_view name) const;
    int post_index(std::string_view label) const;
    // 0-edge index joining two adjacent post labels and whether it runs p -> q.
    std::optional<std::pair<std::size_t, bool>> zero_edge(std::string_view p, std::string_view q) const;

    Portrait induced_portrait() const;
    // Interior data of the 0-edge from p to q with sector counts per face.
    EdgeData edge_data(std::string_view p, std::string_view q) const;

private:
    SubdivisionRule rule_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<Tile> tiles_;
    std::vector<std::vector<std::uint32_t>> chain_, chain_edges_;
    std::vector<std::uint32_t> post_vertex_;
};

struct RuleValidation {
    bool ok = false;
    std::vector<std::string> errors;
    std::optional<Portrait> portrait;
};

RuleValidation validate_rule(const SubdivisionRule& rule);

// Level-n tiling stored as tiles with typed corners and shared edges.
class CellComplex {
public:
    struct Vertex {
        std::string name;
        std::uint32_t type = 0;  // f^n maps the vertex to p_type
        unsigned born = 0;
        std::uint32_t pattern = 0;  // rule vertex it was created from
        std::uint32_t tile = 0;
    };
    struct Edge {
        std::uint32_t k = 0;
        std::uint32_t start = 0, end = 0;
        std::uint32_t tile[2] = {UINT32_MAX, UINT32_MAX};
    };
    struct Tile {
        std::string name;
        bool white = true;
        bool top = true;  // inside the white 0-tile
        std::uint32_t parent = UINT32_MAX;
        std::vector<std::uint32_t> corner;
        std::vector<std::uint32_t> side;
    };

    CellComplex(const RuleData& rule, unsigned level, std::size_t max_tiles = 200000);

    const RuleData& rule() const { return *rule_; }
    unsigned level() const { return level_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Tile>& tiles() const { return tiles_; }
    const std::vector<std::uint32_t>& white_tiles() const { return white_; }
    std::optional<std::uint32_t> find_vertex(std::string_view name) const;
    std::optional<std::uint32_t> find_tile(std::string_view name) const;

    // Tiles around v in positive order, starting at its recorded tile.
    std::vector<std::uint32_t> flower(std::uint32_t v) const;
    std::uint32_t next_around(std::uint32_t tile, std::uint32_t v) const;
    // Vertices along the 0-edge E_k from p_k, endpoints included.
    std::vector<std::uint32_t> edge_vertices(std::size_t k) const;
    long long euler_characteristic() const;
    bool colors_alternate() const;

    // Generator at post label index tau: each white tile moves to the next
    // white tile positively around its type-tau corner. Result indexes
    // white_tiles().
    std::vector<std::uint32_t> rotation_action(std::size_t tau) const;

private:
    const RuleData* rule_;
    unsigned level_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<Tile> tiles_;
    std::vector<std::uint32_t> white_;
    std::vector<std::vector<std::uint32_t>> chains_;  // edge ids per 0-edge
};

struct EdgeVertexInfo {
    std::string name;
    std::string type;
    unsigned flower_degree = 0;
    std::size_t sector_top = 0, sector_bottom = 0;
};

struct InvariantEdgeReport {
    bool invariant = false;
    std::string detail;
    std::vector<EdgeVertexInfo> vertices;
    bool alternating = false;
};

InvariantEdgeReport invariant_edge_report(const CellComplex& cx, std::string_view p, std::string_view q);

struct IntertwineResult {
    bool ok = false;
    std::vector<std::uint32_t> word_of_tile;  // per white tile index
    std::string detail;
    // conflicting edge if any
    std::string conflict_generator;
    std::string conflict_tile;
    std::string conflict_word;
    std::vector<std::string> unreachable;
};

// Grows the label-preserving bijection between tile and word Schreier graphs
// from a base pair. Both action maps are indexed by generator name.
IntertwineResult intertwine(const std::vector<std::string>& generator_names,
                            const std::vector<std::vector<std::uint32_t>>& tile_action,
                            const std::vector<std::vector<std::uint32_t>>& word_action, std::uint32_t base_tile,
                            std::uint32_t base_word);

}  // namespace img
