#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace img {

using Rational = boost::rational<long long>;
std::string format_rational(const Rational& r);

// Directed graph of marked points, each mapped to its image with a local degree.
struct Portrait {
    struct Vertex {
        std::string name;
        bool post = false;
        std::size_t image = 0;
        unsigned degree = 1;
    };
    std::vector<Vertex> vertices;

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index(std::string_view name) const;  // throws OutOfRange
    std::size_t add(const std::string& name, bool post);
    void set_edge(std::size_t from, std::size_t to, unsigned degree);
};

// {"vertices":[{"name","post"}],"edges":[{"from","to","deg"}]}
Portrait parse_portrait(std::string_view json);
std::string portrait_json(const Portrait& p);
// Throws ValidationError naming the first violated invariant.
void validate_portrait(const Portrait& p);

// Ramification function value; infinite for periodic critical cycles.
struct AlphaValue {
    bool infinite = false;
    std::uint64_t value = 1;
    std::string str() const { return infinite ? "inf" : std::to_string(value); }
    bool operator==(const AlphaValue& o) const { return infinite == o.infinite && (infinite || value == o.value); }
};

std::vector<AlphaValue> ramification_function(const Portrait& p);

struct OrbifoldReport {
    std::vector<std::pair<std::string, AlphaValue>> alpha;  // postcritical points
    Rational chi;
    std::string classification;  // "hyperbolic", "parabolic" or "invalid"
};

OrbifoldReport orbifold_characteristic(const Portrait& p);

// Invariant 0-edge from p to q with its interior 1-vertices in order.
struct EdgeData {
    struct Interior {
        std::string name;
        std::string type;
        unsigned degree = 1;
        std::optional<std::pair<unsigned, unsigned>> sectors;
    };
    std::string name;
    std::string p, q;
    std::vector<Interior> interior;
    bool real_symmetric = false;
    unsigned d_E() const { return static_cast<unsigned>(interior.size() + 1); }
};

// {"name","endpoints":[p,q],"interior":[{"name","type","deg","sectors":[l,r]}],"real_symmetric":bool}
EdgeData parse_edge(std::string_view json);
std::string edge_json(const EdgeData& e);

Portrait restricted_portrait(const Portrait& p, const EdgeData& e);

struct ConditionResult {
    bool ok = false;
    std::string detail;
};

struct CriterionReport {
    ConditionResult a, b, c, c1, c2, c3, c4, d, e;
    bool c3_applies = false;  // q fixed
    bool c4_applies = false;  // q maps to p
    std::optional<std::uint64_t> k_p, k_q;
    bool evenness_ok = true;
    std::string evenness_detail;
    std::string witness_point;     // condition (e)
    std::uint64_t witness_degree = 0;
    std::string w1, w2;            // witness words
    bool infinite_order = false;   // (a)-(d)
    bool exponential_growth = false;  // (a)-(e)
};

// gen_p and gen_q name the generators at p and q in the witness words.
CriterionReport check_conditions(const Portrait& p, const EdgeData& e, const std::string& gen_p = "b",
                                 const std::string& gen_q = "a");

// Pulls E back n times through the restricted portrait and records
// (type, deg(g^n, v)) for every n-vertex on E from p to q.
struct PulledEdge {
    unsigned level = 0;
    std::vector<std::pair<std::string, std::uint64_t>> vertices;
};

PulledEdge pull_back_edge(const Portrait& p, const EdgeData& e, unsigned n);
// Checks interior n-vertex degrees against k_p and k_q for levels 1..n.
struct BruteForceCheck {
    bool ok = true;
    std::vector<std::size_t> vertex_counts;  // per level
    std::string detail;
};
BruteForceCheck brute_force_degrees(const Portrait& p, const EdgeData& e, std::uint64_t k_p, std::uint64_t k_q,
                                    unsigned n);

struct ObstructionInput {
    struct Component {
        unsigned degree = 1;
        bool peripheral = false;
        bool homotopic = true;
    };
    std::string curve;
    std::vector<Component> components;
};

// {"curve","components":[{"degree","peripheral","homotopic"}]}
ObstructionInput parse_obstruction(std::string_view json);
std::string obstruction_json(const ObstructionInput& o);

struct LambdaReport {
    Rational lambda;
    std::size_t counted = 0;
    bool obstruction = false;
};

LambdaReport thurston_lambda(const ObstructionInput& in);

}  // namespace img
