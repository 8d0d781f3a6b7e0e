#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "imgrowth/catalog.hpp"
#include "imgrowth/errors.hpp"

namespace img {
namespace {

using Point = std::pair<int, int>;

// Pillow over an n x n grid with flaps at the corner 0. Grid points map by
// parity: (0,0) -> 0, (1,0) -> 1, (1,1) -> inf, (0,1) -> -1.
SubdivisionRule pillow_rule(unsigned n, bool left_flap, const std::string& name) {
    const int N = static_cast<int>(n);
    std::vector<Point> squares;
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) squares.emplace_back(i, j);
    squares.emplace_back(0, -1);
    if (left_flap) squares.emplace_back(-1, 0);

    std::vector<Point> curve;
    for (int j = N; j >= 1; --j) curve.emplace_back(0, j);
    if (left_flap) {
        curve.emplace_back(-1, 1);
        curve.emplace_back(-1, 0);
    }
    curve.emplace_back(0, 0);
    curve.emplace_back(0, -1);
    curve.emplace_back(1, -1);
    for (int i = 1; i <= N; ++i) curve.emplace_back(i, 0);
    for (int j = 1; j <= N; ++j) curve.emplace_back(N, j);
    for (int i = N - 1; i >= 1; --i) curve.emplace_back(i, N);

    auto label = [](Point pt) {
        int i = std::abs(pt.first) % 2, j = std::abs(pt.second) % 2;
        if (i == 0) return std::string(j == 0 ? "0" : "-1");
        return std::string(j == 0 ? "1" : "inf");
    };
    auto coords = [](Point pt) { return "(" + std::to_string(pt.first) + "," + std::to_string(pt.second) + ")"; };

    std::map<Point, std::string> boundary;
    for (const auto& pt : curve) {
        std::string v = "v" + coords(pt);
        if (pt == Point{0, N}) v = "-1";
        else if (pt == Point{0, 0}) v = "0";
        else if (pt == Point{N, 0}) v = "1";
        else if (pt == Point{N, N}) v = "inf";
        else if (pt == Point{1, 0}) v = "c0";
        else if (left_flap && pt == Point{0, 1}) v = "c1";
        else if (pt.first == N) v = (pt.second % 2 ? "a" : "b") + std::to_string((pt.second - 1) / 2);
        boundary[pt] = v;
    }

    SubdivisionRule r;
    r.name = name;
    r.post_labels = {"-1", "0", "1", "inf"};
    r.degree = n * n + (left_flap ? 2 : 1);
    for (const auto& pt : curve) {
        r.curve.push_back(boundary[pt]);
        r.images[boundary[pt]] = label(pt);
    }
    auto vertex = [&](Point pt, bool top) {
        auto it = boundary.find(pt);
        if (it != boundary.end()) return it->second;
        std::string v = "v" + coords(pt) + (top ? "t" : "b");
        r.images[v] = label(pt);
        return v;
    };
    for (bool top : {true, false}) {
        for (const auto& [i, j] : squares) {
            SubdivisionRule::Tile t;
            t.name = coords({i, j}) + (top ? "" : "'");
            t.top = top;
            bool even = ((i + j) % 2 + 2) % 2 == 0;
            t.white = top ? even : !even;
            t.vertices = {vertex({i, j}, top), vertex({i + 1, j}, top), vertex({i + 1, j + 1}, top),
                          vertex({i, j + 1}, top)};
            if (!top) std::reverse(t.vertices.begin(), t.vertices.end());
            r.tiles.push_back(std::move(t));
        }
    }
    r.invariant_edges = {{"1", "inf"}};
    r.generators = {{"a", "inf"}, {"b", "1"}, {"c", "-1"}, {"d", "0"}};
    return r;
}

void check_order(unsigned n, const std::string& family) {
    if (n < 3) throw OutOfRange(family + "-n needs n >= 3");
    if (n % 2 == 0) {
        if (family == "sierpinski")
            throw OutOfRange("sierpinski-" + std::to_string(n) +
                             ": even n gives a hyperbolic map for which condition (c) is not satisfied");
        throw OutOfRange(family + "-" + std::to_string(n) + ": only odd n is supported");
    }
}

}  // namespace

SubdivisionRule sierpinski_rule(unsigned n) {
    check_order(n, "sierpinski");
    auto r = pillow_rule(n, true, "sierpinski-" + std::to_string(n));
    r.description = "Two flaps on an " + std::to_string(n) + "x" + std::to_string(n) + " pillow";
    return r;
}

SubdivisionRule obstructed_rule(unsigned n) {
    check_order(n, "obstructed");
    auto r = pillow_rule(n, false, "obstructed-" + std::to_string(n));
    r.description = "One flap on an " + std::to_string(n) + "x" + std::to_string(n) + " pillow";
    return r;
}

// The horizontal curve separating {0, 1} from {-1, inf} lifts to n curves
// wrapping the pillow n times each, plus one peripheral curve around the flap.
ObstructionInput obstructed_curve(unsigned n) {
    check_order(n, "obstructed");
    ObstructionInput o;
    o.curve = "gamma";
    for (unsigned j = 0; j < n; ++j) o.components.push_back({n, false, true});
    o.components.push_back({1, true, false});
    return o;
}

}  // namespace img
