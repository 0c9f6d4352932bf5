#pragma once

// Semi-infinite Cayley tree of order k with coordinates: the root is (0) and a
// vertex at level n is (i_1, ..., i_n) with 1 <= i_j <= k.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace padyn {

// Coordinates; the root is the empty sequence.
using Vertex = std::vector<int>;

std::string vertex_label(const Vertex& x);
inline std::size_t depth(const Vertex& x) { return x.size(); }

// x o y: concatenation of coordinates, the root acting as identity.
Vertex compose(const Vertex& x, const Vertex& y);
// tau_g(x) = g o x.
inline Vertex translate(const Vertex& g, const Vertex& x) { return compose(g, x); }
// Path length through the lowest common ancestor.
std::size_t tree_distance(const Vertex& x, const Vertex& y);
// x belongs to H_m = { x : d(x, root) = 0 (mod m) }.
inline bool in_H(std::size_t m, const Vertex& x) { return depth(x) % m == 0; }

using VertexPair = std::pair<Vertex, Vertex>;

class CayleyTree {
public:
    explicit CayleyTree(int k);

    int order() const noexcept { return k_; }

    // S(x) = {(x, 1), ..., (x, k)}.
    std::vector<Vertex> successors(const Vertex& x) const;
    // W_n in lexicographic order.
    std::vector<Vertex> level(std::size_t n) const;
    // V_n = W_0 u ... u W_n, ordered by level then lexicographically.
    std::vector<Vertex> ball(std::size_t n) const;
    std::size_t level_size(std::size_t n) const;
    std::size_t ball_size(std::size_t n) const;
    // Position of x in the ordering of ball(n) for any n >= depth(x).
    std::size_t index(const Vertex& x) const;

    // Nearest-neighbour edges <x, y> inside V_n, as (parent, child).
    std::vector<VertexPair> edges(std::size_t n) const;
    // Prolonged next-nearest neighbours >x, y< inside V_n: (grandparent, grandchild).
    std::vector<VertexPair> prolonged_pairs(std::size_t n) const;
    // One-level next-nearest neighbours inside V_n: siblings.
    std::vector<VertexPair> one_level_pairs(std::size_t n) const;

private:
    int k_;
};

} // namespace padyn
