#include "padyn/cayley_tree.hpp"

#include <algorithm>

#include "padyn/error.hpp"

namespace padyn {

std::string vertex_label(const Vertex& x) {
    if (x.empty()) return "(0)";
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(x[i]);
    }
    return s + ")";
}

Vertex compose(const Vertex& x, const Vertex& y) {
    Vertex out = x;
    out.insert(out.end(), y.begin(), y.end());
    return out;
}

std::size_t tree_distance(const Vertex& x, const Vertex& y) {
    const auto common = static_cast<std::size_t>(
        std::mismatch(x.begin(), x.end(), y.begin(), y.end()).first - x.begin());
    return (x.size() - common) + (y.size() - common);
}

CayleyTree::CayleyTree(int k) : k_(k) {
    if (k < 1) throw DomainError("tree order must be >= 1");
}

std::vector<Vertex> CayleyTree::successors(const Vertex& x) const {
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(k_));
    for (int i = 1; i <= k_; ++i) {
        Vertex y = x;
        y.push_back(i);
        out.push_back(std::move(y));
    }
    return out;
}

std::vector<Vertex> CayleyTree::level(std::size_t n) const {
    std::vector<Vertex> current{Vertex{}};
    for (std::size_t d = 0; d < n; ++d) {
        std::vector<Vertex> next;
        next.reserve(current.size() * static_cast<std::size_t>(k_));
        for (const Vertex& x : current)
            for (Vertex& y : successors(x)) next.push_back(std::move(y));
        current = std::move(next);
    }
    return current;
}

std::vector<Vertex> CayleyTree::ball(std::size_t n) const {
    std::vector<Vertex> out;
    for (std::size_t d = 0; d <= n; ++d)
        for (Vertex& x : level(d)) out.push_back(std::move(x));
    return out;
}

std::size_t CayleyTree::level_size(std::size_t n) const {
    std::size_t size = 1;
    for (std::size_t d = 0; d < n; ++d) size *= static_cast<std::size_t>(k_);
    return size;
}

std::size_t CayleyTree::ball_size(std::size_t n) const {
    std::size_t total = 0;
    for (std::size_t d = 0; d <= n; ++d) total += level_size(d);
    return total;
}

std::size_t CayleyTree::index(const Vertex& x) const {
    std::size_t lex = 0;
    for (int c : x) {
        if (c < 1 || c > k_) throw DomainError("coordinate out of range in " + vertex_label(x));
        lex = lex * static_cast<std::size_t>(k_) + static_cast<std::size_t>(c - 1);
    }
    return (x.empty() ? 0 : ball_size(x.size() - 1)) + lex;
}

std::vector<VertexPair> CayleyTree::edges(std::size_t n) const {
    std::vector<VertexPair> out;
    for (std::size_t d = 1; d <= n; ++d)
        for (Vertex& y : level(d)) {
            Vertex x(y.begin(), y.end() - 1);
            out.emplace_back(std::move(x), std::move(y));
        }
    return out;
}

std::vector<VertexPair> CayleyTree::prolonged_pairs(std::size_t n) const {
    std::vector<VertexPair> out;
    for (std::size_t d = 2; d <= n; ++d)
        for (Vertex& y : level(d)) {
            Vertex x(y.begin(), y.end() - 2);
            out.emplace_back(std::move(x), std::move(y));
        }
    return out;
}

std::vector<VertexPair> CayleyTree::one_level_pairs(std::size_t n) const {
    std::vector<VertexPair> out;
    for (std::size_t d = 0; d < n; ++d)
        for (const Vertex& x : level(d)) {
            const auto children = successors(x);
            for (std::size_t i = 0; i < children.size(); ++i)
                for (std::size_t j = i + 1; j < children.size(); ++j)
                    out.emplace_back(children[i], children[j]);
        }
    return out;
}

} // namespace padyn
