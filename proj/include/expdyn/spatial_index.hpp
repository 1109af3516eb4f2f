#pragma once

#include "expdyn/numerics.hpp"
#include "expdyn/simd/kernels.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace expdyn {

/// Static kd-tree over points in R^Dim (Dim = 2 or 3). Leaves store their
/// coordinates contiguously as structure-of-arrays and are scanned with the
/// SIMD distance kernels. Immutable after construction; concurrent queries
/// are safe.
template <std::size_t Dim>
class PointTree {
public:
    static_assert(Dim == 2 || Dim == 3);
    using Point = std::array<double, Dim>;

    static constexpr std::size_t kLeafSize = 32;

    PointTree() = default;
    explicit PointTree(std::span<const Point> points);

    std::size_t size() const noexcept { return index_.size(); }
    bool empty() const noexcept { return index_.empty(); }

    /// Smallest squared distance from q to a stored point; +inf when empty.
    double nearest_sq(const Point& q) const;

    /// Calls visit(i) with the original index of every point within squared
    /// distance r2 of q.
    template <class Visit>
    void visit_within(const Point& q, double r2, Visit&& visit) const;

private:
    struct Node {
        Point lo{};
        Point hi{};
        std::uint32_t begin = 0;
        std::uint32_t end = 0;
        std::int32_t left = -1;
        std::int32_t right = -1;
    };

    std::int32_t build(std::vector<Point>& pts, std::size_t begin, std::size_t end);
    static double box_sq_dist(const Node& node, const Point& q) noexcept;
    void leaf_sq_dists(const Node& node, const Point& q, double* out) const;
    double leaf_min(const Node& node, const Point& q) const;

    std::array<std::vector<double>, Dim> coords_;
    std::vector<std::size_t> index_;
    std::vector<Node> nodes_;
};

template <std::size_t Dim>
template <class Visit>
void PointTree<Dim>::visit_within(const Point& q, double r2, Visit&& visit) const
{
    if (nodes_.empty())
        return;
    std::int32_t stack[128];
    int top = 0;
    stack[top++] = 0;
    double buffer[kLeafSize];
    while (top > 0) {
        const Node& node = nodes_[static_cast<std::size_t>(stack[--top])];
        if (box_sq_dist(node, q) > r2)
            continue;
        if (node.left < 0) {
            leaf_sq_dists(node, q, buffer);
            for (std::uint32_t i = node.begin; i < node.end; ++i)
                if (buffer[i - node.begin] <= r2)
                    visit(index_[i]);
            continue;
        }
        stack[top++] = node.left;
        stack[top++] = node.right;
    }
}

using PlaneTree = PointTree<2>;
using SphereTree = PointTree<3>;

/// Builds a tree over the unit-sphere images of the points; Euclidean
/// distance there is the chordal distance.
SphereTree make_sphere_tree(const PointSet& points);

/// Builds a planar tree; throws std::invalid_argument if a point is infinite.
PlaneTree make_plane_tree(const PointSet& points);

}  // namespace expdyn
