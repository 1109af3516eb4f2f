#include "expdyn/spatial_index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace expdyn {

template <std::size_t Dim>
PointTree<Dim>::PointTree(std::span<const Point> points)
{
    if (points.size() >= std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("point tree too large");
    std::vector<Point> pts(points.begin(), points.end());
    index_.resize(pts.size());
    std::iota(index_.begin(), index_.end(), std::size_t{0});
    if (pts.empty())
        return;
    nodes_.reserve(2 * pts.size() / kLeafSize + 2);
    build(pts, 0, pts.size());
    for (std::size_t d = 0; d < Dim; ++d) {
        coords_[d].resize(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            coords_[d][i] = pts[i][d];
    }
}

template <std::size_t Dim>
std::int32_t PointTree<Dim>::build(std::vector<Point>& pts, std::size_t begin, std::size_t end)
{
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    Node node;
    node.begin = static_cast<std::uint32_t>(begin);
    node.end = static_cast<std::uint32_t>(end);
    node.lo.fill(std::numeric_limits<double>::infinity());
    node.hi.fill(-std::numeric_limits<double>::infinity());
    for (std::size_t i = begin; i < end; ++i)
        for (std::size_t d = 0; d < Dim; ++d) {
            node.lo[d] = std::min(node.lo[d], pts[i][d]);
            node.hi[d] = std::max(node.hi[d], pts[i][d]);
        }

    if (end - begin > kLeafSize) {
        std::size_t axis = 0;
        for (std::size_t d = 1; d < Dim; ++d)
            if (node.hi[d] - node.lo[d] > node.hi[axis] - node.lo[axis])
                axis = d;
        const std::size_t mid = begin + (end - begin) / 2;

        // Permute points and their original indices together.
        std::vector<std::size_t> perm(end - begin);
        std::iota(perm.begin(), perm.end(), begin);
        std::nth_element(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(mid - begin),
                         perm.end(), [&](std::size_t x, std::size_t y) {
                             if (pts[x][axis] != pts[y][axis])
                                 return pts[x][axis] < pts[y][axis];
                             return index_[x] < index_[y];
                         });
        std::vector<Point> tmp_pts(perm.size());
        std::vector<std::size_t> tmp_idx(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
            tmp_pts[i] = pts[perm[i]];
            tmp_idx[i] = index_[perm[i]];
        }
        std::copy(tmp_pts.begin(), tmp_pts.end(), pts.begin() + static_cast<std::ptrdiff_t>(begin));
        std::copy(tmp_idx.begin(), tmp_idx.end(), index_.begin() + static_cast<std::ptrdiff_t>(begin));

        node.left = build(pts, begin, mid);
        node.right = build(pts, mid, end);
    }
    nodes_[static_cast<std::size_t>(id)] = node;
    return id;
}

template <std::size_t Dim>
double PointTree<Dim>::box_sq_dist(const Node& node, const Point& q) noexcept
{
    double d2 = 0.0;
    for (std::size_t d = 0; d < Dim; ++d) {
        double gap = 0.0;
        if (q[d] < node.lo[d])
            gap = node.lo[d] - q[d];
        else if (q[d] > node.hi[d])
            gap = q[d] - node.hi[d];
        d2 += gap * gap;
    }
    return d2;
}

template <std::size_t Dim>
void PointTree<Dim>::leaf_sq_dists(const Node& node, const Point& q, double* out) const
{
    const std::size_t n = node.end - node.begin;
    const std::span<double> dst(out, n);
    if constexpr (Dim == 2) {
        simd::sq_dist_2d({coords_[0].data() + node.begin, n}, {coords_[1].data() + node.begin, n},
                         q[0], q[1], dst);
    } else {
        simd::sq_dist_3d({coords_[0].data() + node.begin, n}, {coords_[1].data() + node.begin, n},
                         {coords_[2].data() + node.begin, n}, q[0], q[1], q[2], dst);
    }
}

template <std::size_t Dim>
double PointTree<Dim>::leaf_min(const Node& node, const Point& q) const
{
    const std::size_t n = node.end - node.begin;
    if constexpr (Dim == 2) {
        return simd::min_sq_dist_2d({coords_[0].data() + node.begin, n},
                                    {coords_[1].data() + node.begin, n}, q[0], q[1]);
    } else {
        return simd::min_sq_dist_3d({coords_[0].data() + node.begin, n},
                                    {coords_[1].data() + node.begin, n},
                                    {coords_[2].data() + node.begin, n}, q[0], q[1], q[2]);
    }
}

template <std::size_t Dim>
double PointTree<Dim>::nearest_sq(const Point& q) const
{
    double best = std::numeric_limits<double>::infinity();
    if (nodes_.empty())
        return best;
    std::int32_t stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[static_cast<std::size_t>(stack[--top])];
        if (box_sq_dist(node, q) > best)
            continue;
        if (node.left < 0) {
            best = std::min(best, leaf_min(node, q));
            continue;
        }
        const Node& l = nodes_[static_cast<std::size_t>(node.left)];
        const Node& r = nodes_[static_cast<std::size_t>(node.right)];
        // Push the farther child first so the nearer one is explored first.
        if (box_sq_dist(l, q) <= box_sq_dist(r, q)) {
            stack[top++] = node.right;
            stack[top++] = node.left;
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
    return best;
}

template class PointTree<2>;
template class PointTree<3>;

SphereTree make_sphere_tree(const PointSet& points)
{
    std::vector<SphereTree::Point> pts;
    pts.reserve(points.size());
    for (const auto& p : points.points())
        pts.push_back(to_unit_sphere(p));
    return SphereTree(pts);
}

PlaneTree make_plane_tree(const PointSet& points)
{
    std::vector<PlaneTree::Point> pts;
    pts.reserve(points.size());
    for (const auto& p : points.points()) {
        if (p.is_infinite())
            throw std::invalid_argument("euclidean metric requires finite points");
        pts.push_back({p.re(), p.im()});
    }
    return PlaneTree(pts);
}

}  // namespace expdyn
