#include "expdyn/numerics.hpp"
#include "expdyn/spatial_index.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace expdyn {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1)
{
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t i)
{
    while (parent_[i] != i) {
        parent_[i] = parent_[parent_[i]];
        i = parent_[i];
    }
    return i;
}

bool DisjointSets::unite(std::size_t a, std::size_t b)
{
    a = find(a);
    b = find(b);
    if (a == b)
        return false;
    if (size_[a] < size_[b])
        std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
}

Partition DisjointSets::partition()
{
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    Partition result;
    result.labels.resize(parent_.size());
    std::vector<std::size_t> label_of_root(parent_.size(), unset);
    for (std::size_t i = 0; i < parent_.size(); ++i) {
        const std::size_t root = find(i);
        if (label_of_root[root] == unset)
            label_of_root[root] = result.count++;
        result.labels[i] = label_of_root[root];
    }
    return result;
}

std::vector<std::size_t> Partition::class_sizes() const
{
    std::vector<std::size_t> sizes(count, 0);
    for (auto l : labels)
        ++sizes[l];
    return sizes;
}

std::size_t Partition::largest() const
{
    const auto sizes = class_sizes();
    return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

std::vector<std::vector<std::size_t>> Partition::classes() const
{
    std::vector<std::vector<std::size_t>> out(count);
    for (std::size_t i = 0; i < labels.size(); ++i)
        out[labels[i]].push_back(i);
    return out;
}

Partition eps_components(const PointSet& points, double eps, Metric metric)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("eps must be positive");
    const double r2 = eps * eps;
    DisjointSets sets(points.size());

    if (metric == Metric::euclidean) {
        const PlaneTree tree = make_plane_tree(points);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& p = points[i];
            tree.visit_within({p.re(), p.im()}, r2, [&](std::size_t j) { sets.unite(i, j); });
        }
    } else {
        const SphereTree tree = make_sphere_tree(points);
        for (std::size_t i = 0; i < points.size(); ++i)
            tree.visit_within(to_unit_sphere(points[i]), r2,
                              [&](std::size_t j) { sets.unite(i, j); });
    }
    return sets.partition();
}

}  // namespace expdyn
