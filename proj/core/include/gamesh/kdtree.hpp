#pragma once

#include <vector>

#include "gamesh/vec3.hpp"

namespace gamesh {

// Exact nearest-neighbor queries over a fixed point set. Subtrees are pruned
// only when strictly farther than the current best squared distance, so the
// returned minimum is bit-identical to a linear scan over the same points.
class PointKdTree {
public:
    explicit PointKdTree(std::vector<Vec3> points);

    // squared distance to the nearest stored point; empty tree returns +inf
    double nearest_distance2(const Vec3& q) const;
    // index (into the construction order) of the nearest point, lowest index
    // on exact ties; -1 when empty
    int nearest_index(const Vec3& q) const;

    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<Vec3>& points() const { return points_; }

private:
    struct Node {
        Vec3 bmin{0, 0, 0}, bmax{0, 0, 0};
        int left = -1, right = -1;
        int first = 0, count = 0;
    };

    int build(int first, int count);
    void search(int node, const Vec3& q, double& best_d2, int& best_idx) const;

    std::vector<Vec3> points_;       // original order
    std::vector<int> order_;         // leaf slices index into points_
    std::vector<Node> nodes_;
};

} // namespace gamesh
