#include "gamesh/kdtree.hpp"

#include <algorithm>
#include <limits>

namespace gamesh {

namespace {

constexpr int kLeafSize = 8;

double box_distance2(const Vec3& p, const Vec3& bmin, const Vec3& bmax) {
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double lo = bmin[k] - p[k];
        const double hi = p[k] - bmax[k];
        if (lo > 0) d2 += lo * lo;
        else if (hi > 0) d2 += hi * hi;
    }
    return d2;
}

} // namespace

PointKdTree::PointKdTree(std::vector<Vec3> points) : points_(std::move(points)) {
    if (points_.empty()) return;
    order_.resize(points_.size());
    for (size_t i = 0; i < points_.size(); ++i) order_[i] = static_cast<int>(i);
    nodes_.reserve(2 * points_.size() / kLeafSize + 2);
    build(0, static_cast<int>(points_.size()));
}

int PointKdTree::build(int first, int count) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({});

    Vec3 bmin = points_[order_[first]], bmax = bmin;
    for (int i = first; i < first + count; ++i) {
        bmin = cwise_min(bmin, points_[order_[i]]);
        bmax = cwise_max(bmax, points_[order_[i]]);
    }
    nodes_[id].bmin = bmin;
    nodes_[id].bmax = bmax;

    const Vec3 spread = bmax - bmin;
    int axis = 0;
    if (spread.y > spread[axis]) axis = 1;
    if (spread.z > spread[axis]) axis = 2;

    if (count <= kLeafSize || spread[axis] == 0.0) {
        nodes_[id].first = first;
        nodes_[id].count = count;
        std::sort(order_.begin() + first, order_.begin() + first + count);
        return id;
    }

    const int mid = first + count / 2;
    std::nth_element(order_.begin() + first, order_.begin() + mid,
                     order_.begin() + first + count, [&](int a, int b) {
                         const double ca = points_[a][axis], cb = points_[b][axis];
                         return ca < cb || (ca == cb && a < b);
                     });
    const int left = build(first, mid - first);
    const int right = build(mid, first + count - mid);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

void PointKdTree::search(int node_id, const Vec3& q, double& best_d2, int& best_idx) const {
    const Node& node = nodes_[node_id];
    if (best_idx >= 0 && box_distance2(q, node.bmin, node.bmax) > best_d2) return;

    if (node.count > 0) {
        for (int i = node.first; i < node.first + node.count; ++i) {
            const int idx = order_[i];
            const double d2 = distance2(q, points_[idx]);
            if (best_idx < 0 || d2 < best_d2 || (d2 == best_d2 && idx < best_idx)) {
                best_d2 = d2;
                best_idx = idx;
            }
        }
        return;
    }

    const double dl = box_distance2(q, nodes_[node.left].bmin, nodes_[node.left].bmax);
    const double dr = box_distance2(q, nodes_[node.right].bmin, nodes_[node.right].bmax);
    if (dl <= dr) {
        search(node.left, q, best_d2, best_idx);
        search(node.right, q, best_d2, best_idx);
    } else {
        search(node.right, q, best_d2, best_idx);
        search(node.left, q, best_d2, best_idx);
    }
}

double PointKdTree::nearest_distance2(const Vec3& q) const {
    if (points_.empty()) return std::numeric_limits<double>::infinity();
    double best_d2 = 0.0;
    int best_idx = -1;
    search(0, q, best_d2, best_idx);
    return best_d2;
}

int PointKdTree::nearest_index(const Vec3& q) const {
    if (points_.empty()) return -1;
    double best_d2 = 0.0;
    int best_idx = -1;
    search(0, q, best_d2, best_idx);
    return best_idx;
}

} // namespace gamesh
