#include "gamesh/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gamesh/kdtree.hpp"
#include "gamesh/primitives.hpp"

namespace gamesh {

SampledCloud sample_surface(const IndexedMesh& mesh, int n, std::uint64_t seed, int mesh_id) {
    if (n < 1) throw std::invalid_argument("sample_surface: need at least one sample");

    const size_t nf = mesh.faces.size();
    std::vector<double> cumulative(nf, 0.0);
    double total = 0.0;
    int last_positive = -1;
    for (size_t f = 0; f < nf; ++f) {
        const Face& t = mesh.faces[f];
        const double area =
            triangle_geometry(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]).area;
        if (area > 0.0) last_positive = static_cast<int>(f);
        total += area;
        cumulative[f] = total;
    }
    if (total <= 0.0) throw std::invalid_argument("sample_surface: mesh has zero surface area");

    SampledCloud cloud;
    cloud.mesh_id = mesh_id;
    cloud.points.reserve(n);
    cloud.faces.reserve(n);
    Rng rng(seed);
    for (int i = 0; i < n; ++i) {
        const double r = rng.uniform() * total;
        size_t f = std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin();
        if (f >= nf) f = static_cast<size_t>(last_positive); // r rounded up to the total
        const double r1 = std::sqrt(rng.uniform());
        const double r2 = rng.uniform();
        const double u = 1.0 - r1;
        const double v = r1 * (1.0 - r2);
        const double w = r1 * r2;
        const Face& t = mesh.faces[f];
        cloud.points.push_back(u * mesh.vertices[t[0]] + v * mesh.vertices[t[1]] +
                               w * mesh.vertices[t[2]]);
        cloud.faces.push_back(static_cast<int>(f));
    }
    return cloud;
}

namespace {

double directed_mean(const std::vector<Vec3>& from, const PointKdTree& to) {
    double sum = 0.0;
    for (const Vec3& p : from) sum += to.nearest_distance2(p);
    return sum / static_cast<double>(from.size());
}

double directed_sum(const std::vector<Vec3>& from, const PointKdTree& to) {
    double sum = 0.0;
    for (const Vec3& p : from) sum += to.nearest_distance2(p);
    return sum;
}

double within_percent(const std::vector<Vec3>& from, const PointKdTree& to, double tau) {
    int inside = 0;
    for (const Vec3& p : from)
        if (to.nearest_distance2(p) <= tau) ++inside;
    return 100.0 * static_cast<double>(inside) / static_cast<double>(from.size());
}

} // namespace

double chamfer(const std::vector<Vec3>& p, const std::vector<Vec3>& q) {
    if (p.empty() || q.empty()) throw std::invalid_argument("chamfer: empty cloud");
    const PointKdTree kp(p), kq(q);
    return directed_mean(p, kq) + directed_mean(q, kp);
}

double f1_score(const std::vector<Vec3>& p, const std::vector<Vec3>& q, double tau) {
    if (p.empty() || q.empty()) throw std::invalid_argument("f1_score: empty cloud");
    if (tau <= 0.0) throw std::invalid_argument("f1_score: tau must be positive");
    const PointKdTree kp(p), kq(q);
    const double precision = within_percent(q, kp, tau);
    const double recall = within_percent(p, kq, tau);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

double mesh_loss(const IndexedMesh& m1, const std::vector<Vec3>& p, const IndexedMesh& m2,
                 const std::vector<Vec3>& q, int n, std::uint64_t seed) {
    if (p.empty() || q.empty()) throw std::invalid_argument("mesh_loss: empty cloud");
    const SampledCloud p_hat = sample_surface(m1, n, seed, 1);
    const SampledCloud q_hat = sample_surface(m2, n, seed, 2);
    const PointKdTree kp(p_hat.points), kq(q_hat.points);
    return directed_sum(p, kq) + directed_sum(q, kp);
}

double unreferenced_fraction(const std::vector<Vec3>& points, const IndexedMesh& mesh) {
    if (points.empty()) return 0.0;
    std::vector<std::uint8_t> referenced(mesh.vertices.size(), 0);
    for (const Face& f : mesh.faces)
        for (int k = 0; k < 3; ++k) referenced[f[k]] = 1;
    std::vector<Vec3> anchors;
    for (size_t v = 0; v < mesh.vertices.size(); ++v)
        if (referenced[v]) anchors.push_back(mesh.vertices[v]);
    if (anchors.empty()) return 100.0;

    const PointKdTree tree(anchors);
    constexpr double tol2 = 1e-9 * 1e-9;
    int missing = 0;
    for (const Vec3& p : points)
        if (tree.nearest_distance2(p) > tol2) ++missing;
    return 100.0 * static_cast<double>(missing) / static_cast<double>(points.size());
}

MetricsReport evaluate(const IndexedMesh& ground_truth, const IndexedMesh& prediction,
                       const std::vector<Vec3>* points, const MetricsConfig& config) {
    if (config.sample_count < 1)
        throw std::invalid_argument("evaluate: sample_count must be at least 1");
    if (config.tau <= 0.0) throw std::invalid_argument("evaluate: tau must be positive");
    if (config.scale <= 0.0) throw std::invalid_argument("evaluate: scale must be positive");

    auto scaled = [&](const IndexedMesh& m) {
        IndexedMesh s = m;
        for (Vec3& v : s.vertices) v = v * config.scale;
        return s;
    };
    const IndexedMesh gt = scaled(ground_truth);
    const IndexedMesh pred = scaled(prediction);

    const SampledCloud gt_cloud = sample_surface(gt, config.sample_count, config.seed, 1);
    const SampledCloud pred_cloud =
        sample_surface(pred, config.sample_count, config.seed ^ 0x9e3779b97f4a7c15ULL, 2);

    MetricsReport report;
    report.config = config;
    report.chamfer = chamfer(gt_cloud.points, pred_cloud.points);
    report.f1_tau = f1_score(gt_cloud.points, pred_cloud.points, config.tau);
    report.f1_2tau = f1_score(gt_cloud.points, pred_cloud.points, 2.0 * config.tau);
    if (points != nullptr) {
        report.unreferenced_fraction = unreferenced_fraction(*points, prediction);
        report.unreferenced_valid = true;
    }
    return report;
}

} // namespace gamesh
