#include "gamesh/simplify.hpp"

#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

#include "editable_mesh.hpp"

namespace gamesh {

double collapse_cost(const Vec3& v1, const Vec3& v2, int l1, int l2) {
    if (l1 == 0 && l2 == 0) throw std::invalid_argument("uncollapsible edge");
    return std::exp(static_cast<double>(l1 + l2)) * distance2(v1, v2);
}

namespace {

using detail::EditableMesh;

constexpr int kMaxRetries = 10;

struct Candidate {
    double cost;
    int a, b;  // a < b
    std::uint32_t va, vb;
    int retries;
};

struct CandidateOrder {
    // max-heap adaptor: true when x is popped after y
    bool operator()(const Candidate& x, const Candidate& y) const {
        if (x.cost != y.cost) return x.cost > y.cost;
        if (x.a != y.a) return x.a > y.a;
        return x.b > y.b;
    }
};

using Heap = std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder>;

struct State {
    EditableMesh em;
    std::vector<std::uint8_t> label;
    std::vector<int> source;
    std::vector<std::uint32_t> version;
    double area_tol = 0.0;
};

State make_state(const AugmentedMesh& aug) {
    State st;
    st.em = EditableMesh::from(aug.mesh);
    st.label = aug.labels;
    st.source = aug.source_point;
    st.version.assign(aug.mesh.vertices.size(), 0);
    st.area_tol = 1e-12 * norm2(aug.mesh.bounds().extent());
    return st;
}

void push_edge(State& st, Heap& heap, int a, int b, int retries, double cost_scale) {
    if (a > b) std::swap(a, b);
    if (st.label[a] == 0 && st.label[b] == 0) return;
    const double c = collapse_cost(st.em.pos[a], st.em.pos[b], st.label[a], st.label[b]);
    heap.push({c * cost_scale, a, b, st.version[a], st.version[b], retries});
}

// survivor / victim / placement under the label rules
void plan_collapse(const State& st, int a, int b, int& keep, int& dead, Vec3& placement) {
    if (st.label[a] == 1 && st.label[b] == 1) {
        keep = std::min(a, b);
        dead = std::max(a, b);
        placement = (st.em.pos[a] + st.em.pos[b]) / 2.0;  // midpoint, stays label 1
    } else {
        keep = st.label[a] == 0 ? a : b;
        dead = st.label[a] == 0 ? b : a;
        placement = st.em.pos[keep];  // the projected point cannot move
    }
}

// Would this collapse strip the last face off some point-carrying vertex?
// Checked over the face ring that dies with the edge, plus the kept end.
bool would_orphan(const State& st, int keep, int dead) {
    auto survivors = [&](int v) {
        int n = 0;
        for (int f : st.em.vfaces[v])
            if (!(st.em.face_contains(f, keep) && st.em.face_contains(f, dead))) ++n;
        return n;
    };
    if (st.label[keep] == 0 && survivors(keep) == 0) {
        // Faces of the dying end that skip `keep` get rewritten onto it,
        // so they count toward its ring too.
        int inherited = 0;
        for (int f : st.em.vfaces[dead])
            if (!st.em.face_contains(f, keep)) ++inherited;
        if (inherited == 0) return true;
    }
    for (int f : st.em.vfaces[dead]) {
        if (!st.em.face_contains(f, keep)) continue;  // survives as a rewrite
        for (int k = 0; k < 3; ++k) {
            const int w = st.em.faces[f][k];
            if (w == keep || w == dead || st.label[w] != 0) continue;
            if (survivors(w) == 0) return true;
        }
    }
    return false;
}

void do_collapse(State& st, Heap& heap, CollapseLog& log, int keep, int dead,
                 const Vec3& placement, bool forced, bool flips) {
    st.em.collapse(keep, dead, placement);
    ++st.version[keep];
    ++st.version[dead];
    log.records.push_back({keep, dead, placement, forced, flips});
    if (forced) {
        ++log.forced;
        if (flips) ++log.flips_forced;
    }
    for (int n : st.em.neighbors(keep)) push_edge(st, heap, keep, n, 0, 1.0);
}

int drop_isolated(State& st, CollapseLog& log) {
    int remaining = 0;
    for (size_t v = 0; v < st.label.size(); ++v) {
        if (!st.em.v_alive[v] || st.label[v] != 1) continue;
        if (st.em.vfaces[v].empty()) {
            st.em.v_alive[v] = 0;
            ++log.isolated_dropped;
        } else {
            ++remaining;
        }
    }
    return remaining;
}

// assemble the output mesh: point vertices only, vertex i = input point i
IndexedMesh extract(const State& st, int point_count, CollapseLog& log) {
    IndexedMesh out;
    out.vertices.resize(point_count);
    std::vector<int> remap(st.em.pos.size(), -1);
    for (size_t v = 0; v < st.em.pos.size(); ++v) {
        if (!st.em.v_alive[v]) continue;
        if (st.label[v] != 0 || st.source[v] < 0)
            throw std::logic_error("simplify: non-point vertex survived");
        remap[v] = st.source[v];
        out.vertices[st.source[v]] = st.em.pos[v];
    }

    std::set<std::array<int, 3>> seen;
    std::vector<int> refs(point_count, 0);
    for (size_t f = 0; f < st.em.faces.size(); ++f) {
        if (!st.em.f_alive[f]) continue;
        const Face& t = st.em.faces[f];
        Face m = {remap[t[0]], remap[t[1]], remap[t[2]]};
        if (m[0] == m[1] || m[1] == m[2] || m[0] == m[2]) {
            ++log.degenerate_removed;
            continue;
        }
        std::array<int, 3> key = {m[0], m[1], m[2]};
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) {
            ++log.duplicates_removed;
            continue;
        }
        out.faces.push_back(m);
        for (int k = 0; k < 3; ++k) ++refs[m[k]];
    }

    // zero-area faces go too, but never at the price of unreferencing a point
    std::vector<Face> kept;
    kept.reserve(out.faces.size());
    for (const Face& t : out.faces) {
        const bool flat =
            triangle_geometry(out.vertices[t[0]], out.vertices[t[1]], out.vertices[t[2]])
                .degenerate;
        if (flat && refs[t[0]] > 1 && refs[t[1]] > 1 && refs[t[2]] > 1) {
            for (int k = 0; k < 3; ++k) --refs[t[k]];
            ++log.degenerate_removed;
            continue;
        }
        kept.push_back(t);
    }
    out.faces = std::move(kept);
    return out;
}

} // namespace

SimplifyResult simplify(const AugmentedMesh& aug) {
    State st = make_state(aug);
    SimplifyResult result;
    CollapseLog& log = result.log;

    const int np = static_cast<int>(aug.projections.size());

    Heap heap;
    for (size_t v = 0; v < st.label.size(); ++v)
        for (int n : st.em.neighbors(static_cast<int>(v)))
            if (static_cast<int>(v) < n) push_edge(st, heap, static_cast<int>(v), n, 0, 1.0);

    bool force = false;
    while (true) {
        while (!heap.empty()) {
            const Candidate c = heap.top();
            heap.pop();
            if (!st.em.v_alive[c.a] || !st.em.v_alive[c.b]) continue;
            if (st.version[c.a] != c.va || st.version[c.b] != c.vb) continue;
            if (st.label[c.a] == 0 && st.label[c.b] == 0) continue;
            if (!st.em.edge_exists(c.a, c.b)) continue;

            int keep, dead;
            Vec3 placement;
            plan_collapse(st, c.a, c.b, keep, dead, placement);
            const bool flips = st.em.would_flip(c.a, c.b, placement, st.area_tol);
            const bool orphans = would_orphan(st, keep, dead);

            if (!force) {
                if (flips || orphans) {
                    if (c.retries < kMaxRetries) {
                        heap.push({c.cost * 2.0, c.a, c.b, st.version[c.a], st.version[c.b],
                                   c.retries + 1});
                        ++log.deferred;
                    }
                    continue;  // parked for the force phase once retries run out
                }
                do_collapse(st, heap, log, keep, dead, placement, false, false);
                continue;
            }

            // force phase: flips are allowed through; orphaning is dodged by
            // collapsing a different edge of the same doomed vertex if one exists
            if (orphans) {
                int alt = -1;
                double alt_cost = 0.0;
                for (int n : st.em.neighbors(dead)) {
                    if (st.label[dead] == 0 && st.label[n] == 0) continue;
                    int k2, d2;
                    Vec3 p2;
                    plan_collapse(st, std::min(dead, n), std::max(dead, n), k2, d2, p2);
                    if (would_orphan(st, k2, d2)) continue;
                    const double cost =
                        collapse_cost(st.em.pos[dead], st.em.pos[n], st.label[dead], st.label[n]);
                    if (alt < 0 || cost < alt_cost) {
                        alt = n;
                        alt_cost = cost;
                    }
                }
                if (alt >= 0) {
                    int k2, d2;
                    Vec3 p2;
                    plan_collapse(st, std::min(dead, alt), std::max(dead, alt), k2, d2, p2);
                    const bool flips2 = st.em.would_flip(k2, d2, p2, st.area_tol);
                    do_collapse(st, heap, log, k2, d2, p2, true, flips2);
                    ++log.rerouted;
                    continue;
                }
                ++log.orphaned;
            }
            do_collapse(st, heap, log, keep, dead, placement, true, flips);
        }

        const int remaining = drop_isolated(st, log);
        if (remaining == 0) break;
        force = true;
        for (size_t v = 0; v < st.label.size(); ++v) {
            if (!st.em.v_alive[v] || st.label[v] != 1) continue;
            for (int n : st.em.neighbors(static_cast<int>(v)))
                push_edge(st, heap, static_cast<int>(v), n, 0, 1.0);
        }
    }

    result.mesh = extract(st, np, log);
    return result;
}

IndexedMesh replay(const AugmentedMesh& aug, const CollapseLog& log) {
    State st = make_state(aug);
    for (const CollapseRecord& r : log.records) st.em.collapse(r.keep, r.dead, r.placement);
    for (size_t v = 0; v < st.label.size(); ++v)
        if (st.em.v_alive[v] && st.label[v] == 1 && st.em.vfaces[v].empty())
            st.em.v_alive[v] = 0;
    CollapseLog scratch;
    return extract(st, static_cast<int>(aug.projections.size()), scratch);
}

IndexedMesh unproject(const IndexedMesh& mesh, const std::vector<ProjectedPoint>& origins) {
    if (origins.size() != mesh.vertices.size())
        throw std::invalid_argument("unproject: one origin per vertex required");
    IndexedMesh out = mesh;
    for (size_t i = 0; i < out.vertices.size(); ++i) out.vertices[i] = origins[i].original;
    return out;
}

} // namespace gamesh
