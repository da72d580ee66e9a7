#pragma once

// Internal: mutable collapse-oriented mesh state shared by the two
// simplifiers. Face lists stay sorted so every traversal is deterministic.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gamesh/mesh.hpp"

namespace gamesh::detail {

struct EditableMesh {
    std::vector<Vec3> pos;
    std::vector<std::uint8_t> v_alive;
    std::vector<Face> faces;
    std::vector<std::uint8_t> f_alive;
    std::vector<std::vector<int>> vfaces;  // alive incident face ids, ascending

    static EditableMesh from(const IndexedMesh& mesh) {
        EditableMesh em;
        em.pos = mesh.vertices;
        em.v_alive.assign(mesh.vertices.size(), 1);
        em.faces = mesh.faces;
        em.f_alive.assign(mesh.faces.size(), 1);
        em.vfaces.resize(mesh.vertices.size());
        for (int f = 0; f < mesh.face_count(); ++f)
            for (int k = 0; k < 3; ++k) {
                auto& vf = em.vfaces[mesh.faces[f][k]];
                if (vf.empty() || vf.back() != f) vf.push_back(f);
            }
        return em;
    }

    bool face_contains(int f, int v) const {
        const Face& t = faces[f];
        return t[0] == v || t[1] == v || t[2] == v;
    }

    void add_vface(int v, int f) {
        auto& vf = vfaces[v];
        const auto it = std::lower_bound(vf.begin(), vf.end(), f);
        if (it == vf.end() || *it != f) vf.insert(it, f);
    }

    void drop_vface(int v, int f) {
        auto& vf = vfaces[v];
        const auto it = std::lower_bound(vf.begin(), vf.end(), f);
        if (it != vf.end() && *it == f) vf.erase(it);
    }

    void kill_face(int f) {
        if (!f_alive[f]) return;
        f_alive[f] = 0;
        for (int k = 0; k < 3; ++k) drop_vface(faces[f][k], f);
    }

    bool edge_exists(int a, int b) const {
        const auto &fa = vfaces[a], &fb = vfaces[b];
        auto ia = fa.begin();
        auto ib = fb.begin();
        while (ia != fa.end() && ib != fb.end()) {
            if (*ia == *ib) return true;
            if (*ia < *ib) ++ia;
            else ++ib;
        }
        return false;
    }

    std::vector<int> neighbors(int v) const {
        std::vector<int> nb;
        for (int f : vfaces[v])
            for (int k = 0; k < 3; ++k)
                if (faces[f][k] != v) nb.push_back(faces[f][k]);
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        return nb;
    }

    // true if moving both edge ends to `placement` inverts or flattens any
    // surviving incident face
    bool would_flip(int a, int b, const Vec3& placement, double area_tol) const {
        for (int v : {a, b}) {
            for (int f : vfaces[v]) {
                const Face& t = faces[f];
                if (face_contains(f, a) && face_contains(f, b)) continue;  // dies anyway
                Vec3 pre[3], post[3];
                for (int k = 0; k < 3; ++k) {
                    pre[k] = pos[t[k]];
                    post[k] = (t[k] == a || t[k] == b) ? placement : pos[t[k]];
                }
                const Vec3 n0 = cross(pre[1] - pre[0], pre[2] - pre[0]);
                const Vec3 n1 = cross(post[1] - post[0], post[2] - post[0]);
                if (dot(n0, n1) < 0.0) return true;
                if (0.5 * norm(n1) < area_tol) return true;
            }
        }
        return false;
    }

    // Collapse edge (keep, dead): dead's faces are rewritten onto keep, faces
    // spanning the edge die, and duplicate faces around keep are pruned
    // (lowest face id survives). Returns the number of faces removed.
    int collapse(int keep, int dead, const Vec3& placement) {
        pos[keep] = placement;
        int removed = 0;
        const std::vector<int> dead_faces = vfaces[dead];  // copy; we mutate below
        for (int f : dead_faces) {
            if (!f_alive[f]) continue;
            if (face_contains(f, keep)) {
                kill_face(f);
                ++removed;
                continue;
            }
            Face& t = faces[f];
            for (int k = 0; k < 3; ++k)
                if (t[k] == dead) t[k] = keep;
            add_vface(keep, f);
        }
        vfaces[dead].clear();
        v_alive[dead] = 0;

        // collapsing a non-manifold edge can leave identical faces behind
        std::vector<std::pair<std::array<int, 3>, int>> ring;
        for (int f : vfaces[keep]) {
            std::array<int, 3> key = {faces[f][0], faces[f][1], faces[f][2]};
            std::sort(key.begin(), key.end());
            ring.push_back({key, f});
        }
        std::sort(ring.begin(), ring.end());
        for (size_t i = 1; i < ring.size(); ++i) {
            if (ring[i].first != ring[i - 1].first) continue;
            kill_face(std::max(ring[i].second, ring[i - 1].second));
            ++removed;
            ring[i].second = std::min(ring[i].second, ring[i - 1].second);
        }
        return removed;
    }
};

} // namespace gamesh::detail
