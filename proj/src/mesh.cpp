#include "epgmatch/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace epgmatch {

std::vector<std::array<int32_t, 2>> SurfaceMesh::edges() const {
    std::vector<std::array<int32_t, 2>> out;
    out.reserve(triangles.size() * 3);
    for (const auto& t : triangles) {
        for (int k = 0; k < 3; ++k) {
            int32_t u = t[k], v = t[(k + 1) % 3];
            if (u > v) std::swap(u, v);
            out.push_back({u, v});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MeshValidation validate_surface(const SurfaceMesh& mesh) {
    MeshValidation r;
    const auto n = static_cast<int32_t>(mesh.vertex_count());
    for (const auto& t : mesh.triangles) {
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
            r.issue = "degenerate triangle";
            return r;
        }
        for (int32_t v : t)
            if (v < 0 || v >= n) {
                r.issue = "triangle references a missing vertex";
                return r;
            }
    }

    std::map<std::array<int32_t, 2>, int> incidence;
    for (const auto& t : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            int32_t u = t[k], v = t[(k + 1) % 3];
            if (u > v) std::swap(u, v);
            ++incidence[{u, v}];
        }
    }
    r.edge_count = incidence.size();
    r.closed = !incidence.empty();
    for (const auto& [e, count] : incidence) {
        if (count != 2) {
            r.closed = false;
            r.issue = count < 2 ? "open boundary edge" : "non-manifold edge";
            break;
        }
    }

    // connectivity over vertices through edges
    if (n > 0) {
        std::vector<int32_t> parent(n);
        for (int32_t i = 0; i < n; ++i) parent[i] = i;
        auto find = [&](int32_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& [e, count] : incidence) {
            (void)count;
            int32_t a = find(e[0]), b = find(e[1]);
            if (a != b) parent[a] = b;
        }
        int components = 0;
        for (int32_t i = 0; i < n; ++i)
            if (find(i) == i) ++components;
        r.connected = components == 1;
        if (!r.connected && r.issue.empty()) r.issue = "mesh is not connected";
    }

    r.euler_characteristic = long(mesh.vertex_count()) - long(r.edge_count) + long(mesh.triangle_count());
    return r;
}

namespace {

Vec3 normalized(const Vec3& v) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace

SurfaceMesh make_icosphere(int level) {
    if (level < 0) throw std::invalid_argument("make_icosphere: negative level");
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    SurfaceMesh m;
    const double raw[12][3] = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                               {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                               {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
    for (const auto& v : raw) m.vertices.push_back(normalized({v[0], v[1], v[2]}));
    m.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                   {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                   {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                   {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

    for (int s = 0; s < level; ++s) {
        std::map<std::array<int32_t, 2>, int32_t> midpoint;
        auto mid = [&](int32_t u, int32_t v) {
            std::array<int32_t, 2> key{std::min(u, v), std::max(u, v)};
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            const Vec3& a = m.vertices[u];
            const Vec3& b = m.vertices[v];
            m.vertices.push_back(normalized({(a[0] + b[0]) / 2, (a[1] + b[1]) / 2, (a[2] + b[2]) / 2}));
            const auto idx = static_cast<int32_t>(m.vertices.size() - 1);
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int32_t, 3>> next;
        next.reserve(m.triangles.size() * 4);
        for (const auto& t : m.triangles) {
            const int32_t ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
            next.push_back({t[0], ab, ca});
            next.push_back({t[1], bc, ab});
            next.push_back({t[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        m.triangles = std::move(next);
    }
    return m;
}

SurfaceMesh make_torus(int major_segments, int minor_segments, double major_radius,
                       double minor_radius) {
    if (major_segments < 3 || minor_segments < 3)
        throw std::invalid_argument("make_torus: segments must be >= 3");
    SurfaceMesh m;
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (int i = 0; i < major_segments; ++i) {
        const double u = two_pi * i / major_segments;
        for (int j = 0; j < minor_segments; ++j) {
            const double v = two_pi * j / minor_segments;
            const double rad = major_radius + minor_radius * std::cos(v);
            m.vertices.push_back({rad * std::cos(u), rad * std::sin(u), minor_radius * std::sin(v)});
        }
    }
    auto at = [&](int i, int j) {
        return static_cast<int32_t>((i % major_segments) * minor_segments + (j % minor_segments));
    };
    for (int i = 0; i < major_segments; ++i) {
        for (int j = 0; j < minor_segments; ++j) {
            m.triangles.push_back({at(i, j), at(i + 1, j), at(i, j + 1)});
            m.triangles.push_back({at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
        }
    }
    return m;
}

BiFunctionSample sample_xz(const SurfaceMesh& mesh) {
    return sample_affine_xz(mesh, 1.0, 0.0, 1.0, 0.0);
}

BiFunctionSample sample_affine_xz(const SurfaceMesh& mesh, double c1, double d1, double c2,
                                  double d2) {
    BiFunctionSample s;
    s.mesh = mesh;
    s.values.reserve(mesh.vertex_count());
    for (const auto& v : mesh.vertices) s.values.push_back({c1 * v[0] + d1, c2 * v[2] + d2});
    return s;
}

}  // namespace epgmatch
