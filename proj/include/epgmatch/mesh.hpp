#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace epgmatch {

using Vec3 = std::array<double, 3>;

// Triangulated surface. Triangles index into the vertex list; orientation is
// not required, closedness is checked separately (validate_surface).
struct SurfaceMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int32_t, 3>> triangles;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t triangle_count() const { return triangles.size(); }

    // Sorted unique list of undirected edges (u < v).
    std::vector<std::array<int32_t, 2>> edges() const;
};

struct MeshValidation {
    bool closed = false;     // every edge has exactly two incident triangles
    bool connected = false;  // one connected component
    std::size_t edge_count = 0;
    long euler_characteristic = 0;
    std::string issue;       // first problem found; empty when closed && connected
};

MeshValidation validate_surface(const SurfaceMesh& mesh);

// A surface mesh with per-vertex (f1,f2) values: the discrete stand-in for an
// R^2-valued filtering function.
struct BiFunctionSample {
    SurfaceMesh mesh;
    std::vector<std::array<double, 2>> values;  // size == mesh.vertex_count()
    std::string name;
};

// Icosahedron-based geodesic sphere; 10*4^level + 2 vertices, unit radius.
// From level >= 1 the vertex set contains (+-1,0,0), (0,+-1,0), (0,0,+-1).
SurfaceMesh make_icosphere(int level);

// Parametric torus, axis = z. major_segments x minor_segments quads, split
// into triangles. Closed for segments >= 3.
SurfaceMesh make_torus(int major_segments, int minor_segments,
                       double major_radius, double minor_radius);

// Built-in function presets evaluated on mesh vertex positions.
// "xz"              -> f(x,y,z) = (x, z)
// affine (c1,d1,c2,d2) -> (c1*x + d1, c2*z + d2)
BiFunctionSample sample_xz(const SurfaceMesh& mesh);
BiFunctionSample sample_affine_xz(const SurfaceMesh& mesh, double c1, double d1,
                                  double c2, double d2);

}  // namespace epgmatch
