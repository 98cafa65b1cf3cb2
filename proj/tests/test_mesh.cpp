#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "epgmatch/mesh.hpp"

using namespace epgmatch;

TEST_CASE("icosphere vertex counts follow 10*4^k+2") {
    CHECK(make_icosphere(0).vertex_count() == 12);
    CHECK(make_icosphere(1).vertex_count() == 42);
    CHECK(make_icosphere(2).vertex_count() == 162);
    CHECK(make_icosphere(3).vertex_count() == 642);
    CHECK(make_icosphere(4).vertex_count() == 2562);
}

TEST_CASE("icosphere is a closed connected sphere") {
    for (int level : {0, 1, 2}) {
        const SurfaceMesh m = make_icosphere(level);
        const MeshValidation v = validate_surface(m);
        CHECK(v.closed);
        CHECK(v.connected);
        CHECK(v.euler_characteristic == 2);
        for (const auto& p : m.vertices)
            CHECK(std::fabs(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - 1.0) < 1e-12);
    }
}

TEST_CASE("icosphere levels >= 1 contain the coordinate poles") {
    const SurfaceMesh m = make_icosphere(1);
    int hits = 0;
    for (const auto& p : m.vertices) {
        for (int axis = 0; axis < 3; ++axis) {
            Vec3 e{0, 0, 0};
            e[axis] = 1.0;
            if ((std::fabs(p[0] - e[0]) < 1e-15 && std::fabs(p[1] - e[1]) < 1e-15 &&
                 std::fabs(p[2] - e[2]) < 1e-15) ||
                (std::fabs(p[0] + e[0]) < 1e-15 && std::fabs(p[1] + e[1]) < 1e-15 &&
                 std::fabs(p[2] + e[2]) < 1e-15))
                ++hits;
        }
    }
    CHECK(hits == 6);
}

TEST_CASE("torus is closed with euler characteristic 0") {
    const SurfaceMesh m = make_torus(16, 8, 2.0, 1.0);
    const MeshValidation v = validate_surface(m);
    CHECK(v.closed);
    CHECK(v.connected);
    CHECK(v.euler_characteristic == 0);
    CHECK(m.vertex_count() == 16 * 8);
}

TEST_CASE("open and non-manifold meshes are flagged") {
    SurfaceMesh tri;
    tri.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    tri.triangles = {{0, 1, 2}};
    const MeshValidation v = validate_surface(tri);
    CHECK_FALSE(v.closed);
    CHECK(v.issue == "open boundary edge");

    SurfaceMesh pinched;  // three triangles sharing one edge
    pinched.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
    pinched.triangles = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
    CHECK_FALSE(validate_surface(pinched).closed);
}

TEST_CASE("edge list is sorted and unique") {
    const SurfaceMesh m = make_icosphere(0);
    const auto edges = m.edges();
    CHECK(edges.size() == 30);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) CHECK(edges[i] < edges[i + 1]);
}

TEST_CASE("affine preset composes with xz") {
    const SurfaceMesh m = make_icosphere(1);
    const BiFunctionSample f = sample_xz(m);
    const BiFunctionSample g = sample_affine_xz(m, 2.1, 2.0, 0.6, 1.8);
    for (std::size_t i = 0; i < m.vertex_count(); ++i) {
        CHECK(g.values[i][0] == doctest::Approx(2.1 * f.values[i][0] + 2.0).epsilon(1e-15));
        CHECK(g.values[i][1] == doctest::Approx(0.6 * f.values[i][1] + 1.8).epsilon(1e-15));
    }
}
