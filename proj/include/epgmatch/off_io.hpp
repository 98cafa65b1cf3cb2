#pragma once

#include <string>

#include "epgmatch/mesh.hpp"

namespace epgmatch {

// ASCII OFF. Loading validates the closed-manifold requirement (every edge
// has exactly two incident triangles, one component) and throws
// std::runtime_error otherwise.
SurfaceMesh load_mesh_off(const std::string& path);
void save_mesh_off(const SurfaceMesh& mesh, const std::string& path);

// Per-vertex values, CSV columns vertex_index,f1,f2 (header line optional).
// Every vertex must be assigned exactly once.
BiFunctionSample load_values_csv(const SurfaceMesh& mesh, const std::string& path);

// Mesh spec: a path to an OFF file, or "builtin:icosphere:<level>" /
// "builtin:torus:<nu>,<nv>,<R>,<r>".
SurfaceMesh load_mesh_spec(const std::string& spec);

// Function spec: "preset:xz", "preset:affine:c1,d1,c2,d2" or "csv:<path>".
BiFunctionSample load_function_spec(const SurfaceMesh& mesh, const std::string& spec);

}  // namespace epgmatch
