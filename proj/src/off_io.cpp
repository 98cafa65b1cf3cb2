#include "epgmatch/off_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace epgmatch {

namespace {

// strips comments and blank lines
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i < line.size()) return true;
    }
    return false;
}

}  // namespace

SurfaceMesh load_mesh_off(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open OFF file: " + path);
    std::string line;
    if (!next_line(in, line)) throw std::runtime_error("empty OFF file: " + path);
    {
        std::istringstream hdr(line);
        std::string tag;
        hdr >> tag;
        if (tag != "OFF") throw std::runtime_error("not an ASCII OFF file: " + path);
    }
    if (!next_line(in, line)) throw std::runtime_error("OFF: missing element counts");
    std::size_t nv = 0, nf = 0, ne = 0;
    {
        std::istringstream counts(line);
        if (!(counts >> nv >> nf >> ne)) throw std::runtime_error("OFF: malformed counts line");
    }
    SurfaceMesh m;
    m.vertices.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        if (!next_line(in, line)) throw std::runtime_error("OFF: truncated vertex list");
        std::istringstream v(line);
        Vec3 p;
        if (!(v >> p[0] >> p[1] >> p[2])) throw std::runtime_error("OFF: malformed vertex line");
        m.vertices.push_back(p);
    }
    m.triangles.reserve(nf);
    for (std::size_t i = 0; i < nf; ++i) {
        if (!next_line(in, line)) throw std::runtime_error("OFF: truncated face list");
        std::istringstream f(line);
        int k = 0;
        if (!(f >> k)) throw std::runtime_error("OFF: malformed face line");
        if (k != 3) throw std::runtime_error("OFF: only triangle faces are supported");
        std::array<int32_t, 3> t{};
        if (!(f >> t[0] >> t[1] >> t[2])) throw std::runtime_error("OFF: malformed face line");
        m.triangles.push_back(t);
    }

    const MeshValidation v = validate_surface(m);
    if (!v.closed || !v.connected)
        throw std::runtime_error("mesh is not a closed connected surface (" + v.issue + "): " + path);
    return m;
}

void save_mesh_off(const SurfaceMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write OFF file: " + path);
    out << "OFF\n" << mesh.vertex_count() << ' ' << mesh.triangle_count() << " 0\n";
    char buf[96];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v[0], v[1], v[2]);
        out << buf;
    }
    for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

BiFunctionSample load_values_csv(const SurfaceMesh& mesh, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open values CSV: " + path);
    BiFunctionSample s;
    s.mesh = mesh;
    s.values.assign(mesh.vertex_count(), {0.0, 0.0});
    std::vector<bool> seen(mesh.vertex_count(), false);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream row(line);
        long idx = 0;
        double f1 = 0, f2 = 0;
        if (!(row >> idx >> f1 >> f2)) {
            if (first) {  // tolerate a header line
                first = false;
                continue;
            }
            throw std::runtime_error("values CSV: malformed row: " + line);
        }
        first = false;
        if (idx < 0 || std::size_t(idx) >= mesh.vertex_count())
            throw std::runtime_error("values CSV: vertex index out of range");
        s.values[std::size_t(idx)] = {f1, f2};
        seen[std::size_t(idx)] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw std::runtime_error("values CSV: vertex " + std::to_string(i) + " missing");
    return s;
}

SurfaceMesh load_mesh_spec(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) {
        const std::string rest = spec.substr(8);
        if (rest.rfind("icosphere:", 0) == 0) {
            return make_icosphere(std::stoi(rest.substr(10)));
        }
        if (rest.rfind("torus:", 0) == 0) {
            std::istringstream args(rest.substr(6));
            int nu = 0, nv = 0;
            double R = 0, r = 0;
            char c;
            if (!(args >> nu >> c >> nv >> c >> R >> c >> r))
                throw std::runtime_error("bad torus spec, expected builtin:torus:nu,nv,R,r");
            return make_torus(nu, nv, R, r);
        }
        throw std::runtime_error("unknown builtin mesh: " + spec);
    }
    return load_mesh_off(spec);
}

BiFunctionSample load_function_spec(const SurfaceMesh& mesh, const std::string& spec) {
    if (spec == "preset:xz") {
        auto s = sample_xz(mesh);
        s.name = spec;
        return s;
    }
    if (spec.rfind("preset:affine:", 0) == 0) {
        std::istringstream args(spec.substr(14));
        double c1 = 0, d1 = 0, c2 = 0, d2 = 0;
        char c;
        if (!(args >> c1 >> c >> d1 >> c >> c2 >> c >> d2))
            throw std::runtime_error("bad affine preset, expected preset:affine:c1,d1,c2,d2");
        if (c1 <= 0 || c2 <= 0) throw std::runtime_error("affine preset requires c1, c2 > 0");
        auto s = sample_affine_xz(mesh, c1, d1, c2, d2);
        s.name = spec;
        return s;
    }
    if (spec.rfind("csv:", 0) == 0) {
        auto s = load_values_csv(mesh, spec.substr(4));
        s.name = spec;
        return s;
    }
    throw std::runtime_error("unknown function spec: " + spec);
}

}  // namespace epgmatch
