#include "epgmatch/json_out.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace epgmatch {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json point_json(const DiagramPoint& p, int degree) {
    ordered_json j;
    j["degree"] = degree;
    j["birth"] = p.birth;
    if (p.essential())
        j["death"] = "inf";
    else
        j["death"] = p.death;
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string diagrams_to_json(const std::vector<PersistenceDiagram>& diagrams) {
    ordered_json arr = ordered_json::array();
    for (const auto& d : diagrams)
        for (const auto& p : d.points) arr.push_back(point_json(p, d.degree));
    return dump(arr);
}

std::string diagrams_to_csv(const std::vector<PersistenceDiagram>& diagrams) {
    std::ostringstream out;
    out << "degree,birth,death\n";
    char buf[96];
    for (const auto& d : diagrams) {
        for (const auto& p : d.points) {
            if (p.essential())
                std::snprintf(buf, sizeof buf, "%d,%.17g,inf\n", d.degree, p.birth);
            else
                std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", d.degree, p.birth, p.death);
            out << buf;
        }
    }
    return out.str();
}

namespace {

ordered_json witness_json(const MatchingWitness& w) {
    ordered_json j;
    j["cost"] = std::isfinite(w.cost) ? ordered_json(w.cost) : ordered_json("inf");
    j["type1"] = w.attains_point_pair;
    j["type2"] = w.attains_diagonal_pair;
    ordered_json pairs = ordered_json::array();
    for (const auto& p : w.pairs) {
        ordered_json e;
        e["from"] = p.from;
        e["to"] = p.to;
        e["cost"] = std::isfinite(p.cost) ? ordered_json(p.cost) : ordered_json("inf");
        pairs.push_back(e);
    }
    j["pairs"] = pairs;
    return j;
}

}  // namespace

std::string matching_result_to_json(const MatchingResult& result, bool include_log) {
    ordered_json j;
    j["value"] = result.value;
    j["argmax"] = {{"a", result.argmax.a}, {"b", result.argmax.b}};
    j["witness"] = witness_json(result.witness);
    if (include_log) {
        ordered_json log = ordered_json::array();
        for (const auto& e : result.log) {
            ordered_json entry;
            entry["a"] = e.p.a;
            entry["b"] = e.p.b;
            entry["value"] = std::isfinite(e.value) ? ordered_json(e.value) : ordered_json("inf");
            log.push_back(entry);
        }
        j["evaluations"] = log;
    }
    return dump(j);
}

std::string special_values_to_csv(const std::vector<SpecialValue>& values,
                                  const std::vector<Contour>& contours) {
    std::ostringstream out;
    out << "a,b,c1,c2,id_p,id_q,id_s,id_t,residual,condition\n";
    char buf[64];
    auto id_of = [&](int k) -> const std::string& { return contours[std::size_t(k)].id; };
    for (const auto& v : values) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,", v.param.a, v.param.b);
        out << buf << v.c1 << ',' << v.c2 << ',' << id_of(v.contours[0]) << ','
            << id_of(v.contours[1]) << ',' << id_of(v.contours[2]) << ',' << id_of(v.contours[3]);
        std::snprintf(buf, sizeof buf, ",%.17g,", v.residual);
        out << buf << (v.used_ordinates ? "ordinates" : "abscissas") << "\n";
    }
    return out.str();
}

std::string contours_to_json(const ExtendedParetoGrid& grid) {
    ordered_json j;
    j["owner"] = grid.owner;
    ordered_json arr = ordered_json::array();
    for (const auto& c : grid.contours) {
        ordered_json e;
        e["id"] = c.id;
        switch (c.kind) {
            case ContourKind::Proper: e["kind"] = "proper"; break;
            case ContourKind::VerticalRay: e["kind"] = "vertical-improper"; break;
            case ContourKind::HorizontalRay: e["kind"] = "horizontal-improper"; break;
        }
        if (c.kind == ContourKind::Proper) {
            ordered_json pts = ordered_json::array();
            for (const auto& p : c.polyline) pts.push_back({p[0], p[1]});
            e["points"] = pts;
        } else {
            e["anchor"] = {c.anchor[0], c.anchor[1]};
        }
        arr.push_back(e);
    }
    j["contours"] = arr;
    return dump(j);
}

ExtendedParetoGrid contours_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("contour file: JSON parse error: ") + e.what());
    }
    ExtendedParetoGrid g;
    g.owner = j.value("owner", "f");
    if (!j.contains("contours") || !j["contours"].is_array())
        throw std::runtime_error("contour file: missing contours array");
    for (const auto& e : j["contours"]) {
        Contour c;
        c.id = e.value("id", "");
        c.owner = g.owner;
        const std::string kind = e.value("kind", "");
        if (kind == "proper") {
            c.kind = ContourKind::Proper;
            if (!e.contains("points"))
                throw std::runtime_error("contour " + c.id + ": proper contour needs points");
            for (const auto& p : e["points"])
                c.polyline.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        } else if (kind == "vertical-improper" || kind == "horizontal-improper") {
            c.kind = kind[0] == 'v' ? ContourKind::VerticalRay : ContourKind::HorizontalRay;
            if (!e.contains("anchor"))
                throw std::runtime_error("contour " + c.id + ": improper contour needs an anchor");
            c.anchor = {e["anchor"].at(0).get<double>(), e["anchor"].at(1).get<double>()};
        } else {
            throw std::runtime_error("contour " + c.id + ": unknown kind '" + kind + "'");
        }
        g.contours.push_back(std::move(c));
    }
    validate_contours(g);
    return g;
}

ExtendedParetoGrid load_contours(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open contour file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return contours_from_json(ss.str());
}

void save_contours(const ExtendedParetoGrid& grid, const std::string& path) {
    write_text_file(path, contours_to_json(grid));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace epgmatch
