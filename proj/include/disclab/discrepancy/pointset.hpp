#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "disclab/util/io.hpp"
#include "disclab/util/vec2.hpp"

namespace disclab::disc {

/// Finite multiset of points in the half-open unit square, with generator
/// provenance for replay.
struct PointSet {
    std::vector<Vec2> points;
    nlohmann::json provenance = nlohmann::json::object();

    size_t size() const { return points.size(); }

    void validate() const {
        if (points.empty()) throw std::invalid_argument("PointSet: need N >= 1");
        for (const Vec2& p : points)
            if (!(p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0))
                throw std::invalid_argument("PointSet: coordinates must lie in [0,1)^2");
    }

    std::string toCsv() const {
        std::string out = "x,y\n";
        for (const Vec2& p : points) out += fmtDouble(p.x) + "," + fmtDouble(p.y) + "\n";
        return out;
    }

    static PointSet fromCsv(const std::string& csv) {
        PointSet ps;
        std::istringstream in(csv);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == 'x' || line[0] == '#') continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos) throw std::runtime_error("PointSet csv: missing comma");
            ps.points.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
        }
        ps.provenance = {{"generator", "csv"}};
        ps.validate();
        return ps;
    }

    nlohmann::json toJson() const {
        nlohmann::json j;
        auto pts = nlohmann::json::array();
        for (const Vec2& p : points) pts.push_back({p.x, p.y});
        j["points"] = pts;
        j["provenance"] = provenance;
        return j;
    }

    static PointSet fromJson(const nlohmann::json& j) {
        PointSet ps;
        for (const auto& p : j.at("points")) ps.points.push_back({p[0].get<double>(), p[1].get<double>()});
        ps.provenance = j.value("provenance", nlohmann::json::object());
        ps.validate();
        return ps;
    }
};

}  // namespace disclab::disc
