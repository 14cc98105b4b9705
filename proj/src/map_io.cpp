#include "scalefn/map_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scalefn/errors.hpp"

namespace scalefn {

using nlohmann::json;

namespace {

Interval parse_interval(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError(std::string(what) + " must be a two-element array");
    return Interval{j[0].get<double>(), j[1].get<double>()};
}

MarkovMap from_json(const json& j) {
    if (!j.contains("ambient") || !j.contains("branches"))
        throw ParseError("map description needs 'ambient' and 'branches'");
    const Interval ambient = parse_interval(j["ambient"], "'ambient'");

    std::vector<Branch> branches;
    int index = 0;
    for (const json& bj : j["branches"]) {
        const Interval dom = parse_interval(bj.at("domain"), "'domain'");
        const json& mj = bj.at("model");
        const std::string kind = mj.at("kind").get<std::string>();
        BranchModel model;
        if (kind == "affine") {
            model = AffineModel{mj.at("slope").get<double>(), mj.at("intercept").get<double>()};
        } else if (kind == "powerlaw") {
            PowerLawModel p;
            p.c = mj.at("c").get<double>();
            p.gamma = mj.at("gamma").get<double>();
            p.coeff = mj.at("coeff").get<double>();
            p.value_at_c = mj.at("value_at_c").get<double>();
            p.direction = mj.at("direction").get<int>();
            if (p.direction != 1 && p.direction != -1)
                throw ParseError("'direction' must be 1 or -1");
            model = p;
        } else {
            throw ParseError("unknown branch model kind '" + kind + "'");
        }
        branches.emplace_back(index++, dom, std::move(model));
    }

    MarkovMap map = build_map(ambient, std::move(branches));

    if (j.contains("conjugacy") && !j["conjugacy"].is_null()) {
        const json& cj = j["conjugacy"];
        const std::string kind = cj.at("kind").get<std::string>();
        Diffeo h;
        if (kind == "identity") {
            h = Diffeo::identity(ambient);
        } else if (kind == "sin") {
            h = Diffeo::sinusoidal(cj.at("epsilon").get<double>(), cj.at("k").get<int>(), ambient);
        } else if (kind == "poly") {
            h = Diffeo::poly(cj.at("coeffs").get<std::vector<double>>(), ambient);
        } else {
            throw ParseError("unknown conjugacy kind '" + kind + "'");
        }
        map = conjugate_map(map, h);
    }
    return map;
}

} // namespace

MarkovMap map_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad map description: ") + e.what());
    }
}

MarkovMap load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open map file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return map_from_json_text(buf.str());
}

} // namespace scalefn
