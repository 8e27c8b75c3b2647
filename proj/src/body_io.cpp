#include "normbis/body_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace normbis {

using nlohmann::json;

namespace {

Vec vec_from(const json& j) {
    if (!j.is_array() || j.empty() || j.size() > static_cast<std::size_t>(kMaxDim)) {
        throw Error("body spec: expected a numeric array of length 1.." + std::to_string(kMaxDim));
    }
    Vec v(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw Error("body spec: non-numeric coordinate");
        v[static_cast<int>(i)] = j[i].get<double>();
    }
    return v;
}

json vec_to(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
    return a;
}

double parse_p(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
        throw Error("body spec: bad p value '" + s + "'");
    }
    if (!j.is_number()) throw Error("body spec: p must be a number or \"inf\"");
    return j.get<double>();
}

std::vector<Vec> vec_list(const json& spec, const char* key) {
    if (!spec.contains(key) || !spec[key].is_array()) throw Error(std::string("body spec: missing array '") + key + "'");
    std::vector<Vec> out;
    for (const auto& row : spec[key]) out.push_back(vec_from(row));
    return out;
}

int infer_dim(const json& spec, const std::vector<Vec>& rows) {
    if (spec.contains("n")) return spec["n"].get<int>();
    if (rows.empty()) throw Error("body spec: cannot infer dimension");
    return rows.front().dim();
}

}  // namespace

ConvexBody load_body(const json& spec) {
    if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string()) {
        throw Error("body spec: missing string field 'type'");
    }
    std::optional<double> tol;
    if (spec.contains("tolerances")) {
        const auto& t = spec["tolerances"];
        if (t.contains("gauge")) tol = t["gauge"].get<double>();
    }
    const std::string type = spec["type"].get<std::string>();
    try {
        if (type == "lp") {
            if (!spec.contains("n") || !spec.contains("p")) throw Error("body spec: lp needs 'n' and 'p'");
            return ConvexBody::create(spec["n"].get<int>(), LpBall{parse_p(spec["p"])}, tol);
        }
        if (type == "polytope-h") {
            PolytopeH h;
            h.normals = vec_list(spec, "normals");
            if (!spec.contains("offsets") || !spec["offsets"].is_array()) throw Error("body spec: missing array 'offsets'");
            for (const auto& c : spec["offsets"]) h.offsets.push_back(c.get<double>());
            const int n = infer_dim(spec, h.normals);
            return ConvexBody::create(n, std::move(h), tol);
        }
        if (type == "polytope-v") {
            PolytopeV v;
            v.vertices = vec_list(spec, "vertices");
            const int n = infer_dim(spec, v.vertices);
            return ConvexBody::create(n, std::move(v), tol);
        }
        if (type == "halfdisk-hull") {
            const int m = spec.value("m", 256);
            return ConvexBody::create(3, HalfDiskHull{m}, tol);
        }
    } catch (const json::exception& e) {
        throw Error(std::string("body spec: ") + e.what());
    }
    throw Error("body spec: unknown type '" + type + "'");
}

ConvexBody load_body_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("body spec: malformed document: ") + e.what());
    }
    return load_body(j);
}

ConvexBody load_body_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open body spec file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_body_text(ss.str());
}

json save_body(const ConvexBody& body) {
    json j;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, LpBall>) {
                j["type"] = "lp";
                j["n"] = body.dim();
                if (std::isinf(s.p)) j["p"] = "inf";
                else j["p"] = s.p;
            } else if constexpr (std::is_same_v<T, PolytopeH>) {
                j["type"] = "polytope-h";
                j["n"] = body.dim();
                j["normals"] = json::array();
                for (const Vec& u : s.normals) j["normals"].push_back(vec_to(u));
                j["offsets"] = s.offsets;
            } else if constexpr (std::is_same_v<T, PolytopeV>) {
                j["type"] = "polytope-v";
                j["n"] = body.dim();
                j["vertices"] = json::array();
                for (const Vec& v : s.vertices) j["vertices"].push_back(vec_to(v));
            } else {
                j["type"] = "halfdisk-hull";
                j["m"] = s.m;
            }
        },
        body.shape());
    j["tolerances"] = {{"gauge", body.gauge_tolerance()}};
    return j;
}

ConvexBody parse_body_arg(std::string_view arg, int dim) {
    auto number_after = [&](std::string_view prefix) -> std::string_view { return arg.substr(prefix.size()); };
    if (arg.starts_with("lp:")) {
        const std::string_view rest = number_after("lp:");
        if (rest == "inf") return ConvexBody::lp_ball(dim, std::numeric_limits<double>::infinity());
        double p = 0.0;
        const auto res = std::from_chars(rest.data(), rest.data() + rest.size(), p);
        if (res.ec != std::errc{} || res.ptr != rest.data() + rest.size()) throw Error("bad body tag: " + std::string(arg));
        return ConvexBody::lp_ball(dim, p);
    }
    if (arg == "cube") return ConvexBody::cube(dim);
    if (arg == "cross") return ConvexBody::cross_polytope(dim);
    if (arg == "halfdisk") return ConvexBody::halfdisk_hull();
    if (arg.starts_with("halfdisk:")) {
        const std::string_view rest = number_after("halfdisk:");
        int m = 0;
        const auto res = std::from_chars(rest.data(), rest.data() + rest.size(), m);
        if (res.ec != std::errc{} || res.ptr != rest.data() + rest.size()) throw Error("bad body tag: " + std::string(arg));
        return ConvexBody::halfdisk_hull(m);
    }
    return load_body_file(std::string(arg));
}

}  // namespace normbis
