// normbis: classify sphere directions, emit bounded representations and run
// the verification suites from the command line.
#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "normbis/body_io.hpp"
#include "normbis/shadow.hpp"
#include "normbis/topology.hpp"
#include "normbis/verify.hpp"

using namespace normbis;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitUnresolved = 3;

struct ConfigError : Error {
    using Error::Error;
};

struct RunConfig {
    std::string body;
    std::string x;
    int mesh_level = -1;
    std::uint64_t seed = 1;
    std::string out = "-";
    std::string format = "csv";
    std::string suite;
    ClassifyParams classify;
    int edge_samples = 16;
    double chord_spacing = 0.0;
    double branch_radius = 0.0;
};

std::string num(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

Vec parse_x(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (res.ec != std::errc() || res.ptr != item.data() + item.size()) throw ConfigError("--x: bad number '" + item + "'");
        vals.push_back(v);
    }
    if (vals.size() < 2 || vals.size() > 4) throw ConfigError("--x needs 2 to 4 comma-separated coordinates");
    return Vec(std::span<const double>(vals));
}

/// Writes through a temporary file renamed into place, so a failed run never
/// leaves a partial artifact behind.
void emit(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary);
        f << content;
        if (!f.flush()) {
            std::filesystem::remove(tmp);
            throw Error("cannot write " + path);
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string coord_header(int dim) {
    static const char* names[] = {"vx", "vy", "vz", "vw"};
    std::string h;
    for (int i = 0; i < dim; ++i) h += std::string(i ? "," : "") + names[i];
    return h;
}

std::string coords(const Vec& v, char sep = ',') {
    std::string s;
    for (int i = 0; i < v.dim(); ++i) {
        if (i) s += sep;
        s += num(v[i]);
    }
    return s;
}

nlohmann::json to_json(const Vec& v) { return std::vector<double>(v.span().begin(), v.span().end()); }

std::string obj_vertex(const Vec& v) {
    if (v.dim() > 3) throw ConfigError("obj output needs n <= 3");
    return "v " + coords(v, ' ') + (v.dim() == 2 ? " 0" : "") + "\n";
}

std::string obj_edges(const SphereMesh& mesh, std::size_t base) {
    std::string s;
    for (std::size_t a = 0; a < mesh.size(); ++a) {
        for (std::size_t b : mesh.adjacency[a]) {
            if (a < b) s += "l " + std::to_string(base + a + 1) + " " + std::to_string(base + b + 1) + "\n";
        }
    }
    return s;
}

struct Inputs {
    ConvexBody body;
    Vec x;
};

Inputs load_inputs(const RunConfig& cfg) {
    try {
        const Vec x = parse_x(cfg.x);
        ConvexBody body = parse_body_arg(cfg.body, x.dim());
        if (x.is_zero()) throw ConfigError("--x must be nonzero");
        const Vec unit = body.boundary_point(x);
        return {std::move(body), unit};
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

int level_for(const RunConfig& cfg, int dim) { return cfg.mesh_level >= 0 ? cfg.mesh_level : default_mesh_level(dim); }

SphereMesh mesh_for(const RunConfig& cfg, int dim) {
    try {
        return sphere_mesh(dim, level_for(cfg, dim), cfg.seed);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

int cmd_classify(const RunConfig& cfg) {
    const auto [body, x] = load_inputs(cfg);
    const SphereMesh mesh = mesh_for(cfg, body.dim());
    const LabeledMesh lm = classify_sphere(body, x, mesh, cfg.classify, cfg.edge_samples);
    std::string out;
    if (cfg.format == "csv") {
        out = coord_header(body.dim()) + ",label,ideal_limit,root_count\n";
        for (std::size_t i = 0; i < lm.mesh.size(); ++i) {
            out += coords(lm.mesh.vertices[i]) + "," + label_name(lm.labels[i]) + "," +
                   (lm.rays[i].ideal_limit ? "1" : "0") + "," + std::to_string(lm.rays[i].root_count()) + "\n";
        }
    } else if (cfg.format == "json") {
        nlohmann::json verts = nlohmann::json::array();
        for (std::size_t i = 0; i < lm.mesh.size(); ++i) {
            verts.push_back({{"v", to_json(lm.mesh.vertices[i])},
                             {"label", label_name(lm.labels[i])},
                             {"ideal_limit", lm.rays[i].ideal_limit},
                             {"root_count", lm.rays[i].root_count()}});
        }
        const nlohmann::json doc = {{"body", save_body(body)}, {"x", to_json(x)}, {"vertices", verts},
                                    {"adjacency", lm.mesh.adjacency}};
        out = doc.dump(1) + "\n";
    } else {
        for (const Vec& v : lm.mesh.vertices) out += obj_vertex(v);
        out += obj_edges(lm.mesh, 0);
    }
    emit(cfg.out, out);
    return lm.count(Label::unresolved) ? kExitUnresolved : 0;
}

int cmd_bounded_rep(const RunConfig& cfg) {
    const auto [body, x] = load_inputs(cfg);
    const SphereMesh mesh = mesh_for(cfg, body.dim());
    BoundedRepParams bp;
    bp.chord_spacing = cfg.chord_spacing;
    const BoundedRepresentation br = bounded_representation(body, x, mesh, bp);
    auto tag = [](Provenance p) { return p == Provenance::midpoint ? "midpoint" : "shadow"; };
    std::string out;
    if (cfg.format == "csv") {
        out = coord_header(body.dim()) + ",source\n";
        for (std::size_t i = 0; i < br.points.size(); ++i) out += coords(br.points[i]) + "," + tag(br.tags[i]) + "\n";
    } else if (cfg.format == "json") {
        nlohmann::json pts = nlohmann::json::array();
        for (std::size_t i = 0; i < br.points.size(); ++i) pts.push_back({{"v", to_json(br.points[i])}, {"source", tag(br.tags[i])}});
        out = nlohmann::json{{"body", save_body(body)}, {"x", to_json(x)}, {"points", pts}}.dump(1) + "\n";
    } else {
        for (const Vec& p : br.points) out += obj_vertex(p);
        if (body.dim() == 3) {
            for (const Vec& v : mesh.vertices) out += obj_vertex(body.boundary_point(v));
            out += obj_edges(mesh, br.points.size());
        }
    }
    emit(cfg.out, out);
    return 0;
}

int cmd_verify(RunConfig cfg) {
    if (!is_suite(cfg.suite)) throw ConfigError("unknown suite: " + cfg.suite);
    if (cfg.suite == "example1") {
        if (cfg.body.empty()) cfg.body = "halfdisk";
        if (cfg.x.empty()) cfg.x = "1,0,0";
    }
    if (cfg.body.empty() || cfg.x.empty()) throw ConfigError("--body and --x are required");
    const auto [body, x] = load_inputs(cfg);
    SuiteOptions opt;
    opt.mesh_level = cfg.mesh_level;
    opt.seed = cfg.seed;
    opt.classify = cfg.classify;
    opt.edge_samples = cfg.edge_samples;
    opt.chord_spacing = cfg.chord_spacing;
    opt.branch_radius = cfg.branch_radius;
    Report report;
    try {
        report = run_suite(cfg.suite, body, x, opt);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    emit(cfg.out, report.to_json().dump(1) + "\n");
    return report.passed() ? 0 : 1;
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool required) {
    auto* body = cmd->add_option("--body", cfg.body, "lp:<p>, lp:inf, cube, cross, halfdisk[:<m>] or a body JSON file");
    auto* x = cmd->add_option("--x", cfg.x, "direction x as comma-separated coordinates");
    if (required) {
        body->required();
        x->required();
    }
    cmd->add_option("--mesh-level", cfg.mesh_level, "sphere mesh resolution");
    cmd->add_option("--seed", cfg.seed, "seed for random meshes (n = 4)");
    cmd->add_option("--out", cfg.out, "output path ('-' for stdout)");
    cmd->add_option("--edge-samples", cfg.edge_samples, "t values per LEFT-RIGHT mesh edge")->check(CLI::PositiveNumber);
    cmd->add_option("--tol-t0", cfg.classify.t0, "first scan parameter");
    cmd->add_option("--tol-ratio", cfg.classify.ratio, "geometric scan ratio");
    cmd->add_option("--tol-t-max", cfg.classify.t_max, "scan horizon");
    cmd->add_option("--tol-eps-f", cfg.classify.eps_f, "zero threshold for f");
    cmd->add_option("--tol-eps-asym", cfg.classify.eps_asym, "tail threshold for ideal directions");
    cmd->add_option("--tol-eps-t", cfg.classify.eps_t, "root resolution");
    cmd->add_option("--tol-limit", cfg.classify.limit_tol, "derivative cross-check tolerance");
    cmd->add_option("--tol-ideal-probe", cfg.classify.ideal_probe, "relative radius of the ideal-point neighbour probes");
    cmd->add_option("--tol-t-extend", cfg.classify.t_extend, "search limit for a root past the horizon (0: none)");
    cmd->add_option("--tol-chord", cfg.chord_spacing, "chord lattice spacing (0: default)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bisectors, radial projections and shadow boundaries of normed spaces"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* classify = app.add_subcommand("classify", "label mesh directions LEFT / RIGHT / BISECTOR");
    add_common(classify, cfg, true);
    classify->add_option("--format", cfg.format, "csv, json or obj")->check(CLI::IsMember({"csv", "json", "obj"}));

    auto* brep = app.add_subcommand("bounded-rep", "bounded representation point cloud");
    add_common(brep, cfg, true);
    brep->add_option("--format", cfg.format, "csv, json or obj")->check(CLI::IsMember({"csv", "json", "obj"}));

    auto* verify = app.add_subcommand("verify", "run a verification suite and print a JSON report");
    add_common(verify, cfg, false);
    verify->add_option("suite", cfg.suite, "prop1, lemma1, corollary1, mw26, mw29, mw210 or example1")->required();
    verify->add_option("--branch-radius", cfg.branch_radius, "example1 annulus radius (0: 6 mesh spacings)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return e.get_exit_code() == 0 ? code : kExitConfig;
    }

    try {
        if (classify->parsed()) return cmd_classify(cfg);
        if (brep->parsed()) return cmd_bounded_rep(cfg);
        return cmd_verify(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
