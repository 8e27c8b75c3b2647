#include "normbis/verify.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "normbis/ortho.hpp"
#include "normbis/parallel.hpp"
#include "normbis/shadow.hpp"

namespace normbis {

namespace {

constexpr std::array<std::string_view, 7> kSuites = {"prop1", "lemma1", "corollary1", "mw26",
                                                     "mw29",  "mw210",  "example1"};

std::string num(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

Check make_check(std::string name, nlohmann::json expected, nlohmann::json actual, double tol, bool pass) {
    return {std::move(name), std::move(expected), std::move(actual), tol, pass};
}

Check count_check(std::string name, long expected, long actual) {
    return make_check(std::move(name), expected, actual, 0.0, expected == actual);
}

Check upper_check(std::string name, double actual, double bound) {
    return make_check(std::move(name), "<= " + num(bound), actual, bound, actual <= bound);
}

int level_or_default(const SuiteOptions& o, int dim) { return o.mesh_level >= 0 ? o.mesh_level : default_mesh_level(dim); }

double spacing_or_default(const SuiteOptions& o, int dim) {
    return o.chord_spacing > 0.0 ? o.chord_spacing : default_chord_spacing(dim);
}

LabeledMesh labeled(const ConvexBody& body, const Vec& x, int level, const SuiteOptions& o) {
    return classify_sphere(body, x, sphere_mesh(body.dim(), level, o.seed), o.classify, o.edge_samples);
}

std::vector<Vec> directions(std::span<const Vec> pts) {
    std::vector<Vec> out;
    out.reserve(pts.size());
    for (const Vec& p : pts) out.push_back(normalized(p));
    return out;
}

bool is_euclidean(const ConvexBody& body) {
    const auto* lp = std::get_if<LpBall>(&body.shape());
    return lp && lp->p == 2.0;
}

// Nearest vertex to a unit direction (by Euclidean distance of directions).
std::size_t nearest_vertex(const LabeledMesh& mesh, const Vec& dir) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < mesh.mesh.size(); ++i) {
        const double d = dist2(normalized(mesh.mesh.vertices[i]), dir);
        if (d < best_d) best_d = d, best = i;
    }
    return best;
}

}  // namespace

bool Report::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json Report::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const Check& c : checks) {
        list.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"tol", c.tol}, {"pass", c.pass}});
    }
    return {{"suite", suite}, {"checks", list}};
}

std::span<const std::string_view> suite_names() noexcept { return kSuites; }

bool is_suite(std::string_view name) noexcept {
    return std::find(kSuites.begin(), kSuites.end(), name) != kSuites.end();
}

int default_mesh_level(int dim) noexcept {
    if (dim <= 2) return 10;
    if (dim == 3) return 4;
    return 2;
}

Report run_suite(std::string_view name, const ConvexBody& body, const Vec& x_in, const SuiteOptions& options) {
    require_dim(x_in, body.dim(), "run_suite");
    const Vec x = body.boundary_point(x_in);
    if (name == "prop1") return verify_prop1(body, x, options);
    if (name == "lemma1") return verify_lemma1(body, x, options);
    if (name == "corollary1") return verify_corollary1(body, x, options);
    if (name == "mw26") return verify_mw26(body, x, options);
    if (name == "mw29") return verify_mw29(body, x, options);
    if (name == "mw210") return verify_mw210(body, x, options);
    if (name == "example1") return verify_example1(body, x, options);
    throw Error("unknown suite: " + std::string(name));
}

Report verify_prop1(const ConvexBody& body, const Vec& x, const SuiteOptions& options) {
    Report r{"prop1", {}};
    const LabeledMesh m = labeled(body, x, level_or_default(options, body.dim()), options);
    const long n = static_cast<long>(m.mesh.size());
    const long left = static_cast<long>(m.count(Label::left));
    const long right = static_cast<long>(m.count(Label::right));
    const long bis = static_cast<long>(m.count(Label::bisector));
    r.checks.push_back(count_check("unresolved_vertices", 0, static_cast<long>(m.count(Label::unresolved))));
    r.checks.push_back(count_check("partition_total", n, left + right + bis));

    long raw_bad = 0, bad = 0;
    for (std::size_t i = 0; i < m.mesh.size(); ++i) {
        const std::size_t j = m.mesh.antipode[i];
        if (m.rays[j].label != mirror(m.rays[i].label)) ++raw_bad;
        if (m.labels[j] != mirror(m.labels[i])) ++bad;
    }
    r.checks.push_back(count_check("antipodal_law_rays", 0, raw_bad));
    r.checks.push_back(count_check("antipodal_law_labels", 0, bad));
    r.checks.push_back(count_check("left_right_balance", left, right));
    r.checks.push_back(make_check("closedness", true, closedness_check(m), 0.0, closedness_check(m)));
    r.checks.push_back(make_check("separation", true, separation_check(m), 0.0, separation_check(m)));

    const long lc = static_cast<long>(connected_components(m, Label::left).count);
    const long rc = static_cast<long>(connected_components(m, Label::right).count);
    const long bc = static_cast<long>(connected_components(m, Label::bisector).count);
    if (body.dim() <= 3) {
        r.checks.push_back(count_check("left_components", 1, lc));
        r.checks.push_back(count_check("right_components", 1, rc));
        if (body.dim() == 3) r.checks.push_back(count_check("bisector_components", 1, bc));
    } else {
        // k-NN adjacency: connectivity is only advisory here
        r.checks.push_back(make_check("left_components_advisory", 1, lc, 0.0, true));
        r.checks.push_back(make_check("right_components_advisory", 1, rc, 0.0, true));
        r.checks.push_back(make_check("bisector_components_advisory", 1, bc, 0.0, true));
    }
    return r;
}

std::vector<Vec> projected_bisector(const ConvexBody& body, const Vec& x, const LabeledMesh& mesh, int k) {
    const std::vector<TaggedPoint> pts = sample_bisector(body, x, mesh, k);
    std::vector<Vec> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { out[i] = phi(body, x, pts[i].point); });
    return out;
}

Lemma1Result lemma1_distance(const ConvexBody& body, const Vec& x, int level, double chord_spacing,
                             const SuiteOptions& options) {
    const SphereMesh mesh = sphere_mesh(body.dim(), level, options.seed);
    const int k = std::max(options.edge_samples, static_cast<int>(std::ceil(2.0 / mesh.spacing)));
    const LabeledMesh lm = classify_sphere(body, x, mesh, options.classify, k);
    std::vector<Vec> a = projected_bisector(body, x, lm, k);
    for (const BisectorPoint& p : bisector_line_samples(body, x, chord_spacing, 4, options.classify)) a.push_back(phi(body, x, p));
    BoundedRepParams bp;
    bp.chord_spacing = chord_spacing;
    const BoundedRepresentation br = bounded_representation(body, x, mesh, bp);
    Lemma1Result res;
    res.mesh_spacing = mesh.spacing;
    res.chord_spacing = chord_spacing;
    res.tolerance = 2.0 * (mesh.spacing + chord_spacing);
    res.distance = a.empty() ? std::numeric_limits<double>::infinity() : hausdorff(a, br.points);
    return res;
}

Report verify_lemma1(const ConvexBody& body, const Vec& x, const SuiteOptions& options) {
    Report r{"lemma1", {}};
    const int level = options.mesh_level >= 0 ? options.mesh_level : default_mesh_level(body.dim()) - 1;
    const double delta = spacing_or_default(options, body.dim());
    const Lemma1Result coarse = lemma1_distance(body, x, level, delta, options);
    const Lemma1Result fine = lemma1_distance(body, x, level + 1, 0.5 * delta, options);
    r.checks.push_back(upper_check("hausdorff_level_" + std::to_string(level), coarse.distance, coarse.tolerance));
    r.checks.push_back(make_check("hausdorff_level_" + std::to_string(level + 1) + "_decreases",
                                  "< " + num(coarse.distance), fine.distance, 0.0,
                                  fine.distance < coarse.distance));
    return r;
}

Report verify_corollary1(const ConvexBody& body, const Vec& x, const SuiteOptions& options) {
    Report r{"corollary1", {}};
    const int n = body.dim();
    const SphereMesh mesh = sphere_mesh(n, level_or_default(options, n), options.seed);
    BoundedRepParams bp;
    bp.chord_spacing = options.chord_spacing;
    auto residual = [&](const Vec& dir) {
        return hyperplane_flatness(bounded_representation(body, body.boundary_point(dir), mesh, bp).points);
    };
    // The statement quantifies over all x: besides x, probe two fixed generic
    // directions, since symmetric choices of x can be flat in non-Euclidean norms.
    const double at_x = residual(x);
    double worst = at_x;
    for (const Vec& g : {Vec{1.0, 0.6, 0.3, 0.15}, Vec{0.2, -0.7, 0.5, 0.4}}) {
        worst = std::max(worst, residual(Vec(std::span<const double>(g.data(), static_cast<std::size_t>(n)))));
    }
    if (is_euclidean(body)) {
        r.checks.push_back(upper_check("flatness_at_x", at_x, 1e-9));
        r.checks.push_back(upper_check("flatness_max_over_probes", worst, 1e-9));
    } else {
        constexpr double kFloor = 1e-3;
        r.checks.push_back(make_check("flatness_at_x_info", ">= 0", at_x, 0.0, true));
        r.checks.push_back(make_check("flatness_max_over_probes", "> " + num(kFloor), worst, kFloor,
                                      worst > kFloor));
    }
    return r;
}

Report verify_mw26(const ConvexBody& body, const Vec& x, const SuiteOptions& options) {
    Report r{"mw26", {}};
    const LabeledMesh m = labeled(body, x, level_or_default(options, body.dim()), options);
    BoundedRepParams bp;
    bp.chord_spacing = options.chord_spacing;
    const BoundedRepresentation br = bounded_representation(body, x, m.mesh, bp);
    std::vector<Vec> bis;
    for (std::size_t i = 0; i < m.mesh.size(); ++i) {
        if (m.labels[i] == Label::bisector) bis.push_back(normalized(m.mesh.vertices[i]));
    }
    const std::vector<Vec> shadow = directions(br.shadow());
    r.checks.push_back(count_check("bisector_vertices_present", 1, bis.empty() ? 0 : 1));
    r.checks.push_back(count_check("shadow_points_present", 1, shadow.empty() ? 0 : 1));
    if (!bis.empty() && !shadow.empty()) {
        r.checks.push_back(upper_check("shadow_to_bisector_vertex", directed_hausdorff(shadow, bis), m.mesh.spacing));
    }
    return r;
}

Report verify_mw29(const ConvexBody& body, const Vec& x, const SuiteOptions& options) {
    Report r{"mw29", {}};
    const SphereMesh mesh = sphere_mesh(body.dim(), level_or_default(options, body.dim()), options.seed);
    BoundedRepParams bp;
    bp.chord_spacing = options.chord_spacing;
    const std::vector<Vec> shadow = bounded_representation(body, x, mesh, bp).shadow();
    std::vector<char> sharp(shadow.size(), 0), bad(shadow.size(), 0);
    parallel_for(shadow.size(), [&](std::size_t i) {
        const Vec p = body.boundary_point(shadow[i]);
        if (!shadow_boundary_test(body, x, p) || !sharp_point_test(body, x, p)) return;
        sharp[i] = 1;
        bad[i] = classify_direction(body, x, p, options.classify).label != Label::bisector;
    });
    const long n_sharp = std::count(sharp.begin(), sharp.end(), 1);
    const long n_bad = std::count(bad.begin(), bad.end(), 1);
    r.checks.push_back(make_check("sharp_points_tested", ">= 0", n_sharp, 0.0, true));
    r.checks.push_back(count_check("sharp_points_not_bisector", 0, n_bad));
    return r;
}

Report verify_mw210(const ConvexBody& body, const Vec& x, const SuiteOptions& options) {
    if (body.dim() != 2) throw Error("mw210 needs a planar body");
    Report r{"mw210", {}};
    const LabeledMesh m = labeled(body, x, level_or_default(options, 2), options);
    auto is_bis = [&](const Vec& y) { return classify_direction(body, x, y, options.classify).label == Label::bisector; };

    long boundary = 0, unexplained = 0;
    for (std::size_t a = 0; a < m.mesh.size(); ++a) {
        if (m.rays[a].label != Label::bisector) continue;
        for (std::size_t b : m.mesh.adjacency[a]) {
            if (m.rays[b].label == Label::bisector) continue;
            // shrink [a, b] onto the end of the BISECTOR arc
            double lo = 0.0, hi = 1.0;
            for (int i = 0; i < 50; ++i) {
                const double s = 0.5 * (lo + hi);
                (is_bis(body.boundary_point(lerp(m.mesh.vertices[a], m.mesh.vertices[b], s))) ? lo : hi) = s;
            }
            const Vec z = body.boundary_point(lerp(m.mesh.vertices[a], m.mesh.vertices[b], lo));
            const RayClassification ray = classify_direction(body, x, z, options.classify);
            const bool ordinary = ray.label == Label::bisector && !ray.ideal_limit && !ray.solutions.empty();
            ++boundary;
            // the located end is only as sharp as the ideal-point probe radius
            const double tol = std::max(1e-6, 4.0 * options.classify.ideal_probe);
            if (!ordinary && !birkhoff_orthogonal(body, z, x, tol)) ++unexplained;
        }
    }
    // Isolated bisector directions between LEFT and RIGHT vertices are their own boundary.
    long isolated = 0;
    for (const EdgeCrossing& ec : m.crossings) {
        ++boundary;
        if (ec.points.empty()) {
            ++unexplained;
        } else {
            ++isolated;
        }
    }
    r.checks.push_back(make_check("boundary_points_found", "> 0", boundary, 0.0, boundary > 0));
    r.checks.push_back(make_check("isolated_crossings", ">= 0", isolated, 0.0, true));
    r.checks.push_back(count_check("boundary_points_unexplained", 0, unexplained));
    return r;
}

Report verify_example1(const ConvexBody& body, const Vec& x, const SuiteOptions& options) {
    if (!std::holds_alternative<HalfDiskHull>(body.shape())) throw Error("example1 needs a halfdisk body");
    Report r{"example1", {}};
    const int level = std::max(5, options.mesh_level);
    const LabeledMesh m = labeled(body, x, level, options);
    const double h = m.mesh.spacing;
    const double r_sing = options.branch_radius > 0.0 ? options.branch_radius : 6.0 * h;
    const double r_gen = 2.0 * h;
    const double link = 1.5 * h;

    // P(x) is two lunes from z to -z, each pinched on the equator; branches
    // are counted on its boundary curves.
    const std::vector<Vec> frontier = directions(frontier_points(body, x, m, options.classify, 1e-9));
    const std::array<Vec, 4> singular = {Vec{0.0, 0.0, 1.0}, Vec{0.0, 0.0, -1.0}, normalized(Vec{1.0, 1.0, 0.0}),
                                         normalized(Vec{-1.0, -1.0, 0.0})};
    auto branches = [&](const Vec& p, double radius) {
        try {
            return local_branch_count(frontier, p, radius, link);
        } catch (const Error&) {
            return -1;
        }
    };
    r.checks.push_back(count_check("branches_at_+z", 4, branches(singular[0], r_sing)));
    r.checks.push_back(count_check("branches_at_-z", 4, branches(singular[1], r_sing)));

    std::vector<Vec> generic;
    for (const Vec& p : frontier) {
        const bool near = std::any_of(singular.begin(), singular.end(), [&](const Vec& s) { return dist2(p, s) <= 2.0 * r_sing; });
        if (!near) generic.push_back(p);
    }
    std::vector<int> counts(generic.size());
    parallel_for(generic.size(), [&](std::size_t i) { counts[i] = branches(generic[i], r_gen); });
    const double fraction =
        generic.empty() ? 0.0
                        : static_cast<double>(std::count(counts.begin(), counts.end(), 2)) / static_cast<double>(generic.size());
    r.checks.push_back(make_check("generic_two_branch_fraction", ">= 0.95", fraction, 0.05, fraction >= 0.95));

    // Informational: the whole BISECTOR vertex set is two-dimensional here.
    const std::size_t top = nearest_vertex(m, singular[0]);
    int region = -1;
    try {
        region = local_branch_count(m, top, r_sing);
    } catch (const Error&) {
    }
    r.checks.push_back(make_check("region_sectors_at_+z_info", 2, region, 0.0, true));

    const Vec u = normalized(Vec{-1.0, 2.0, 0.0});
    r.checks.push_back(count_check("triangle_contacts_+u", 3, static_cast<long>(body.support_contacts(u, 1e-12).size())));
    r.checks.push_back(count_check("triangle_contacts_-u", 3, static_cast<long>(body.support_contacts(-u, 1e-12).size())));
    return r;
}

}  // namespace normbis
