#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "normbis/bisector.hpp"
#include "normbis/body.hpp"
#include "normbis/topology.hpp"

namespace normbis {

struct Check {
    std::string name;
    nlohmann::json expected;
    nlohmann::json actual;
    double tol = 0.0;
    bool pass = false;
};

struct Report {
    std::string suite;
    std::vector<Check> checks;

    bool passed() const noexcept;
    /// {suite, checks: [{name, expected, actual, tol, pass}]}
    nlohmann::json to_json() const;
};

struct SuiteOptions {
    int mesh_level = -1;          // -1 picks a per-suite default
    std::uint64_t seed = 1;       // random meshes (n >= 4)
    ClassifyParams classify;
    int edge_samples = 16;        // t values per LEFT-RIGHT edge
    double chord_spacing = 0.0;   // 0 selects default_chord_spacing(n)
    double branch_radius = 0.0;   // example1 annulus radius; 0 means 6 mesh spacings
};

std::span<const std::string_view> suite_names() noexcept;
bool is_suite(std::string_view name) noexcept;

/// Runs a named suite with x rescaled to the unit sphere of the body.
/// Throws Error for an unknown name or an unsuitable body.
Report run_suite(std::string_view name, const ConvexBody& body, const Vec& x, const SuiteOptions& options = {});

Report verify_prop1(const ConvexBody& body, const Vec& x, const SuiteOptions& options = {});
Report verify_lemma1(const ConvexBody& body, const Vec& x, const SuiteOptions& options = {});
Report verify_corollary1(const ConvexBody& body, const Vec& x, const SuiteOptions& options = {});
Report verify_mw26(const ConvexBody& body, const Vec& x, const SuiteOptions& options = {});
Report verify_mw29(const ConvexBody& body, const Vec& x, const SuiteOptions& options = {});
Report verify_mw210(const ConvexBody& body, const Vec& x, const SuiteOptions& options = {});
Report verify_example1(const ConvexBody& body, const Vec& x, const SuiteOptions& options = {});

/// Default mesh level for a dimension: 10 (n = 2), 4 (n = 3), 2 (n >= 4).
int default_mesh_level(int dim) noexcept;

/// Phi-images of the bisector samples of a labeled mesh (ideal points map to
/// their boundary direction).
std::vector<Vec> projected_bisector(const ConvexBody& body, const Vec& x, const LabeledMesh& mesh, int k);

/// lemma1 comparison at one resolution: Hausdorff distance between the
/// projected bisector samples (mesh rays, edge crossings and lines parallel
/// to x at the chord spacing) and the bounded representation, plus the
/// tolerance 2 * (mesh spacing + chord spacing).
struct Lemma1Result {
    double distance = 0.0;
    double tolerance = 0.0;
    double mesh_spacing = 0.0;
    double chord_spacing = 0.0;
};
Lemma1Result lemma1_distance(const ConvexBody& body, const Vec& x, int level, double chord_spacing,
                             const SuiteOptions& options = {});

}  // namespace normbis
