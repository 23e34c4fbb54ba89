#pragma once

// Scenario definition, execution pipeline, reconstruction demonstrator and
// machine-readable reporting. Scenarios are JSON documents; complex scalars
// are two-element [re, im] arrays. Randomness is driven by a single integer
// seed through std::mt19937_64 so identical scenarios reproduce identical
// reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dynsamp/conditions.hpp"
#include "dynsamp/discretization.hpp"

namespace dynsamp {

inline constexpr int kScenarioSchemaVersion = 1;

struct SpectrumSpec {
    enum class Kind { explicit_list, geometric, harmonic, linear, affine };

    Kind kind = Kind::explicit_list;
    int dimension = 0;
    std::vector<cplx> values;  // explicit_list
    double ratio = 0.5;        // geometric: lambda_j = ratio^j
    cplx offset{1.0, 0.0};     // affine: lambda_j = offset + scale * j
    cplx scale{0.0, 0.0};
};

struct Scenario {
    int schema_version = kScenarioSchemaVersion;
    std::string name;
    SpectrumSpec spectrum;
    bool canonical_vectors = true;   // g_j = sqrt(Re lambda_j), m = 1
    Eigen::MatrixXcd explicit_vectors;  // m x N when !canonical_vectors
    std::optional<TimeGrid> grid;
    double noise_sigma = 0.0;
    std::vector<int> sweep;  // dimensions to run; defaults to {spectrum.dimension}
    std::uint64_t seed = 0;
};

Scenario parse_scenario(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

/// lambda_j for the scenario's spectrum at 1-based index j.
SpectrumGenerator scenario_generator(const Scenario& s);

Spectrum build_spectrum(const Scenario& s, int n);
VectorSet build_vectors(const Scenario& s, const Spectrum& spec);

struct RunReport {
    nlohmann::ordered_json payload;
};

/// Which pipeline stages run_analyze executes.
struct AnalyzeStages {
    bool bounds = true;
    bool equivalence = true;
    bool conditions = true;
    bool discretize = true;
};

RunReport run_analyze(const Scenario& s, const AnalyzeStages& stages = {});

struct ReconstructOptions {
    int trials = 1;
    const Eigen::VectorXcd* f_true = nullptr;  // default: seeded random unit vector
};

RunReport run_reconstruct(const Scenario& s, const ReconstructOptions& options = {});

enum class ReportFormat { json, csv };

std::string emit_report(const RunReport& report, ReportFormat format);

}  // namespace dynsamp
