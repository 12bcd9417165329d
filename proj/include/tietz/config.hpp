#pragma once

// Experiment configuration: named blocks of key = value lines.
//
//   # comment
//   [surface]
//   genus = 1
//   tau = 0.2,1.0          complex numbers are "re,im", "re" or "inf"
//   [cap]                  repeated once per cap, in order
//   kind = affine
//   center = 0.3,0.3
//   scale = 0.08
//   [target]
//   family = double-pole
//   [run]
//   history = 5 10 20 40   lists are whitespace separated
//   [output]
//
// Every error is a ConfigError whose message starts with "block.key".

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tietz/conformal.hpp"
#include "tietz/series.hpp"
#include "tietz/surface.hpp"

namespace tietz::io {

class ConfigError : public DomainError {
public:
    using DomainError::DomainError;
};

struct CapSpec {
    conformal::MapKind kind = conformal::MapKind::affine;
    cplx center{0.0, 0.0};
    cplx scale{1.0, 0.0};
    cplx a{0.0, 0.0};           // joukowski-ellipse
    std::vector<cplx> higher;   // polynomial-perturbation c_2, c_3, ...
    conformal::Moebius moebius; // moebius-composed
    std::shared_ptr<CapSpec> inner;
};

struct TargetSpec {
    /// alpha | double-pole | combination
    std::string family = "double-pole";
    std::size_t cap = 0; // 0-based
    int m = 1;
    std::optional<cplx> a;
    std::optional<cplx> preimage; // a = f_cap(preimage)
    std::vector<cplx> beta;       // combination: eps_1..eps_{n-1}
    std::vector<cplx> gamma;      // combination: c_1..c_g
    struct AlphaTerm {
        std::size_t cap;
        int m;
        cplx value;
    };
    std::vector<AlphaTerm> alpha; // combination
};

struct RunSpec {
    int order = 40;
    std::vector<int> history{5, 10, 20, 40};
    int boundary_nodes = 512;
    int edge_nodes = 512;
    int contour_nodes = 512;
    double radius_factor = 0.9;
    int max_order = 64;
    double condition_limit = 1e12;
    bool strict = false;
    std::vector<std::string> checks;
    int samples = 20;
    int pole_orders = 12;
    double residual_tol = 1e-6;
    double uniform_tol = 1e-6;
    double uniform_distance = 0.5;
    int uniform_points = 64;
    std::optional<cplx> invariance_shift;
    std::uint64_t seed = 20240607;
};

struct ExperimentConfig {
    int genus = 0;
    cplx tau{0.0, 1.0};
    std::optional<cplx> q;
    cplx w0{0.0, 0.0};
    double margin = 0.05;
    double separation = 0.0;
    std::vector<CapSpec> caps;
    TargetSpec target;
    RunSpec run;
    std::string output_directory = "out";
    std::vector<std::string> formats{"csv", "json"};

    /// Raw blocks in file order, for the report.
    std::vector<std::pair<std::string, std::map<std::string, std::string>>> echo;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

conformal::ConformalMap build_map(const CapSpec& spec);
/// Throws ConfigError (naming the offending block) when construction fails.
surface::SurfaceSpec build_surface(const ExperimentConfig& config);
series::TargetForm build_target(const ExperimentConfig& config, const surface::SurfaceSpec& surface);
series::SeriesOptions build_series_options(const ExperimentConfig& config);

cplx parse_complex(std::string_view text);
std::string format_complex(cplx z);

} // namespace tietz::io
