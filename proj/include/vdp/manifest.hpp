#pragma once

#include <map>
#include <string>
#include <vector>

#include "vdp/ode.hpp"

namespace vdp {

inline constexpr const char* kToolVersion = "0.1.0";

// Reproducibility record written alongside every CLI output. Re-running the
// stored argv reproduces the outputs byte-identically (no RNG anywhere).
struct RunManifest {
    std::string subcommand;
    std::vector<std::string> argv;
    Params params;
    double dt = 0.0;
    double transient = 0.0;
    long n = 0;
    std::map<std::string, std::string> options;
    std::vector<std::string> outputs;

    std::string to_json() const;
    static RunManifest from_json_file(const std::string& path);
    void write(const std::string& path) const;
};

}  // namespace vdp
