#include "vdp/manifest.hpp"

#include <fstream>

#include <json.hpp>

namespace vdp {

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["tool_version"] = kToolVersion;
    j["subcommand"] = subcommand;
    j["argv"] = argv;
    j["params"] = {{"a", params.a}, {"b", params.b}, {"omega", params.omega},
                   {"theta", params.theta}};
    j["sampling"] = {{"dt", dt}, {"transient", transient}, {"n", n}};
    j["determinism"] = "seed-free; fixed-step RK4; byte-identical on replay";
    j["options"] = options;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("manifest: cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    RunManifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    const auto& p = j.at("params");
    m.params = Params{p.at("a"), p.at("b"), p.at("omega"), p.at("theta")};
    const auto& s = j.at("sampling");
    m.dt = s.at("dt");
    m.transient = s.at("transient");
    m.n = s.at("n");
    if (j.contains("options"))
        m.options = j.at("options").get<std::map<std::string, std::string>>();
    if (j.contains("outputs"))
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
    return m;
}

void RunManifest::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("manifest: cannot open " + path + " for writing");
    out << to_json();
    if (!out) throw IoError("manifest: write failure on " + path);
}

}  // namespace vdp
