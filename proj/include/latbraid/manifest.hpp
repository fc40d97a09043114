#pragma once

#include "latbraid/numeric.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <string>

namespace latbraid {

inline const char* kVersion = "1.0.0";

// Every JSON output embeds its manifest; identical manifest implies identical
// output (the property tests fix their RNG seeds).
struct RunManifest {
    std::string command;
    nlohmann::json config;
    std::string version = kVersion;
    std::string backend = "float";
    unsigned long long seed = 0;
    double wall_seconds = 0.0;

    nlohmann::json to_json() const {
        return {{"command", command}, {"config", config},     {"version", version},
                {"backend", backend}, {"rng_seed", seed},     {"wall_seconds", wall_seconds}};
    }
};

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

}  // namespace latbraid
