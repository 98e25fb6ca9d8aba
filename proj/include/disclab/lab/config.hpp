#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "disclab/geometry/close.hpp"
#include "disclab/lab/scaling.hpp"
#include "disclab/util/io.hpp"

namespace disclab::lab {

/// Body from an inline spec or a {"file": path} reference.
inline geo::ConvexBody bodyFromConfig(const nlohmann::json& j) {
    if (j.contains("file")) {
        const auto path = j.at("file").get<std::string>();
        if (!std::filesystem::exists(path))
            throw std::invalid_argument("body file does not exist: " + path);
        return geo::ConvexBody::fromJson(nlohmann::json::parse(readFile(path)));
    }
    if (j.contains("variant")) {
        const std::string v = j.at("variant").get<std::string>();
        if (v == "square") {  // convenience: centered square, optional rotation
            return geo::ConvexBody::rectangle(j.at("side").get<double>(), j.at("side").get<double>(),
                                              j.value("angle", 0.0));
        }
        if (v == "rectangle") {
            return geo::ConvexBody::rectangle(j.at("width").get<double>(), j.at("height").get<double>(),
                                              j.value("angle", 0.0));
        }
        return geo::ConvexBody::fromJson(j);
    }
    throw std::invalid_argument("body config needs 'variant' or 'file'");
}

/// Schedule: {"from": a, "to": b, "factor": f} geometric grid or {"list": [...]}.
inline std::vector<double> scheduleFromConfig(const nlohmann::json& j) {
    std::vector<double> out;
    if (j.contains("list")) {
        for (const auto& v : j.at("list")) out.push_back(v.get<double>());
    } else {
        const double from = j.at("from").get<double>();
        const double to = j.at("to").get<double>();
        const double factor = j.value("factor", 2.0);
        if (!(from > 0.0 && to >= from && factor > 1.0))
            throw std::invalid_argument("schedule: need 0 < from <= to and factor > 1");
        for (double n = from; n <= to * (1.0 + 1e-12); n *= factor) out.push_back(n);
    }
    for (size_t i = 0; i + 1 < out.size(); ++i)
        if (!(out[i] < out[i + 1])) throw std::invalid_argument("schedule must be strictly increasing");
    return out;
}

inline ScalingConfig scalingConfigFromJson(const nlohmann::json& j) {
    ScalingConfig cfg;
    cfg.body = bodyFromConfig(j.at("body"));
    cfg.family = j.at("family").get<std::string>();
    cfg.beta = j.value("beta", 2.0);
    cfg.schedule = scheduleFromConfig(j.at("schedule"));
    cfg.method = j.value("method", "spectral");
    cfg.tailFrac = j.value("tail_frac", 0.02);
    cfg.samples = j.value("samples", static_cast<size_t>(1000000));
    cfg.seed = j.value("seed", static_cast<uint64_t>(1));
    cfg.cacheDir = j.value("cache_dir", fourier::defaultCacheDir());
    cfg.threads = j.value("threads", 0);
    cfg.mode = j.value("mode", std::string("slope"));
    cfg.target = j.value("target", -1.0);
    cfg.tolerance = j.value("tolerance", 0.07);
    cfg.logBand = j.value("log_band", 10.0);
    cfg.raw = j;
    return cfg;
}

inline OscillationConfig oscillationConfigFromJson(const nlohmann::json& j) {
    OscillationConfig cfg;
    cfg.body = bodyFromConfig(j.at("body"));
    cfg.betas = j.at("betas").get<std::vector<double>>();
    cfg.schedule = scheduleFromConfig(j.at("schedule"));
    cfg.tailFrac = j.value("tail_frac", 0.02);
    cfg.cacheDir = j.value("cache_dir", fourier::defaultCacheDir());
    cfg.threads = j.value("threads", 0);
    cfg.tolerance = j.value("tolerance", 0.1);
    cfg.windowLen = j.value("window_len", 4);
    cfg.raw = j;
    return cfg;
}

inline NestedDemoConfig nestedConfigFromJson(const nlohmann::json& j) {
    NestedDemoConfig cfg;
    for (const auto& b : j.at("chain")) cfg.chain.push_back(bodyFromConfig(b));
    for (const auto& n : j.at("schedule")) cfg.schedule.push_back(n.get<long long>());
    cfg.q = j.value("q", static_cast<long long>(4));
    cfg.R = j.value("radius", 64.0);
    cfg.seed = j.value("seed", static_cast<uint64_t>(1));
    cfg.cacheDir = j.value("cache_dir", fourier::defaultCacheDir());
    cfg.threads = j.value("threads", 0);
    cfg.raw = j;
    return cfg;
}

}  // namespace disclab::lab
