#ifndef PLSE_REPORT_HPP
#define PLSE_REPORT_HPP

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "plse/engine.hpp"

namespace plse {

inline const char* variant_name(Variant v) {
    return v == Variant::MPMA ? "mpma" : "partial";
}

inline Variant parse_variant(const std::string& s) {
    if (s == "mpma") return Variant::MPMA;
    if (s == "partial") return Variant::PartialMPMA;
    throw std::invalid_argument("unknown variant: " + s);
}

inline const char* crossover_name(CrossoverMode m) {
    switch (m) {
        case CrossoverMode::AUX: return "aux";
        case CrossoverMode::UX: return "ux";
        default: return "none";
    }
}

inline CrossoverMode parse_crossover(const std::string& s) {
    if (s == "aux") return CrossoverMode::AUX;
    if (s == "ux") return CrossoverMode::UX;
    if (s == "none") return CrossoverMode::None;
    throw std::invalid_argument("unknown crossover mode: " + s);
}

inline const char* matching_name(MatchingStrategy m) {
    return m == MatchingStrategy::NearestNeighbor ? "nearest" : "random";
}

inline MatchingStrategy parse_matching(const std::string& s) {
    if (s == "nearest") return MatchingStrategy::NearestNeighbor;
    if (s == "random") return MatchingStrategy::Random;
    throw std::invalid_argument("unknown matching strategy: " + s);
}

inline const char* exclusion_name(ExclusionScope e) {
    switch (e) {
        case ExclusionScope::Run: return "run";
        case ExclusionScope::Generation: return "generation";
        default: return "off";
    }
}

inline ExclusionScope parse_exclusion(const std::string& s) {
    if (s == "run") return ExclusionScope::Run;
    if (s == "generation") return ExclusionScope::Generation;
    if (s == "off") return ExclusionScope::Off;
    throw std::invalid_argument("unknown exclusion scope: " + s);
}

inline nlohmann::ordered_json config_to_json(const SolverConfig& config) {
    nlohmann::ordered_json j;
    j["p"] = config.p;
    j["alpha"] = config.alpha;
    j["gamma"] = config.gamma;
    j["beta"] = config.crossover.beta;
    j["phase1_iters"] = config.phase1_iters;
    j["phase2_iters"] = config.phase2_iters;
    j["variant"] = variant_name(config.variant);
    j["crossover"] = crossover_name(config.crossover.mode);
    j["matching"] = matching_name(config.crossover.matching);
    j["exclusion"] = exclusion_name(config.crossover.exclusion);
    j["seed"] = config.master_seed;
    j["workers"] = config.workers;
    j["time_limit"] = config.limits.time_seconds;
    j["iteration_limit"] = config.limits.total_iterations;
    j["generation_limit"] = config.limits.generations;
    return j;
}

// Machine-readable run result. Wall-clock time is opt-in so the default
// output is byte-identical across reruns with the same seed and flags.
inline nlohmann::ordered_json result_to_json(const std::string& instance_name, int order,
                                             const RunResult& result, const SolverConfig& config,
                                             bool include_timing = false) {
    nlohmann::ordered_json j;
    j["instance"] = instance_name;
    j["n"] = order;
    j["vertices"] = result.vertex_count;
    j["l"] = result.l;
    j["upper_bound"] = result.upper_bound;
    j["best_score"] = result.best_score;
    j["f"] = result.best_f;
    j["proven_optimal"] = result.proven_optimal;
    j["stop_reason"] = result.stop_reason;
    j["generations"] = result.generations;
    j["total_iterations"] = result.total_iterations;
    if (include_timing) j["elapsed_seconds"] = result.elapsed_seconds;
    j["config"] = config_to_json(config);
    return j;
}

}  // namespace plse

#endif  // PLSE_REPORT_HPP
