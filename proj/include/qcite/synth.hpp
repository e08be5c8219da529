#pragma once

// Synthetic citation histograms drawn from a known q-exponential law. The
// deterministic mode evaluates the anchored model and rounds to integer
// counts; the sampled mode inverts the CDF of the continuous normalized
// q-exponential density on [0, inf),
//
//   F(c) = 1 - [1 + (q-1) c/T]^(-(2-q)/(q-1)),   1 < q < 2,
//
// which is normalizable only for q < 2. Sampling uses a counter-based
// generator (one splitmix64 evaluation per draw index), so output is
// reproducible for a given seed no matter how generation is scheduled.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "qcite/errors.hpp"
#include "qcite/histogram.hpp"
#include "qcite/qmath.hpp"

#include "json.hpp"

namespace qcite {

enum class SynthMode { deterministic, sampled };

struct SyntheticSpec {
    std::string entity = "synthetic";
    double q_true = 4.0 / 3.0;
    double T_true = 5.0;
    /// Model count at anchor_c (deterministic mode; sampled counts come
    /// from the draws themselves).
    std::int64_t anchor_value = 1;
    std::int64_t anchor_c = 2;
    /// Largest citation count kept in the histogram; sampled draws beyond
    /// it are discarded.
    std::int64_t c_max = 1000;
    SynthMode mode = SynthMode::deterministic;
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(q_true > 1.0 && q_true < 2.0))
            throw DataError("SyntheticSpec: q_true must be in (1, 2)");
        if (!(T_true > 0.0)) throw DataError("SyntheticSpec: T_true must be > 0");
        if (!(anchor_c >= 1)) throw DataError("SyntheticSpec: anchor_c must be >= 1");
        if (!(anchor_value > 0))
            throw DataError("SyntheticSpec: anchor_value must be > 0");
        if (!(c_max > anchor_c + 10))
            throw DataError("SyntheticSpec: c_max must exceed anchor_c + 10");
        if (mode == SynthMode::sampled && !(n_samples > 0))
            throw DataError("SyntheticSpec: sampled mode needs n_samples > 0");
    }
};

/// Quantile function of the continuous q-exponential law:
/// c = T/(q-1) * [(1-u)^(-(q-1)/(2-q)) - 1], strictly increasing in u.
inline double sample_citation(double u, double q, double T) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("sample_citation: requires u in (0,1)");
    if (!(q > 1.0 && q < 2.0))
        throw std::domain_error("sample_citation: requires 1 < q < 2");
    if (!(T > 0.0)) throw std::domain_error("sample_citation: requires T > 0");
    const double expo = -(q - 1.0) / (2.0 - q);
    return T / (q - 1.0) * std::expm1(expo * std::log1p(-u));
}

/// CDF matching sample_citation; used by tests and the sampler validation.
inline double citation_cdf(double c, double q, double T) {
    if (c <= 0.0) return 0.0;
    return -std::expm1(-(2.0 - q) / (q - 1.0) * std::log1p((q - 1.0) * c / T));
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// i-th uniform draw of the stream identified by seed, strictly inside (0,1).
inline double uniform_at(std::uint64_t seed, std::uint64_t i) {
    const std::uint64_t z =
        splitmix64(seed + (i + 1) * 0x9e3779b97f4a7c15ULL);
    return (double(z >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace detail

inline CitationHistogram generate_deterministic(const SyntheticSpec& spec) {
    spec.validate();
    if (spec.mode != SynthMode::deterministic)
        throw DataError("generate_deterministic: spec mode mismatch");
    CitationHistogram h;
    h.entity = spec.entity;
    std::ostringstream note;
    note << "deterministic q=" << spec.q_true << " T=" << spec.T_true
         << " anchor=" << spec.anchor_value << "@" << spec.anchor_c;
    h.source_note = note.str();
    for (std::int64_t c = spec.anchor_c; c <= spec.c_max; ++c) {
        const double v = double(spec.anchor_value) *
                         q_exp(-double(c - spec.anchor_c) / spec.T_true, spec.q_true);
        const std::int64_t n = std::llround(v);
        if (n <= 0) break;  // model is monotone; later bins round to 0 too
        h.counts.emplace(c, n);
    }
    return h;
}

inline CitationHistogram generate_sampled(const SyntheticSpec& spec) {
    spec.validate();
    if (spec.mode != SynthMode::sampled)
        throw DataError("generate_sampled: spec mode mismatch");
    CitationHistogram h;
    h.entity = spec.entity;
    std::ostringstream note;
    note << "sampled q=" << spec.q_true << " T=" << spec.T_true
         << " n=" << spec.n_samples << " seed=" << spec.seed;
    h.source_note = note.str();
    const double span = double(spec.c_max - spec.anchor_c);
    for (std::int64_t i = 0; i < spec.n_samples; ++i) {
        const double u = detail::uniform_at(spec.seed, std::uint64_t(i));
        const double x = sample_citation(u, spec.q_true, spec.T_true);
        if (!(x < span + 1.0)) continue;  // beyond c_max (also guards inf)
        const std::int64_t c = spec.anchor_c + std::int64_t(std::floor(x));
        if (c > spec.c_max) continue;
        ++h.counts[c];
    }
    if (h.counts.empty())
        throw DataError(spec.entity + ": all sampled draws fell beyond c_max");
    return h;
}

inline CitationHistogram generate(const SyntheticSpec& spec) {
    return spec.mode == SynthMode::deterministic ? generate_deterministic(spec)
                                                 : generate_sampled(spec);
}

inline nlohmann::json spec_to_json(const SyntheticSpec& spec) {
    return nlohmann::json{
        {"entity", spec.entity},
        {"q_true", spec.q_true},
        {"T_true", spec.T_true},
        {"anchor_value", spec.anchor_value},
        {"anchor_c", spec.anchor_c},
        {"c_max", spec.c_max},
        {"mode", spec.mode == SynthMode::deterministic ? "deterministic" : "sampled"},
        {"n_samples", spec.n_samples},
        {"seed", spec.seed}};
}

inline SyntheticSpec spec_from_json(const nlohmann::json& j) {
    SyntheticSpec spec;
    try {
        if (j.contains("entity")) spec.entity = j.at("entity").get<std::string>();
        spec.q_true = j.at("q_true").get<double>();
        spec.T_true = j.at("T_true").get<double>();
        if (j.contains("anchor_value"))
            spec.anchor_value = j.at("anchor_value").get<std::int64_t>();
        if (j.contains("anchor_c"))
            spec.anchor_c = j.at("anchor_c").get<std::int64_t>();
        spec.c_max = j.at("c_max").get<std::int64_t>();
        const std::string mode = j.value("mode", "deterministic");
        if (mode == "deterministic") {
            spec.mode = SynthMode::deterministic;
        } else if (mode == "sampled") {
            spec.mode = SynthMode::sampled;
        } else {
            throw DataError("SyntheticSpec: unknown mode '" + mode + "'");
        }
        if (j.contains("n_samples"))
            spec.n_samples = j.at("n_samples").get<std::int64_t>();
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("SyntheticSpec JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

}  // namespace qcite
