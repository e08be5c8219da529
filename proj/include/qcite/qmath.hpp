#pragma once

// Deformed exponential/logarithm kernel of nonextensive statistics, plus the
// generalized entropy and its composition rule. Everything here is pure and
// stateless.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qcite/errors.hpp"

namespace qcite {

/// Below this distance from q = 1 the exact exponential/logarithm branch is
/// used; the deformed forms lose all precision to cancellation as q -> 1.
inline constexpr double q_limit_epsilon = 1e-9;

/// Deformed exponential [1 + (1-q)x]^(1/(1-q)).
///
/// For q < 1 the standard cutoff convention applies: a non-positive base
/// yields exactly 0. For q > 1 a non-positive base has no real value and
/// throws, so fitting code fails loudly instead of propagating NaN.
inline double q_exp(double x, double q) {
    if (std::isnan(x) || std::isnan(q))
        throw std::domain_error("q_exp: NaN input");
    const double om = 1.0 - q;
    if (std::fabs(om) < q_limit_epsilon) return std::exp(x);
    const double base = 1.0 + om * x;
    if (base <= 0.0) {
        if (q < 1.0) return 0.0;
        throw std::domain_error("q_exp: 1 + (1-q)x <= 0 with q > 1");
    }
    return std::exp(std::log1p(om * x) / om);
}

/// Deformed logarithm (y^(1-q) - 1)/(1-q); inverse of q_exp for y > 0.
inline double q_log(double y, double q) {
    if (std::isnan(y) || std::isnan(q))
        throw std::domain_error("q_log: NaN input");
    if (y <= 0.0) throw std::domain_error("q_log: requires y > 0");
    const double om = 1.0 - q;
    if (std::fabs(om) < q_limit_epsilon) return std::log(y);
    return std::expm1(om * std::log(y)) / om;
}

/// Discrete probability vector over W configurations. Entries must be
/// non-negative and sum to 1 within 1e-12.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {
        if (p_.empty())
            throw DataError("ProbabilityVector: needs at least one entry");
        double sum = 0.0;
        for (double v : p_) {
            if (!(v >= 0.0))
                throw DataError("ProbabilityVector: negative or NaN entry");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw DataError("ProbabilityVector: entries do not sum to 1");
    }

    static ProbabilityVector equiprobable(std::size_t w) {
        return ProbabilityVector(std::vector<double>(w, 1.0 / double(w)));
    }

    /// Joint distribution of two independent systems.
    static ProbabilityVector outer_product(const ProbabilityVector& a,
                                           const ProbabilityVector& b) {
        std::vector<double> joint;
        joint.reserve(a.size() * b.size());
        for (double pa : a.p_)
            for (double pb : b.p_) joint.push_back(pa * pb);
        return ProbabilityVector(std::move(joint));
    }

    std::size_t size() const noexcept { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    auto begin() const noexcept { return p_.begin(); }
    auto end() const noexcept { return p_.end(); }

private:
    std::vector<double> p_;
};

/// Generalized entropy k(1 - sum p_i^q)/(q - 1); the q -> 1 limit is the
/// Boltzmann-Gibbs form -k sum p_i ln p_i with 0 ln 0 := 0. Exact-zero
/// entries are skipped (0^q = 0 for q > 0); q <= 0 with zero entries is a
/// domain error because 0^q is then undefined.
inline double tsallis_entropy(const ProbabilityVector& p, double q, double k) {
    if (!(k > 0.0)) throw std::domain_error("tsallis_entropy: requires k > 0");
    if (std::fabs(q - 1.0) < q_limit_epsilon) {
        double s = 0.0;
        for (double v : p)
            if (v > 0.0) s += v * std::log(v);
        return -k * s;
    }
    double sum = 0.0;
    for (double v : p) {
        if (v == 0.0) {
            if (q <= 0.0)
                throw std::domain_error("tsallis_entropy: 0^q undefined for q <= 0");
            continue;
        }
        sum += std::pow(v, q);
    }
    return k * (1.0 - sum) / (q - 1.0);
}

/// Joint entropy predicted for independent systems:
/// S/k = sa/k + sb/k + (1-q)(sa/k)(sb/k).
inline double entropy_composition(double sa, double sb, double q, double k) {
    if (!(k > 0.0))
        throw std::domain_error("entropy_composition: requires k > 0");
    const double a = sa / k;
    const double b = sb / k;
    return k * (a + b + (1.0 - q) * a * b);
}

/// Entropy of the equiprobable distribution, the extremum over all
/// probability vectors of size w.
inline double max_tsallis_entropy(std::size_t w, double q, double k) {
    if (!(k > 0.0) || w == 0)
        throw std::domain_error("max_tsallis_entropy: requires k > 0, w >= 1");
    if (std::fabs(q - 1.0) < q_limit_epsilon) return k * std::log(double(w));
    return k * (std::pow(double(w), 1.0 - q) - 1.0) / (1.0 - q);
}

}  // namespace qcite
