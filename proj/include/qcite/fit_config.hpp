#pragma once

#include <cmath>
#include <cstdint>

#include "qcite/errors.hpp"

namespace qcite {

/// Search grid for the entropic index q.
struct QGrid {
    double min = 1.20;
    double max = 1.50;
    double step = 0.001;

    int size() const {
        return static_cast<int>(std::floor((max - min) / step + 1e-9)) + 1;
    }
    double at(int i) const { return min + i * step; }
};

/// All tunable knobs of the fitting protocol.
struct FitConfig {
    /// Citation count whose observed N anchors the model.
    std::int64_t anchor_c = 2;
    QGrid q_grid;
    /// Decades of c (from anchor_c up) used when optimizing q.
    double q_window_decades = 2.0;
    int min_fit_points = 10;
    /// Extrapolate the model to c = 1 and include that point in R^2.
    bool include_c1_in_r2 = true;

    double q_window_max_c() const {
        return double(anchor_c) * std::pow(10.0, q_window_decades);
    }

    void validate() const {
        if (!(anchor_c >= 1)) throw DataError("FitConfig: anchor_c must be >= 1");
        if (!(q_grid.min > 1.0)) throw DataError("FitConfig: q_grid.min must be > 1");
        if (!(q_grid.max < 2.0)) throw DataError("FitConfig: q_grid.max must be < 2");
        if (!(q_grid.min <= q_grid.max))
            throw DataError("FitConfig: q_grid.min must be <= q_grid.max");
        if (!(q_grid.step > 0.0)) throw DataError("FitConfig: q_grid.step must be > 0");
        if (!(q_window_decades > 0.0))
            throw DataError("FitConfig: q_window_decades must be > 0");
        if (!(min_fit_points >= 2))
            throw DataError("FitConfig: min_fit_points must be >= 2");
    }
};

}  // namespace qcite
