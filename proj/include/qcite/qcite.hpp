#pragma once

// Convenience umbrella header.

#include "qcite/errors.hpp"
#include "qcite/fit_config.hpp"
#include "qcite/fitter.hpp"
#include "qcite/histogram.hpp"
#include "qcite/io.hpp"
#include "qcite/plot.hpp"
#include "qcite/qmath.hpp"
#include "qcite/ranking.hpp"
#include "qcite/report.hpp"
#include "qcite/synth.hpp"
