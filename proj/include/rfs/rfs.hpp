#pragma once

// Umbrella header: spectral densities of fractional Gaussian noise, random
// Fourier series with dependent Gaussian coefficients, Monte Carlo
// sup-oscillation estimation, and the boundedness criteria that tie them
// together.

#include "rfs/analysis.hpp"
#include "rfs/coefficients.hpp"
#include "rfs/criteria.hpp"
#include "rfs/errors.hpp"
#include "rfs/fft.hpp"
#include "rfs/fgn.hpp"
#include "rfs/measure.hpp"
#include "rfs/quadrature.hpp"
#include "rfs/rng.hpp"
#include "rfs/sampling.hpp"
#include "rfs/series.hpp"
#include "rfs/special.hpp"
#include "rfs/version.hpp"
