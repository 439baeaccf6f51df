#pragma once

// Umbrella header: truncation-error bounds for Hermite-series approximations
// of band-limited functions, with the machinery needed to validate them.

#include "hermbound/bandlimit.hpp"
#include "hermbound/bound.hpp"
#include "hermbound/errors.hpp"
#include "hermbound/faddeeva.hpp"
#include "hermbound/functions.hpp"
#include "hermbound/hermite.hpp"
#include "hermbound/quadrature.hpp"
#include "hermbound/sansone.hpp"
#include "hermbound/serialize.hpp"
#include "hermbound/series.hpp"
