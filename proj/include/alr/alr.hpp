#pragma once

// Umbrella header for the library (the batch front end lives in alr/cli.hpp).

#include "alr/dichotomy.hpp"
#include "alr/error.hpp"
#include "alr/fields.hpp"
#include "alr/np_spectrum.hpp"
#include "alr/resonance.hpp"
#include "alr/scaled_complex.hpp"
#include "alr/scatter.hpp"
#include "alr/slope.hpp"
#include "alr/specfun.hpp"
#include "alr/sweep.hpp"
