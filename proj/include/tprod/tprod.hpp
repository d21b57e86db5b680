#pragma once

// Umbrella header for the t-product tensor algebra library.

#include "tprod/errors.hpp"
#include "tprod/expm.hpp"
#include "tprod/io.hpp"
#include "tprod/matching.hpp"
#include "tprod/ode.hpp"
#include "tprod/perturbation.hpp"
#include "tprod/pseudospectra.hpp"
#include "tprod/rng.hpp"
#include "tprod/spectral.hpp"
#include "tprod/tensor.hpp"
#include "tprod/transform.hpp"
