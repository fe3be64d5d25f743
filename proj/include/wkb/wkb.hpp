#pragma once

// Convenience include for the whole library.

#include "wkb/common.hpp"
#include "wkb/polynomial.hpp"
#include "wkb/erfi.hpp"
#include "wkb/quadrature.hpp"
#include "wkb/hermite.hpp"
#include "wkb/bessel.hpp"
#include "wkb/legendre.hpp"
#include "wkb/elliptic.hpp"
#include "wkb/rational.hpp"
#include "wkb/family.hpp"
#include "wkb/galois.hpp"
#include "wkb/variational.hpp"
#include "wkb/oracle.hpp"
#include "wkb/propagator.hpp"
#include "wkb/run_config.hpp"
