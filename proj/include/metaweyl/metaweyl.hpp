#pragma once

// Umbrella header for the whole library.

#include "metaweyl/error.hpp"
#include "metaweyl/matcore.hpp"
#include "metaweyl/random.hpp"
#include "metaweyl/sympgroup.hpp"
#include "metaweyl/quadrature.hpp"
#include "metaweyl/gaussint.hpp"
#include "metaweyl/heisenberg.hpp"
#include "metaweyl/jacobi.hpp"
#include "metaweyl/polynomial.hpp"
#include "metaweyl/metaplectic.hpp"
#include "metaweyl/weylsymbols.hpp"
#include "metaweyl/moyal.hpp"
#include "metaweyl/suites.hpp"
