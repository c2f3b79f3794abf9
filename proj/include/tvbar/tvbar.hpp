#pragma once

#include "tvbar/barcode.hpp"
#include "tvbar/certify.hpp"
#include "tvbar/convolve.hpp"
#include "tvbar/energy.hpp"
#include "tvbar/errors.hpp"
#include "tvbar/io.hpp"
#include "tvbar/kernel.hpp"
#include "tvbar/oracle.hpp"
#include "tvbar/poly.hpp"
#include "tvbar/quadrature.hpp"
#include "tvbar/rng.hpp"
#include "tvbar/selfcheck.hpp"
#include "tvbar/signal.hpp"
#include "tvbar/solver.hpp"
#include "tvbar/svg.hpp"
#include "tvbar/version.hpp"
