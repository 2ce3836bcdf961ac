#ifndef POLYRIESZ_POLYRIESZ_HPP
#define POLYRIESZ_POLYRIESZ_HPP

#include "polyriesz/energy.hpp"
#include "polyriesz/errors.hpp"
#include "polyriesz/geometry.hpp"
#include "polyriesz/io.hpp"
#include "polyriesz/kernel.hpp"
#include "polyriesz/optimize.hpp"
#include "polyriesz/parallel.hpp"
#include "polyriesz/potential.hpp"
#include "polyriesz/quadrature.hpp"
#include "polyriesz/stationarity.hpp"
#include "polyriesz/symm_flow.hpp"
#include "polyriesz/variation.hpp"

#endif
