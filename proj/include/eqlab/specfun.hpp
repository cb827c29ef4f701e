#pragma once

#include "eqlab/specfun/bessel_j0.hpp"
#include "eqlab/specfun/bessel_k.hpp"
#include "eqlab/specfun/constants.hpp"
#include "eqlab/specfun/gamma.hpp"
#include "eqlab/specfun/zeta.hpp"
