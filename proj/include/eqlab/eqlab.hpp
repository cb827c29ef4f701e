#pragma once

#include "eqlab/arith.hpp"
#include "eqlab/corr.hpp"
#include "eqlab/eisen.hpp"
#include "eqlab/errors.hpp"
#include "eqlab/experiment.hpp"
#include "eqlab/golden.hpp"
#include "eqlab/scs.hpp"
#include "eqlab/specfun.hpp"
#include "eqlab/testfn.hpp"
