#pragma once

#include "arcs.hpp"
#include "arith.hpp"
#include "constants.hpp"
#include "counting.hpp"
#include "errors.hpp"
#include "exponents.hpp"
#include "expsums.hpp"
#include "moments.hpp"
#include "rootfind.hpp"
#include "singular.hpp"
#include "weights.hpp"
