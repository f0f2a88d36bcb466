#pragma once

#include "arith.hpp"
#include "asymptotics.hpp"
#include "combinatorics.hpp"
#include "congruence.hpp"
#include "counting.hpp"
#include "enumeration.hpp"
#include "fixed_real.hpp"
#include "io.hpp"
#include "polybasis.hpp"
#include "series.hpp"
#include "trees.hpp"
