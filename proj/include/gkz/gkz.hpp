#pragma once

#include "gkz/arith.hpp"
#include "gkz/family.hpp"
#include "gkz/hull.hpp"
#include "gkz/lattice.hpp"
#include "gkz/matrix.hpp"
#include "gkz/polytope.hpp"
#include "gkz/ranking.hpp"
#include "gkz/semigroup.hpp"
