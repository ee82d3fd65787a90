#pragma once

#include "vertexcone/binpack.hpp"
#include "vertexcone/cone_group.hpp"
#include "vertexcone/error.hpp"
#include "vertexcone/hull.hpp"
#include "vertexcone/io.hpp"
#include "vertexcone/knapsack.hpp"
#include "vertexcone/level_shift.hpp"
#include "vertexcone/linalg.hpp"
#include "vertexcone/lower_bound.hpp"
#include "vertexcone/lp.hpp"
#include "vertexcone/numeric.hpp"
#include "vertexcone/oracle.hpp"
#include "vertexcone/weights.hpp"
