// Umbrella header.
#pragma once

#include "lattice.hpp"
#include "system.hpp"
#include "operators.hpp"
#include "polygon.hpp"
#include "counting.hpp"
#include "atomic.hpp"
#include "series.hpp"
#include "solver.hpp"
#include "io.hpp"
#include "render.hpp"
