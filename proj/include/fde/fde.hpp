#pragma once

#include "fde/error.hpp"
#include "fde/expr.hpp"
#include "fde/findiff.hpp"
#include "fde/grid.hpp"
#include "fde/harness.hpp"
#include "fde/kernels.hpp"
#include "fde/poly.hpp"
#include "fde/problem.hpp"
#include "fde/problems.hpp"
#include "fde/quadrature.hpp"
#include "fde/reference.hpp"
#include "fde/solver.hpp"
