#pragma once

#include "football/error.hpp"
#include "football/geometry.hpp"
#include "football/limits.hpp"
#include "football/metric.hpp"
#include "football/quadrature.hpp"
#include "football/roots.hpp"
#include "football/soliton.hpp"
#include "football/special.hpp"
