#pragma once

#include "fractile/census.hpp"
#include "fractile/checks.hpp"
#include "fractile/config.hpp"
#include "fractile/equivalence.hpp"
#include "fractile/errors.hpp"
#include "fractile/expand.hpp"
#include "fractile/grid.hpp"
#include "fractile/render.hpp"
#include "fractile/transform.hpp"
