#pragma once

#include "steklov/admissibility.hpp"
#include "steklov/asymptotics.hpp"
#include "steklov/chebyshev.hpp"
#include "steklov/config.hpp"
#include "steklov/dn_map.hpp"
#include "steklov/errors.hpp"
#include "steklov/expression.hpp"
#include "steklov/inverse.hpp"
#include "steklov/ode.hpp"
#include "steklov/scaled_value.hpp"
#include "steklov/spectrum_io.hpp"
#include "steklov/sturm_liouville.hpp"
#include "steklov/transversal.hpp"
#include "steklov/warping.hpp"
