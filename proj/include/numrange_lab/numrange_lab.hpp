#pragma once

#include "numrange_lab/eig.hpp"
#include "numrange_lab/ensembles.hpp"
#include "numrange_lab/figures.hpp"
#include "numrange_lab/geometry.hpp"
#include "numrange_lab/io.hpp"
#include "numrange_lab/parallel.hpp"
#include "numrange_lab/poly.hpp"
#include "numrange_lab/rng.hpp"
#include "numrange_lab/support.hpp"
#include "numrange_lab/theory.hpp"
#include "numrange_lab/types.hpp"
#include "numrange_lab/validation.hpp"
