#pragma once

#include "htr/core.hpp"
#include "htr/measures.hpp"
#include "htr/series.hpp"
#include "htr/kernels.hpp"
#include "htr/regions.hpp"
#include "htr/quadrature.hpp"
#include "htr/harmonic.hpp"
#include "htr/geometry.hpp"
#include "htr/parallel.hpp"
#include "htr/certify.hpp"
#include "htr/search.hpp"
#include "htr/json_io.hpp"
