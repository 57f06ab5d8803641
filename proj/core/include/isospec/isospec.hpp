#pragma once

#include "isospec/error.hpp"
#include "isospec/grid.hpp"
#include "isospec/isospectral.hpp"
#include "isospec/riccati.hpp"
#include "isospec/spectral.hpp"
#include "isospec/susy.hpp"
