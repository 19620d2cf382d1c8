#pragma once

#include "knotshift/alexander.hpp"
#include "knotshift/coverings.hpp"
#include "knotshift/errors.hpp"
#include "knotshift/knot.hpp"
#include "knotshift/matrix.hpp"
#include "knotshift/polynomial.hpp"
#include "knotshift/ring.hpp"
#include "knotshift/shift_system.hpp"
#include "knotshift/spectra.hpp"
#include "knotshift/submodule.hpp"
