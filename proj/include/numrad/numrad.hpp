// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "numrad/bench.hpp"
#include "numrad/cheb_radius.hpp"
#include "numrad/chebyshev.hpp"
#include "numrad/error.hpp"
#include "numrad/levelset.hpp"
#include "numrad/matrix.hpp"
#include "numrad/matrix_market.hpp"
#include "numrad/oracle_grid.hpp"
#include "numrad/parallel.hpp"
#include "numrad/radius.hpp"
#include "numrad/random.hpp"
#include "numrad/result.hpp"
#include "numrad/sdp.hpp"
#include "numrad/spectral.hpp"
