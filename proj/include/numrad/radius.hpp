// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include "numrad/cheb_radius.hpp"
#include "numrad/levelset.hpp"
#include "numrad/oracle_grid.hpp"
#include "numrad/sdp.hpp"

namespace numrad
{

/// Per-method settings used by compute_radius. `tol` overrides the method's
/// own tolerance: relative level gap for LSO, coefficient decay for CHEB,
/// duality gap for SDP and golden-section width for GRID.
struct RadiusOptions
{
  std::optional<double> tol;
  LsoOptions lso;
  ChebRadiusOptions cheb;
  SdpOptions sdp;
  GridOptions grid;
};

inline RadiusResult compute_radius(const Matrix &a, Method method, RadiusOptions opts = {})
{
  switch (method)
  {
  case Method::LSO:
    if (opts.tol)
    {
      opts.lso.tol_rel = *opts.tol;
    }
    return compute_radius_lso(a, opts.lso);
  case Method::CHEB:
    if (opts.tol)
    {
      opts.cheb.interp.tol = *opts.tol;
    }
    return compute_radius_cheb(a, opts.cheb);
  case Method::SDP:
    if (opts.tol)
    {
      opts.sdp.tol = *opts.tol;
    }
    return compute_radius_sdp(a, opts.sdp);
  case Method::GRID:
    if (opts.tol)
    {
      opts.grid.refine_tol = *opts.tol;
    }
    return compute_radius_grid(a, opts.grid);
  }
  throw Error("unknown method");
}

}  // namespace numrad
