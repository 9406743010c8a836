#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lpball/pnorm.hpp"
#include "lpball/sampling.hpp"

// Support and radial functions of the rescaled bodies N^{1/p-1/2}(B_p^N | E)
// and N^{1/p-1/2}(B_p^N ∩ E), written in the coordinates of the frame V whose
// rows span E, plus the transforms and quadratures built on them.
namespace lpball::geometry {

/// Maps a unit direction of R^m to a function value. Used by the local
/// refinement steps; an empty evaluator means grid values only.
using DirectionFunction = std::function<double(std::span<const double>)>;

struct SupportProfile {
  SphereGrid grid;
  std::vector<double> values;
  DirectionFunction evaluate;
};

struct RadialProfile {
  SphereGrid grid;
  std::vector<double> values;
  DirectionFunction evaluate;
};

/// h(u) = N^{1/2-1/q} ‖V^T u‖_q, q the conjugate of p. Requires p in (1, inf].
double projection_support(const StiefelFrame& v, PNorm p, std::span<const double> u);

/// rho(u) = N^{1/p-1/2} / ‖V^T u‖_p. Requires p in [1, inf).
double section_radial(const StiefelFrame& v, PNorm p, std::span<const double> u);

SupportProfile projection_support_profile(const StiefelFrame& v, PNorm p, const SphereGrid& grid);
RadialProfile section_radial_profile(const StiefelFrame& v, PNorm p, const SphereGrid& grid);

/// rho(x) = inf_{<u,x> > 0} h(u) / <x,u>: minimum over the grid hemisphere,
/// then a local refinement around the minimiser if the profile has an
/// evaluator. Never below the true radial value.
double radial_from_support(const SupportProfile& profile, std::span<const double> x);

/// The radial function of the body on the profile's own grid.
RadialProfile radial_profile_from_support(const SupportProfile& profile);

/// h(u) = max_v rho(v) <v,u>: grid maximum plus local refinement. Never
/// above the true support value.
double support_from_radial(const RadialProfile& profile, std::span<const double> u);

SupportProfile support_profile_from_radial(const RadialProfile& profile);

/// kappa_m * sum_j w_j rho_j^m.
double body_volume_from_radial(const RadialProfile& profile);

/// vol_m of the rescaled projection or section. Sections integrate the
/// radial function directly; projections go support -> radial -> volume.
double scaled_body_volume(const StiefelFrame& v, PNorm p, BodyMode mode, const SphereGrid& grid);

/// sup_u |h(u) - r|: grid maximum, refined around the arg max when an
/// evaluator is present.
double hausdorff_to_ball(const SupportProfile& profile, double r);

/// Support profile of the rescaled body of either mode. For sections the
/// support is obtained from the radial function.
SupportProfile body_support_profile(const StiefelFrame& v, PNorm p, BodyMode mode, const SphereGrid& grid);

/// Typical angular distance between neighbouring grid directions.
double grid_spacing(const SphereGrid& grid);

/// Local optimisation of f on S^{m-1} starting at `start` (m = 2: golden
/// section on the angle within +-step, to 1e-6 rad; m = 3: 12 rounds of a
/// tangent-plane pattern search with halving steps). Returns the best value
/// found, which is never worse than f(start). With `maximize` false the
/// minimum is sought.
double refine_on_sphere(std::span<const double> start, double step, const DirectionFunction& f, bool maximize);

}  // namespace lpball::geometry
