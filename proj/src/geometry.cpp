#include "lpball/geometry.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "lpball/closed_forms.hpp"
#include "lpball/errors.hpp"
#include "lpball/kernels.hpp"

namespace lpball::geometry {
namespace {

constexpr double kUnitTol = 1e-10;

double dot_small(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void check_direction(const StiefelFrame& v, std::span<const double> u) {
  if (u.size() != v.m()) throw DomainError("direction dimension does not match the frame");
  closed_forms::require_unit(u, "direction", kUnitTol);
}

// Fills values[j] = f(direction j), evaluating only one of each antipodal
// pair for even functions.
template <class F>
std::vector<double> even_profile_values(const SphereGrid& grid, F&& f) {
  const std::size_t count = grid.count();
  std::vector<double> values(count);
  const std::size_t half = grid.antipode_offset ? *grid.antipode_offset : count;
  for (std::size_t j = 0; j < half; ++j) values[j] = f(grid.direction(j));
  if (grid.antipode_offset) {
    for (std::size_t j = half; j < count; ++j) values[j] = values[(j + count - half) % count];
  }
  return values;
}

double golden_section_angle(std::span<const double> start, double step, const DirectionFunction& f, double sign) {
  const double c0 = start[0];
  const double s0 = start[1];
  auto g = [&](double t) {
    const double ct = std::cos(t);
    const double st = std::sin(t);
    const std::array<double, 2> u{c0 * ct - s0 * st, s0 * ct + c0 * st};
    return sign * f(u);
  };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = -step;
  double b = step;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = g(c);
  double fd = g(d);
  while (b - a > 1e-6) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = g(d);
    }
  }
  return std::min({g(0.0), fc, fd, g(0.5 * (a + b))});
}

using Vec3 = std::array<double, 3>;

Vec3 normalized(Vec3 x) {
  const double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  return {x[0] / n, x[1] / n, x[2] / n};
}

double pattern_search_sphere(std::span<const double> start, double step, const DirectionFunction& f, double sign) {
  Vec3 centre{start[0], start[1], start[2]};
  double best = sign * f(centre);
  double delta = step;
  for (int iter = 0; iter < 12; ++iter) {
    std::size_t axis = 0;
    for (std::size_t k = 1; k < 3; ++k)
      if (std::abs(centre[k]) < std::abs(centre[axis])) axis = k;
    Vec3 e1{0.0, 0.0, 0.0};
    e1[axis] = 1.0;
    for (std::size_t k = 0; k < 3; ++k) e1[k] -= centre[axis] * centre[k];
    e1 = normalized(e1);
    const Vec3 e2{centre[1] * e1[2] - centre[2] * e1[1], centre[2] * e1[0] - centre[0] * e1[2],
                  centre[0] * e1[1] - centre[1] * e1[0]};
    Vec3 next = centre;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b) {
        if (a == 0 && b == 0) continue;
        Vec3 trial;
        for (std::size_t k = 0; k < 3; ++k) trial[k] = centre[k] + delta * (a * e1[k] + b * e2[k]);
        trial = normalized(trial);
        const double val = sign * f(trial);
        if (val < best) {
          best = val;
          next = trial;
        }
      }
    centre = next;
    delta *= 0.5;
  }
  return best;
}

}  // namespace

double grid_spacing(const SphereGrid& grid) {
  switch (grid.m) {
    case 1: return 0.0;
    case 2: return 2.0 * std::numbers::pi / static_cast<double>(grid.count());
    default: return std::sqrt(4.0 * std::numbers::pi / static_cast<double>(grid.count()));
  }
}

double refine_on_sphere(std::span<const double> start, double step, const DirectionFunction& f, bool maximize) {
  const double sign = maximize ? -1.0 : 1.0;
  switch (start.size()) {
    case 1: return f(start);
    case 2: return sign * golden_section_angle(start, step, f, sign);
    case 3: return sign * pattern_search_sphere(start, step, f, sign);
    default: throw DomainError("refine_on_sphere: only m in {1, 2, 3} is supported");
  }
}

double projection_support(const StiefelFrame& v, PNorm p, std::span<const double> u) {
  const BodySpec body = BodySpec::make(BodyMode::projection, p);
  check_direction(v, u);
  const double q = body.exponent();
  const double n = static_cast<double>(v.n());
  const double sum = kernels::abs_power_sum(v.entries(), v.m(), v.n(), u, q);
  return std::pow(n, 0.5 - 1.0 / q) * std::pow(sum, 1.0 / q);
}

double section_radial(const StiefelFrame& v, PNorm p, std::span<const double> u) {
  const BodySpec body = BodySpec::make(BodyMode::section, p);
  check_direction(v, u);
  const double pe = body.exponent();
  const double n = static_cast<double>(v.n());
  const double sum = kernels::abs_power_sum(v.entries(), v.m(), v.n(), u, pe);
  return std::pow(n, 1.0 / pe - 0.5) * std::pow(sum, -1.0 / pe);
}

SupportProfile projection_support_profile(const StiefelFrame& v, PNorm p, const SphereGrid& grid) {
  if (grid.m != v.m()) throw DomainError("grid dimension does not match the frame");
  auto frame = std::make_shared<const StiefelFrame>(v);
  SupportProfile out{grid, even_profile_values(grid, [&](auto u) { return projection_support(v, p, u); }),
                     [frame, p](std::span<const double> u) { return projection_support(*frame, p, u); }};
  return out;
}

RadialProfile section_radial_profile(const StiefelFrame& v, PNorm p, const SphereGrid& grid) {
  if (grid.m != v.m()) throw DomainError("grid dimension does not match the frame");
  auto frame = std::make_shared<const StiefelFrame>(v);
  RadialProfile out{grid, even_profile_values(grid, [&](auto u) { return section_radial(v, p, u); }),
                    [frame, p](std::span<const double> u) { return section_radial(*frame, p, u); }};
  return out;
}

double radial_from_support(const SupportProfile& profile, std::span<const double> x) {
  const SphereGrid& grid = profile.grid;
  if (x.size() != grid.m) throw DomainError("radial_from_support: dimension mismatch");
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = grid.count();
  for (std::size_t j = 0; j < grid.count(); ++j) {
    const double c = dot_small(x, grid.direction(j));
    if (c <= 0.0) continue;
    const double val = profile.values[j] / c;
    if (val < best) {
      best = val;
      arg = j;
    }
  }
  if (arg == grid.count()) throw DomainError("radial_from_support: no grid direction in the open hemisphere of x");
  if (profile.evaluate && grid.m > 1) {
    const DirectionFunction ratio = [&](std::span<const double> u) {
      const double c = dot_small(x, u);
      return c > 0.0 ? profile.evaluate(u) / c : std::numeric_limits<double>::infinity();
    };
    best = std::min(best, refine_on_sphere(grid.direction(arg), grid_spacing(grid), ratio, false));
  }
  return best;
}

RadialProfile radial_profile_from_support(const SupportProfile& profile) {
  auto shared = std::make_shared<const SupportProfile>(profile);
  return RadialProfile{profile.grid,
                       even_profile_values(profile.grid, [&](auto x) { return radial_from_support(profile, x); }),
                       [shared](std::span<const double> x) { return radial_from_support(*shared, x); }};
}

double support_from_radial(const RadialProfile& profile, std::span<const double> u) {
  const SphereGrid& grid = profile.grid;
  if (u.size() != grid.m) throw DomainError("support_from_radial: dimension mismatch");
  double best = -std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t j = 0; j < grid.count(); ++j) {
    const double val = profile.values[j] * dot_small(u, grid.direction(j));
    if (val > best) {
      best = val;
      arg = j;
    }
  }
  if (profile.evaluate && grid.m > 1) {
    const DirectionFunction reach = [&](std::span<const double> v) { return profile.evaluate(v) * dot_small(u, v); };
    best = std::max(best, refine_on_sphere(grid.direction(arg), grid_spacing(grid), reach, true));
  }
  return best;
}

SupportProfile support_profile_from_radial(const RadialProfile& profile) {
  auto shared = std::make_shared<const RadialProfile>(profile);
  // Grid values use the grid maximum only; refinement is left to callers
  // that need it at a few directions (hausdorff_to_ball).
  RadialProfile coarse{profile.grid, profile.values, {}};
  return SupportProfile{profile.grid,
                        even_profile_values(profile.grid, [&](auto u) { return support_from_radial(coarse, u); }),
                        [shared](std::span<const double> u) { return support_from_radial(*shared, u); }};
}

double body_volume_from_radial(const RadialProfile& profile) {
  const SphereGrid& grid = profile.grid;
  double acc = 0.0;
  for (std::size_t j = 0; j < grid.count(); ++j) {
    const double r = profile.values[j];
    if (!(r > 0.0)) throw DomainError("body_volume_from_radial: radial values must be positive");
    double rm = 1.0;
    for (std::size_t k = 0; k < grid.m; ++k) rm *= r;
    acc += grid.weights[j] * rm;
  }
  return closed_forms::unit_ball_volume(static_cast<int>(grid.m)) * acc;
}

double scaled_body_volume(const StiefelFrame& v, PNorm p, BodyMode mode, const SphereGrid& grid) {
  BodySpec::make(mode, p);
  if (grid.m != v.m()) throw DomainError("grid dimension does not match the frame");
  if (mode == BodyMode::section) return body_volume_from_radial(section_radial_profile(v, p, grid));
  const SupportProfile support = projection_support_profile(v, p, grid);
  if (grid.m == 1) return body_volume_from_radial(RadialProfile{grid, support.values, {}});
  return body_volume_from_radial(radial_profile_from_support(support));
}

double hausdorff_to_ball(const SupportProfile& profile, double r) {
  if (!(r > 0.0)) throw DomainError("hausdorff_to_ball: radius must be positive");
  const SphereGrid& grid = profile.grid;
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < grid.count(); ++j) {
    const double d = std::abs(profile.values[j] - r);
    if (d > best) {
      best = d;
      arg = j;
    }
  }
  if (profile.evaluate && grid.m > 1) {
    const DirectionFunction gap = [&](std::span<const double> u) { return std::abs(profile.evaluate(u) - r); };
    best = std::max(best, refine_on_sphere(grid.direction(arg), grid_spacing(grid), gap, true));
  }
  return best;
}

SupportProfile body_support_profile(const StiefelFrame& v, PNorm p, BodyMode mode, const SphereGrid& grid) {
  if (mode == BodyMode::projection) return projection_support_profile(v, p, grid);
  return support_profile_from_radial(section_radial_profile(v, p, grid));
}

}  // namespace lpball::geometry
