#include "lpball/pnorm.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "lpball/errors.hpp"

namespace lpball {

PNorm PNorm::finite(double p) {
  if (!std::isfinite(p) || !(p >= 1.0)) {
    throw DomainError("p must be a finite number >= 1 (use PNorm::infinity() for inf)");
  }
  return PNorm(p, false);
}

PNorm PNorm::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw DomainError("cannot parse p from '" + std::string(text) + "'");
  }
  return finite(value);
}

double PNorm::value() const {
  if (infinite_) throw DomainError("p = inf has no finite value");
  return p_;
}

PNorm PNorm::conjugate() const {
  if (infinite_) return PNorm(1.0, false);
  if (p_ == 1.0) return infinity();
  return PNorm(p_ / (p_ - 1.0), false);
}

std::string PNorm::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.15g", p_);
  return buf;
}

BodyMode parse_body_mode(std::string_view text) {
  if (text == "projection" || text == "proj") return BodyMode::projection;
  if (text == "section" || text == "sec") return BodyMode::section;
  throw DomainError("unknown body mode '" + std::string(text) + "'");
}

std::string_view to_string(BodyMode mode) {
  return mode == BodyMode::projection ? "projection" : "section";
}

BodySpec BodySpec::make(BodyMode mode, PNorm p) {
  if (mode == BodyMode::projection) {
    if (!p.is_infinite() && p.value() == 1.0) {
      throw ModeViolation("projections require p in (1, inf]; got p = 1");
    }
    return BodySpec(mode, p, p.conjugate().value());
  }
  if (p.is_infinite()) throw ModeViolation("sections require p in [1, inf); got p = inf");
  return BodySpec(mode, p, p.value());
}

}  // namespace lpball
