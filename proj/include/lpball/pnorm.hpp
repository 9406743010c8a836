#pragma once

#include <string>
#include <string_view>

namespace lpball {

/// The exponent p in [1, inf] of an l_p norm. Infinity is its own state and
/// never enters arithmetic: every formula is written in whichever of p or
/// its Hoelder conjugate q is finite for the body at hand.
class PNorm {
 public:
  /// Throws DomainError unless p >= 1 and finite.
  static PNorm finite(double p);
  static PNorm infinity() { return PNorm(0.0, true); }
  /// Accepts a decimal number or the literal "inf".
  static PNorm parse(std::string_view text);

  [[nodiscard]] bool is_infinite() const { return infinite_; }
  /// Throws DomainError for p = inf.
  [[nodiscard]] double value() const;
  /// 1/p + 1/q = 1, with conjugate(1) = inf and conjugate(inf) = 1.
  [[nodiscard]] PNorm conjugate() const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const PNorm&, const PNorm&) = default;

 private:
  PNorm(double p, bool infinite) : p_(p), infinite_(infinite) {}
  double p_;
  bool infinite_;
};

enum class BodyMode { projection, section };

BodyMode parse_body_mode(std::string_view text);
std::string_view to_string(BodyMode mode);

/// A validated (mode, p) pair. Projections need p in (1, inf], sections
/// p in [1, inf); anything else throws ModeViolation on construction.
class BodySpec {
 public:
  static BodySpec make(BodyMode mode, PNorm p);

  [[nodiscard]] BodyMode mode() const { return mode_; }
  [[nodiscard]] PNorm p() const { return p_; }
  /// The finite exponent that the body's support (projection: q) or radial
  /// (section: p) function is built from.
  [[nodiscard]] double exponent() const { return exponent_; }
  /// True when p = 2, where every fluctuation constant degenerates.
  [[nodiscard]] bool is_euclidean() const { return exponent_ == 2.0; }

 private:
  BodySpec(BodyMode mode, PNorm p, double exponent) : mode_(mode), p_(p), exponent_(exponent) {}
  BodyMode mode_;
  PNorm p_;
  double exponent_;
};

}  // namespace lpball
