#pragma once

#include "superpluecker/grassmann.hpp"
#include "superpluecker/rational.hpp"
#include "superpluecker/sampling.hpp"

namespace superpluecker {

/// Sides a, b, c, d and diagonal e of a quadrilateral (even lambda-lengths)
/// with odd face invariants sigma, theta.
struct PtolemyQuad {
  GrassmannElement a, b, c, d, e;
  GrassmannElement sigma, theta;
};

struct FlipResult {
  GrassmannElement f;  ///< diagonal after the flip
  GrassmannElement sigma_prime, theta_prime;
};

/// Z = ac / bd.
GrassmannElement z_of(const PtolemyQuad& q);

/// Super Ptolemy flip:
///   e f = (ac + bd)(1 + sigma theta sqrt(Z) / (1 + Z)),
///   sigma' = (sigma - theta sqrt(Z)) / sqrt(1 + Z),
///   theta' = (theta + sigma sqrt(Z)) / sqrt(1 + Z).
/// With sigma = theta = 0 no square root is taken (classical Ptolemy).
FlipResult ptolemy_flip(const PtolemyQuad& q);

/// Power of the nilpotent factor (1 + sigma theta sqrt(Z)/(1+Z)) in the
/// rescaled diagonals.
enum class BarExponent {
  MinusHalf,  ///< the rescaling for which ebar * fbar = ac + bd
  PlusHalf,   ///< literal +1/2; gives ebar * fbar = (ac + bd)(1 + x)^2
};

struct BarPair {
  GrassmannElement e_bar, f_bar;
};

/// ebar = e (1 + x)^p, fbar = f (1 + x')^p with x = sigma theta sqrt(Z)/(1+Z)
/// and x' the same with the flipped odd variables.
BarPair bar_transform(const GrassmannElement& e, const GrassmannElement& f,
                      const GrassmannElement& sigma, const GrassmannElement& theta,
                      const GrassmannElement& sigma_prime, const GrassmannElement& theta_prime,
                      const GrassmannElement& z, BarExponent p = BarExponent::MinusHalf);

struct SampledQuad {
  Rational m;  ///< parameter of the Pythagorean triple (m^2-1, 2m, m^2+1)
  PtolemyQuad quad;
};

/// Quadrilateral with body(Z) = t^2, t = (m^2 - 1)/(2m), so that both sqrt(Z)
/// and sqrt(1 + Z) exist. m is drawn from small rationals other than 0, +-1.
SampledQuad sample_quad(Rng& rng, unsigned generators, const SampleProfile& profile);
/// Same with a caller-chosen m; throws DomainError for m in {0, 1, -1}.
SampledQuad sample_quad(Rng& rng, unsigned generators, const SampleProfile& profile,
                        const Rational& m);

}  // namespace superpluecker
