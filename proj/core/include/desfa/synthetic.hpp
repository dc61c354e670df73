#pragma once

#include <array>
#include <cstdint>

#include "desfa/dataset.hpp"

namespace desfa {

// Two spherical Gaussians in the plane. Class tokens are "0" and "1";
// rows are laid out class 0 first, then class 1.
Dataset generate_two_gaussians(std::size_t n_per_class,
                               std::array<double, 2> mu0,
                               std::array<double, 2> mu1,
                               double variance,
                               std::uint64_t seed);

// Banana-shaped pair: points on a radius-5 half arc with Gaussian noise,
// the second class rotated by pi and shifted by (+2.5, +2.5).
// n_total is split as evenly as possible; class 0 gets the extra point.
Dataset generate_banana(std::size_t n_total, double noise_std, std::uint64_t seed);

// Lithuanian-style pair: two opposing parabolic arcs with Gaussian noise.
Dataset generate_lithuanian(std::size_t n_total, std::uint64_t seed);

}  // namespace desfa
