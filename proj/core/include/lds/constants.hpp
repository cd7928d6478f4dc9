#pragma once

namespace lds {

// CODATA 2018 / SI-2019 exact values.
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double boltzmann_k = 1.380649e-23;    // J / K

}  // namespace lds
