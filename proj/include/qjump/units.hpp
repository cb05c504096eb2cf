#pragma once

// Internal units: angular frequency in rad/us, time in us.
// User-facing units: ordinary frequency in MHz (omega / 2pi), time in ns.

namespace qjump {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

constexpr double mhz_to_angular(double mhz) { return kTwoPi * mhz; }
constexpr double angular_to_mhz(double omega) { return omega / kTwoPi; }
constexpr double ns_to_us(double ns) { return ns * 1e-3; }
constexpr double us_to_ns(double us) { return us * 1e3; }

}  // namespace qjump
