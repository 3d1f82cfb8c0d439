#pragma once

#include <atomic>

namespace dw::tuning {

// Runtime tolerance overrides (CLI --tol-root / --tol-quad).
inline std::atomic<double> root_tol{1e-12};
inline std::atomic<double> quad_tol{1e-12};

}  // namespace dw::tuning
