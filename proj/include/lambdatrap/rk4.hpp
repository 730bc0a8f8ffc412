// Classical fixed-step Runge-Kutta over small fixed-size states.

#pragma once

#include <array>
#include <cstddef>

namespace lambdatrap {

template <std::size_t N>
using StateArray = std::array<double, N>;

template <std::size_t N>
inline StateArray<N> axpy(const StateArray<N>& y, double h, const StateArray<N>& k) noexcept {
    StateArray<N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * k[i];
    return out;
}

// One step of size h from (t, y); rhs(t, y) -> dy/dt.
template <std::size_t N, class Rhs>
StateArray<N> rk4_step(Rhs&& rhs, double t, const StateArray<N>& y, double h) {
    const StateArray<N> k1 = rhs(t, y);
    const StateArray<N> k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const StateArray<N> k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const StateArray<N> k4 = rhs(t + h, axpy(y, h, k3));
    StateArray<N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

}  // namespace lambdatrap
