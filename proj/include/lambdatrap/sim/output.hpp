// Locale-independent serialization of trajectories and tables.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lambdatrap/integrator.hpp"
#include "lambdatrap/trap_analysis.hpp"

namespace lambdatrap::sim {

inline constexpr const char* trajectory_csv_header =
    "t,J11,J22,J33,ReJ13,ImJ13,ReJ23,ImJ23,ReJ12,ImJ12,a1x,a1y,a2x,a2y";
inline constexpr const char* windows_csv_header = "n,t_seconds,Delta_t_rad,residual,branch";
inline constexpr const char* resonance_line = "window: continuous (resonance)";

// 12 significant digits, scientific notation, e.g. 1.00000000000e+00.
std::string sci(double v);

std::string trajectory_csv(const Trajectory& traj);
std::string trajectory_json(const Trajectory& traj);

std::string windows_csv(const WindowList& windows);
std::string windows_text(const WindowList& windows);
std::string windows_json(const WindowList& windows);

// Writes via a temporary sibling and rename, so a failed write leaves no
// partial file behind.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace lambdatrap::sim
