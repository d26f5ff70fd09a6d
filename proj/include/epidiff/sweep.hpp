#pragma once

#include <iosfwd>
#include <vector>

#include "epidiff/config.hpp"

namespace epidiff {

struct SweepPoint {
    std::vector<double> values;  // one per axis
    double margin = 0.0;         // d - g0
    double ratio = 0.0;          // J(t_end) / J(0)
    bool attractor = false;
    bool aborted = false;
};

/// Grid points in row-major order over the axes (last axis fastest).
std::vector<std::vector<double>> sweep_points(const SweepSpec& spec);

/// Runs every point to spec.t_end, each against its own (S_inf, 0, 0, 0).
/// Points are independent and fan out over `threads` workers.
std::vector<SweepPoint> run_sweep(const SimulationConfig& base, const SweepSpec& spec,
                                  std::size_t threads = 1);

/// Header "<axis names>,margin,J_ratio,classification".
void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepPoint>& points);

/// Along a single-axis sweep, the classification changes at most once.
bool classification_monotone(const std::vector<SweepPoint>& points);

}  // namespace epidiff
