#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "epidiff/grid.hpp"

namespace epidiff {

/// Text snapshot of one or more fields on a common grid:
///
///   epidiff-field v1; <dim>; <cells per axis>; <spacing per axis>; <species>; <time>
///
/// followed by one row per cell (row-major, x fastest) holding one value per
/// species. Values are written with 17 significant digits so reading them back
/// reproduces every bit.
struct Snapshot {
    Grid grid;
    std::vector<std::string> species;
    std::vector<Field> fields;
    double time = 0.0;
};

Snapshot make_snapshot(const State& z, double time);
Snapshot make_snapshot(const Field& f, const std::string& name, double time);

void write_snapshot(std::ostream& os, const Snapshot& snap);
/// Throws ConfigError on malformed input.
Snapshot read_snapshot(std::istream& is);

}  // namespace epidiff
