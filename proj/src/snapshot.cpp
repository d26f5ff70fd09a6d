#include "epidiff/snapshot.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "epidiff/errors.hpp"
#include "epidiff/format.hpp"

namespace epidiff {

namespace {

constexpr const char* kMagic = "epidiff-field v1";

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        const auto b = item.find_first_not_of(' ');
        const auto e = item.find_last_not_of(' ');
        out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    }
    return out;
}

std::vector<std::string> words(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string w;
    while (ss >> w) {
        out.push_back(w);
    }
    return out;
}

std::size_t parse_count(const std::string& s)
{
    try {
        std::size_t pos = 0;
        const unsigned long v = std::stoul(s, &pos);
        if (pos != s.size()) {
            throw ConfigError("");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("snapshot: bad cell count '" + s + "'");
    }
}

}  // namespace

Snapshot make_snapshot(const State& z, double time)
{
    Snapshot snap;
    snap.grid = z[0].grid();
    for (std::size_t s = 0; s < 4; ++s) {
        snap.species.emplace_back(kSpeciesNames[s]);
        snap.fields.push_back(z[s]);
    }
    snap.time = time;
    return snap;
}

Snapshot make_snapshot(const Field& f, const std::string& name, double time)
{
    return Snapshot{f.grid(), {name}, {f}, time};
}

void write_snapshot(std::ostream& os, const Snapshot& snap)
{
    const Grid& g = snap.grid;
    os << kMagic << "; " << g.dim() << "; " << g.nx();
    if (g.dim() == 2) {
        os << ' ' << g.ny();
    }
    os << "; " << format_double(g.hx());
    if (g.dim() == 2) {
        os << ' ' << format_double(g.hy());
    }
    os << ";";
    for (const auto& name : snap.species) {
        os << ' ' << name;
    }
    os << "; " << format_double(snap.time) << '\n';
    for (std::size_t k = 0; k < g.size(); ++k) {
        for (std::size_t s = 0; s < snap.fields.size(); ++s) {
            if (s > 0) {
                os << ' ';
            }
            os << format_double(snap.fields[s][k]);
        }
        os << '\n';
    }
}

Snapshot read_snapshot(std::istream& is)
{
    std::string header;
    if (!std::getline(is, header)) {
        throw ConfigError("snapshot: empty input");
    }
    const auto parts = split(header, ';');
    if (parts.size() != 6 || parts[0] != kMagic) {
        throw ConfigError("snapshot: malformed header '" + header + "'");
    }
    const auto cells = words(parts[2]);
    const auto spacing = words(parts[3]);
    Snapshot snap;
    if (parts[1] == "1" && cells.size() == 1 && spacing.size() == 1) {
        const std::size_t nx = parse_count(cells[0]);
        snap.grid = Grid(nx, static_cast<double>(nx) * parse_double(spacing[0], "snapshot spacing"));
    } else if (parts[1] == "2" && cells.size() == 2 && spacing.size() == 2) {
        const std::size_t nx = parse_count(cells[0]);
        const std::size_t ny = parse_count(cells[1]);
        snap.grid = Grid(nx, ny, static_cast<double>(nx) * parse_double(spacing[0], "snapshot spacing"),
                         static_cast<double>(ny) * parse_double(spacing[1], "snapshot spacing"));
    } else {
        throw ConfigError("snapshot: inconsistent dimension/cells/spacing in header");
    }
    snap.species = words(parts[4]);
    if (snap.species.empty()) {
        throw ConfigError("snapshot: no species listed");
    }
    snap.time = parse_double(parts[5], "snapshot time");
    snap.fields.assign(snap.species.size(), Field(snap.grid));
    std::string line;
    for (std::size_t k = 0; k < snap.grid.size(); ++k) {
        if (!std::getline(is, line)) {
            throw ConfigError("snapshot: truncated after " + std::to_string(k) + " rows");
        }
        const auto vals = words(line);
        if (vals.size() != snap.species.size()) {
            throw ConfigError("snapshot: row " + std::to_string(k) + " has wrong column count");
        }
        for (std::size_t s = 0; s < vals.size(); ++s) {
            snap.fields[s][k] = parse_double(vals[s], "snapshot value");
        }
    }
    return snap;
}

}  // namespace epidiff
