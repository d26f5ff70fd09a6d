#include "epidiff/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "epidiff/errors.hpp"
#include "epidiff/format.hpp"

namespace epidiff {

namespace {

constexpr std::array<const char*, 6> kSections{"grid", "params", "coefficients", "initial", "run",
                                               "sweep"};
constexpr std::array<const char*, 9> kParamNames{"d",  "gamma", "sigma", "delta", "xi",
                                                 "g",  "K",     "beta1", "beta2"};

std::string trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return std::string(s);
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

std::string join_numbers(const std::vector<double>& v)
{
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        out += (k > 0 ? " " : "") + format_double(v[k]);
    }
    return out;
}

/// Raw document: section -> key -> value, with consumption tracking.
class Document {
public:
    explicit Document(std::string_view text)
    {
        std::string section;
        std::istringstream is{std::string(text)};
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) {
                line.erase(hash);
            }
            line = trim(line);
            if (line.empty()) {
                continue;
            }
            if (line.front() == '[') {
                if (line.back() != ']') {
                    throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
                }
                section = trim(std::string_view(line).substr(1, line.size() - 2));
                if (std::find_if(kSections.begin(), kSections.end(),
                                 [&](const char* s) { return section == s; }) == kSections.end()) {
                    throw ConfigError("unknown section [" + section + "]");
                }
                sections_.insert(section);
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
            }
            if (section.empty()) {
                throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
            }
            const std::string key = section + "." + trim(std::string_view(line).substr(0, eq));
            if (values_.count(key) != 0) {
                throw ConfigError(key + ": duplicate key");
            }
            values_[key] = trim(std::string_view(line).substr(eq + 1));
        }
    }

    bool has_section(const std::string& s) const { return sections_.count(s) != 0; }

    std::optional<std::string> take(const std::string& key)
    {
        auto it = values_.find(key);
        if (it == values_.end()) {
            return std::nullopt;
        }
        used_.insert(key);
        return it->second;
    }

    std::string require(const std::string& key)
    {
        auto v = take(key);
        if (!v) {
            throw ConfigError(key + ": missing required key");
        }
        return *v;
    }

    double number(const std::string& key)
    {
        return parse_double(require(key), key);
    }

    double number_or(const std::string& key, double fallback)
    {
        auto v = take(key);
        return v ? parse_double(*v, key) : fallback;
    }

    void reject_unknown() const
    {
        for (const auto& [key, value] : values_) {
            if (used_.count(key) == 0) {
                throw ConfigError(key + ": unknown key");
            }
        }
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
    std::set<std::string> sections_;
};

std::size_t parse_count(const std::string& text, const std::string& key)
{
    const double v = parse_double(text, key);
    if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw ConfigError(key + ": expected a positive integer, got '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

std::vector<double> number_list(const std::string& text, const std::string& key)
{
    std::vector<double> out;
    for (const auto& w : words(text)) {
        out.push_back(parse_double(w, key));
    }
    return out;
}

/// "constant v", "expression e" or a bare number.
struct ValueSpec {
    bool is_constant = true;
    double constant = 0.0;
    std::optional<Expression> expr;

    std::string canonical() const
    {
        return is_constant ? "constant " + format_double(constant) : "expression " + expr->source();
    }
};

ValueSpec parse_value_spec(const std::string& text, const std::string& key)
{
    ValueSpec spec;
    auto as_expression = [&](std::string_view body) {
        spec.is_constant = false;
        try {
            spec.expr = Expression::parse(body);
        } catch (const ConfigError& e) {
            throw ConfigError(key + ": " + e.what());
        }
    };
    if (text.rfind("constant", 0) == 0) {
        spec.constant = parse_double(trim(std::string_view(text).substr(8)), key);
    } else if (text.rfind("expression", 0) == 0) {
        as_expression(std::string_view(text).substr(10));
    } else {
        // a bare value is a number when it reads as one, an expression otherwise
        char* end = nullptr;
        spec.constant = std::strtod(text.c_str(), &end);
        if (text.empty() || *end != '\0') {
            as_expression(text);
        }
    }
    if (spec.is_constant && !std::isfinite(spec.constant)) {
        throw ConfigError(key + ": constant must be finite");
    }
    return spec;
}

Grid read_grid(Document& doc, std::map<std::string, std::string>& eff)
{
    const double dim_value = doc.number_or("grid.dim", 1.0);
    if (dim_value != 1.0 && dim_value != 2.0) {
        throw ConfigError("grid.dim: must be 1 or 2");
    }
    const int dim = static_cast<int>(dim_value);
    const std::string cells_text = doc.take("grid.cells").value_or(dim == 1 ? "64" : "64 64");
    const std::string ext_text = doc.take("grid.extents").value_or(dim == 1 ? "1" : "1 1");
    const auto cell_words = words(cells_text);
    const auto extents = number_list(ext_text, "grid.extents");
    if (cell_words.size() != static_cast<std::size_t>(dim)) {
        throw ConfigError("grid.cells: need one count per axis");
    }
    if (extents.size() != static_cast<std::size_t>(dim)) {
        throw ConfigError("grid.extents: need one length per axis");
    }
    std::vector<std::size_t> cells;
    for (const auto& w : cell_words) {
        cells.push_back(parse_count(w, "grid.cells"));
        if (cells.back() < 3) {
            throw ConfigError("grid.cells: need at least 3 cells per axis");
        }
    }
    for (double e : extents) {
        if (!(e > 0.0) || !std::isfinite(e)) {
            throw ConfigError("grid.extents: lengths must be positive");
        }
    }
    eff["grid.dim"] = std::to_string(dim);
    eff["grid.cells"] = dim == 1 ? std::to_string(cells[0])
                                 : std::to_string(cells[0]) + " " + std::to_string(cells[1]);
    eff["grid.extents"] = join_numbers(extents);
    return dim == 1 ? Grid(cells[0], extents[0]) : Grid(cells[0], cells[1], extents[0], extents[1]);
}

Parameters read_params(Document& doc, const Grid& grid, std::map<std::string, std::string>& eff)
{
    Parameters p;
    for (const char* name : kParamNames) {
        const std::string key = std::string("params.") + name;
        set_parameter(p, name, doc.number(key));
        eff[key] = format_double(get_parameter(p, name));
    }
    if (auto v = doc.take("params.velocity")) {
        p.velocity = number_list(*v, "params.velocity");
        if (p.velocity.size() != static_cast<std::size_t>(grid.dim())) {
            throw ConfigError("params.velocity: need one component per axis");
        }
    } else {
        p.velocity.assign(static_cast<std::size_t>(grid.dim()), 0.0);
    }
    eff["params.velocity"] = join_numbers(p.velocity);
    const std::string growth = doc.take("params.growth").value_or("logistic");
    if (growth == "logistic") {
        p.growth = GrowthLaw::logistic;
    } else if (growth == "saturating") {
        p.growth = GrowthLaw::saturating;
    } else {
        throw ConfigError("params.growth: expected logistic or saturating");
    }
    eff["params.growth"] = growth;
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return p;
}

void check_samples(const CoefficientSampler& c, const Grid& grid, double t_end,
                   const std::string& key)
{
    for (double t : {0.0, t_end}) {
        try {
            c.sample(grid, t);
        } catch (const DomainError& e) {
            throw ConfigError(key + ": " + e.what());
        }
    }
}

CoefficientSampler read_coefficient(Document& doc, const std::string& key, bool diffusion,
                                    const Grid& grid, double t_end,
                                    std::map<std::string, std::string>& eff)
{
    const ValueSpec spec = parse_value_spec(doc.require(key), key);
    const std::string lo_key = diffusion ? key + ".d0" : std::string();
    const std::string hi_key = diffusion ? key + ".D0" : key + ".b0";
    CoefficientSampler c;
    double lo = 0.0;
    double hi = 0.0;
    if (spec.is_constant) {
        lo = diffusion ? doc.number_or(lo_key, spec.constant) : 0.0;
        hi = doc.number_or(hi_key, spec.constant);
        c = CoefficientSampler::constant(spec.constant);
        if (!(lo <= spec.constant && spec.constant <= hi)) {
            throw ConfigError(key + ": constant lies outside its declared bounds");
        }
    } else {
        lo = diffusion ? doc.number(lo_key) : 0.0;
        hi = doc.number(hi_key);
        c = CoefficientSampler::expression(*spec.expr, lo, hi);
    }
    if (diffusion && !(lo > 0.0)) {
        throw ConfigError(lo_key + ": d0 must be positive");
    }
    if (!diffusion && !(spec.is_constant ? spec.constant >= 0.0 : true)) {
        throw ConfigError(key + ": influx must be nonnegative");
    }
    if (!(lo <= hi)) {
        throw ConfigError(hi_key + ": upper bound below lower bound");
    }
    eff[key] = spec.canonical();
    if (diffusion) {
        eff[lo_key] = format_double(lo);
    }
    eff[hi_key] = format_double(hi);
    if (auto lim = doc.take(key + ".limit")) {
        const ValueSpec ls = parse_value_spec(*lim, key + ".limit");
        if (ls.is_constant) {
            const double v = ls.constant;
            c.with_limit([v](double, double, double) { return v; }, ls.canonical());
        } else {
            try {
                c.with_limit(*ls.expr);
            } catch (const ConfigError& e) {
                throw ConfigError(key + ".limit: " + e.what());
            }
        }
        eff[key + ".limit"] = ls.canonical();
    }
    // a time-dependent coefficient is sampled at every step; the declared
    // band is checked at t = 0 and t = t_end here
    check_samples(c, grid, t_end, key);
    if (c.has_limit()) {
        const Field lim = c.limit(grid);
        for (std::size_t k = 0; k < lim.size(); ++k) {
            if (!(lim[k] >= lo && lim[k] <= hi)) {
                throw ConfigError(key + ".limit: profile leaves the declared bounds");
            }
        }
    }
    return c;
}

Field read_initial(Document& doc, const std::string& key, const Grid& grid,
                   std::map<std::string, std::string>& eff)
{
    const ValueSpec spec = parse_value_spec(doc.require(key), key);
    Field f(grid);
    if (spec.is_constant) {
        f = Field(grid, spec.constant);
    } else {
        if (spec.expr->depends_on_time()) {
            throw ConfigError(key + ": initial data must not depend on t");
        }
        const Expression e = *spec.expr;
        f = Field::from_function(grid, [&e](double x, double y) { return e.evaluate(x, y, 0.0); });
    }
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (!(f[k] >= 0.0) || !std::isfinite(f[k])) {
            throw ConfigError(key + ": initial data must be nonnegative");
        }
    }
    eff[key] = spec.canonical();
    return f;
}

}  // namespace

void set_parameter(Parameters& p, const std::string& name, double value)
{
    if (name == "d") p.d = value;
    else if (name == "gamma") p.gamma = value;
    else if (name == "sigma") p.sigma = value;
    else if (name == "delta") p.delta = value;
    else if (name == "xi") p.xi = value;
    else if (name == "g") p.g = value;
    else if (name == "K") p.K = value;
    else if (name == "beta1") p.beta1 = value;
    else if (name == "beta2") p.beta2 = value;
    else throw ConfigError("unknown parameter '" + name + "'");
}

double get_parameter(const Parameters& p, const std::string& name)
{
    if (name == "d") return p.d;
    if (name == "gamma") return p.gamma;
    if (name == "sigma") return p.sigma;
    if (name == "delta") return p.delta;
    if (name == "xi") return p.xi;
    if (name == "g") return p.g;
    if (name == "K") return p.K;
    if (name == "beta1") return p.beta1;
    if (name == "beta2") return p.beta2;
    throw ConfigError("unknown parameter '" + name + "'");
}

Scenario parse_config(std::string_view text, std::uint64_t seed)
{
    Document doc(text);
    Scenario sc;
    auto& eff = sc.effective;
    SimulationConfig& cfg = sc.sim;

    cfg.grid = read_grid(doc, eff);
    cfg.params = read_params(doc, cfg.grid, eff);

    cfg.t_end = doc.number_or("run.t_end", 10.0);
    cfg.dt_max = doc.number_or("run.dt_max", 0.01);
    cfg.solver_tol = doc.number_or("run.solver_tol", 1e-10);
    cfg.positivity_safety = doc.number_or("run.positivity_safety", 0.9);
    sc.verify.seeds = parse_count(doc.take("run.seeds").value_or("20"), "run.seeds");
    sc.verify.nonnegativity_t_end = doc.number_or("run.nonnegativity_t_end", 10.0);
    if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) {
        throw ConfigError("run.t_end: must be nonnegative");
    }
    if (!(cfg.dt_max > 0.0)) {
        throw ConfigError("run.dt_max: must be positive");
    }
    if (!(cfg.solver_tol > 0.0)) {
        throw ConfigError("run.solver_tol: must be positive");
    }
    if (!(cfg.positivity_safety > 0.0 && cfg.positivity_safety <= 1.0)) {
        throw ConfigError("run.positivity_safety: must lie in (0, 1]");
    }
    if (!(sc.verify.nonnegativity_t_end > 0.0)) {
        throw ConfigError("run.nonnegativity_t_end: must be positive");
    }
    eff["run.t_end"] = format_double(cfg.t_end);
    eff["run.dt_max"] = format_double(cfg.dt_max);
    eff["run.solver_tol"] = format_double(cfg.solver_tol);
    eff["run.positivity_safety"] = format_double(cfg.positivity_safety);
    eff["run.seeds"] = std::to_string(sc.verify.seeds);
    eff["run.nonnegativity_t_end"] = format_double(sc.verify.nonnegativity_t_end);

    for (std::size_t s = 0; s < 4; ++s) {
        cfg.diffusion[s] = read_coefficient(doc, "coefficients.d" + std::to_string(s + 1), true,
                                            cfg.grid, cfg.t_end, eff);
    }
    cfg.influx = read_coefficient(doc, "coefficients.b", false, cfg.grid, cfg.t_end, eff);

    for (std::size_t s = 0; s < 4; ++s) {
        cfg.initial[s] =
            read_initial(doc, "initial." + std::string(kSpeciesNames[s]), cfg.grid, eff);
    }
    const double noise = doc.number_or("initial.noise", 0.0);
    if (!(noise >= 0.0 && noise <= 1.0)) {
        throw ConfigError("initial.noise: must lie in [0, 1]");
    }
    eff["initial.noise"] = format_double(noise);
    if (noise > 0.0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (auto& f : cfg.initial) {
            for (std::size_t k = 0; k < f.size(); ++k) {
                f[k] *= 1.0 + noise * unit(rng);
            }
        }
    }

    if (doc.has_section("sweep")) {
        SweepSpec sw;
        const std::string axes = doc.require("sweep.axes");
        std::stringstream ss(axes);
        std::string item;
        std::string canonical;
        while (std::getline(ss, item, ',')) {
            const auto w = words(item);
            if (w.size() != 4) {
                throw ConfigError("sweep.axes: each axis is 'name min max count'");
            }
            SweepAxis axis{w[0], parse_double(w[1], "sweep.axes"), parse_double(w[2], "sweep.axes"),
                           parse_count(w[3], "sweep.axes")};
            if (std::find(kParamNames.begin(), kParamNames.end(), axis.name) == kParamNames.end()) {
                throw ConfigError("sweep.axes: unknown parameter '" + axis.name + "'");
            }
            if (axis.count < 2) {
                throw ConfigError("sweep.axes: count must be at least 2");
            }
            if (!(axis.min <= axis.max)) {
                throw ConfigError("sweep.axes: min exceeds max for '" + axis.name + "'");
            }
            canonical += (canonical.empty() ? "" : ", ") + axis.name + " " +
                         format_double(axis.min) + " " + format_double(axis.max) + " " +
                         std::to_string(axis.count);
            sw.axes.push_back(axis);
        }
        if (sw.axes.empty()) {
            throw ConfigError("sweep.axes: at least one axis required");
        }
        sw.t_end = doc.number_or("sweep.t_end", cfg.t_end);
        sw.threshold = doc.number_or("sweep.threshold", 1e-4);
        if (!(sw.t_end > 0.0)) {
            throw ConfigError("sweep.t_end: must be positive");
        }
        if (!(sw.threshold > 0.0)) {
            throw ConfigError("sweep.threshold: must be positive");
        }
        eff["sweep.axes"] = canonical;
        eff["sweep.t_end"] = format_double(sw.t_end);
        eff["sweep.threshold"] = format_double(sw.threshold);
        sc.sweep = sw;
    }

    doc.reject_unknown();
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return sc;
}

Scenario load_config(const std::string& path, std::uint64_t seed)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), seed);
}

std::string dump_config(const Scenario& scenario)
{
    std::string out;
    for (const char* section : kSections) {
        const std::string prefix = std::string(section) + ".";
        bool header = false;
        for (const auto& [key, value] : scenario.effective) {
            if (key.rfind(prefix, 0) != 0) {
                continue;
            }
            if (!header) {
                out += (out.empty() ? "[" : "\n[") + std::string(section) + "]\n";
                header = true;
            }
            out += key.substr(prefix.size()) + " = " + value + "\n";
        }
    }
    return out;
}

}  // namespace epidiff
