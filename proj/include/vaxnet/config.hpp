#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vaxnet/degree_dist.hpp"
#include "vaxnet/weight_model.hpp"

namespace vaxnet {

/// `name(arg, key=value, ...)`; argument text is kept raw so it can nest.
struct SpecTerm {
    struct Arg {
        std::string key; // empty for positional arguments
        std::string value;
    };
    std::string name;
    std::vector<Arg> args;
    bool has_parens = false;

    /// Positional argument `index`, or the keyed argument `key` if present.
    const std::string* find(std::size_t index, std::string_view key) const;
};

SpecTerm parse_term(std::string_view text);

/// `poisson(6)`, `powerlaw(3.5, mean=14)`, `empirical(path.csv)`, `fixed(3)`.
DegreeDist parse_degree_spec(std::string_view text);

/// `power(0.7)`, `indicator(3)`, `geom(0.8)`.
WeightFunctionG parse_g_spec(std::string_view text);

/// `uniform`, `beta(0.5,2.5)`, `twopoint(a=0.1,b=1.0,pa=0.9)`,
/// `contacts(poisson(3), p=0.2)`, `strength(exp(1), indicator=0.5)`,
/// `strength(gamma(2,1), decay=0.8)`, `table(path.csv)`, `g=power(0.7)`.
WeightModel parse_weight_spec(std::string_view text);

double parse_number(std::string_view text);

/// Flat `key = value` text. `#` starts a comment; `[name]` opens a section
/// whose keys extend (and override) the top-level keys.
struct ConfigFile {
    struct Entry {
        std::string value;
        int line = 0;
    };
    using Section = std::map<std::string, Entry>;

    Section global;
    std::vector<std::pair<std::string, Section>> sections;

    /// Top-level keys merged with those of section `index`.
    Section merged(std::size_t index) const;
};

ConfigFile parse_config(std::string_view text);
ConfigFile load_config(const std::string& path);

/// A numeric grid: `a:b:step` (inclusive) or a comma-separated list.
std::vector<double> parse_grid(std::string_view text);

} // namespace vaxnet
