#include "vaxnet/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vaxnet/error.hpp"

namespace vaxnet {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

const std::string& require_arg(const SpecTerm& term, std::size_t index, std::string_view key) {
    const std::string* value = term.find(index, key);
    if (value == nullptr)
        throw ParseError(term.name + ": missing argument '" + std::string(key) + "'");
    return *value;
}

int parse_integer(std::string_view text) {
    const double x = parse_number(text);
    if (x != std::floor(x))
        throw ParseError("expected an integer, got '" + std::string(text) + "'");
    return static_cast<int>(x);
}

StrengthLaw parse_strength_law(std::string_view text) {
    const SpecTerm term = parse_term(text);
    StrengthLaw law;
    if (term.name == "exp") {
        law.kind = StrengthLaw::Kind::Exponential;
        const double rate = parse_number(require_arg(term, 0, "rate"));
        if (!(rate > 0.0))
            throw ParameterError("exponential strength rate must be positive");
        law.shape = 1.0;
        law.scale = 1.0 / rate;
    } else if (term.name == "gamma") {
        law.kind = StrengthLaw::Kind::Gamma;
        law.shape = parse_number(require_arg(term, 0, "shape"));
        law.scale = parse_number(require_arg(term, 1, "scale"));
    } else {
        throw ParseError("unknown strength law '" + term.name + "' (expected exp or gamma)");
    }
    return law;
}

TabulatedWeights read_weight_table(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParameterError("cannot open weight table " + path);
    TabulatedWeights table;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (header) {
            header = false;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("malformed weight table row: " + line);
        table.x.push_back(parse_number(std::string_view(line).substr(0, comma)));
        table.cdf.push_back(parse_number(std::string_view(line).substr(comma + 1)));
    }
    return table;
}

} // namespace

const std::string* SpecTerm::find(std::size_t index, std::string_view key) const {
    for (const Arg& a : args)
        if (!a.key.empty() && a.key == key)
            return &a.value;
    std::size_t position = 0;
    for (const Arg& a : args) {
        if (!a.key.empty())
            continue;
        if (position++ == index)
            return &a.value;
    }
    return nullptr;
}

double parse_number(std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty())
        throw ParseError("expected a number, got '" + std::string(text) + "'");
    return value;
}

SpecTerm parse_term(std::string_view text) {
    text = trim(text);
    SpecTerm term;
    const auto open = text.find('(');
    term.name = std::string(trim(text.substr(0, open)));
    if (term.name.empty())
        throw ParseError("empty specification");
    if (!std::all_of(term.name.begin(), term.name.end(),
                     [](unsigned char c) { return std::isalnum(c) != 0 || c == '_'; }))
        throw ParseError("malformed specification '" + std::string(text) + "'");
    if (open == std::string_view::npos)
        return term;
    if (text.back() != ')')
        throw ParseError("unbalanced parentheses in '" + std::string(text) + "'");
    term.has_parens = true;
    const std::string_view body = text.substr(open + 1, text.size() - open - 2);

    int depth = 0;
    std::size_t start = 0;
    const auto flush = [&](std::size_t end) {
        std::string_view piece = trim(body.substr(start, end - start));
        if (piece.empty())
            return;
        SpecTerm::Arg arg;
        // key=value only when '=' precedes any '(' (so `g=power(1)` nests).
        const auto eq = piece.find('=');
        const auto paren = piece.find('(');
        if (eq != std::string_view::npos && (paren == std::string_view::npos || eq < paren)) {
            arg.key = std::string(trim(piece.substr(0, eq)));
            arg.value = std::string(trim(piece.substr(eq + 1)));
        } else {
            arg.value = std::string(piece);
        }
        term.args.push_back(std::move(arg));
    };
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i] == '(')
            ++depth;
        else if (body[i] == ')' && --depth < 0)
            throw ParseError("unbalanced parentheses in '" + std::string(text) + "'");
        else if (body[i] == ',' && depth == 0) {
            flush(i);
            start = i + 1;
        }
    }
    if (depth != 0)
        throw ParseError("unbalanced parentheses in '" + std::string(text) + "'");
    flush(body.size());
    return term;
}

DegreeDist parse_degree_spec(std::string_view text) {
    const SpecTerm term = parse_term(text);
    if (term.name == "poisson")
        return poisson(parse_number(require_arg(term, 0, "mu")));
    if (term.name == "powerlaw" || term.name == "power_law")
        return power_law(parse_number(require_arg(term, 0, "exponent")), parse_number(require_arg(term, 1, "mean")));
    if (term.name == "fixed" || term.name == "point")
        return point_mass(parse_integer(require_arg(term, 0, "k")));
    if (term.name == "empirical")
        return empirical_from_csv(require_arg(term, 0, "path"));
    throw ParseError("unknown degree distribution '" + term.name + "' (expected poisson, powerlaw, empirical or fixed)");
}

WeightFunctionG parse_g_spec(std::string_view text) {
    const SpecTerm term = parse_term(text);
    if (term.name == "power")
        return WeightFunctionG::power_decay(parse_number(require_arg(term, 0, "tau")));
    if (term.name == "indicator")
        return WeightFunctionG::indicator_ge(parse_integer(require_arg(term, 0, "theta")));
    if (term.name == "geom")
        return WeightFunctionG::geometric_decay(parse_number(require_arg(term, 0, "alpha")));
    throw ParseError("unknown weight function '" + term.name + "' (expected power, indicator or geom)");
}

WeightModel parse_weight_spec(std::string_view text) {
    text = trim(text);
    if (text.starts_with("g=") || text.starts_with("g ="))
        return WeightModel(DegreeDependentWeights{parse_g_spec(text.substr(text.find('=') + 1))});
    const SpecTerm term = parse_term(text);
    if (term.name == "uniform")
        return WeightModel(UniformWeights{});
    if (term.name == "beta")
        return WeightModel(BetaWeights{parse_number(require_arg(term, 0, "a")), parse_number(require_arg(term, 1, "b"))});
    if (term.name == "twopoint") {
        TwoPointWeights w;
        w.a = parse_number(require_arg(term, 0, "a"));
        w.b = parse_number(require_arg(term, 1, "b"));
        if (const std::string* pa = term.find(2, "pa"))
            w.pa = parse_number(*pa);
        else if (const std::string* pb = term.find(2, "pb"))
            w.pa = 1.0 - parse_number(*pb);
        else
            throw ParseError("twopoint: missing argument 'pa'");
        return WeightModel(w);
    }
    if (term.name == "contacts")
        return WeightModel(
            ContactCountWeights{parse_degree_spec(require_arg(term, 0, "n")), parse_number(require_arg(term, 1, "p"))});
    if (term.name == "strength") {
        ThresholdStrengthWeights w;
        w.strength = parse_strength_law(require_arg(term, 0, "x"));
        if (const std::string* theta = term.find(99, "indicator")) {
            w.rule = ThresholdStrengthWeights::Rule::Indicator;
            w.parameter = parse_number(*theta);
        } else if (const std::string* alpha = term.find(99, "decay")) {
            w.rule = ThresholdStrengthWeights::Rule::Decay;
            w.parameter = parse_number(*alpha);
        } else {
            throw ParseError("strength: expected indicator=theta or decay=alpha");
        }
        return WeightModel(w);
    }
    if (term.name == "table")
        return WeightModel(read_weight_table(require_arg(term, 0, "path")));
    if (term.name == "g")
        throw ParseError("write degree-dependent weights as g=power(tau), g=indicator(theta) or g=geom(alpha)");
    throw ParseError("unknown weight law '" + term.name + "'");
}

ConfigFile::Section ConfigFile::merged(std::size_t index) const {
    Section out = global;
    for (const auto& [key, entry] : sections.at(index).second)
        out[key] = entry;
    return out;
}

ConfigFile parse_config(std::string_view text) {
    ConfigFile config;
    ConfigFile::Section* current = &config.global;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_number = 0;
    while (std::getline(in, raw)) {
        ++line_number;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("unterminated section header", line_number);
            config.sections.emplace_back(std::string(trim(line.substr(1, line.size() - 2))), ConfigFile::Section{});
            current = &config.sections.back().second;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'key = value'", line_number);
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty())
            throw ParseError("empty key", line_number);
        (*current)[key] = {std::string(trim(line.substr(eq + 1))), line_number};
    }
    return config;
}

ConfigFile load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::vector<double> parse_grid(std::string_view text) {
    text = trim(text);
    std::vector<double> grid;
    if (text.empty())
        return grid;
    if (text.find(':') != std::string_view::npos) {
        const auto first = text.find(':');
        const auto second = text.find(':', first + 1);
        if (second == std::string_view::npos)
            throw ParseError("grid range must be start:stop:step");
        const double start = parse_number(text.substr(0, first));
        const double stop = parse_number(text.substr(first + 1, second - first - 1));
        const double step = parse_number(text.substr(second + 1));
        if (!(step > 0.0) || stop < start)
            throw ParseError("grid range needs step > 0 and stop >= start");
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        for (long i = 0; i <= count; ++i)
            grid.push_back(start + static_cast<double>(i) * step);
        return grid;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        grid.push_back(parse_number(piece));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return grid;
}

} // namespace vaxnet
