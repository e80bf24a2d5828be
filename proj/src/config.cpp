#include "tpq/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace tpq {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(key + ": '" + value + "' is not a number");
    return out;
}

long long parse_int(const std::string& key, const std::string& value) {
    long long out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(key + ": '" + value + "' is not an integer");
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(key + ": '" + value + "' is not an unsigned integer");
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream stream(s);
    std::string item;
    while (std::getline(stream, item, sep)) out.push_back(trim(item));
    return out;
}

// Comma list of ints and inclusive lo:hi ranges, e.g. "1,4:6" -> 1,4,5,6.
std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    for (const std::string& token : split(value, ',')) {
        const auto colon = token.find(':');
        if (colon == std::string::npos) {
            out.push_back(static_cast<int>(parse_int(key, token)));
        } else {
            const int lo = static_cast<int>(parse_int(key, token.substr(0, colon)));
            const int hi = static_cast<int>(parse_int(key, token.substr(colon + 1)));
            if (lo > hi)
                throw ConfigError(key + ": empty range '" + token + "'");
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const std::string& token : split(value, ','))
        out.push_back(parse_double(key, token));
    return out;
}

}  // namespace

ExperimentSpec parse_experiment(const std::string& text) {
    ExperimentSpec spec;
    std::optional<double> cl_rt, cl_nrt, cd_rt, cd_nrt;

    std::stringstream stream(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(stream, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty value for '" + key + "'");

        if (key == "lambda_rt") spec.params.lambda_rt = parse_double(key, value);
        else if (key == "lambda_nrt") spec.params.lambda_nrt = parse_double(key, value);
        else if (key == "mu_rt") spec.params.mu_rt = parse_double(key, value);
        else if (key == "mu_nrt") spec.params.mu_nrt = parse_double(key, value);
        else if (key == "r_threshold") spec.r_threshold = static_cast<int>(parse_int(key, value));
        else if (key == "n_capacity") spec.n_capacity = static_cast<int>(parse_int(key, value));
        else if (key == "total") spec.total = static_cast<int>(parse_int(key, value));
        else if (key == "r_values") spec.r_values = parse_int_list(key, value);
        else if (key == "vary") spec.vary_param = value;
        else if (key == "vary_values") spec.vary_values = parse_double_list(key, value);
        else if (key == "cl_rt") cl_rt = parse_double(key, value);
        else if (key == "cl_nrt") cl_nrt = parse_double(key, value);
        else if (key == "cd_rt") cd_rt = parse_double(key, value);
        else if (key == "cd_nrt") cd_nrt = parse_double(key, value);
        else if (key == "mode") spec.mode = parse_mode(value);
        else if (key == "discipline") spec.discipline = parse_discipline(value);
        else if (key == "seed") spec.seed = parse_u64(key, value);
        else if (key == "replications") spec.replications = static_cast<int>(parse_int(key, value));
        else if (key == "horizon") spec.horizon = parse_double(key, value);
        else if (key == "warmup") spec.warmup = parse_double(key, value);
        else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }

    const int given = int(cl_rt.has_value()) + int(cl_nrt.has_value()) +
                      int(cd_rt.has_value()) + int(cd_nrt.has_value());
    if (given == 4) {
        spec.costs = CostWeights{*cl_rt, *cl_nrt, *cd_rt, *cd_nrt};
        spec.costs->validate();
    } else if (given != 0) {
        throw ConfigError("cost weights are all-or-nothing: give cl_rt, cl_nrt, cd_rt and cd_nrt");
    }

    if (spec.vary_param) {
        if (*spec.vary_param != "lambda_rt" && *spec.vary_param != "lambda_nrt")
            throw ConfigError("vary must be lambda_rt or lambda_nrt, got '" +
                              *spec.vary_param + "'");
        if (spec.vary_values.empty())
            throw ConfigError("vary given without vary_values");
    } else if (!spec.vary_values.empty()) {
        throw ConfigError("vary_values given without vary");
    }
    return spec;
}

ExperimentSpec load_experiment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("error reading config file '" + path + "'");
    return parse_experiment(buffer.str());
}

}  // namespace tpq
