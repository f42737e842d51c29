#include "wfsim/scenario.hpp"

#include <fmt/format.h>

#include <fstream>
#include <numbers>
#include <sstream>

namespace wfsim {

namespace {

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

std::uint64_t parse_u64(std::string_view field, std::string_view value) {
    std::string s(trim(value));
    if (s.empty() || s[0] == '-') {
        throw std::invalid_argument(fmt::format("{}: expected a non-negative integer, got '{}'", field, s));
    }
    std::size_t pos = 0;
    std::uint64_t parsed = 0;
    try {
        parsed = std::stoull(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(fmt::format("{}: expected a non-negative integer, got '{}'", field, s));
    }
    if (pos != s.size()) {
        throw std::invalid_argument(fmt::format("{}: trailing characters in '{}'", field, s));
    }
    return parsed;
}

}  // namespace

double parse_angle(std::string_view text) {
    const std::string s(trim(text));
    if (s == "pi/2") return std::numbers::pi / 2.0;
    if (s == "pi/3") return std::numbers::pi / 3.0;
    if (s == "pi/4") return std::numbers::pi / 4.0;
    if (s == "pi/6") return std::numbers::pi / 6.0;
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(
            fmt::format("theta: expected radians or one of pi/2, pi/3, pi/4, pi/6, got '{}'", s));
    }
    if (pos != s.size()) {
        throw std::invalid_argument(fmt::format("theta: trailing characters in '{}'", s));
    }
    return value;
}

void ScenarioConfig::validate() const {
    if (scenario != "wigner" && scenario != "necker") {
        throw std::invalid_argument(fmt::format("scenario: must be 'wigner' or 'necker', got '{}'", scenario));
    }
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
        throw std::invalid_argument(fmt::format("theta: {:.17g} must lie in (0, pi)", theta));
    }
    if (model != "unitary" && model != "collapse") {
        throw std::invalid_argument(fmt::format("model: must be 'unitary' or 'collapse', got '{}'", model));
    }
    if (model == "collapse" && collapse_step.empty()) {
        throw std::invalid_argument("collapse_step: required when model=collapse");
    }
    if (model == "unitary" && !collapse_step.empty()) {
        throw std::invalid_argument("collapse_step: only meaningful with model=collapse");
    }
    if (n_trajectories < 1) {
        throw std::invalid_argument("n_trajectories: must be >= 1");
    }
    if (output != "json" && output != "csv" && output != "text") {
        throw std::invalid_argument(fmt::format("output: must be json, csv or text, got '{}'", output));
    }
    if (query != "definite" && query != "which") {
        throw std::invalid_argument(fmt::format("query: must be 'definite' or 'which', got '{}'", query));
    }
}

ScenarioConfig default_config() {
    ScenarioConfig config;
    config.theta = std::numbers::pi / 2.0;
    return config;
}

ScenarioConfig parse_scenario_text(std::string_view text) {
    ScenarioConfig config = default_config();
    std::istringstream stream{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument(
                fmt::format("config: line {} is not a 'key = value' pair: '{}'", line_no, line));
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));

        if (key == "scenario") {
            config.scenario = value;
        } else if (key == "theta" || key == "omega_t") {
            config.theta = parse_angle(value);
        } else if (key == "model") {
            config.model = value;
        } else if (key == "collapse_step") {
            config.collapse_step = value;
        } else if (key == "n_trajectories") {
            config.n_trajectories = static_cast<std::size_t>(parse_u64(key, value));
        } else if (key == "master_seed") {
            config.master_seed = parse_u64(key, value);
        } else if (key == "output") {
            config.output = value;
        } else if (key == "query") {
            config.query = value;
        } else {
            throw std::invalid_argument(fmt::format("config: unknown key '{}' on line {}", key, line_no));
        }
    }
    if (config.model == "collapse" && config.collapse_step.empty() && config.scenario == "wigner") {
        config.collapse_step = "bob_observes";
    }
    return config;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::invalid_argument(fmt::format("config: cannot read file '{}'", path));
    }
    std::ostringstream contents;
    contents << file.rdbuf();
    return parse_scenario_text(contents.str());
}

std::string to_scenario_text(const ScenarioConfig& config) {
    std::string text;
    text += fmt::format("scenario = {}\n", config.scenario);
    text += fmt::format("theta = {:.17g}\n", config.theta);
    text += fmt::format("model = {}\n", config.model);
    if (!config.collapse_step.empty()) text += fmt::format("collapse_step = {}\n", config.collapse_step);
    text += fmt::format("n_trajectories = {}\n", config.n_trajectories);
    text += fmt::format("master_seed = {}\n", config.master_seed);
    text += fmt::format("output = {}\n", config.output);
    text += fmt::format("query = {}\n", config.query);
    return text;
}

ProtocolScript make_script(const ScenarioConfig& config) {
    config.validate();
    if (config.scenario == "wigner") {
        WignerOptions options{config.theta};
        options.which_query = (config.query == "which");
        return build_wigner_script(options);
    }
    return build_necker_script(config.theta, /*undo=*/config.query != "which");
}

DynamicsModel make_model(const ScenarioConfig& config, const ProtocolScript& script) {
    if (config.model == "unitary") return DynamicsModel::unitary_only();
    const ProtocolStep* step = script.find_step(config.collapse_step);
    if (step == nullptr || step->kind != StepKind::collapse_point) {
        throw std::invalid_argument(
            fmt::format("collapse_step: no collapse point labeled '{}' in the {} script", config.collapse_step,
                        config.scenario));
    }
    return DynamicsModel::collapse_at(step->label, step->subsystem);
}

}  // namespace wfsim
