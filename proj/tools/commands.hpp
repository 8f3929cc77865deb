#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace volkov::cli {

struct NumberOption {
    std::string name;
    double value = 0.0;
    std::string help;
    bool flag = false;  // on/off switch stored as 0 or 1
};

struct TextOption {
    std::string name;
    std::string value;
    std::string help;
    std::vector<std::string> choices;  // empty: free text
};

/// Resolved parameter set of one run.
struct Params {
    std::map<std::string, double> numbers;
    std::map<std::string, std::string> texts;

    double num(const std::string& name) const;
    /// Rejects values that are not integers in [lo, hi].
    int integer(const std::string& name, int lo, int hi) const;
    bool flag(const std::string& name) const { return num(name) != 0.0; }
    const std::string& text(const std::string& name) const;
};

struct RunOutput {
    std::vector<std::string> artifacts;
    nlohmann::ordered_json grid;
    nlohmann::ordered_json tolerances = nlohmann::ordered_json::object();
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
};

struct Command {
    std::string name;
    std::string help;
    std::vector<NumberOption> numbers;
    std::vector<TextOption> texts;
    std::function<RunOutput(const Params&, const std::filesystem::path&)> run;

    Params defaults() const;
};

const std::vector<Command>& commands();
const Command& find_command(const std::string& name);

}  // namespace volkov::cli
