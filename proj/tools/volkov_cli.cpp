// Batch driver: one subcommand per module, CSV/JSON artifacts and a run
// manifest per run. Exit codes: 0 success, 1 I/O or internal failure,
// 2 validation, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "manifest.hpp"
#include "volkov/parallel.hpp"
#include "volkov/spinor.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace volkov;
using namespace volkov::cli;

namespace {

constexpr int manifest_version = 1;

struct Failure {
    int code;
    std::string kind;
    std::string message;
};

Failure classify(const std::exception_ptr& error) {
    try {
        std::rethrow_exception(error);
    } catch (const ValidationError& e) {
        return {2, "validation", e.what()};
    } catch (const NumericalError& e) {
        return {3, "numerical", e.what()};
    } catch (const std::exception& e) {
        return {1, "internal", e.what()};
    }
}

void report(const Failure& f) {
    json line = {{"error", f.kind}, {"exit_code", f.code}, {"message", f.message}};
    std::cerr << line.dump() << std::endl;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_flag(const Command& cmd, const std::string& name) {
    for (const auto& o : cmd.numbers) {
        if (o.name == name) return o.flag;
    }
    return false;
}

/// Assigns `value` to parameter `name`, checking that it exists and parses.
void assign(const Command& cmd, Params& params, const std::string& name, const std::string& value,
            const std::string& origin) {
    if (params.numbers.contains(name)) {
        if (is_flag(cmd, name)) {
            if (value == "true" || value == "1" || value == "on") {
                params.numbers[name] = 1.0;
            } else if (value == "false" || value == "0" || value == "off") {
                params.numbers[name] = 0.0;
            } else {
                throw ValidationError(origin + ": flag " + name + " expects true or false, got '" + value + "'");
            }
            return;
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size()) {
            throw ValidationError(origin + ": " + name + " expects a number, got '" + value + "'");
        }
        params.numbers[name] = v;
        return;
    }
    if (params.texts.contains(name)) {
        for (const auto& o : cmd.texts) {
            if (o.name != name || o.choices.empty()) continue;
            if (std::find(o.choices.begin(), o.choices.end(), value) == o.choices.end()) {
                throw ValidationError(origin + ": " + name + " does not accept '" + value + "'");
            }
        }
        params.texts[name] = value;
        return;
    }
    throw ValidationError(origin + ": unknown parameter '" + name + "' for command " + cmd.name);
}

/// Flat `key = value` lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file " + path.string());
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        }
        entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return entries;
}

struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

/// name=v1,v2,... or name=lo:hi:count
SweepAxis parse_sweep(const Command& cmd, const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ValidationError("--sweep expects name=values, got '" + text + "'");
    SweepAxis axis{trim(text.substr(0, eq)), {}};
    const std::string rhs = trim(text.substr(eq + 1));
    const auto defaults = cmd.defaults();
    if (!defaults.numbers.contains(axis.name) || is_flag(cmd, axis.name)) {
        throw ValidationError("--sweep: '" + axis.name + "' is not a numeric parameter of " + cmd.name);
    }
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw ValidationError("--sweep: cannot parse '" + s + "'");
        return v;
    };
    if (std::count(rhs.begin(), rhs.end(), ':') == 2) {
        std::stringstream ss(rhs);
        std::string lo, hi, count;
        std::getline(ss, lo, ':');
        std::getline(ss, hi, ':');
        std::getline(ss, count);
        const double a = number(lo), b = number(hi), c = number(count);
        if (!(c >= 1) || c != std::floor(c)) throw ValidationError("--sweep: range count must be a positive integer");
        const int n = static_cast<int>(c);
        for (int i = 0; i < n; ++i) axis.values.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    } else {
        std::stringstream ss(rhs);
        std::string item;
        while (std::getline(ss, item, ',')) axis.values.push_back(number(trim(item)));
    }
    if (axis.values.empty()) throw ValidationError("--sweep: no values for " + axis.name);
    return axis;
}

json parameters_json(const Command& cmd, const Params& params) {
    json j = json::object();
    for (const auto& o : cmd.numbers) {
        const double v = params.num(o.name);
        if (o.flag) {
            j[o.name] = v != 0.0;
        } else if (std::isnan(v)) {
            j[o.name] = nullptr;
        } else {
            j[o.name] = v;
        }
    }
    for (const auto& o : cmd.texts) j[o.name] = params.text(o.name);
    return j;
}

std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string rerun_line(const Command& cmd, const Params& params) {
    std::ostringstream os;
    os << "volkov " << cmd.name;
    for (const auto& o : cmd.numbers) {
        const double v = params.num(o.name);
        if (o.flag) {
            if (v != 0.0) os << " --" << o.name;
        } else if (!std::isnan(v)) {
            os << " --" << o.name << ' ' << format_number(v);
        }
    }
    for (const auto& o : cmd.texts) os << " --" << o.name << " '" << params.text(o.name) << "'";
    return os.str();
}

std::string units_for(const Command& cmd) {
    if (cmd.name == "barrier") return "hbar = 1, particle mass 1/2 (k = sqrt(E)); energies and heights share one unit";
    return "natural units hbar = c = 1; energies, momenta, frequencies and field amplitudes in units of m; "
           "times and lengths in units of 1/m";
}

/// Runs one scenario into `dir` and writes its manifest. Returns the summary.
json run_one(const Command& cmd, const Params& params, const fs::path& dir) {
    fs::create_directories(dir);
    const auto start = std::chrono::steady_clock::now();
    RunOutput output = cmd.run(params, dir);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json manifest = {{"format_version", manifest_version},
                     {"command", cmd.name},
                     {"parameters", parameters_json(cmd, params)},
                     {"units", units_for(cmd)},
                     {"grid", output.grid},
                     {"tolerances", output.tolerances},
                     {"threads", thread_count()},
                     {"wall_time_s", wall},
                     {"artifacts", artifact_hashes(dir, output.artifacts)},
                     {"summary", output.summary},
                     {"rerun", rerun_line(cmd, params)}};
    std::ofstream os(dir / "manifest.json");
    if (!os) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
    os << manifest.dump(2) << '\n';
    return output.summary;
}

Params params_from_manifest(const Command& cmd, const json& parameters) {
    Params params = cmd.defaults();
    for (const auto& [key, value] : parameters.items()) {
        if (value.is_null()) {
            if (!params.numbers.contains(key)) throw ValidationError("manifest: unexpected null for " + key);
            params.numbers[key] = std::numeric_limits<double>::quiet_NaN();
        } else if (value.is_boolean()) {
            assign(cmd, params, key, value.get<bool>() ? "true" : "false", "manifest");
        } else if (value.is_number()) {
            if (!params.numbers.contains(key)) throw ValidationError("manifest: unknown parameter " + key);
            params.numbers[key] = value.get<double>();
        } else if (value.is_string()) {
            assign(cmd, params, key, value.get<std::string>(), "manifest");
        } else {
            throw ValidationError("manifest: unsupported value for " + key);
        }
    }
    return params;
}

int execute(const Command& cmd, const Params& base, const std::vector<std::string>& sweep_specs,
            const fs::path& out) {
    if (sweep_specs.empty()) {
        const json summary = run_one(cmd, base, out);
        std::cout << summary.dump() << std::endl;
        return 0;
    }

    std::vector<SweepAxis> axes;
    for (const auto& s : sweep_specs) axes.push_back(parse_sweep(cmd, s));
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.values.size();

    std::vector<Params> runs(total, base);
    for (std::size_t r = 0; r < total; ++r) {
        std::size_t rest = r;
        for (auto a = axes.rbegin(); a != axes.rend(); ++a) {
            runs[r].numbers[a->name] = a->values[rest % a->values.size()];
            rest /= a->values.size();
        }
    }
    auto dir_name = [](std::size_t r) {
        std::ostringstream os;
        os << "run_" << std::setw(3) << std::setfill('0') << r;
        return os.str();
    };

    std::vector<json> summaries(total);
    std::vector<std::optional<Failure>> failures(total);
    parallel_for(total, [&](std::size_t r) {
        try {
            summaries[r] = run_one(cmd, runs[r], out / dir_name(r));
        } catch (...) {
            failures[r] = classify(std::current_exception());
        }
    });

    json index = {{"format_version", manifest_version}, {"command", cmd.name}, {"sweep", json::array()}};
    for (const auto& a : axes) index["sweep"].push_back({{"name", a.name}, {"values", a.values}});
    index["runs"] = json::array();
    int code = 0;
    for (std::size_t r = 0; r < total; ++r) {
        json entry = {{"dir", dir_name(r)}, {"overrides", json::object()}};
        for (const auto& a : axes) entry["overrides"][a.name] = runs[r].num(a.name);
        if (failures[r]) {
            entry["error"] = {{"kind", failures[r]->kind}, {"exit_code", failures[r]->code},
                              {"message", failures[r]->message}};
            if (code == 0) code = failures[r]->code;
        } else {
            entry["summary"] = summaries[r];
        }
        index["runs"].push_back(entry);
    }
    fs::create_directories(out);
    std::ofstream os(out / "sweep.json");
    os << index.dump(2) << '\n';
    std::cout << json({{"runs", total}, {"failed", std::count_if(failures.begin(), failures.end(),
                                                                  [](const auto& f) { return f.has_value(); })}})
                     .dump()
              << std::endl;
    for (const auto& f : failures) {
        if (f) {
            report(*f);
            break;
        }
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Volkov-state numerics: evaluation, mode expansion, frequency separation, Born series, "
                 "zitterbewegung and barrier scattering"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out = "volkov_out";
    std::string config;
    std::vector<std::string> sweeps;
    int threads = 0;
    app.add_option("--out", out, "output directory")->capture_default_str();
    app.add_option("--config", config, "flat key = value parameter file");
    app.add_option("--threads", threads, "worker threads (default: VOLKOV_THREADS or 1)")
        ->check(CLI::Range(1, 1024));
    app.add_option("--sweep", sweeps, "name=v1,v2,... or name=lo:hi:count; repeat for a cartesian product")
        ->take_all();

    struct Bound {
        const Command* cmd;
        CLI::App* sub;
        std::map<std::string, double> numbers;
        std::map<std::string, bool> flags;
        std::map<std::string, std::string> texts;
        std::map<std::string, CLI::Option*> options;
    };
    std::vector<std::unique_ptr<Bound>> bound;
    for (const auto& cmd : commands()) {
        auto b = std::make_unique<Bound>();
        b->cmd = &cmd;
        b->sub = app.add_subcommand(cmd.name, cmd.help);
        for (const auto& o : cmd.numbers) {
            if (o.flag) {
                b->flags[o.name] = false;
                b->options[o.name] = b->sub->add_flag("--" + o.name, b->flags[o.name], o.help);
            } else {
                b->numbers[o.name] = o.value;
                auto* opt = b->sub->add_option("--" + o.name, b->numbers[o.name], o.help);
                if (!std::isnan(o.value)) opt->capture_default_str();
                b->options[o.name] = opt;
            }
        }
        for (const auto& o : cmd.texts) {
            b->texts[o.name] = o.value;
            auto* opt = b->sub->add_option("--" + o.name, b->texts[o.name], o.help)->capture_default_str();
            if (!o.choices.empty()) opt->check(CLI::IsMember(o.choices));
            b->options[o.name] = opt;
        }
        bound.push_back(std::move(b));
    }
    std::string manifest_path;
    auto* replay = app.add_subcommand("replay", "re-run the scenario recorded in a manifest");
    replay->add_option("--manifest", manifest_path, "manifest.json of an earlier run")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report({2, "validation", e.what()});
        return 2;
    }

    try {
        if (threads > 0) set_thread_count(threads);

        if (replay->parsed()) {
            std::ifstream in(manifest_path);
            if (!in) throw ValidationError("cannot read manifest " + manifest_path);
            json manifest;
            try {
                manifest = json::parse(in);
            } catch (const json::exception& e) {
                throw ValidationError("manifest is not valid JSON: " + std::string(e.what()));
            }
            const Command& cmd = find_command(manifest.at("command").get<std::string>());
            const Params params = params_from_manifest(cmd, manifest.at("parameters"));
            return execute(cmd, params, {}, out);
        }

        for (const auto& b : bound) {
            if (!b->sub->parsed()) continue;
            const Command& cmd = *b->cmd;
            Params params = cmd.defaults();
            auto given = [&](const std::string& name) { return b->options.at(name)->count() > 0; };
            if (!config.empty()) {
                for (const auto& [key, value] : read_config(config)) {
                    if (b->options.contains(key) && given(key)) continue;
                    assign(cmd, params, key, value, config);
                }
            }
            for (const auto& [name, v] : b->numbers) {
                if (given(name)) params.numbers[name] = v;
            }
            for (const auto& [name, v] : b->flags) {
                if (given(name)) params.numbers[name] = v ? 1.0 : 0.0;
            }
            for (const auto& [name, v] : b->texts) {
                if (given(name)) params.texts[name] = v;
            }
            return execute(cmd, params, sweeps, out);
        }
    } catch (...) {
        const Failure f = classify(std::current_exception());
        report(f);
        return f.code;
    }
    return 0;
}
