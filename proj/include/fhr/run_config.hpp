#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fhr/grid.hpp"
#include "fhr/kernels.hpp"
#include "fhr/params.hpp"

namespace fhr::cli {

enum class Command { kernel, verify, solve, wave, sweep };

const char* to_string(Command c);
/// Throws ConfigError("command", ...) for an unknown name.
Command parse_command(const std::string& name);

/// Flat "section.key" -> value map holding every known key. Values are kept as the text
/// given so that the resolved config round-trips byte for byte.
class Settings {
public:
    /// Every key with its default value.
    static Settings defaults();

    /// Throws ConfigError for an unknown key.
    void set(const std::string& key, const std::string& value);
    const std::string& get(const std::string& key) const;
    bool has(const std::string& key) const;

    double number(const std::string& key) const;
    int integer(const std::string& key) const;
    bool flag(const std::string& key) const;
    std::vector<double> numbers(const std::string& key) const;
    std::vector<std::string> words(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

    /// "section.key = value" lines in key order.
    std::string canonical() const;

private:
    std::map<std::string, std::string> values_;
};

/// Key = value text with [section] headers; '#' and ';' start comments. Lines of the form
/// "#@ section.key = value" (as written into every output) are read as settings, and when
/// any are present all other lines are ignored, so an output file reproduces its run.
Settings load_settings(std::istream& in, const std::string& source);
Settings load_settings_file(const std::string& path);

/// "section.key=value".
void apply_override(Settings& s, const std::string& assignment);

/// Named analytic profile: gaussian(amplitude, width, center), constant(v) or zero.
/// gaussian is amplitude exp(-((x - center) / width)^2).
std::function<double(double)> parse_profile(const std::string& spec, const std::string& field);

kernels::KernelForm parse_form(const std::string& text, const std::string& field);

struct RunConfig {
    Command command = Command::verify;
    ModelParams params;
    Grid1D grid;
    std::string output_path;  // empty: standard output
    Settings settings;
};

/// Builds and validates the run; every problem is a ConfigError naming the field.
RunConfig resolve(Command command, const Settings& settings);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);

}  // namespace fhr::cli
