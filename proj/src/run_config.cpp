#include "fhr/run_config.hpp"

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fhr/errors.hpp"

namespace fhr::cli {

namespace {

const std::pair<const char*, const char*> kDefaults[] = {
    {"model.D", "1"},
    {"model.a", "0.5"},
    {"model.eps", "1"},
    {"model.beta", "1"},
    {"model.c", "0"},
    {"model.delta", "1"},
    {"model.d", "1"},
    {"model.h", "0"},
    {"grid.x_min", "-20"},
    {"grid.x_max", "20"},
    {"grid.nx", "401"},
    {"grid.t_max", "1"},
    {"grid.nt", "200"},
    {"output.path", ""},
    {"kernel.form", "literal"},
    {"kernel.x_min", "1"},
    {"kernel.x_max", "1"},
    {"kernel.nx", "1"},
    {"kernel.t_min", "1"},
    {"kernel.t_max", "1"},
    {"kernel.nt", "1"},
    {"kernel.abs_tol", "1e-10"},
    {"kernel.rel_tol", "1e-9"},
    {"verify.form", "fundamental"},
    {"verify.suites", "laplace, operator, small_time, h2_bound, mass, identities"},
    {"verify.fault", "none"},
    {"solve.form", "fundamental"},
    {"solve.u0", "gaussian(0.1, 1, 0)"},
    {"solve.w0", "zero"},
    {"solve.y0", "zero"},
    {"solve.tol", "1e-8"},
    {"solve.max_iter", "50"},
    {"solve.blowup_cap", "1e6"},
    {"solve.fd_refine_x", "2"},
    {"solve.fd_refine_t", "4"},
    {"solve.boundary", "zero_flux"},
    {"solve.theta", "0.5"},
    {"solve.slices", "4"},
    {"wave.D", "0.02, 0.05, 0.5"},
    {"wave.family", "true"},
    {"wave.k", "0.01"},
    {"wave.C", "1"},
    {"wave.z0", "0"},
    {"wave.sign_A", "1"},
    {"wave.z_min", "-10"},
    {"wave.z_max", "10"},
    {"wave.nz", "201"},
    {"sweep.param", "D"},
    {"sweep.values", "0.5, 1, 2"},
    {"sweep.x", "1"},
    {"sweep.t", "1"},
    {"sweep.form", "literal"},
};

std::string trim(std::string s) {
    boost::algorithm::trim(s);
    return s;
}

double to_number(const std::string& text, const std::string& field) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError(field, "expected a number, got '" + text + "'");
    }
    if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

}  // namespace

const char* to_string(Command c) {
    switch (c) {
        case Command::kernel: return "kernel";
        case Command::verify: return "verify";
        case Command::solve: return "solve";
        case Command::wave: return "wave";
        case Command::sweep: return "sweep";
    }
    return "?";
}

Command parse_command(const std::string& name) {
    for (Command c : {Command::kernel, Command::verify, Command::solve, Command::wave, Command::sweep}) {
        if (name == to_string(c)) return c;
    }
    throw ConfigError("command", "unknown command '" + name + "'");
}

Settings Settings::defaults() {
    Settings s;
    for (const auto& [k, v] : kDefaults) s.values_[k] = v;
    return s;
}

void Settings::set(const std::string& key, const std::string& value) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(key, "unknown key");
    it->second = trim(value);
}

const std::string& Settings::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(key, "unknown key");
    return it->second;
}

bool Settings::has(const std::string& key) const { return values_.count(key) != 0; }

double Settings::number(const std::string& key) const { return to_number(get(key), key); }

int Settings::integer(const std::string& key) const {
    const double v = number(key);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key, "expected an integer");
    return static_cast<int>(v);
}

bool Settings::flag(const std::string& key) const {
    const std::string& v = get(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key, "expected true or false, got '" + v + "'");
}

std::vector<double> Settings::numbers(const std::string& key) const {
    std::vector<double> out;
    for (const auto& w : split(get(key), ',')) out.push_back(to_number(w, key));
    if (out.empty()) throw ConfigError(key, "expected a comma-separated list of numbers");
    return out;
}

std::vector<std::string> Settings::words(const std::string& key) const { return split(get(key), ','); }

std::string Settings::canonical() const {
    std::string out;
    for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
    return out;
}

Settings load_settings(std::istream& in, const std::string& source) {
    std::stringstream plain;
    std::vector<std::string> embedded;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("#@", 0) == 0) {
            embedded.push_back(line.substr(2));
        } else {
            plain << line << '\n';
        }
    }
    Settings s = Settings::defaults();
    if (!embedded.empty()) {
        for (const auto& e : embedded) apply_override(s, e);
        return s;
    }
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(plain, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(source, e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError(section, "key outside a [section]");
        for (const auto& [key, value] : body) s.set(section + "." + key, value.data());
    }
    return s;
}

Settings load_settings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    return load_settings(in, path);
}

void apply_override(Settings& s, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError(trim(assignment), "override must read section.key=value");
    s.set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

std::function<double(double)> parse_profile(const std::string& spec, const std::string& field) {
    const std::string t = trim(spec);
    if (t == "zero") return [](double) { return 0.0; };
    const auto open = t.find('(');
    if (open == std::string::npos || t.back() != ')') {
        throw ConfigError(field, "expected gaussian(amplitude, width, center), constant(v) or zero");
    }
    const std::string name = trim(t.substr(0, open));
    std::vector<double> args;
    for (const auto& w : split(t.substr(open + 1, t.size() - open - 2), ',')) args.push_back(to_number(w, field));
    if (name == "constant" && args.size() == 1) {
        const double v = args[0];
        return [v](double) { return v; };
    }
    if (name == "gaussian" && args.size() == 3) {
        const double amp = args[0], width = args[1], center = args[2];
        if (!(width > 0.0)) throw ConfigError(field, "gaussian width must be positive");
        return [=](double x) {
            const double r = (x - center) / width;
            return amp * std::exp(-r * r);
        };
    }
    throw ConfigError(field, "unknown profile '" + t + "'");
}

kernels::KernelForm parse_form(const std::string& text, const std::string& field) {
    if (text == "literal") return kernels::KernelForm::literal;
    if (text == "fundamental") return kernels::KernelForm::fundamental;
    throw ConfigError(field, "expected literal or fundamental, got '" + text + "'");
}

RunConfig resolve(Command command, const Settings& s) {
    RunConfig rc;
    rc.command = command;
    rc.settings = s;
    ModelParams& p = rc.params;
    p.D = s.number("model.D");
    p.a = s.number("model.a");
    p.eps = s.number("model.eps");
    p.beta = s.number("model.beta");
    p.c = s.number("model.c");
    p.delta = s.number("model.delta");
    p.d = s.number("model.d");
    p.h = s.number("model.h");
    Grid1D& g = rc.grid;
    g.x_min = s.number("grid.x_min");
    g.x_max = s.number("grid.x_max");
    g.nx = s.integer("grid.nx");
    g.t_max = s.number("grid.t_max");
    g.nt = s.integer("grid.nt");
    rc.output_path = s.get("output.path");

    switch (command) {
        case Command::kernel: {
            p.validate();
            parse_form(s.get("kernel.form"), "kernel.form");
            if (s.integer("kernel.nx") < 1) throw ConfigError("kernel.nx", "must be at least 1");
            if (s.integer("kernel.nt") < 1) throw ConfigError("kernel.nt", "must be at least 1");
            if (!(s.number("kernel.t_min") > 0.0)) throw ConfigError("kernel.t_min", "kernels need t > 0");
            if (s.number("kernel.t_max") < s.number("kernel.t_min")) throw ConfigError("kernel.t_max", "below t_min");
            if (s.number("kernel.x_max") < s.number("kernel.x_min")) throw ConfigError("kernel.x_max", "below x_min");
            if (!(s.number("kernel.abs_tol") > 0.0)) throw ConfigError("kernel.abs_tol", "must be positive");
            if (!(s.number("kernel.rel_tol") > 0.0)) throw ConfigError("kernel.rel_tol", "must be positive");
            break;
        }
        case Command::verify: {
            p.validate();
            g.validate();
            parse_form(s.get("verify.form"), "verify.form");
            const std::string fault = s.get("verify.fault");
            if (fault != "none" && fault != "sigma") throw ConfigError("verify.fault", "expected none or sigma");
            for (const auto& w : s.words("verify.suites")) {
                if (w != "laplace" && w != "operator" && w != "small_time" && w != "h2_bound" && w != "mass" &&
                    w != "identities") {
                    throw ConfigError("verify.suites", "unknown suite '" + w + "'");
                }
            }
            if (!g.zero_is_node()) throw ConfigError("grid.x_min", "identity checks need a grid node at x = 0");
            break;
        }
        case Command::solve: {
            p.validate();
            g.validate();
            parse_form(s.get("solve.form"), "solve.form");
            for (const char* k : {"solve.u0", "solve.w0", "solve.y0"}) parse_profile(s.get(k), k);
            if (!(s.number("solve.tol") > 0.0)) throw ConfigError("solve.tol", "must be positive");
            if (s.integer("solve.max_iter") < 1) throw ConfigError("solve.max_iter", "must be at least 1");
            if (s.integer("solve.fd_refine_x") < 1) throw ConfigError("solve.fd_refine_x", "must be at least 1");
            if (s.integer("solve.fd_refine_t") < 1) throw ConfigError("solve.fd_refine_t", "must be at least 1");
            const int slices = s.integer("solve.slices");
            if (slices < 1 || g.nt % slices != 0) throw ConfigError("solve.slices", "must divide grid.nt");
            const std::string b = s.get("solve.boundary");
            if (b != "zero_flux" && b != "fixed_value") throw ConfigError("solve.boundary", "expected zero_flux or fixed_value");
            if (!g.zero_is_node()) throw ConfigError("grid.x_min", "the integral solver needs a grid node at x = 0");
            break;
        }
        case Command::wave: {
            for (double D : s.numbers("wave.D")) {
                if (!(D > 0.0)) throw ConfigError("wave.D", "diffusion coefficients must be positive");
            }
            s.flag("wave.family");
            if (s.number("wave.k") == 0.0) throw ConfigError("wave.k", "must be non-zero");
            if (s.number("wave.C") == 0.0) throw ConfigError("wave.C", "must be non-zero");
            const double sa = s.number("wave.sign_A");
            if (sa != 1.0 && sa != -1.0) throw ConfigError("wave.sign_A", "must be +1 or -1");
            if (s.integer("wave.nz") < 2) throw ConfigError("wave.nz", "must be at least 2");
            if (!(s.number("wave.z_max") > s.number("wave.z_min"))) throw ConfigError("wave.z_max", "must exceed z_min");
            break;
        }
        case Command::sweep: {
            const std::string param = s.get("sweep.param");
            if (!s.has("model." + param)) throw ConfigError("sweep.param", "unknown model parameter '" + param + "'");
            s.numbers("sweep.values");
            parse_form(s.get("sweep.form"), "sweep.form");
            if (!(s.number("sweep.t") > 0.0)) throw ConfigError("sweep.t", "kernels need t > 0");
            s.number("sweep.x");
            break;
        }
    }
    return rc;
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace fhr::cli
