// fhr <command> [--config path] [--out path] [--override section.key=value ...]

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fhr/commands.hpp"
#include "fhr/errors.hpp"
#include "fhr/run_config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"FitzHugh-Rinzel kernels, solvers and travelling waves"};
    std::string command;
    std::string config_path;
    std::string out_path;
    std::vector<std::string> overrides;
    app.add_option("command", command, "kernel | verify | solve | wave | sweep")
        ->required()
        ->check(CLI::IsMember({"kernel", "verify", "solve", "wave", "sweep"}));
    app.add_option("--config", config_path, "key = value config with [section] headers");
    app.add_option("--out", out_path, "CSV output path (default: output.path, else stdout)");
    app.add_option("--override", overrides, "section.key=value, applied after the config file");
    CLI11_PARSE(app, argc, argv);

    try {
        using namespace fhr::cli;
        Settings s = config_path.empty() ? Settings::defaults() : load_settings_file(config_path);
        for (const auto& o : overrides) apply_override(s, o);
        if (!out_path.empty()) s.set("output.path", out_path);
        const RunConfig rc = resolve(parse_command(command), s);

        // Buffer so a failed run leaves no partial file behind.
        std::ostringstream buf;
        const int code = run_command(rc, buf);
        if (rc.output_path.empty()) {
            std::cout << buf.str();
        } else {
            std::ofstream f(rc.output_path, std::ios::binary);
            if (!f) throw fhr::IoError("cannot write '" + rc.output_path + "'");
            f << buf.str();
            if (!f) throw fhr::IoError("write failed for '" + rc.output_path + "'");
            std::cerr << "wrote " << rc.output_path << "\n";
        }
        return code;
    } catch (const fhr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const fhr::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 2;
    } catch (const fhr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
