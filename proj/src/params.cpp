#include "fhr/params.hpp"

#include <cmath>

#include "fhr/errors.hpp"

namespace fhr {

void ModelParams::validate() const {
    const std::pair<const char*, double> fields[] = {{"D", D},         {"a", a}, {"eps", eps}, {"beta", beta},
                                                     {"c", c},         {"delta", delta},  {"d", d},
                                                     {"h", h}};
    for (const auto& [name, value] : fields) {
        if (!std::isfinite(value)) throw ConfigError(name, "must be finite");
    }
    if (!(D > 0.0)) throw ConfigError("D", "diffusion coefficient must be positive");
    if (!(beta > 0.0)) throw ConfigError("beta", "must be positive");
    if (!(d > 0.0)) throw ConfigError("d", "must be positive");
    if (eps < 0.0) throw ConfigError("eps", "must be non-negative");
    if (delta < 0.0) throw ConfigError("delta", "must be non-negative");
}

std::vector<std::string> ModelParams::warnings() const {
    std::vector<std::string> out;
    if (!(a > 0.0 && a < 1.0)) out.emplace_back("a outside the excitable range 0 < a < 1");
    return out;
}

}  // namespace fhr
