#include "fhr/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fhr/errors.hpp"

namespace fhr {

void Grid1D::validate() const {
    if (!std::isfinite(x_min) || !std::isfinite(x_max)) throw ConfigError("grid.x_min", "window must be finite");
    if (!(x_max > x_min)) throw ConfigError("grid.x_max", "must exceed x_min");
    if (nx < 3) throw ConfigError("grid.nx", "need at least 3 spatial nodes");
    if (nt < 2) throw ConfigError("grid.nt", "need at least 2 time steps");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("grid.t_max", "horizon must be positive");
}

bool Grid1D::zero_is_node() const {
    const double k = -x_min / dx();
    return std::abs(k - std::round(k)) < 1e-9 && std::round(k) >= 0 && std::round(k) <= nx - 1;
}

int Grid1D::zero_index() const {
    if (!zero_is_node()) throw ShapeError("grid has no node at x = 0");
    return static_cast<int>(std::lround(-x_min / dx()));
}

SampledField::SampledField(const Grid1D& grid, double fill)
    : grid_(grid), data_(static_cast<std::size_t>(grid.nt + 1) * grid.nx, fill) {}

void SampledField::require_same_grid(const SampledField& other, const char* what) const {
    if (!(grid_ == other.grid_) || data_.size() != other.data_.size()) {
        throw ShapeError(std::string(what) + ": fields live on different grids");
    }
}

void SampledField::require_finite(const char* what) const {
    for (std::size_t k = 0; k < data_.size(); ++k) {
        if (!std::isfinite(data_[k])) {
            std::ostringstream msg;
            msg << what << ": non-finite entry at row " << k / grid_.nx << ", column " << k % grid_.nx;
            throw DomainError(msg.str());
        }
    }
}

double SampledField::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double trapezoid(std::span<const double> values, double dx) {
    if (values.empty()) return 0.0;
    double s = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
    return s * dx;
}

double max_abs_diff(const SampledField& a, const SampledField& b, int first_row) {
    a.require_same_grid(b, "max_abs_diff");
    double m = 0.0;
    for (int n = first_row; n < a.rows(); ++n) {
        for (int i = 0; i < a.cols(); ++i) m = std::max(m, std::abs(a(n, i) - b(n, i)));
    }
    return m;
}

double relative_l2(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ShapeError("relative_l2: length mismatch");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : std::sqrt(num);
    return std::sqrt(num / den);
}

}  // namespace fhr
