#pragma once

#include <complex>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtomo {

using cplx = std::complex<double>;

struct UniformGrid {
    double min = 0.0;
    double max = 1.0;
    std::size_t count = 2;

    double spacing() const { return (max - min) / static_cast<double>(count - 1); }
    double point(std::size_t i) const { return min + spacing() * static_cast<double>(i); }

    void validate() const {
        if (count < 2) throw std::invalid_argument("UniformGrid: count must be >= 2");
        if (!(max > min)) throw std::invalid_argument("UniformGrid: max must exceed min");
        if (!std::isfinite(min) || !std::isfinite(max))
            throw std::invalid_argument("UniformGrid: bounds must be finite");
    }

    bool operator==(const UniformGrid& o) const {
        return min == o.min && max == o.max && count == o.count;
    }
};

inline UniformGrid make_grid(double min, double max, std::size_t count) {
    UniformGrid g{min, max, count};
    g.validate();
    return g;
}

template <typename T>
struct Samples {
    UniformGrid grid;
    std::vector<T> values;

    void validate() const {
        grid.validate();
        if (values.size() != grid.count)
            throw std::invalid_argument("Samples: value count does not match grid");
        for (const T& v : values)
            if (!std::isfinite(std::abs(v)))
                throw std::invalid_argument("Samples: non-finite value");
    }
};

using RealSamples = Samples<double>;
using ComplexSamples = Samples<cplx>;

// Trapezoid rule over the sample grid.
template <typename T>
T integrate(const Samples<T>& s) {
    s.validate();
    const double h = s.grid.spacing();
    T acc = (s.values.front() + s.values.back()) * 0.5;
    for (std::size_t i = 1; i + 1 < s.values.size(); ++i) acc += s.values[i];
    return acc * h;
}

// Trapezoid weight of node i on an npt grid with spacing h.
inline double trapezoid_weight(std::size_t i, std::size_t npt, double h) {
    return (i == 0 || i + 1 == npt) ? 0.5 * h : h;
}

// Linear interpolation of samples at x; zero outside the grid.
inline double interp_linear(const UniformGrid& g, const std::vector<double>& v, double x) {
    const double t = (x - g.min) / g.spacing();
    if (t < 0.0 || t > static_cast<double>(g.count - 1)) return 0.0;
    const std::size_t i = std::min(static_cast<std::size_t>(t), g.count - 2);
    const double f = t - static_cast<double>(i);
    return v[i] * (1.0 - f) + v[i + 1] * f;
}

} // namespace qtomo
