#include "sqz/spectrum.hpp"

#include "sqz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sqz {

NoiseSpectrum::NoiseSpectrum() : fn_([](double) { return 1.0; }) {}

NoiseSpectrum::NoiseSpectrum(Function fn, std::vector<double> breakpoints)
    : fn_(std::move(fn)), breakpoints_(std::move(breakpoints)) {
    std::sort(breakpoints_.begin(), breakpoints_.end());
}

NoiseSpectrum NoiseSpectrum::constant(double value) {
    return NoiseSpectrum([value](double) { return value; });
}

NoiseSpectrum NoiseSpectrum::tabulated(std::vector<double> freqs, std::vector<double> values) {
    if (freqs.empty() || freqs.size() != values.size())
        throw DomainError("tabulated spectrum needs matching, nonempty grids");
    for (std::size_t i = 1; i < freqs.size(); ++i) {
        if (!(freqs[i] > freqs[i - 1]))
            throw DomainError("tabulated spectrum frequencies must be strictly ascending");
    }
    auto f = std::make_shared<const std::vector<double>>(freqs);
    auto v = std::make_shared<const std::vector<double>>(values);
    NoiseSpectrum out([f, v](double x) {
        const auto& fs = *f;
        const auto& vs = *v;
        if (x <= fs.front()) return vs.front();
        if (x >= fs.back()) return vs.back();
        const auto it = std::upper_bound(fs.begin(), fs.end(), x);
        const std::size_t hi = static_cast<std::size_t>(it - fs.begin());
        const std::size_t lo = hi - 1;
        const double t = (x - fs[lo]) / (fs[hi] - fs[lo]);
        return vs[lo] + t * (vs[hi] - vs[lo]);
    });
    out.freqs_ = std::move(freqs);
    out.values_ = std::move(values);
    return out;
}

std::vector<double> NoiseSpectrum::sample(std::span<const double> freqs) const {
    std::vector<double> out(freqs.size());
    std::transform(freqs.begin(), freqs.end(), out.begin(), fn_);
    return out;
}

NoiseSpectrum NoiseSpectrum::scaled(double factor) const {
    if (is_tabulated()) {
        std::vector<double> v = values_;
        for (double& x : v) x *= factor;
        return tabulated(freqs_, std::move(v));
    }
    return NoiseSpectrum([fn = fn_, factor](double f) { return factor * fn(f); }, breakpoints_);
}

NoiseSpectrum NoiseSpectrum::plus(const NoiseSpectrum& other) const {
    std::vector<double> bp = breakpoints_;
    bp.insert(bp.end(), other.breakpoints_.begin(), other.breakpoints_.end());
    return NoiseSpectrum([a = fn_, b = other.fn_](double f) { return a(f) + b(f); },
                         std::move(bp));
}

void PiecewiseSpectrum::validate() const {
    if (breakpoints.size() != values.size())
        throw DomainError("piecewise spectrum needs one value per breakpoint segment");
    double prev = 0.0;
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > prev)) {
            std::ostringstream os;
            os << "piecewise breakpoints must be positive and ascending (index " << i << ")";
            throw DomainError(os.str());
        }
        prev = breakpoints[i];
        if (!(values[i] > 0.0)) throw DomainError("piecewise values must be positive");
    }
    if (!(tail_value > 0.0)) throw DomainError("piecewise tail value must be positive");
}

double PiecewiseSpectrum::operator()(double freq_hz) const {
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), freq_hz);
    if (it == breakpoints.end()) return tail_value;
    return values[static_cast<std::size_t>(it - breakpoints.begin())];
}

NoiseSpectrum PiecewiseSpectrum::to_spectrum() const {
    validate();
    return NoiseSpectrum([copy = *this](double f) { return copy(f); }, breakpoints);
}

}  // namespace sqz
