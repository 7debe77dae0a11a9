#include "sqz/pulsed.hpp"

#include "parallel.hpp"
#include "sqz/detection.hpp"
#include "sqz/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <sstream>
#include <vector>

namespace sqz {

void PulsedWindow::validate() const {
    if (!(duration > 0.0) || !std::isfinite(duration))
        throw DomainError("pulsed window duration must be positive");
}

namespace {

// Gauss-Kronrod 7/15 nodes on [-1, 1].
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double sinc2(double u) {
    // sinc(pi u)^2 with u = nu * T
    const double x = std::numbers::pi * u;
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 45.0;
    }
    const double s = std::sin(x) / x;
    return s * s;
}

struct Integrand {
    const NoiseSpectrum& spectrum;
    double duration;

    // integrand in u = nu * T; sigma^2 = T * integral S(u/T) sinc^2(pi u) du
    double operator()(double u) const {
        const double nu = u / duration;
        const double s = spectrum(nu);
        if (!(s >= 0.0) || !std::isfinite(s)) {
            std::ostringstream os;
            os << "spectrum is negative or unbounded at " << nu << " Hz (" << s << ")";
            throw DomainError(os.str());
        }
        return s * sinc2(u);
    }
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

Estimate gauss_kronrod(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kWk[7];
    double gauss = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = h * kXk[j];
        const double fsum = f(c - dx) + f(c + dx);
        kronrod += kWk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    return {kronrod * h, std::abs((kronrod - gauss) * h), 15};
}

Estimate adaptive(const Integrand& f, double a, double b, double rel_tol, int depth) {
    Estimate whole = gauss_kronrod(f, a, b);
    if (depth <= 0 || whole.error <= std::max(rel_tol * std::abs(whole.value), 1e-300))
        return whole;
    const double m = 0.5 * (a + b);
    Estimate left = adaptive(f, a, m, rel_tol, depth - 1);
    Estimate right = adaptive(f, m, b, rel_tol, depth - 1);
    return {left.value + right.value, left.error + right.error,
            whole.evaluations + left.evaluations + right.evaluations};
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// pi/2 - Si(x) at x = 2 pi K, where the sine term of the auxiliary
// expansion vanishes and the cosine term is 1.
double sine_integral_tail(double x) {
    const double inv2 = 1.0 / (x * x);
    return (1.0 - 2.0 * inv2 + 24.0 * inv2 * inv2 - 720.0 * inv2 * inv2 * inv2) / x;
}

}  // namespace

PulsedReport pulsed_analysis(const NoiseSpectrum& spectrum, const PulsedWindow& w,
                             const QuadratureOptions& opt, Execution exec) {
    w.validate();
    if (opt.lobes < 10) throw DomainError("quadrature needs at least 10 lobes");
    const double T = w.duration;
    const Integrand f{spectrum, T};

    // breakpoints in lobe units
    std::vector<double> cuts;
    for (double bp : spectrum.breakpoints()) {
        const double u = bp * T;
        if (u > 0.0 && u < static_cast<double>(opt.lobes)) cuts.push_back(u);
    }
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> values(opt.lobes);
    std::vector<double> errors(opt.lobes);
    std::vector<std::size_t> evals(opt.lobes);
    detail::for_each_index(opt.lobes, exec, [&](std::size_t k) {
        const double lo = static_cast<double>(k);
        const double hi = lo + 1.0;
        auto first = std::upper_bound(cuts.begin(), cuts.end(), lo);
        double a = lo;
        Estimate acc;
        for (auto it = first; it != cuts.end() && *it < hi; ++it) {
            Estimate e = adaptive(f, a, *it, opt.lobe_rel_tol, opt.max_depth);
            acc = {acc.value + e.value, acc.error + e.error, acc.evaluations + e.evaluations};
            a = *it;
        }
        Estimate e = adaptive(f, a, hi, opt.lobe_rel_tol, opt.max_depth);
        values[k] = acc.value + e.value;
        errors[k] = acc.error + e.error;
        evals[k] = acc.evaluations + e.evaluations;
        if (!(errors[k] <= 1e-6 * std::abs(values[k]) + 1e-300)) {
            std::ostringstream os;
            os << "quadrature did not converge on lobe " << k << " (" << lo / T << " to "
               << hi / T << " Hz); the spectrum may be unbounded there";
            throw DomainError(os.str());
        }
    });

    PulsedReport r;
    const double body = T * pairwise_sum(values);
    r.error_estimate = T * pairwise_sum(errors);
    for (std::size_t e : evals) r.evaluations += e;

    // Tail: probe S over geometric steps beyond the last lobe and take the
    // midpoint of its range as the constant for the exact tail integral.
    const double nu_k = static_cast<double>(opt.lobes) / T;
    double s_lo = spectrum(nu_k);
    double s_hi = s_lo;
    for (int j = 1; j <= 40; ++j) {
        const double s = spectrum(nu_k * std::ldexp(1.0, j));
        if (!(s >= 0.0) || !std::isfinite(s))
            throw DomainError("spectrum is negative or unbounded in the quadrature tail");
        s_lo = std::min(s_lo, s);
        s_hi = std::max(s_hi, s);
    }
    r.evaluations += 41;
    const double kernel_tail =
        (T / std::numbers::pi) * sine_integral_tail(2.0 * std::numbers::pi * static_cast<double>(opt.lobes));
    r.tail = 0.5 * (s_lo + s_hi) * kernel_tail;
    r.error_estimate += 0.5 * (s_hi - s_lo) * kernel_tail;

    r.variance = body + r.tail;
    r.shot_variance = 0.5 * T;
    r.normalized = r.variance / r.shot_variance;
    if (!(r.variance > 0.0)) throw DomainError("pulsed variance is not positive");
    r.improvement_factor = r.shot_variance / r.variance;
    return r;
}

double pulsed_variance(const NoiseSpectrum& spectrum, const PulsedWindow& w) {
    return pulsed_analysis(spectrum, w).variance;
}

double improvement_factor(const NoiseSpectrum& spectrum, const PulsedWindow& w) {
    return pulsed_analysis(spectrum, w).improvement_factor;
}

PiecewiseSpectrum reference_piecewise_model() {
    return PiecewiseSpectrum{{50e3}, {1.0}, from_db(-3.0)};
}

NoiseSpectrum clamp_below_knee(const NoiseSpectrum& s, double knee_hz) {
    std::vector<double> bp = s.breakpoints();
    bp.push_back(knee_hz);
    return NoiseSpectrum(
        [s, knee_hz](double f) {
            const double v = s(f);
            return f < knee_hz ? std::min(v, 1.0) : v;
        },
        std::move(bp));
}

}  // namespace sqz
