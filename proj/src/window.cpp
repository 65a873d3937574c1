#include "qch/window.hpp"

#include <cmath>
#include <stdexcept>

namespace qch {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Window Window::interval(double half_width, double center) {
    if (!(half_width > 0)) throw std::invalid_argument("Window: half width must be positive");
    Window w;
    w.kind = WindowKind::Interval;
    w.d2 = 1;
    w.center = Eigen::VectorXd::Constant(1, center);
    w.half_widths = Eigen::VectorXd::Constant(1, half_width);
    w.theta = 1.0;
    return w;
}

Window Window::ball(double r, int d2) {
    if (!(r > 0)) throw std::invalid_argument("Window: radius must be positive");
    if (d2 < 1 || d2 > 3) throw std::invalid_argument("Window: balls supported for d2 <= 3");
    Window w;
    w.kind = WindowKind::EuclideanBall;
    w.d2 = d2;
    w.center = Eigen::VectorXd::Zero(d2);
    w.radius = r;
    w.theta = 1.0;
    return w;
}

Window Window::box(const Eigen::VectorXd& half_widths) {
    if (half_widths.size() < 1 || (half_widths.array() <= 0).any())
        throw std::invalid_argument("Window: box half widths must be positive");
    Window w;
    w.kind = WindowKind::CenteredBox;
    w.d2 = static_cast<int>(half_widths.size());
    w.center = Eigen::VectorXd::Zero(w.d2);
    w.half_widths = half_widths;
    if (w.d2 == 1) w.theta = 1.0;  // a box in d2 = 1 is an interval
    return w;
}

Box Window::bounding_box() const {
    if (kind == WindowKind::EuclideanBall)
        return Box{center.array() - radius, center.array() + radius};
    return Box{center - half_widths, center + half_widths};
}

double volume(const Window& w) {
    switch (w.kind) {
        case WindowKind::Interval:
            return 2.0 * w.half_widths[0];
        case WindowKind::CenteredBox:
            return (2.0 * w.half_widths.array()).prod();
        case WindowKind::EuclideanBall:
            if (w.d2 == 1) return 2.0 * w.radius;
            if (w.d2 == 2) return kPi * w.radius * w.radius;
            return 4.0 / 3.0 * kPi * w.radius * w.radius * w.radius;
    }
    return 0.0;
}

double bessel_j1(double z) {
    double az = std::abs(z);
    if (az <= 16.0) {
        // power series in extended precision; the largest term at z = 16 is
        // ~6e2, so long double keeps the absolute error near 1e-16
        long double x = az;
        long double term = x / 2.0L;
        long double sum = term;
        long double x2 = -(x * x) / 4.0L;
        for (int k = 0; k < 60; ++k) {
            term *= x2 / static_cast<long double>((k + 1) * (k + 2));
            sum += term;
            if (std::abs(static_cast<double>(term)) < 1e-22 * (1.0 + std::abs(static_cast<double>(sum))) && k > 4)
                break;
        }
        double r = static_cast<double>(sum);
        return z < 0 ? -r : r;
    }
    // Hankel asymptotic: J1 = sqrt(2/(pi z)) (P cos w - Q sin w), w = z - 3pi/4
    const double mu = 4.0;
    double P = 0.0, Q = 0.0;
    double t = 1.0;  // t_k = prod_{j<=k} (mu - (2j-1)^2) / (k! (8z)^k)
    double prev = std::abs(t);
    for (int k = 0; k < 40; ++k) {
        if (k % 2 == 0)
            P += (k % 4 == 0) ? t : -t;
        else
            Q += (k % 4 == 1) ? t : -t;
        double next = t * (mu - (2.0 * k + 1.0) * (2.0 * k + 1.0)) / ((k + 1) * 8.0 * az);
        if (std::abs(next) > prev) break;  // asymptotic series started diverging
        prev = std::abs(next);
        t = next;
    }
    double w = az - 3.0 * kPi / 4.0;
    double r = std::sqrt(2.0 / (kPi * az)) * (P * std::cos(w) - Q * std::sin(w));
    return z < 0 ? -r : r;
}

namespace {

double interval_ft(double b, double xi) {
    if (xi == 0.0) return 2.0 * b;
    double v = 2.0 * b * xi;
    if (v == std::nearbyint(v)) {
        // sin(pi n) is exactly zero for integer n
        return 0.0;
    }
    return std::sin(kPi * v) / (kPi * xi);
}

}  // namespace

std::complex<double> ft_indicator(const Window& w, const Eigen::VectorXd& xi2) {
    if (xi2.size() != w.d2) throw std::invalid_argument("ft_indicator: dimension mismatch");
    double base = 0.0;
    switch (w.kind) {
        case WindowKind::Interval:
            base = interval_ft(w.half_widths[0], xi2[0]);
            break;
        case WindowKind::CenteredBox: {
            base = 1.0;
            for (int i = 0; i < w.d2; ++i) base *= interval_ft(w.half_widths[i], xi2[i]);
            break;
        }
        case WindowKind::EuclideanBall: {
            double t = xi2.norm();
            if (t == 0.0) {
                base = volume(w);
            } else if (w.d2 == 1) {
                base = interval_ft(w.radius, xi2[0]);
            } else if (w.d2 == 2) {
                base = w.radius * bessel_j1(2.0 * kPi * w.radius * t) / t;
            } else {
                double u = 2.0 * kPi * w.radius * t;
                base = (std::sin(u) - u * std::cos(u)) / (2.0 * kPi * kPi * t * t * t);
            }
            break;
        }
    }
    if (w.center.isZero() || base == 0.0) return {base, 0.0};
    double phase = -2.0 * kPi * w.center.dot(xi2);
    return std::polar(1.0, phase) * base;
}

double ft_envelope(const Window& w, double t) {
    double vol = volume(w);
    if (t <= 0) return vol;
    switch (w.kind) {
        case WindowKind::Interval:
            return std::min(vol, 1.0 / (kPi * t));
        case WindowKind::CenteredBox: {
            // sup-norm envelope: best axis replaces its factor by 1/(pi t)
            double best = vol;
            for (int i = 0; i < w.d2; ++i) {
                double other = vol / (2.0 * w.half_widths[i]);
                best = std::min(best, other / (kPi * t));
            }
            return std::min(vol, best);
        }
        case WindowKind::EuclideanBall: {
            if (w.d2 == 1) return std::min(vol, 1.0 / (kPi * t));
            if (w.d2 == 2) {
                double u = 2.0 * kPi * w.radius * t;
                double j1_env = std::min(u / 2.0, 0.8 / std::sqrt(u));
                return std::min(vol, w.radius * j1_env / t);
            }
            double u = 2.0 * kPi * w.radius * t;
            return std::min(vol, (1.0 + u) / (2.0 * kPi * kPi * t * t * t));
        }
    }
    return vol;
}

double ft_envelope_inverse(const Window& w, double threshold) {
    if (!(threshold > 0)) throw std::invalid_argument("ft_envelope_inverse: threshold must be positive");
    if (ft_envelope(w, 0) <= threshold) return 0.0;
    double hi = 1.0;
    while (ft_envelope(w, hi) > threshold) {
        hi *= 2.0;
        if (hi > 1e18) throw std::runtime_error("ft_envelope_inverse: no finite cap");
    }
    double lo = hi / 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (ft_envelope(w, mid) > threshold)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

double ft_envelope_sq_tail(const Window& w, double s) {
    if (s <= 0) s = 1e-300;
    switch (w.kind) {
        case WindowKind::Interval:
            return 2.0 / (kPi * kPi * s);  // 2 * int_s^inf (1/pi t)^2 dt
        case WindowKind::CenteredBox: {
            if (w.d2 == 1) return 2.0 / (kPi * kPi * s);
            // per-axis split: some coordinate exceeds s
            double total = 0.0;
            for (int i = 0; i < w.d2; ++i) {
                double axis_tail = 2.0 / (kPi * kPi * s);  // axis factor past s
                double others = 1.0;
                for (int j = 0; j < w.d2; ++j) {
                    if (j == i) continue;
                    double b = w.half_widths[j];
                    others *= 8.0 * b / kPi;  // int_R min(2b, 1/(pi t))^2 dt
                }
                total += axis_tail * others;
            }
            return total;
        }
        case WindowKind::EuclideanBall: {
            if (w.d2 == 1) return 2.0 / (kPi * kPi * s);
            if (w.d2 == 2) {
                // env^2 <= 0.64 r / (2 pi t^3); surface 2 pi t
                return 0.64 * w.radius / s;
            }
            // int_s^inf ((1+2 pi r t)/(2 pi^2 t^3))^2 4 pi t^2 dt, expanded
            double r = w.radius;
            double p3 = kPi * kPi * kPi;
            return (1.0 / (3.0 * s * s * s) + 2.0 * kPi * r / (s * s) +
                    4.0 * kPi * kPi * r * r / s) / p3;
        }
    }
    return 0.0;
}

FourierSmoothReport verify_fourier_smooth(const Window& w,
                                          const std::vector<Eigen::VectorXd>& xi_grid) {
    if (!w.theta)
        throw std::invalid_argument("not Fourier smooth");
    if (xi_grid.empty()) throw std::invalid_argument("verify_fourier_smooth: empty grid");
    double expo = (w.d2 + *w.theta) / 2.0;
    double max_norm = 0.0;
    for (auto& xi : xi_grid) max_norm = std::max(max_norm, xi.norm());
    double cutoff = max_norm / 10.0;  // last decade of ||xi||
    double sup_all = 0.0, sup_last = 0.0, sup_before = 0.0;
    for (auto& xi : xi_grid) {
        double t = xi.norm();
        double v = std::abs(ft_indicator(w, xi)) * std::pow(1.0 + t, expo);
        sup_all = std::max(sup_all, v);
        if (t >= cutoff)
            sup_last = std::max(sup_last, v);
        else
            sup_before = std::max(sup_before, v);
    }
    bool pass = std::isfinite(sup_all) && sup_last <= sup_before * 1.05 + 1e-12;
    return {sup_all, pass};
}

}  // namespace qch
