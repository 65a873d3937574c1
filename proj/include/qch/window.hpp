#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "qch/lattice.hpp"

namespace qch {

enum class WindowKind { Interval, EuclideanBall, CenteredBox };

/// Acceptance domain in internal space with closed-form Fourier transform.
/// Fourier smoothness exponent theta: 1 for intervals and Euclidean balls,
/// absent for boxes in d2 >= 2.
struct Window {
    WindowKind kind = WindowKind::Interval;
    int d2 = 1;
    Eigen::VectorXd center;       // defaults to 0
    Eigen::VectorXd half_widths;  // interval/box
    double radius = 0.0;          // ball
    std::optional<double> theta;

    static Window interval(double half_width, double center = 0.0);
    static Window ball(double r, int d2);
    static Window box(const Eigen::VectorXd& half_widths);

    Box bounding_box() const;  // centered support box
};

double volume(const Window& w);

/// chi_W^(xi2) = integral over W of e^{-2 pi i <x, xi2>} dx, closed form.
/// Integer multiples of the sine period are detected and give exact zeros.
std::complex<double> ft_indicator(const Window& w, const Eigen::VectorXd& xi2);

/// Decreasing upper bound on |chi_W^| as a function of the norm that governs
/// the window kind (Euclidean for balls, sup-norm for interval/box).
double ft_envelope(const Window& w, double t);

/// Smallest t with ft_envelope(w, t) <= threshold.
double ft_envelope_inverse(const Window& w, double threshold);

/// Upper bound on the integral of ft_envelope^2 over {||x|| > s} in R^{d2}.
double ft_envelope_sq_tail(const Window& w, double s);

struct FourierSmoothReport {
    double sup_constant;
    bool pass;
};

/// sup over the grid of |chi_W^(xi)| (1+||xi||)^{(d2+theta)/2}; passes when the
/// last decade of ||xi|| shows no growth over the earlier part of the grid.
FourierSmoothReport verify_fourier_smooth(const Window& w,
                                          const std::vector<Eigen::VectorXd>& xi_grid);

/// Bessel J1 to 1e-12 absolute: extended-precision power series up to z = 16,
/// Hankel asymptotic beyond.
double bessel_j1(double z);

}  // namespace qch
