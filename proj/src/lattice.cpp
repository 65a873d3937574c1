#include "qch/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace qch {

LatticeBasis::LatticeBasis(int d1_, int d2_, Eigen::MatrixXd basis_)
    : d1(d1_), d2(d2_), basis(std::move(basis_)) {
    int n = d1 + d2;
    if (d1 < 0 || d2 < 0 || n <= 0 || basis.rows() != n || basis.cols() != n)
        throw std::invalid_argument("LatticeBasis: dimension mismatch");
    double scale = basis.cwiseAbs().rowwise().sum().maxCoeff();  // inf operator norm
    if (!(scale > 0.0)) throw std::invalid_argument("degenerate lattice");
    double det = (basis / scale).determinant();
    if (std::abs(det) < 1e-12) throw std::invalid_argument("degenerate lattice");
    det_abs = std::abs(det) * std::pow(scale, n);
}

Box Box::centered(const Eigen::VectorXd& half_widths) {
    return Box{-half_widths, half_widths};
}

Box Box::interval(double lo, double hi) {
    Eigen::VectorXd l(1), h(1);
    l << lo;
    h << hi;
    return Box{l, h};
}

bool Box::contains(const Eigen::VectorXd& x) const {
    return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
}

bool Box::empty() const { return (hi.array() < lo.array()).any(); }

LatticeBasis dual_basis(const LatticeBasis& L) {
    Eigen::MatrixXd inv_t = L.basis.inverse().transpose();
    return LatticeBasis(L.d1, L.d2, inv_t);
}

LatticeBasis gamma_a_lattice(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("gamma_a_lattice: a must be positive");
    Eigen::MatrixXd b(2, 2);
    b << 1.0 / (2.0 * a), -0.5, 1.0 / (2.0 * a), 0.5;
    return LatticeBasis(1, 1, b);
}

LatticeBasis gamma_a_lattice(const Rational& a) { return gamma_a_lattice(a.to_double()); }

LatticeBasis arithmetic_quadratic_lattice(long long D, QuadraticRing ring) {
    if (D < 2) throw std::invalid_argument("arithmetic_quadratic_lattice: D must be >= 2");
    for (long long p = 2; p * p <= D; ++p)
        if (D % (p * p) == 0)
            throw std::invalid_argument("arithmetic_quadratic_lattice: D must be square-free");
    double s = std::sqrt(static_cast<double>(D));
    bool half = ring == QuadraticRing::Maximal ||
                (ring == QuadraticRing::Auto && D % 4 == 1);
    if (half && D % 4 != 1)
        throw std::invalid_argument("arithmetic_quadratic_lattice: maximal order needs D = 1 mod 4");
    Eigen::MatrixXd b(2, 2);
    if (half)
        b << 1.0, (1.0 + s) / 2.0, 1.0, (1.0 - s) / 2.0;
    else
        b << 1.0, s, 1.0, -s;
    return LatticeBasis(1, 1, b);
}

std::size_t default_enumeration_budget() {
    if (const char* env = std::getenv("QCS_BUDGET")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return 100000000;  // 1e8 candidates
}

namespace {

struct EnumState {
    const Eigen::MatrixXd* B;
    Eigen::VectorXd lo, hi;       // concatenated target box
    Eigen::VectorXd crude;        // certified per-coefficient bound
    Eigen::MatrixXd rest;         // rest(i,k) = sum_{j>k} |B(i,j)| * crude(j)
    std::size_t budget;
    std::size_t visited = 0;
    int n;
    Eigen::VectorXi coeffs;
    const std::function<void(const LatticePoint&)>* visit;
    int d1;
};

void enum_level(EnumState& st, int k, const Eigen::VectorXd& partial) {
    double cmin = -st.crude[k], cmax = st.crude[k];
    for (int i = 0; i < st.n; ++i) {
        double b = (*st.B)(i, k);
        double r = st.rest(i, k);
        double slack = 1e-9 + 4e-15 * (std::abs(partial[i]) + std::abs(st.hi[i]) + r);
        if (b == 0.0) {
            if (partial[i] + r < st.lo[i] - slack || partial[i] - r > st.hi[i] + slack)
                return;  // no remaining coefficient can move this coordinate
            continue;
        }
        double a1 = (st.lo[i] - partial[i] - r - slack) / b;
        double a2 = (st.hi[i] - partial[i] + r + slack) / b;
        if (a1 > a2) std::swap(a1, a2);
        cmin = std::max(cmin, a1);
        cmax = std::min(cmax, a2);
    }
    double cslack = 1e-9 + 4e-15 * std::max(std::abs(cmin), std::abs(cmax));
    long long c0 = static_cast<long long>(std::ceil(cmin - cslack));
    long long c1 = static_cast<long long>(std::floor(cmax + cslack));
    if (c0 > c1) return;
    if (c0 < std::numeric_limits<int>::min() || c1 > std::numeric_limits<int>::max())
        throw std::runtime_error("budget: coefficient range exceeds representable indices");
    st.visited += static_cast<std::size_t>(c1 - c0 + 1);
    if (st.visited > st.budget)
        throw std::runtime_error("budget: enumeration exceeded candidate budget");
    Eigen::VectorXd col = st.B->col(k);
    Eigen::VectorXd next(st.n);
    for (long long c = c0; c <= c1; ++c) {
        // fresh multiply-add per candidate: no drift across long outer loops
        next = partial + static_cast<double>(c) * col;
        st.coeffs[k] = static_cast<int>(c);
        if (k + 1 == st.n) {
            bool inside = true;
            for (int i = 0; i < st.n && inside; ++i)
                inside = next[i] >= st.lo[i] && next[i] <= st.hi[i];
            if (inside) {
                LatticePoint pt;
                pt.coeffs = st.coeffs;
                pt.x1 = next.head(st.d1);
                pt.x2 = next.tail(st.n - st.d1);
                (*st.visit)(pt);
            }
        } else {
            enum_level(st, k + 1, next);
        }
    }
}

}  // namespace

void enumerate_in_box(const LatticeBasis& L, const Box& box1, const Box& box2,
                      const EnumOptions& opts,
                      const std::function<void(const LatticePoint&)>& visit) {
    int n = L.dim();
    if (box1.lo.size() != L.d1 || box2.lo.size() != L.d2)
        throw std::invalid_argument("enumerate_in_box: box dimension mismatch");
    if (box1.empty() || box2.empty()) return;

    EnumState st;
    st.B = &L.basis;
    st.lo.resize(n);
    st.hi.resize(n);
    st.lo << box1.lo, box2.lo;
    st.hi << box1.hi, box2.hi;
    st.n = n;
    st.d1 = L.d1;
    st.budget = opts.budget ? opts.budget : default_enumeration_budget();
    st.coeffs.resize(n);
    st.visit = &visit;

    Eigen::VectorXd corner = st.lo.cwiseAbs().cwiseMax(st.hi.cwiseAbs());
    Eigen::MatrixXd inv = L.basis.inverse();
    st.crude = inv.cwiseAbs() * corner;
    st.crude.array() += 1e-9;

    st.rest.resize(n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = k + 1; j < n; ++j) acc += std::abs(L.basis(i, j)) * st.crude[j];
            st.rest(i, k) = acc;
        }

    Eigen::VectorXd partial = Eigen::VectorXd::Zero(n);
    enum_level(st, 0, partial);
}

std::vector<LatticePoint> enumerate_in_box(const LatticeBasis& L, const Box& box1,
                                           const Box& box2, const EnumOptions& opts) {
    std::vector<LatticePoint> out;
    enumerate_in_box(L, box1, box2, opts,
                     [&out](const LatticePoint& p) { out.push_back(p); });
    return out;
}

namespace {

double ls_slope(const std::vector<std::pair<double, double>>& xy) {
    double n = static_cast<double>(xy.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : xy) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) return 0.0;
    return (n * sxy - sx * sy) / denom;
}

}  // namespace

BetaScan beta_repellence_scan(const LatticeBasis& L, const std::vector<double>& eps_list,
                              double xi2_cap, const EnumOptions& opts) {
    BetaScan scan;
    scan.complete = true;
    for (double eps : eps_list) {
        if (!(eps > 0)) throw std::invalid_argument("beta_repellence_scan: eps must be positive");
        Box b1{Eigen::VectorXd::Constant(L.d1, -eps), Eigen::VectorXd::Constant(L.d1, eps)};
        Box b2{Eigen::VectorXd::Constant(L.d2, -xi2_cap), Eigen::VectorXd::Constant(L.d2, xi2_cap)};
        double best = xi2_cap;
        bool found = false;
        try {
            enumerate_in_box(L, b1, b2, opts, [&](const LatticePoint& p) {
                if (p.coeffs.isZero()) return;
                if (p.x1.lpNorm<Eigen::Infinity>() >= eps) return;  // strict inequality
                double v = p.x2.lpNorm<Eigen::Infinity>();
                if (v < best || !found) {
                    best = v;
                    found = true;
                }
            });
        } catch (const std::runtime_error&) {
            scan.complete = false;
            break;
        }
        scan.rows.push_back({eps, found ? best : xi2_cap, found});
    }
    std::vector<std::pair<double, double>> xy;
    for (auto& r : scan.rows)
        if (r.found && r.min_xi2 > 0) xy.emplace_back(std::log(1.0 / r.eps), std::log(r.min_xi2));
    scan.beta_hat = xy.size() >= 2 ? ls_slope(xy) : 0.0;
    return scan;
}

AlphaScan alpha_repellence_scan(const Eigen::MatrixXd& E, long long q_max) {
    if (q_max < 1) throw std::invalid_argument("alpha_repellence_scan: q_max must be >= 1");
    int d2 = static_cast<int>(E.cols());
    AlphaScan out{0.0, false, Eigen::VectorXi::Zero(d2), 1.0};
    bool any = false;
    Eigen::VectorXi q = Eigen::VectorXi::Constant(d2, -static_cast<int>(q_max));
    auto advance = [&]() {
        for (int i = 0; i < d2; ++i) {
            if (q[i] < q_max) {
                ++q[i];
                return true;
            }
            q[i] = -static_cast<int>(q_max);
        }
        return false;
    };
    do {
        if (q.isZero()) continue;
        Eigen::VectorXd v = E * q.cast<double>();
        double m = 0.0;
        for (int i = 0; i < v.size(); ++i)
            m = std::max(m, std::abs(v[i] - std::nearbyint(v[i])));
        double qn = q.cast<double>().lpNorm<Eigen::Infinity>();
        if (m == 0.0) {
            out.infinite = true;
            out.worst_q = q;
            out.worst_m = 0.0;
            continue;
        }
        if (qn < 2) continue;
        double ratio = -std::log(m) / std::log(qn);
        if (!any || ratio > out.alpha_hat) {
            any = true;
            out.alpha_hat = ratio;
            out.worst_q = q;
            out.worst_m = m;
        }
    } while (advance());
    return out;
}

AlphaScan alpha_repellence_scan(const Rational& e, long long q_max) {
    AlphaScan out{0.0, false, Eigen::VectorXi::Zero(1), 1.0};
    bool any = false;
    for (long long q = 1; q <= q_max; ++q) {
        Rational fd = frac_dist(e * Rational(q));
        if (fd.is_zero()) {
            out.infinite = true;
            out.worst_q[0] = static_cast<int>(q);
            out.worst_m = 0.0;
            continue;
        }
        if (q < 2) continue;
        double m = fd.to_double();
        double ratio = -std::log(m) / std::log(static_cast<double>(q));
        if (!any || ratio > out.alpha_hat) {
            any = true;
            out.alpha_hat = ratio;
            out.worst_q[0] = static_cast<int>(q);
            out.worst_m = m;
        }
    }
    return out;
}

namespace {

// ceil(g * n) for double g > 0 via exact dyadic arithmetic
long long ceil_times(double g, long long n) {
    Rational v = Rational::from_double(g) * Rational(n);
    BigInt f = v.floor();
    if (Rational(f, BigInt(1)) == v) return f.to_int64();
    return f.to_int64() + 1;
}

}  // namespace

Rational LiouvilleParam::u_k(std::size_t k) const {
    long long e = ceil_times(gamma, levels.at(k));
    return Rational(BigInt(2), BigInt::pow10(static_cast<std::size_t>(e)));
}

LiouvilleParam liouville_param(double gamma, int K) {
    if (!(gamma > 2.0)) throw std::invalid_argument("liouville_param: gamma must exceed 2");
    if (K < 2) throw std::invalid_argument("liouville_param: need at least 2 levels");
    std::size_t cap = bigint_digit_cap();

    std::vector<long long> levels{1};
    while (static_cast<int>(levels.size()) < K) {
        long long next = ceil_times(gamma + 1.0, levels.back());
        if (static_cast<std::size_t>(next) + 1 > cap) {
            throw std::length_error(
                "liouville_param: digit cap makes K infeasible; largest feasible K = " +
                std::to_string(levels.size()));
        }
        levels.push_back(next);
    }

    LiouvilleParam out;
    out.gamma = gamma;
    out.levels = levels;
    BigInt denom = BigInt::pow10(static_cast<std::size_t>(levels.back()));
    BigInt numer(0);
    for (long long n : levels)
        numer += BigInt::pow10(static_cast<std::size_t>(levels.back() - n));
    out.a_truncated = Rational(numer, denom);
    for (long long n : levels) out.m_list.push_back(BigInt::pow10(static_cast<std::size_t>(n)));

    // Exact check: {m_k a}_Z <= 2 m_k^{-gamma} for all k < K (via the
    // 10^{-ceil(gamma n_k)} minorant, which the level recursion guarantees).
    for (int k = 0; k + 1 < K; ++k) {
        Rational dist = frac_dist(out.a_truncated * Rational(out.m_list[k], BigInt(1)));
        if (!(dist <= out.u_k(k)))
            throw std::logic_error("liouville_param: resonance invariant failed");
    }
    return out;
}

}  // namespace qch
