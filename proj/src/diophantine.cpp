#include "qch/diophantine.hpp"

#include <algorithm>
#include <stdexcept>

namespace qch {

std::vector<Convergent> continued_fraction(const Rational& alpha) {
    std::vector<Convergent> out;
    // Euclidean expansion of alpha; convergents via the standard recurrence
    // h_i = a_i h_{i-1} + h_{i-2}, seeded with h_{-1}/k_{-1} = 1/0, h_{-2}/k_{-2} = 0/1.
    BigInt hm1(1), hm2(0);
    BigInt km1(0), km2(1);
    BigInt num = alpha.num(), den = alpha.den();
    while (!den.is_zero()) {
        BigInt a, r;
        // floor division (alpha may be negative only in the first step)
        BigInt::divmod(num, den, a, r);
        if (r.is_negative()) {
            a = a - BigInt(1);
            r = r + den;
        }
        BigInt h = a * hm1 + hm2;
        BigInt k = a * km1 + km2;
        Rational theta = alpha * Rational(k, BigInt(1)) - Rational(h, BigInt(1));
        out.push_back({h, k, theta});
        hm2 = hm1;
        hm1 = h;
        km2 = km1;
        km1 = k;
        num = den;
        den = r;
    }
    return out;
}

namespace {

struct OstrowskiLevel {
    BigInt q;
    Rational theta;
    Rational theta_abs;
    BigInt cap;       // digit bound at this level
    Rational budget;  // max |sum of contributions| from the levels above this one
};

struct SearchState {
    const std::vector<OstrowskiLevel>* levels;
    Rational u;
    BigInt m_max;
    std::size_t node_budget;
    std::size_t nodes = 0;
    std::vector<BigInt> found;
};

// Digits are chosen coarse-to-fine: level i contributes c_i * theta_i with
// |theta| decreasing in i, so once the low levels are fixed the reachable
// adjustment is the telescoped budget ~ |theta_i| + |theta_{i+1}| and branches
// that stray from an integer by more than u + budget die immediately.
void search(SearchState& st, std::size_t i, const BigInt& m_partial, const Rational& sigma) {
    if (++st.nodes > st.node_budget)
        throw std::runtime_error("budget: resonance enumeration exceeded node budget");
    const auto& levels = *st.levels;
    if (i == levels.size()) {
        if (!m_partial.is_zero() && frac_dist(sigma) <= st.u) st.found.push_back(m_partial);
        return;
    }
    const OstrowskiLevel& lv = levels[i];
    Rational slack = st.u + lv.budget;

    BigInt room = (st.m_max - m_partial) / lv.q;
    BigInt cmax = lv.cap < room ? lv.cap : room;
    if (cmax.is_negative()) return;
    Rational cmax_r(cmax, BigInt(1));

    if (lv.theta.is_zero()) {
        // terminal convergent of a rational alpha: sigma is frozen
        if (frac_dist(sigma) > slack) return;
        for (BigInt c(0); c <= cmax; c += BigInt(1))
            search(st, i + 1, m_partial + c * lv.q, sigma);
        return;
    }
    if (frac_dist(sigma) > slack + cmax_r * lv.theta_abs) return;

    // admissible digits: sigma + c theta within `slack` of some integer z
    Rational lo_val = sigma, hi_val = sigma + cmax_r * lv.theta;
    if (hi_val < lo_val) std::swap(lo_val, hi_val);
    BigInt z_lo = (lo_val - slack).floor();
    BigInt z_hi = (hi_val + slack).floor() + BigInt(1);

    std::vector<std::pair<BigInt, BigInt>> ranges;
    for (BigInt z = z_lo; z <= z_hi; z += BigInt(1)) {
        Rational zr(z, BigInt(1));
        Rational c_a = (zr - slack - sigma) / lv.theta;
        Rational c_b = (zr + slack - sigma) / lv.theta;
        if (c_b < c_a) std::swap(c_a, c_b);
        BigInt c_begin = -((-c_a).floor());  // ceil
        BigInt c_end = c_b.floor();
        if (c_begin < BigInt(0)) c_begin = BigInt(0);
        if (cmax < c_end) c_end = cmax;
        if (c_begin > c_end) continue;
        ranges.emplace_back(c_begin, c_end);
    }
    // merge overlaps so no child is visited twice
    std::sort(ranges.begin(), ranges.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < ranges.size(); ++r) {
        if (w > 0 && ranges[r].first <= ranges[w - 1].second + BigInt(1)) {
            if (ranges[w - 1].second < ranges[r].second) ranges[w - 1].second = ranges[r].second;
        } else {
            ranges[w++] = ranges[r];
        }
    }
    ranges.resize(w);

    for (const auto& [c_begin, c_end] : ranges)
        for (BigInt c = c_begin; c <= c_end; c += BigInt(1))
            search(st, i + 1, m_partial + c * lv.q,
                   sigma + Rational(c, BigInt(1)) * lv.theta);
}

}  // namespace

std::vector<BigInt> resonant_integers(const Rational& alpha, const Rational& u,
                                      const BigInt& m_max, std::size_t node_budget) {
    std::vector<BigInt> result;
    if (m_max < BigInt(1) || u.sign() < 0) return result;

    Rational frac = alpha.abs().fractional();
    if (frac.is_zero()) {
        // alpha integral: every m resonates.
        if (!(m_max <= BigInt(static_cast<long long>(node_budget))))
            throw std::runtime_error("budget: resonance enumeration exceeded node budget");
        for (BigInt m(1); m <= m_max; m += BigInt(1)) result.push_back(m);
        return result;
    }

    std::vector<Convergent> conv = continued_fraction(frac);
    std::vector<OstrowskiLevel> levels;
    for (std::size_t i = 0; i < conv.size() && conv[i].q <= m_max; ++i) {
        BigInt cap;
        if (i + 1 < conv.size()) {
            // a_{i+1} recovered from q_{i+1} = a_{i+1} q_i + q_{i-1}
            BigInt qprev = i == 0 ? BigInt(0) : conv[i - 1].q;
            cap = (conv[i + 1].q - qprev) / conv[i].q;
        } else {
            cap = m_max / conv[i].q;  // terminal convergent: theta == 0
        }
        levels.push_back({conv[i].q, conv[i].theta, conv[i].theta.abs(), cap, Rational(0)});
    }
    if (levels.empty()) return result;
    Rational acc(0);
    for (std::size_t i = levels.size(); i-- > 0;) {
        levels[i].budget = acc;  // contributions of the levels above i
        acc = acc + Rational(levels[i].cap, BigInt(1)) * levels[i].theta_abs;
    }

    SearchState st;
    st.levels = &levels;
    st.u = u;
    st.m_max = m_max;
    st.node_budget = node_budget;
    search(st, 0, BigInt(0), Rational(0));

    std::sort(st.found.begin(), st.found.end());
    st.found.erase(std::unique(st.found.begin(), st.found.end()), st.found.end());
    return st.found;
}

}  // namespace qch
