#include "qch/serialize.hpp"

#include <sstream>

namespace qch {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

json lattice_to_json(const LatticeBasis& l, const std::vector<std::string>& exact) {
    json j;
    j["d1"] = l.d1;
    j["d2"] = l.d2;
    std::vector<double> rows;
    for (int r = 0; r < l.basis.rows(); ++r)
        for (int c = 0; c < l.basis.cols(); ++c) rows.push_back(l.basis(r, c));
    j["basis"] = rows;
    if (!exact.empty()) j["exact"] = exact;  // rational strings "p/q"
    return j;
}

LatticeBasis lattice_from_json(const json& j) {
    int d1 = j.at("d1").get<int>();
    int d2 = j.at("d2").get<int>();
    int n = d1 + d2;
    auto rows = j.at("basis").get<std::vector<double>>();
    if (static_cast<int>(rows.size()) != n * n)
        throw std::invalid_argument("lattice_from_json: basis size mismatch");
    Eigen::MatrixXd b(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) b(r, c) = rows[static_cast<std::size_t>(r * n + c)];
    return LatticeBasis(d1, d2, b);
}

json window_to_json(const Window& w) {
    json j;
    switch (w.kind) {
        case WindowKind::Interval: j["kind"] = "interval"; break;
        case WindowKind::EuclideanBall: j["kind"] = "euclidean_ball"; break;
        case WindowKind::CenteredBox: j["kind"] = "centered_box"; break;
    }
    j["d2"] = w.d2;
    if (w.kind == WindowKind::EuclideanBall) {
        j["radius"] = w.radius;
    } else {
        j["half_widths"] = std::vector<double>(w.half_widths.data(),
                                               w.half_widths.data() + w.half_widths.size());
    }
    if (!w.center.isZero())
        j["center"] = std::vector<double>(w.center.data(), w.center.data() + w.center.size());
    if (w.theta)
        j["theta"] = *w.theta;
    else
        j["theta"] = "none";
    return j;
}

Window window_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    int d2 = j.at("d2").get<int>();
    Window w;
    if (kind == "interval") {
        auto hw = j.at("half_widths").get<std::vector<double>>();
        double center = 0.0;
        if (j.contains("center")) center = j.at("center").get<std::vector<double>>().at(0);
        w = Window::interval(hw.at(0), center);
    } else if (kind == "euclidean_ball") {
        w = Window::ball(j.at("radius").get<double>(), d2);
    } else if (kind == "centered_box") {
        auto hw = j.at("half_widths").get<std::vector<double>>();
        Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(hw.data(), static_cast<long>(hw.size()));
        w = Window::box(v);
    } else {
        throw std::invalid_argument("window_from_json: unknown kind " + kind);
    }
    return w;
}

json scheme_to_json(const Scheme& s) {
    json j;
    j["lattice"] = lattice_to_json(s.lattice);
    j["window"] = window_to_json(s.window);
    j["label"] = s.label;
    return j;
}

Scheme scheme_from_json(const json& j) {
    return Scheme(lattice_from_json(j.at("lattice")), window_from_json(j.at("window")),
                  j.value("label", std::string("scheme")));
}

json measure_to_json(const AtomicMeasure& m) {
    json j;
    j["d1"] = m.d1;
    j["eps_max"] = m.eps_max;
    j["weight_floor"] = m.weight_floor;
    j["tail_bound"] = m.tail_bound;
    j["weight_at_zero"] = m.weight_at_zero;
    json atoms = json::array();
    for (std::size_t a = 0; a < m.size(); ++a) {
        json atom;
        std::vector<double> xi(m.d1);
        for (int i = 0; i < m.d1; ++i) xi[static_cast<std::size_t>(i)] = m.xi1(i, a);
        atom["xi1"] = xi;
        atom["weight"] = m.weights[static_cast<Eigen::Index>(a)];
        atoms.push_back(atom);
    }
    j["atoms"] = atoms;
    return j;
}

std::string measure_to_csv(const AtomicMeasure& m) {
    std::ostringstream os;
    os << "# eps_max " << fmt(m.eps_max) << "\n";
    os << "# weight_floor " << fmt(m.weight_floor) << "\n";
    os << "# tail_bound " << fmt(m.tail_bound) << "\n";
    os << "# weight_at_zero " << fmt(m.weight_at_zero) << "\n";
    for (int i = 0; i < m.d1; ++i) os << "xi1_" << i << ",";
    os << "weight\n";
    os.precision(17);
    for (std::size_t a = 0; a < m.size(); ++a) {
        for (int i = 0; i < m.d1; ++i) os << m.xi1(i, a) << ",";
        os << m.weights[static_cast<Eigen::Index>(a)] << "\n";
    }
    return os.str();
}

json certificate_to_json(const NonHyperCertificate& c) {
    json j;
    j["gamma"] = c.gamma;
    j["delta"] = c.delta;
    j["a"] = c.a.a_truncated.to_string();
    json levels = json::array();
    for (long long n : c.a.levels) levels.push_back(n);
    j["levels"] = levels;
    json ms = json::array();
    for (const BigInt& m : c.a.m_list) ms.push_back(m.to_string());
    j["m_list"] = ms;
    j["b"] = c.b.to_string();
    j["slack_constant"] = c.slack_constant;
    j["pass"] = c.pass;
    json rows = json::array();
    for (const CertificateRow& r : c.rows) {
        json row;
        row["k"] = r.k;
        row["u_k"] = r.u_k.to_string();
        row["mass"] = r.mass;
        row["mass_tail"] = r.mass_tail;
        row["mass_lower_bound"] = r.mass_lower_bound;
        row["ratio"] = r.ratio;
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

std::string points_to_csv(const PointSample& p) {
    std::ostringstream os;
    os << "# scheme " << p.scheme_label << "\n";
    os << "# n_points " << p.points.size() << "\n";
    os.precision(17);
    int d = p.points.empty() ? 1 : static_cast<int>(p.points.front().size());
    for (int i = 0; i < d; ++i) os << "x_" << i << (i + 1 < d ? "," : "\n");
    for (const auto& x : p.points) {
        for (int i = 0; i < d; ++i) os << x[i] << (i + 1 < d ? "," : "\n");
    }
    return os.str();
}

}  // namespace qch
