#include "hawkes/quadrature.hpp"

#include <array>
#include <queue>
#include <vector>

namespace hawkes {

namespace {

// Kronrod abscissae (descending, last is the centre) and weights; the Gauss
// rule uses every other abscissa starting from index 1.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    Eigen::VectorXd value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_15(const std::function<Eigen::VectorXd(double)>& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    Eigen::VectorXd fc = f(centre);
    Eigen::VectorXd kronrod = kWgk[7] * fc;
    Eigen::VectorXd gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        Eigen::VectorXd pair = f(centre - dx) + f(centre + dx);
        kronrod += kWgk[i] * pair;
        if (i % 2 == 1) gauss += kWg[i / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    const double err = (kronrod - gauss).cwiseAbs().maxCoeff();
    return {a, b, std::move(kronrod), err};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<Eigen::VectorXd(double)>& f, double a,
                                    double b, double abs_tol, int max_panels) {
    std::priority_queue<Panel> panels;
    panels.push(gauss_kronrod_15(f, a, b));
    double total_error = panels.top().error;
    int evaluations = 15;

    while (total_error > abs_tol && static_cast<int>(panels.size()) < max_panels) {
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = gauss_kronrod_15(f, worst.a, mid);
        Panel right = gauss_kronrod_15(f, mid, worst.b);
        evaluations += 30;
        total_error += left.error + right.error - worst.error;
        panels.push(std::move(left));
        panels.push(std::move(right));
    }

    // Re-sum from scratch so the running update does not accumulate drift.
    QuadratureResult result;
    result.error = 0.0;
    result.value = Eigen::VectorXd::Zero(panels.top().value.size());
    std::vector<Panel> all;
    all.reserve(panels.size());
    while (!panels.empty()) {
        all.push_back(panels.top());
        panels.pop();
    }
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
        result.value += it->value;
        result.error += it->error;
    }
    result.evaluations = evaluations;
    result.converged = result.error <= abs_tol;
    return result;
}

}  // namespace hawkes
