#include "hammerstein/adaptive.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "hammerstein/errors.hpp"

namespace hammerstein {
namespace {

constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// 7-point Gauss weights at kronrod_x[1], [3], [5], [7].
constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double r = 0.5 * (hi - lo);
    const double fc = f(c);
    double k = kronrod_w[7] * fc;
    double g = gauss_w[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = r * kronrod_x[i];
        const double pair = f(c - dx) + f(c + dx);
        k += kronrod_w[i] * pair;
        if (i % 2 == 1) g += gauss_w[i / 2] * pair;
    }
    return {lo, hi, k * r, std::abs((k - g) * r)};
}

}  // namespace

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                  double tol, std::size_t max_evals) {
    if (!(tol > 0.0)) throw DomainError("adaptive quadrature: tolerance must be positive");
    AdaptiveResult res;
    if (lo == hi) return res;

    std::priority_queue<Panel> heap;
    heap.push(gk15(f, lo, hi));
    res.evaluations = 15;
    double total_err = heap.top().error;
    std::size_t splits = 0;

    while (total_err > tol) {
        if (res.evaluations + 30 > max_evals) {
            throw QuadratureError("adaptive quadrature did not reach tolerance " +
                                  std::to_string(tol) + " within " + std::to_string(max_evals) +
                                  " evaluations (estimate " + std::to_string(total_err) + ")");
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw QuadratureError("adaptive quadrature: panel width reached machine resolution");
        }
        Panel left = gk15(f, worst.lo, mid);
        Panel right = gk15(f, mid, worst.hi);
        res.evaluations += 30;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Re-sum periodically so the running total does not drift from cancellation.
        if (++splits % 1000 == 0) {
            std::vector<Panel> panels;
            total_err = 0.0;
            while (!heap.empty()) {
                total_err += heap.top().error;
                panels.push_back(heap.top());
                heap.pop();
            }
            for (auto& p : panels) heap.push(p);
        }
    }

    long double sum = 0.0L, err = 0.0L;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    res.value = static_cast<double>(sum);
    res.error = static_cast<double>(err);
    return res;
}

}  // namespace hammerstein
