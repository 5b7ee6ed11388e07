#include "ctcprobe/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace ctcprobe {

using Complex = std::complex<double>;

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.9914553711208126392069, 0.9491079123427585245262, 0.8648644233597690727897,
    0.7415311855993944398639, 0.5860872354676911302941, 0.4058451513773971669066,
    0.2077849550078984676007, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292249637, 0.0630920926299785532907, 0.1047900103222501838399,
    0.1406532597155259187452, 0.1690047266392679028266, 0.1903505780647854099133,
    0.2044329400752988924142, 0.2094821410847278280130};
constexpr double kWg[4] = {
    0.1294849661688696932706, 0.2797053914892766679015, 0.3818300505051189449504,
    0.4179591836734693877551};

template <class V>
double vmag(const V& v) {
    if constexpr (std::is_same_v<V, double>) return std::fabs(v);
    else return std::abs(v);
}

template <class V>
struct Panel {
    double a, b;
    V value;
    double err;
    long id;
};

template <class V>
struct PanelWorse {
    bool operator()(const Panel<V>& p, const Panel<V>& q) const {
        if (p.err != q.err) return p.err < q.err;
        return p.id > q.id;  // ties resolved by creation order
    }
};

template <class V, class F>
Panel<V> gk15(const F& f, double a, double b, long id) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    V kron = kWgk[7] * f(c);
    V gauss = kWg[3] * f(c);
    for (int i = 0; i < 7; ++i) {
        const V lo = f(c - h * kXgk[i]);
        const V hi = f(c + h * kXgk[i]);
        kron += kWgk[i] * (lo + hi);
        if (i % 2 == 1) gauss += kWg[i / 2] * (lo + hi);
    }
    kron *= h;
    gauss *= h;
    return Panel<V>{a, b, kron, vmag<V>(kron - gauss), id};
}

template <class V, class F>
V adaptive_1d(const F& f, double a, double b, const QuadratureConfig& cfg,
              std::span<const double> seeds) {
    cfg.validate();
    if (!(a < b)) throw InvalidParameterError("integrate_1d: requires a < b");

    std::vector<double> pts{a};
    for (double s : seeds)
        if (s > a && s < b) pts.push_back(s);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 9) {
        // start from at least 8 panels so narrow features are not skipped
        std::vector<double> refined;
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            const int extra = static_cast<int>(8 / (pts.size() - 1)) + 1;
            for (int k = 0; k < extra; ++k)
                refined.push_back(pts[i] + (pts[i + 1] - pts[i]) * k / extra);
        }
        refined.push_back(b);
        pts.swap(refined);
    }

    std::priority_queue<Panel<V>, std::vector<Panel<V>>, PanelWorse<V>> heap;
    long next_id = 0;
    V total{};
    double total_err = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        Panel<V> p = gk15<V>(f, pts[i], pts[i + 1], next_id++);
        total += p.value;
        total_err += p.err;
        heap.push(p);
    }

    int splits = 0;
    double stagnation_ref = total_err;
    while (total_err > std::max(cfg.abs_tol, cfg.rel_tol * vmag<V>(total))) {
        Complex best;
        if constexpr (std::is_same_v<V, double>) best = Complex(total, 0.0);
        else best = total;
        if (splits >= cfg.max_subdivisions)
            throw ConvergenceFailure("integrate_1d: max_subdivisions exceeded", best, total_err);
        // refinement stopped paying off: the estimate sits on the roundoff floor
        if (splits > 0 && splits % 2048 == 0) {
            if (total_err > 0.999 * stagnation_ref)
                throw ConvergenceFailure("integrate_1d: error estimate stagnated (roundoff floor)",
                                         best, total_err);
            stagnation_ref = total_err;
        }
        Panel<V> worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) continue;  // interval at rounding floor
        Panel<V> left = gk15<V>(f, worst.a, mid, next_id++);
        Panel<V> right = gk15<V>(f, mid, worst.b, next_id++);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++splits;
    }

    // Final pass in interval order tightens the rounding of the running sum.
    std::vector<Panel<V>> leaves;
    leaves.reserve(heap.size());
    while (!heap.empty()) {
        leaves.push_back(heap.top());
        heap.pop();
    }
    std::sort(leaves.begin(), leaves.end(),
              [](const Panel<V>& p, const Panel<V>& q) { return p.a < q.a; });
    V sum{};
    for (const auto& p : leaves) sum += p.value;
    return sum;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw InvalidParameterError("quadrature: tolerances must be > 0");
    if (max_subdivisions < 1 || max_boxes_2d < 1)
        throw InvalidParameterError("quadrature: subdivision budgets must be >= 1");
    if (!(support_halfwidth >= 8.0))
        throw InvalidParameterError("quadrature: support_halfwidth must be >= 8 T");
    if (!(detour_radius > 0.0))
        throw InvalidParameterError("quadrature: detour_radius must be > 0");
    for (size_t i = 1; i < eps_ladder.size(); ++i)
        if (!(eps_ladder[i] < eps_ladder[i - 1]))
            throw InvalidParameterError("quadrature: eps_ladder must be strictly decreasing");
    for (double e : eps_ladder)
        if (!(e > 0.0)) throw InvalidParameterError("quadrature: eps_ladder entries must be > 0");
}

Complex integrate_1d(const std::function<Complex(double)>& f, double a, double b,
                     const QuadratureConfig& cfg, std::span<const double> seeds) {
    return adaptive_1d<Complex>(f, a, b, cfg, seeds);
}

double integrate_1d_real(const std::function<double(double)>& f, double a, double b,
                         const QuadratureConfig& cfg, std::span<const double> seeds) {
    return adaptive_1d<double>(f, a, b, cfg, seeds);
}

Complex integrate_with_pole_detour(const std::function<Complex(Complex)>& f, double a, double b,
                                   std::span<const double> poles, const QuadratureConfig& cfg,
                                   std::span<const double> seeds) {
    cfg.validate();
    if (!(a < b)) throw InvalidParameterError("pole detour: requires a < b");
    std::vector<double> ps(poles.begin(), poles.end());
    std::sort(ps.begin(), ps.end());
    const double r = cfg.detour_radius;
    for (size_t i = 0; i < ps.size(); ++i) {
        if (!(ps[i] > a + r && ps[i] < b - r))
            throw InvalidParameterError("pole detour: pole too close to an endpoint");
        if (i > 0 && !(ps[i] - ps[i - 1] > 2.0 * r))
            throw InvalidParameterError("pole detour: detours overlap");
    }

    const auto on_axis = [&f](double u) { return f(Complex(u, 0.0)); };
    Complex total{};
    double left = a;
    std::vector<double> seg_seeds;
    for (double p : ps) {
        seg_seeds.assign(seeds.begin(), seeds.end());
        total += integrate_1d(on_axis, left, p - r, cfg, seg_seeds);
        // lower semicircle u = p + r e^{i theta}, theta: pi -> 2 pi
        total += integrate_1d(
            [&](double th) {
                const Complex e = std::polar(r, th);
                return f(p + e) * Complex(0.0, 1.0) * e;
            },
            M_PI, 2.0 * M_PI, cfg);
        left = p + r;
    }
    seg_seeds.assign(seeds.begin(), seeds.end());
    total += integrate_1d(on_axis, left, b, cfg, seg_seeds);
    return total;
}

namespace {

// Tensor-product adaptive scheme: an outer adaptive pass over the second
// variable whose integrand is an inner adaptive integral over the first.
// The inner tolerance is tightened by the outer range so accumulated inner
// error stays within budget. Point singularities of width eps on slanted
// ridges cost only log(1/eps) panels per inner call this way.
template <class V, class F>
V adaptive_2d(const F& f, const Rect& dom, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(dom.ax < dom.bx && dom.ay < dom.by))
        throw InvalidParameterError("integrate_2d: empty domain");

    // Absolute inner error accumulates with weight ~ the outer range, so it is
    // scaled down by it; relative error does not compound, so it is passed
    // through (halving it as well runs into the Gauss-Kronrod estimate floor
    // on regulated-spike integrands).
    QuadratureConfig inner = cfg;
    inner.abs_tol = 0.25 * cfg.abs_tol / (dom.by - dom.ay);
    inner.rel_tol = cfg.rel_tol;
    inner.max_subdivisions = cfg.max_boxes_2d;

    QuadratureConfig outer = cfg;
    outer.abs_tol = 0.75 * cfg.abs_tol;
    outer.rel_tol = 0.75 * cfg.rel_tol;
    outer.max_subdivisions = cfg.max_boxes_2d;

    const auto g = [&](double y) {
        return adaptive_1d<V>([&f, y](double x) { return f(x, y); }, dom.ax, dom.bx, inner, {});
    };
    return adaptive_1d<V>(g, dom.ay, dom.by, outer, {});
}

}  // namespace

Complex integrate_2d(const std::function<Complex(double, double)>& f, const Rect& dom,
                     const QuadratureConfig& cfg) {
    return adaptive_2d<Complex>(f, dom, cfg);
}

double integrate_2d_real(const std::function<double(double, double)>& f, const Rect& dom,
                         const QuadratureConfig& cfg) {
    return adaptive_2d<double>(f, dom, cfg);
}

ExtrapolationReport extrapolate_epsilon(
    std::span<const std::pair<double, Complex>> samples) {
    if (samples.size() < 3)
        throw InvalidParameterError("extrapolate_epsilon: need at least 3 samples");
    for (size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].first > 0.0))
            throw InvalidParameterError("extrapolate_epsilon: eps must be > 0");
        if (i > 0 && !(samples[i].first < samples[i - 1].first))
            throw InvalidParameterError("extrapolate_epsilon: eps must be strictly decreasing");
    }

    const size_t m = samples.size();
    // Neville table evaluated at eps = 0; column j is exact for polynomials of
    // degree j, so the leading O(eps) error cancels first.
    std::vector<std::vector<Complex>> t(m);
    t[0].resize(m);
    for (size_t i = 0; i < m; ++i) t[0][i] = samples[i].second;
    for (size_t j = 1; j < m; ++j) {
        t[j].resize(m - j);
        for (size_t i = 0; i + j < m; ++i) {
            const double e0 = samples[i].first;
            const double e1 = samples[i + j].first;
            t[j][i] = (e0 * t[j - 1][i + 1] - e1 * t[j - 1][i]) / (e0 - e1);
        }
    }

    ExtrapolationReport rep;
    rep.values_at_eps.assign(samples.begin(), samples.end());
    rep.extrapolated = t[m - 1][0];
    rep.residual = std::abs(t[m - 1][0] - t[m - 2][0]) + std::abs(t[m - 1][0] - t[m - 2][1]);
    return rep;
}

}  // namespace ctcprobe
