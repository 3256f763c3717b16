#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hammerstein/errors.hpp"
#include "hammerstein/quadrature.hpp"
#include "oracle.hpp"

using namespace hammerstein;

namespace {

// int_0^1 t log|t - 0.25| dt, 40-digit mpmath quadrature.
constexpr double kMoment1LogQuarter = -0.5531726702467688916;

HammersteinProblem simple_problem(SingularKernel k, Nonlinearity nl) {
    return make_problem(0.0, 1.0, std::move(k), [](double, double) { return 1.0; }, std::move(nl),
                        [](double) { return 0.0; });
}

std::vector<SingularKernel> all_kernels() {
    return {SingularKernel::logarithmic(), SingularKernel::algebraic_power(0.5),
            SingularKernel::smooth([](double s, double t) { return std::exp(-(s - t) * (s - t)); },
                                   "gauss")};
}

SampledFunction sampled_on_fine(const std::function<double(double)>& f, std::size_t n_fine) {
    auto pts = make_grid(0.0, 1.0, n_fine).nodes;
    return SampledFunction::sample(pts, f);
}

}  // namespace

TEST_CASE("moment0: closed forms") {
    const auto log = SingularKernel::logarithmic();
    CHECK(moment0(log, 0.5, 0.0, 1.0) == doctest::Approx(std::log(0.5) - 1.0).epsilon(1e-15));
    CHECK(moment0(log, 0.5, 0.0, 1.0) == doctest::Approx(oracle::moment(log, 0.5, 0, 1, 0)).epsilon(1e-13));
    CHECK(moment0(log, 0.3, 0.7, 0.7) == 0.0);
    const auto root = SingularKernel::algebraic_power(0.5);
    CHECK(moment0(root, 0.0, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(oracle::moment(root, 0.0, 0, 1, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(moment0(log, 0.5, 0.7, 0.2), DomainError);
}

TEST_CASE("moment1: closed forms") {
    const auto log = SingularKernel::logarithmic();
    CHECK(moment1(log, 0.5, 0.0, 1.0) == doctest::Approx(0.5 * (std::log(0.5) - 1.0)).epsilon(1e-15));
    CHECK(moment1(log, 0.25, 0.0, 1.0) == doctest::Approx(kMoment1LogQuarter).epsilon(1e-15));
    for (const auto& k : all_kernels()) CHECK(moment1(k, 0.4, 0.6, 0.6) == 0.0);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& k : all_kernels()) {
        for (int i = 0; i < 20; ++i) {
            double c = u(rng), d = u(rng);
            if (c > d) std::swap(c, d);
            const double s = u(rng);
            CHECK(moment0(k, s, c, d) == doctest::Approx(oracle::moment(k, s, c, d, 0)).epsilon(1e-11).scale(1.0));
            CHECK(moment1(k, s, c, d) == doctest::Approx(oracle::moment(k, s, c, d, 1)).epsilon(1e-11).scale(1.0));
        }
    }
}

TEST_CASE("product_weights: smooth unit kernel gives trapezoidal weights") {
    const auto one = SingularKernel::smooth([](double, double) { return 1.0; }, "one");
    const auto g = make_grid(0.0, 1.0, 4);
    for (double s : {0.0, 0.3, 1.0}) {
        const auto w = product_weights(g, one, s).w;
        CHECK(w == std::vector<double>{0.125, 0.25, 0.25, 0.25, 0.125});
    }
}

TEST_CASE("product_weights: log kernel, n = 2, matches hat integrals") {
    const auto log = SingularKernel::logarithmic();
    const auto g = make_grid(0.0, 1.0, 2);
    const auto w = product_weights(g, log, 0.5).w;
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(w[j] == doctest::Approx(oracle::weight(g, log, 0.5, j)).epsilon(1e-10).scale(1.0));
}

TEST_CASE("product_weights: far-field and near-field panels against the oracle") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& k : all_kernels()) {
        const auto g = make_grid(0.0, 1.0, 50);
        for (int i = 0; i < 5; ++i) {
            const double s = u(rng);
            const auto w = product_weights(g, k, s).w;
            for (std::size_t j = 0; j <= g.n; ++j)
                REQUIRE(std::abs(w[j] - oracle::weight(g, k, s, j)) <= 1e-10);
        }
    }
}

TEST_CASE("product_weights: weights sum to moment0") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& k : all_kernels()) {
        for (std::size_t n : {1u, 2u, 7u, 50u}) {
            const auto g = make_grid(0.0, 1.0, n);
            for (int i = 0; i < 100; ++i) {
                const double s = u(rng);
                const auto w = product_weights(g, k, s).w;
                double sum = 0.0;
                for (double x : w) sum += x;
                const double m0 = moment0(k, s, 0.0, 1.0);
                REQUIRE(std::abs(sum - m0) <= 1e-12 * (1.0 + std::abs(m0)));
            }
        }
    }
}

TEST_CASE("product_weights: reflection s -> a + b - s reverses the vector") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& k : {SingularKernel::logarithmic(), SingularKernel::algebraic_power(0.3)}) {
        const auto g = make_grid(0.0, 1.0, 9);
        for (int i = 0; i < 50; ++i) {
            const double s = u(rng);
            const auto w = product_weights(g, k, s).w;
            const auto r = product_weights(g, k, 1.0 - s).w;
            for (std::size_t j = 0; j <= g.n; ++j)
                REQUIRE(std::abs(w[j] - r[g.n - j]) <= 1e-12 * std::max(1.0, std::abs(w[j])));
        }
    }
}

TEST_CASE("product_weights: s outside the grid is rejected") {
    CHECK_THROWS_AS(product_weights(make_grid(0, 1, 4), SingularKernel::logarithmic(), 1.5),
                    DomainError);
}

TEST_CASE("apply_Tn") {
    const auto g = make_grid(0.0, 1.0, 4);
    const auto x = SampledFunction::sample(g.nodes, [](double) { return 0.7; });
    const std::vector<double> zeros(5, 0.0);
    const auto logp = simple_problem(SingularKernel::logarithmic(), nonlinearity("square"));
    CHECK(apply_Tn(g, logp, x, zeros, 0.3) == 0.0);

    const auto flat = simple_problem(SingularKernel::smooth([](double, double) { return 1.0; }),
                                     nonlinearity("identity"));
    std::vector<double> lin(g.nodes.begin(), g.nodes.end());
    CHECK(apply_Tn(g, flat, x, lin, 0.6) == 0.5);

    // Product rule is exact for data that is piecewise linear on the grid.
    const auto g8 = make_grid(0.0, 1.0, 8);
    const auto x8 = SampledFunction::sample(g8.nodes, [](double) { return 0.0; });
    const auto logid = simple_problem(SingularKernel::logarithmic(), nonlinearity("identity"));
    std::vector<double> hv;
    for (double t : g8.nodes) hv.push_back(std::sin(3 * t) + t * t);
    const SampledFunction interp(g8.nodes, hv);
    for (double s : {0.0, 0.31, 0.5, 0.875}) {
        double ref = 0.0;
        for (std::size_t j = 0; j < g8.n; ++j)
            ref += oracle::split_integral(
                [&](double t, double u) {
                    return std::log(std::abs(u)) *
                           interp(std::clamp(t, g8.nodes[j], g8.nodes[j + 1]));
                },
                s, g8.nodes[j], g8.nodes[j + 1]);
        CHECK(apply_Tn(g8, logid, x8, hv, s) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
    }

    const auto missing = SampledFunction::sample({0.0, 1.0}, [](double) { return 0.0; });
    CHECK_THROWS_AS(apply_Tn(g, logp, missing, zeros, 0.3), DomainError);
}

TEST_CASE("eval_K: trivial integrands") {
    QuadratureConfig fine;
    fine.n_fine = 256;
    QuadratureConfig sub;
    sub.mode = KMode::SingularitySubtraction;
    const auto x = sampled_on_fine([](double t) { return std::cos(5 * t); }, 256);
    const auto zero = simple_problem(SingularKernel::logarithmic(), nonlinearity("zero"));
    for (double s : {0.0, 0.4, 1.0}) {
        CHECK(eval_K(zero, x, s, fine) == 0.0);
        CHECK(eval_K(zero, x, s, sub) == 0.0);
    }
    const auto sin_pi = simple_problem(SingularKernel::logarithmic(), nonlinearity("sin_pi"));
    const auto ones = sampled_on_fine([](double) { return 1.0; }, 256);
    for (double s : {0.0, 0.5, 0.77})
        CHECK(std::abs(eval_K(sin_pi, ones, s, fine)) <= 1e-15);
}

TEST_CASE("eval_K: both modes match the oracle for x(t) = t") {
    const auto p = simple_problem(SingularKernel::logarithmic(), nonlinearity("identity"));
    const double ref = oracle::split_integral(
        [](double t, double u) { return std::log(std::abs(u)) * t; }, 0.5, 0.0, 1.0);
    CHECK(ref == doctest::Approx(-0.8465735902799727).epsilon(1e-14));
    const auto x = sampled_on_fine([](double t) { return t; }, 4096);
    QuadratureConfig fine;
    QuadratureConfig sub;
    sub.mode = KMode::SingularitySubtraction;
    CHECK(std::abs(eval_K(p, x, 0.5, fine) - ref) <= 1e-6);
    CHECK(std::abs(eval_K(p, x, 0.5, sub) - ref) <= 1e-6);
}

TEST_CASE("eval_K: modes agree on smooth iterates") {
    QuadratureConfig fine;
    QuadratureConfig sub;
    sub.mode = KMode::SingularitySubtraction;
    const auto x = sampled_on_fine([](double t) { return 1.0 + 0.5 * std::sin(2 * t); }, 4096);
    for (const auto& k : all_kernels()) {
        const auto p = make_problem(0, 1, k, [](double s, double t) { return std::cos(s - t); },
                                    nonlinearity("cubic"), [](double) { return 0.0; });
        for (double s : {0.0, 0.123, 0.5, 0.9, 1.0})
            CHECK(std::abs(eval_K(p, x, s, fine) - eval_K(p, x, s, sub)) <= 1e-6);
    }
}

TEST_CASE("eval_K_reference") {
    const auto zero = simple_problem(SingularKernel::logarithmic(), nonlinearity("zero"));
    CHECK(eval_K_reference(zero, [](double t) { return t; }, 0.3, 1e-12) == 0.0);

    const auto unit = simple_problem(SingularKernel::logarithmic(), polynomial_nonlinearity({1.0}));
    for (double s : {0.0, 0.2, 0.5, 1.0})
        CHECK(std::abs(eval_K_reference(unit, [](double) { return 0.0; }, s, 1e-12) -
                       moment0(SingularKernel::logarithmic(), s, 0, 1)) <= 1e-12);

    // Agreement with eval_K in both modes on random smooth data.
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    QuadratureConfig fine;
    QuadratureConfig sub;
    sub.mode = KMode::SingularitySubtraction;
    const auto p = simple_problem(SingularKernel::logarithmic(), nonlinearity("square"));
    for (int i = 0; i < 20; ++i) {
        const double s = u(rng);
        const double amp = u(rng);
        const double freq = 1.0 + 3.0 * u(rng);
        const std::function<double(double)> f = [=](double t) { return amp * std::cos(freq * t); };
        const auto x = sampled_on_fine(f, 4096);
        const double ref = eval_K_reference(p, f, s, 1e-11);
        CHECK(std::abs(ref - eval_K(p, x, s, fine)) <= 1e-6);
        CHECK(std::abs(ref - eval_K(p, x, s, sub)) <= 1e-6);
    }

    CHECK_THROWS_AS(eval_K_reference(p, [](double t) { return t; }, 0.5, 1e-16, 200),
                    QuadratureError);
}

TEST_CASE("KOperator reproduces eval_K bit for bit") {
    const auto p = make_problem(0, 1, SingularKernel::logarithmic(),
                                [](double s, double t) { return 1.0 + s * t; },
                                nonlinearity("sin_pi"), [](double) { return 0.0; });
    const auto x = sampled_on_fine([](double t) { return 0.3 + t * t; }, 128);
    for (KMode mode : {KMode::FineProductRule, KMode::SingularitySubtraction}) {
        QuadratureConfig cfg;
        cfg.n_fine = 128;
        cfg.mode = mode;
        const std::vector<double> targets{0.0, 0.1, 0.37, 0.5, 1.0};
        const KOperator K(p, cfg, targets);
        const auto out = K.apply(x);
        for (std::size_t i = 0; i < targets.size(); ++i)
            CHECK(out[i] == eval_K(p, x, targets[i], cfg));
    }
}

TEST_CASE("graded_rule integrates polynomials and a log singularity") {
    for (double s : {0.0, 0.3, 1.0}) {
        const auto r = graded_rule(0.0, 1.0, s, 16);
        double one = 0.0, lg = 0.0;
        for (std::size_t q = 0; q < r.nodes.size(); ++q) {
            one += r.weights[q];
            lg += r.weights[q] * std::log(std::abs(r.nodes[q] - s)) * (r.nodes[q] - s);
        }
        CHECK(one == doctest::Approx(1.0).epsilon(1e-14));
        const double ref = oracle::split_integral(
            [](double, double u) { return std::log(std::abs(u)) * u; }, s, 0.0, 1.0);
        CHECK(lg == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("QuadratureConfig validation") {
    QuadratureConfig c;
    c.n_fine = 1;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.n_fine = 8;
    c.gl_points = 1;
    CHECK_THROWS_AS(c.validate(), DomainError);
}
