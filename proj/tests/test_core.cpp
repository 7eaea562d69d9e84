// Core plumbing: random streams, graph containers, graphon sampling and
// signal discretization.

#include <catch2/catch_amalgamated.hpp>

#include <gsp/graph.hpp>
#include <gsp/graphon.hpp>
#include <gsp/rng.hpp>
#include <gsp/sampling.hpp>
#include <gsp/signal.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

using Catch::Matchers::WithinAbs;
using namespace gsp;

// ---------------------------------------------------------------- rng

TEST_CASE("equal seeds replay the same random stream", "[rng]") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.uniform() == b.uniform());
    Rng c(42), d(43);
    int equal = 0;
    for (int i = 0; i < 1000; ++i) equal += c.next_u64() == d.next_u64();
    CHECK(equal == 0);
}

TEST_CASE("uniform draws stay inside the half-open unit interval", "[rng]") {
    Rng rng(7);
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    // Mean of 20k uniforms concentrates around 1/2 (sigma ~ 0.002).
    CHECK_THAT(sum / 20000.0, WithinAbs(0.5, 0.01));
}

TEST_CASE("ranged uniform and bernoulli draws behave", "[rng]") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform(-1.0, 1.0);
        REQUIRE(u >= -1.0);
        REQUIRE(u < 1.0);
    }
    Rng coin(12);
    int heads = 0;
    for (int i = 0; i < 10000; ++i) heads += coin.bernoulli(0.25);
    CHECK_THAT(heads / 10000.0, WithinAbs(0.25, 0.02));
    Rng degenerate(13);
    for (int i = 0; i < 100; ++i) {
        REQUIRE_FALSE(degenerate.bernoulli(0.0));
        REQUIRE(degenerate.bernoulli(1.0));
    }
}

TEST_CASE("seed derivation separates neighboring cells", "[rng]") {
    const std::uint64_t base = derive_seed(99, 1, 2, 3);
    CHECK(base != derive_seed(99, 1, 2, 4));
    CHECK(base != derive_seed(99, 1, 3, 3));
    CHECK(base != derive_seed(99, 2, 2, 3));
    CHECK(base != derive_seed(98, 1, 2, 3));
    // Deterministic: the same inputs always map to the same seed.
    CHECK(base == derive_seed(99, 1, 2, 3));
    // Scrambling: equal inputs in different positions disagree.
    CHECK(derive_seed(0, 5, 0) != derive_seed(0, 0, 5));
}

TEST_CASE("child streams decouple from their parent", "[rng]") {
    Rng parent(21);
    Rng child = parent.child();
    int equal = 0;
    for (int i = 0; i < 100; ++i) equal += parent.next_u64() == child.next_u64();
    CHECK(equal == 0);
}

// -------------------------------------------------------------- graph

TEST_CASE("graph construction validates its adjacency matrix", "[graph]") {
    Eigen::MatrixXd rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(Graph(rect), std::invalid_argument);

    Eigen::MatrixXd asym(2, 2);
    asym << 0.0, 0.4, 0.6, 0.0;
    CHECK_THROWS_AS(Graph(asym), std::invalid_argument);

    Eigen::MatrixXd hot(2, 2);
    hot << 0.0, 1.5, 1.5, 0.0;
    CHECK_THROWS_AS(Graph(hot), std::invalid_argument);

    Eigen::MatrixXd cold(2, 2);
    cold << 0.0, -0.5, -0.5, 0.0;
    CHECK_THROWS_AS(Graph(cold), std::invalid_argument);

    CHECK_THROWS_AS(Graph(Eigen::MatrixXd()), std::invalid_argument);
}

TEST_CASE("tiny asymmetry is symmetrized exactly", "[graph]") {
    Eigen::MatrixXd almost(2, 2);
    almost << 0.2, 0.5, 0.5 + 5e-13, 0.2;
    const Graph g(almost);
    CHECK(g.adjacency()(0, 1) == g.adjacency()(1, 0));
}

TEST_CASE("graph max degree is the largest row sum", "[graph]") {
    Eigen::MatrixXd adj(3, 3);
    adj << 0.0, 1.0, 0.5,
           1.0, 0.0, 0.0,
           0.5, 0.0, 0.0;
    const Graph g(adj);
    CHECK_THAT(g.max_degree(), WithinAbs(1.5, 1e-15));
    CHECK(g.size() == 3);
}

// ----------------------------------------------------- sampling (mean)

TEST_CASE("weighted sample of a constant graphon is the constant matrix", "[sampling]") {
    const Graph g = deterministic_graph(Graphon::constant(0.5), 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) REQUIRE(g.adjacency()(i, j) == 0.5);
}

TEST_CASE("weighted sample reads the graphon at the grid i/n", "[sampling]") {
    // Two-block graphon, boundary at 1/2: latent points 0, .25, .5, .75
    // put nodes {0,1} in the first community and {2,3} in the second.
    const Graphon w = Graphon::sbm({0.5}, (Eigen::MatrixXd(2, 2) << 0.8, 0.1,
                                           0.1, 0.6).finished());
    const Graph g = deterministic_graph(w, 4);
    Eigen::MatrixXd expected(4, 4);
    expected << 0.8, 0.8, 0.1, 0.1,
                0.8, 0.8, 0.1, 0.1,
                0.1, 0.1, 0.6, 0.6,
                0.1, 0.1, 0.6, 0.6;
    CHECK((g.adjacency() - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zero-rate exponential graphon samples to the all-ones matrix", "[sampling]") {
    const Graph g = deterministic_graph(Graphon::smooth_exp(0.0), 5);
    CHECK(g.adjacency().minCoeff() == 1.0);
    CHECK(g.adjacency().maxCoeff() == 1.0);
}

TEST_CASE("weighted sampling can drop self loops", "[sampling]") {
    const Graph g = deterministic_graph(Graphon::constant(0.7), 4, /*self_loops=*/false);
    CHECK(g.adjacency().diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.adjacency()(0, 1) == 0.7);
}

TEST_CASE("sampling rejects non-positive sizes", "[sampling]") {
    CHECK_THROWS_AS(deterministic_graph(Graphon::constant(0.5), 0), std::invalid_argument);
    CHECK_THROWS_AS(stochastic_graph(Graphon::constant(0.5), 0, 1u), std::invalid_argument);
}

// ------------------------------------------------ sampling (bernoulli)

TEST_CASE("bernoulli samples are binary, symmetric and seed-stable", "[sampling]") {
    const Graphon w = Graphon::constant(0.5);
    const Graph a = stochastic_graph(w, 40, 123u);
    const Graph b = stochastic_graph(w, 40, 123u);
    CHECK(a.adjacency() == b.adjacency());

    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j) {
            const double v = a.adjacency()(i, j);
            REQUIRE((v == 0.0 || v == 1.0));
            REQUIRE(v == a.adjacency()(j, i));
        }

    const Graph c = stochastic_graph(w, 40, 124u);
    CHECK(a.adjacency() != c.adjacency());
}

TEST_CASE("extreme graphons force their sample deterministically", "[sampling]") {
    const Graph ones = stochastic_graph(Graphon::constant(1.0), 8, 5u);
    CHECK(ones.adjacency().minCoeff() == 1.0);
    const Graph zeros = stochastic_graph(Graphon::constant(0.0), 8, 5u);
    CHECK(zeros.adjacency().maxCoeff() == 0.0);
}

TEST_CASE("bernoulli edge density matches the constant rate", "[sampling]") {
    const int n = 1000;
    const Graph g = stochastic_graph(Graphon::constant(0.5), n, 777u);
    double count = 0.0, total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            count += g.adjacency()(i, j);
            total += 1.0;
        }
    // 500500 independent draws: 4 sigma is ~0.0028.
    CHECK_THAT(count / total, WithinAbs(0.5, 4.0 * std::sqrt(0.25 / total)));
}

TEST_CASE("mean of many bernoulli samples approaches the weighted sample", "[sampling]") {
    const Graphon w = Graphon::sbm({0.5}, (Eigen::MatrixXd(2, 2) << 0.7, 0.2,
                                           0.2, 0.5).finished());
    const int n = 16, reps = 200;
    const Eigen::MatrixXd expected = deterministic_graph(w, n).adjacency();
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r < reps; ++r)
        mean += stochastic_graph(w, n, derive_seed(2024, r, 0)).adjacency();
    mean /= static_cast<double>(reps);
    CHECK((mean - expected).cwiseAbs().maxCoeff() <= 4.0 * std::sqrt(0.25 / reps));
}

TEST_CASE("bernoulli sampling can skip self loops", "[sampling]") {
    const Graph g = stochastic_graph(Graphon::constant(1.0), 6, 9u, /*self_loops=*/false);
    CHECK(g.adjacency().diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.adjacency()(0, 1) == 1.0);
}

TEST_CASE("sample mode names round-trip through to_string", "[sampling]") {
    CHECK(std::string(to_string(SampleMode::Deterministic)) == "deterministic");
    CHECK(std::string(to_string(SampleMode::Stochastic)) == "stochastic");
}

// ------------------------------------------------------------ signals

TEST_CASE("signal families evaluate their closed forms", "[signal]") {
    const GraphonSignal c = GraphonSignal::constant(0.8);
    CHECK(c(0.0) == 0.8);
    CHECK(c(1.0) == 0.8);

    const GraphonSignal lin = GraphonSignal::linear(0.25, 0.5);
    CHECK_THAT(lin(0.0), WithinAbs(0.25, 1e-15));
    CHECK_THAT(lin(0.5), WithinAbs(0.5, 1e-15));
    CHECK_THAT(lin(1.0), WithinAbs(0.75, 1e-15));

    const GraphonSignal cosv = GraphonSignal::cosine(2.0, 3.0);
    CHECK_THAT(cosv(0.0), WithinAbs(2.0, 1e-15));
    CHECK_THAT(cosv(1.0 / 3.0), WithinAbs(-2.0, 1e-12));
    CHECK_THAT(cosv(1.0), WithinAbs(2.0 * std::cos(3.0 * std::acos(-1.0)), 1e-12));
}

TEST_CASE("step signals map cells left-closed with u=1 in the last cell", "[signal]") {
    Eigen::VectorXd v(4);
    v << 1.0, 2.0, 3.0, 4.0;
    const GraphonSignal s = GraphonSignal::step(v);
    CHECK(s(0.0) == 1.0);
    CHECK(s(0.24) == 1.0);
    CHECK(s(0.25) == 2.0);
    CHECK(s(0.5) == 3.0);
    CHECK(s(0.999) == 4.0);
    CHECK(s(1.0) == 4.0);
    CHECK_THROWS_AS(s(1.5), std::domain_error);
    CHECK_THROWS_AS(s(-0.1), std::domain_error);
    CHECK_THROWS_AS(GraphonSignal::step(Eigen::VectorXd()), std::invalid_argument);
}

TEST_CASE("sampling a signal reads it at the grid i/n", "[signal]") {
    const Eigen::VectorXd ones = sample_signal(GraphonSignal::constant(1.0), 5);
    CHECK(ones.size() == 5);
    CHECK(ones.minCoeff() == 1.0);
    CHECK(ones.maxCoeff() == 1.0);

    const Eigen::VectorXd ramp = sample_signal(GraphonSignal::linear(0.0, 1.0), 4);
    Eigen::VectorXd expected(4);
    expected << 0.0, 0.25, 0.5, 0.75;
    CHECK((ramp - expected).cwiseAbs().maxCoeff() <= 1e-15);

    Eigen::VectorXd halves(2);
    halves << 2.0, 5.0;
    const Eigen::VectorXd steps = sample_signal(GraphonSignal::step(halves), 4);
    Eigen::VectorXd want(4);
    want << 2.0, 2.0, 5.0, 5.0;
    CHECK(steps == want);

    CHECK_THROWS_AS(sample_signal(GraphonSignal::constant(1.0), 0), std::invalid_argument);
}

TEST_CASE("inducing then sampling an aligned step signal is the identity", "[signal]") {
    Eigen::VectorXd v(6);
    v << -1.0, 0.5, 2.0, 0.0, 3.5, -0.25;
    const Eigen::VectorXd back = sample_signal(induce_signal(v), 6);
    CHECK(back == v);
}

TEST_CASE("signal norms follow the closed forms", "[signal]") {
    CHECK(GraphonSignal::constant(-3.0).l2_norm() == 3.0);

    Eigen::VectorXd flat(4);
    flat << 1.0, 1.0, 1.0, 1.0;
    CHECK_THAT(induce_signal(flat).l2_norm(), WithinAbs(1.0, 1e-15));
    CHECK_THAT(flat.norm(), WithinAbs(2.0, 1e-15));

    Eigen::VectorXd two(2);
    two << 3.0, 4.0;
    CHECK_THAT(two.norm(), WithinAbs(5.0, 1e-15));
    CHECK_THAT(induce_signal(two).l2_norm(), WithinAbs(5.0 / std::sqrt(2.0), 1e-12));

    // Quadrature families: int (a cos(pi k u))^2 du = a^2/2 for integer
    // k >= 1, and int (a + b u)^2 du = a^2 + a b + b^2/3.
    CHECK_THAT(GraphonSignal::cosine(2.0, 3.0).l2_norm(), WithinAbs(std::sqrt(2.0), 1e-6));
    CHECK_THAT(GraphonSignal::linear(1.0, 1.0).l2_norm(),
               WithinAbs(std::sqrt(7.0 / 3.0), 1e-6));
}

TEST_CASE("node norm is sqrt(n) times the induced-signal norm", "[signal]") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform() * 64);
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x(i) = rng.uniform(-2.0, 2.0);
        const double lhs = x.norm();
        const double rhs = std::sqrt(static_cast<double>(n)) * induce_signal(x).l2_norm();
        REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-12 * std::max(1.0, lhs)));
    }
}
