#include "bailout/lp.hpp"
#include "bailout/rng.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>

using namespace bailout;
using lp::LinearProgram;
using lp::Sense;

namespace {

// Vertex enumeration: every choice of n tight constraints among rows and bounds.
double vertex_oracle(const LinearProgram &prog) {
    const std::size_t n = prog.num_variables();
    struct Halfspace {
        Eigen::VectorXd a;
        double rhs;
    };
    std::vector<Halfspace> tight;
    for (std::size_t r = 0; r < prog.num_rows(); ++r) {
        Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        for (const auto &e : prog.entries)
            if (e.row == r)
                a(static_cast<Eigen::Index>(e.col)) += e.value;
        tight.push_back({a, prog.rhs[r]});
    }
    for (std::size_t j = 0; j < n; ++j) {
        Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        a(static_cast<Eigen::Index>(j)) = 1.0;
        tight.push_back({a, prog.lower[j]});
        tight.push_back({a, prog.upper[j]});
    }
    double best = -std::numeric_limits<double>::infinity();
    const std::size_t m = tight.size();
    std::vector<std::size_t> pick(n);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
        if (depth == n) {
            Eigen::MatrixXd M(n, n);
            Eigen::VectorXd rhs(n);
            for (std::size_t k = 0; k < n; ++k) {
                M.row(static_cast<Eigen::Index>(k)) = tight[pick[k]].a.transpose();
                rhs(static_cast<Eigen::Index>(k)) = tight[pick[k]].rhs;
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
            if (lu.rank() < static_cast<Eigen::Index>(n))
                return;
            const Eigen::VectorXd x = lu.solve(rhs);
            std::vector<double> xv(x.data(), x.data() + n);
            if (prog.max_violation(xv) > 1e-9)
                return;
            double val = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                val += prog.objective[j] * xv[j];
            best = std::max(best, val);
            return;
        }
        for (std::size_t k = from; k < m; ++k) {
            pick[depth] = k;
            rec(depth + 1, k + 1);
        }
    };
    rec(0, 0);
    return best;
}

LinearProgram random_program(SeededRng &rng, std::size_t n, std::size_t rows) {
    LinearProgram prog;
    for (std::size_t j = 0; j < n; ++j)
        prog.add_variable(rng.uniform() * 2 - 0.5, -rng.uniform(), 1.0 + rng.uniform());
    for (std::size_t r = 0; r < rows; ++r) {
        const auto sense = rng.below(4) == 0 ? Sense::GreaterEqual : Sense::LessEqual;
        // rhs chosen so that x = 0 satisfies every row
        const auto row = prog.add_row(sense, sense == Sense::LessEqual ? rng.uniform() : -rng.uniform());
        for (std::size_t j = 0; j < n; ++j)
            if (rng.bernoulli(0.7))
                prog.add_entry(row, j, rng.uniform() * 2 - 1);
    }
    return prog;
}

} // namespace

TEST_CASE("simplex matches vertex enumeration on random bounded programs") {
    SeededRng rng(11);
    const lp::DenseSimplex solver;
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + rng.below(4);
        const std::size_t rows = rng.below(5);
        const auto prog = random_program(rng, n, rows);
        const auto sol = solver.solve(prog);
        REQUIRE(sol.optimal());
        CHECK(prog.max_violation(sol.x) <= 1e-9);
        CHECK(sol.objective == doctest::Approx(vertex_oracle(prog)).epsilon(1e-9));
    }
}

TEST_CASE("equality rows and a textbook optimum") {
    // max 3x + 2y  s.t. x + y <= 4, x + 3y <= 6, x - y = 1, 0 <= x, y
    LinearProgram prog;
    prog.add_variable(3, 0, lp::kInfinity);
    prog.add_variable(2, 0, lp::kInfinity);
    auto r0 = prog.add_row(Sense::LessEqual, 4);
    prog.add_entry(r0, 0, 1);
    prog.add_entry(r0, 1, 1);
    auto r1 = prog.add_row(Sense::LessEqual, 6);
    prog.add_entry(r1, 0, 1);
    prog.add_entry(r1, 1, 3);
    auto r2 = prog.add_row(Sense::Equal, 1);
    prog.add_entry(r2, 0, 1);
    prog.add_entry(r2, 1, -1);
    const auto sol = lp::default_solver().solve(prog);
    REQUIRE(sol.optimal());
    CHECK(sol.x[0] == doctest::Approx(2.25));
    CHECK(sol.x[1] == doctest::Approx(1.25));
    CHECK(sol.objective == doctest::Approx(9.25));
}

TEST_CASE("infeasible and unbounded programs are reported") {
    LinearProgram bad;
    bad.add_variable(1, 0, 1);
    auto r = bad.add_row(Sense::GreaterEqual, 2);
    bad.add_entry(r, 0, 1);
    CHECK(lp::default_solver().solve(bad).status == lp::Status::Infeasible);

    LinearProgram open;
    open.add_variable(1, 0, lp::kInfinity);
    open.add_variable(0, 0, 1);
    auto r2 = open.add_row(Sense::LessEqual, 1);
    open.add_entry(r2, 1, 1);
    CHECK(lp::default_solver().solve(open).status == lp::Status::Unbounded);
}

TEST_CASE("degenerate program terminates") {
    // Many redundant constraints through the same vertex.
    LinearProgram prog;
    prog.add_variable(1, 0, lp::kInfinity);
    prog.add_variable(1, 0, lp::kInfinity);
    for (int k = 1; k <= 20; ++k) {
        auto r = prog.add_row(Sense::LessEqual, k);
        prog.add_entry(r, 0, k);
        prog.add_entry(r, 1, k);
    }
    const auto sol = lp::default_solver().solve(prog);
    REQUIRE(sol.optimal());
    CHECK(sol.objective == doctest::Approx(1.0));
}
