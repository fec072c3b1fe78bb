#include "bailout/errors.hpp"
#include "bailout/optimize.hpp"

#include <string>

namespace bailout {

lp::LinearProgram relaxation_program(const BailoutProblem &problem, std::span<const double> x,
                                     RelaxationLayout &layout) {
    const auto &net = problem.net();
    const std::size_t n = net.size();
    if (x.size() != n)
        throw InvalidInput("shock has wrong length");
    if (!problem.objective().is_linear())
        throw InvalidInput("the relaxation needs a linear objective; augment absolute solvency first");
    const auto &v = problem.objective().v();
    const auto &L = problem.stimulus();

    layout.n = n;
    lp::LinearProgram program;
    for (std::size_t j = 0; j < n; ++j)
        program.add_variable(v[j], 0.0, net.p()[j]);
    for (std::size_t j = 0; j < n; ++j)
        program.add_variable(0.0, 0.0, 1.0);

    for (std::size_t j = 0; j < n; ++j) {
        program.add_row(lp::Sense::LessEqual, net.c()[j] - x[j]);
        program.add_entry(j, layout.payment(j), 1.0);
        program.add_entry(j, layout.decision(j), -L[j]);
    }
    for (const auto &e : net.edges())
        program.add_entry(e.to, layout.payment(e.from), -e.liability / net.p()[e.from]);

    layout.budget_row = program.add_row(lp::Sense::LessEqual, problem.budget());
    for (std::size_t j = 0; j < n; ++j)
        program.add_entry(layout.budget_row, layout.decision(j), L[j]);
    return program;
}

RelaxationResult solve_relaxation(const BailoutProblem &problem, std::span<const double> x,
                                  const lp::Solver &solver) {
    RelaxationLayout layout;
    auto program = relaxation_program(problem, x, layout);
    auto sol = solver.solve(program);
    if (!sol.optimal())
        throw SolverError("relaxation LP failed: " + std::string(lp::to_string(sol.status)) + " " + sol.message);

    const std::size_t n = layout.n;
    RelaxationResult result;
    result.payments.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<double> z(sol.x.begin() + static_cast<std::ptrdiff_t>(n), sol.x.end());
    result.allocation = Allocation::fractional(std::move(z), problem);
    result.opt_r = sol.objective;
    result.iterations = sol.iterations;
    return result;
}

} // namespace bailout
