#include "scm/kernels.hpp"

#include "scm/error.hpp"
#include "scm/solver.hpp"

#include <omp.h>

#include <atomic>
#include <limits>

namespace scm::kernels {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct SweepState {
  Distribution local;
  std::size_t failed = kNone;
};

// Accumulates the solution of exogenous assignment `index` into `state`.
void sweep_one(const Scm& scm, std::size_t index, std::vector<ValueIndex>& full, SweepState& state) {
  const auto exo = scm.exo_assignment(index);
  const Rational p = scm.exo_probability(exo);
  if (p == 0)
    return;
  std::copy(exo.begin(), exo.end(), full.begin() + static_cast<std::ptrdiff_t>(scm.endo_count()));
  if (scm.acyclic()) {
    evaluate_acyclic(scm, full);
  } else {
    const auto solved = solve(scm, exo);
    if (solved.solutions.size() != 1) {
      state.failed = std::min(state.failed, index);
      return;
    }
    std::copy(solved.solutions[0].begin(), solved.solutions[0].end(), full.begin());
  }
  state.local.add(full, p);
}

[[noreturn]] void throw_for(const Scm& scm, std::size_t index) {
  const auto exo = scm.exo_assignment(index);
  const auto solved = solve(scm, exo);
  nlohmann::ordered_json details;
  nlohmann::ordered_json e = nlohmann::ordered_json::object();
  for (std::size_t j = 0; j < exo.size(); ++j)
    e[scm.exogenous()[j].name] = scm.exogenous()[j].space.token(exo[j]);
  details["exogenous"] = e;
  details["solution_count"] = solved.solutions.size();
  if (solved.solutions.empty())
    throw ScmError(ErrorCode::NoSolution, "structural equations have no solution for an exogenous assignment",
                   details);
  throw ScmError(ErrorCode::NonUniqueSolution,
                 "structural equations have " + std::to_string(solved.solutions.size()) +
                     " solutions for an exogenous assignment",
                 details);
}

} // namespace

Distribution joint_sweep(const Scm& scm, Execution exec) {
  const std::size_t count = scm.exo_assignment_count();
  const auto nodes = scm.all_nodes();
  Distribution result(nodes);
  std::size_t failed = kNone;

  if (exec == Execution::Serial) {
    SweepState state{Distribution(nodes)};
    std::vector<ValueIndex> full(scm.node_count());
    for (std::size_t i = 0; i < count; ++i)
      sweep_one(scm, i, full, state);
    failed = state.failed;
    result = std::move(state.local);
  } else {
#pragma omp parallel
    {
      SweepState state{Distribution(nodes)};
      std::vector<ValueIndex> full(scm.node_count());
#pragma omp for schedule(static)
      for (std::size_t i = 0; i < count; ++i)
        sweep_one(scm, i, full, state);
#pragma omp critical(scm_joint_merge)
      {
        failed = std::min(failed, state.failed);
        for (const auto& [values, p] : state.local.support())
          result.add(values, p);
      }
    }
  }
  if (failed != kNone)
    throw_for(scm, failed);
  return result;
}

std::optional<std::size_t> first_match(std::size_t count, const std::function<bool(std::size_t)>& probe,
                                       Execution exec) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i)
      if (probe(i))
        return i;
    return std::nullopt;
  }
  std::atomic<std::size_t> best{kNone};
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < count; ++i) {
    if (i > best.load(std::memory_order_relaxed))
      continue;
    if (probe(i)) {
      std::size_t current = best.load();
      while (i < current && !best.compare_exchange_weak(current, i)) {
      }
    }
  }
  if (best.load() == kNone)
    return std::nullopt;
  return best.load();
}

int max_threads() { return omp_get_max_threads(); }

} // namespace scm::kernels
