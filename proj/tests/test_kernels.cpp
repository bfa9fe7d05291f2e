#include "support.hpp"

#include "scm/error.hpp"
#include "scm/kernels.hpp"
#include "scm/random_scm.hpp"

#include <atomic>

using namespace scm;

TEST_SUITE("kernels") {

TEST_CASE("parallel joint sweep equals the serial one") {
  for (const auto& s : catalog()) {
    if (s.name == "dice_yz_cyclic")
      continue;
    CAPTURE(s.name);
    const Scm m = build_scm(s.document);
    CHECK(kernels::joint_sweep(m, Execution::Parallel) == kernels::joint_sweep(m, Execution::Serial));
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scm m = random_scm(seed);
    CHECK(kernels::joint_sweep(m, Execution::Parallel) == kernels::joint_sweep(m, Execution::Serial));
  }
}

TEST_CASE("both paths report the same failing assignment") {
  const Scm m = scenario_scm("dice_yz_cyclic");
  Json serial, parallel;
  try {
    kernels::joint_sweep(m, Execution::Serial);
  } catch (const ScmError& e) {
    serial = e.to_json();
  }
  try {
    kernels::joint_sweep(m, Execution::Parallel);
  } catch (const ScmError& e) {
    parallel = e.to_json();
  }
  CHECK_FALSE(serial.is_null());
  CHECK(serial == parallel);
}

TEST_CASE("first_match returns the smallest hit") {
  for (auto exec : {Execution::Serial, Execution::Parallel}) {
    CHECK(kernels::first_match(1000, [](std::size_t i) { return i % 97 == 13; }, exec) == 13u);
    CHECK_FALSE(kernels::first_match(1000, [](std::size_t) { return false; }, exec).has_value());
    CHECK_FALSE(kernels::first_match(0, [](std::size_t) { return true; }, exec).has_value());
    CHECK(kernels::first_match(500, [](std::size_t i) { return i >= 499; }, exec) == 499u);
  }
}

TEST_CASE("serial first_match stops at the hit") {
  std::atomic<std::size_t> calls{0};
  kernels::first_match(100, [&](std::size_t i) { ++calls; return i == 4; }, Execution::Serial);
  CHECK(calls == 5);
}

TEST_CASE("thread count is positive") { CHECK(kernels::max_threads() >= 1); }

} // TEST_SUITE
