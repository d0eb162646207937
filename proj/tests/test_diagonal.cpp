#include <doctest.h>

#include "haltlab/diagonal.hpp"
#include "haltlab/errors.hpp"

using namespace haltlab;

TEST_CASE("the family is stable and well formed") {
  auto a = enumerate_machines(16);
  auto b = enumerate_machines(16);
  REQUIRE(a.size() == 16);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == i);
    CHECK(a[i].description == b[i].description);
  }
  CHECK(a[0].description == "constant-0");
  CHECK(a[1].description == "constant-1");
  CHECK(a[2].description == "alternating");
  CHECK(a[3].description == "diverging");
}

TEST_CASE("productive and unproductive machines both exist") {
  auto machines = enumerate_machines(8);
  int productive = 0, unproductive = 0;
  for (std::size_t n = 0; n < machines.size(); ++n) {
    if (machines[n].productive(n, 1000)) ++productive;
    else ++unproductive;
  }
  CHECK(productive >= 4);
  CHECK(unproductive >= 1);
  // the diverging machine never produces anything
  for (std::uint64_t k : {0ull, 1ull, 5ull, 20ull})
    CHECK_FALSE(machines[3].productive(k, 1000000));
}

TEST_CASE("machines are deterministic") {
  auto machines = enumerate_machines(24);
  for (const auto& m : machines) {
    for (std::uint64_t k = 0; k < 24; ++k) {
      auto r1 = m.compute(k, 500);
      auto r2 = m.compute(k, 500);
      CHECK(r1.bit == r2.bit);
      CHECK(r1.steps_used == r2.steps_used);
    }
  }
}

TEST_CASE("beta flips every productive diagonal bit") {
  auto machines = enumerate_machines(16);
  BetaPrefix p = beta(machines, 16, 1000);
  REQUIRE(p.bits.size() == 16);
  for (std::size_t n = 0; n < 16; ++n) {
    auto r = machines[n].compute(n, 1000);  // independent regeneration
    if (r.bit) {
      CHECK(p.provenance[n] == BetaProvenance::Diagonal);
      CHECK(p.bits[n] == 1 - *r.bit);
      CHECK(p.bits[n] != *r.bit);
    } else {
      CHECK(p.provenance[n] == BetaProvenance::Unproductive);
      CHECK(p.bits[n] == 1);
    }
  }
}

TEST_CASE("constant machines pin the first two bits") {
  auto machines = enumerate_machines(8);
  BetaPrefix p = beta(machines, 8, 1000);
  CHECK(p.bits[0] == 1);  // constant-0 at its own index
  CHECK(p.bits[1] == 0);  // constant-1 at its own index
  CHECK(p.provenance[3] == BetaProvenance::Unproductive);
}

TEST_CASE("beta is deterministic bit for bit") {
  auto machines = enumerate_machines(12);
  BetaPrefix a = beta(machines, 12, 700);
  BetaPrefix b = beta(machines, 12, 700);
  CHECK(a.bits == b.bits);
  CHECK(a.render_text() == b.render_text());
  CHECK(a.render_records() == b.render_records());
}

TEST_CASE("budget moves the productivity frontier") {
  auto machines = enumerate_machines(8);
  // the slow-doubling machine needs 2^k steps for bit k
  CHECK(machines[7].productive(7, 200));
  CHECK_FALSE(machines[7].productive(7, 100));
  BetaPrefix tight = beta(machines, 8, 100);
  CHECK(tight.provenance[7] == BetaProvenance::Unproductive);
  CHECK(tight.bits[7] == 1);
}

TEST_CASE("caps are enforced") {
  CHECK_THROWS_AS(enumerate_machines(65), FamilyTooLargeError);
  auto machines = enumerate_machines(4);
  CHECK_THROWS_AS(beta(machines, 5, 100), FamilyTooLargeError);
}
