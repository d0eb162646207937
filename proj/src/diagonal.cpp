#include "haltlab/diagonal.hpp"

#include "haltlab/errors.hpp"

namespace haltlab {

namespace {

bool small_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int popcount_parity(std::uint64_t v) {
  int c = 0;
  while (v) {
    c ^= 1;
    v &= v - 1;
  }
  return c;
}

std::uint64_t sat_shift(std::uint64_t k) { return k >= 63 ? UINT64_MAX : (std::uint64_t{1} << k); }

}  // namespace

SequenceMachine::BitResult SequenceMachine::compute(std::uint64_t k,
                                                    std::uint64_t budget) const {
  std::uint64_t salt = id / 8;
  std::uint64_t cost = 0;
  int bit = 0;
  switch (id % 8) {
    case 0: cost = 1; bit = 0; break;
    case 1: cost = 1; bit = 1; break;
    case 2: cost = 2; bit = static_cast<int>((k + salt) % 2); break;
    case 3: cost = UINT64_MAX; bit = 0; break;  // never produces
    case 4: cost = k + 1; bit = popcount_parity(k + salt * 7); break;
    case 5: cost = k + 2; bit = small_prime(k + salt) ? 1 : 0; break;
    case 6: cost = 1; bit = k >= salt + 2 ? 1 : 0; break;
    default: cost = sat_shift(k); bit = static_cast<int>(k % 2); break;
  }
  if (cost > budget) return BitResult{std::nullopt, budget};
  return BitResult{bit, cost};
}

std::vector<SequenceMachine> enumerate_machines(std::size_t count) {
  if (count > kMaxFamily)
    throw FamilyTooLargeError("machine family of " + std::to_string(count) +
                              " exceeds the cap of " + std::to_string(kMaxFamily));
  static const char* kNames[8] = {
      "constant-0",   "constant-1", "alternating", "diverging",
      "parity",       "prime-bits", "threshold",   "slow-doubling",
  };
  std::vector<SequenceMachine> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SequenceMachine m;
    m.id = i;
    m.description = kNames[i % 8];
    if (i >= 8) m.description += "+" + std::to_string(i / 8);
    out.push_back(std::move(m));
  }
  return out;
}

BetaPrefix beta(const std::vector<SequenceMachine>& machines, std::size_t k,
                std::uint64_t budget) {
  if (k > machines.size())
    throw FamilyTooLargeError("beta prefix of " + std::to_string(k) +
                              " bits needs a family of at least that size");
  BetaPrefix out;
  out.budget = budget;
  for (std::size_t n = 0; n < k; ++n) {
    auto r = machines[n].compute(n, budget);
    if (r.bit) {
      out.bits.push_back(1 - *r.bit);
      out.provenance.push_back(BetaProvenance::Diagonal);
    } else {
      // the definition's else branch: a bit that is not 1 yields 1, and
      // the failure to produce stays visible instead of being classified
      out.bits.push_back(1);
      out.provenance.push_back(BetaProvenance::Unproductive);
    }
  }
  return out;
}

std::string BetaPrefix::render_text() const {
  std::string out = "n beta(n) provenance\n";
  for (std::size_t n = 0; n < bits.size(); ++n) {
    out += std::to_string(n);
    out += " ";
    out += std::to_string(bits[n]);
    out += "       ";
    out += provenance[n] == BetaProvenance::Diagonal ? "diagonal" : "unproductive";
    out += "\n";
  }
  return out;
}

std::string BetaPrefix::render_records() const {
  std::string out;
  for (std::size_t n = 0; n < bits.size(); ++n) {
    out += "n=" + std::to_string(n);
    out += " bit=" + std::to_string(bits[n]);
    out += " provenance=";
    out += provenance[n] == BetaProvenance::Diagonal ? "diagonal" : "unproductive";
    out += "\n";
  }
  return out;
}

}  // namespace haltlab
