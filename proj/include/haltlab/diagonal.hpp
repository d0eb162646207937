#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace haltlab {

/// A deterministic bit producer standing in for a sequence-computing
/// machine. Producing bit k costs a machine-specific number of steps; a
/// machine that cannot produce the bit within the budget is unproductive
/// there, and nothing in the interface tells the two kinds apart up
/// front — that is the point.
struct SequenceMachine {
  std::uint64_t id = 0;
  std::string description;

  struct BitResult {
    std::optional<int> bit;       // nullopt: budget ran out first
    std::uint64_t steps_used = 0; // capped at the budget when unproductive
  };

  /// Deterministic: same id, k and budget always give the same result.
  BitResult compute(std::uint64_t k, std::uint64_t budget) const;

  bool productive(std::uint64_t k, std::uint64_t budget) const {
    return compute(k, budget).bit.has_value();
  }
};

constexpr std::size_t kMaxFamily = 64;

/// A stable machine family with dense ids from 0. From size 5 upward it
/// holds at least four productive machines and at least one that never
/// produces a bit (index 3 diverges). Throws FamilyTooLargeError above
/// kMaxFamily.
std::vector<SequenceMachine> enumerate_machines(std::size_t count);

enum class BetaProvenance : std::uint8_t { Diagonal, Unproductive };

/// Prefix of the diagonal sequence: bits[n] flips machine n's bit n when
/// that machine produced it within the budget, and records the machines
/// that did not instead of silently classifying them.
struct BetaPrefix {
  std::vector<int> bits;
  std::vector<BetaProvenance> provenance;
  std::uint64_t budget = 0;

  std::string render_text() const;    // table with a provenance column
  std::string render_records() const;
};

BetaPrefix beta(const std::vector<SequenceMachine>& machines, std::size_t k,
                std::uint64_t budget);

}  // namespace haltlab
