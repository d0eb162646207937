#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace haltlab {

/// Result of a bounded exhaustive search. The conceptual searchers halt
/// only on a counterexample; at desk scale the range is bounded, so a run
/// also ends by exhausting it, and the report keeps the two apart.
struct SearchReport {
  std::string range;                   // human-readable bounds
  std::vector<std::uint64_t> counterexample;  // empty when none was found
  bool exhausted = false;              // whole range scanned, nothing found
  bool halted = true;                  // desk-scale runs always stop
  std::uint64_t candidates = 0;        // tuples or numbers examined
  std::chrono::nanoseconds elapsed{0}; // not printed: reports stay byte-stable
  std::string note;                    // scale caveats

  std::string render_text() const;
  std::string render_records() const;
};

/// Looks for a^n + b^n = c^n with 1 <= a <= b < c <= max_base and
/// min_exp <= n <= max_exp, in lexicographic (n, c, b, a) order; the first
/// hit wins. Powers are computed with overflow detection; an overflow
/// aborts the search rather than wrapping.
SearchReport fermat_search(std::uint64_t max_base, std::uint64_t max_exp,
                           std::uint64_t min_exp);

/// For every even m in 4..max_even, looks for primes p <= q with
/// p + q = m; 1 counts as prime here. Stops at the first even number
/// with no decomposition.
SearchReport goldbach_search(std::uint64_t max_even);

/// Simple sieve, 1 optionally included. Test oracles build their own.
std::vector<bool> prime_table(std::uint64_t limit, bool count_one_as_prime);

}  // namespace haltlab
