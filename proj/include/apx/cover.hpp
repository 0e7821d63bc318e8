#pragma once

// Translate covering numbers: the universal currency for "approximate",
// "commensurable", and structure-theorem coset counts. Exact answers come
// from branch-and-bound over a candidate pool; the greedy path realizes the
// covering-lemma style upper bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apx/element_set.hpp"

namespace apx {

enum class CoverMode { Exact, Greedy };

struct CoverCertificate {
  ElementSet translates;  // F
  bool exact = false;     // exact K vs greedy upper bound
  std::string target_tag;
  std::string cover_tag;

  std::uint64_t K() const { return translates.size(); }

  // Rechecks S subset of F + X element by element.
  bool revalidate(const ElementSet& S, const ElementSet& X) const;
};

struct CoverOptions {
  CoverMode mode = CoverMode::Greedy;
  // Candidate translates; empty means the auto pool S - X.
  std::optional<ElementSet> pool;
  std::uint64_t node_budget = 1'000'000;
  std::string target_tag = "S";
  std::string cover_tag = "X";
};

// Minimal (exact) or greedy-minimal translate set F with S subset of F + X.
// Exact mode throws BudgetError when the node budget is exhausted; the
// fallback to greedy is never silent.
CoverCertificate cover_number(const ElementSet& S, const ElementSet& X,
                              const CoverOptions& opts = {});

// Covers S using only translates drawn from `translates` (theorem-shaped
// covers, e.g. F+F from a hypothesis certificate); prunes unused translates
// greedily. Throws DomainError if the given translates do not cover.
CoverCertificate cover_with_translates(const ElementSet& S,
                                       const ElementSet& X,
                                       const ElementSet& translates,
                                       const std::string& target_tag,
                                       const std::string& cover_tag);

}  // namespace apx
