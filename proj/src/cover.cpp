#include "apx/cover.hpp"

#include <algorithm>
#include <unordered_map>

namespace apx {

bool CoverCertificate::revalidate(const ElementSet& S,
                                  const ElementSet& X) const {
  const Ring& ring = *S.ring();
  std::vector<Element> fs = translates.to_vector();
  bool ok = true;
  S.for_each([&](const Element& s) {
    if (!ok) return;
    for (const Element& f : fs)
      if (X.contains(ring.sub(s, f))) return;
    ok = false;
  });
  return ok;
}

namespace {

using Mask = std::vector<std::uint64_t>;

std::size_t popcount(const Mask& m) {
  std::size_t c = 0;
  for (auto w : m) c += __builtin_popcountll(w);
  return c;
}

std::size_t count_and_not(const Mask& a, const Mask& covered) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    c += __builtin_popcountll(a[i] & ~covered[i]);
  return c;
}

struct CoverProblem {
  std::vector<Element> targets;              // S in canonical order
  std::vector<Element> candidates;           // pool in canonical order
  std::vector<Mask> cover_mask;              // per candidate
  std::size_t words;

  CoverProblem(const ElementSet& S, const ElementSet& X,
               const ElementSet& pool) {
    const Ring& ring = *S.ring();
    targets = S.to_vector();
    words = (targets.size() + 63) / 64;
    // Index of each target for mask construction.
    std::unordered_map<Element, std::size_t, ElementHash> tindex;
    for (std::size_t i = 0; i < targets.size(); ++i)
      tindex.emplace(targets[i], i);
    pool.for_each([&](const Element& f) {
      Mask m(words, 0);
      bool any = false;
      // f covers s iff s - f in X.
      X.for_each([&](const Element& x) {
        auto it = tindex.find(ring.add(f, x));
        if (it != tindex.end()) {
          m[it->second >> 6] |= 1ULL << (it->second & 63);
          any = true;
        }
      });
      if (any) {
        candidates.push_back(f);
        cover_mask.push_back(std::move(m));
      }
    });
  }
};

struct ExactSearch {
  const CoverProblem& p;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::size_t best;
  std::vector<std::size_t> best_pick;
  std::vector<std::size_t> pick;
  std::size_t max_cover_size = 1;
  std::size_t total;

  ExactSearch(const CoverProblem& p_, std::uint64_t budget_,
              std::size_t greedy_best)
      : p(p_), budget(budget_), best(greedy_best), total(p_.targets.size()) {
    for (const auto& m : p.cover_mask)
      max_cover_size = std::max(max_cover_size, popcount(m));
  }

  void run(const Mask& covered, std::size_t covered_count) {
    if (++nodes > budget)
      throw BudgetError("exact cover: node budget exceeded");
    if (covered_count == total) {
      if (pick.size() < best) {
        best = pick.size();
        best_pick = pick;
      }
      return;
    }
    std::size_t uncovered = total - covered_count;
    std::size_t lb =
        pick.size() + (uncovered + max_cover_size - 1) / max_cover_size;
    if (lb >= best) return;  // cannot strictly improve
    // Branch on the first uncovered target: some chosen translate must cover
    // it. Branches ordered by fresh coverage, descending.
    std::size_t t = 0;
    for (std::size_t w = 0; w < p.words; ++w) {
      std::uint64_t unc = ~covered[w];
      if (w == p.words - 1 && (total & 63)) unc &= (1ULL << (total & 63)) - 1;
      if (unc) {
        t = w * 64 + __builtin_ctzll(unc);
        break;
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> branches;  // (gain, idx)
    for (std::size_t c = 0; c < p.candidates.size(); ++c) {
      if (!((p.cover_mask[c][t >> 6] >> (t & 63)) & 1u)) continue;
      branches.push_back({count_and_not(p.cover_mask[c], covered), c});
    }
    std::stable_sort(
        branches.begin(), branches.end(),
        [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [gain, c] : branches) {
      Mask next = covered;
      for (std::size_t w = 0; w < p.words; ++w) next[w] |= p.cover_mask[c][w];
      pick.push_back(c);
      run(next, covered_count + gain);
      pick.pop_back();
    }
  }
};

std::vector<std::size_t> greedy_cover(const CoverProblem& p) {
  Mask covered(p.words, 0);
  std::size_t remaining = p.targets.size();
  std::vector<std::size_t> picks;
  while (remaining > 0) {
    std::size_t best_gain = 0, best_idx = SIZE_MAX;
    for (std::size_t c = 0; c < p.candidates.size(); ++c) {
      std::size_t gain = count_and_not(p.cover_mask[c], covered);
      if (gain > best_gain) {  // ties resolve to the lowest canonical index
        best_gain = gain;
        best_idx = c;
      }
    }
    if (best_idx == SIZE_MAX)
      throw DomainError("cover: candidate pool cannot cover the target");
    picks.push_back(best_idx);
    for (std::size_t w = 0; w < p.words; ++w)
      covered[w] |= p.cover_mask[best_idx][w];
    remaining = p.targets.size() - popcount(covered);
  }
  return picks;
}

}  // namespace

CoverCertificate cover_number(const ElementSet& S, const ElementSet& X,
                              const CoverOptions& opts) {
  if (S.ring().get() != X.ring().get())
    throw DomainError("cover_number: ring mismatch");
  if (X.empty()) throw DomainError("cover_number: X must be nonempty");
  CoverCertificate cert;
  cert.target_tag = opts.target_tag;
  cert.cover_tag = opts.cover_tag;
  cert.translates = ElementSet(S.ring());
  if (S.empty()) {
    cert.exact = true;
    return cert;
  }

  ElementSet pool =
      opts.pool ? *opts.pool
                : pairwise_set(PairwiseKind::Sum, S, X.negated());
  CoverProblem p(S, X, pool);

  std::vector<std::size_t> picks = greedy_cover(p);
  bool exact = false;
  if (opts.mode == CoverMode::Exact) {
    ExactSearch search(p, opts.node_budget, picks.size());
    search.best_pick = picks;
    search.run(Mask(p.words, 0), 0);
    picks = search.best_pick;
    exact = true;
  }
  for (std::size_t c : picks) cert.translates.insert_unchecked(p.candidates[c]);
  cert.exact = exact;
  if (!cert.revalidate(S, X))
    throw DomainError("cover_number: internal revalidation failed");
  return cert;
}

CoverCertificate cover_with_translates(const ElementSet& S,
                                       const ElementSet& X,
                                       const ElementSet& translates,
                                       const std::string& target_tag,
                                       const std::string& cover_tag) {
  CoverProblem p(S, X, translates);
  std::vector<std::size_t> picks = greedy_cover(p);
  CoverCertificate cert;
  cert.target_tag = target_tag;
  cert.cover_tag = cover_tag;
  cert.translates = ElementSet(S.ring());
  for (std::size_t c : picks) cert.translates.insert_unchecked(p.candidates[c]);
  cert.exact = false;
  if (!cert.revalidate(S, X))
    throw DomainError("cover_with_translates: revalidation failed");
  return cert;
}

}  // namespace apx
