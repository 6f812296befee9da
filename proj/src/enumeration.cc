#include "enumeration.h"

#include <algorithm>
#include <bit>
#include <thread>

namespace abskernel::detail {
namespace {

// Walks masks [begin, end) keeping the objective up to date by re-checking
// only clauses that mention a flipped bit.
template <class Acc>
class Walker {
 public:
  Walker(const MaskProblem& p, const std::vector<Acc>& weights, std::uint64_t start)
      : p_(p), w_(weights), mask_(start), occurs_(static_cast<std::size_t>(p.num_bits)) {
    sat_.resize(p.clauses.size());
    for (std::size_t c = 0; c < p.clauses.size(); ++c) {
      const auto bits = p.clauses[c].pos | p.clauses[c].neg;
      for (int b = 0; b < p.num_bits; ++b) {
        if ((bits >> b) & 1U) occurs_[static_cast<std::size_t>(b)].push_back(static_cast<std::uint32_t>(c));
      }
      sat_[c] = satisfied(c, mask_);
      if (sat_[c]) value_ += w_[c];
    }
  }

  std::uint64_t mask() const { return mask_; }
  const Acc& value() const { return value_; }

  void advance() {
    const std::uint64_t next = mask_ + 1;
    std::uint64_t flipped = mask_ ^ next;
    mask_ = next;
    while (flipped != 0) {
      const int b = std::countr_zero(flipped);
      flipped &= flipped - 1;
      if (b >= p_.num_bits) continue;
      for (std::uint32_t c : occurs_[static_cast<std::size_t>(b)]) {
        const bool now = satisfied(c, mask_);
        if (now != sat_[c]) {
          sat_[c] = now;
          if (now) value_ += w_[c];
          else value_ -= w_[c];
        }
      }
    }
  }

 private:
  bool satisfied(std::size_t c, std::uint64_t a) const {
    const auto& mc = p_.clauses[c];
    if (p_.dnf) return (a & mc.pos) == mc.pos && (a & mc.neg) == 0;
    return (a & mc.pos) != 0 || (mc.neg & ~a) != 0;
  }

  const MaskProblem& p_;
  const std::vector<Acc>& w_;
  std::uint64_t mask_;
  std::vector<std::vector<std::uint32_t>> occurs_;
  std::vector<char> sat_;
  Acc value_{};
};

// Sum of |w| below 2^62 means every partial sum fits in int64.
std::optional<std::vector<std::int64_t>> narrow_weights(const std::vector<Weight>& weights) {
  Weight total = 0;
  std::vector<std::int64_t> out;
  out.reserve(weights.size());
  for (const auto& w : weights) {
    total += boost::multiprecision::abs(w);
    if (bit_length(total) > 62) return std::nullopt;
    out.push_back(w.convert_to<std::int64_t>());
  }
  return out;
}

template <class Acc, class Fn>
void for_chunks(std::uint64_t total, unsigned jobs, Fn&& fn) {
  jobs = std::max(1U, jobs);
  if (total < 4096 || jobs == 1) {
    fn(0, std::uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> threads;
  for (unsigned j = 0; j < jobs; ++j) {
    const std::uint64_t lo = total / jobs * j;
    const std::uint64_t hi = j + 1 == jobs ? total : total / jobs * (j + 1);
    threads.emplace_back([&fn, j, lo, hi] { fn(j, lo, hi); });
  }
  for (auto& t : threads) t.join();
}

template <class Acc, class Pred>
std::optional<std::uint64_t> search(const MaskProblem& p, const std::vector<Acc>& w, Pred pred,
                                    unsigned jobs) {
  const std::uint64_t total = std::uint64_t{1} << p.num_bits;
  std::vector<std::optional<std::uint64_t>> hits(std::max(1U, jobs));
  for_chunks<Acc>(total, jobs, [&](unsigned j, std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi) return;
    Walker<Acc> walker(p, w, lo);
    while (true) {
      if (pred(walker.value())) {
        hits[j] = walker.mask();
        return;
      }
      if (walker.mask() + 1 >= hi) return;
      walker.advance();
    }
  });
  for (const auto& h : hits) {
    if (h) return h;
  }
  return std::nullopt;
}

template <class Acc>
std::pair<Acc, Acc> extremes(const MaskProblem& p, const std::vector<Acc>& w, unsigned jobs) {
  const std::uint64_t total = std::uint64_t{1} << p.num_bits;
  std::vector<std::optional<std::pair<Acc, Acc>>> parts(std::max(1U, jobs));
  for_chunks<Acc>(total, jobs, [&](unsigned j, std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi) return;
    Walker<Acc> walker(p, w, lo);
    Acc mn = walker.value();
    Acc mx = walker.value();
    while (walker.mask() + 1 < hi) {
      walker.advance();
      mn = std::min(mn, walker.value());
      mx = std::max(mx, walker.value());
    }
    parts[j] = std::pair{mn, mx};
  });
  std::optional<std::pair<Acc, Acc>> out;
  for (const auto& part : parts) {
    if (!part) continue;
    if (!out) out = part;
    else out = std::pair{std::min(out->first, part->first), std::max(out->second, part->second)};
  }
  return *out;
}

}  // namespace

std::optional<std::uint64_t> first_hit(const MaskProblem& problem, const Weight& alpha,
                                       Objective objective, Comparison comparison, unsigned jobs) {
  const auto narrow = narrow_weights(problem.weights);
  const auto narrow_alpha = to_int64(alpha);
  if (narrow && narrow_alpha) {
    const std::int64_t a = *narrow_alpha;
    return search<std::int64_t>(
        problem, *narrow,
        [a, objective, comparison](std::int64_t value) {
          const std::int64_t v = objective == Objective::abs ? (value < 0 ? -value : value) : value;
          switch (comparison) {
            case Comparison::at_least: return v >= a;
            case Comparison::exact: return v == a;
            case Comparison::at_most: return v <= a;
          }
          return false;
        },
        jobs);
  }
  return search<Weight>(
      problem, problem.weights,
      [&](const Weight& value) { return meets_target(value, alpha, objective, comparison); }, jobs);
}

ValueRange value_range(const MaskProblem& problem, unsigned jobs) {
  if (const auto narrow = narrow_weights(problem.weights)) {
    const auto [mn, mx] = extremes<std::int64_t>(problem, *narrow, jobs);
    return {Weight(mn), Weight(mx)};
  }
  const auto [mn, mx] = extremes<Weight>(problem, problem.weights, jobs);
  return {mn, mx};
}

}  // namespace abskernel::detail
