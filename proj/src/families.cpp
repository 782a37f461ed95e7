// Copyright 2026 The gapkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gapkit/families.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "gapkit/kernels.hpp"

namespace gapkit {

namespace {

[[noreturn]] void usage_error(const std::string& msg) {
  throw std::invalid_argument(msg);
}

void require(bool ok, const std::string& msg) {
  if (!ok) usage_error(msg);
}

constexpr std::uint64_t kMaxExponent = std::uint64_t(1) << 24;

std::uint64_t upow_guarded(unsigned base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    r *= base;
    if (r > kMaxExponent)
      usage_error("parameters too large for exact evaluation");
  }
  return r;
}

BigCount bpow(unsigned base, std::uint64_t exp) {
  if (exp > kMaxExponent)
    usage_error("parameters too large for exact evaluation");
  return boost::multiprecision::pow(BigCount(base), unsigned(exp));
}

BigCount big_binom(unsigned a, unsigned b) {
  if (b > a) return 0;
  BigCount r = 1;
  for (unsigned t = 1; t <= b; ++t) {
    r *= (a - b + t);
    r /= t;
  }
  return r;
}

std::uint64_t binom64(unsigned a, unsigned b) {
  if (b > a) return 0;
  std::uint64_t r = 1;
  for (unsigned t = 1; t <= b; ++t) {
    r = r * (a - b + t) / t;
  }
  return r;
}

// Count of repetition-free n-tuples over K: k(k-1)...(k-n+1), guarded so it
// can serve as a coefficient-vector length and an exponent.
std::uint64_t repfree_count(unsigned k, unsigned n) {
  std::uint64_t r = 1;
  for (unsigned t = 0; t < n; ++t) {
    r *= (k - t);
    if (r > kMaxExponent)
      usage_error("parameters too large for exact evaluation");
  }
  return r;
}

struct TupleSupport {
  std::vector<std::uint32_t> repfree;  // ascending tuple indices
  std::vector<bool> eq;                // per tuple index
};

TupleSupport tuple_support(unsigned k, unsigned n) {
  const std::size_t len = checked_pow(k, n);
  TupleSupport s;
  s.eq.assign(len, false);
  std::vector<std::uint8_t> digits(n, 0);
  for (std::size_t m = 0; m < len; ++m) {
    if (has_repetition(digits))
      s.eq[m] = true;
    else
      s.repfree.push_back(std::uint32_t(m));
    detail::odometer_advance(digits.data(), n, k);
  }
  return s;
}

bool all_equal(std::span<const std::uint8_t> v) {
  return std::all_of(v.begin(), v.end(),
                     [&](std::uint8_t c) { return c == v.front(); });
}

bool all_zero(std::span<const std::uint8_t> v) {
  return std::all_of(v.begin(), v.end(),
                     [](std::uint8_t c) { return c == 0; });
}

// result(a_1..a_n) = f(a_{perm[0]}, ..., a_{perm[n-1]}), perm 1-based.
KTable permute_vars(const KTable& f, std::span<const unsigned> perm) {
  const unsigned n = f.n();
  const unsigned k = f.k();
  std::vector<std::size_t> strides(n);
  std::size_t s = 1;
  for (unsigned i = n; i >= 1; --i) {
    strides[i - 1] = s;
    s *= k;
  }
  std::vector<std::uint8_t> out(f.size());
  std::vector<std::uint8_t> digits(n, 0);
  for (std::size_t m = 0; m < f.size(); ++m) {
    std::size_t src = 0;
    for (unsigned t = 0; t < n; ++t)
      src += std::size_t(digits[perm[t] - 1]) * strides[t];
    out[m] = f[src];
    detail::odometer_advance(digits.data(), n, k);
  }
  return KTable(k, n, std::move(out));
}

// h(a) = core(a restricted to `positions`), positions ascending 1-based.
std::vector<std::uint8_t> cylindrify(std::span<const std::uint8_t> core,
                                     std::span<const unsigned> positions,
                                     unsigned k, unsigned n) {
  const std::size_t len = checked_pow(k, n);
  std::vector<std::uint8_t> out(len);
  std::vector<std::uint8_t> digits(n, 0);
  for (std::size_t m = 0; m < len; ++m) {
    std::size_t idx = 0;
    for (unsigned pos : positions) idx = idx * k + digits[pos - 1];
    out[m] = core[idx];
    detail::odometer_advance(digits.data(), n, k);
  }
  return out;
}

std::vector<unsigned> unrank_combination(unsigned n, unsigned size,
                                         std::uint64_t rank) {
  std::vector<unsigned> out;
  unsigned remaining = size;
  for (unsigned x = 1; x <= n && remaining > 0; ++x) {
    std::uint64_t with_x = binom64(n - x, remaining - 1);
    if (rank < with_x) {
      out.push_back(x);
      --remaining;
    } else {
      rank -= with_x;
    }
  }
  return out;
}

bool next_combination(std::vector<unsigned>& c, unsigned n) {
  const unsigned size = unsigned(c.size());
  for (unsigned i = size; i-- > 0;) {
    if (c[i] < n - (size - 1 - i)) {
      ++c[i];
      for (unsigned t = i + 1; t < size; ++t) c[t] = c[t - 1] + 1;
      return true;
    }
  }
  return false;
}

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint8_t>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint8_t b : v) {
      h ^= b;
      h *= 0x100000001b3ull;
    }
    return std::size_t(h);
  }
};

// ---------------------------------------------------------------------------
// Streams

class EmptyStream final : public TableStream {
 public:
  std::optional<KTable> next() override { return std::nullopt; }
};

class FnSampleStream final : public TableStream {
 public:
  FnSampleStream(std::uint64_t count, std::uint64_t seed,
                 std::function<KTable(SplitMix64&)> draw)
      : count_(count), seed_(seed), draw_(std::move(draw)) {}

  std::optional<KTable> next() override {
    if (index_ >= count_) return std::nullopt;
    SplitMix64 rng = substream(seed_, index_++);
    return draw_(rng);
  }

 private:
  std::uint64_t count_;
  std::uint64_t seed_;
  std::uint64_t index_ = 0;
  std::function<KTable(SplitMix64&)> draw_;
};

// Radix-k enumeration of a coefficient vector, optionally skipping some
// vectors, mapped to tables by `build`.
class CoeffAllStream final : public TableStream {
 public:
  CoeffAllStream(unsigned k, std::size_t ncoeffs,
                 std::function<bool(std::span<const std::uint8_t>)> skip,
                 std::function<KTable(std::span<const std::uint8_t>)> build)
      : k_(k), coeffs_(ncoeffs, 0), skip_(std::move(skip)),
        build_(std::move(build)) {}

  std::optional<KTable> next() override {
    while (!done_) {
      const bool skip = skip_ && skip_(coeffs_);
      std::optional<KTable> out;
      if (!skip) out = build_(coeffs_);
      done_ = !detail::odometer_advance(coeffs_.data(), coeffs_.size(), k_);
      if (out) return out;
    }
    return std::nullopt;
  }

 private:
  unsigned k_;
  std::vector<std::uint8_t> coeffs_;
  std::function<bool(std::span<const std::uint8_t>)> skip_;
  std::function<KTable(std::span<const std::uint8_t>)> build_;
  bool done_ = false;
};

// parts[i] + (repetition-free table from a nonzero coefficient vector),
// enumerated part-major.
class PartProductAllStream final : public TableStream {
 public:
  PartProductAllStream(std::vector<KTable> parts, TupleSupport support)
      : parts_(std::move(parts)), support_(std::move(support)) {
    if (parts_.empty()) {
      done_ = true;
      return;
    }
    k_ = parts_.front().k();
    coeffs_.assign(support_.repfree.size(), 0);
    // first nonzero coefficient vector
    done_ = !detail::odometer_advance(coeffs_.data(), coeffs_.size(), k_);
  }

  std::optional<KTable> next() override {
    if (done_) return std::nullopt;
    const KTable& part = parts_[part_index_];
    std::vector<std::uint8_t> values(part.values().begin(),
                                     part.values().end());
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      std::uint8_t* cell = &values[support_.repfree[t]];
      unsigned s = unsigned(*cell) + coeffs_[t];
      *cell = std::uint8_t(s >= k_ ? s - k_ : s);
    }
    KTable out(part.k(), part.n(), std::move(values));
    step();
    return out;
  }

 private:
  void step() {
    if (detail::odometer_advance(coeffs_.data(), coeffs_.size(), k_) ||
        advance_part()) {
      if (all_zero(coeffs_))  // skip the zero vector after a wrap
        done_ = !detail::odometer_advance(coeffs_.data(), coeffs_.size(), k_);
      return;
    }
    done_ = true;
  }

  bool advance_part() {
    if (++part_index_ >= parts_.size()) return false;
    std::fill(coeffs_.begin(), coeffs_.end(), 0);
    return true;
  }

  std::vector<KTable> parts_;
  TupleSupport support_;
  unsigned k_ = 0;
  std::size_t part_index_ = 0;
  std::vector<std::uint8_t> coeffs_;
  bool done_ = false;
};

}  // namespace

// ---------------------------------------------------------------------------
// Parameter validation

namespace {

void validate_gnn(unsigned k, unsigned n) {
  checked_pow(k, n);
  require(2 <= n && n <= k, "gnn requires 2 <= n <= k");
}

void validate_repfree(unsigned k, unsigned n) {
  checked_pow(k, n);
  require(n <= k, "repfree requires n <= k");
}

void validate_gpk(unsigned k, unsigned n, unsigned p) {
  checked_pow(k, n);
  require(2 <= p && p < n && n <= k, "gpk requires 2 <= p < n <= k");
  require(p > 2 || n > 3, "gpk with p = 2 requires n > 3");
}

void validate_g2k3(unsigned k) {
  checked_pow(k, 3);
  require(k >= 3, "g2k3 requires k >= 3");
}

void validate_g2minus(unsigned k, unsigned n) {
  checked_pow(k, n);
  require(3 < n && n <= k, "g2minus requires 3 < n <= k");
}

}  // namespace

// ---------------------------------------------------------------------------
// Auxiliary binary tables

KTable aux_s(unsigned k) {
  checked_pow(k, 2);
  std::vector<std::uint8_t> v(std::size_t(k) * k, 0);
  for (unsigned a = 0; a < k; ++a) v[std::size_t(a) * k + a] = 1;
  return KTable(k, 2, std::move(v));
}

KTable aux_u(unsigned alpha, unsigned k) {
  checked_pow(k, 2);
  if (alpha >= k)
    usage_error("alpha " + std::to_string(alpha) + " not below k=" +
                std::to_string(k));
  std::vector<std::uint8_t> v(std::size_t(k) * k, 0);
  for (unsigned a = 0; a < k; ++a)
    if (a != alpha) v[std::size_t(a) * k + a] = 1;
  return KTable(k, 2, std::move(v));
}

KTable aux_v(unsigned alpha, unsigned k) {
  checked_pow(k, 2);
  if (alpha >= k)
    usage_error("alpha " + std::to_string(alpha) + " not below k=" +
                std::to_string(k));
  std::vector<std::uint8_t> v(std::size_t(k) * k, 0);
  for (unsigned b = 0; b < k; ++b)
    if (b != alpha) v[std::size_t(alpha) * k + b] = 1;
  return KTable(k, 2, std::move(v));
}

// ---------------------------------------------------------------------------
// Symmetric parts

std::vector<KTable> g2k3_symmetric_parts(std::span<const std::uint8_t> coeffs,
                                         unsigned k) {
  validate_g2k3(k);
  require(coeffs.size() == k, "coefficient tuple must have k entries");
  require(!all_equal(coeffs), "coefficient tuple must not be constant");

  auto ind = [](bool b) -> unsigned { return b ? 1u : 0u; };
  auto build = [&](auto point) {
    std::vector<std::uint8_t> v(checked_pow(k, 3));
    std::size_t m = 0;
    for (unsigned x1 = 0; x1 < k; ++x1)
      for (unsigned x2 = 0; x2 < k; ++x2)
        for (unsigned x3 = 0; x3 < k; ++x3) v[m++] = point(x1, x2, x3);
    return KTable(k, 3, std::move(v));
  };
  auto term_sum = [&](unsigned x1, unsigned x2, unsigned x3,
                      auto shape) -> std::uint8_t {
    unsigned acc = 0;
    for (unsigned i = 0; i < k; ++i) acc += coeffs[i] * shape(i, x1, x2, x3);
    return std::uint8_t(acc % k);
  };
  auto s_ind = [&](unsigned a, unsigned b) { return ind(a == b); };
  auto u_ind = [&](unsigned i, unsigned a, unsigned b) {
    return ind(a == b && a != i);
  };
  auto v_ind = [&](unsigned i, unsigned a, unsigned b) {
    return ind(a == i && b != i);
  };

  const KTable diag = build([&](unsigned x1, unsigned x2, unsigned x3) {
    return term_sum(x1, x2, x3, [&](unsigned i, unsigned a, unsigned b,
                                    unsigned c) {
      return ind(c == i) * s_ind(a, b) + ind(b == i) * u_ind(i, a, c) +
             ind(a == i) * u_ind(i, b, c);
    });
  });
  const KTable shape_uu = build([&](unsigned x1, unsigned x2, unsigned x3) {
    return term_sum(x1, x2, x3, [&](unsigned i, unsigned a, unsigned b,
                                    unsigned c) {
      return ind(a == i) * ind(b == i) + ind(a == i) * u_ind(i, b, c) +
             ind(b == i) * u_ind(i, a, c);
    });
  });
  const KTable shape_vu = build([&](unsigned x1, unsigned x2, unsigned x3) {
    return term_sum(x1, x2, x3, [&](unsigned i, unsigned a, unsigned b,
                                    unsigned c) {
      return ind(a == i) * ind(b == i) + ind(b == i) * v_ind(i, c, a) +
             ind(b == i) * u_ind(i, a, c);
    });
  });
  const KTable shape_vv = build([&](unsigned x1, unsigned x2, unsigned x3) {
    return term_sum(x1, x2, x3, [&](unsigned i, unsigned a, unsigned b,
                                    unsigned c) {
      return ind(a == i) * ind(b == i) + ind(a == i) * v_ind(i, c, b) +
             ind(b == i) * v_ind(i, c, a);
    });
  });

  static constexpr unsigned kPerms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                                            {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
  std::vector<KTable> out;
  for (const KTable* base : {&diag, &shape_uu, &shape_vu, &shape_vv})
    for (const auto& perm : kPerms) {
      KTable candidate = permute_vars(*base, perm);
      if (std::find(out.begin(), out.end(), candidate) == out.end())
        out.push_back(std::move(candidate));
    }
  return out;
}

std::vector<KTable> g2minus_symmetric_parts(unsigned k, unsigned n) {
  validate_g2minus(k, n);
  require(k <= 24, "g2minus search supports k <= 24");
  const std::size_t len = checked_pow(k, n);

  // Subsets of K with size of the same parity as n, at most n; these are
  // the values the inducing map on oddsupp can see.
  std::vector<std::uint32_t> subsets;
  std::map<std::uint32_t, std::size_t> slot_of;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    unsigned size = unsigned(std::popcount(mask));
    if (size <= n && size % 2 == n % 2) {
      slot_of[mask] = subsets.size();
      subsets.push_back(mask);
    }
  }

  // The assignment space is k^|subsets|; beyond a desk-scale budget the
  // exhaustive search is not going to finish.
  double candidates = 1.0;
  for (std::size_t t = 0; t < subsets.size(); ++t) candidates *= k;
  require(candidates <= double(std::size_t(1) << 26),
          "g2minus candidate search space exceeds the supported size");

  // Per tuple: the slot its oddsupp lands in, or npos for repetition-free.
  constexpr std::size_t npos = std::size_t(-1);
  std::vector<std::size_t> slot(len, npos);
  {
    std::vector<std::uint8_t> digits(n, 0);
    for (std::size_t m = 0; m < len; ++m) {
      if (has_repetition(digits)) {
        std::uint32_t mask = 0;
        for (std::uint8_t value : oddsupp(digits)) mask |= 1u << value;
        slot[m] = slot_of.at(mask);
      }
      detail::odometer_advance(digits.data(), n, k);
    }
  }

  const std::uint64_t full = VarSet::full(n).bits();
  std::vector<KTable> out;
  std::unordered_set<std::vector<std::uint8_t>, VectorHash> seen;
  std::vector<std::uint8_t> assign(subsets.size(), 0);
  do {
    std::vector<std::uint8_t> values(len, 0);
    for (std::size_t m = 0; m < len; ++m)
      if (slot[m] != npos) values[m] = assign[slot[m]];
    if (!seen.insert(values).second) continue;

    KTable t(k, n, std::move(values));
    bool ok = true;
    for (unsigned i = 1; i <= n && ok; ++i)
      for (unsigned j = 1; j <= n && ok; ++j) {
        if (i == j) continue;
        KTable minor = identify(t, i, j);
        std::uint64_t expected = full & ~(std::uint64_t(1) << (i - 1)) &
                                 ~(std::uint64_t(1) << (j - 1));
        if (detail::ess_mask(minor.data(), k, n) != expected) ok = false;
      }
    if (ok) out.push_back(std::move(t));
  } while (detail::odometer_advance(assign.data(), assign.size(), k));
  return out;
}

// ---------------------------------------------------------------------------
// Generators

std::unique_ptr<TableStream> gen_gnn(unsigned k, unsigned n,
                                     const Mode& mode) {
  validate_gnn(k, n);
  auto support = std::make_shared<TupleSupport>(tuple_support(k, n));
  const std::size_t len = checked_pow(k, n);
  auto build = [support, k, n, len](std::span<const std::uint8_t> c) {
    std::vector<std::uint8_t> values(len, c[0]);
    for (std::size_t t = 0; t < support->repfree.size(); ++t)
      values[support->repfree[t]] = c[1 + t];
    return KTable(k, n, std::move(values));
  };
  if (std::holds_alternative<AllMode>(mode))
    return std::make_unique<CoeffAllStream>(
        k, support->repfree.size() + 1,
        [](std::span<const std::uint8_t> c) { return all_equal(c); }, build);
  const auto& s = std::get<SampleMode>(mode);
  return std::make_unique<FnSampleStream>(
      s.count, s.seed, [support, k, build](SplitMix64& rng) {
        std::vector<std::uint8_t> c(support->repfree.size() + 1);
        do {
          for (auto& e : c) e = std::uint8_t(rng.bounded(k));
        } while (all_equal(c));
        return build(c);
      });
}

std::unique_ptr<TableStream> gen_repfree(unsigned k, unsigned n,
                                         const Mode& mode) {
  validate_repfree(k, n);
  auto support = std::make_shared<TupleSupport>(tuple_support(k, n));
  const std::size_t len = checked_pow(k, n);
  auto build = [support, k, n, len](std::span<const std::uint8_t> c) {
    std::vector<std::uint8_t> values(len, 0);
    for (std::size_t t = 0; t < support->repfree.size(); ++t)
      values[support->repfree[t]] = c[t];
    return KTable(k, n, std::move(values));
  };
  if (std::holds_alternative<AllMode>(mode))
    return std::make_unique<CoeffAllStream>(k, support->repfree.size(),
                                            nullptr, build);
  const auto& s = std::get<SampleMode>(mode);
  return std::make_unique<FnSampleStream>(
      s.count, s.seed, [support, k, build](SplitMix64& rng) {
        std::vector<std::uint8_t> c(support->repfree.size());
        for (auto& e : c) e = std::uint8_t(rng.bounded(k));
        return build(c);
      });
}

namespace {

class GpkAllStream final : public TableStream {
 public:
  GpkAllStream(unsigned k, unsigned n, unsigned p)
      : k_(k), n_(n), r_(n - p), support_(tuple_support(k, n)),
        core_len_(checked_pow(k, n - p)) {
    subset_.resize(r_);
    for (unsigned t = 0; t < r_; ++t) subset_[t] = t + 1;
    core_.assign(core_len_, 0);
    gcoef_.assign(support_.repfree.size(), 0);
    if (!seek_core(/*advance_first=*/false) || !advance_g()) done_ = true;
  }

  std::optional<KTable> next() override {
    while (!done_) {
      KTable f = build();
      step();
      if (seen_.insert(std::vector<std::uint8_t>(f.values().begin(),
                                                 f.values().end()))
              .second)
        return f;
    }
    return std::nullopt;
  }

 private:
  KTable build() const {
    std::vector<std::uint8_t> values = cylindrify(core_, subset_, k_, n_);
    for (std::size_t t = 0; t < gcoef_.size(); ++t) {
      std::uint8_t* cell = &values[support_.repfree[t]];
      unsigned s = unsigned(*cell) + gcoef_[t];
      *cell = std::uint8_t(s >= k_ ? s - k_ : s);
    }
    return KTable(k_, n_, std::move(values));
  }

  void step() {
    if (advance_g()) return;
    std::fill(gcoef_.begin(), gcoef_.end(), 0);
    if (seek_core(/*advance_first=*/true) && advance_g()) return;
    std::fill(core_.begin(), core_.end(), 0);
    std::fill(gcoef_.begin(), gcoef_.end(), 0);
    if (next_combination(subset_, n_) && seek_core(false) && advance_g())
      return;
    done_ = true;
  }

  bool advance_g() {
    do {
      if (!detail::odometer_advance(gcoef_.data(), gcoef_.size(), k_))
        return false;
    } while (all_zero(gcoef_));
    return true;
  }

  // Positions core_ on the next (or current) table with all r_ variables
  // essential.
  bool seek_core(bool advance_first) {
    if (advance_first &&
        !detail::odometer_advance(core_.data(), core_.size(), k_))
      return false;
    for (;;) {
      if (std::popcount(detail::ess_mask(core_.data(), k_, r_)) == int(r_))
        return true;
      if (!detail::odometer_advance(core_.data(), core_.size(), k_))
        return false;
    }
  }

  unsigned k_, n_, r_;
  TupleSupport support_;
  std::size_t core_len_;
  std::vector<unsigned> subset_;
  std::vector<std::uint8_t> core_;
  std::vector<std::uint8_t> gcoef_;
  std::unordered_set<std::vector<std::uint8_t>, VectorHash> seen_;
  bool done_ = false;
};

}  // namespace

std::unique_ptr<TableStream> gen_gpk(unsigned k, unsigned n, unsigned p,
                                     const Mode& mode) {
  validate_gpk(k, n, p);
  if (std::holds_alternative<AllMode>(mode))
    return std::make_unique<GpkAllStream>(k, n, p);
  const auto& s = std::get<SampleMode>(mode);
  const unsigned r = n - p;
  auto support = std::make_shared<TupleSupport>(tuple_support(k, n));
  const std::size_t core_len = checked_pow(k, r);
  const std::uint64_t nsubsets = binom64(n, r);
  return std::make_unique<FnSampleStream>(
      s.count, s.seed,
      [k, n, r, support, core_len, nsubsets](SplitMix64& rng) {
        auto subset = unrank_combination(n, r, rng.bounded(nsubsets));
        std::vector<std::uint8_t> core(core_len);
        do {
          for (auto& e : core) e = std::uint8_t(rng.bounded(k));
        } while (std::popcount(detail::ess_mask(core.data(), k, r)) !=
                 int(r));
        std::vector<std::uint8_t> values = cylindrify(core, subset, k, n);
        std::vector<std::uint8_t> gcoef(support->repfree.size());
        do {
          for (auto& e : gcoef) e = std::uint8_t(rng.bounded(k));
        } while (all_zero(gcoef));
        for (std::size_t t = 0; t < gcoef.size(); ++t) {
          std::uint8_t* cell = &values[support->repfree[t]];
          unsigned sum = unsigned(*cell) + gcoef[t];
          *cell = std::uint8_t(sum >= k ? sum - k : sum);
        }
        return KTable(k, n, std::move(values));
      });
}

namespace {

class G2k3AllStream final : public TableStream {
 public:
  explicit G2k3AllStream(unsigned k)
      : k_(k), support_(tuple_support(k, 3)), coeffs_(k, 0),
        p3_(support_.repfree.size(), 0) {
    // first admissible coefficient tuple
    if (!detail::odometer_advance(coeffs_.data(), coeffs_.size(), k_)) {
      done_ = true;
      return;
    }
    parts_ = g2k3_symmetric_parts(coeffs_, k_);
  }

  std::optional<KTable> next() override {
    if (done_) return std::nullopt;
    const KTable& part = parts_[part_index_];
    std::vector<std::uint8_t> values(part.values().begin(),
                                     part.values().end());
    for (std::size_t t = 0; t < p3_.size(); ++t) {
      std::uint8_t* cell = &values[support_.repfree[t]];
      unsigned s = unsigned(*cell) + p3_[t];
      *cell = std::uint8_t(s >= k_ ? s - k_ : s);
    }
    KTable out(k_, 3, std::move(values));
    step();
    return out;
  }

 private:
  void step() {
    if (detail::odometer_advance(p3_.data(), p3_.size(), k_)) return;
    if (++part_index_ < parts_.size()) return;
    part_index_ = 0;
    do {
      if (!detail::odometer_advance(coeffs_.data(), coeffs_.size(), k_)) {
        done_ = true;
        return;
      }
    } while (all_equal(coeffs_));
    parts_ = g2k3_symmetric_parts(coeffs_, k_);
  }

  unsigned k_;
  TupleSupport support_;
  std::vector<std::uint8_t> coeffs_;
  std::vector<std::uint8_t> p3_;
  std::vector<KTable> parts_;
  std::size_t part_index_ = 0;
  bool done_ = false;
};

}  // namespace

std::unique_ptr<TableStream> gen_g2k3(unsigned k, const Mode& mode) {
  validate_g2k3(k);
  if (std::holds_alternative<AllMode>(mode))
    return std::make_unique<G2k3AllStream>(k);
  const auto& s = std::get<SampleMode>(mode);
  auto support = std::make_shared<TupleSupport>(tuple_support(k, 3));
  return std::make_unique<FnSampleStream>(
      s.count, s.seed, [k, support](SplitMix64& rng) {
        std::vector<std::uint8_t> coeffs(k);
        do {
          for (auto& e : coeffs) e = std::uint8_t(rng.bounded(k));
        } while (all_equal(coeffs));
        auto parts = g2k3_symmetric_parts(coeffs, k);
        const KTable& part = parts[rng.bounded(parts.size())];
        std::vector<std::uint8_t> values(part.values().begin(),
                                         part.values().end());
        for (std::uint32_t idx : support->repfree) {
          unsigned sum = unsigned(values[idx]) + unsigned(rng.bounded(k));
          values[idx] = std::uint8_t(sum >= k ? sum - k : sum);
        }
        return KTable(k, 3, std::move(values));
      });
}

std::unique_ptr<TableStream> gen_g2_minus(unsigned k, unsigned n,
                                          const Mode& mode) {
  validate_g2minus(k, n);
  auto parts =
      std::make_shared<std::vector<KTable>>(g2minus_symmetric_parts(k, n));
  if (parts->empty()) return std::make_unique<EmptyStream>();
  auto support = std::make_shared<TupleSupport>(tuple_support(k, n));
  if (std::holds_alternative<AllMode>(mode))
    return std::make_unique<PartProductAllStream>(*parts, *support);
  const auto& s = std::get<SampleMode>(mode);
  return std::make_unique<FnSampleStream>(
      s.count, s.seed, [k, parts, support](SplitMix64& rng) {
        const KTable& part = (*parts)[rng.bounded(parts->size())];
        std::vector<std::uint8_t> gcoef(support->repfree.size());
        do {
          for (auto& e : gcoef) e = std::uint8_t(rng.bounded(k));
        } while (all_zero(gcoef));
        std::vector<std::uint8_t> values(part.values().begin(),
                                         part.values().end());
        for (std::size_t t = 0; t < gcoef.size(); ++t) {
          std::uint8_t* cell = &values[support->repfree[t]];
          unsigned sum = unsigned(*cell) + gcoef[t];
          *cell = std::uint8_t(sum >= k ? sum - k : sum);
        }
        return KTable(part.k(), part.n(), std::move(values));
      });
}

std::unique_ptr<TableStream> generate(const FamilyId& id, const Mode& mode) {
  switch (id.tag) {
    case Family::gnn: return gen_gnn(id.k, id.n, mode);
    case Family::repfree: return gen_repfree(id.k, id.n, mode);
    case Family::gpk: return gen_gpk(id.k, id.n, id.p, mode);
    case Family::g2plus: return gen_gpk(id.k, id.n, 2, mode);
    case Family::g2minus: return gen_g2_minus(id.k, id.n, mode);
    case Family::g2k3: return gen_g2k3(id.k, mode);
  }
  usage_error("unknown family");
}

// ---------------------------------------------------------------------------
// Names

const char* family_name(Family f) {
  switch (f) {
    case Family::gnn: return "gnn";
    case Family::repfree: return "repfree";
    case Family::gpk: return "gpk";
    case Family::g2plus: return "g2plus";
    case Family::g2minus: return "g2minus";
    case Family::g2k3: return "g2k3";
  }
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
  for (Family f : {Family::gnn, Family::repfree, Family::gpk, Family::g2plus,
                   Family::g2minus, Family::g2k3})
    if (name == family_name(f)) return f;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Counting

BigCount count_gnn(unsigned k, unsigned n) {
  require(k >= 2, "k must be at least 2");
  require(2 <= n && n <= k, "gnn count requires 2 <= n <= k");
  return bpow(k, repfree_count(k, n) + 1) - k;
}

BigCount count_exact_ess(unsigned k, unsigned n, unsigned m) {
  require(k >= 2, "k must be at least 2");
  require(m <= n, "essential count cannot exceed the arity");
  const unsigned p = n - m;
  BigCount sum = 0;
  for (unsigned j = p; j <= n; ++j) {
    BigCount term = big_binom(j, p) * big_binom(n, j) *
                    bpow(k, upow_guarded(k, n - j));
    if ((j - p) % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

BigCount count_gpk(unsigned k, unsigned n, unsigned p) {
  validate_gpk(k, n, p);
  BigCount sum = 0;
  for (unsigned j = p; j <= n; ++j) {
    BigCount term = big_binom(j, p) * big_binom(n, j) *
                    bpow(k, upow_guarded(k, n - j));
    if ((j - p) % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return (bpow(k, repfree_count(k, n)) - 1) * sum;
}

BigCount count_g2_plus(unsigned k, unsigned n) {
  require(k >= 2, "k must be at least 2");
  require(3 < n && n <= k, "g2plus count requires 3 < n <= k");
  BigCount sum = 0;
  for (unsigned j = 2; j <= n; ++j) {
    BigCount term = big_binom(j, 2) * big_binom(n, j) *
                    bpow(k, upow_guarded(k, n - j));
    if (j % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return (bpow(k, repfree_count(k, n)) - 1) * sum;
}

BigCount count_g2k3(unsigned k) {
  require(k >= 3, "g2k3 count requires k >= 3");
  return 5832 * big_binom(k, 3) * (bpow(k, k) - k);
}

std::optional<BigCount> family_formula(const FamilyId& id) {
  switch (id.tag) {
    case Family::gnn: return count_gnn(id.k, id.n);
    case Family::repfree:
      validate_repfree(id.k, id.n);
      return bpow(id.k, repfree_count(id.k, id.n));
    case Family::gpk: return count_gpk(id.k, id.n, id.p);
    case Family::g2plus: return count_g2_plus(id.k, id.n);
    case Family::g2minus: return std::nullopt;
    case Family::g2k3: return count_g2k3(id.k);
  }
  return std::nullopt;
}

BigCount all_mode_cardinality(const FamilyId& id) {
  switch (id.tag) {
    case Family::gnn: return count_gnn(id.k, id.n);
    case Family::repfree:
      validate_repfree(id.k, id.n);
      return bpow(id.k, repfree_count(id.k, id.n));
    case Family::gpk:
    case Family::g2plus: {
      const unsigned p = id.tag == Family::g2plus ? 2 : id.p;
      validate_gpk(id.k, id.n, p);
      const unsigned r = id.n - p;
      return big_binom(id.n, r) * count_exact_ess(id.k, r, r) *
             (bpow(id.k, repfree_count(id.k, id.n)) - 1);
    }
    case Family::g2minus:
      return BigCount(g2minus_symmetric_parts(id.k, id.n).size()) *
             (bpow(id.k, repfree_count(id.k, id.n)) - 1);
    case Family::g2k3: {
      validate_g2k3(id.k);
      // 8 symmetric parts per admissible coefficient tuple
      return (bpow(id.k, id.k) - id.k) * 8 *
             bpow(id.k, repfree_count(id.k, 3));
    }
  }
  usage_error("unknown family");
}

}  // namespace gapkit
