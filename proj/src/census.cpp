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

#include "gapkit/census.hpp"

#include <bit>
#include <cstdlib>
#include <thread>
#include <unordered_set>

#include "gapkit/gap.hpp"
#include "gapkit/kernels.hpp"
#include "gapkit/rng.hpp"

namespace gapkit {

FeasibilityError::FeasibilityError(BigCount required, const std::string& msg)
    : std::runtime_error(msg), required_(std::move(required)) {}

std::uint64_t default_cap() {
  if (const char* env = std::getenv("GAPKIT_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t(1) << 34;
}

namespace {

// Per-(k,n) scratch shared by one worker: the minor index maps do not
// depend on the scanned function, so they are built once.
struct SpaceContext {
  unsigned k = 0;
  unsigned n = 0;
  std::size_t len = 0;
  std::vector<std::vector<std::uint32_t>> maps;  // (i,j) -> index map
  std::vector<std::uint8_t> scratch;

  SpaceContext(unsigned k_in, unsigned n_in)
      : k(k_in), n(n_in), len(checked_pow(k_in, n_in)) {
    maps.resize(std::size_t(n) * n);
    for (unsigned i = 1; i <= n; ++i)
      for (unsigned j = 1; j <= n; ++j) {
        if (i == j) continue;
        auto& map = maps[std::size_t(i - 1) * n + (j - 1)];
        map.resize(len);
        detail::build_identify_map(k, n, i, j, map.data());
      }
    scratch.resize(len);
  }

  // (ess, gap) with gap = -1 when undefined.
  std::pair<unsigned, int> classify(const std::uint8_t* v) {
    const std::uint64_t mask = detail::ess_mask(v, k, n);
    const unsigned e = unsigned(std::popcount(mask));
    if (e < 2) return {e, -1};
    unsigned best = 0;
    for (unsigned i = 1; i <= n && best + 1 < e; ++i) {
      if (!((mask >> (i - 1)) & 1)) continue;
      for (unsigned j = 1; j <= n && best + 1 < e; ++j) {
        if (i == j || !((mask >> (j - 1)) & 1)) continue;
        const auto& map = maps[std::size_t(i - 1) * n + (j - 1)];
        kernels::active().gather(scratch.data(), v, map.data(), len);
        unsigned me =
            unsigned(std::popcount(detail::ess_mask(scratch.data(), k, n)));
        if (me > best) best = me;
      }
    }
    return {e, int(e - best)};
  }
};

// cell counters: column 0 = undefined gap, column g = gap g.
struct CellCounts {
  unsigned n = 0;
  std::vector<std::uint64_t> counts;  // (n+1) x (n+1)

  explicit CellCounts(unsigned n_in)
      : n(n_in), counts(std::size_t(n_in + 1) * (n_in + 1), 0) {}

  void add(std::pair<unsigned, int> cell) {
    const unsigned col = cell.second < 0 ? 0 : unsigned(cell.second);
    ++counts[std::size_t(cell.first) * (n + 1) + col];
  }

  void merge_into(Distribution& d) const {
    for (unsigned e = 0; e <= n; ++e)
      for (unsigned col = 0; col <= n; ++col) {
        std::uint64_t c = counts[std::size_t(e) * (n + 1) + col];
        if (c == 0) continue;
        d.cells[{e, col == 0 ? -1 : int(col)}] += c;
      }
  }
};

void decode_function_index(std::uint64_t m, std::uint8_t* values,
                           std::size_t len, unsigned k) {
  for (std::size_t pos = len; pos-- > 0;) {
    values[pos] = std::uint8_t(m % k);
    m /= k;
  }
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

template <typename WorkerFn>
void run_partitioned(std::uint64_t total, unsigned jobs, WorkerFn&& fn) {
  jobs = resolve_jobs(jobs);
  if (jobs > total) jobs = unsigned(total ? total : 1);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    const std::uint64_t begin = total / jobs * w + std::min<std::uint64_t>(w, total % jobs);
    const std::uint64_t end =
        total / jobs * (w + 1) + std::min<std::uint64_t>(w + 1, total % jobs);
    threads.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

Distribution census_exhaustive(unsigned k, unsigned n, unsigned jobs,
                               std::optional<std::uint64_t> cap) {
  const std::size_t len = checked_pow(k, n);
  const std::uint64_t budget = cap.value_or(default_cap());
  const BigCount space = boost::multiprecision::pow(BigCount(k), unsigned(len));
  if (space > budget)
    throw FeasibilityError(
        space, "exhaustive census of P_" + std::to_string(k) + "^" +
                   std::to_string(n) + " needs " + space.str() +
                   " tables, above the cap of " + std::to_string(budget));
  const std::uint64_t total = space.convert_to<std::uint64_t>();

  const unsigned used_jobs = resolve_jobs(jobs);
  std::vector<CellCounts> partials(used_jobs, CellCounts(n));
  run_partitioned(total, used_jobs, [&](unsigned w, std::uint64_t begin,
                                        std::uint64_t end) {
    SpaceContext ctx(k, n);
    std::vector<std::uint8_t> values(len);
    decode_function_index(begin, values.data(), len, k);
    for (std::uint64_t m = begin; m < end; ++m) {
      partials[w].add(ctx.classify(values.data()));
      detail::odometer_advance(values.data(), len, k);
    }
  });

  Distribution d;
  d.k = k;
  d.n = n;
  d.total = space;
  for (const auto& part : partials) part.merge_into(d);
  return d;
}

Distribution census_sample(unsigned k, unsigned n, std::uint64_t count,
                           std::uint64_t seed, unsigned jobs) {
  const std::size_t len = checked_pow(k, n);
  if (count == 0) throw std::invalid_argument("sample count must be >= 1");

  const unsigned used_jobs = resolve_jobs(jobs);
  std::vector<CellCounts> partials(used_jobs, CellCounts(n));
  run_partitioned(count, used_jobs, [&](unsigned w, std::uint64_t begin,
                                        std::uint64_t end) {
    SpaceContext ctx(k, n);
    std::vector<std::uint8_t> values(len);
    for (std::uint64_t i = begin; i < end; ++i) {
      SplitMix64 rng = substream(seed, i);
      for (auto& v : values) v = std::uint8_t(rng.bounded(k));
      partials[w].add(ctx.classify(values.data()));
    }
  });

  Distribution d;
  d.k = k;
  d.n = n;
  d.total = count;
  for (const auto& part : partials) part.merge_into(d);
  return d;
}

std::string to_tsv(const Distribution& d) {
  std::string out = "ess\tgap\tcount\n";
  for (const auto& [key, count] : d.cells) {
    out += std::to_string(key.first);
    out += '\t';
    out += key.second < 0 ? "-" : std::to_string(key.second);
    out += '\t';
    out += count.str();
    out += '\n';
  }
  return out;
}

namespace {

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

bool family_predicate(const FamilyId& id, const KTable& f,
                      std::uint64_t& plus_and_minus) {
  switch (id.tag) {
    case Family::gnn:
      return in_gnn(f) && ess(f) == id.n;
    case Family::repfree: {
      std::vector<std::uint8_t> digits(f.n(), 0);
      for (std::size_t m = 0; m < f.size(); ++m) {
        if (has_repetition(digits) && f[m] != 0) return false;
        detail::odometer_advance(digits.data(), f.n(), f.k());
      }
      return true;
    }
    case Family::gpk: {
      GapReport r = classify(f);
      return r.ess == id.n && r.gap && *r.gap == id.p;
    }
    case Family::g2plus: {
      GapReport r = classify(f);
      if (r.plus_member && r.minus_member) ++plus_and_minus;
      return r.ess == id.n && r.gap && *r.gap == 2 && r.plus_member;
    }
    case Family::g2minus: {
      GapReport r = classify(f);
      if (r.plus_member && r.minus_member) ++plus_and_minus;
      return r.ess == id.n && r.gap && *r.gap == 2 && r.minus_member;
    }
    case Family::g2k3: {
      GapReport r = classify(f);
      if (!(r.ess == 3 && r.gap && *r.gap == 2)) return false;
      for (const auto& rec : nontrivial_minors(f))
        if (ess(rec.table) != 1) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

VerifyReport verify_family(const FamilyId& id, const Mode& mode,
                           std::optional<std::uint64_t> cap) {
  VerifyReport report;
  report.family = id;
  report.sampled = std::holds_alternative<SampleMode>(mode);

  if (!report.sampled) {
    const BigCount budget = all_mode_cardinality(id);
    const std::uint64_t limit = cap.value_or(default_cap());
    if (budget > limit)
      throw FeasibilityError(
          budget, "all-mode verification of family " +
                      std::string(family_name(id.tag)) + " needs " +
                      budget.str() + " tables, above the cap of " +
                      std::to_string(limit));
    report.formula_value = family_formula(id);
  }

  if (id.tag == Family::g2k3 && id.k > 3) {
    report.experiment_formula = count_g2k3(id.k);
    report.experiment_nominal = all_mode_cardinality(id);
  }

  auto stream = generate(id, mode);
  std::unordered_set<std::vector<std::uint8_t>, VectorHash> seen;
  while (auto f = stream->next()) {
    ++report.emitted;
    if (!family_predicate(id, *f, report.plus_and_minus))
      ++report.predicate_failures;
    if (seen.insert(std::vector<std::uint8_t>(f->values().begin(),
                                              f->values().end()))
            .second)
      ++report.distinct;
  }

  if (report.predicate_failures != 0 || report.distinct != report.emitted)
    report.verdict = VerifyReport::Verdict::fail;
  else if (report.formula_value && *report.formula_value != report.distinct)
    report.verdict = VerifyReport::Verdict::formula_mismatch;
  else
    report.verdict = VerifyReport::Verdict::pass;
  return report;
}

const char* verdict_name(VerifyReport::Verdict v) {
  switch (v) {
    case VerifyReport::Verdict::pass: return "pass";
    case VerifyReport::Verdict::fail: return "fail";
    case VerifyReport::Verdict::formula_mismatch: return "formula-mismatch";
  }
  return "?";
}

std::string to_report(const VerifyReport& r) {
  std::string out;
  out += "family: " + std::string(family_name(r.family.tag)) + "\n";
  out += "k: " + std::to_string(r.family.k) + "\n";
  if (r.family.tag != Family::g2k3)
    out += "n: " + std::to_string(r.family.n) + "\n";
  if (r.family.tag == Family::gpk)
    out += "p: " + std::to_string(r.family.p) + "\n";
  out += "mode: " + std::string(r.sampled ? "sample" : "all") + "\n";
  out += "emitted: " + r.emitted.str() + "\n";
  out += "distinct: " + r.distinct.str() + "\n";
  out += "predicate_failures: " + r.predicate_failures.str() + "\n";
  if (r.formula_value) out += "formula: " + r.formula_value->str() + "\n";
  if (r.experiment_formula)
    out += "formula_claim: " + r.experiment_formula->str() + "\n";
  if (r.experiment_nominal)
    out += "nominal_enumeration: " + r.experiment_nominal->str() + "\n";
  if (r.family.tag == Family::g2plus || r.family.tag == Family::g2minus)
    out += "plus_and_minus: " + std::to_string(r.plus_and_minus) + "\n";
  out += "verdict: " + std::string(verdict_name(r.verdict)) + "\n";
  return out;
}

}  // namespace gapkit
