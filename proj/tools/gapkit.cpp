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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gapkit/census.hpp"
#include "gapkit/families.hpp"
#include "gapkit/gap.hpp"
#include "gapkit/ktable.hpp"
#include "gapkit/scform.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  out << content;
}

gapkit::KTable load_table(const std::string& path) {
  return gapkit::read_table(slurp(path));
}

gapkit::Family parse_family(const std::string& name) {
  auto f = gapkit::family_from_name(name);
  if (!f)
    throw std::invalid_argument("unknown family '" + name +
                                "' (expected gnn, repfree, gpk, g2plus, "
                                "g2minus or g2k3)");
  return *f;
}

struct ModeFlags {
  bool all = false;
  std::uint64_t sample = 0;
  bool have_sample = false;
  std::uint64_t seed = 0;
  bool have_seed = false;

  gapkit::Mode resolve() const {
    if (all == have_sample)
      throw std::invalid_argument("choose exactly one of --all / --sample");
    if (all) return gapkit::AllMode{};
    if (!have_seed)
      throw std::invalid_argument("--sample requires --seed");
    return gapkit::SampleMode{sample, seed};
  }
};

std::string compact_line(const gapkit::KTable& f) {
  std::string line =
      std::to_string(f.k()) + " " + std::to_string(f.n()) + " :";
  for (std::size_t m = 0; m < f.size(); ++m) {
    line += ' ';
    line += std::to_string(f[m]);
  }
  line += '\n';
  return line;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int run(int argc, char** argv) {
  CLI::App app{"analyze, generate, count and census k-valued functions by "
               "their essential arity gap"};
  app.require_subcommand(1);

  // analyze
  std::string an_file;
  auto* analyze_cmd = app.add_subcommand("analyze",
                                         "report ess/gap/class flags for a "
                                         "table file");
  analyze_cmd->add_option("file", an_file, "table file ('-' for stdin)")
      ->required();

  // minor
  std::string mi_file, mi_out;
  unsigned mi_i = 0, mi_j = 0;
  auto* minor_cmd =
      app.add_subcommand("minor", "identification minor f with x_i <- x_j");
  minor_cmd->add_option("file", mi_file, "table file ('-' for stdin)")
      ->required();
  minor_cmd->add_option("--i", mi_i, "position substituted into")->required();
  minor_cmd->add_option("--j", mi_j, "position substituted from")->required();
  minor_cmd->add_option("-o,--output", mi_out, "output file");

  // census
  unsigned ce_k = 0, ce_n = 0, ce_jobs = 0;
  bool ce_exhaustive = false;
  std::uint64_t ce_sample = 0, ce_seed = 0, ce_cap = 0;
  std::string ce_out;
  auto* census_cmd =
      app.add_subcommand("census", "(ess, gap) distribution of P_k^n as TSV");
  census_cmd->add_option("--k", ce_k, "base")->required();
  census_cmd->add_option("--n", ce_n, "arity")->required();
  census_cmd->add_flag("--exhaustive", ce_exhaustive, "scan every function");
  auto* ce_sample_opt =
      census_cmd->add_option("--sample", ce_sample, "random tables to draw");
  auto* ce_seed_opt = census_cmd->add_option("--seed", ce_seed, "sample seed");
  census_cmd->add_option("--jobs", ce_jobs, "worker threads (0 = auto)");
  auto* ce_cap_opt = census_cmd->add_option(
      "--cap", ce_cap, "feasibility cap override (also GAPKIT_CAP)");
  census_cmd->add_option("-o,--output", ce_out, "output file");

  // generate
  std::string ge_family, ge_out;
  unsigned ge_k = 0, ge_n = 0, ge_p = 0;
  ModeFlags ge_mode;
  auto* generate_cmd =
      app.add_subcommand("generate", "stream family members, one per line");
  generate_cmd->add_option("--family", ge_family, "family tag")->required();
  generate_cmd->add_option("--k", ge_k, "base")->required();
  auto* ge_n_opt = generate_cmd->add_option("--n", ge_n, "arity");
  generate_cmd->add_option("--p", ge_p, "gap (gpk family)");
  generate_cmd->add_flag("--all", ge_mode.all, "enumerate the whole family");
  auto* ge_sample_opt = generate_cmd->add_option("--sample", ge_mode.sample,
                                                 "seeded random draws");
  auto* ge_seed_opt =
      generate_cmd->add_option("--seed", ge_mode.seed, "sample seed");
  generate_cmd->add_option("-o,--output", ge_out, "output file");

  // verify
  std::string ve_family;
  unsigned ve_k = 0, ve_n = 0, ve_p = 0;
  std::uint64_t ve_cap = 0;
  ModeFlags ve_mode;
  auto* verify_cmd = app.add_subcommand(
      "verify", "run a family generator against its defining predicate");
  verify_cmd->add_option("--family", ve_family, "family tag")->required();
  verify_cmd->add_option("--k", ve_k, "base")->required();
  auto* ve_n_opt = verify_cmd->add_option("--n", ve_n, "arity");
  verify_cmd->add_option("--p", ve_p, "gap (gpk family)");
  verify_cmd->add_flag("--all", ve_mode.all, "enumerate the whole family");
  auto* ve_sample_opt = verify_cmd->add_option("--sample", ve_mode.sample,
                                               "seeded random draws");
  auto* ve_seed_opt =
      verify_cmd->add_option("--seed", ve_mode.seed, "sample seed");
  auto* ve_cap_opt = verify_cmd->add_option(
      "--cap", ve_cap, "feasibility cap override (also GAPKIT_CAP)");

  // count
  std::string co_family;
  unsigned co_k = 0, co_n = 0, co_p = 0, co_m = 0;
  auto* co_cmd = app.add_subcommand("count", "exact family size");
  co_cmd->add_option("--family", co_family, "family tag (or 'ess' with --m)")
      ->required();
  co_cmd->add_option("--k", co_k, "base")->required();
  auto* co_n_opt = co_cmd->add_option("--n", co_n, "arity");
  auto* co_p_opt = co_cmd->add_option("--p", co_p, "gap (gpk family)");
  auto* co_m_opt =
      co_cmd->add_option("--m", co_m, "exact essential-variable count");

  // decompose
  std::string de_file, de_out;
  auto* de_cmd = app.add_subcommand(
      "decompose", "split f into a collapsing minor h and f - h");
  de_cmd->add_option("file", de_file, "table file ('-' for stdin)")
      ->required();
  de_cmd->add_option("-o,--output", de_out, "output file");

  // parse
  std::string pa_expr, pa_out;
  unsigned pa_k = 0, pa_n = 0;
  auto* pa_cmd =
      app.add_subcommand("parse", "expression to table file");
  pa_cmd->add_option("--k", pa_k, "base")->required();
  pa_cmd->add_option("--n", pa_n, "arity")->required();
  pa_cmd->add_option("--expr", pa_expr, "sum-of-conjunctions expression")
      ->required();
  pa_cmd->add_option("-o,--output", pa_out, "output file");

  // print
  std::string pr_file, pr_out;
  auto* pr_cmd = app.add_subcommand("print", "table file to expression");
  pr_cmd->add_option("file", pr_file, "table file ('-' for stdin)")
      ->required();
  pr_cmd->add_option("-o,--output", pr_out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze_cmd) {
      gapkit::KTable f = load_table(an_file);
      gapkit::GapReport r = gapkit::classify(f);
      auto members = gapkit::essential_set(f).members();
      std::string ms;
      for (unsigned v : members) {
        if (!ms.empty()) ms += ", ";
        ms += "x" + std::to_string(v);
      }
      std::cout << "k: " << f.k() << "\n"
                << "n: " << f.n() << "\n"
                << "essential: {" << ms << "}\n"
                << "ess: " << r.ess << "\n"
                << "gap: "
                << (r.gap ? std::to_string(*r.gap) : std::string("undefined"))
                << "\n";
      if (r.best_minor)
        std::cout << "best_minor: x" << r.best_minor->i << " <- x"
                  << r.best_minor->j << " (ess " << r.best_minor->ess
                  << ")\n";
      std::cout << "gnn: " << yes_no(r.gnn_member) << "\n"
                << "plus: " << yes_no(r.plus_member) << "\n"
                << "minus: " << yes_no(r.minus_member) << "\n"
                << "decomposition: "
                << (r.decomposition ? "available" : "none") << "\n";
      return kExitOk;
    }

    if (*minor_cmd) {
      gapkit::KTable f = load_table(mi_file);
      emit(mi_out, gapkit::write_table(gapkit::identify(f, mi_i, mi_j)));
      return kExitOk;
    }

    if (*census_cmd) {
      const bool sampled = ce_sample_opt->count() > 0;
      if (ce_exhaustive == sampled)
        throw std::invalid_argument(
            "choose exactly one of --exhaustive / --sample");
      if (sampled && ce_seed_opt->count() == 0)
        throw std::invalid_argument("--sample requires --seed");
      std::optional<std::uint64_t> cap;
      if (ce_cap_opt->count() > 0) cap = ce_cap;
      gapkit::Distribution d =
          sampled ? gapkit::census_sample(ce_k, ce_n, ce_sample, ce_seed,
                                          ce_jobs)
                  : gapkit::census_exhaustive(ce_k, ce_n, ce_jobs, cap);
      emit(ce_out, gapkit::to_tsv(d));
      return kExitOk;
    }

    auto make_family_id = [](const std::string& name, unsigned k, unsigned n,
                             unsigned p, const CLI::Option* n_opt) {
      gapkit::FamilyId id;
      id.tag = parse_family(name);
      id.k = k;
      id.p = p;
      if (id.tag == gapkit::Family::g2k3) {
        if (n_opt->count() > 0 && n != 3)
          throw std::invalid_argument("family g2k3 is ternary (n = 3)");
        id.n = 3;
      } else {
        if (n_opt->count() == 0)
          throw std::invalid_argument("--n is required for this family");
        id.n = n;
      }
      return id;
    };

    if (*generate_cmd) {
      ge_mode.have_sample = ge_sample_opt->count() > 0;
      ge_mode.have_seed = ge_seed_opt->count() > 0;
      gapkit::FamilyId id =
          make_family_id(ge_family, ge_k, ge_n, ge_p, ge_n_opt);
      gapkit::Mode mode = ge_mode.resolve();
      auto stream = gapkit::generate(id, mode);
      std::ostream* out = &std::cout;
      std::ofstream file;
      if (!ge_out.empty() && ge_out != "-") {
        file.open(ge_out, std::ios::binary);
        if (!file)
          throw std::invalid_argument("cannot open output file: " + ge_out);
        out = &file;
      }
      while (auto f = stream->next()) *out << compact_line(*f);
      return kExitOk;
    }

    if (*verify_cmd) {
      ve_mode.have_sample = ve_sample_opt->count() > 0;
      ve_mode.have_seed = ve_seed_opt->count() > 0;
      gapkit::FamilyId id =
          make_family_id(ve_family, ve_k, ve_n, ve_p, ve_n_opt);
      gapkit::Mode mode = ve_mode.resolve();
      std::optional<std::uint64_t> cap;
      if (ve_cap_opt->count() > 0) cap = ve_cap;
      gapkit::VerifyReport report = gapkit::verify_family(id, mode, cap);
      std::cout << gapkit::to_report(report);
      return report.verdict == gapkit::VerifyReport::Verdict::pass
                 ? kExitOk
                 : kExitVerifyFail;
    }

    if (*co_cmd) {
      gapkit::BigCount value;
      if (co_family == "ess") {
        if (co_m_opt->count() == 0 || co_n_opt->count() == 0)
          throw std::invalid_argument("count --family ess needs --n and --m");
        value = gapkit::count_exact_ess(co_k, co_n, co_m);
      } else {
        gapkit::FamilyId id =
            make_family_id(co_family, co_k, co_n, co_p, co_n_opt);
        if (id.tag == gapkit::Family::gpk && co_p_opt->count() == 0)
          throw std::invalid_argument("count --family gpk needs --p");
        auto formula = gapkit::family_formula(id);
        if (!formula)
          throw std::invalid_argument("family " + co_family +
                                      " has no closed-form count");
        value = *formula;
      }
      std::cout << value.str() << "\n";
      return kExitOk;
    }

    if (*de_cmd) {
      gapkit::KTable f = load_table(de_file);
      auto dec = gapkit::decompose(f);
      if (!dec) {
        emit(de_out, "no collapsing pair\n");
        return kExitOk;
      }
      std::string out = "# h\n" + gapkit::write_table(dec->h) + "# g\n" +
                        gapkit::write_table(dec->g);
      emit(de_out, out);
      return kExitOk;
    }

    if (*pa_cmd) {
      emit(pa_out,
           gapkit::write_table(gapkit::parse_expr(pa_expr, pa_k, pa_n)));
      return kExitOk;
    }

    if (*pr_cmd) {
      emit(pr_out, gapkit::print_sc(load_table(pr_file)) + "\n");
      return kExitOk;
    }
  } catch (const gapkit::FeasibilityError& e) {
    std::cerr << "gapkit: " << e.what() << "\n";
    return kExitBudget;
  } catch (const gapkit::ScformError& e) {
    std::cerr << "gapkit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "gapkit: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
