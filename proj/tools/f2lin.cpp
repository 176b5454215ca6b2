// Command-line front end: equidistribution tables, minimum-weight relation
// search, relation verification, birthday spacings, oracle self-test, and a
// throughput probe.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "f2lin/birthday.hpp"
#include "f2lin/kernels.hpp"
#include "f2lin/lattice.hpp"
#include "f2lin/merit.hpp"
#include "f2lin/oracle.hpp"
#include "f2lin/parallel.hpp"
#include "f2lin/report.hpp"
#include "f2lin/version.hpp"

using namespace f2lin;

namespace {

int default_threads() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

std::string resolve_out(const std::string& out) {
  if (out.empty()) return out;
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("F2LIN_OUT_DIR"))
      if (*dir) p = std::filesystem::path(dir) / p;
  }
  return p.string();
}

void emit(const std::string& out, const std::string& body) {
  std::string path = resolve_out(out);
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << body;
  std::fprintf(stderr, "wrote %s\n", path.c_str());
}

std::vector<int> parse_lags(const std::string& csv) {
  std::vector<int> lags;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    lags.push_back(std::stoi(csv.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return lags;
}

struct CommonOpts {
  std::string generator;
  std::string out;
  std::string format = "tsv";
  uint32_t seed = 5489;
  int threads = default_threads();
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_format = true) {
  cmd->add_option("generator", c.generator,
                  "mt19937 | memt19937ii | smalldense:<config.json>")
      ->required();
  cmd->add_option("--out", c.out,
                  "output file (default stdout; relative paths join "
                  "F2LIN_OUT_DIR)");
  if (with_format)
    cmd->add_option("--format", c.format, "tsv | json")
        ->check(CLI::IsMember({"tsv", "json"}));
  cmd->add_option("--seed", c.seed, "integer seed for the analysis state");
  cmd->add_option("--threads", c.threads, "worker cap (1 = single-threaded)");
}

int run_analyze(const CommonOpts& c, int v_max, int nv_budget_log2,
                uint64_t sample_count, bool skip_nv) {
  GeneratorSpec spec = GeneratorSpec::by_name(c.generator);
  int w = spec.w;
  if (v_max <= 0) v_max = w;
  LatticeContext ctx(spec, Seed::integer(c.seed));

  AnalyzeResult res;
  res.generator = spec.name();
  res.v_max = v_max;
  res.p = spec.p;
  res.minima.resize(v_max);
  res.k.resize(v_max);
  res.d.resize(v_max);
  res.merit.resize(v_max);

  std::vector<ReducedBasis> reduced(v_max);
  parallel_for(v_max, c.threads, [&](std::size_t i) {
    reduced[i] = ctx.reduced(static_cast<int>(i) + 1);
  });
  for (int v = 1; v <= v_max; ++v) {
    const auto& rb = reduced[v - 1];
    res.minima[v - 1] = rb.minima;
    res.k[v - 1] = k_of_v(rb);
    res.d[v - 1] = spec.p / v - res.k[v - 1];
    res.delta += res.d[v - 1];
  }
  res.delta_complete = (v_max == w);

  if (!skip_nv) {
    EnumerateOptions opts;
    opts.max_enum = nv_budget_log2 >= 63 ? ~0ull : (1ull << nv_budget_log2);
    opts.sample_count = sample_count;
    opts.threads = c.threads;
    for (int v = 1; v <= v_max; ++v)
      res.merit[v - 1] = enumerate_min_weight(reduced[v - 1], opts);
  }

  ConfigEcho echo{{"command", "analyze"},
                  {"generator", spec.name()},
                  {"v_max", std::to_string(v_max)},
                  {"seed", std::to_string(c.seed)},
                  {"nv", skip_nv ? "skipped"
                                 : "budget_log2=" +
                                       std::to_string(nv_budget_log2) +
                                       " sample_count=" +
                                       std::to_string(sample_count)}};
  emit(c.out, render_analyze(res, parse_format(c.format), echo));
  return 0;
}

int run_merit(const CommonOpts& c, int v, int max_enum_log2,
              uint64_t sample_count, bool with_relations, bool progress) {
  GeneratorSpec spec = GeneratorSpec::by_name(c.generator);
  LatticeContext ctx(spec, Seed::integer(c.seed));
  EnumerateOptions opts;
  opts.max_enum = max_enum_log2 >= 63 ? ~0ull : (1ull << max_enum_log2);
  opts.sample_count = sample_count;
  opts.threads = c.threads;
  opts.collect_all = with_relations;
  opts.progress = progress;
  MeritReport rep = enumerate_min_weight(ctx.reduced(v), opts);
  ConfigEcho echo{{"command", "merit"},
                  {"generator", spec.name()},
                  {"v", std::to_string(v)},
                  {"seed", std::to_string(c.seed)},
                  {"max_enum_log2", std::to_string(max_enum_log2)},
                  {"sample_count", std::to_string(sample_count)},
                  {"relations", with_relations ? "yes" : "no"}};
  emit(c.out, render_merit(rep, parse_format(c.format), echo));
  return 0;
}

int run_relations(const CommonOpts& c, int v, int max_enum_log2) {
  GeneratorSpec spec = GeneratorSpec::by_name(c.generator);
  LatticeContext ctx(spec, Seed::integer(c.seed));
  EnumerateOptions opts;
  opts.max_enum = max_enum_log2 >= 63 ? ~0ull : (1ull << max_enum_log2);
  opts.threads = c.threads;
  ReducedBasis rb = ctx.reduced(v);
  auto rels = minimal_relations(rb, opts);
  uint64_t min_weight = ~0ull;
  for (const auto& r : rels) min_weight = std::min<uint64_t>(min_weight, r.weight());
  ConfigEcho echo{{"command", "relations"},
                  {"generator", spec.name()},
                  {"v", std::to_string(v)},
                  {"seed", std::to_string(c.seed)}};
  emit(c.out, render_relations(spec.name(), v, min_weight, rels, echo));
  return 0;
}

int run_verify(const CommonOpts& c, const std::string& relation_file,
               std::size_t span, const std::string& seeds_csv) {
  GeneratorSpec spec = GeneratorSpec::by_name(c.generator);
  std::ifstream in(relation_file);
  if (!in) throw std::runtime_error("cannot open " + relation_file);
  nlohmann::json j;
  in >> j;
  int v = j.at("v").get<int>();
  std::vector<LinearRelation> rels;
  for (const auto& rj : j.at("relations")) {
    LinearRelation rel;
    rel.v = v;
    for (const auto& t : rj.at("terms"))
      rel.terms.emplace_back(t.at("lag").get<int>(), t.at("bit").get<int>());
    rels.push_back(std::move(rel));
  }
  std::vector<int> seeds;
  for (int s : parse_lags(seeds_csv)) seeds.push_back(s);
  bool all_ok = true;
  for (const auto& rel : rels) {
    for (int s : seeds) {
      GeneratorState g(spec, Seed::integer(static_cast<uint32_t>(s)));
      bool ok = verify_relation(g, rel, span);
      std::printf("%s\tseed=%d\tweight=%zu\t%s\n", ok ? "PASS" : "FAIL", s,
                  rel.weight(), rel.render().c_str());
      all_ok &= ok;
    }
  }
  return all_ok ? 0 : 1;
}

int run_birthday(const CommonOpts& c, BirthdayParams params, bool progress) {
  GeneratorSpec spec = GeneratorSpec::by_name(c.generator);
  if (params.t == 0) params.t = static_cast<int>(params.lags.size());
  params.threads = c.threads;
  params.progress = progress;
  BirthdayReport rep = birthday_spacings(spec, params);
  std::string lagstr;
  for (std::size_t i = 0; i < params.lags.size(); ++i)
    lagstr += (i ? "," : "") + std::to_string(params.lags[i]);
  ConfigEcho echo{{"command", "birthday"},
                  {"generator", spec.name()},
                  {"n", std::to_string(params.n)},
                  {"replications", std::to_string(params.reps)},
                  {"t", std::to_string(params.t)},
                  {"log2d", std::to_string(params.log2d)},
                  {"lags", lagstr},
                  {"base_seed", std::to_string(params.base_seed)}};
  emit(c.out, render_birthday(rep, parse_format(c.format), echo, true));
  return 0;
}

int run_oracle_selftest(int count, int p_max, int w_max, uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int g = 0; g < count; ++g) {
    int p = 4 + static_cast<int>(rng() % (p_max - 3));
    int w = 1 + static_cast<int>(rng() % std::min(w_max, p));
    SmallDenseSpec d = random_maximal_small_dense(rng, p, w);
    GeneratorSpec spec = GeneratorSpec::small(d);
    LatticeContext ctx(spec, Seed::integer(1));
    bool ok = true;
    for (int v = 1; v <= w && ok; ++v) {
      ReducedBasis rb = ctx.reduced(v);
      int k_lat = k_of_v(rb);
      int k_brute = brute_k_v(d, v);
      if (k_lat != k_brute) {
        std::printf("FAIL\tgen=%d p=%d w=%d v=%d\tlattice k=%d brute k=%d\n",
                    g, p, w, v, k_lat, k_brute);
        ok = false;
        break;
      }
      MeritReport rep = enumerate_min_weight(rb);
      auto dual = dual_code_min_weight(d, k_brute + 1, v);
      if (!dual || static_cast<uint64_t>(*dual) != rep.min_weight) {
        std::printf("FAIL\tgen=%d p=%d w=%d v=%d\tN_v=%llu dual=%lld\n", g, p,
                    w, v, static_cast<unsigned long long>(rep.min_weight),
                    dual ? static_cast<long long>(*dual) : -1ll);
        ok = false;
        break;
      }
      if (p <= 12 && brute_k_v_counting(d, v) != k_brute) {
        std::printf("FAIL\tgen=%d p=%d w=%d v=%d\trank vs counting mismatch\n",
                    g, p, w, v);
        ok = false;
        break;
      }
    }
    if (ok)
      std::printf("PASS\tgen=%d p=%d w=%d\n", g, p, w);
    else
      ++failures;
  }
  std::printf("%d/%d generators consistent\n", count - failures, count);
  return failures == 0 ? 0 : 1;
}

int run_speed(const CommonOpts& c, uint64_t count) {
  GeneratorSpec spec = GeneratorSpec::by_name(c.generator);
  auto src = BlockSource::make(spec, Seed::integer(c.seed));
  uint32_t sink = 0;
  auto start = std::chrono::steady_clock::now();
  uint64_t produced = 0;
  while (produced < count) {
    src->next_block();
    for (int k = 0; k < BlockSource::kBlock; ++k) sink ^= src->output_at(k);
    produced += BlockSource::kBlock;
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("generator\t%s\nkernels\t%s\nwords\t%llu\nseconds\t%.3f\n"
              "words_per_second\t%.3e\nchecksum\t%08x\n",
              spec.name().c_str(), kern::active().name,
              static_cast<unsigned long long>(produced), secs,
              static_cast<double>(produced) / secs, sink);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"f2lin: equidistribution and linear-relation analysis of "
               "GF(2)-linear generators"};
  app.set_version_flag("--version", std::string(kVersion));
  std::string simd = "auto";
  app.add_option("--simd", simd, "kernel variant: auto | scalar")
      ->capture_default_str();

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "equidistribution table: minima, k(v), d(v), N_v");
  CommonOpts a_c;
  int a_vmax = 0, a_budget = 28;
  uint64_t a_samples = 200000;
  bool a_skip_nv = false;
  add_common(analyze, a_c);
  analyze->add_option("--v-max", a_vmax, "largest accuracy (default: w)");
  analyze->add_option("--nv-budget-log2", a_budget,
                      "full-walk budget for the N_v row");
  analyze->add_option("--sample-count", a_samples,
                      "samples when a walk exceeds the budget");
  analyze->add_flag("--skip-nv", a_skip_nv, "omit the N_v row");

  // merit
  auto* merit = app.add_subcommand(
      "merit", "minimum relation weight N_v at one accuracy");
  CommonOpts m_c;
  int m_v = 0, m_budget = 28;
  uint64_t m_samples = 200000;
  bool m_relations = false, m_progress = false;
  add_common(merit, m_c);
  merit->add_option("--v", m_v, "bit accuracy")->required();
  merit->add_option("--max-enum-log2", m_budget, "full-walk budget");
  merit->add_option("--sample-count", m_samples,
                    "samples when the walk exceeds the budget");
  merit->add_flag("--relations", m_relations,
                  "include every minimal relation, not only the argmin set");
  merit->add_flag("--progress", m_progress, "progress notes on stderr");

  // relations
  auto* relations = app.add_subcommand(
      "relations", "emit all minimal relations at one accuracy as JSON");
  CommonOpts r_c;
  int r_v = 0, r_budget = 28;
  add_common(relations, r_c, false);
  relations->add_option("--v", r_v, "bit accuracy")->required();
  relations->add_option("--max-enum-log2", r_budget, "full-walk budget");

  // verify
  auto* verify = app.add_subcommand(
      "verify", "check a relation file against generated output");
  CommonOpts v_c;
  std::string v_file, v_seeds = "1,2,3,4,5";
  std::size_t v_span = 10000;
  add_common(verify, v_c, false);
  verify->add_option("--relation-file", v_file, "relations JSON")->required();
  verify->add_option("--span", v_span, "shifts to test per seed");
  verify->add_option("--seeds", v_seeds, "comma-separated integer seeds");

  // birthday
  auto* birthday = app.add_subcommand(
      "birthday", "birthday spacings with lagged output points");
  CommonOpts b_c;
  BirthdayParams b_params;
  std::string b_lags;
  bool b_progress = false;
  b_c.seed = 0;
  add_common(birthday, b_c);
  birthday->add_option("--n", b_params.n, "points per replication")
      ->required();
  birthday->add_option("--reps", b_params.reps, "replications (N)");
  birthday->add_option("--t", b_params.t, "dimension (default: lag count)");
  birthday->add_option("--log2d", b_params.log2d, "bits per coordinate")
      ->required();
  birthday->add_option("--lags", b_lags, "comma-separated lag set")
      ->required();
  birthday->add_flag("--progress", b_progress, "progress notes on stderr");

  // oracle-selftest
  auto* oracle = app.add_subcommand(
      "oracle-selftest",
      "lattice/merit vs brute-force agreement on random small generators");
  int o_count = 100, o_pmax = 16, o_wmax = 8;
  uint64_t o_seed = 20120512;
  oracle->add_option("--count", o_count, "generators to draw");
  oracle->add_option("--p-max", o_pmax, "largest state size");
  oracle->add_option("--w-max", o_wmax, "largest word size");
  oracle->add_option("--seed", o_seed, "sampler seed");

  // speed
  auto* speed = app.add_subcommand("speed", "words-per-second probe");
  CommonOpts s_c;
  uint64_t s_count = 100000000ull;
  add_common(speed, s_c, false);
  speed->add_option("--count", s_count, "words to generate");

  app.require_subcommand(1);
  for (auto* sub : app.get_subcommands(
           [](const CLI::App*) { return true; }))
    sub->fallthrough();
  CLI11_PARSE(app, argc, argv);

  try {
    kern::select(simd.c_str());
    if (*analyze)
      return run_analyze(a_c, a_vmax, a_budget, a_samples, a_skip_nv);
    if (*merit)
      return run_merit(m_c, m_v, m_budget, m_samples, m_relations, m_progress);
    if (*relations) return run_relations(r_c, r_v, r_budget);
    if (*verify) return run_verify(v_c, v_file, v_span, v_seeds);
    if (*birthday) {
      b_params.lags = parse_lags(b_lags);
      b_params.base_seed = b_c.seed;
      return run_birthday(b_c, b_params, b_progress);
    }
    if (*oracle) return run_oracle_selftest(o_count, o_pmax, o_wmax, o_seed);
    if (*speed) return run_speed(s_c, s_count);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
