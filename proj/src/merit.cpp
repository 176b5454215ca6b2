#include "f2lin/merit.hpp"

#include <algorithm>
#include <bit>
#include <cinttypes>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "f2lin/kernels.hpp"
#include "f2lin/parallel.hpp"

namespace f2lin {

int LinearRelation::max_lag() const {
  int m = 0;
  for (const auto& [lag, bit] : terms) m = std::max(m, lag);
  return m;
}

std::string LinearRelation::render() const {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " + ";
    out += "y[i";
    if (terms[i].first) out += "+" + std::to_string(terms[i].first);
    out += "," + std::to_string(terms[i].second) + "]";
  }
  out += " = 0";
  return out;
}

LinearRelation vector_to_relation(std::span<const F2Poly> vec, int v) {
  LinearRelation rel;
  rel.v = v;
  for (int l = 0; l < static_cast<int>(vec.size()); ++l) {
    const F2Poly& e = vec[l];
    int d = e.degree();
    for (int j = 0; j <= (d == F2Poly::deg_neg_inf ? -1 : d); ++j)
      if (e.coeff(j)) rel.terms.emplace_back(j, l);
  }
  if (rel.terms.empty())
    throw std::invalid_argument("zero vector has no relation");
  std::sort(rel.terms.begin(), rel.terms.end());
  return rel;
}

namespace {

// The v' shortest rows flattened to one contiguous bit buffer per row:
// v entry slots of fixed word width, so a combination is a single
// xor_popcount pass.
struct FlatRows {
  int v = 0;
  int vprime = 0;
  int norm = 0;
  std::size_t entry_words = 0;
  std::size_t row_words = 0;
  std::vector<uint64_t> rows;  // vprime * row_words

  const uint64_t* row(int r) const { return rows.data() + r * row_words; }
};

FlatRows flatten(const ReducedBasis& rb) {
  FlatRows f;
  f.v = rb.v;
  f.vprime = rb.v_prime;
  f.norm = rb.minima.at(0);
  f.entry_words = static_cast<std::size_t>(std::max(f.norm, 0)) / 64 + 1;
  f.row_words = f.entry_words * f.v;
  f.rows.assign(static_cast<std::size_t>(f.vprime) * f.row_words, 0);
  for (int r = 0; r < f.vprime; ++r) {
    uint64_t* dst = f.rows.data() + r * f.row_words;
    for (int c = 0; c < f.v; ++c) {
      auto w = rb.rows[r][c].words();
      std::copy(w.begin(), w.end(), dst + c * f.entry_words);
    }
  }
  return f;
}

LinearRelation pattern_to_relation(const ReducedBasis& rb, uint64_t pattern) {
  std::vector<F2Poly> vec(rb.v);
  for (int r = 0; r < rb.v_prime; ++r)
    if (pattern >> r & 1u)
      for (int c = 0; c < rb.v; ++c) vec[c] ^= rb.rows[r][c];
  return vector_to_relation(vec, rb.v);
}

// Norm closure: a combination of shortest rows must itself attain the first
// minimum, or the basis was not reduced.
inline void check_norm(const FlatRows& f, const uint64_t* running,
                       uint64_t pattern) {
  std::size_t word = static_cast<std::size_t>(f.norm) / 64;
  uint64_t bit = 1ull << (f.norm % 64);
  uint64_t above = ~(bit | (bit - 1));
  bool top_set = false;
  for (int c = 0; c < f.v; ++c) {
    uint64_t w = running[c * f.entry_words + word];
    if (w & above)
      throw std::logic_error("enumerated vector exceeds the first minimum");
    top_set |= (w & bit) != 0;
  }
  if (!top_set)
    throw std::logic_error(
        "enumerated vector has norm below the first minimum (pattern " +
        std::to_string(pattern) + ")");
}

struct WalkResult {
  uint64_t min_weight = ~0ull;
  std::vector<uint64_t> argmin;
  std::vector<uint64_t> collected;  // all visited patterns when collecting
  uint64_t visited = 0;
};

// Walks all patterns with the given fixed high part: prefix + Gray code on
// `low_bits` rows. One fused xor+popcount per step.
WalkResult gray_walk(const FlatRows& f, uint64_t prefix, int low_bits,
                     bool collect, bool progress) {
  const auto& K = kern::active();
  WalkResult res;
  std::vector<uint64_t> running(f.row_words, 0);
  uint64_t pattern = prefix;
  uint64_t weight = 0;
  for (int r = 0; r < f.vprime; ++r)
    if (prefix >> r & 1u)
      weight = K.xor_popcount(running.data(), f.row(r), f.row_words);

  auto record = [&](uint64_t w) {
    ++res.visited;
    check_norm(f, running.data(), pattern);
    if (collect) res.collected.push_back(pattern);
    if (w < res.min_weight) {
      res.min_weight = w;
      res.argmin.assign(1, pattern);
    } else if (w == res.min_weight) {
      res.argmin.push_back(pattern);
    }
  };

  if (pattern) record(weight);
  const uint64_t steps = low_bits >= 64 ? 0 : (1ull << low_bits) - 1;
  for (uint64_t s = 1; s <= steps; ++s) {
    int flip = std::countr_zero(s);
    pattern ^= 1ull << flip;
    weight = K.xor_popcount(running.data(), f.row(flip), f.row_words);
    record(weight);
    if (progress && (s & ((1ull << 26) - 1)) == 0)
      std::fprintf(stderr, "    gray walk %" PRIu64 "/%" PRIu64 "\n", s,
                   steps);
  }
  return res;
}

void merge(WalkResult& into, WalkResult&& part) {
  into.visited += part.visited;
  if (part.min_weight < into.min_weight) {
    into.min_weight = part.min_weight;
    into.argmin = std::move(part.argmin);
  } else if (part.min_weight == into.min_weight) {
    into.argmin.insert(into.argmin.end(), part.argmin.begin(),
                       part.argmin.end());
  }
  into.collected.insert(into.collected.end(), part.collected.begin(),
                        part.collected.end());
}

}  // namespace

MeritReport enumerate_min_weight(const ReducedBasis& rb,
                                 const EnumerateOptions& opts) {
  MeritReport rep;
  rep.v = rb.v;
  rep.k_v = rb.minima.at(0);
  rep.v_prime = rb.v_prime;
  rep.shortest_count =
      rb.v_prime >= 64 ? ~0ull : (1ull << rb.v_prime) - 1;

  FlatRows f = flatten(rb);
  WalkResult total;

  if (rep.shortest_count <= opts.max_enum) {
    rep.sampled = false;
    bool collect = opts.collect_all && rep.shortest_count <= opts.collect_cap;
    // Partition on the top bits so workers walk disjoint pattern ranges.
    int g = 0;
    while ((1 << g) < opts.threads && g < rb.v_prime - 1) ++g;
    int low = rb.v_prime - g;
    std::vector<WalkResult> parts(1ull << g);
    parallel_for(parts.size(), opts.threads, [&](std::size_t j) {
      parts[j] = gray_walk(f, static_cast<uint64_t>(j) << low, low, collect,
                           opts.progress && j == 0);
    });
    for (auto& part : parts) merge(total, std::move(part));
  } else {
    rep.sampled = true;
    // Deterministic uniform sample of nonzero coefficient patterns; the
    // result is only an upper bound on N_v.
    std::mt19937_64 rng(0x663ab6f2ull ^ (static_cast<uint64_t>(rb.v) << 32) ^
                        rb.v_prime);
    uint64_t mask = rb.v_prime >= 64 ? ~0ull : (1ull << rb.v_prime) - 1;
    std::vector<uint64_t> samples(opts.sample_count);
    for (auto& s : samples) {
      do {
        s = rng() & mask;
      } while (s == 0);
    }
    const int nthreads = std::max(1, opts.threads);
    std::vector<WalkResult> parts(nthreads);
    std::size_t chunk = (samples.size() + nthreads - 1) / nthreads;
    parallel_for(parts.size(), opts.threads, [&](std::size_t t) {
      const auto& K = kern::active();
      std::vector<uint64_t> running(f.row_words);
      WalkResult& res = parts[t];
      std::size_t lo = t * chunk, hi = std::min(samples.size(), lo + chunk);
      for (std::size_t i = lo; i < hi; ++i) {
        uint64_t pattern = samples[i];
        std::fill(running.begin(), running.end(), 0);
        uint64_t weight = 0;
        for (int r = 0; r < f.vprime; ++r)
          if (pattern >> r & 1u)
            weight = K.xor_popcount(running.data(), f.row(r), f.row_words);
        ++res.visited;
        check_norm(f, running.data(), pattern);
        if (weight < res.min_weight) {
          res.min_weight = weight;
          res.argmin.assign(1, pattern);
        } else if (weight == res.min_weight) {
          res.argmin.push_back(pattern);
        }
      }
    });
    for (auto& part : parts) merge(total, std::move(part));
  }

  rep.visited = total.visited;
  rep.min_weight = total.min_weight;
  std::sort(total.argmin.begin(), total.argmin.end());
  total.argmin.erase(std::unique(total.argmin.begin(), total.argmin.end()),
                     total.argmin.end());
  rep.argmin_patterns = total.argmin;
  for (uint64_t pat : rep.argmin_patterns)
    rep.argmin_relations.push_back(pattern_to_relation(rb, pat));
  std::sort(rep.argmin_relations.begin(), rep.argmin_relations.end());
  rep.argmin_relations.erase(
      std::unique(rep.argmin_relations.begin(), rep.argmin_relations.end()),
      rep.argmin_relations.end());

  if (!total.collected.empty()) {
    std::sort(total.collected.begin(), total.collected.end());
    for (uint64_t pat : total.collected)
      rep.all_minimal.push_back(pattern_to_relation(rb, pat));
    std::sort(rep.all_minimal.begin(), rep.all_minimal.end());
  }
  return rep;
}

std::vector<LinearRelation> minimal_relations(const ReducedBasis& rb,
                                              const EnumerateOptions& opts) {
  EnumerateOptions o = opts;
  o.collect_all = true;
  MeritReport rep = enumerate_min_weight(rb, o);
  if (rep.sampled)
    throw std::runtime_error(
        "minimal relations require an exact enumeration (2^v' exceeds the "
        "budget)");
  if (rep.all_minimal.empty())
    throw std::runtime_error(
        "shortest-vector count exceeds the collection cap");
  return rep.all_minimal;
}

bool verify_relation(const GeneratorState& gen, const LinearRelation& rel,
                     std::size_t span) {
  if (rel.terms.empty()) throw std::invalid_argument("empty relation");
  if (span == 0) return true;
  int maxlag = rel.max_lag();
  auto words = word_stream(gen, span + static_cast<std::size_t>(maxlag));
  const int w = gen.spec().w;
  for (std::size_t i = 0; i < span; ++i) {
    unsigned acc = 0;
    for (const auto& [lag, bit] : rel.terms)
      acc ^= words[i + lag] >> (w - 1 - bit) & 1u;
    if (acc) return false;
  }
  return true;
}

}  // namespace f2lin
