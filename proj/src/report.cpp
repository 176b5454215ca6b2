#include "f2lin/report.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "f2lin/version.hpp"

namespace f2lin {

using nlohmann::json;
using nlohmann::ordered_json;

ReportFormat parse_format(const std::string& name) {
  if (name == "tsv") return ReportFormat::tsv;
  if (name == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown format '" + name + "'");
}

namespace {

std::string header(const ConfigEcho& config) {
  std::string out = "# f2lin " + std::string(kVersion) + "\n";
  for (const auto& [k, v] : config) out += "# " + k + " = " + v + "\n";
  return out;
}

ordered_json config_json(const ConfigEcho& config) {
  ordered_json j;
  j["version"] = kVersion;
  for (const auto& [k, v] : config) j[k] = v;
  return j;
}

ordered_json relation_json(const LinearRelation& rel) {
  ordered_json j;
  j["weight"] = rel.weight();
  ordered_json terms = ordered_json::array();
  for (const auto& [lag, bit] : rel.terms)
    terms.push_back(ordered_json{{"lag", lag}, {"bit", bit}});
  j["terms"] = std::move(terms);
  j["rendered"] = rel.render();
  return j;
}

ordered_json merit_json(const MeritReport& r) {
  ordered_json j;
  j["v"] = r.v;
  j["k_v"] = r.k_v;
  j["v_prime"] = r.v_prime;
  j["shortest_vectors"] = r.shortest_count;
  j["exact"] = !r.sampled;
  j["visited"] = r.visited;
  j[r.sampled ? "min_weight_upper_bound" : "N_v"] = r.min_weight;
  ordered_json arg = ordered_json::array();
  for (const auto& rel : r.argmin_relations) arg.push_back(relation_json(rel));
  j["argmin_relations"] = std::move(arg);
  if (!r.all_minimal.empty()) {
    ordered_json all = ordered_json::array();
    for (const auto& rel : r.all_minimal) all.push_back(relation_json(rel));
    j["all_minimal_relations"] = std::move(all);
  }
  return j;
}

std::string nv_cell(const std::optional<MeritReport>& m) {
  if (!m) return "-";
  if (m->sampled) return "<=" + std::to_string(m->min_weight);
  return std::to_string(m->min_weight);
}

}  // namespace

std::string render_analyze(const AnalyzeResult& r, ReportFormat fmt,
                           const ConfigEcho& config) {
  if (fmt == ReportFormat::json) {
    ordered_json j;
    j["config"] = config_json(config);
    j["generator"] = r.generator;
    j["p"] = r.p;
    ordered_json rows = ordered_json::array();
    for (int v = 1; v <= r.v_max; ++v) {
      ordered_json row;
      row["v"] = v;
      row["minima"] = r.minima[v - 1];
      row["k"] = r.k[v - 1];
      row["d"] = r.d[v - 1];
      if (r.merit[v - 1]) {
        const auto& m = *r.merit[v - 1];
        row["v_prime"] = m.v_prime;
        row[m.sampled ? "N_v_upper_bound" : "N_v"] = m.min_weight;
      }
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    if (r.delta_complete) j["delta"] = r.delta;
    j["delta_partial_sum"] = r.delta;
    return j.dump(2) + "\n";
  }

  // Table layout: one column per v, successive minima down the rows, then
  // the k/d/N summary rows.
  std::string out = header(config);
  out += "generator\t" + r.generator + "\n";
  out += "p\t" + std::to_string(r.p) + "\n";
  out += "field";
  for (int v = 1; v <= r.v_max; ++v) out += "\tL*_" + std::to_string(v);
  out += "\n";
  for (int row = 0; row < r.v_max; ++row) {
    out += "nu_" + std::to_string(row + 1);
    for (int v = 1; v <= r.v_max; ++v) {
      out += "\t";
      out += row < v ? std::to_string(r.minima[v - 1][row]) : "";
    }
    out += "\n";
  }
  out += "k";
  for (int v = 1; v <= r.v_max; ++v) out += "\t" + std::to_string(r.k[v - 1]);
  out += "\nd";
  for (int v = 1; v <= r.v_max; ++v) out += "\t" + std::to_string(r.d[v - 1]);
  out += "\nN_v";
  for (int v = 1; v <= r.v_max; ++v) out += "\t" + nv_cell(r.merit[v - 1]);
  out += "\n";
  if (r.delta_complete)
    out += "delta\t" + std::to_string(r.delta) + "\n";
  else
    out += "delta_partial\t" + std::to_string(r.delta) + "\n";
  return out;
}

std::string render_merit(const MeritReport& r, ReportFormat fmt,
                         const ConfigEcho& config) {
  if (fmt == ReportFormat::json) {
    ordered_json j;
    j["config"] = config_json(config);
    j["merit"] = merit_json(r);
    return j.dump(2) + "\n";
  }
  std::string out = header(config);
  out += "v\t" + std::to_string(r.v) + "\n";
  out += "k_v\t" + std::to_string(r.k_v) + "\n";
  out += "v_prime\t" + std::to_string(r.v_prime) + "\n";
  out += "shortest_vectors\t" + std::to_string(r.shortest_count) + "\n";
  out += "exact\t" + std::string(r.sampled ? "no" : "yes") + "\n";
  out += "visited\t" + std::to_string(r.visited) + "\n";
  out += std::string(r.sampled ? "min_weight_upper_bound" : "N_v") + "\t" +
         std::to_string(r.min_weight) + "\n";
  for (const auto& rel : r.argmin_relations)
    out += "argmin\tweight=" + std::to_string(rel.weight()) + "\t" +
           rel.render() + "\n";
  for (const auto& rel : r.all_minimal)
    out += "minimal\tweight=" + std::to_string(rel.weight()) + "\t" +
           rel.render() + "\n";
  return out;
}

std::string render_relations(const std::string& generator, int v,
                             uint64_t min_weight,
                             const std::vector<LinearRelation>& relations,
                             const ConfigEcho& config) {
  ordered_json j;
  j["config"] = config_json(config);
  j["generator"] = generator;
  j["v"] = v;
  j["min_weight"] = min_weight;
  ordered_json rels = ordered_json::array();
  for (const auto& rel : relations) rels.push_back(relation_json(rel));
  j["relations"] = std::move(rels);
  return j.dump(2) + "\n";
}

std::string render_birthday(const BirthdayReport& r, ReportFormat fmt,
                            const ConfigEcho& config, bool include_seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", r.p_value);
  if (fmt == ReportFormat::json) {
    ordered_json j;
    j["config"] = config_json(config);
    j["generator"] = r.generator;
    j["n"] = r.params.n;
    j["replications"] = r.params.reps;
    j["t"] = r.params.t;
    j["log2d"] = r.params.log2d;
    j["lags"] = r.params.lags;
    j["base_seed"] = r.params.base_seed;
    j["collisions"] = r.collisions;
    j["total"] = r.total;
    j["lambda"] = r.lambda;
    j["mean"] = r.mean;
    j["p_value"] = r.p_value;
    if (include_seconds) j["seconds"] = r.seconds;
    return j.dump(2) + "\n";
  }
  std::string out = header(config);
  out += "generator\t" + r.generator + "\n";
  out += "n\t" + std::to_string(r.params.n) + "\n";
  out += "replications\t" + std::to_string(r.params.reps) + "\n";
  out += "t\t" + std::to_string(r.params.t) + "\n";
  out += "log2d\t" + std::to_string(r.params.log2d) + "\n";
  std::string lagstr;
  for (std::size_t i = 0; i < r.params.lags.size(); ++i)
    lagstr += (i ? "," : "") + std::to_string(r.params.lags[i]);
  out += "lags\t" + lagstr + "\n";
  out += "base_seed\t" + std::to_string(r.params.base_seed) + "\n";
  for (std::size_t i = 0; i < r.collisions.size(); ++i)
    out += "Y_" + std::to_string(i + 1) + "\t" +
           std::to_string(r.collisions[i]) + "\n";
  out += "Y_total\t" + std::to_string(r.total) + "\n";
  char lbuf[64];
  std::snprintf(lbuf, sizeof lbuf, "%.6f", r.lambda);
  out += "lambda\t" + std::string(lbuf) + "\n";
  std::snprintf(lbuf, sizeof lbuf, "%.6f", r.mean);
  out += "mean\t" + std::string(lbuf) + "\n";
  out += "p_value\t" + std::string(buf) + "\n";
  if (include_seconds) {
    std::snprintf(lbuf, sizeof lbuf, "%.3f", r.seconds);
    out += "seconds\t" + std::string(lbuf) + "\n";
  }
  return out;
}

}  // namespace f2lin
