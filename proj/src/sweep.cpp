#include "numrad/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <thread>

#include "numrad/io.hpp"

namespace numrad {

namespace {

bool needs_intertwined(const std::string& id) {
  return id == "I-GEN-FG" || id == "I-PROD" || id == "I-ALOMARI";
}


}  // namespace

std::vector<Family> applicable_families(const CatalogEntry& e) {
  if (e.id == "I-KSUM") return {Family::psd_pair};
  if (needs_intertwined(e.id)) return {Family::intertwined_pair};
  std::vector<Family> out;
  for (Family f : all_families())
    if (family_supports_arity(f, e.arity)) out.push_back(f);
  return out;
}

std::vector<std::string> default_entries(Family f) {
  std::vector<std::string> out;
  for (const CatalogEntry& e : catalog_list()) {
    const auto fams = applicable_families(e);
    if (std::find(fams.begin(), fams.end(), f) != fams.end()) out.push_back(e.id);
  }
  return out;
}

std::string report_key(const BoundReport& r) {
  return r.sign == Sign::none ? r.id : r.id + to_string(r.sign);
}

std::uint64_t SweepResult::violations() const {
  std::uint64_t v = 0;
  for (const SweepSummary& s : summaries) v += s.violations;
  return v;
}

SweepResult run_sweep(const SweepConfig& config) {
  std::vector<const CatalogEntry*> entries;
  const std::vector<std::string> ids =
      config.entries.empty() ? default_entries(config.spec.family) : config.entries;
  for (const std::string& id : ids) {
    const CatalogEntry* e = find_entry(id);
    if (!e) throw UnknownInequality(id);
    if (!family_supports_arity(config.spec.family, e->arity))
      throw InvalidEnsemble(std::string(to_string(config.spec.family)) + " cannot feed " + id +
                            " (arity " + std::to_string(e->arity) + ")");
    entries.push_back(e);
  }

  std::vector<std::size_t> arities;
  for (const CatalogEntry* e : entries)
    if (std::find(arities.begin(), arities.end(), e->arity) == arities.end())
      arities.push_back(e->arity);

  const std::uint64_t trials = config.trials;
  std::vector<std::vector<BoundReport>> per_trial(trials);

  auto run_trial = [&](std::uint64_t t) {
    std::map<std::size_t, std::vector<CMatrix>> inputs;
    for (std::size_t k : arities) inputs.emplace(k, draw(config.spec, t, k));
    std::vector<BoundReport> out;
    for (const CatalogEntry* e : entries) {
      for (BoundReport& r :
           evaluate_variants(e->id, inputs.at(e->arity), config.settings, config.params))
        out.push_back(std::move(r));
    }
    per_trial[t] = std::move(out);
  };

  const unsigned threads =
      std::max(1U, std::min<unsigned>(config.threads, static_cast<unsigned>(
                                                          std::max<std::uint64_t>(1, trials))));
  if (threads == 1) {
    for (std::uint64_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::uint64_t t = next.fetch_add(1);
          if (t >= trials) return;
          try {
            run_trial(t);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next.store(trials);
            return;
          }
        }
      });
    }
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  SweepResult res;
  res.spec = config.spec;
  res.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t)
    for (BoundReport& r : per_trial[t]) res.records.push_back({t, std::move(r)});
  std::vector<std::string> order;
  for (const CatalogEntry* e : entries) order.push_back(e->id);
  res.summaries = summarize(res.records, order);
  return res;
}

std::vector<SweepSummary> summarize(const std::vector<TrialRecord>& records,
                                    const std::vector<std::string>& entry_order) {
  // Keys in first-seen order, which follows entry_order and sign order.
  std::vector<std::string> keys;
  std::map<std::string, SweepSummary> by_key;
  std::map<std::string, std::size_t> arity_of;
  std::map<std::uint64_t, std::map<std::string, double>> rhs_by_trial;
  std::map<std::string, double> slack_sum;

  for (const std::string& id : entry_order) {
    const CatalogEntry* e = find_entry(id);
    if (e) arity_of[id] = e->arity;
  }

  for (const TrialRecord& rec : records) {
    const BoundReport& r = rec.report;
    const std::string key = report_key(r);
    auto [it, inserted] = by_key.try_emplace(key);
    SweepSummary& s = it->second;
    if (inserted) {
      keys.push_back(key);
      s.key = key;
      s.id = r.id;
      s.sign = r.sign;
      s.min_slack = std::numeric_limits<double>::infinity();
      s.max_slack = -std::numeric_limits<double>::infinity();
    }
    ++s.trials;
    if (!r.applicable) continue;
    ++s.applicable;
    if (!r.holds) ++s.violations;
    const double slack = *r.slack;
    s.min_slack = std::min(s.min_slack, slack);
    s.max_slack = std::max(s.max_slack, slack);
    slack_sum[key] += slack;
    rhs_by_trial[rec.trial][key] = *r.rhs;
  }

  for (auto& [key, s] : by_key) {
    if (s.applicable == 0) {
      s.min_slack = s.max_slack = s.mean_slack = 0.0;
    } else {
      s.mean_slack = slack_sum[key] / static_cast<double>(s.applicable);
    }
  }

  // Pairwise rhs comparisons between entries fed the same inputs.
  for (const std::string& a : keys) {
    SweepSummary& sa = by_key[a];
    for (const std::string& b : keys) {
      if (a == b) continue;
      const SweepSummary& sb = by_key[b];
      if (arity_of[sa.id] != arity_of[sb.id]) continue;
      std::uint64_t both = 0;
      std::uint64_t tighter = 0;
      for (const auto& [t, rhs] : rhs_by_trial) {
        const auto ia = rhs.find(a);
        const auto ib = rhs.find(b);
        if (ia == rhs.end() || ib == rhs.end()) continue;
        ++both;
        if (ia->second < ib->second) ++tighter;
      }
      if (both > 0) sa.tighter_than[b] = static_cast<double>(tighter) / static_cast<double>(both);
    }
  }

  std::vector<SweepSummary> out;
  for (const std::string& k : keys) out.push_back(std::move(by_key[k]));
  return out;
}

std::string sweep_to_json(const SweepResult& r) {
  using nlohmann::json;
  json summaries = json::array();
  for (const SweepSummary& s : r.summaries) {
    json tt = json::object();
    for (const auto& [k, v] : s.tighter_than) tt[k] = v;
    summaries.push_back({{"key", s.key},
                         {"id", s.id},
                         {"sign", to_string(s.sign)},
                         {"trials", s.trials},
                         {"applicable", s.applicable},
                         {"violations", s.violations},
                         {"min_slack", s.min_slack},
                         {"mean_slack", s.mean_slack},
                         {"max_slack", s.max_slack},
                         {"tighter_than", std::move(tt)}});
  }
  json reports = json::array();
  for (const TrialRecord& rec : r.records) {
    json j = report_to_json(rec.report);
    j["trial"] = rec.trial;
    reports.push_back(std::move(j));
  }
  json doc{{"spec", spec_to_json(r.spec)},
           {"seed", r.spec.seed},
           {"trials", r.trials},
           {"summaries", std::move(summaries)},
           {"reports", std::move(reports)}};
  return doc.dump(2) + "\n";
}

std::string sweep_to_csv(const SweepResult& r) {
  std::string out = csv_header() + "\n";
  for (const TrialRecord& rec : r.records) {
    out += csv_row(rec.report, rec.trial);
    out += '\n';
  }
  return out;
}

}  // namespace numrad
