#include <cmath>
#include <string>

#include <json.hpp>

#include "plenoptic/detect.hpp"
#include "plenoptic/entropy.hpp"
#include "plenoptic/experiments.hpp"
#include "plenoptic/oracle.hpp"

namespace plenoptic {

namespace {

using nlohmann::json;

struct Reporter {
  json checks = json::array();
  VerifyReport report;

  void add(const std::string& check, json params, double lower, double value, double upper, double tol) {
    const bool pass = value >= lower - tol && value <= upper + tol;
    checks.push_back({{"check", check}, {"params", std::move(params)}, {"lower", lower}, {"value", value},
                      {"upper", upper}, {"pass", pass}});
    ++report.checks;
    if (!pass) ++report.failures;
  }

  void skip(const std::string& check, json params, const std::string& reason) {
    checks.push_back({{"check", check}, {"params", std::move(params)}, {"lower", nullptr}, {"value", nullptr},
                      {"upper", nullptr}, {"pass", nullptr}, {"status", "skipped"}, {"reason", reason}});
    ++report.skipped;
  }
};

struct TinyReality {
  RealitySpec spec;
  json params;
};

std::vector<TinyReality> tiny_realities(const ExperimentConfig& cfg) {
  std::vector<TinyReality> out;
  for (double px : cfg.static_p_x) out.push_back({StaticWallSpec::bernoulli(px), {{"reality", "static"}, {"p_x", px}}});
  for (double pi : cfg.p_i)
    out.push_back({BscFieldSpec(0.5, pi), {{"reality", "bsc"}, {"p_x", 0.5}, {"p_i", pi}}});
  return out;
}

}  // namespace

VerifyReport run_verify(const ExperimentConfig& cfg) {
  Reporter rep;
  const double tol = cfg.verify_tolerance;
  for (double p : cfg.p_w) {
    const WalkParams walk(p);
    for (int L : cfg.block_lengths) {
      for (const auto& r : tiny_realities(cfg)) {
        json params = r.params;
        params["p_w"] = p;
        params["L"] = L;
        ExactEntropies ent;
        double pe = 0.0;
        try {
          pe = exact_pe(walk, r.spec, L);
          ent = exact_conditional_entropy(walk, r.spec, L, cfg.t);
        } catch (const BudgetExceeded& e) {
          rep.skip("sandwich", params, e.what());
          continue;
        }
        const double slack = fano_term(pe);
        for (int k = 1; k <= cfg.t; ++k) {
          BoundReport b;
          if (const auto* wall = std::get_if<StaticWallSpec>(&r.spec))
            b = static_bounds_at(walk, discrete_entropy(wall->pmf), slack, k);
          else
            b = dynamic_bounds_bsc_at(walk, std::get<BscFieldSpec>(r.spec), L, k, slack);
          json pk = params;
          pk["t"] = k;
          pk["p_e"] = pe;
          rep.add("sandwich", pk, b.lower + cfg.perturb, ent.conditional[static_cast<std::size_t>(k - 1)], b.upper, tol);
          if (k > 1) {
            const double prev = ent.conditional[static_cast<std::size_t>(k - 2)];
            rep.add("conditional_nonincreasing", pk, -INFINITY, ent.conditional[static_cast<std::size_t>(k - 1)], prev,
                    tol);
          }
        }
        double sum = 0.0;
        for (double c : ent.conditional) sum += c;
        json pc = params;
        pc["t"] = cfg.t;
        rep.add("chain_rule", pc, ent.block - 1e-10, sum, ent.block + 1e-10, 0.0);
      }
    }
  }

  // One deliberately oversized instance shows the budget refusal.
  if (cfg.stress_t > 0) {
    const json params = {{"reality", "bsc"}, {"p_x", 0.5}, {"p_i", 0.1}, {"p_w", 0.5}, {"L", 3}, {"t", cfg.stress_t}};
    try {
      const auto ent = exact_conditional_entropy(WalkParams(0.5), BscFieldSpec(0.5, 0.1), 3, cfg.stress_t);
      rep.add("budget", params, 0.0, ent.block, INFINITY, 0.0);
    } catch (const BudgetExceeded& e) {
      rep.skip("sandwich", params, e.what());
    }
  }

  for (double p : cfg.p_w) {
    const WalkParams walk(p);
    for (double rho : {0.0, 0.5, 0.9}) {
      const auto id = catalan_sum_identity_check(walk, rho);
      rep.add("catalan_identity", {{"p_w", p}, {"rho", rho}}, 0.0, id.residual, 1e-8, 0.0);
      if (rho > 0.0) {
        const auto exact = ar1_return_term(walk, rho);
        rep.add("jensen_dominance", {{"p_w", p}, {"rho", rho}}, -INFINITY, exact.value, jensen_upper_ar1(walk, rho),
                exact.tail_bound + 1e-12);
      }
    }
  }

  rep.report.json = rep.checks.dump(2);
  return rep.report;
}

}  // namespace plenoptic
