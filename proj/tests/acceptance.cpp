// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
// --verbose also lists the underlying checks.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "crownlab/checks.hpp"
#include "crownlab/errors.hpp"
#include "crownlab/iwasawa.hpp"

using namespace crownlab;
using checks::CheckResult;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Criterion {
  int id;
  const char* title;
  std::function<std::vector<CheckResult>()> run;
  // Extra gate on the collected results (runtime limits).
  std::function<bool(const std::vector<CheckResult>&, std::string&)> extra = nullptr;
};

std::vector<CheckResult> one(CheckResult r) { return {std::move(r)}; }

std::vector<CheckResult> cat(std::vector<CheckResult> a, const std::vector<CheckResult>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<CheckResult> pick(const std::vector<CheckResult>& v, const std::vector<std::string>& names) {
  std::vector<CheckResult> out;
  for (const auto& r : v)
    for (const auto& n : names)
      if (r.name == n) out.push_back(r);
  return out;
}

// Containment in the hull of +t lambda(x), reported alongside the gated
// check for comparison.
double opposite_hull_violation() {
  std::mt19937_64 rng(kSeed + 14);
  std::uniform_real_distribution<double> tt(0.0, 0.999);
  double worst = -1.0;
  for (int n : {2, 3})
    for (int s = 0; s < 60; ++s) {
      const PElement x = random_boundary_direction(n, rng);
      const ComplexMatrix k = haar_so(n, rng);
      const double t = tt(rng);
      try {
        const auto f = decompose_path(x, k, t);
        std::vector<double> y, v;
        for (int i = 0; i < n; ++i) {
          y.push_back(f.H.entries[i].imag());
          v.push_back(t * x.eigenvalues()[i]);
        }
        worst = std::max(worst, permutohedron_violation(y, v));
      } catch (const DomainError&) {
      }
    }
  return worst;
}

bool runtime_below(const std::vector<CheckResult>& v, double limit, std::string& note) {
  double secs = 0.0;
  for (const auto& r : v) secs = std::max(secs, r.seconds);
  char buf[96];
  std::snprintf(buf, sizeof buf, "runtime %.2f s (limit %.0f s)", secs, limit);
  note = buf;
  return secs < limit;
}

}  // namespace

int main(int argc, char** argv) {
  bool verbose = false;
  for (int i = 1; i < argc; ++i)
    if (!std::strcmp(argv[i], "--verbose") || !std::strcmp(argv[i], "-v")) verbose = true;

  const std::vector<Criterion> criteria{
      {1, "real Iwasawa reconstruction, n = 2..6, 500 each",
       [] { return one(checks::real_reconstruction(kSeed + 9)); },
       [](const auto& v, std::string& note) { return runtime_below(v, 10.0, note); }},
      {2, "SL(2) path vs closed form, 200 samples", [] { return one(checks::sl2_dual_oracle(kSeed + 10)); }},
      {3, "minor/weight identity, n = 2,3,4", [] { return one(checks::minor_weight_identity(kSeed + 15)); }},
      {4, "cosine formula and |alpha^lambda| <= 1",
       [] {
         return pick(checks::cosine_formula(kSeed + 16),
                     {"weights.cos_formula_identity", "weights.alpha_lambda_bound"});
       }},
      {5, "Taylor coefficient bound and partial sums",
       [] { return cat(one(checks::taylor_bound(kSeed + 17)), one(checks::taylor_partial_sums(kSeed + 18))); }},
      {6, "Im H in the Weyl hull along crown paths, n = 2,3",
       [] { return one(checks::h_range_containment(kSeed + 14)); },
       [](const auto&, std::string& note) {
         char buf[128];
         std::snprintf(buf, sizeof buf, "hull of -t lambda(x); hull of +t lambda(x) would give %.3g",
                       opposite_hull_violation());
         note = buf;
         return true;
       }},
      {7, "SL(2) alpha blow-up exponent and prefactor",
       [] {
         return pick(checks::sl2_alpha_blowup(kSeed), {"growth.sl2_alpha_exponent", "growth.sl2_alpha_prefactor"});
       }},
      {8, "finite blow-up exponents, n = 2,3, 5 directions",
       [] {
         return pick(checks::growth_property(kSeed + 1),
                     {"growth.fit_r2_n2", "growth.majorization_n2", "growth.fit_r2_n3", "growth.majorization_n3"});
       },
       [](const auto& v, std::string& note) { return runtime_below(v, 120.0, note); }},
      {9, "scale relation certificates, 1000-element corpus",
       [] {
         return pick(checks::scale_relations(kSeed + 2),
                     {"growth.scale_eta_n2", "growth.scale_kappa_n2", "growth.scale_coreta_n2",
                      "growth.scale_eta_n3", "growth.scale_kappa_n3", "growth.scale_coreta_n3"});
       },
       [](const auto& v, std::string& note) {
         for (const auto& r : v) {
           const auto colon = r.detail.find(": ");
           note += (note.empty() ? "" : ", ") + r.name.substr(r.name.rfind('_') + 1) + " " +
                   r.name.substr(13, r.name.rfind('_') - 13) + " " + r.detail.substr(colon + 2);
         }
         return true;
       }},
      {10, "principal series growth, t = 0 norm, group law",
       [] {
         auto v = one(checks::series_t0_norm());
         v = cat(v, checks::series_growth());
         return cat(v, pick(checks::series_real_time(), {"prinseries.group_law"}));
       }},
      {11, "Cauchy boundary pairings and derivative bump",
       [] { return cat(checks::series_cauchy(), one(checks::series_derivative_bump())); }},
      {12, "s_max axioms on 1000 triples", [] { return checks::smax_axioms(kSeed + 8); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> results;
    std::string error;
    try {
      results = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    bool ok = error.empty() && !results.empty();
    std::string summary, diagnostics;
    for (const auto& r : results) {
      char buf[160];
      std::string& into = r.diagnostic ? diagnostics : summary;
      std::snprintf(buf, sizeof buf, "%s%s %.3g/%.3g", into.empty() ? "" : ", ",
                    r.name.substr(r.name.find('.') + 1).c_str(), r.measured, r.threshold);
      into += buf;
      if (!r.diagnostic) ok = ok && r.passed;
    }
    std::string note;
    if (ok && c.extra) ok = c.extra(results, note);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  [%2d] %s: %s%s%s (%.1f s)\n", ok ? "PASS" : "FAIL", c.id, c.title,
                error.empty() ? summary.c_str() : ("error: " + error).c_str(), note.empty() ? "" : "; ",
                note.c_str(), secs);
    if (!diagnostics.empty()) std::printf("          not gated: %s\n", diagnostics.c_str());
    if (verbose)
      for (const auto& r : results)
        std::printf("          %-5s %-40s %.6g / %.6g  n=%ld  %s\n",
                    r.diagnostic ? "diag" : (r.passed ? "ok" : "FAIL"), r.name.c_str(), r.measured, r.threshold,
                    r.samples, r.detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
