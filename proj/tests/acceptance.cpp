// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "helpers.hpp"

using namespace zerosum;

namespace {

FiniteAbelianGroup G(const std::string& name) { return FiniteAbelianGroup::parse(name); }

struct Criterion {
  int id;
  std::string title;
  std::function<std::string(bool&)> check;  // returns a detail line, clears ok on failure
};

SweepOptions threads(unsigned n) {
  SweepOptions o;
  o.search.threads = n;
  return o;
}

std::string summary(const VerificationReport& r) {
  return r.statement + "(" + r.group.to_string() + " " + r.params.value("i", nlohmann::json()).dump() + ")=" +
         r.outcome() + "/" + std::to_string(r.instances_checked);
}

// Every sweep of criteria 3-9 and 13, keyed by criterion, for one thread count.
std::map<int, std::vector<VerificationReport>> all_sweeps(unsigned workers) {
  const auto o = threads(workers);
  std::map<int, std::vector<VerificationReport>> out;
  const std::vector<std::pair<std::string, std::vector<std::int64_t>>> residue_grid{
      {"C3", {1, 2}}, {"C5", {1, 2, 3, 4}}, {"C2xC2", {1, 2}}, {"C3xC3", {1, 2}}, {"C2xC4", {1, 2}}};
  for (const auto& [name, is] : residue_grid) {
    for (auto i : is) out[3].push_back(sweep_theorem5(G(name), i, {}, o));
  }
  for (const auto& [name, is] : residue_grid) {
    const auto p = *G(name).prime();
    for (auto i : is) {
      if (i <= p - 1) out[4].push_back(sweep_theorem3(G(name), i, o));
    }
  }
  out[5].push_back(sweep_corollary7(G("C3"), 2, o));
  out[5].push_back(sweep_corollary7(G("C3xC3"), 2, o));
  for (std::int64_t i : {2, 3, 4}) out[5].push_back(sweep_corollary7(G("C5"), i, o));
  for (std::int64_t n = 2; n <= 5; ++n) out[6].push_back(property_b(n, o));
  for (const char* name : {"C2xC2", "C2xC4", "C3xC3"}) out[7].push_back(sweep_theorem8(G(name), o));
  for (const char* name : {"C2xC2", "C2xC4", "C3xC3"}) out[8].push_back(sweep_theorem12(G(name), 2, o));
  out[9].push_back(sweep_theorem4(G("C2xC4"), 1, o));
  for (std::int64_t i : {1, 2}) out[9].push_back(sweep_theorem4(G("C3xC6"), i, o));
  for (std::int64_t i = 1; i <= 5; ++i) out[9].push_back(sweep_conjecture1(G("C6"), i, o));
  out[13].push_back(sweep_conjecture11(G("C3"), 1, {}, o));
  out[13].push_back(sweep_conjecture11(G("C3xC3"), 1, {}, o));
  out[13].push_back(sweep_conjecture11(G("C3xC3"), 2, {}, o));
  out[13].push_back(sweep_conjecture11(G("C6"), 1, {}, o));
  return out;
}

std::string serialize(const std::map<int, std::vector<VerificationReport>>& sweeps) {
  std::string s;
  for (const auto& [id, reports] : sweeps) {
    for (const auto& r : reports) s += to_json(r).dump() + "\n";
  }
  return s;
}

// All reports verified, and (when `grid`) instances_checked is the full multiset count.
std::string check_reports(const std::vector<VerificationReport>& reports, bool& ok, bool grid) {
  std::string failed;
  for (const auto& r : reports) {
    bool good = r.verified();
    if (grid) {
      const auto len = r.params["length"].get<std::uint64_t>();
      good = good && r.instances_checked == multiset_count(static_cast<std::uint64_t>(r.group.order()), len);
    }
    if (!good) failed += " " + summary(r);
  }
  ok = failed.empty();
  return std::to_string(reports.size()) + " sweeps" + (ok ? " verified" : ", failing:" + failed);
}

}  // namespace

int main() {
  const auto started = std::chrono::steady_clock::now();
  const auto sweeps = all_sweeps(1);

  std::vector<Criterion> criteria{
      {1, "Davenport equals D* on p-groups",
       [](bool& ok) {
         std::string bad;
         int n = 0;
         for (const char* name : {"C2", "C4", "C8", "C9", "C2^2", "C2^3", "C2^4", "C3^2", "C3^3", "C2xC4", "C2xC8",
                                  "C4xC4", "C5", "C5^2", "C7"}) {
           const auto g = G(name);
           const auto d = davenport(g).value;
           ++n;
           if (d != d_star(g)) bad += " " + g.to_string() + ":" + std::to_string(d) + "!=" + std::to_string(d_star(g));
         }
         ok = bad.empty();
         return std::to_string(n) + " groups" + (ok ? " agree" : ", mismatches:" + bad);
       }},
      {2, "Davenport of C6 and C2xC6",
       [](bool& ok) {
         const auto a = davenport(G("C6")).value;
         const auto b = davenport(G("C2xC6")).value;
         ok = a == 6 && b == 7 && b == RankTwoShape::of(G("C2xC6")).davenport();
         return "D(C6)=" + std::to_string(a) + ", D(C2xC6)=" + std::to_string(b);
       }},
      {3, "residue avoidance sweeps (theorem5)", [&](bool& ok) { return check_reports(sweeps.at(3), ok, true); }},
      {4, "normal structure sweeps (theorem3)",
       [&](bool& ok) {
         auto detail = check_reports(sweeps.at(4), ok, true);
         std::uint64_t normal = 0;
         for (const auto& r : sweeps.at(4)) normal += r.stats["normal_sequences"].get<std::uint64_t>();
         return detail + ", " + std::to_string(normal) + " normal sequences all of the form 0^i T";
       }},
      {5, "dispersiveness sweeps (corollary7)", [&](bool& ok) { return check_reports(sweeps.at(5), ok, true); }},
      {6, "Property B for n = 2..5",
       [&](bool& ok) {
         auto detail = check_reports(sweeps.at(6), ok, true);
         detail += ", minimal sequences:";
         for (const auto& r : sweeps.at(6)) detail += " " + r.stats["minimal_zero_sum_sequences"].dump();
         return detail;
       }},
      {7, "rank-two extremal forms: generation and converse (theorem8)",
       [&](bool& ok) {
         std::uint64_t forms = 0, bad = 0;
         for (const char* name : {"C2xC2", "C3xC3", "C2xC4", "C3xC6"}) {
           const auto g = G(name);
           const auto d = RankTwoShape::of(g).davenport();
           visit_schmid_forms(g, [&](const SchmidForm& f) {
             ++forms;
             const auto s = generate_schmid(g, f);
             if (static_cast<std::int64_t>(s.length()) != d || !is_minimal_zero_sum(s)) ++bad;
           });
         }
         bool converse = true;
         const auto detail = check_reports(sweeps.at(7), converse, false);
         ok = bad == 0 && converse;
         return std::to_string(forms) + " generated forms, " + std::to_string(bad) + " failures; converse: " + detail;
       }},
      {8, "(T, U) sweeps with |U| <= 2 (theorem12)", [&](bool& ok) { return check_reports(sweeps.at(8), ok, false); }},
      {9, "rank-two and cyclic normal structure (theorem4, conj1)",
       [&](bool& ok) { return check_reports(sweeps.at(9), ok, true); }},
      {10, "polynomial-method witnesses agree with the DP",
       [](bool& ok) {
         std::uint64_t instances = 0, disagreements = 0;
         for (const char* name : {"C2", "C2^2", "C3", "C3^2"}) {
           const auto g = G(name);
           const auto p = *g.prime();
           const auto d = d_star(g);
           for (std::int64_t k = 1; k <= p; ++k) {
             for (const auto& a : residue_subsets(p, k - 1)) {
               for (const auto& s : collect_sequences({g, static_cast<std::size_t>(d + k - 1)})) {
                 ++instances;
                 try {
                   const auto audit = cn_witness(s, a);
                   const auto dp = verify_theorem5(s, a, d);
                   if (audit.extracted.length() != dp.length()) ++disagreements;
                 } catch (const Error&) {
                   ++disagreements;
                 }
               }
             }
           }
         }
         ok = disagreements == 0;
         return std::to_string(instances) + " instances, " + std::to_string(disagreements) + " disagreements";
       }},
      {11, "subset theorem search",
       [](bool& ok) {
         std::mt19937_64 rng(20261016);
         std::uint64_t solved = 0;
         for (int t = 0; t < 1000; ++t) {
           const std::int64_t p = std::array<std::int64_t, 3>{2, 3, 5}[t % 3];
           const auto inst = random_afk_instance(rng, p, 1 + static_cast<std::size_t>(t / 3) % 3, 16);
           const auto sol = afk_find_subset(inst);
           if (afk_hypothesis_holds(inst) && sol && afk_solution_valid(inst, *sol)) ++solved;
         }
         AfkOptions plain, mitm;
         plain.strategy = AfkStrategy::plain;
         mitm.strategy = AfkStrategy::meet_in_the_middle;
         std::uint64_t agree = 0;
         std::uniform_int_distribution<std::size_t> size(17, 22);
         std::uniform_int_distribution<std::int64_t> entry(-50, 50);
         for (int t = 0; t < 100; ++t) {
           const std::int64_t p = std::array<std::int64_t, 3>{2, 3, 5}[t % 3];
           auto inst = random_afk_instance(rng, p, 1 + static_cast<std::size_t>(t) % 3, 16);
           const std::size_t m = size(rng);
           while (inst.vectors.size() < m) {
             std::vector<std::int64_t> v(inst.coordinates());
             for (auto& x : v) x = entry(rng);
             inst.vectors.push_back(std::move(v));
           }
           const auto a = afk_find_subset(inst, plain);
           const auto b = afk_find_subset(inst, mitm);
           if (a && a == b && afk_solution_valid(inst, *a)) ++agree;
         }
         ok = solved == 1000 && agree == 100;
         return std::to_string(solved) + "/1000 random instances solved; plain and meet-in-the-middle agree on " +
                std::to_string(agree) + "/100 with m in [17, 22]";
       }},
      {12, "zero-sum profile DP against subset enumeration",
       [](bool& ok) {
         std::mt19937_64 rng(12);
         const auto& groups = testing_support::small_groups();
         std::uniform_int_distribution<std::size_t> which(0, groups.size() - 1), len(0, 12);
         int agree = 0;
         for (int t = 0; t < 500; ++t) {
           const auto g = G(groups[which(rng)]);
           const auto s = testing_support::random_sequence(rng, g, len(rng));
           const auto expected = testing_support::lengths_of(
               oracle::subset_profile(testing_support::oracle_group(g), testing_support::coords_of(s)));
           if (zero_sum_profile(s).lengths == expected) ++agree;
         }
         ok = agree == 500;
         return std::to_string(agree) + "/500 profiles identical";
       }},
      {13, "s_mN formula check and eta sweeps (conj11)",
       [&](bool& ok) {
         std::string findings;
         for (const auto& [n, r] : std::vector<std::pair<std::int64_t, std::int64_t>>{
                  {2, 1}, {2, 2}, {3, 1}, {3, 2}, {2, 3}}) {
           const auto g = FiniteAbelianGroup::canonicalize(std::vector<std::int64_t>(static_cast<std::size_t>(r), n));
           const auto value = s_mN(g).value;
           const auto formula = (r + 1) * (n - 1) + 1;
           findings += " " + g.to_string() + ":" + std::to_string(value) + (value == formula ? "=" : "!=") +
                       std::to_string(formula);
         }
         const auto detail = check_reports(sweeps.at(13), ok, false);
         return "s_mN vs (r+1)(n-1)+1:" + findings + "; eta sweeps: " + detail;
       }},
      {14, "reports identical across 1, 2 and 8 workers",
       [&](bool& ok) {
         const auto one = serialize(sweeps);
         const bool two = serialize(all_sweeps(2)) == one;
         const bool eight = serialize(all_sweeps(8)) == one;
         ok = two && eight;
         return std::to_string(one.size()) + " bytes of reports; 2 workers " + (two ? "identical" : "DIFFERENT") +
                ", 8 workers " + (eight ? "identical" : "DIFFERENT");
       }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    bool ok = false;
    std::string detail;
    try {
      detail = c.check(ok);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << ": " << detail << std::endl;
  }
  const auto seconds =
      std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - started).count();
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << "(" << criteria.size() - failures << "/" << criteria.size()
            << ", " << seconds << " s)" << std::endl;
  return failures ? 1 : 0;
}
