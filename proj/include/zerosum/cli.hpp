#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zerosum/afk.hpp"
#include "zerosum/enumeration.hpp"
#include "zerosum/error.hpp"
#include "zerosum/group.hpp"
#include "zerosum/manifest.hpp"
#include "zerosum/nullstellensatz.hpp"
#include "zerosum/profile.hpp"
#include "zerosum/report.hpp"
#include "zerosum/schmid.hpp"
#include "zerosum/sequence.hpp"
#include "zerosum/theorems.hpp"

namespace zerosum {

enum ExitCode : int { kVerified = 0, kCounterexample = 1, kUsage = 2, kResource = 3, kSoundness = 4 };

namespace cli {

struct Options {
  std::string group;
  std::string sequence;
  std::optional<std::int64_t> i;
  std::int64_t ell = 1;
  std::optional<std::string> a;
  std::optional<std::int64_t> davenport;
  unsigned threads = 1;
  std::uint64_t ceiling = 100'000'000;
  std::string format = "text";
  std::string out;
  std::string manifest;
  std::uint64_t seed = 1;
  bool timing = false;
  bool quiet = false;
  // sweep / property-b / invariant / schmid
  std::string statement;
  std::string invariant;
  std::string schmid_action;
  std::int64_t n = 2;
  std::int64_t max_u = 2;
  std::string t_literal;
  std::string u_literal;
  std::string form = "I";
  std::string e1, e2, g1, g2, x;
  int j = 1;
  std::int64_t s = 1;
  // afk
  std::int64_t p = 2;
  std::string exponents;
  std::string sets;
  std::string vectors;
  std::size_t random = 0;
  std::size_t coordinates = 1;
  std::size_t max_m = 16;
  std::string strategy = "auto";
};

inline std::vector<std::int64_t> parse_int_list(const std::string& text, char sep = ',') {
  std::vector<std::int64_t> out;
  std::string body = text;
  if (!body.empty() && body.front() == '{' && body.back() == '}') body = body.substr(1, body.size() - 2);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = detail::trim(item);
    if (!item.empty()) out.push_back(detail::parse_int(item, "integer"));
  }
  return out;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(detail::trim(item));
  return out;
}

inline ResidueSet parse_residues(const std::string& text) {
  const auto v = parse_int_list(text);
  return {v.begin(), v.end()};
}

struct Run {
  const Options& opt;
  std::ostream& out;
  std::ostream& err;
  RunManifest& manifest;

  FiniteAbelianGroup group() const {
    if (opt.group.empty()) throw UsageError("--group is required");
    return FiniteAbelianGroup::parse(opt.group);
  }

  std::int64_t required_i() const {
    if (!opt.i) throw UsageError("--i is required for this statement");
    return *opt.i;
  }

  Format format() const { return parse_format(opt.format); }

  SweepOptions sweep_options() const {
    SweepOptions s;
    s.search = search_options();
    s.davenport = opt.davenport;
    s.timing = opt.timing;
    return s;
  }

  SearchOptions search_options() const {
    SearchOptions s;
    s.node_ceiling = opt.ceiling;
    s.threads = opt.threads;
    s.progress_interval = 10'000'000;
    if (!opt.quiet) {
      auto* e = &err;
      s.progress = [e](std::uint64_t nodes) { *e << "progress: " << nodes << " nodes\n" << std::flush; };
    }
    return s;
  }

  // Writes to --out or stdout and records the content hash.
  void emit(const std::string& task, const std::string& outcome, const std::string& content, int code) {
    if (opt.out.empty()) {
      out << content;
    } else {
      write_file(opt.out, content);
    }
    manifest.add(task, outcome, opt.out, content, code);
  }

  int report(const VerificationReport& r) {
    int code = kVerified;
    if (!r.verified()) code = r.is_theorem() ? kSoundness : kCounterexample;
    emit(r.statement, r.outcome(), render(r, format()), code);
    if (code == kCounterexample) {
      err << "*** COUNTEREXAMPLE: " << r.statement << " fails on " << r.group.to_string() << " ("
          << r.counterexamples_total << " instance(s)) ***\n";
    } else if (code == kSoundness) {
      err << "soundness alarm: " << r.statement << " failed on " << r.counterexamples_total
          << " instance(s); this is an implementation bug\n";
    }
    return code;
  }

  int invariant(InvariantResult r) {
    if (!opt.timing) r.millis = 0;
    emit(r.name, "computed", render(r, format()), kVerified);
    return kVerified;
  }

  int emit_json(const std::string& task, const nlohmann::json& j, const std::string& text) {
    emit(task, "computed", format() == Format::json ? j.dump(2) + "\n" : text, kVerified);
    return kVerified;
  }
};

inline int run_davenport(Run& run) {
  const auto g = run.group();
  auto r = davenport(g, run.search_options());
  if (g.is_p_group() && r.value != d_star(g)) {
    throw SoundnessAlarm("D(" + g.to_string() + ") = " + std::to_string(r.value) + " differs from D* = " +
                         std::to_string(d_star(g)));
  }
  return run.invariant(std::move(r));
}

inline int run_invariant(Run& run) {
  const auto g = run.group();
  if (run.opt.invariant == "s_mN") return run.invariant(s_mN(g, run.search_options()));
  if (run.opt.invariant == "eta") return run.invariant(eta(g, run.opt.ell, run.search_options()));
  throw UsageError("unknown invariant '" + run.opt.invariant + "', expected s_mN or eta");
}

inline int run_classify(Run& run) {
  const auto g = run.group();
  if (run.opt.sequence.empty()) throw UsageError("--sequence is required");
  const auto s = Sequence::parse(g, run.opt.sequence);
  const std::int64_t d = run.opt.davenport ? *run.opt.davenport : davenport(g, run.search_options()).value;
  const auto profile = zero_sum_profile(s);
  nlohmann::json j{{"group", g.to_string()},
                   {"sequence", s.to_string()},
                   {"davenport", d},
                   {"profile", profile.lengths},
                   {"zero_sumfree", profile.empty()},
                   {"zero_sum", is_zero_sum(s)},
                   {"minimal_zero_sum", is_minimal_zero_sum(s)},
                   {"dispersive", profile.lengths.size() >= 2}};
  nlohmann::json witnesses = nlohmann::json::object();
  for (const auto& [len, w] : profile.witnesses) witnesses[std::to_string(len)] = w.to_string();
  j["witnesses"] = witnesses;
  if (static_cast<std::int64_t>(s.length()) >= d) {
    const bool normal = is_normal(s, profile, d);
    j["normal"] = normal;
    if (normal) {
      const std::int64_t i = static_cast<std::int64_t>(s.length()) - d + 1;
      j["normal_form"] = matches_normal_form(s, i);
      if (const auto split = matches_gao_zhuang_form(s, d)) {
        j["split"] = {{"zeros", split->zeros},
                      {"T", split->zero_sumfree_part.to_string()},
                      {"U", split->rest.to_string()}};
      }
    }
  } else {
    j["normal"] = nullptr;
  }
  std::ostringstream text;
  text << "sequence " << s.to_string() << " over " << g.to_string() << " (D = " << d << ")\n";
  text << "  profile: {";
  for (std::size_t k = 0; k < profile.lengths.size(); ++k) text << (k ? "," : "") << profile.lengths[k];
  text << "}\n";
  text << "  zero-sumfree: " << (profile.empty() ? "true" : "false") << "\n";
  text << "  minimal zero-sum: " << (j["minimal_zero_sum"].get<bool>() ? "true" : "false") << "\n";
  text << "  dispersive: " << (j["dispersive"].get<bool>() ? "true" : "false") << "\n";
  text << "  normal: " << (j["normal"].is_null() ? "n/a (|S| < D)" : (j["normal"].get<bool>() ? "true" : "false"))
       << "\n";
  return run.emit_json("classify", j, text.str());
}

inline int run_sweep(Run& run) {
  const auto g = run.group();
  const auto options = run.sweep_options();
  const auto& st = run.opt.statement;
  std::optional<ResidueSet> a;
  if (run.opt.a) a = parse_residues(*run.opt.a);
  if (st == "theorem3") return run.report(sweep_theorem3(g, run.required_i(), options));
  if (st == "theorem5") return run.report(sweep_theorem5(g, run.required_i(), a, options));
  if (st == "corollary7") return run.report(sweep_corollary7(g, run.required_i(), options));
  if (st == "theorem4") return run.report(sweep_theorem4(g, run.required_i(), options));
  if (st == "theorem8") return run.report(sweep_theorem8(g, options));
  if (st == "theorem12") {
    if (!run.opt.t_literal.empty() || !run.opt.u_literal.empty()) {
      return run.report(verify_theorem12(Sequence::parse(g, run.opt.t_literal), Sequence::parse(g, run.opt.u_literal),
                                         options));
    }
    return run.report(sweep_theorem12(g, run.opt.max_u, options));
  }
  if (st == "conj1") return run.report(sweep_conjecture1(g, run.required_i(), options));
  if (st == "conj10") return run.report(sweep_conjecture10(g, run.required_i(), a, options));
  if (st == "conj11") return run.report(sweep_conjecture11(g, run.opt.ell, run.opt.i, options));
  throw UsageError("unknown statement '" + st + "'");
}

inline int run_property_b(Run& run) { return run.report(property_b(run.opt.n, run.sweep_options())); }

inline SchmidForm form_from_options(const Options& opt, const FiniteAbelianGroup& g) {
  const auto xs = parse_int_list(opt.x);
  if (opt.form == "I") {
    return SchmidFormI{g.parse_element(opt.e1), g.parse_element(opt.e2), opt.j, xs};
  }
  if (opt.form == "II") {
    return SchmidFormII{opt.s, g.parse_element(opt.g1), g.parse_element(opt.g2), xs};
  }
  throw UsageError("--form must be I or II");
}

inline int run_schmid(Run& run) {
  const auto g = run.group();
  if (run.opt.schmid_action == "generate") {
    const auto form = form_from_options(run.opt, g);
    const auto s = generate_schmid(g, form);
    const bool minimal = is_minimal_zero_sum(s);
    const auto length = RankTwoShape::of(g).davenport();
    if (!minimal || static_cast<std::int64_t>(s.length()) != length) {
      throw SoundnessAlarm("generated " + s.to_string() + " is not a minimal zero-sum sequence of length " +
                           std::to_string(length));
    }
    nlohmann::json j{{"group", g.to_string()}, {"form", describe(g, form)}, {"sequence", s.to_string()},
                     {"length", s.length()}, {"minimal_zero_sum", minimal}};
    return run.emit_json("schmid-generate", j, s.to_string() + "\n");
  }
  if (run.opt.schmid_action == "match") {
    if (run.opt.sequence.empty()) throw UsageError("--sequence is required");
    const auto s = Sequence::parse(g, run.opt.sequence);
    const auto form = match_schmid(s);
    nlohmann::json j{{"group", g.to_string()}, {"sequence", s.to_string()}};
    j["form"] = form ? nlohmann::json(describe(g, *form)) : nlohmann::json(nullptr);
    if (!form && is_minimal_zero_sum(s)) {
      const auto pb = property_b(RankTwoShape::of(g).m, run.sweep_options());
      if (pb.verified()) {
        throw SoundnessAlarm("minimal zero-sum sequence " + s.to_string() + " of maximal length matches no form");
      }
    }
    return run.emit_json("schmid-match", j, (form ? describe(g, *form) : std::string("no form")) + "\n");
  }
  throw UsageError("schmid needs generate or match");
}

inline int run_cn(Run& run) {
  const auto g = run.group();
  if (run.opt.sequence.empty()) throw UsageError("--sequence is required");
  const auto s = Sequence::parse(g, run.opt.sequence);
  const auto audit = cn_witness(s, run.opt.a ? parse_residues(*run.opt.a) : ResidueSet{});
  std::ostringstream text;
  text << "delta = " << audit.delta << ", witness support {";
  for (std::size_t k = 0; k < audit.witness_support.size(); ++k) text << (k ? "," : "") << audit.witness_support[k];
  text << "} -> " << audit.extracted.to_string() << "\n";
  return run.emit_json("cn-witness", to_json(audit), text.str());
}

inline AfkOptions afk_options(const Options& opt) {
  AfkOptions o;
  if (opt.strategy == "plain") {
    o.strategy = AfkStrategy::plain;
  } else if (opt.strategy == "mitm") {
    o.strategy = AfkStrategy::meet_in_the_middle;
  } else if (opt.strategy != "auto") {
    throw UsageError("--strategy must be auto, plain or mitm");
  }
  return o;
}

inline nlohmann::json afk_json(const AfkInstance& inst, const std::optional<AfkSolution>& sol) {
  nlohmann::json j{{"p", inst.p},
                   {"exponents", inst.exponents},
                   {"m", inst.vector_count()},
                   {"bound", afk_bound(inst)},
                   {"hypothesis", afk_hypothesis_holds(inst)},
                   {"card_readings_differ", afk_card_readings_differ(inst)}};
  if (sol) {
    std::vector<std::size_t> one_based;
    for (std::size_t i : sol->indices) one_based.push_back(i + 1);
    j["I"] = one_based;
    j["residues"] = sol->residues;
  } else {
    j["I"] = nullptr;
  }
  return j;
}

inline int run_afk(Run& run) {
  const auto& opt = run.opt;
  const auto options = afk_options(opt);
  if (opt.random > 0) {
    std::mt19937_64 rng(opt.seed);
    std::uint64_t solved = 0;
    std::uint64_t differ = 0;
    for (std::size_t k = 0; k < opt.random; ++k) {
      const auto inst = random_afk_instance(rng, opt.p, opt.coordinates, opt.max_m);
      const auto sol = afk_find_subset(inst, options);
      if (!sol || !afk_solution_valid(inst, *sol)) {
        throw SoundnessAlarm("random instance " + std::to_string(k) + " satisfies the hypothesis but has no subset: " +
                             afk_json(inst, sol).dump());
      }
      ++solved;
      if (afk_card_readings_differ(inst)) ++differ;
    }
    nlohmann::json j{{"instances", opt.random}, {"solved", solved}, {"card_readings_differ", differ},
                     {"seed", opt.seed},        {"p", opt.p},        {"coordinates", opt.coordinates}};
    return run.emit_json("afk-random", j,
                         "solved " + std::to_string(solved) + " of " + std::to_string(opt.random) + " instances\n");
  }
  AfkInstance inst;
  inst.p = opt.p;
  inst.exponents = parse_int_list(opt.exponents);
  for (const auto& part : split(opt.sets, ';')) {
    const auto v = parse_int_list(part);
    inst.residue_sets.emplace_back(v.begin(), v.end());
  }
  for (const auto& part : split(opt.vectors, ';')) {
    if (!part.empty()) inst.vectors.push_back(parse_int_list(part));
  }
  const auto sol = afk_find_subset(inst, options);
  if (!sol && afk_hypothesis_holds(inst)) {
    throw SoundnessAlarm("hypothesis holds but no subset exists: " + afk_json(inst, sol).dump());
  }
  std::string text = "no subset\n";
  if (sol) {
    text = "I = {";
    for (std::size_t k = 0; k < sol->indices.size(); ++k) text += (k ? "," : "") + std::to_string(sol->indices[k] + 1);
    text += "}\n";
  }
  return run.emit_json("afk", afk_json(inst, sol), text);
}

}  // namespace cli

/// Parses argv, runs one subcommand and returns the exit code: 0 verified,
/// 1 counterexample to a conjecture, 2 usage error, 3 resource ceiling,
/// 4 soundness alarm.
inline int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  cli::Options opt;
  CLI::App app{"Exact zero-sum invariants and exhaustive verification over finite Abelian groups", "zerosum"};
  app.set_config("--config", "", "key=value configuration file; flags win");
  app.require_subcommand(1, 1);
  app.fallthrough();

  app.add_option("--group", opt.group, "group literal, e.g. C3xC6 or C2^3");
  app.add_option("--sequence", opt.sequence, "sequence literal, e.g. \"[0 (1,2)^3]\"");
  app.add_option("--i", opt.i, "length offset i");
  app.add_option("--ell", opt.ell, "multiplier ell for eta")->check(CLI::PositiveNumber);
  app.add_option("--A", opt.a, "comma-separated residues");
  app.add_option("--davenport", opt.davenport, "use this value for D(G)");
  app.add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--ceiling", opt.ceiling, "search node ceiling")->envname("ZEROSUM_CEILING")->check(
      CLI::PositiveNumber);
  app.add_option("--format", opt.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", opt.out, "write the report here instead of stdout");
  app.add_option("--manifest", opt.manifest, "write a run manifest here");
  app.add_option("--seed", opt.seed, "seed for randomized runs");
  app.add_flag("--timing", opt.timing, "record wall time in reports");
  app.add_flag("--quiet", opt.quiet, "no progress lines");

  auto* dav = app.add_subcommand("davenport", "Davenport constant by exhaustive search");
  auto* inv = app.add_subcommand("invariant", "s_mN or eta by exhaustive search");
  inv->add_option("name", opt.invariant, "s_mN or eta")->required()->check(CLI::IsMember({"s_mN", "eta"}));
  auto* cls = app.add_subcommand("classify", "profile and structure of one sequence");
  auto* sweep = app.add_subcommand("sweep", "exhaustive sweep of one statement");
  sweep->add_option("statement", opt.statement, "statement id")
      ->required()
      ->check(CLI::IsMember(
          {"theorem3", "theorem5", "corollary7", "theorem4", "theorem8", "theorem12", "conj1", "conj10", "conj11"}));
  sweep->add_option("--max-u", opt.max_u, "largest |U| in the (T, U) sweep");
  sweep->add_option("--t", opt.t_literal, "single instance: T");
  sweep->add_option("--u", opt.u_literal, "single instance: U");
  auto* pb = app.add_subcommand("property-b", "Property B by enumeration");
  pb->add_option("--n", opt.n, "n >= 2")->required();
  auto* schmid = app.add_subcommand("schmid", "generate or match rank-two extremal forms");
  schmid->add_option("action", opt.schmid_action, "generate or match")
      ->required()
      ->check(CLI::IsMember({"generate", "match"}));
  schmid->add_option("--form", opt.form, "I or II");
  schmid->add_option("--e1", opt.e1);
  schmid->add_option("--e2", opt.e2);
  schmid->add_option("--j", opt.j);
  schmid->add_option("--s", opt.s);
  schmid->add_option("--g1", opt.g1);
  schmid->add_option("--g2", opt.g2);
  schmid->add_option("--x", opt.x, "comma-separated multipliers");
  auto* cn = app.add_subcommand("cn-witness", "polynomial-method witness with audit data");
  auto* afk = app.add_subcommand("afk", "subset search for residue-constrained vector sums");
  afk->add_option("--p", opt.p, "prime");
  afk->add_option("--exponents", opt.exponents, "comma-separated d_j");
  afk->add_option("--sets", opt.sets, "residue sets, ';' between sets, ',' inside");
  afk->add_option("--vectors", opt.vectors, "vectors, ';' between vectors, ',' inside");
  afk->add_option("--random", opt.random, "run this many random instances satisfying the hypothesis");
  afk->add_option("--coordinates", opt.coordinates, "coordinates of random instances");
  afk->add_option("--max-m", opt.max_m, "largest m of random instances");
  afk->add_option("--strategy", opt.strategy, "auto, plain or mitm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  RunManifest manifest;
  manifest.started = utc_timestamp();
  for (int k = 0; k < argc; ++k) manifest.command_line.emplace_back(argv[k]);
  manifest.config = {{"threads", opt.threads}, {"ceiling", opt.ceiling}, {"format", opt.format},
                     {"seed", opt.seed},       {"timing", opt.timing}};

  cli::Run run{opt, out, err, manifest};
  int code = kVerified;
  try {
    if (dav->parsed()) code = cli::run_davenport(run);
    else if (inv->parsed()) code = cli::run_invariant(run);
    else if (cls->parsed()) code = cli::run_classify(run);
    else if (sweep->parsed()) code = cli::run_sweep(run);
    else if (pb->parsed()) code = cli::run_property_b(run);
    else if (schmid->parsed()) code = cli::run_schmid(run);
    else if (cn->parsed()) code = cli::run_cn(run);
    else if (afk->parsed()) code = cli::run_afk(run);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    code = kUsage;
  } catch (const ResourceError& e) {
    err << "resource ceiling: " << e.what() << " (" << e.nodes_visited() << " nodes visited)\n";
    code = kResource;
  } catch (const SoundnessAlarm& e) {
    err << "soundness alarm: " << e.what() << "\n";
    code = kSoundness;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    code = kUsage;
  }

  if (!opt.manifest.empty()) {
    manifest.finished = utc_timestamp();
    if (manifest.entries.empty()) manifest.add("none", "error", "", "", code);
    try {
      write_file(opt.manifest, manifest.to_json().dump(2) + "\n");
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      if (code == kVerified) code = kUsage;
    }
  }
  return code;
}

}  // namespace zerosum
