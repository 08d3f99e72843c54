#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "json.hpp"
#include "rankhash/codec.hpp"
#include "rankhash/error.hpp"
#include "rankhash/eval.hpp"
#include "rankhash/kernels.hpp"
#include "rankhash/matching.hpp"
#include "rankhash/security.hpp"
#include "rankhash/store.hpp"

namespace rankhash::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kToolName = "rankhash-cli 1.0";

enum class Format { json, csv };

// Flags every subcommand understands.
struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string params;
  std::string format = "json";
  std::string features;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "experiment config (JSON)");
  cmd->add_option("--seed", f.seed, "master seed; overrides the config");
  cmd->add_option("--out", f.out, "output file or directory");
  cmd->add_option("--params", f.params, "hash parameters as n,m,k,p");
  cmd->add_option("--format", f.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--features", f.features, "feature CSV (subject_id,sample_id,v1..vn)");
}

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path.string());
  f << content;
  if (!f) throw DataError("failed writing " + path.string());
}

// Resolved view of config file + flag overrides.
struct Context {
  ExperimentConfig cfg;
  Format format = Format::json;
  std::optional<fs::path> out;
  bool out_from_config = false;  // out_dir from the config is always a directory
};

// Target for commands that write a single file: --out names the file, a
// config out_dir gets the default name inside it.
std::optional<fs::path> file_target(const Context& ctx, const std::string& default_name) {
  if (!ctx.out) return std::nullopt;
  return ctx.out_from_config ? *ctx.out / default_name : *ctx.out;
}

Context resolve(const CommonFlags& f) {
  Context ctx;
  if (!f.config.empty()) ctx.cfg = load_config(f.config);
  ctx.format = f.format == "csv" ? Format::csv : Format::json;
  if (f.seed) {
    ctx.cfg.seed = *f.seed;
    if (ctx.cfg.params) ctx.cfg.params->master_seed = *f.seed;
    if (ctx.cfg.sweep) ctx.cfg.sweep->base_seed = *f.seed;
  }
  if (!f.params.empty()) {
    HashParams hp = parse_params_flag(f.params);
    hp.master_seed = ctx.cfg.params ? ctx.cfg.params->master_seed : ctx.cfg.seed.value_or(0);
    ctx.cfg.params = hp;
  }
  if (!f.features.empty()) {
    DatasetSource src;
    src.csv = fs::path(f.features);
    ctx.cfg.dataset = src;
  }
  if (!f.out.empty()) {
    ctx.out = fs::path(f.out);
  } else if (ctx.cfg.out_dir) {
    ctx.out = ctx.cfg.out_dir;
    ctx.out_from_config = true;
  }
  return ctx;
}

const HashParams& need_params(const Context& ctx) {
  if (!ctx.cfg.params) throw ConfigError("hash parameters missing: pass --params n,m,k,p or set params in --config");
  ctx.cfg.params->validate();
  return *ctx.cfg.params;
}

Dataset need_dataset(const Context& ctx) {
  if (!ctx.cfg.dataset) throw ConfigError("no dataset: pass --features or set dataset in --config");
  return load_dataset(*ctx.cfg.dataset);
}

json summary_json(const Summary& s) { return {{"count", s.count}, {"mean", s.mean}, {"stddev", s.stddev}}; }

// Scores with the subject/sample labels of the flattened dataset.
std::string scores_csv(const std::vector<FeatureVector>& flat, const ScoreSet& s) {
  std::ostringstream os;
  os << "kind,lhs_subject,lhs_sample,rhs_subject,rhs_sample,score\n";
  auto emit = [&](const char* kind, const std::vector<ScoreEntry>& entries) {
    for (const auto& e : entries) {
      os << kind << ',' << flat[e.lhs].subject_id << ',' << flat[e.lhs].sample_id << ',' << flat[e.rhs].subject_id
         << ',' << flat[e.rhs].sample_id << ',' << num(e.score) << '\n';
    }
  };
  emit("genuine", s.genuine);
  emit("imposter", s.imposter);
  for (const auto& e : s.pseudo_imposter) {
    os << "pseudo_imposter," << flat[e.lhs].subject_id << ',' << flat[e.lhs].sample_id << ",reissue," << e.rhs << ','
       << num(e.score) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_hash(const CommonFlags& f, bool binary, std::ostream& out) {
  const auto ctx = resolve(f);
  const auto params = need_params(ctx);
  const auto ds = need_dataset(ctx);
  if (ds.n != params.n) {
    throw DimensionError("feature vectors have n=" + std::to_string(ds.n) + " but params declare n=" +
                         std::to_string(params.n));
  }
  const auto flat = ds.flatten();
  const auto perms = derive_permutations(params);
  const auto codes = kernels::hash_batch(flat, params, perms);

  std::vector<TemplateRecord> records;
  records.reserve(flat.size());
  for (std::size_t t = 0; t < flat.size(); ++t) {
    records.push_back({flat[t].subject_id, flat[t].sample_id, codes[t], params, kToolName});
  }
  std::ostringstream store;
  write_store(store, records, binary);
  if (const auto target = file_target(ctx, "store.jsonl")) {
    write_file(*target, store.str());
    out << "wrote " << records.size() << " templates (m=" << params.m << ") to " << target->string() << "\n";
  } else {
    out << store.str();
  }
  return kOk;
}

struct MatchRow {
  const TemplateRecord* enrolled;
  std::string probe_subject;
  std::string probe_sample;
  MatchScore score;
};

int cmd_match(const CommonFlags& f, const std::string& store_path, const std::string& probe_path,
              const std::string& against_path, bool allow_cross, std::ostream& out) {
  const auto ctx = resolve(f);
  if (store_path.empty()) throw ConfigError("match needs --store");
  if (probe_path.empty() == against_path.empty()) throw ConfigError("match needs exactly one of --probe or --against");
  const auto enrolled = load_store(store_path);
  if (enrolled.empty()) throw DataError("store " + store_path + " is empty");
  const auto cross = allow_cross ? CrossParams::allow : CrossParams::reject;

  std::vector<MatchRow> rows;
  if (!probe_path.empty()) {
    const HashParams params = enrolled.front().params;
    for (const auto& r : enrolled) {
      if (!(r.params == params)) {
        throw IncompatibleTemplateError("store mixes hash parameters; probe hashing needs a single parameter set");
      }
    }
    const auto probes = load_dataset_csv(probe_path).flatten();
    const auto codes = kernels::hash_batch(probes, params, derive_permutations(params));
    for (const auto& e : enrolled) {
      for (std::size_t q = 0; q < probes.size(); ++q) {
        rows.push_back({&e, probes[q].subject_id, probes[q].sample_id, collision_score(e.code, codes[q], cross)});
      }
    }
  } else {
    const auto queries = load_store(against_path);
    for (const auto& e : enrolled) {
      for (const auto& q : queries) rows.push_back({&e, q.subject_id, q.sample_id, collision_score(e.code, q.code, cross)});
    }
  }

  std::ostringstream os;
  if (ctx.format == Format::csv) {
    os << "enrolled_subject,enrolled_sample,probe_subject,probe_sample,collisions,m,score\n";
    for (const auto& r : rows) {
      os << r.enrolled->subject_id << ',' << r.enrolled->sample_id << ',' << r.probe_subject << ',' << r.probe_sample
         << ',' << r.score.collisions << ',' << r.score.m << ',' << num(r.score.score) << '\n';
    }
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"enrolled_subject", r.enrolled->subject_id},
                     {"enrolled_sample", r.enrolled->sample_id},
                     {"probe_subject", r.probe_subject},
                     {"probe_sample", r.probe_sample},
                     {"collisions", r.score.collisions},
                     {"m", r.score.m},
                     {"score", r.score.score}});
    }
    os << json{{"scores", arr}}.dump(2) << '\n';
  }
  if (const auto target = file_target(ctx, ctx.format == Format::csv ? "match.csv" : "match.json")) {
    write_file(*target, os.str());
  } else {
    out << os.str();
  }
  return kOk;
}

int cmd_eval(const CommonFlags& f, std::ostream& out) {
  const auto ctx = resolve(f);
  const auto params = need_params(ctx);
  const auto ds = need_dataset(ctx);
  const auto scores = run_protocol(ds, params, ctx.cfg.protocol);
  const auto genuine = scores_of(scores.genuine);
  const auto imposter = scores_of(scores.imposter);
  const auto eer = compute_eer(genuine, imposter);
  const auto hg = histogram(genuine, ctx.cfg.histogram_bins);
  const auto hi = histogram(imposter, ctx.cfg.histogram_bins);

  std::ostringstream report;
  if (ctx.format == Format::csv) {
    report << "protocol,n,m,k,p,master_seed,genuine,imposter,eer,threshold\n"
           << to_string(ctx.cfg.protocol.protocol) << ',' << params.n << ',' << params.m << ',' << params.k << ','
           << params.p << ',' << params.master_seed << ',' << genuine.size() << ',' << imposter.size() << ','
           << num(eer.eer) << ',' << num(eer.threshold) << '\n';
  } else {
    json j{{"command", "eval"},
           {"dataset", ds.provenance},
           {"params", to_json(params)},
           {"protocol", to_string(ctx.cfg.protocol.protocol)},
           {"counts", {{"genuine", genuine.size()}, {"imposter", imposter.size()}}},
           {"eer", eer.eer},
           {"threshold", eer.threshold},
           {"genuine", summary_json(summarize(genuine))},
           {"imposter", summary_json(summarize(imposter))},
           {"histogram", {{"edges", hg.edges}, {"genuine", hg.counts}, {"imposter", hi.counts}}},
           {"warnings", scores.warnings}};
    report << j.dump(2) << '\n';
  }
  out << report.str();
  if (ctx.out) {
    write_file(*ctx.out / (ctx.format == Format::csv ? "eval.csv" : "eval.json"), report.str());
    write_file(*ctx.out / "scores.csv", scores_csv(ds.flatten(), scores));
  }
  return kOk;
}

int cmd_sweep(const CommonFlags& f, std::ostream& out) {
  const auto ctx = resolve(f);
  if (!ctx.cfg.sweep) throw ConfigError("sweep needs a sweep grid in --config");
  const auto ds = need_dataset(ctx);
  const auto result = sweep(ds, *ctx.cfg.sweep, ctx.cfg.protocol);

  std::ostringstream report;
  if (ctx.format == Format::csv) {
    report << "k,p,m,mean_eer,std_eer";
    for (std::size_t r = 0; r < ctx.cfg.sweep->repeats; ++r) report << ",eer_" << (r + 1);
    report << '\n';
    for (const auto& row : result.rows) {
      report << row.k << ',' << row.p << ',' << row.m << ',' << num(row.mean_eer) << ',' << num(row.std_eer);
      for (double e : row.eers) report << ',' << num(e);
      report << '\n';
    }
  } else {
    json rows = json::array();
    for (const auto& row : result.rows) {
      rows.push_back({{"k", row.k},
                      {"p", row.p},
                      {"m", row.m},
                      {"mean_eer", row.mean_eer},
                      {"std_eer", row.std_eer},
                      {"eers", row.eers}});
    }
    json j{{"command", "sweep"},
           {"dataset", ds.provenance},
           {"protocol", to_string(ctx.cfg.protocol.protocol)},
           {"repeats", ctx.cfg.sweep->repeats},
           {"base_seed", std::to_string(ctx.cfg.sweep->base_seed)},
           {"rows", rows},
           {"warnings", result.warnings}};
    report << j.dump(2) << '\n';
  }
  out << report.str();
  if (ctx.out) write_file(*ctx.out / (ctx.format == Format::csv ? "sweep.csv" : "sweep.json"), report.str());
  return kOk;
}

int cmd_cancel(const CommonFlags& f, std::ostream& out) {
  const auto ctx = resolve(f);
  const auto params = need_params(ctx);
  const auto ds = need_dataset(ctx);
  const auto scores = cancellability_experiment(ds, params, ctx.cfg.reissues, ctx.cfg.protocol);
  const auto genuine = scores_of(scores.genuine);
  const auto imposter = scores_of(scores.imposter);
  const auto pseudo = scores_of(scores.pseudo_imposter);
  const std::size_t bins = ctx.cfg.histogram_bins;
  const auto hg = histogram(genuine, bins);
  const auto hi = histogram(imposter, bins);
  const auto hp = histogram(pseudo, bins);

  std::ostringstream report;
  if (ctx.format == Format::csv) {
    report << "bin_lo,bin_hi,genuine,imposter,pseudo_imposter\n";
    for (std::size_t b = 0; b < bins; ++b) {
      report << num(hg.edges[b]) << ',' << num(hg.edges[b + 1]) << ',' << hg.counts[b] << ',' << hi.counts[b] << ','
             << hp.counts[b] << '\n';
    }
  } else {
    json j{{"command", "cancel-test"},
           {"dataset", ds.provenance},
           {"params", to_json(params)},
           {"reissues", ctx.cfg.reissues},
           {"counts", {{"genuine", genuine.size()}, {"imposter", imposter.size()}, {"pseudo_imposter", pseudo.size()}}},
           {"genuine", summary_json(summarize(genuine))},
           {"imposter", summary_json(summarize(imposter))},
           {"pseudo_imposter", summary_json(summarize(pseudo))},
           {"ks_pseudo_vs_imposter", ks_statistic(pseudo, imposter)},
           {"eer_genuine_vs_imposter", compute_eer(genuine, imposter).eer},
           {"eer_genuine_vs_pseudo_imposter", compute_eer(genuine, pseudo).eer},
           {"histogram",
            {{"edges", hg.edges}, {"genuine", hg.counts}, {"imposter", hi.counts}, {"pseudo_imposter", hp.counts}}},
           {"warnings", scores.warnings}};
    report << j.dump(2) << '\n';
  }
  out << report.str();
  if (ctx.out) {
    write_file(*ctx.out / (ctx.format == Format::csv ? "cancel.csv" : "cancel.json"), report.str());
    write_file(*ctx.out / "scores.csv", scores_csv(ds.flatten(), scores));
  }
  return kOk;
}

struct SecurityFlags {
  bool table = false;
  std::optional<double> min, max;
  double delta = 1e-4;
  std::size_t n = 299;
  std::string store;
  bool signed_values = false;
  bool attack = false;
  std::size_t trials = 100;
  std::size_t attack_n = 8;
  std::size_t observations = 50;
  std::string sign = "all_positive";
};

json complexity_json(const FeatureStats& s, const ComplexityReport& r) {
  return {{"min", s.min},
          {"max", s.max},
          {"delta", s.delta},
          {"n", s.n},
          {"possibilities_single", r.possibilities_single},
          {"bits_single", r.bits_single},
          {"bits_total", r.bits_total},
          {"rounded_bits_single", r.rounded_bits_single},
          {"rounded_bits_total", r.rounded_bits_total}};
}

const char* kComplexityHeader = "source,min,max,delta,n,possibilities_single,bits_single,bits_total,rounded_bits_single,rounded_bits_total";

std::string complexity_row(const std::string& source, const FeatureStats& s, const ComplexityReport& r) {
  std::ostringstream os;
  os << source << ',' << num(s.min) << ',' << num(s.max) << ',' << num(s.delta) << ',' << s.n << ','
     << r.possibilities_single << ',' << num(r.bits_single) << ',' << num(r.bits_total) << ',' << r.rounded_bits_single
     << ',' << r.rounded_bits_total;
  return os.str();
}

int cmd_security(const CommonFlags& f, const SecurityFlags& s, std::ostream& out) {
  const auto ctx = resolve(f);
  const bool range = s.min.has_value() || s.max.has_value();
  if (range && !(s.min && s.max)) throw ConfigError("--min and --max go together");
  const bool features = ctx.cfg.dataset.has_value();
  if (!s.table && !range && !features && s.store.empty() && !s.attack) {
    throw ConfigError("security needs at least one of --published-ranges, --min/--max, --features, --store, --attack");
  }

  json j{{"command", "security"}};
  std::ostringstream csv;

  if (s.table) {
    json rows = json::array();
    csv << "database,min,max,possibilities,published_possibilities,rounded_bits,published_bits,match\n";
    for (const auto& row : published_ranges()) {
      const FeatureStats st{row.min, row.max, 1e-4, 299};
      const auto r = brute_force_complexity(st);
      const bool match =
          r.possibilities_single == row.published_possibilities && r.rounded_bits_single == row.published_bits;
      auto entry = complexity_json(st, r);
      entry["database"] = row.database;
      entry["published_possibilities"] = row.published_possibilities;
      entry["published_bits"] = row.published_bits;
      entry["match"] = match;
      rows.push_back(entry);
      csv << row.database << ',' << num(row.min) << ',' << num(row.max) << ',' << r.possibilities_single << ','
          << row.published_possibilities << ',' << r.rounded_bits_single << ',' << row.published_bits << ','
          << (match ? "yes" : "no") << '\n';
    }
    j["table"] = rows;
    csv << '\n';
  }

  if (range || features) {
    csv << kComplexityHeader << '\n';
    json list = json::array();
    if (range) {
      const FeatureStats st{*s.min, *s.max, s.delta, s.n};
      const auto r = brute_force_complexity(st);
      list.push_back(complexity_json(st, r));
      csv << complexity_row("range", st, r) << '\n';
    }
    if (features) {
      const auto flat = load_dataset(*ctx.cfg.dataset).flatten();
      const auto st = feature_stats(flat, s.delta);
      const auto r = brute_force_complexity(st);
      list.push_back(complexity_json(st, r));
      csv << complexity_row("features", st, r) << '\n';
    }
    j["complexity"] = list;
    csv << '\n';
  }

  if (!s.store.empty()) {
    // Templates of one subject act as the attacker's observations of that
    // subject; the attack only makes sense across distinct seeds.
    const auto records = load_store(s.store);
    std::map<std::string, std::vector<Observation>> by_subject;
    std::vector<std::string> order;
    for (const auto& r : records) {
      if (!by_subject.count(r.subject_id)) order.push_back(r.subject_id);
      by_subject[r.subject_id].push_back({r.code, r.params});
    }
    json rows = json::array();
    csv << "subject,observations,product_inequalities,unexploited,edges,consistent,recovered_fraction\n";
    for (const auto& id : order) {
      const auto res = arm_order_attack(by_subject[id], !s.signed_values);
      rows.push_back({{"subject", id},
                      {"observations", by_subject[id].size()},
                      {"product_inequalities", res.product_inequalities},
                      {"unexploited", res.unexploited},
                      {"edges", res.graph.edge_count()},
                      {"consistent", res.consistent},
                      {"recovered_fraction", res.recovered_fraction}});
      csv << id << ',' << by_subject[id].size() << ',' << res.product_inequalities << ',' << res.unexploited << ','
          << res.graph.edge_count() << ',' << (res.consistent ? "yes" : "no") << ',' << num(res.recovered_fraction)
          << '\n';
    }
    j["store_attack"] = {{"assume_all_positive", !s.signed_values}, {"subjects", rows}};
    csv << '\n';
  }

  if (s.attack) {
    AttackSettings a;
    a.trials = s.trials;
    a.n = s.attack_n;
    a.observations = s.observations;
    if (s.sign == "mixed") {
      a.sign_mode = SignMode::mixed;
    } else if (s.sign != "all_positive") {
      throw ConfigError("--sign must be all_positive or mixed");
    }
    a.params = ctx.cfg.params.value_or(HashParams{s.attack_n, 200, 4, 2, 0});
    a.params.n = s.attack_n;
    a.seed = ctx.cfg.seed.value_or(0);
    const auto st = attack_success_rate(a);
    j["attack"] = {{"trials", st.trials},
                   {"n", a.n},
                   {"m", a.params.m},
                   {"k", a.params.k},
                   {"p", a.params.p},
                   {"observations", a.observations},
                   {"sign", s.sign},
                   {"seed", std::to_string(a.seed)},
                   {"full_recovery_rate", st.full_recovery_rate},
                   {"contradiction_rate", st.contradiction_rate},
                   {"mean_recovered_fraction", st.mean_recovered_fraction},
                   {"false_edges", st.false_edges}};
    csv << "trials,n,m,k,p,observations,sign,seed,full_recovery_rate,contradiction_rate,mean_recovered_fraction,"
           "false_edges\n"
        << st.trials << ',' << a.n << ',' << a.params.m << ',' << a.params.k << ',' << a.params.p << ','
        << a.observations << ',' << s.sign << ',' << a.seed << ',' << num(st.full_recovery_rate) << ','
        << num(st.contradiction_rate) << ',' << num(st.mean_recovered_fraction) << ',' << st.false_edges << '\n';
  }

  std::string report = ctx.format == Format::csv ? csv.str() : j.dump(2) + "\n";
  if (ctx.format == Format::csv) {
    while (report.size() > 1 && report[report.size() - 1] == '\n' && report[report.size() - 2] == '\n') {
      report.pop_back();
    }
  }
  if (const auto target = file_target(ctx, ctx.format == Format::csv ? "security.csv" : "security.json")) {
    write_file(*target, report);
  } else {
    out << report;
  }
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-based hashing of real-valued feature vectors"};
  app.require_subcommand(1);

  CommonFlags hf, mf, ef, sf, cf, xf;

  auto* hash = app.add_subcommand("hash", "hash feature vectors into a template store");
  add_common(hash, hf);
  bool binary = false;
  hash->add_flag("--binary", binary, "also store the compact binary code (hex)");

  auto* match = app.add_subcommand("match", "score a template store against probes or a second store");
  add_common(match, mf);
  std::string store, probe, against;
  bool allow_cross = false;
  match->add_option("--store", store, "enrolled template store");
  match->add_option("--probe", probe, "probe feature CSV, hashed with the store's parameters");
  match->add_option("--against", against, "second template store");
  match->add_flag("--allow-cross-seed", allow_cross, "score templates made under different parameters");

  auto* eval = app.add_subcommand("eval", "genuine/imposter scores and EER");
  add_common(eval, ef);
  auto* sweep_cmd = app.add_subcommand("sweep", "EER over a (k, p, m) grid");
  add_common(sweep_cmd, sf);
  auto* cancel = app.add_subcommand("cancel-test", "pseudo-imposter scores from reissued templates");
  add_common(cancel, cf);

  auto* security = app.add_subcommand("security", "brute-force complexity and order-recovery attack");
  add_common(security, xf);
  SecurityFlags sec;
  security->add_flag("--published-ranges", sec.table, "complexity for the published per-database ranges");
  security->add_option("--min", sec.min, "smallest feature value");
  security->add_option("--max", sec.max, "largest feature value");
  security->add_option("--delta", sec.delta, "precision step")->capture_default_str();
  security->add_option("--n", sec.n, "feature dimension for --min/--max")->capture_default_str();
  security->add_option("--store", sec.store, "run the attack on each subject's templates in a store");
  security->add_flag("--signed", sec.signed_values, "do not assume positive feature values");
  security->add_flag("--attack", sec.attack, "Monte Carlo attack on random vectors");
  security->add_option("--trials", sec.trials, "attack trials")->capture_default_str();
  security->add_option("--attack-n", sec.attack_n, "vector length in the attack")->capture_default_str();
  security->add_option("--observations", sec.observations, "templates per attacked vector")->capture_default_str();
  security->add_option("--sign", sec.sign, "all_positive or mixed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (hash->parsed()) return cmd_hash(hf, binary, out);
    if (match->parsed()) return cmd_match(mf, store, probe, against, allow_cross, out);
    if (eval->parsed()) return cmd_eval(ef, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sf, out);
    if (cancel->parsed()) return cmd_cancel(cf, out);
    if (security->parsed()) return cmd_security(xf, sec, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IncompatibleTemplateError& e) {
    err << "incompatible templates: " << e.what() << '\n';
    return kIncompatibleError;
  } catch (const SeedReuseError& e) {
    err << "seed reuse: " << e.what() << '\n';
    return kIncompatibleError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << '\n';
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "file error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kOtherError;
  }
  return kOtherError;
}

}  // namespace rankhash::cli
