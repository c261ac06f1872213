#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "treemine/datagen.hpp"
#include "treemine/miner.hpp"
#include "treemine/oracle.hpp"
#include "treemine/tree_store.hpp"

namespace treemine::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string input = "-";
  std::string format = "lines";
};

struct MineOptions {
  InputOptions in;
  std::size_t minsup = 2;
  std::string algo = "prune";
  std::string target = "closed";
  std::optional<std::size_t> max_size;
  std::size_t tuple_budget = MiningConfig{}.tuple_budget;
  bool aggressive = false;
  std::string out = "-";
  std::string report;
  bool json = false;
  bool singletons = false;
};

struct GenOptions {
  std::string preset;
  GenProfile profile;
  std::size_t trees = 1;
  std::string out = "-";
};

std::string read_all(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(in), {}};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void write_all(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("cannot write " + path);
}

DataTree load_input(const InputOptions& o, std::istream& in) {
  const std::string text = read_all(o.input, in);
  return load_tree(text, o.format == "xml" ? InputFormat::xml : InputFormat::lines);
}

MiningConfig make_config(const MineOptions& o) {
  MiningConfig cfg;
  cfg.minsup = o.minsup;
  cfg.max_size = o.max_size;
  cfg.algorithm = *parse_algorithm(o.algo);
  cfg.target = *parse_target(o.target);
  cfg.tuple_budget = o.tuple_budget;
  cfg.aggressive_prune = o.aggressive;
  return cfg;
}

const char* tag_of(const MinedPattern& p, Target target) {
  if (target == Target::frequent) return "freq";
  return p.is_max ? "max" : "closed";
}

json stats_json(const MiningStats& s) {
  return {{"computed", s.computed},
          {"frequent", s.frequent},
          {"locally_closed", s.locally_closed},
          {"locally_maximal", s.locally_maximal},
          {"closed", s.closed},
          {"maximal", s.maximal},
          {"embedding_tests", s.embedding_tests},
          {"surrogate_candidates", s.surrogate_candidates},
          {"candidates_disqualified", s.candidates_disqualified},
          {"surrogates_confirmed", s.surrogates_confirmed},
          {"pruned_subtrees", s.pruned_subtrees},
          {"cover_checks", s.cover_checks}};
}

int cmd_mine(const MineOptions& o, std::istream& in, std::ostream& out) {
  const auto started = std::chrono::steady_clock::now();
  const DataTree tree = load_input(o.in, in);
  const MiningConfig cfg = make_config(o);
  MiningResult result = mine(tree, cfg);
  const auto& labels = tree.label_table();

  std::ostringstream text;
  auto line = [&](const std::string& enc, std::size_t support, const char* tag, const std::vector<std::size_t>& counts) {
    if (o.json) {
      text << json{{"pattern", enc}, {"support", support}, {"tag", tag}, {"occurrences", counts}}.dump() << '\n';
    } else {
      text << enc << '\t' << support << '\t' << tag << '\n';
    }
  };
  std::size_t emitted = 0;
  if (o.singletons) {
    // Labels are numbered in name order, so this is already encoding order.
    for (LabelId l = 0; l < static_cast<LabelId>(tree.label_count()); ++l) {
      const std::size_t n = tree.inverted_list(l).size();
      if (n == 0 || n < std::max<std::size_t>(cfg.minsup, 1)) continue;
      line(labels.name(l), n, "freq", {n});
      ++emitted;
    }
  }
  for (const auto& p : result.patterns) {
    std::vector<std::size_t> counts;
    for (const auto& b : p.ol.lists()) counts.push_back(b.count());
    line(encode(p.pattern, labels), p.support(), tag_of(p, cfg.target), counts);
    ++emitted;
  }
  write_all(o.out, text.str(), out);

  if (!o.report.empty()) {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    json report{{"algorithm", to_string(cfg.algorithm)},
                {"target", to_string(cfg.target)},
                {"minsup", cfg.minsup},
                {"max_size", cfg.max_size ? json(*cfg.max_size) : json(nullptr)},
                {"tree_nodes", tree.size() - (tree.has_virtual_root() ? 1 : 0)},
                {"labels", tree.label_count()},
                {"patterns_written", emitted},
                {"counters", stats_json(result.stats)},
                {"mining_seconds", result.stats.seconds},
                {"wall_seconds", wall},
                {"peak_list_bytes", result.stats.peak_list_bytes}};
    write_all(o.report, report.dump(2) + "\n", out);
  }
  return kExitOk;
}

using Keyed = std::map<std::string, std::size_t>;

int diff(const char* what, const Keyed& expected, const Keyed& got, std::ostream& out) {
  int bad = 0;
  for (const auto& [enc, sup] : expected) {
    auto it = got.find(enc);
    if (it == got.end()) {
      out << what << "\tmissing\t" << enc << '\t' << sup << '\n';
      ++bad;
    } else if (it->second != sup) {
      out << what << "\tsupport\t" << enc << '\t' << sup << " != " << it->second << '\n';
      ++bad;
    }
  }
  for (const auto& [enc, sup] : got)
    if (!expected.count(enc)) {
      out << what << "\textra\t" << enc << '\t' << sup << '\n';
      ++bad;
    }
  out << what << ": oracle " << expected.size() << ", miner " << got.size() << (bad ? ", MISMATCH" : ", ok") << '\n';
  return bad;
}

int cmd_verify(const MineOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const DataTree tree = load_input(o.in, in);
  const std::size_t cap = o.max_size.value_or(5);
  if (cap > 6) err << "warning: oracle enumeration beyond 6 nodes can be very slow\n";
  const auto& labels = tree.label_table();

  const auto truth = oracle::run_oracle(tree, o.minsup, cap);
  Keyed want_closed, want_max;
  for (auto i : truth.closed) want_closed[encode(truth.frequent[i].pattern, labels)] = truth.frequent[i].support;
  for (auto i : truth.maximal) want_max[encode(truth.frequent[i].pattern, labels)] = truth.frequent[i].support;

  MineOptions mo = o;
  mo.max_size = cap;
  MiningConfig cfg = make_config(mo);
  int bad = 0;
  for (Target t : {Target::closed, Target::maximal}) {
    cfg.target = t;
    Keyed got;
    for (const auto& p : mine(tree, cfg).patterns) got[encode(p.pattern, labels)] = p.support();
    bad += diff(to_string(t), t == Target::closed ? want_closed : want_max, got, out);
  }
  return bad ? kExitMismatch : kExitOk;
}

int cmd_gen(const GenOptions& o, std::ostream& out) {
  std::string text;
  for (std::size_t i = 0; i < o.trees; ++i) {
    GenProfile g = o.profile;
    g.seed = o.profile.seed + i;
    text += generate(g);
  }
  write_all(o.out, text, out);
  return kExitOk;
}

std::optional<std::uint64_t> env_seed() {
  if (const char* s = std::getenv("TREEMINE_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ConfigError(std::string("TREEMINE_SEED is not a number: ") + s);
    }
  }
  return std::nullopt;
}

void add_input_flags(CLI::App* app, InputOptions& o) {
  app->add_option("--input,-i", o.input, "Tree file, '-' for stdin")->capture_default_str();
  app->add_option("--format", o.format, "Input format")->check(CLI::IsMember({"lines", "xml"}))->capture_default_str();
}

void add_mining_flags(CLI::App* app, MineOptions& o) {
  add_input_flags(app, o.in);
  app->add_option("--minsup", o.minsup, "Minimum root support")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--algo", o.algo, "Algorithm")->check(CLI::IsMember({"base", "eager", "prune"}))->capture_default_str();
  app->add_option("--max-size", o.max_size, "Largest pattern size considered")->check(CLI::PositiveNumber);
  app->add_option("--tuple-budget", o.tuple_budget, "Occurrence tuples per surrogate test")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_flag("--aggressive-prune", o.aggressive,
                "Also prune on child and same-position surrogates (may miss closed patterns)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed and maximal frequent embedded subtree mining"};
  app.name("treemine");
  app.require_subcommand(1);

  MineOptions mine_opts;
  auto* mine_cmd = app.add_subcommand("mine", "Mine patterns from a tree");
  add_mining_flags(mine_cmd, mine_opts);
  mine_cmd->add_option("--target", mine_opts.target, "Pattern family")
      ->check(CLI::IsMember({"frequent", "closed", "maximal"}))
      ->capture_default_str();
  mine_cmd->add_option("--out,-o", mine_opts.out, "Pattern output, '-' for stdout")->capture_default_str();
  mine_cmd->add_flag("--json", mine_opts.json, "One JSON object per pattern");
  mine_cmd->add_option("--report", mine_opts.report, "Write a JSON run report, '-' for stdout");
  mine_cmd->add_flag("--include-singletons", mine_opts.singletons, "Also list frequent single labels");

  MineOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Compare miner output with the brute-force oracle");
  add_mining_flags(verify_cmd, verify_opts);

  GenOptions gen_opts;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random tree");
  auto& g = gen_opts.profile;
  gen_cmd->add_option("--preset", gen_opts.preset, "Start from a named profile")
      ->check(CLI::IsMember([] {
        std::vector<std::string> names;
        for (const auto& p : presets()) names.push_back(p.name);
        return names;
      }()));
  gen_cmd->add_option("--seed", g.seed, "Random seed (default $TREEMINE_SEED, else the preset's, else 1)");
  gen_cmd->add_option("--nodes", g.node_count, "Nodes per tree")->capture_default_str();
  gen_cmd->add_option("--max-depth", g.max_depth, "Maximum depth, root at 0")->capture_default_str();
  gen_cmd->add_option("--max-fanout", g.max_fanout, "Maximum children per node")->capture_default_str();
  gen_cmd->add_option("--labels", g.label_count, "Alphabet size")->capture_default_str();
  gen_cmd->add_option("--skew", g.zipf_skew, "Zipf exponent for labels")->capture_default_str();
  gen_cmd->add_option("--recursion", g.recursion_rate, "Chance of repeating an ancestor label")->capture_default_str();
  gen_cmd->add_option("--regularity", g.regularity, "Chance of following the label schema")->capture_default_str();
  gen_cmd->add_option("--record-fanout", g.record_fanout, "Mean children of non-root nodes")->capture_default_str();
  gen_cmd->add_option("--depth-bias", g.depth_bias, "Chance of growing the newest branch when filling up")
      ->capture_default_str();
  gen_cmd->add_option("--trees", gen_opts.trees, "Trees to emit, one per line")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--out,-o", gen_opts.out, "Output, '-' for stdout")->capture_default_str();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*mine_cmd) return cmd_mine(mine_opts, in, out);
    if (*verify_cmd) return cmd_verify(verify_opts, in, out, err);
    if (*gen_cmd) {
      // Seed: the flag, then $TREEMINE_SEED, then the preset's, then 1.
      const bool seed_given = gen_cmd->count("--seed") > 0;
      if (!seed_given) g.seed = env_seed().value_or(1);
      if (!gen_opts.preset.empty()) {
        auto p = find_preset(gen_opts.preset);
        GenProfile merged = p->profile;
        if (seed_given || env_seed()) merged.seed = g.seed;
        auto take = [&](const char* flag, auto member) {
          if (gen_cmd->count(flag)) merged.*member = g.*member;
        };
        take("--nodes", &GenProfile::node_count);
        take("--max-depth", &GenProfile::max_depth);
        take("--max-fanout", &GenProfile::max_fanout);
        take("--labels", &GenProfile::label_count);
        take("--skew", &GenProfile::zipf_skew);
        take("--recursion", &GenProfile::recursion_rate);
        take("--regularity", &GenProfile::regularity);
        take("--record-fanout", &GenProfile::record_fanout);
        take("--depth-bias", &GenProfile::depth_bias);
        gen_opts.profile = merged;
        gen_opts.preset.clear();
      }
      return cmd_gen(gen_opts, out);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: input " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace treemine::cli
