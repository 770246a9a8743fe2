#include "obtf/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "obtf/cache.hpp"
#include "obtf/census.hpp"
#include "obtf/cgraph.hpp"
#include "obtf/error.hpp"
#include "obtf/text.hpp"
#include "obtf/verify.hpp"

namespace obtf::cli {

namespace {

/// Error carrying its exit status up to run().
struct Exit {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Exit{kUserError, "cannot open " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<std::string> cache_path(const RunConfig& cfg) {
  if (cfg.cache) return cfg.cache;
  if (const char* env = std::getenv("OBTF_CACHE"); env != nullptr && *env != '\0') return std::string(env);
  return std::nullopt;
}

std::string vertex_list(const std::vector<int>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i] + 1);
  return s + "}";
}

std::string edge_list(const std::vector<Edge>& es) {
  std::string s = "{";
  for (std::size_t i = 0; i < es.size(); ++i) {
    s += (i ? ", " : "") + std::to_string(es[i].u + 1) + "-" + std::to_string(es[i].v + 1) + " " +
         color_letter(es[i].color);
  }
  return s + "}";
}

void print_json(std::ostream& out, const nlohmann::ordered_json& j) { out << j.dump(2) << '\n'; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// ---- census ----------------------------------------------------------------

int cmd_census(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.quantity) throw Exit{kUserError, "census needs --quantity"};
  const Quantity q = parse_quantity(*cfg.quantity);
  const IntRange range = parse_range(cfg.range.value_or("1..4"));
  const Method m = cfg.method ? parse_method(*cfg.method) : default_method(q);
  std::vector<std::optional<Convention>> conventions;
  if (uses_convention(q)) {
    if (cfg.convention) {
      conventions.emplace_back(parse_convention(*cfg.convention));
    } else {
      conventions = {Convention::kNonEmpty, Convention::kAllowEmpty};
    }
  } else {
    if (cfg.convention) throw Exit{kUserError, std::string(to_string(q)) + " takes no --convention"};
    conventions.emplace_back(std::nullopt);
  }
  const int cap = max_n(q, m, cfg.big);
  if (range.lo < 0 || range.hi > cap) {
    std::string msg = std::string(to_string(q)) + " via " + std::string(to_string(m)) +
                      " is limited to 0 <= n <= " + std::to_string(cap);
    if (!cfg.big && max_n(q, m, true) > cap) msg += " (use --big)";
    throw Exit{kUserError, msg};
  }

  const auto path = cache_path(cfg);
  std::vector<CensusRecord> cached = path ? load_cache(*path) : std::vector<CensusRecord>{};
  std::vector<CensusRecord> records;
  const EngineOptions opts{cfg.workers, cfg.big};
  for (int n = range.lo; n <= range.hi; ++n) {
    for (const auto& c : conventions) {
      if (auto hit = find_cached(cached, q, n, c, m)) {
        records.push_back(*hit);
        continue;
      }
      CensusRecord r = compute(q, n, c, m, opts);
      if (path) append_record(*path, r);
      records.push_back(r);
    }
  }

  switch (cfg.format) {
    case OutputFormat::kJson: {
      nlohmann::ordered_json j;
      j["records"] = nlohmann::ordered_json::array();
      for (const auto& r : records) j["records"].push_back(to_json(r));
      print_json(out, j);
      break;
    }
    case OutputFormat::kCsv:
      out << "quantity,n,convention,value,method,wall_time,checksum\n";
      for (const auto& r : records) {
        out << to_string(r.quantity) << ',' << r.n << ',' << (r.convention ? to_string(*r.convention) : "")
            << ',' << r.value << ',' << to_string(r.method) << ',' << r.wall_time << ',' << r.checksum << '\n';
      }
      break;
    case OutputFormat::kTable:
      out << std::left << std::setw(9) << "quantity" << std::setw(4) << "n" << std::setw(11) << "convention"
          << std::setw(22) << "value" << std::setw(19) << "method" << "checksum\n";
      for (const auto& r : records) {
        out << std::left << std::setw(9) << to_string(r.quantity) << std::setw(4) << r.n << std::setw(11)
            << (r.convention ? to_string(*r.convention) : "-") << std::setw(22) << r.value << std::setw(19)
            << to_string(r.method) << r.checksum << '\n';
      }
      break;
  }
  (void)err;
  return kSuccess;
}

// ---- verify ----------------------------------------------------------------

CheckResult cache_consistency(const std::vector<CensusRecord>& cached, const IntRange& range, bool big,
                              int workers) {
  CheckResult check{"cache-consistency", range.hi, true, {}, {}};
  std::size_t compared = 0;
  for (const CensusRecord& r : cached) {
    if (r.n < range.lo || r.n > range.hi) continue;
    if (r.n > max_n(r.quantity, r.method, big)) continue;
    ++compared;
    const CensusRecord fresh = compute(r.quantity, r.n, r.convention, r.method, {workers, big});
    if (fresh.value != r.value || fresh.checksum != r.checksum) {
      check.passed = false;
      check.witness = to_json(r).dump() + "\n";
      check.detail = "cached " + std::string(to_string(r.quantity)) + "(" + std::to_string(r.n) +
                     ") = " + std::to_string(r.value) + " but recomputed " + std::to_string(fresh.value);
      return check;
    }
  }
  check.detail = std::to_string(compared) + " cached records recomputed and matched";
  return check;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const IntRange range = parse_range(cfg.range.value_or("1..3"));
  VerifyOptions opts;
  opts.n_min = range.lo;
  opts.n_max = range.hi;
  opts.workers = cfg.workers;
  opts.seed = cfg.seed;
  opts.big = cfg.big;
  if (cfg.mutant) {
    if (*cfg.mutant != "obtf-inverted") throw Exit{kUserError, "unknown mutant '" + *cfg.mutant + "'"};
    opts.hooks.is_obtf = [](const ColoredGraph& g) { return !is_obtf(g); };
  }
  const int cap = cfg.big ? kVerifyBigMax : kVerifyDefaultMax;
  if (range.lo < 1 || range.hi > cap) {
    throw Exit{kUserError, "verify range must lie in 1.." + std::to_string(cap) + (cfg.big ? "" : " (use --big for 5)")};
  }

  std::vector<CensusRecord> cached;
  if (const auto path = cache_path(cfg)) {
    cached = load_cache(*path);
    for (const CensusRecord& r : cached) {
      if (r.checksum.empty()) {
        throw Exit{kEnvironmentError, "refusing cached " + std::string(to_string(r.quantity)) + "(" +
                                          std::to_string(r.n) + ") without a checksum in " + *path};
      }
    }
  }

  VerifyReport report = verify_identities(opts);
  if (!cached.empty()) report.checks.push_back(cache_consistency(cached, range, cfg.big, cfg.workers));

  switch (cfg.format) {
    case OutputFormat::kJson: {
      nlohmann::ordered_json j;
      j["passed"] = report.all_passed();
      j["checks"] = nlohmann::ordered_json::array();
      for (const auto& c : report.checks) {
        j["checks"].push_back({{"name", c.name}, {"n", c.n}, {"passed", c.passed}, {"detail", c.detail},
                               {"witness", c.witness}});
      }
      j["notes"] = report.notes;
      j["ratios"] = nlohmann::ordered_json::array();
      for (const auto& r : report.ratios) {
        nlohmann::ordered_json row{{"n", r.n}, {"F", r.f}, {"B", r.b}, {"b", r.b_n},
                                   {"F_over_b", r.f_ratio()}, {"B_over_b", r.b_ratio()}};
        row["G_over_2^C(n+1,2)"] = r.g_ratio() ? nlohmann::ordered_json(*r.g_ratio()) : nlohmann::ordered_json();
        j["ratios"].push_back(row);
      }
      print_json(out, j);
      break;
    }
    case OutputFormat::kCsv:
      out << "name,n,passed,detail\n";
      for (const auto& c : report.checks) {
        out << csv_field(c.name) << ',' << c.n << ',' << (c.passed ? "true" : "false") << ','
            << csv_field(c.detail) << '\n';
      }
      break;
    case OutputFormat::kTable: {
      for (const auto& c : report.checks) {
        out << (c.passed ? "PASS" : "FAIL") << "  n=" << c.n << "  " << std::left << std::setw(28) << c.name
            << c.detail << '\n';
        if (!c.passed && !c.witness.empty()) {
          std::istringstream w(c.witness);
          for (std::string line; std::getline(w, line);) out << "      | " << line << '\n';
        }
      }
      if (!report.notes.empty()) out << "\nnotes\n";
      for (const auto& note : report.notes) out << "  " << note << '\n';
      out << "\nratios (descriptive)\n";
      out << std::left << std::setw(4) << "n" << std::setw(14) << "F(n)" << std::setw(14) << "B(n)"
          << std::setw(14) << "b(n)" << std::setw(12) << "F/b" << std::setw(12) << "B/b" << "G/2^C(n+1,2)\n";
      for (const auto& r : report.ratios) {
        std::ostringstream g;
        if (r.g_ratio()) {
          g << std::fixed << std::setprecision(6) << *r.g_ratio();
        } else {
          g << "-";
        }
        out << std::left << std::setw(4) << r.n << std::setw(14) << r.f << std::setw(14) << r.b << std::setw(14)
            << std::setprecision(0) << std::fixed << r.b_n << std::setprecision(6) << std::setw(12)
            << r.f_ratio() << std::setw(12) << r.b_ratio() << g.str() << '\n';
        out.unsetf(std::ios::fixed);
      }
      out << '\n' << (report.all_passed() ? "all checks passed" : "verification FAILED") << '\n';
      break;
    }
  }
  if (!report.all_passed()) {
    err << "verification failed\n";
    return kVerificationFailed;
  }
  return kSuccess;
}

// ---- analyze ---------------------------------------------------------------

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.path) throw Exit{kUserError, "analyze needs a graph file"};
  const ColoredGraph g = parse_graph(read_file(*cfg.path));

  nlohmann::ordered_json j;
  j["n"] = g.n();
  j["edges"] = g.edge_count();
  j["obtf"] = is_obtf(g);
  if (auto b = find_blue_bipartition(g)) {
    std::vector<int> u, w;
    for (int v = 0; v < g.n(); ++v) (b->side[v] == Side::kU ? u : w).push_back(v + 1);
    j["blue_bipartition"] = {{"U", u}, {"W", w}};
  } else {
    j["blue_bipartition"] = nullptr;
  }
  std::vector<std::string> skipped;
  if (g.n() <= kMaxKappaVertices) {
    const VertexDeletion k = kappa(g);
    j["kappa"] = {{"value", k.size}, {"witness", vertex_list(k.vertices)}};
  } else {
    skipped.push_back("kappa (n > " + std::to_string(kMaxKappaVertices) + ")");
  }
  if (g.edge_count() <= kMaxGammaEdges) {
    const EdgeDeletion e = gamma(g);
    j["gamma"] = {{"value", e.size}, {"witness", edge_list(e.edges)}};
  } else {
    skipped.push_back("gamma (|E| > " + std::to_string(kMaxGammaEdges) + ")");
  }
  j["eta"] = eta(g);
  j["triangle_connected"] = is_triangle_connected(g);
  if (g.n() <= kMaxVariables && g.edge_count() <= kMaxOrientationEdges) {
    const auto posets = posets_of_graph(g);
    j["poset_count"] = posets.size();
    j["posets"] = nlohmann::ordered_json::array();
    for (const auto& p : posets) j["posets"].push_back(format_poset(p));
  } else {
    skipped.push_back("posets (n > " + std::to_string(kMaxVariables) + ")");
  }
  j["skipped"] = skipped;

  if (cfg.format == OutputFormat::kJson) {
    print_json(out, j);
  } else if (cfg.format == OutputFormat::kCsv) {
    out << "field,value\n";
    for (const auto& [key, value] : j.items()) {
      if (key == "posets") continue;
      out << key << ',' << csv_field(value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
  } else {
    out << "n: " << g.n() << '\n' << "edges: " << g.edge_count() << '\n';
    out << "obtf: " << (is_obtf(g) ? "true" : "false") << '\n';
    if (j["blue_bipartition"].is_null()) {
      out << "blue_bipartition: none\n";
    } else {
      out << "blue_bipartition: U=" << j["blue_bipartition"]["U"].dump() << " W="
          << j["blue_bipartition"]["W"].dump() << '\n';
    }
    if (j.contains("kappa")) {
      out << "kappa: " << j["kappa"]["value"] << " " << j["kappa"]["witness"].get<std::string>() << '\n';
    }
    if (j.contains("gamma")) {
      out << "gamma: " << j["gamma"]["value"] << " " << j["gamma"]["witness"].get<std::string>() << '\n';
    }
    out << "eta: " << j["eta"] << '\n';
    out << "triangle_connected: " << (is_triangle_connected(g) ? "true" : "false") << '\n';
    if (j.contains("poset_count")) {
      out << "posets: " << j["poset_count"] << '\n';
      int k = 0;
      for (const auto& p : j["posets"]) out << "# poset " << ++k << '\n' << p.get<std::string>();
    }
    for (const auto& s : skipped) out << "skipped: " << s << '\n';
  }
  (void)err;
  return kSuccess;
}

// ---- posets ----------------------------------------------------------------

int cmd_posets(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  nlohmann::ordered_json j;
  if (cfg.formula_path) {
    const Formula f = parse_formula(read_file(*cfg.formula_path));
    const TruthTable t = truth_table(f);
    j["n"] = f.n();
    j["clauses"] = f.clauses().size();
    j["satisfying"] = t.size();
    j["table_bits"] = t.bits();
    j["elementary"] = is_elementary(t);
    if (t.satisfiable()) {
      std::vector<int> sp;
      for (const auto& e : spine(t)) sp.push_back(e.value ? e.var + 1 : -(e.var + 1));
      j["spine"] = sp;
      std::vector<std::string> pairs;
      for (const auto& a : associated_pairs(t)) {
        pairs.push_back(std::to_string(a.i + 1) + (a.equal ? "=" : "!=") + std::to_string(a.j + 1));
      }
      j["associated_pairs"] = pairs;
    }
    if (is_elementary(t)) {
      const LiteralPoset p = implication_poset(f);
      j["poset"] = format_poset(p);
      j["graph"] = format_graph(graph_of_poset(p));
    }
  } else if (cfg.poset_path) {
    const LiteralPoset p = parse_poset(read_file(*cfg.poset_path));
    const TruthTable t = poset_to_function(p);
    j["n"] = p.n();
    j["relations"] = p.relation_count();
    j["satisfying"] = t.size();
    j["table_bits"] = t.bits();
    j["formula"] = format_formula(poset_formula(p));
    j["graph"] = format_graph(graph_of_poset(p));
  } else {
    const IntRange range = parse_range(cfg.range.value_or("1..5"));
    if (range.lo < 0 || range.hi > kMaxCoverPoints) {
      throw Exit{kUserError, "cover multiplicity limited to 0 <= m <= " + std::to_string(kMaxCoverPoints)};
    }
    j["cover_multiplicity"] = nlohmann::ordered_json::array();
    for (int m = range.lo; m <= range.hi; ++m) {
      const CoverMultiplicity r = posets_per_cover_graph(m);
      std::string witness;
      for (const auto& [u, v] : r.witness) witness += (witness.empty() ? "" : " ") + std::to_string(u + 1) + "-" + std::to_string(v + 1);
      j["cover_multiplicity"].push_back(
          {{"m", m}, {"posets", r.poset_count}, {"max_multiplicity", r.max_multiplicity}, {"witness", witness}});
    }
  }

  if (cfg.format == OutputFormat::kJson) {
    print_json(out, j);
  } else if (cfg.format == OutputFormat::kCsv && j.contains("cover_multiplicity")) {
    out << "m,posets,max_multiplicity,witness\n";
    for (const auto& row : j["cover_multiplicity"]) {
      out << row["m"] << ',' << row["posets"] << ',' << row["max_multiplicity"] << ','
          << csv_field(row["witness"].get<std::string>()) << '\n';
    }
  } else {
    for (const auto& [key, value] : j.items()) {
      if (key == "cover_multiplicity") {
        out << std::left << std::setw(4) << "m" << std::setw(10) << "posets" << std::setw(18) << "max_per_cover"
            << "witness cover graph\n";
        for (const auto& row : value) {
          out << std::left << std::setw(4) << row["m"].get<int>() << std::setw(10) << row["posets"].get<std::uint64_t>()
              << std::setw(18) << row["max_multiplicity"].get<std::uint64_t>() << row["witness"].get<std::string>()
              << '\n';
        }
      } else if (value.is_string()) {
        out << key << ":\n" << value.get<std::string>();
      } else {
        out << key << ": " << value.dump() << '\n';
      }
    }
  }
  (void)err;
  return kSuccess;
}

}  // namespace

IntRange parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = text::parse_int(s, 0);
      return {v, v};
    }
    const IntRange r{text::parse_int(s.substr(0, dots), 0), text::parse_int(s.substr(dots + 2), 0)};
    if (r.lo > r.hi) throw std::invalid_argument("empty range '" + s + "'");
    return r;
  } catch (const ParseError&) {
    throw std::invalid_argument("bad range '" + s + "' (expected N or A..B)");
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact enumeration and verification for 2-SAT functions and OBTF graphs", "obtf"};
  app.require_subcommand(1);

  const std::map<std::string, OutputFormat> formats{
      {"table", OutputFormat::kTable}, {"json", OutputFormat::kJson}, {"csv", OutputFormat::kCsv}};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "table | json | csv")->transform(CLI::CheckedTransformer(formats));
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--cache", cfg.cache, "census cache (JSON lines); default $OBTF_CACHE");
    sub->add_option("--seed", cfg.seed, "seed for sampled property checks");
    sub->add_flag("--big", cfg.big, "unlock stretch sizes (F(7), verify at n = 5)");
  };

  auto* census = app.add_subcommand("census", "exact counts G, H, Pn, F, B");
  common(census);
  census->add_option("--quantity", cfg.quantity, "G | H | Pn | F | B")->required();
  census->add_option("--n,--range", cfg.range, "N or A..B (default 1..4)");
  census->add_option("--convention", cfg.convention, "t0 (empty formula allowed) | t1; both by default");
  census->add_option("--method", cfg.method, "engine override");

  auto* verify = app.add_subcommand("verify", "run every finite check");
  common(verify);
  verify->add_option("--n,--range", cfg.range, "N or A..B (default 1..3)");
  verify->add_option("--mutant", cfg.mutant)->group("");

  auto* analyze = app.add_subcommand("analyze", "analyze one colored graph file");
  common(analyze);
  analyze->add_option("path", cfg.path, "colored-graph file")->required();

  auto* posets = app.add_subcommand("posets", "literal posets and cover-graph multiplicity");
  common(posets);
  posets->add_option("--n,--range", cfg.range, "point counts m for cover multiplicity (default 1..5)");
  auto* formula_opt = posets->add_option("--formula", cfg.formula_path, "formula file: show P_F and G(P_F)");
  posets->add_option("--poset", cfg.poset_path, "poset file: show its function and G(P)")->excludes(formula_opt);

  std::vector<std::string> argv_store{"obtf"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  }

  try {
    if (census->parsed()) return cmd_census(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (analyze->parsed()) return cmd_analyze(cfg, out, err);
    return cmd_posets(cfg, out, err);
  } catch (const Exit& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const CacheError& e) {
    err << "error: " << e.what() << '\n';
    return kEnvironmentError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUserError;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kEnvironmentError;
  }
}

}  // namespace obtf::cli
