#include "fkn/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "fkn/cyclic_fk.hpp"
#include "fkn/diagonal.hpp"
#include "fkn/errors.hpp"
#include "fkn/json_io.hpp"
#include "fkn/parallel.hpp"
#include "fkn/reflection_groups.hpp"
#include "fkn/symmetrizer.hpp"

namespace fkn::cli {

namespace {

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

std::string join(const std::vector<std::uint32_t> &v, std::uint32_t offset = 0, const char *sep = " ") {
  if (v.empty())
    return "-";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += sep;
    s += std::to_string(v[i] + offset);
  }
  return s;
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"')
      q += '"';
    q += c;
  }
  return q + "\"";
}

// Display width in code points; table cells may contain "·".
std::size_t width(const std::string &s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

void render_table(std::ostream &os, const Table &t) {
  std::vector<std::size_t> w(t.headers.size(), 0);
  for (std::size_t c = 0; c < t.headers.size(); ++c)
    w[c] = width(t.headers[c]);
  for (const auto &r : t.rows)
    for (std::size_t c = 0; c < r.size() && c < w.size(); ++c)
      w[c] = std::max(w[c], width(r[c]));
  auto line = [&](const std::vector<std::string> &cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c)
        s += "  ";
      s += cells[c];
      if (c + 1 < cells.size())
        s += std::string(w[c] - width(cells[c]), ' ');
    }
    os << s << '\n';
  };
  line(t.headers);
  for (const auto &r : t.rows)
    line(r);
}

void render_csv(std::ostream &os, const Table &t) {
  auto line = [&](const std::vector<std::string> &cells) {
    for (std::size_t c = 0; c < cells.size(); ++c)
      os << (c ? "," : "") << csv_field(cells[c]);
    os << '\n';
  };
  line(t.headers);
  for (const auto &r : t.rows)
    line(r);
}

struct Globals {
  std::string format = "json";
  std::string output;
  unsigned jobs = 0;
};

struct SpaceArgs {
  std::vector<std::uint32_t> group;
  std::uint32_t cyclic = 0;
  std::vector<std::uint32_t> subset;
  std::uint32_t max_degree = 4;
  bool exact = false;
  bool modular = false;
  std::uint64_t seed = 1;
  std::string method = "recursive";
  std::uint64_t block_limit = 20000;
  std::string convention = "inverse";
};

DualActionConvention parse_convention(const std::string &s) {
  return s == "direct" ? DualActionConvention::Direct : DualActionConvention::Inverse;
}

void add_space_options(CLI::App *cmd, SpaceArgs &a) {
  cmd->add_option("--group", a.group, "Reflection group G(m,p,n) as three integers m p n")->expected(3);
  cmd->add_option("--cyclic", a.cyclic, "Cyclic-group braiding of order n");
  cmd->add_option("--subset", a.subset, "Labels in 1..n-1 (default: all)")->expected(1, 1 << 20);
  cmd->add_option("--max-degree", a.max_degree, "Highest degree computed")->capture_default_str();
  auto *exact = cmd->add_flag("--exact", a.exact, "Exact arithmetic over Q(zeta) (default)");
  auto *modular = cmd->add_flag("--modular", a.modular, "Arithmetic modulo a random prime");
  exact->excludes(modular);
  cmd->add_option("--seed", a.seed, "Seed for the modular prime")->capture_default_str();
  cmd->add_option("--method", a.method, "Symmetrizer assembly")
      ->check(CLI::IsMember({"recursive", "direct"}))
      ->capture_default_str();
  cmd->add_option("--block-limit", a.block_limit, "Largest orbit block (exact mode)")->capture_default_str();
  cmd->add_option("--convention", a.convention, "Dual action convention for group braidings")
      ->check(CLI::IsMember({"inverse", "direct"}))
      ->capture_default_str();
}

std::vector<std::uint32_t> full_subset(std::uint32_t n) {
  std::vector<std::uint32_t> s;
  for (std::uint32_t k = 1; k < n; ++k)
    s.push_back(k);
  return s;
}

struct SpaceChoice {
  BraidedSpace space;
  Json description;
};

SpaceChoice build_space(const SpaceArgs &a) {
  const bool has_group = !a.group.empty();
  if (has_group == (a.cyclic != 0))
    throw CLI::ValidationError("exactly one of --group and --cyclic is required");
  if (has_group) {
    if (!a.subset.empty())
      throw CLI::ValidationError("--subset applies to --cyclic only");
    const GroupParams params{a.group[0], a.group[1], a.group[2]};
    params.validate();
    auto module = yd_module(params, parse_convention(a.convention));
    return {BraidedSpace::from_yd(module), {{"group", params.to_string()}, {"dim", module.dim()}}};
  }
  if (a.cyclic < 2)
    throw DomainError("--cyclic needs n >= 2");
  const auto subset = a.subset.empty() ? full_subset(a.cyclic) : a.subset;
  auto space = BraidedSpace::from_diagonal(cyclic_braiding(a.cyclic, subset));
  for (std::size_t k = 0; k < subset.size(); ++k)
    space.label_names[k] = std::to_string(subset[k]);
  return {space, {{"cyclic", a.cyclic}, {"subset", subset}, {"dim", subset.size()}}};
}

SymmetrizerOptions symmetrizer_options(const SpaceArgs &a, unsigned jobs) {
  SymmetrizerOptions o;
  o.arithmetic = a.modular ? Arithmetic::Modular : Arithmetic::Exact;
  o.seed = a.seed;
  o.method = a.method == "direct" ? SymmetrizerMethod::Direct : SymmetrizerMethod::Recursive;
  o.block_limit = a.block_limit;
  o.jobs = jobs;
  return o;
}

std::string multidegree_string(const std::vector<std::uint32_t> &key) {
  std::string s = "(";
  for (std::size_t i = 0; i < key.size(); ++i)
    s += (i ? "," : "") + std::to_string(key[i]);
  return s + ")";
}

Table hilbert_table(const HilbertData &h) {
  Table t{{"degree", "multidegree", "dim"}, {}};
  for (std::uint32_t d = 0; d <= h.max_degree; ++d) {
    t.rows.push_back({std::to_string(d), "total", std::to_string(h.per_degree[d])});
    for (const auto &[key, dim] : h.per_multidegree) {
      std::uint32_t deg = 0;
      for (auto k : key)
        deg += k;
      if (deg == d && key.size() > 1)
        t.rows.push_back({std::to_string(d), multidegree_string(key), std::to_string(dim)});
    }
  }
  return t;
}

struct Report {
  Json json;
  Table table;
  int exit_code = kExitOk;
};

Json header(const std::string &command) { return {{"schemaVersion", kSchemaVersion}, {"command", command}}; }

Report groupoid_check(std::uint32_t n, const std::vector<std::uint32_t> &subset_arg, std::size_t max_objects) {
  if (n < 2)
    throw DomainError("groupoid check: n must be at least 2");
  const auto subset = subset_arg.empty() ? full_subset(n) : subset_arg;
  const auto braiding = cyclic_braiding(n, subset);
  const auto result = explore_groupoid(braiding, max_objects);
  Report r;
  r.json = header("groupoid check");
  r.json["n"] = n;
  r.json["subset"] = subset;
  r.json.update(exploration_json(braiding, result));
  r.table = {{"n", "status", "objects", "witness", "failingVertex"},
             {{std::to_string(n), to_string(result.status), std::to_string(result.objects.size()),
               result.status == ExplorationStatus::FailsAt ? join(result.witness, 1) : "-",
               result.status == ExplorationStatus::FailsAt ? std::to_string(result.failing_vertex + 1) : "-"}}};
  return r;
}

bool conjecture_predicate(std::uint32_t n) { return n == 4 || is_prime(n); }

Report groupoid_sweep(std::uint32_t max_n, const SweepOptions &opts, bool timings, bool expect_conjecture,
                      std::ostream &err) {
  const auto report = sweep_groupoid_existence(max_n, opts);
  Report r;
  r.json = header("groupoid sweep");
  r.json.update(sweep_report_json(report, timings));
  std::vector<std::uint32_t> mismatches;
  for (const auto &e : report.entries)
    if ((e.status == ExplorationStatus::Exists) != conjecture_predicate(e.n))
      mismatches.push_back(e.n);
  r.json["conjectureMismatches"] = mismatches;
  r.table.headers = {"n", "status", "method", "witness", "failingVertex", "inheritedFrom"};
  if (timings)
    r.table.headers.push_back("elapsed");
  for (const auto &e : report.entries) {
    const bool fails = e.status == ExplorationStatus::FailsAt;
    std::vector<std::string> row{std::to_string(e.n), to_string(e.status), to_string(e.method),
                                 fails ? join(e.witness, 1) : "-",
                                 fails ? std::to_string(e.failing_vertex + 1) : "-",
                                 e.inherited_from ? std::to_string(*e.inherited_from) : "-"};
    if (timings) {
      std::ostringstream os;
      os << e.elapsed;
      row.push_back(os.str());
    }
    r.table.rows.push_back(std::move(row));
  }
  if (expect_conjecture && !mismatches.empty()) {
    err << "sweep: " << mismatches.size() << " value(s) disagree with the prime-or-4 predicate, first n = "
        << mismatches.front() << '\n';
    r.exit_code = kExitDomain;
  }
  return r;
}

Report subsystems(std::uint32_t n, std::uint32_t max_rank, const SubsystemOptions &opts) {
  const auto records = enumerate_finite_subsystems(n, max_rank, opts);
  Report r;
  r.json = header("subsystems");
  r.json["n"] = n;
  r.json["maxRank"] = max_rank;
  Json list = Json::array();
  for (const auto &rec : records)
    list.push_back(subsystem_json(rec));
  r.json["records"] = std::move(list);
  r.table = {{"subset", "rank", "members", "cartanType", "finite", "roots", "dimension", "factorization", "minimalN",
              "annotation"},
             {}};
  for (const auto &rec : records)
    r.table.rows.push_back({join(rec.representative, 0, ","), std::to_string(rec.representative.size()),
                            std::to_string(rec.members.size()), rec.cartan_type ? "yes" : "no",
                            rec.finite ? "yes" : "no",
                            rec.positive_root_count ? std::to_string(*rec.positive_root_count) : "-",
                            rec.dimension ? std::to_string(*rec.dimension) : "-",
                            rec.factorization.empty() ? "-" : rec.factorization, std::to_string(rec.minimal_n),
                            rec.annotation.empty() ? "-" : rec.annotation});
  return r;
}

Report group_info(const GroupParams &params) {
  Report r;
  r.json = header("group info");
  const auto info = group_info_json(params);
  r.json.update(info);
  r.table = {{"field", "value"},
             {{"group", params.to_string()},
              {"order", info["order"].get<std::string>()},
              {"reflections", std::to_string(info["reflections"].get<std::uint64_t>())},
              {"reflectionFormula", std::to_string(info["reflectionFormula"].get<std::uint64_t>())}}};
  for (const auto &row : info["reflectionsByOrder"])
    r.table.rows.push_back({"reflections of order " + std::to_string(row["order"].get<std::uint32_t>()),
                            std::to_string(row["count"].get<std::uint64_t>())});
  return r;
}

Report yd_decompose(const GroupParams &params, DualActionConvention convention) {
  params.validate();
  const auto module = yd_module(params, convention);
  Report r;
  r.json = header("yd decompose");
  const auto info = yd_decomposition_json(module);
  r.json.update(info);
  r.table = {{"summand", "dim", "basis"}, {}};
  for (const auto &s : info["summands"]) {
    std::string basis;
    for (const auto &b : s["basis"])
      basis += (basis.empty() ? "" : " ") + b.get<std::string>();
    r.table.rows.push_back({s["label"].get<std::string>(), std::to_string(s["dim"].get<std::uint64_t>()), basis});
  }
  return r;
}

Report hilbert(const std::string &command, const SpaceArgs &a, unsigned jobs) {
  const auto choice = build_space(a);
  const auto opts = symmetrizer_options(a, jobs);
  Report r;
  r.json = header(command);
  r.json["space"] = choice.description;
  r.json["arithmetic"] = a.modular ? "modular" : "exact";
  if (a.modular) {
    const auto spec = ModularSpec::find(choice.space.scalar_order, a.seed);
    r.json["prime"] = spec.prime;
    r.json["seed"] = a.seed;
  }
  const auto &labels = choice.space.label_names;
  if (command == "hilbert compare") {
    if (a.max_degree < 2)
      throw DomainError("hilbert compare: --max-degree must be at least 2");
    const auto c = hilbert_compare(choice.space, a.max_degree, opts);
    r.json.update(comparison_json(c, labels));
    r.table = {{"degree", "nichols", "quadratic"}, {}};
    for (std::uint32_t d = 0; d <= a.max_degree; ++d)
      r.table.rows.push_back({std::to_string(d), std::to_string(c.nichols.per_degree[d]),
                              std::to_string(c.quadratic.per_degree[d])});
    return r;
  }
  const auto h = command == "nichols hilbert" ? nichols_hilbert(choice.space, a.max_degree, opts)
                                              : quadratic_hilbert(choice.space, a.max_degree, opts);
  r.json.update(hilbert_json(h, labels));
  r.table = hilbert_table(h);
  return r;
}

Report pbw_dim(std::uint32_t n, const std::vector<std::uint32_t> &subset_arg, std::optional<std::uint32_t> series,
               std::size_t max_roots, std::size_t max_objects) {
  if (n < 2)
    throw DomainError("pbw dim: n must be at least 2");
  const auto subset = subset_arg.empty() ? full_subset(n) : subset_arg;
  const auto braiding = cyclic_braiding(n, subset);
  const auto roots = enumerate_positive_roots(braiding, max_roots, max_objects);
  Report r;
  r.json = header("pbw dim");
  r.json["n"] = n;
  r.json["subset"] = subset;
  r.table = {{"field", "value"}, {{"n", std::to_string(n)}, {"subset", join(subset, 0, ",")}}};
  const auto *list = std::get_if<std::vector<RootVector>>(&roots);
  r.json["finite"] = list != nullptr;
  if (!list) {
    r.json["dimension"] = nullptr;
    r.table.rows.push_back({"dimension", "infinite (bound exceeded)"});
    return r;
  }
  const auto dim = pbw_dimension_from_roots(braiding, *list);
  Json roots_json = Json::array();
  std::vector<std::uint32_t> orders;
  for (const auto &alpha : *list) {
    const auto order = root_label(braiding, alpha).multiplicative_order();
    orders.push_back(order);
    roots_json.push_back({{"root", alpha}, {"labelOrder", order}});
  }
  r.json["dimension"] = dim;
  r.json["positiveRoots"] = std::move(roots_json);
  r.json["factorization"] = factorization_string(orders);
  r.table.rows.push_back({"positiveRoots", std::to_string(list->size())});
  r.table.rows.push_back({"dimension", std::to_string(dim)});
  r.table.rows.push_back({"factorization", factorization_string(orders)});
  if (series) {
    Json coeffs = Json::array();
    for (const auto &c : pbw_hilbert_series_from_roots(braiding, *list, *series))
      coeffs.push_back(c.get_str());
    r.json["series"] = std::move(coeffs);
  }
  return r;
}

void emit(const Report &r, const Globals &g, std::ostream &out) {
  std::ofstream file;
  std::ostream *os = &out;
  if (!g.output.empty()) {
    file.open(g.output);
    if (!file)
      throw DomainError("cannot open output file " + g.output);
    os = &file;
  }
  if (g.format == "json")
    *os << r.json.dump(2) << '\n';
  else if (g.format == "table")
    render_table(*os, r.table);
  else
    render_csv(*os, r.table);
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Weyl groupoids, reflection-group braidings and Nichols algebra dimensions", "fkn"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "table", "csv"}))
      ->capture_default_str();
  app.add_option("--output", g.output, "Write the report to this file");
  app.add_option("--jobs", g.jobs, "Worker threads (default: FKN_JOBS, else 1)");

  auto *groupoid = app.add_subcommand("groupoid", "Weyl groupoid of cyclic-group braidings")->require_subcommand(1);
  groupoid->fallthrough();

  std::uint32_t check_n = 0;
  std::vector<std::uint32_t> check_subset;
  std::size_t max_objects = kDefaultMaxObjects;
  auto *check = groupoid->add_subcommand("check", "Explore the groupoid of one braiding")->fallthrough();
  check->add_option("n", check_n, "Order of the cyclic group")->required();
  check->add_option("--subset", check_subset, "Labels in 1..n-1 (default: all)");
  check->add_option("--max-objects", max_objects, "Exploration bound")->capture_default_str();

  std::uint32_t sweep_max = 0;
  bool verify = false, no_heuristic = false, timings = false, expect = false;
  std::uint32_t heuristic_cap = 200;
  std::string checkpoint;
  auto *sweep = groupoid->add_subcommand("sweep", "Groupoid existence for n = 2..max")->fallthrough();
  sweep->add_option("--max", sweep_max, "Largest n")->required();
  sweep->add_flag("--verify", verify, "Recompute composites instead of inheriting from divisors");
  sweep->add_flag("--no-heuristic", no_heuristic, "Skip the short-word search before exploring");
  sweep->add_option("--heuristic-cap", heuristic_cap, "Words tried by the short-word search")->capture_default_str();
  sweep->add_option("--checkpoint", checkpoint, "Append-only JSON-lines file for resuming");
  sweep->add_flag("--timings", timings, "Include per-n elapsed seconds");
  sweep->add_flag("--expect-conjecture", expect, "Exit 1 unless exactly primes and 4 have a groupoid");
  sweep->add_option("--max-objects", max_objects, "Exploration bound")->capture_default_str();

  std::uint32_t sub_n = 0, max_rank = 3;
  SubsystemOptions sub_opts;
  auto *subs = app.add_subcommand("subsystems", "Finite connected subsystems of a cyclic braiding")->fallthrough();
  subs->add_option("n", sub_n, "Order of the cyclic group")->required();
  subs->add_option("--max-rank", max_rank, "Largest subset size")->capture_default_str();
  subs->add_flag("--include-infinite", sub_opts.include_infinite, "Also list infinite classes");
  subs->add_flag("--primitive-only", sub_opts.primitive_only, "Drop classes already present for a divisor of n");
  subs->add_option("--max-roots", sub_opts.max_roots, "Positive-root bound")->capture_default_str();
  subs->add_option("--max-objects", sub_opts.max_objects, "Exploration bound")->capture_default_str();

  std::vector<std::uint32_t> mpn;
  std::string convention = "inverse";
  auto *group = app.add_subcommand("group", "Imprimitive reflection groups")->require_subcommand(1);
  group->fallthrough();
  auto *info = group->add_subcommand("info", "Order and reflection census of G(m,p,n)")->fallthrough();
  info->add_option("mpn", mpn, "m p n")->expected(3)->required();

  auto *yd = app.add_subcommand("yd", "Yetter-Drinfeld module of reflections")->require_subcommand(1);
  yd->fallthrough();
  auto *decompose = yd->add_subcommand("decompose", "Summands and braid-indecomposability")->fallthrough();
  decompose->add_option("mpn", mpn, "m p n")->expected(3)->required();
  decompose->add_option("--convention", convention, "Dual action convention")
      ->check(CLI::IsMember({"inverse", "direct"}))
      ->capture_default_str();

  SpaceArgs space_args;
  auto *nichols = app.add_subcommand("nichols", "Nichols algebra")->require_subcommand(1);
  nichols->fallthrough();
  auto *nichols_h = nichols->add_subcommand("hilbert", "Graded dimensions via the quantum symmetrizer")->fallthrough();
  add_space_options(nichols_h, space_args);
  auto *fk = app.add_subcommand("fk", "Quadratic cover")->require_subcommand(1);
  fk->fallthrough();
  auto *fk_h = fk->add_subcommand("hilbert", "Graded dimensions of T(V)/(ker(Psi+Id))")->fallthrough();
  add_space_options(fk_h, space_args);
  auto *hil = app.add_subcommand("hilbert", "Hilbert series")->require_subcommand(1);
  hil->fallthrough();
  auto *compare = hil->add_subcommand("compare", "Nichols algebra against its quadratic cover")->fallthrough();
  add_space_options(compare, space_args);

  std::uint32_t pbw_n = 0;
  std::vector<std::uint32_t> pbw_subset;
  std::optional<std::uint32_t> pbw_series;
  std::size_t max_roots = kDefaultMaxRoots;
  auto *pbw = app.add_subcommand("pbw", "PBW data of a cyclic braiding")->require_subcommand(1);
  pbw->fallthrough();
  auto *pbw_d = pbw->add_subcommand("dim", "Positive roots and dimension")->fallthrough();
  pbw_d->add_option("n", pbw_n, "Order of the cyclic group")->required();
  pbw_d->add_option("--subset", pbw_subset, "Labels in 1..n-1 (default: all)");
  pbw_d->add_option("--series", pbw_series, "Also print the Hilbert series through this degree");
  pbw_d->add_option("--max-roots", max_roots, "Positive-root bound")->capture_default_str();
  pbw_d->add_option("--max-objects", max_objects, "Exploration bound")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const unsigned jobs = g.jobs ? g.jobs : default_jobs();
  try {
    Report r;
    if (check->parsed()) {
      r = groupoid_check(check_n, check_subset, max_objects);
    } else if (sweep->parsed()) {
      SweepOptions o;
      o.heuristic_first = !no_heuristic;
      o.verify = verify;
      o.heuristic_cap = heuristic_cap;
      o.max_objects = max_objects;
      o.jobs = jobs;
      o.checkpoint = checkpoint;
      r = groupoid_sweep(sweep_max, o, timings, expect, err);
    } else if (subs->parsed()) {
      sub_opts.jobs = jobs;
      r = subsystems(sub_n, max_rank, sub_opts);
    } else if (info->parsed()) {
      r = group_info({mpn[0], mpn[1], mpn[2]});
    } else if (decompose->parsed()) {
      r = yd_decompose({mpn[0], mpn[1], mpn[2]}, parse_convention(convention));
    } else if (nichols_h->parsed()) {
      r = hilbert("nichols hilbert", space_args, jobs);
    } else if (fk_h->parsed()) {
      r = hilbert("fk hilbert", space_args, jobs);
    } else if (compare->parsed()) {
      r = hilbert("hilbert compare", space_args, jobs);
    } else if (pbw_d->parsed()) {
      r = pbw_dim(pbw_n, pbw_subset, pbw_series, max_roots, max_objects);
    }
    emit(r, g, out);
    return r.exit_code;
  } catch (const CLI::ValidationError &e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError &e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const DomainError &e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  std::vector<const char *> argv{"fkn"};
  for (const auto &a : args)
    argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace fkn::cli
