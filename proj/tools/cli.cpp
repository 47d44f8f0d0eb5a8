#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "swq/datagen.hpp"
#include "swq/error.hpp"
#include "swq/io.hpp"
#include "swq/query/executor.hpp"
#include "swq/query/parser.hpp"
#include "swq/query/planner.hpp"

namespace swq::cli {

namespace {

using json = nlohmann::ordered_json;

struct IndexFlags {
  std::string index = "grid";
  std::string metric = "planar";
  std::optional<double> cell_side;
  std::size_t leaf_capacity = 8;
  std::uint32_t max_depth = 32;

  query::IndexOptions options() const {
    query::IndexOptions o;
    o.cell_side = cell_side;
    o.quadtree.leaf_capacity = leaf_capacity;
    o.quadtree.max_depth = max_depth;
    return o;
  }
  Metric parsed_metric() const { return metric == "haversine" ? Metric::Haversine : Metric::Planar; }
  query::IndexKind parsed_index() const { return *query::parse_index(index); }
};

void add_index_flags(CLI::App* cmd, IndexFlags& f) {
  cmd->add_option("--index", f.index, "Spatial index")
      ->check(CLI::IsMember({"grid", "quadtree", "none"}));
  cmd->add_option("--metric", f.metric, "Distance metric")
      ->check(CLI::IsMember({"planar", "haversine"}));
  cmd->add_option("--cell-side", f.cell_side, "Grid cell side (default: ~4 points per cell)");
  cmd->add_option("--leaf-capacity", f.leaf_capacity, "Quadtree leaf capacity")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-depth", f.max_depth, "Quadtree maximum depth")->check(CLI::PositiveNumber);
}

json counters_json(const WorkCounters& c) {
  return json{{"distance_computations", c.distance_computations},
              {"points_scanned", c.points_scanned},
              {"nodes_visited", c.nodes_visited},
              {"cells_visited", c.cells_visited},
              {"windows_materialized", c.windows_materialized}};
}

int cmd_gen(std::size_t n, const std::string& dist, std::size_t clusters, double sigma,
            std::uint64_t seed, const std::string& out_path, std::ostream& out) {
  datagen::GenOptions opts;
  opts.n = n;
  opts.distribution = dist == "clusters" ? datagen::Distribution::Clusters
                                         : datagen::Distribution::Uniform;
  opts.clusters = clusters;
  opts.sigma = sigma;
  opts.seed = seed;
  const Dataset ds = datagen::generate(opts);
  if (out_path.empty() || out_path == "-") {
    io::write_csv(ds, out);
    return kExitOk;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw IoError("cannot write '" + out_path + "'");
  io::write_csv(ds, file);
  if (!file) throw IoError("write to '" + out_path + "' failed");
  return kExitOk;
}

int cmd_query(const std::string& data, const std::string& text, const IndexFlags& f,
              std::ostream& out, std::ostream& err) {
  const Dataset ds = io::read_csv(std::filesystem::path(data));
  const auto ast = query::parse(text);
  const auto plan = query::plan(ast, ds, f.parsed_index(), f.parsed_metric(), f.options());
  const auto result = query::execute(plan, ds);
  io::write_csv(result.table, out);
  err << counters_json(result.counters).dump() << "\n";
  return kExitOk;
}

int cmd_explain(const std::string& data, const std::string& text, const IndexFlags& f,
                std::ostream& out) {
  const Dataset ds = io::read_csv(std::filesystem::path(data));
  const auto plan = query::plan(query::parse(text), ds, f.parsed_index(), f.parsed_metric(),
                                f.options());
  out << query::explain(plan);
  return kExitOk;
}

int cmd_bench(const std::string& data, const std::string& text, const std::string& executors,
              std::size_t reps, const IndexFlags& f, std::ostream& out) {
  const Dataset ds = io::read_csv(std::filesystem::path(data));
  const auto ast = query::parse(text);

  // Validate against the default plan first so binding errors surface once.
  const auto base = query::plan(ast, ds, query::IndexKind::None, f.parsed_metric(), f.options());
  if (base.groups.size() != 1)
    throw QueryError("bench needs exactly one distinct analytic window in the query");
  const WindowSpec window = base.groups.front().window;

  std::vector<query::ExecutorKind> chosen;
  if (executors.empty() || executors == "all") {
    for (auto e : {query::ExecutorKind::NaivePerPoint, query::ExecutorKind::GridPerPoint,
                   query::ExecutorKind::GridSweep, query::ExecutorKind::QtAnnotated,
                   query::ExecutorKind::QtPerPoint}) {
      try {
        query::plan_with(ast, ds, e, f.parsed_metric(), f.options());
        chosen.push_back(e);
      } catch (const QueryError&) {
        // executor not applicable to this query
      }
    }
  } else {
    std::stringstream ss(executors);
    std::string name;
    while (std::getline(ss, name, ',')) {
      auto e = query::parse_executor(name);
      if (!e) throw QueryError("unknown executor '" + name + "'");
      chosen.push_back(*e);
    }
  }

  for (auto e : chosen) {
    const auto plan = query::plan_with(ast, ds, e, f.parsed_metric(), f.options());
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto result = query::execute(plan, ds);
      const auto t1 = std::chrono::steady_clock::now();
      json rec{{"executor", query::to_string(e)},
               {"rep", rep},
               {"n", ds.size()},
               {"window_kind", window.is_knn() ? "knn" : "radius"}};
      if (window.is_knn())
        rec["param"] = window.k();
      else
        rec["param"] = window.r();
      rec.update(counters_json(result.counters));
      rec["wall_time_ns"] =
          std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
      out << rec.dump() << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatial analytic window queries over point data"};
  app.require_subcommand(1);

  std::size_t n = 0;
  std::string dist = "uniform";
  std::size_t clusters = 8;
  double sigma = 3.0;
  std::uint64_t seed = 1;
  std::string out_path;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic point CSV");
  gen->add_option("--n", n, "Number of points")->required();
  gen->add_option("--dist", dist, "Distribution")->check(CLI::IsMember({"uniform", "clusters"}));
  gen->add_option("--clusters", clusters, "Cluster count for --dist clusters")
      ->check(CLI::PositiveNumber);
  gen->add_option("--sigma", sigma, "Cluster standard deviation")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", out_path, "Output path (default: standard output)");

  std::string data, text, executors;
  std::size_t reps = 1;
  IndexFlags qflags, bflags, eflags;

  auto* qry = app.add_subcommand("query", "Run a query; CSV on stdout, counters on stderr");
  qry->add_option("--data", data, "Input CSV")->required();
  qry->add_option("--query", text, "Query text")->required();
  add_index_flags(qry, qflags);

  auto* bench = app.add_subcommand("bench", "Time executors; one JSON record per line");
  bench->add_option("--data", data, "Input CSV")->required();
  bench->add_option("--query", text, "Query text")->required();
  bench->add_option("--executors", executors,
                    "Comma-separated executors (NaivePerPoint, GridPerPoint, GridSweep, "
                    "QtAnnotated, QtPerPoint) or 'all'");
  bench->add_option("--reps", reps, "Repetitions per executor")->check(CLI::PositiveNumber);
  add_index_flags(bench, bflags);

  auto* expl = app.add_subcommand("explain", "Show the chosen plan");
  expl->add_option("--data", data, "Input CSV")->required();
  expl->add_option("--query", text, "Query text")->required();
  add_index_flags(expl, eflags);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitData;
  }

  try {
    if (gen->parsed()) return cmd_gen(n, dist, clusters, sigma, seed, out_path, out);
    if (qry->parsed()) return cmd_query(data, text, qflags, out, err);
    if (bench->parsed()) return cmd_bench(data, text, executors, reps, bflags, out);
    if (expl->parsed()) return cmd_explain(data, text, eflags, out);
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const QueryError& e) {
    err << "error: " << e.what() << "\n";
    return kExitQuery;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitQuery;
  }
  return kExitData;
}

}  // namespace swq::cli
