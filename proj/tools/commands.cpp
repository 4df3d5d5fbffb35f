#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "posegraph/annotations.hpp"
#include "posegraph/documents.hpp"
#include "posegraph/error.hpp"
#include "posegraph/loss.hpp"
#include "posegraph/render.hpp"
#include "posegraph/skeleton.hpp"
#include "posegraph/weights.hpp"

namespace posegraph::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path, std::string_view what) {
  if (path.empty()) throw Error(ErrorKind::kInvalidArgument, std::string(what) + " path is required");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot open " + std::string(what) + " '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Writes all files or none: every document goes to a temporary sibling first.
void write_files(const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<std::string> staged;
  try {
    for (const auto& [path, content] : files) {
      const auto tmp = path + ".tmp";
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << content;
      out.close();
      if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write '" + path + "'");
      staged.push_back(tmp);
    }
  } catch (...) {
    for (const auto& tmp : staged) std::filesystem::remove(tmp);
    throw;
  }
  for (const auto& [path, content] : files) std::filesystem::rename(path + ".tmp", path);
}

void require_out(const RunConfig& config) {
  if (config.out.empty()) throw Error(ErrorKind::kInvalidArgument, "--out is required");
}

json meta_for(const RunConfig& config) {
  return {{"tool", "posegraph"}, {"command", config.command}, {"config", config.to_json()}};
}

std::vector<std::string> meta_lines(const RunConfig& config) {
  return {"generated by posegraph " + config.command, "config: " + config.to_json().dump()};
}

Skeleton load_skeleton(const RunConfig& config) {
  return parse_skeleton(read_file(config.skeleton, "skeleton"));
}

WeightedPoseGraph load_graph(const RunConfig& config) {
  auto skeleton = load_skeleton(config);
  if (config.annotations.empty() == config.lengths.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "exactly one of --annotations and --lengths is required");
  }
  EdgeLengthStats stats;
  if (!config.annotations.empty()) {
    const auto corpus = parse_annotations(read_file(config.annotations, "annotations"), skeleton);
    stats = compute_edge_lengths(corpus, skeleton, parse_averaging_mode(config.mode));
  } else {
    stats = read_edge_stats(read_file(config.lengths, "lengths"), skeleton);
  }
  auto lengths = stats_to_lengths(stats, skeleton, config.fallback);
  return attach_lengths(std::move(skeleton), lengths);
}

Scheme scheme_for(const RunConfig& config) {
  if (config.scheme == "local" && config.radius == 0) return Scheme::global();
  return Scheme::parse(config.scheme, config.radius);
}

Layout load_layout(const RunConfig& config, const WeightedPoseGraph& graph) {
  if (config.layout.empty()) return force_directed_layout(graph);
  return parse_layout(read_file(config.layout, "layout"));
}

/// "out/p3.svg" and "out/p3" both give "out/p3".
std::string render_stem(const std::string& out) {
  const std::filesystem::path path(out);
  const auto ext = path.extension();
  if (ext == ".svg" || ext == ".dot") return path.parent_path().empty()
                                                 ? path.stem().string()
                                                 : (path.parent_path() / path.stem()).string();
  return out;
}

std::string fmt(double value) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << value;
  return s.str();
}

std::vector<std::pair<std::string, std::string>> render_documents(const RunConfig& config,
                                                                  const WeightedPoseGraph& graph,
                                                                  const WeightTable& table,
                                                                  const std::string& stem) {
  const auto lines = meta_lines(config);
  const auto layout = load_layout(config, graph);
  return {{stem + ".dot", emit_dot(graph, table, lines)},
          {stem + ".svg", emit_svg(graph, table, layout, lines)}};
}

// Loss-demo sample parsing.

Vec2 vec2(const json& j, std::string_view key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2) {
    throw Error(ErrorKind::kMalformed, "samples: '" + std::string(key) + "' must be [x, y]");
  }
  return {j[key][0].get<double>(), j[key][1].get<double>()};
}

double number(const json& j, std::string_view key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw Error(ErrorKind::kMalformed, "samples: '" + std::string(key) + "' must be a number");
  }
  return j[key].get<double>();
}

FieldSample field_sample(const json& j) {
  FieldSample s;
  s.confidence = static_cast<int>(number(j, "c"));
  s.predicted_confidence = number(j, "c_hat");
  s.vector = vec2(j, "v");
  s.predicted_vector = vec2(j, "v_hat");
  s.predicted_spread = number(j, "b_hat");
  s.scale = number(j, "s");
  s.predicted_scale = number(j, "s_hat");
  return s;
}

}  // namespace

json RunConfig::to_json() const {
  json j = {{"skeleton", skeleton}, {"scheme", scheme}, {"radius", radius}, {"mode", mode}};
  if (!annotations.empty()) j["annotations"] = annotations;
  if (!lengths.empty()) j["lengths"] = lengths;
  if (fallback) j["fallback"] = *fallback;
  if (!layout.empty()) j["layout"] = layout;
  if (!table.empty()) j["table"] = table;
  if (!samples.empty()) j["samples"] = samples;
  if (render) j["render"] = true;
  j["out"] = out;
  return j;
}

int cmd_ingest(const RunConfig& config, std::ostream& log) {
  require_out(config);
  const auto skeleton = load_skeleton(config);
  if (config.annotations.empty()) throw Error(ErrorKind::kInvalidArgument, "--annotations is required");
  const auto mode = parse_averaging_mode(config.mode);
  const auto corpus = parse_annotations(read_file(config.annotations, "annotations"), skeleton);
  const auto stats = compute_edge_lengths(corpus, skeleton, mode);
  stats_to_lengths(stats, skeleton, config.fallback);  // enforces the coverage policy
  write_files({{config.out, write_edge_stats(stats, skeleton, mode, meta_for(config))}});
  log << "instances: " << corpus.size() << "\n"
      << "edges covered: " << stats.covered_count() << "/" << skeleton.edge_count() << "\n";
  return 0;
}

int cmd_weights(const RunConfig& config, std::ostream& log) {
  require_out(config);
  const auto graph = load_graph(config);
  const auto table = build_weight_table(graph, scheme_for(config));
  std::vector<std::pair<std::string, std::string>> files{
      {config.out, write_weight_table(table, graph.skeleton(), meta_for(config))}};
  if (config.render) {
    const auto stem = std::filesystem::path(config.out).replace_extension().string();
    for (auto& doc : render_documents(config, graph, table, stem)) files.push_back(std::move(doc));
  }
  write_files(files);
  const auto v = summarize(table.vertex_weights);
  const auto e = summarize(table.edge_weights);
  log << "scheme " << table.scheme.name() << ": keypoints " << fmt(v.min) << " .. " << fmt(v.max)
      << ", connections " << fmt(e.min) << " .. " << fmt(e.max) << "\n";
  return 0;
}

int cmd_compare(const RunConfig& config, std::ostream& log) {
  require_out(config);
  if (config.radius == 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "compare always reports the global scheme; pass a radius >= 1 for the local row");
  }
  const auto graph = load_graph(config);
  const auto rows = compare_schemes(graph, config.radius);
  write_files({{config.out, write_comparison(rows, graph.skeleton(), meta_for(config))}});
  log << std::left << std::setw(12) << "scheme" << std::setw(10) << "min" << std::setw(10)
      << "max" << "ratio\n";
  for (const auto& row : rows) {
    log << std::left << std::setw(12) << row.table.scheme.name() << std::setw(10)
        << fmt(row.vertices.min) << std::setw(10) << fmt(row.vertices.max)
        << fmt(row.vertices.ratio) << "\n";
  }
  return 0;
}

int cmd_render(const RunConfig& config, std::ostream& log) {
  require_out(config);
  WeightedPoseGraph graph = load_graph(config);
  const WeightTable table = config.table.empty()
                                ? build_weight_table(graph, scheme_for(config))
                                : read_weight_table(read_file(config.table, "table"), graph.skeleton());
  const auto stem = render_stem(config.out);
  write_files(render_documents(config, graph, table, stem));
  log << "wrote " << stem << ".dot and " << stem << ".svg\n";
  return 0;
}

int cmd_loss_demo(const RunConfig& config, std::ostream& log) {
  require_out(config);
  const auto graph = load_graph(config);
  const auto& skeleton = graph.skeleton();
  const auto table = build_weight_table(graph, scheme_for(config));

  json doc;
  try {
    doc = json::parse(read_file(config.samples, "samples"));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kMalformed, std::string("samples: ") + e.what());
  }
  const double gamma = doc.value("gamma", kDefaultFocalGamma);
  const double scale_spread = doc.value("scale_spread", 1.0);

  SamplesByType samples;
  for (const auto& entry : doc.value("keypoints", json::array())) {
    const auto name = entry.value("type", std::string());
    const auto type = skeleton.find_keypoint(name);
    if (!type) throw Error(ErrorKind::kMissingWeight, "samples: unknown keypoint type '" + name + "'");
    auto& list = samples[*type];
    for (const auto& s : entry.value("samples", json::array())) list.push_back(field_sample(s));
  }

  json per_type = json::array();
  std::map<std::size_t, double> inner;
  for (const auto& [type, list] : samples) {
    const double value = type_loss(list, gamma, scale_spread);
    inner.emplace(type, value);
    per_type.push_back({{"type", skeleton.keypoints()[type].name},
                        {"samples", list.size()},
                        {"inner", value},
                        {"weight", table.vertex_weights[type]},
                        {"weighted", table.vertex_weights[type] * value}});
  }
  const double total = weighted_sum(inner, table.vertex_weights);

  // Association field: two vector and two scale components per sample,
  // weighted per connection.
  json per_connection = json::array();
  double caf_total = 0.0;
  for (const auto& entry : doc.value("connections", json::array())) {
    const auto a = skeleton.find_keypoint(entry.value("a", std::string()));
    const auto b = skeleton.find_keypoint(entry.value("b", std::string()));
    const auto edge = (a && b) ? skeleton.find_edge(*a, *b) : std::nullopt;
    if (!edge) throw Error(ErrorKind::kMissingWeight, "samples: connection is not a skeleton edge");
    double inner_sum = 0.0;
    for (const auto& s : entry.value("samples", json::array())) {
      inner_sum += bce_focal(static_cast<int>(number(s, "c")), number(s, "c_hat"), gamma);
      inner_sum += laplace_loss(vec2(s, "v1"), vec2(s, "v1_hat"), number(s, "b1_hat")) +
                   laplace_loss(vec2(s, "v2"), vec2(s, "v2_hat"), number(s, "b2_hat"));
      inner_sum += scale_loss(number(s, "s1"), number(s, "s1_hat"), scale_spread) +
                   scale_loss(number(s, "s2"), number(s, "s2_hat"), scale_spread);
    }
    const double w = table.edge_weights[*edge];
    caf_total += w * inner_sum;
    per_connection.push_back(
        {{"connection", skeleton.edge_label(*edge)}, {"inner", inner_sum}, {"weight", w}});
  }

  json meta = meta_for(config);
  meta["loss_forms"] = {
      {"confidence", "focal BCE: (1 - p_t)^gamma * -log(p_t)"},
      {"localization", "Laplace: |v - v_hat| / b_hat + log(b_hat), constants dropped"},
      {"scale", "Laplace: |1 - s_hat / s| / b_s + log(b_s), constants dropped"},
      {"note", "reference forms; the training-time parameterisation may differ by constants"}};
  json out = {{"meta", meta},
              {"scheme", table.scheme.name()},
              {"gamma", gamma},
              {"scale_spread", scale_spread},
              {"cif", {{"types", per_type}, {"total", total}}}};
  if (!per_connection.empty()) out["caf"] = {{"connections", per_connection}, {"total", caf_total}};
  write_files({{config.out, out.dump(2) + "\n"}});
  log << "weighted CIF loss (" << table.scheme.name() << "): " << fmt(total) << "\n";
  if (!per_connection.empty()) log << "weighted CAF loss: " << fmt(caf_total) << "\n";
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& log, std::ostream& err) {
  CLI::App app{"Centrality-derived training weights for pose skeletons", "posegraph"};
  app.set_config("--config", "", "TOML/INI file with option defaults; flags take precedence");
  app.require_subcommand(1);

  RunConfig config;
  std::string fallback_text;

  auto add_graph_inputs = [&](CLI::App* sub) {
    sub->add_option("--skeleton", config.skeleton, "Skeleton JSON file")->required();
    sub->add_option("--annotations", config.annotations, "COCO keypoint annotation file");
    sub->add_option("--lengths", config.lengths, "Edge-length statistics file");
    sub->add_option("--mode", config.mode, "Averaging mode")
        ->check(CLI::IsMember({"raw", "scale-normalized"}));
    sub->add_option("--fallback", fallback_text, "Length for edges no annotation covers");
    sub->add_option("--out", config.out, "Output path")->required();
  };
  auto add_scheme = [&](CLI::App* sub) {
    sub->add_option("--scheme", config.scheme, "Weighting scheme")
        ->check(CLI::IsMember({"local", "global", "equal", "crafted"}));
    sub->add_option("--radius", config.radius, "Ego-graph radius in hops (0 = global)");
  };

  auto* ingest = app.add_subcommand("ingest", "Average connection lengths over an annotation corpus");
  add_graph_inputs(ingest);

  auto* weights = app.add_subcommand("weights", "Compute a keypoint/connection weight table");
  add_graph_inputs(weights);
  add_scheme(weights);
  weights->add_flag("--render", config.render, "Also write <out>.dot and <out>.svg");
  weights->add_option("--layout", config.layout, "Template pose layout for --render");

  auto* compare = app.add_subcommand("compare", "Tabulate the local, global, equal and crafted schemes");
  add_graph_inputs(compare);
  compare->add_option("--radius", config.radius, "Ego-graph radius for the local scheme");

  auto* render = app.add_subcommand("render", "Write Graphviz and SVG views of a weight table");
  add_graph_inputs(render);
  add_scheme(render);
  render->add_option("--layout", config.layout, "Template pose layout (force-directed if omitted)");
  render->add_option("--table", config.table, "Existing weight table instead of computing one");

  auto* loss = app.add_subcommand("loss-demo", "Evaluate the weighted composite loss on sample fields");
  add_graph_inputs(loss);
  add_scheme(loss);
  loss->add_option("--samples", config.samples, "Field sample file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, log, err);
  }

  auto* chosen = app.get_subcommands().front();
  config.command = chosen->get_name();
  try {
    if (!fallback_text.empty()) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(fallback_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != fallback_text.size()) {
        throw Error(ErrorKind::kInvalidArgument, "--fallback expects a number");
      }
      config.fallback = value;
    }
    if (chosen == ingest) return cmd_ingest(config, log);
    if (chosen == weights) return cmd_weights(config, log);
    if (chosen == compare) return cmd_compare(config, log);
    if (chosen == render) return cmd_render(config, log);
    return cmd_loss_demo(config, log);
  } catch (const std::exception& e) {
    err << "posegraph " << config.command << ": error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace posegraph::cli
