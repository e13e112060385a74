// inam: command-line front end for the library.
//
//   inam build cc --graph FILE --radius R [--format json|dot] [--out PATH]
//   inam tree ball|classify|amine|phi ...
//   inam classify graph-product|raag|racg|amalgam|hnn|wreath --spec FILE [--assume k=v]...
//   inam verify SUITE [--trials N] [--seed S] [--radius R] [--spec FILE]
//
// Exit codes: 0 success or definite verdict, 2 ConditionalOn, 1 error or a
// failed verification.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "inam/inam.hpp"

using nlohmann::json;

namespace {

struct Common {
  std::string arith = "exact";
  std::size_t cap = 0;
  std::string out;
  std::string format = "json";
};

// Writes via a temporary file and rename so readers never see partial output.
void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw inam::Error(inam::ErrorCode::io, "cannot write " + tmp);
    os << text;
    if (text.empty() || text.back() != '\n') os << '\n';
    if (!os) throw inam::Error(inam::ErrorCode::io, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw inam::Error(inam::ErrorCode::io, "cannot rename " + tmp + ": " + ec.message());
}

std::size_t cap_of(const Common& c) { return c.cap ? c.cap : inam::default_cap(); }

// Accepts a graph_product spec or a bare graph (all vertex groups Z/2
// unless an "orders" list is given).
inam::GraphProductCtx graph_product_from_file(const std::string& path) {
  json j = inam::read_json_file(path);
  if (j.contains("kind")) {
    auto g = inam::parse_group_spec(j);
    auto gp = std::dynamic_pointer_cast<const inam::GraphProductGroup>(g);
    if (!gp) throw inam::Error(inam::ErrorCode::schema, "expected a graph_product spec", path);
    return gp;
  }
  const json& gj = j.contains("graph") ? j["graph"] : j;
  auto graph = inam::SimpGraph::from_json(gj, "graph");
  std::vector<std::int64_t> orders(graph.size(), 2);
  if (j.contains("orders")) orders = j["orders"].get<std::vector<std::int64_t>>();
  if (static_cast<int>(orders.size()) != graph.size())
    throw inam::Error(inam::ErrorCode::schema, "one order per vertex", "orders");
  return inam::catalog::cyclic_graph_product(graph, orders);
}

int cmd_build_cc(const Common& c, const std::string& graph_path, int radius) {
  auto gp = graph_product_from_file(graph_path);
  auto ball = inam::build_x_gamma_ball(gp, radius, cap_of(c));
  std::optional<inam::HyperplaneSet> hs;
  try {
    hs = inam::hyperplane_classes(ball);
  } catch (const inam::Error& e) {
    if (e.code() != inam::ErrorCode::insufficient_interior) throw;
  }
  const inam::HyperplaneSet* hp = hs ? &*hs : nullptr;
  json stats = inam::stats_to_json(inam::complex_stats(ball, hp));
  stats["schema"] = "inam.stats/1";
  stats["radius"] = radius;
  stats["complete"] = ball.complete;
  stats["truncated"] = ball.truncated;
  if (c.format == "dot") {
    emit(inam::ball_to_dot(ball, hp), c.out);
    if (!c.out.empty()) std::cout << stats.dump(2) << '\n';
    else std::cerr << stats.dump(2) << '\n';
    return 0;
  }
  json j = inam::ball_to_json(ball, hp);
  j["stats"] = stats;
  emit(j.dump(2), c.out);
  if (!c.out.empty()) std::cout << stats.dump(2) << '\n';
  return 0;
}

inam::GroupCtx group_from_file(const std::string& path) { return inam::parse_group_spec(inam::read_json_file(path)); }

int cmd_tree_ball(const Common& c, const std::string& spec, int radius) {
  auto t = inam::bass_serre_ball(group_from_file(spec), radius, cap_of(c));
  if (c.format == "dot") {
    emit(inam::tree_to_dot(t), c.out);
    return 0;
  }
  emit(inam::tree_to_json(t).dump(2), c.out);
  return 0;
}

int cmd_tree_classify(const Common& c, const std::string& spec, const std::string& word, std::optional<int> radius) {
  auto G = group_from_file(spec);
  json wj;
  try {
    wj = json::parse(word);
  } catch (const json::parse_error& e) {
    throw inam::Error(inam::ErrorCode::schema, e.what(), "--word");
  }
  inam::Elt g;
  try {
    g = G->element_from_json(wj);
  } catch (const std::invalid_argument& e) {
    throw inam::Error(inam::ErrorCode::schema, e.what(), "--word");
  }
  const int letters = static_cast<int>(wj.size());
  const int r = radius.value_or(G->kind() == "amalgam" ? 2 * letters : letters);
  auto t = inam::bass_serre_ball(G, std::max(r, 1), cap_of(c));
  auto cls = inam::classify_isometry(g, t);
  json j{{"schema", "inam.isometry/1"},
         {"element", G->elt_to_json(g)},
         {"elliptic", cls.elliptic},
         {"translation_length", cls.translation_length},
         {"tree_radius", t.radius},
         {"conclusive", cls.conclusive},
         {"min_set_size", cls.min_set.size()}};
  j["brute_force"] = cls.brute_force ? json(*cls.brute_force) : json(nullptr);
  emit(j.dump(2), c.out);
  return 0;
}

int cmd_tree_amine(const Common& c, const std::string& spec, int radius) {
  inam::VerifyConfig cfg;
  cfg.suite = "amine";
  cfg.radius = radius;
  cfg.cap = cap_of(c);
  if (!spec.empty()) cfg.spec = inam::read_json_file(spec);
  auto rep = inam::run_suite(cfg);
  emit(rep.to_json().dump(2), c.out);
  return rep.ok() ? 0 : 1;
}

int cmd_tree_phi(const Common& c, const std::string& pvec, std::size_t samples, std::uint64_t seed) {
  inam::VerifyConfig cfg;
  cfg.suite = "phi";
  cfg.trials = samples;
  cfg.seed = seed;
  cfg.exact = c.arith != "float";
  cfg.cap = cap_of(c);
  cfg.spec = inam::read_json_file(pvec);
  if (!cfg.spec->contains("tree")) throw inam::Error(inam::ErrorCode::schema, "pvec file needs a tree spec", pvec);
  auto rep = inam::run_suite(cfg);
  emit(rep.to_json().dump(2), c.out);
  return rep.ok() ? 0 : 1;
}

int cmd_classify(const Common& c, const std::string& mode, const std::string& spec,
                 const std::vector<std::string>& assume) {
  inam::Assumptions as;
  for (const auto& a : assume) {
    auto [k, v] = inam::parse_assume_arg(a);
    as[k] = v;
  }
  auto v = inam::classify_mode(mode, inam::read_json_file(spec), as);
  emit(v.to_json().dump(2), c.out);
  return v.result == inam::Outcome::conditional ? 2 : 0;
}

int cmd_verify(const Common& c, inam::VerifyConfig cfg, const std::string& spec) {
  cfg.exact = c.arith != "float";
  cfg.cap = cap_of(c);
  if (!spec.empty()) cfg.spec = inam::read_json_file(spec);
  const auto& known = inam::verify_suites();
  if (std::find(known.begin(), known.end(), cfg.suite) == known.end())
    throw inam::Error(inam::ErrorCode::unknown_suite, "unknown suite '" + cfg.suite + "'", "verify");
  auto rep = inam::run_suite(cfg);
  emit(rep.to_json().dump(2), c.out);
  return rep.ok() ? 0 : 1;
}

void report_error(const inam::Error& e) {
  json j{{"error", inam::error_code_name(e.code())}, {"message", e.what()}, {"where", e.where()}};
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inner amenability toolkit"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--arith", c.arith, "arithmetic for means and phi")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  app.add_option("--cap", c.cap, "element/vertex cap (default from INAM_CAP or 1000000)");

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", c.out, "output path (default stdout)"); };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "export format")->check(CLI::IsMember({"json", "dot"}));
  };

  // build
  auto* build = app.add_subcommand("build", "build a cube complex ball");
  build->require_subcommand(1);
  auto* cc = build->add_subcommand("cc", "ball in the cube complex X_Gamma");
  std::string graph_path;
  int radius = 2;
  cc->add_option("--graph", graph_path, "graph_product spec or graph JSON")->required();
  cc->add_option("--radius", radius, "ball radius")->check(CLI::NonNegativeNumber);
  add_format(cc);
  add_out(cc);
  cc->callback([&] { std::exit(cmd_build_cc(c, graph_path, radius)); });

  // tree
  auto* tree = app.add_subcommand("tree", "Bass-Serre tree operations");
  tree->require_subcommand(1);
  std::string spec;
  int tree_radius = 4;
  std::optional<int> word_radius;
  std::string word;
  auto* tball = tree->add_subcommand("ball", "export a tree ball");
  tball->add_option("--spec", spec, "amalgam or hnn spec")->required();
  tball->add_option("--radius", tree_radius)->check(CLI::NonNegativeNumber);
  add_format(tball);
  add_out(tball);
  auto* tcls = tree->add_subcommand("classify", "elliptic/hyperbolic classification of an element");
  tcls->add_option("--spec", spec)->required();
  tcls->add_option("--word", word, "element as a JSON list of [label, value] pairs")->required();
  tcls->add_option("--radius", word_radius, "tree radius for the brute-force check");
  add_out(tcls);
  auto* tam = tree->add_subcommand("amine", "four-family partition check");
  int amine_radius = 8;
  tam->add_option("--spec", spec, "amalgam spec (default: both test amalgams)");
  tam->add_option("--radius", amine_radius)->check(CLI::PositiveNumber);
  add_out(tam);
  auto* tphi = tree->add_subcommand("phi", "minimizer of phi and the midpoint inequality");
  std::string pvec;
  std::size_t samples = 1000;
  std::uint64_t phi_seed = 1;
  tphi->add_option("--pvec", pvec, "file with a tree spec and a probability vector")->required();
  tphi->add_option("--samples", samples);
  tphi->add_option("--seed", phi_seed);
  add_out(tphi);
  tball->callback([&] { std::exit(cmd_tree_ball(c, spec, tree_radius)); });
  tcls->callback([&] { std::exit(cmd_tree_classify(c, spec, word, word_radius)); });
  tam->callback([&] { std::exit(cmd_tree_amine(c, spec, amine_radius)); });
  tphi->callback([&] { std::exit(cmd_tree_phi(c, pvec, samples, phi_seed)); });

  // classify
  auto* cls = app.add_subcommand("classify", "inner amenability verdict");
  std::string mode;
  std::vector<std::string> assume;
  cls->add_option("mode", mode, "graph-product|raag|racg|amalgam|hnn|wreath")
      ->required()
      ->check(CLI::IsMember({"graph-product", "raag", "racg", "amalgam", "hnn", "wreath"}));
  cls->add_option("--spec", spec, "group spec")->required();
  cls->add_option("--assume", assume, "key=true|false, repeatable");
  add_out(cls);
  cls->callback([&] { std::exit(cmd_classify(c, mode, spec, assume)); });

  // verify
  auto* ver = app.add_subcommand("verify", "randomized and exhaustive verification suites");
  inam::VerifyConfig vcfg;
  std::optional<int> vradius, vverts;
  ver->add_option("suite", vcfg.suite, "tildep|convcomp|stationary|location|amine|crossing|subsets3|isometry|phi")
      ->required();
  ver->add_option("--trials", vcfg.trials)->check(CLI::PositiveNumber);
  ver->add_option("--seed", vcfg.seed);
  ver->add_option("--radius", vradius);
  ver->add_option("--vertices", vverts, "largest graph size for crossing and subsets3");
  ver->add_option("--spec", spec);
  add_out(ver);
  ver->callback([&] {
    vcfg.radius = vradius;
    vcfg.vertices = vverts;
    std::exit(cmd_verify(c, vcfg, spec));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const inam::Error& e) {
    report_error(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}
