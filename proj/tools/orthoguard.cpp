// Command-line front end. Exit codes: 0 success or verified, 1 negative
// verification/search result, 2 usage error or invalid input.

#include "orthoguard/orthoguard.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

namespace og = orthoguard;
using og::json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInvalid = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json read_json(const std::string& path) {
  const std::string text = read_source(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": malformed JSON (" + e.what() + ")");
  }
}

template <class F>
auto parse_with(const std::string& path, F&& f) {
  const json j = read_json(path);
  try {
    return f(j);
  } catch (const og::FormatError& e) {
    throw InputError(path + ": " + e.what());
  }
}

og::OrthoPolygon load_polygon(const std::string& path) {
  og::OrthoPolygon p = parse_with(path, og::polygon_from_json);
  const auto rep = og::validate(p);
  if (!rep.ok()) {
    std::ostringstream msg;
    msg << path << ": invalid polygon:";
    for (const auto& v : rep.violations) msg << "\n  " << og::to_string(v.kind) << ": " << v.message;
    throw InputError(msg.str());
  }
  return p;
}

og::ChromaticGuarding load_guarding(const std::string& path) { return parse_with(path, og::guarding_from_json); }
og::MulticolorTableau load_tableau(const std::string& path) { return parse_with(path, og::tableau_from_json); }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

og::Mode parse_mode(const std::string& s) { return s == "strong" ? og::Mode::Strong : og::Mode::ConflictFree; }
og::Model parse_model(const std::string& s) { return s == "l" ? og::Model::L : og::Model::R; }

json block_json(const og::ColumnRange& r) {
  if (r.empty()) return json::array();
  return {r.lo, r.hi};
}

json search_json(const og::SearchResult& r, int t) {
  json out = {{"t", t}, {"status", og::to_string(r.status)}, {"nodes", r.nodes}, {"seconds", r.seconds}};
  if (r.witness) out["witness"] = og::to_json(*r.witness);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chromatic guarding of orthogonal polygons"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate polygons");
  gen->require_subcommand(1);
  auto* gen_spike = gen->add_subcommand("spike", "Spike polygon S_m");
  int gen_m = 1;
  bool gen_stretched = false;
  gen_spike->add_option("--m", gen_m, "Spike parameter")->required()->check(CLI::Range(1, 24));
  gen_spike->add_flag("--stretched", gen_stretched, "Exponentially stretched rows");

  // info
  auto* info = app.add_subcommand("info", "Polygon statistics, or block arithmetic with `info blocks`");
  std::string info_poly;
  info->add_option("polygon", info_poly, "Polygon JSON ('-' for stdin)");
  auto* blocks = info->add_subcommand("blocks", "Block arithmetic of column k in S_m");
  int blk_m = 1;
  std::int64_t blk_k = 1;
  blocks->add_option("--m", blk_m)->required()->check(CLI::Range(1, 62));
  blocks->add_option("--k", blk_k)->required();

  // partition / decompose
  auto* partition = app.add_subcommand("partition", "Window partition as JSON");
  std::string part_poly;
  partition->add_option("polygon", part_poly)->required();
  auto* decompose = app.add_subcommand("decompose", "Guard trees of every partition node");
  std::string dec_poly;
  decompose->add_option("polygon", dec_poly)->required();

  // color
  auto* color = app.add_subcommand("color", "Strong or conflict-free r-guarding");
  std::string color_mode = "cf", color_poly;
  bool color_detailed = false;
  color->add_option("--mode", color_mode)->check(CLI::IsMember({"strong", "cf"}));
  color->add_flag("--detailed", color_detailed, "Include group, local color and flat id");
  color->add_option("polygon", color_poly)->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Check a guarding");
  std::string ver_mode = "cf", ver_vis = "r", ver_poly, ver_guards;
  verify->add_option("--mode", ver_mode)->check(CLI::IsMember({"cover", "strong", "cf"}));
  verify->add_option("--vis", ver_vis)->check(CLI::IsMember({"r", "l"}));
  verify->add_option("polygon", ver_poly)->required();
  verify->add_option("guards", ver_guards)->required();

  // search
  auto* search = app.add_subcommand("search", "Exhaustive color-count search (r-visibility)");
  search->require_subcommand(1);
  std::string s_mode = "cf", s_vis = "r", s_poly;
  int s_max_t = 16, s_t = 1;
  double s_budget = 60;
  auto* s_min = search->add_subcommand("min-colors", "Smallest feasible number of colors");
  auto* s_exists = search->add_subcommand("exists", "Decide whether t colors suffice");
  for (auto* sc : {s_min, s_exists}) {
    sc->add_option("--mode", s_mode)->check(CLI::IsMember({"strong", "cf"}));
    sc->add_option("--vis", s_vis)->check(CLI::IsMember({"r", "l"}));
    sc->add_option("--budget", s_budget, "Wall-clock seconds")->check(CLI::PositiveNumber);
    sc->add_option("polygon", s_poly)->required();
  }
  s_min->add_option("--max-t", s_max_t)->check(CLI::Range(1, 16));
  s_exists->add_option("--t", s_t)->required()->check(CLI::Range(1, 16));

  // tableau
  auto* tab = app.add_subcommand("tableau", "Multicolor tableaux");
  tab->require_subcommand(1);
  std::string tab_file, tx_vis = "r";
  int tx_m = 1, tc_t = 0, td_m = 1, tsel_mstar = 1, tr_t = 0, tr_sub_m = 0;
  bool tc_lr = false;
  std::int64_t trs_k = 2;
  std::vector<std::int64_t> tsel_choices;
  auto* t_extract = tab->add_subcommand("extract", "Tableau of a guarding of S_m");
  t_extract->add_option("--vis", tx_vis)->check(CLI::IsMember({"r", "l"}));
  t_extract->add_option("--m", tx_m)->required()->check(CLI::Range(1, 16));
  t_extract->add_option("guards", tab_file)->required();
  auto* t_check = tab->add_subcommand("check", "Conformity check");
  t_check->add_option("--t", tc_t, "Number of colors (default: the tableau's t)");
  t_check->add_flag("--left-right", tc_lr, "Also check the half-block left-right rule");
  t_check->add_option("tableau", tab_file)->required();
  auto* t_restrict = tab->add_subcommand("restrict", "Restrict to the block of column k");
  t_restrict->add_option("--k", trs_k)->required();
  t_restrict->add_option("tableau", tab_file)->required();
  auto* t_drop = tab->add_subcommand("droprows", "Delete top rows down to row parameter m");
  t_drop->add_option("--m", td_m)->required();
  t_drop->add_option("tableau", tab_file)->required();
  auto* t_select = tab->add_subcommand("select", "Select columns down to 2^{m*} - 1");
  t_select->add_option("--mstar", tsel_mstar)->required();
  t_select->add_option("--choices", tsel_choices, "Old column per new odd column")->delimiter(',');
  t_select->add_option("tableau", tab_file)->required();
  auto* t_reduce = tab->add_subcommand("reduce", "Staged reduction trace");
  t_reduce->add_option("--t", tr_t, "Number of colors (default: the tableau's t)");
  t_reduce->add_option("--sub-m", tr_sub_m, "Row parameter of the reduced tableau");
  t_reduce->add_option("tableau", tab_file)->required();

  // seq
  auto* seq = app.add_subcommand("seq", "Ruler sequence s_m");
  int seq_m = 1;
  seq->add_option("--m", seq_m)->required()->check(CLI::Range(1, 24));

  // render
  auto* render = app.add_subcommand("render", "SVG drawing");
  std::string rd_poly, rd_guards;
  og::RenderSpec rd_spec;
  render->add_option("--guards", rd_guards, "Guarding JSON to draw");
  render->add_option("--scale", rd_spec.scale)->check(CLI::PositiveNumber);
  render->add_flag("--cells", rd_spec.show_cells, "Draw the inside grid cells");
  render->add_flag("--squash", rd_spec.squash_rows, "Uniform row heights");
  render->add_option("polygon", rd_poly)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (gen_spike->parsed()) {
      emit(og::to_json(og::gen_spike(gen_m, gen_stretched)));
      return kOk;
    }

    if (blocks->parsed()) {
      og::require_column(blk_m, blk_k);
      const og::BlockInfo b = og::block_ops(blk_m, blk_k);
      json out = {{"m", b.m}, {"k", b.k}, {"depth", b.depth}, {"B", block_json(b.b)}, {"B_L", block_json(b.bl)},
                  {"B_R", block_json(b.br)}, {"B_LL", block_json(b.ll)}, {"B_LR", block_json(b.lr)},
                  {"B_RL", block_json(b.rl)}, {"B_RR", block_json(b.rr)}};
      if (b.l) out["l"] = b.l;
      if (b.r) out["r"] = b.r;
      emit(out);
      return kOk;
    }

    if (info->parsed()) {
      if (info_poly.empty()) throw InputError("info: polygon argument required (or use `info blocks`)");
      const og::OrthoPolygon p = parse_with(info_poly, og::polygon_from_json);
      const auto rep = og::validate(p);
      json out = {{"vertices", p.size()}, {"valid", rep.ok()}};
      json viol = json::array();
      for (const auto& v : rep.violations) viol.push_back({{"kind", og::to_string(v.kind)}, {"detail", v.message}});
      out["violations"] = viol;
      if (rep.ok()) {
        const og::CellGrid g(p);
        out["reflex"] = og::reflex_count(p);
        out["grid"] = {g.columns(), g.rows()};
        out["inside_cells"] = g.inside_count();
        out["canonical_classes"] = og::canonical_cells(g).size();
        if (auto s = og::recognize_spike(p)) out["spike"] = {{"m", s->first}, {"stretched", s->second}};
      }
      emit(out);
      return rep.ok() ? kOk : kInvalid;
    }

    if (partition->parsed()) {
      emit(og::to_json(og::window_partition(load_polygon(part_poly))));
      return kOk;
    }

    if (decompose->parsed()) {
      const og::GuardPlan plan = og::plan_guards(load_polygon(dec_poly));
      json nodes = json::array();
      for (std::size_t v = 0; v < plan.trees.size(); ++v) {
        json tree = og::to_json(plan.trees[v], plan.partition.nodes[v].region, plan.partition.grid);
        tree["node"] = v;
        nodes.push_back(tree);
      }
      emit({{"trees", nodes}, {"max_height", plan.max_tree_height()}, {"guards", plan.guard_count()}});
      return kOk;
    }

    if (color->parsed()) {
      const og::ChromaticGuarding g = og::coloring(load_polygon(color_poly), parse_mode(color_mode));
      emit(color_detailed ? og::to_json_detailed(g) : og::to_json(g));
      return kOk;
    }

    if (verify->parsed()) {
      const og::OrthoPolygon p = load_polygon(ver_poly);
      og::ChromaticGuarding g = load_guarding(ver_guards);
      const og::Model model = parse_model(ver_vis);
      og::Verdict v;
      if (ver_mode == "cover")
        v = og::verify_cover(p, g, model);
      else if (ver_mode == "strong") {
        if (model == og::Model::L) throw InputError("verify: strong mode is defined for --vis r only");
        v = og::verify_strong(p, g);
      } else
        v = og::verify_cf(p, g, model);
      emit(og::to_json(v));
      return v.ok ? kOk : kNegative;
    }

    if (search->parsed()) {
      if (s_vis != "r") throw InputError("search: only --vis r is supported");
      const og::OrthoPolygon p = load_polygon(s_poly);
      const og::Mode mode = parse_mode(s_mode);
      if (s_exists->parsed()) {
        const og::SearchResult r = og::exists_guarding(p, s_t, mode, s_budget);
        emit(search_json(r, s_t));
        return r.status == og::SearchStatus::Yes ? kOk : kNegative;
      }
      const og::MinColorsResult r = og::min_colors(p, mode, s_budget, s_max_t);
      json levels = json::array();
      for (std::size_t i = 0; i < r.levels.size(); ++i) levels.push_back(search_json(r.levels[i], static_cast<int>(i) + 1));
      for (auto& l : levels) l.erase("witness");
      json out = {{"status", og::to_string(r.status)}, {"upper_bound", r.upper_bound}, {"levels", levels}};
      if (r.status == og::SearchStatus::Yes) out["value"] = r.value;
      if (r.witness) out["witness"] = og::to_json(*r.witness);
      emit(out);
      return r.status == og::SearchStatus::Yes ? kOk : kNegative;
    }

    if (t_extract->parsed()) {
      og::ChromaticGuarding g = load_guarding(tab_file);
      try {
        emit(og::to_json(tx_vis == "l" ? og::extract_l(tx_m, g) : og::extract_r(tx_m, g)));
      } catch (const og::CoverageError& e) {
        std::cerr << "tableau extract: " << e.what() << "\n";
        return kNegative;
      }
      return kOk;
    }

    if (t_check->parsed()) {
      const og::MulticolorTableau T = load_tableau(tab_file);
      const int t = tc_t > 0 ? tc_t : T.t;
      json out = {{"t", t}};
      bool ok = true;
      if (auto v = og::check_conform(T, t)) {
        out["conform"] = false;
        out["violation"] = og::to_json(*v);
        ok = false;
      } else {
        out["conform"] = true;
      }
      if (tc_lr) {
        auto lr = og::check_left_right_rule(T);
        out["left_right_rule"] = !lr.has_value();
        if (lr) {
          out["left_right_violation"] = {{"k", lr->first}, {"color", lr->second}};
          ok = false;
        }
      }
      emit(out);
      return ok ? kOk : kNegative;
    }

    if (t_restrict->parsed()) {
      emit(og::to_json(og::op_restrict_block(load_tableau(tab_file), trs_k)));
      return kOk;
    }
    if (t_drop->parsed()) {
      emit(og::to_json(og::op_delete_top_rows(load_tableau(tab_file), td_m)));
      return kOk;
    }
    if (t_select->parsed()) {
      emit(og::to_json(og::op_select_columns(load_tableau(tab_file), tsel_mstar, tsel_choices)));
      return kOk;
    }

    if (t_reduce->parsed()) {
      const og::MulticolorTableau T = load_tableau(tab_file);
      const int t = tr_t > 0 ? tr_t : T.t;
      const og::ReductionTrace tr =
          tr_sub_m > 0 ? og::staged_reduction(T, t, tr_sub_m) : og::staged_reduction(T, t);
      json out = og::to_json(tr);
      const std::string problem = og::verify_trace(T, tr);
      out["trace_verified"] = problem.empty();
      if (!problem.empty()) out["trace_problem"] = problem;
      emit(out);
      return problem.empty() ? kOk : kNegative;
    }

    if (seq->parsed()) {
      const auto s = og::ruler_sequence(seq_m);
      for (std::size_t i = 0; i < s.size(); ++i) std::cout << (i ? " " : "") << s[i];
      std::cout << "\n";
      return kOk;
    }

    if (render->parsed()) {
      const og::OrthoPolygon p = load_polygon(rd_poly);
      std::optional<og::ChromaticGuarding> g;
      if (!rd_guards.empty()) g = load_guarding(rd_guards);
      std::cout << og::render_svg(p, g ? &*g : nullptr, rd_spec);
      return kOk;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const og::UnsupportedModel& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  std::cerr << "error: no command\n";
  return kInvalid;
}
