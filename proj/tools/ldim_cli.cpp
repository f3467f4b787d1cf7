// Command-line front end. Exit codes: 0 success, 1 invalid input,
// 2 search budget exceeded.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ldim/codec.hpp"
#include "ldim/constructions.hpp"
#include "ldim/error.hpp"
#include "ldim/exact.hpp"
#include "ldim/experiments.hpp"
#include "ldim/layers.hpp"
#include "ldim/poset.hpp"
#include "ldim/realiser.hpp"

using json = nlohmann::json;
using namespace ldim;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitExceeded = 2;

struct Options {
  bool json = false;
  std::string out = "-";
  std::string poset_out;
  std::string poset, realiser, code;
  unsigned n = 0, l = 1, k = 0, top = 0, m = 2;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  bool seed_given = false;
  int max_d = 32;
  std::uint64_t node_limit = 200'000'000;
  double time_limit = 600;
  std::vector<std::string> summands;
  bool binary = false;
  std::string kind;
};

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void emit(const Options& o, const std::string& text) {
  if (o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error("cannot write " + o.out);
  f << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

/// Poset text for a layer poset without materialising the dense matrix.
std::string format_layer_poset(const LayerPoset& q) {
  std::vector<Relation> rel;
  rel.reserve(q.relation_count());
  for (ElementId b = q.lower_count() + 1; b <= q.size(); ++b)
    q.for_each_below(b, [&](ElementId a) { rel.emplace_back(a, b); });
  std::sort(rel.begin(), rel.end());
  std::ostringstream out;
  out << "poset " << q.size() << '\n';
  for (auto [a, b] : rel) out << "< " << a << ' ' << b << '\n';
  return out.str();
}

json report_json(const VerificationReport& r) {
  json u = json::array();
  for (auto [x, y] : r.uncovered) u.push_back({x, y});
  return {{"valid", r.valid},
          {"max_multiplicity", r.max_multiplicity},
          {"list_count", r.list_count},
          {"multiplicity", r.multiplicity},
          {"uncovered", u}};
}

std::string report_text(const VerificationReport& r) {
  std::ostringstream out;
  out << "valid " << (r.valid ? "true" : "false") << " max_multiplicity " << r.max_multiplicity
      << '\n';
  out << "lists " << r.list_count << '\n';
  out << "uncovered " << r.uncovered.size() << '\n';
  std::size_t shown = 0;
  for (auto [x, y] : r.uncovered) {
    if (++shown > 20) break;
    out << "  " << x << ' ' << y << '\n';
  }
  return out.str();
}

SearchBudget budget_of(const Options& o) {
  SearchBudget b;
  b.d_max = o.max_d;
  b.node_limit = o.node_limit;
  b.time_limit = o.time_limit;
  return b;
}

std::string metric_lines(const std::vector<Metric>& metrics) {
  std::ostringstream out;
  for (const auto& m : metrics) out << "metric " << m.name << ' ' << m.value << '\n';
  return out.str();
}

std::string aligned(const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c)
      width[c] = std::max(width[c], r[c].size());
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << cells[c];
      if (c + 1 < cells.size()) out << std::string(width[c] - cells[c].size() + 2, ' ');
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string fmt(double v) {
  if (std::isnan(v)) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// construct -----------------------------------------------------------------

int emit_layer(const Options& o, const LayerConstruction& c, const std::string& kind) {
  if (!o.poset_out.empty()) write_file(o.poset_out, format_layer_poset(c.host));
  if (o.json) {
    json j = {{"kind", kind},
              {"n", c.host.n()},
              {"lower", c.host.lower()},
              {"upper", c.host.upper()},
              {"elements", c.host.size()},
              {"lists", c.realiser.lists},
              {"list_count", c.report.list_count},
              {"valid", c.report.valid},
              {"max_multiplicity", c.report.max_multiplicity},
              {"lower_max_multiplicity", c.layers.lower},
              {"upper_max_multiplicity", c.layers.upper}};
    emit(o, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream out;
  write_realiser(out, c.realiser);
  out << "# construction " << kind << " n=" << c.host.n() << " lower=" << c.host.lower()
      << " upper=" << c.host.upper() << '\n';
  out << "# lists " << c.report.list_count << '\n';
  out << "# max_multiplicity " << c.report.max_multiplicity << '\n';
  out << "# lower_max_multiplicity " << c.layers.lower << '\n';
  out << "# upper_max_multiplicity " << c.layers.upper << '\n';
  emit(o, out.str());
  return 0;
}

int emit_lex(const Options& o, const LexConstruction& c, const std::string& kind) {
  if (!o.poset_out.empty()) write_file(o.poset_out, format_poset(c.sum.poset));
  if (o.json) {
    json j = {{"kind", kind},
              {"elements", c.sum.poset.size()},
              {"origin", c.sum.origin},
              {"lists", c.realiser.lists},
              {"report", report_json(c.report)}};
    emit(o, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream out;
  write_realiser(out, c.realiser);
  out << "# construction " << kind << " elements=" << c.sum.poset.size() << '\n';
  out << "# lists " << c.report.list_count << '\n';
  out << "# max_multiplicity " << c.report.max_multiplicity << '\n';
  emit(o, out.str());
  return 0;
}

int run_construct(const Options& o) {
  if (o.kind == "far-layers") {
    return emit_layer(o, far_layers_realiser(o.n, o.l, o.top ? o.top : o.k), o.kind);
  }
  if (o.kind == "bipartite") {
    return emit_layer(o, bipartite_realiser(default_bipartite_graph(o.n, o.l), o.l, o.k), o.kind);
  }
  if (o.kind == "hypercube") {
    const auto g = hypercube_graph_union(o.m, o.l);
    return emit_layer(o, bipartite_realiser(g, o.l, o.k ? o.k : o.l + 1), o.kind);
  }
  if (o.kind == "lex-subst" || o.kind == "lex-add") {
    if (o.poset.empty()) throw ParameterError("--poset (index poset) is required");
    const auto index = parse_poset(slurp(o.poset));
    LocalRealiser index_realiser =
        o.realiser.empty() ? exact_ldim(index).witness : parse_realiser(slurp(o.realiser));
    if (o.summands.size() != index.size())
      throw ParameterError("need one --summand per index element (" + std::to_string(index.size()) + ")");
    std::vector<Poset> q;
    for (const auto& path : o.summands) q.push_back(parse_poset(slurp(path)));
    if (o.kind == "lex-subst") {
      std::vector<LocalRealiser> full;
      for (const auto& qx : q) full.push_back(exact_dim(qx).witness);
      return emit_lex(o, lex_realiser_subst(index, index_realiser, q, full), o.kind);
    }
    std::vector<LocalRealiser> local;
    std::vector<List> ext;
    for (const auto& qx : q) {
      local.push_back(exact_ldim(qx).witness);
      ext.push_back(qx.topological_order());
    }
    return emit_lex(o, lex_realiser_add(index, index_realiser, q, local, ext), o.kind);
  }
  throw ParameterError("unknown construction `" + o.kind + "`");
}

// verify --------------------------------------------------------------------

int run_verify(const Options& o) {
  if (o.realiser.empty()) throw ParameterError("--realiser is required");
  const auto r = parse_realiser(slurp(o.realiser));
  VerificationReport rep;
  if (!o.poset.empty()) {
    rep = verify_local_realiser(parse_poset(slurp(o.poset)), r);
  } else if (o.n && o.k) {
    rep = verify_local_realiser(LayerPoset(o.n, o.l, o.k), r);
  } else {
    throw ParameterError("give --poset, or --n --l --k for a layer poset");
  }
  if (o.json)
    emit(o, report_json(rep).dump(2) + "\n");
  else
    emit(o, report_text(rep));
  return rep.valid ? 0 : kExitInvalid;
}

// encode / decode -------------------------------------------------------------

int run_encode(const Options& o) {
  if (o.binary) {
    if (o.poset.empty()) throw ParameterError("--poset is required for the binary code");
    const auto p = parse_poset(slurp(o.poset));
    const auto res = exact_twodim(p, budget_of(o));
    if (res.exceeded) {
      std::cout << "exceeded lower_bound=" << res.lower_bound << '\n';
      return kExitExceeded;
    }
    const auto bits = twodim_binary_encode(p, static_cast<unsigned>(res.value), res.images);
    if (o.json)
      emit(o, json{{"n", p.size()}, {"d", res.value}, {"bits", bits}}.dump(2) + "\n");
    else
      emit(o, bits + "\n");
    return 0;
  }
  if (o.realiser.empty()) throw ParameterError("--realiser is required");
  const auto r = drop_trivial_lists(parse_realiser(slurp(o.realiser)));
  const auto w = crespelle_encode(r);
  if (o.json) {
    emit(o, json{{"n", w.n},
                 {"symbols", w.symbols.size()},
                 {"bits", codeword_bit_cost(w)},
                 {"code", format_codeword(w)}}
                    .dump(2) +
                "\n");
  } else {
    emit(o, format_codeword(w) + "\n");
  }
  return 0;
}

int run_decode(const Options& o) {
  if (o.code.empty()) throw ParameterError("--code is required");
  auto text = slurp(o.code);
  if (o.binary) {
    if (!o.n) throw ParameterError("--n is required for the binary code");
    std::string bits;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) bits += c;
    const auto d = twodim_binary_decode(bits, o.n);
    if (o.json) {
      emit(o, json{{"d", d.d}, {"images", d.images}}.dump(2) + "\n");
    } else {
      std::ostringstream out;
      out << "d " << d.d << '\n';
      for (std::size_t i = 0; i < d.images.size(); ++i)
        out << "image " << i + 1 << ' ' << format_subset(d.images[i]) << '\n';
      emit(o, out.str());
    }
    return 0;
  }
  const auto decoded = crespelle_decode(parse_codeword(text, o.n));
  if (!o.poset_out.empty()) write_file(o.poset_out, format_poset(decoded.poset));
  if (o.json)
    emit(o, json{{"n", decoded.realiser.n},
                 {"lists", decoded.realiser.lists},
                 {"relations", decoded.poset.relations()}}
                    .dump(2) +
                "\n");
  else
    emit(o, format_realiser(decoded.realiser));
  return 0;
}

// exact ---------------------------------------------------------------------

int run_exact(const Options& o) {
  if (o.poset.empty()) throw ParameterError("--poset is required");
  const auto p = parse_poset(slurp(o.poset));
  ExactResult res;
  if (o.kind == "ldim")
    res = exact_ldim(p, budget_of(o));
  else if (o.kind == "dim")
    res = exact_dim(p, budget_of(o));
  else if (o.kind == "twodim")
    res = exact_twodim(p, budget_of(o));
  else
    throw ParameterError("unknown parameter `" + o.kind + "` (ldim, dim, twodim)");
  if (o.json) {
    json j = {{"parameter", o.kind},
              {"exceeded", res.exceeded},
              {"lower_bound", res.lower_bound},
              {"nodes", res.nodes}};
    if (!res.exceeded) {
      j["value"] = res.value;
      if (o.kind == "twodim")
        j["images"] = res.images;
      else
        j["witness"] = res.witness.lists;
    }
    emit(o, j.dump(2) + "\n");
  } else if (res.exceeded) {
    emit(o, "exceeded lower_bound=" + std::to_string(res.lower_bound) + "\n");
  } else {
    emit(o, "value " + std::to_string(res.value) + "\n");
  }
  return res.exceeded ? kExitExceeded : 0;
}

// bounds / sample / experiment ------------------------------------------------

int run_bounds(const Options& o) {
  const auto b = bound_table(o.n, o.l, o.k);
  if (o.json) {
    json entries = json::array();
    for (const auto& e : b.entries)
      entries.push_back({{"name", e.name},
                         {"value", e.applicable ? json(e.value) : json(nullptr)},
                         {"applicable", e.applicable},
                         {"asymptotic", e.asymptotic}});
    emit(o, json{{"n", b.n}, {"lower", b.lower}, {"upper", b.upper}, {"entries", entries}}.dump(2) + "\n");
    return 0;
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<Metric> metrics;
  for (const auto& e : b.entries) {
    rows.push_back({e.name, e.applicable ? fmt(e.value) : "-", e.applicable ? "yes" : "no",
                    e.asymptotic ? "yes" : "no"});
    if (e.applicable) metrics.push_back({e.name, e.value});
  }
  emit(o, aligned({"bound", "value", "applicable", "asymptotic"}, rows) + metric_lines(metrics));
  return 0;
}

int run_sample(const Options& o) {
  if (!o.seed_given) throw ParameterError("--seed is required");
  if (o.kind == "two-layer") {
    const auto p = sample_two_layer(o.n, o.seed);
    emit(o, o.json ? json{{"n", p.size()}, {"relations", p.relations()}}.dump(2) + "\n" : format_poset(p));
    return 0;
  }
  if (o.kind == "layer-model") {
    const std::size_t m = o.m ? o.m : default_m(o.n, o.l);
    const auto s = sample_layer_model(o.n, o.l, o.k, m, o.seed);
    if (o.json) {
      json tops = json::array();
      for (auto t : s.top_sets) tops.push_back(format_subset(t));
      emit(o, json{{"n", s.poset.size()},
                   {"a_count", s.a_count},
                   {"top_sets", tops},
                   {"relations", s.poset.relations()}}
                      .dump(2) +
                  "\n");
    } else {
      std::ostringstream out;
      out << "# layer model: " << s.a_count << " bottom sets, " << s.top_sets.size() << " top elements\n";
      out << format_poset(s.poset);
      emit(o, out.str());
    }
    return 0;
  }
  throw ParameterError("unknown ensemble `" + o.kind + "` (two-layer, layer-model)");
}

int run_experiment_cmd(const Options& o) {
  if (!o.seed_given && o.kind != "unimodal") throw ParameterError("--seed is required");
  ExperimentParams params;
  params.n = o.n;
  params.samples = o.samples;
  params.seed = o.seed;
  params.budget = budget_of(o);
  const auto rep = run_experiment(o.kind, params);
  if (o.json) {
    json metrics = json::object();
    for (const auto& m : rep.metrics) metrics[m.name] = m.value;
    emit(o, json{{"kind", rep.kind},
                 {"exceeded", rep.exceeded},
                 {"metrics", metrics},
                 {"columns", rep.columns},
                 {"table", rep.table}}
                    .dump(2) +
                "\n");
  } else {
    std::string text;
    if (!rep.columns.empty()) text += aligned(rep.columns, rep.table);
    text += metric_lines(rep.metrics);
    if (rep.exceeded) text += "exceeded\n";
    emit(o, text);
  }
  return rep.exceeded ? kExitExceeded : 0;
}

// embed ---------------------------------------------------------------------

int run_embed(const Options& o) {
  Embedding e = [&] {
    if (o.kind == "shift12") return shift_embedding_12(o.n, o.k);
    if (o.kind == "shift-up") return shift_embedding_up(o.n, o.l, o.k);
    if (o.kind == "divisibility") return divisibility_embedding(o.k, o.n);
    throw ParameterError("unknown embedding `" + o.kind + "` (shift12, shift-up, divisibility)");
  }();
  const bool ok = verify_embedding(e);
  if (o.json) {
    emit(o, json{{"source_size", e.source.size()},
                 {"target_size", e.target.size()},
                 {"image", e.image},
                 {"valid", ok}}
                    .dump(2) +
                "\n");
  } else {
    std::ostringstream out;
    for (std::size_t i = 0; i < e.image.size(); ++i) out << "f " << i + 1 << ' ' << e.image[i] << '\n';
    out << "# valid " << (ok ? "true" : "false") << '\n';
    emit(o, out.str());
  }
  return ok ? 0 : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local dimension toolkit: constructions, verification, codes, exact search, bounds"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "Machine-readable output");
    sub->add_option("-o", o.out, "Output file (default stdout)");
  };
  auto layers = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "Ground set size");
    sub->add_option("--l", o.l, "Lower layer");
    sub->add_option("--k", o.k, "Upper layer");
  };
  auto search = [&](CLI::App* sub) {
    sub->add_option("--max-d", o.max_d, "Largest value tried");
    sub->add_option("--node-limit", o.node_limit, "Search node cap");
    sub->add_option("--time-limit", o.time_limit, "Seconds");
  };

  auto* construct = app.add_subcommand("construct", "Build a local realiser");
  construct->add_option("kind", o.kind, "far-layers | bipartite | hypercube | lex-subst | lex-add")->required();
  layers(construct);
  construct->add_option("--top", o.top, "Top layer for far-layers");
  construct->add_option("--m", o.m, "Hypercube dimension");
  construct->add_option("--poset", o.poset, "Index poset (lex rules)");
  construct->add_option("--realiser", o.realiser, "Index local realiser (lex rules)");
  construct->add_option("--summand", o.summands, "Summand poset, once per index element");
  construct->add_option("--poset-out", o.poset_out, "Also write the host poset here");
  common(construct);

  auto* verify = app.add_subcommand("verify", "Check a local realiser");
  verify->add_option("--poset", o.poset, "Host poset file");
  verify->add_option("--realiser", o.realiser, "Realiser file")->required();
  layers(verify);
  common(verify);

  auto* encode = app.add_subcommand("encode", "Realiser to Crespelle codeword");
  encode->add_option("--realiser", o.realiser, "Realiser file");
  encode->add_option("--poset", o.poset, "Poset file (with --binary)");
  encode->add_flag("--binary", o.binary, "Binary 2-dimension code of --poset");
  search(encode);
  common(encode);

  auto* decode = app.add_subcommand("decode", "Codeword to realiser");
  decode->add_option("--code", o.code, "Codeword file")->required();
  decode->add_option("--n", o.n, "Ground set size (default: largest id)");
  decode->add_flag("--binary", o.binary, "Input is the binary 2-dimension code");
  decode->add_option("--poset-out", o.poset_out, "Also write the inferred poset here");
  common(decode);

  auto* exact = app.add_subcommand("exact", "Exact ldim, dim or twodim");
  exact->add_option("parameter", o.kind, "ldim | dim | twodim")->required();
  exact->add_option("--poset", o.poset, "Poset file")->required();
  search(exact);
  common(exact);

  auto* bounds = app.add_subcommand("bounds", "Closed-form bound table");
  layers(bounds);
  bounds->get_option("--n")->required();
  bounds->get_option("--k")->required();
  common(bounds);

  auto* sample = app.add_subcommand("sample", "Sample a random poset");
  sample->add_option("ensemble", o.kind, "two-layer | layer-model")->required();
  layers(sample);
  sample->add_option("--m", o.m, "Top elements (layer-model; 0 = default)");
  sample->add_option("--seed", o.seed, "Seed")->each([&](const std::string&) { o.seed_given = true; });
  common(sample);

  auto* experiment = app.add_subcommand("experiment", "Run an experiment");
  experiment->add_option("kind", o.kind, "avg-ldim | shannon-length | unimodal")->required();
  experiment->add_option("--n", o.n, "Size")->required();
  experiment->add_option("--samples", o.samples, "Sample count");
  experiment->add_option("--seed", o.seed, "Seed")->each([&](const std::string&) { o.seed_given = true; });
  search(experiment);
  common(experiment);

  auto* embed = app.add_subcommand("embed", "Print an order embedding");
  embed->add_option("kind", o.kind, "shift12 | shift-up | divisibility")->required();
  layers(embed);
  common(embed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  // The hypercube default for m differs from the layer-model default.
  if (sample->parsed() && sample->count("--m") == 0) o.m = 0;

  try {
    if (construct->parsed()) return run_construct(o);
    if (verify->parsed()) return run_verify(o);
    if (encode->parsed()) return run_encode(o);
    if (decode->parsed()) return run_decode(o);
    if (exact->parsed()) return run_exact(o);
    if (bounds->parsed()) return run_bounds(o);
    if (sample->parsed()) return run_sample(o);
    if (experiment->parsed()) return run_experiment_cmd(o);
    if (embed->parsed()) return run_embed(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
