#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "linkhom/nano.hpp"

namespace {

using nlohmann::json;
using namespace linkhom;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// sorted exponent/coefficient pairs, the diffable polynomial form
json poly_json(const Laurent& p) {
  json a = json::array();
  for (auto& [e, c] : p.sorted_terms()) a.push_back(json::array({e, c}));
  return a;
}

json table_json(const HomologyTable& t) {
  json rows = json::array();
  for (auto& [key, e] : t.entries()) {
    if (e.trivial()) continue;
    json row;
    row["i"] = key.first;
    if (key.second.size() == 1)
      row["j"] = key.second[0];
    else
      row["grading"] = key.second;
    row["rank"] = e.rank;
    json tor = json::array();
    for (auto& v : e.torsion) tor.push_back(v.str());
    row["torsion"] = tor;
    rows.push_back(row);
  }
  return rows;
}

void print_table_text(std::ostream& os, const HomologyTable& t) {
  os << "i\tj\trank\ttorsion\n";
  for (auto& [key, e] : t.entries()) {
    if (e.trivial()) continue;
    os << key.first << "\t";
    for (std::size_t k = 0; k < key.second.size(); ++k)
      os << (k ? "," : "") << key.second[k];
    os << "\t" << e.rank << "\t";
    if (e.torsion.empty()) os << "-";
    for (std::size_t k = 0; k < e.torsion.size(); ++k)
      os << (k ? "," : "") << e.torsion[k].str();
    os << "\n";
  }
}

// flags shared by every subcommand
struct Common {
  std::string format = "json";
  Budgets budgets = default_budgets();
  int threads = 1;
  unsigned long long seed = 0;

  bool text() const { return format == "text"; }
  void attach(CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->transform(CLI::IsMember({"json", "text"}));
    sub->add_option("--homology-budget", budgets.homology,
                    "crossing cap for homology-sized state spaces");
    sub->add_option("--bracket-budget", budgets.bracket,
                    "crossing cap for bracket state sums");
    sub->add_option("--threads", threads, "worker parallelism cap")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "seed echoed for reproducibility bookkeeping");
  }
};

// diagram source: exactly one of a PD JSON file or a Gauss phrase file
struct DiagramInput {
  std::string pd_path, gauss_path;

  void attach(CLI::App* sub) {
    sub->add_option("--pd", pd_path, "PD code as JSON");
    sub->add_option("--gauss", gauss_path, "signed Gauss phrase as text");
  }
  PDCode load() const {
    if (pd_path.empty() == gauss_path.empty())
      throw validation_error("give exactly one of --pd and --gauss");
    if (!pd_path.empty()) return PDCode::parse(slurp(pd_path));
    return gauss_to_pd(GaussPhrase::parse(slurp(gauss_path)));
  }
};

void emit(const Common& c, const json& j, const std::string& text) {
  if (c.text())
    std::cout << text;
  else
    std::cout << j.dump(2) << "\n";
}

FramingPolicy framing_of(const std::string& name) {
  return name == "normalize" ? FramingPolicy::normalize : FramingPolicy::blackboard;
}

std::vector<bool> parse_orientation(const std::string& text) {
  std::vector<bool> flip;
  for (char ch : text) {
    if (ch == '+')
      flip.push_back(false);
    else if (ch == '-')
      flip.push_back(true);
    else
      throw validation_error("orientation must be a string of + and -");
  }
  return flip;
}

json pages_json(const Bicomplex::Pages& p) {
  json pages = json::array();
  for (std::size_t r = 0; r < p.ranks.size(); ++r) {
    json pg;
    pg["r"] = r;
    json ranks = json::array();
    for (auto& [kij, cnt] : p.ranks[r]) {
      ranks.push_back(json{{"k", kij[0]}, {"i", kij[1]}, {"j", kij[2]}, {"rank", cnt}});
    }
    pg["ranks"] = ranks;
    pg["euler"] = poly_json(p.euler(r));
    pages.push_back(pg);
  }
  return json{{"pages", pages}, {"stable_from", p.stable}};
}

void pages_text(std::ostream& os, const std::string& name, const Bicomplex::Pages& p) {
  os << name << " (stable from page " << p.stable << ")\n";
  for (std::size_t r = 0; r < p.ranks.size(); ++r) {
    os << " page " << r << ": euler " << p.euler(r).str() << "\n";
    for (auto& [kij, cnt] : p.ranks[r])
      os << "  k " << kij[0] << "  i " << kij[1] << "  j " << kij[2] << "  rank " << cnt << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"categorified link invariants: Khovanov and Lee homology, Rasmussen "
               "invariants, colored Jones polynomials, and nanophrase homotopy"};
  app.require_subcommand(1);
  int exit_code = 0;

  // kh
  auto* kh = app.add_subcommand("kh", "integral Khovanov homology of a diagram");
  auto kh_common = std::make_shared<Common>();
  auto kh_in = std::make_shared<DiagramInput>();
  kh_common->attach(kh);
  kh_in->attach(kh);
  kh->callback([kh_common, kh_in]() {
    PDCode d = kh_in->load();
    HomologyTable t = khovanov_homology(d, kh_common->budgets);
    Laurent jones = jones_from_euler(t);
    json out;
    out["command"] = "kh";
    out["crossings"] = d.crossing_count();
    out["components"] = d.component_count();
    out["writhe"] = d.writhe();
    out["homology"] = table_json(t);
    out["jones_from_euler"] = poly_json(jones);
    out["jones_text"] = jones.str();
    std::ostringstream text;
    text << "crossings " << d.crossing_count() << "  components " << d.component_count()
         << "  writhe " << d.writhe() << "\n";
    print_table_text(text, t);
    text << "jones " << jones.str() << "\n";
    emit(*kh_common, out, text.str());
  });

  // lee
  auto* lee = app.add_subcommand("lee", "rational Lee homology of a diagram");
  auto lee_common = std::make_shared<Common>();
  auto lee_in = std::make_shared<DiagramInput>();
  lee_common->attach(lee);
  lee_in->attach(lee);
  lee->callback([lee_common, lee_in]() {
    PDCode d = lee_in->load();
    LeeHomology h = lee_homology(d, lee_common->budgets);
    json out;
    out["command"] = "lee";
    out["crossings"] = d.crossing_count();
    out["components"] = d.component_count();
    out["dimension"] = h.dimension;
    json cls = json::array();
    for (auto& [i, q] : h.classes) cls.push_back(json{{"i", i}, {"q", q}});
    out["classes"] = cls;
    std::ostringstream text;
    text << "dimension " << h.dimension << "\n";
    for (auto& [i, q] : h.classes) text << "i " << i << "  q " << q << "\n";
    emit(*lee_common, out, text.str());
  });

  // s
  auto* sc = app.add_subcommand("s", "Rasmussen invariant, colored set with --n");
  auto s_common = std::make_shared<Common>();
  auto s_in = std::make_shared<DiagramInput>();
  auto s_orient = std::make_shared<std::string>();
  auto s_formula = std::make_shared<std::string>("mean");
  auto s_n = std::make_shared<std::vector<int>>();
  auto s_framing = std::make_shared<std::string>("blackboard");
  s_common->attach(sc);
  s_in->attach(sc);
  sc->add_option("--orientation", *s_orient, "one +/- per component, links only");
  sc->add_option("--formula", *s_formula, "filtration degree combination")
      ->transform(CLI::IsMember({"mean", "printed"}));
  sc->add_option("--n", *s_n, "colors; switches to the colored Rasmussen set")
      ->delimiter(',');
  sc->add_option("--framing", *s_framing, "cable framing for the colored set")
      ->transform(CLI::IsMember({"blackboard", "normalize"}));
  sc->callback([s_common, s_in, s_orient, s_formula, s_n, s_framing]() {
    PDCode d = s_in->load();
    SFormula formula = *s_formula == "mean" ? SFormula::mean : SFormula::printed;
    json out;
    std::ostringstream text;
    if (!s_n->empty()) {
      ColoredRasmussen r =
          colored_rasmussen(d, *s_n, framing_of(*s_framing), formula, s_common->budgets);
      out["command"] = "s";
      out["n"] = r.n;
      out["framing"] = *s_framing;
      out["formula"] = *s_formula;
      json entries = json::array();
      for (auto& e : r.entries) {
        entries.push_back(json{{"k", e.k},
                               {"orientation", e.orientation},
                               {"s", e.s},
                               {"weighted", e.weighted.str()},
                               {"empty_cable", e.empty_cable}});
        text << "k";
        for (int kv : e.k) text << " " << kv;
        text << "  o " << e.orientation << "  s " << e.s << "  weighted " << e.weighted.str()
             << (e.empty_cable ? "  (empty cable)" : "") << "\n";
      }
      out["entries"] = entries;
    } else {
      int v;
      if (d.component_count() == 1 && s_orient->empty())
        v = s_knot(d, s_common->budgets);
      else
        v = s_link(d, parse_orientation(*s_orient), formula, s_common->budgets);
      out["command"] = "s";
      out["formula"] = *s_formula;
      out["s"] = v;
      text << "s " << v << "\n";
    }
    emit(*s_common, out, text.str());
  });

  // colored-jones
  auto* cj = app.add_subcommand("colored-jones", "colored Jones polynomial by cabling");
  auto cj_common = std::make_shared<Common>();
  auto cj_in = std::make_shared<DiagramInput>();
  auto cj_n = std::make_shared<std::vector<int>>();
  auto cj_framing = std::make_shared<std::string>("blackboard");
  cj_common->attach(cj);
  cj_in->attach(cj);
  cj->add_option("--n", *cj_n, "one color per component")->required()->delimiter(',');
  cj->add_option("--framing", *cj_framing, "framing policy")
      ->transform(CLI::IsMember({"blackboard", "normalize"}));
  cj->callback([cj_common, cj_in, cj_n, cj_framing]() {
    PDCode d = cj_in->load();
    Laurent p = colored_jones(d, *cj_n, framing_of(*cj_framing), cj_common->budgets);
    json out;
    out["command"] = "colored-jones";
    out["n"] = *cj_n;
    out["framing"] = *cj_framing;
    out["polynomial"] = poly_json(p);
    out["polynomial_text"] = p.str();
    emit(*cj_common, out, p.str() + "\n");
  });

  // pages
  auto* pg = app.add_subcommand("pages", "spectral sequence pages of the colored bicomplex");
  auto pg_common = std::make_shared<Common>();
  auto pg_in = std::make_shared<DiagramInput>();
  auto pg_n = std::make_shared<std::vector<int>>();
  auto pg_rmax = std::make_shared<int>(8);
  auto pg_framing = std::make_shared<std::string>("blackboard");
  pg_common->attach(pg);
  pg_in->attach(pg);
  pg->add_option("--n", *pg_n, "one color per component")->required()->delimiter(',');
  pg->add_option("--r-max", *pg_rmax, "page cap")->check(CLI::NonNegativeNumber);
  pg->add_option("--framing", *pg_framing, "framing policy")
      ->transform(CLI::IsMember({"blackboard", "normalize"}));
  pg->callback([pg_common, pg_in, pg_n, pg_rmax, pg_framing]() {
    PDCode d = pg_in->load();
    ColoredBicomplex b = assemble_colored_bicomplex(d, *pg_n, {}, framing_of(*pg_framing),
                                                    pg_common->budgets);
    ThreeSequences t = three_sequences(b, *pg_rmax, pg_common->budgets);
    json out;
    out["command"] = "pages";
    out["n"] = *pg_n;
    out["summands"] = b.summands.size();
    out["k_filtration"] = pages_json(t.by_k);
    out["i_filtration"] = pages_json(t.by_i);
    json lees = json::array();
    for (std::size_t si = 0; si < t.lee.size(); ++si) {
      json sj;
      sj["k"] = b.summands[si].k;
      json pages = json::array();
      for (auto& rep : t.lee[si]) {
        json ranks = json::array();
        for (auto& [fd, cnt] : rep.ranks)
          ranks.push_back(json{{"q", fd.first}, {"deg", fd.second}, {"rank", cnt}});
        pages.push_back(json{{"r", rep.index}, {"ranks", ranks}, {"stable", rep.stable}});
      }
      sj["pages"] = pages;
      lees.push_back(sj);
    }
    out["q_filtration"] = lees;
    std::ostringstream text;
    pages_text(text, "k filtration", t.by_k);
    pages_text(text, "i filtration", t.by_i);
    for (std::size_t si = 0; si < t.lee.size(); ++si) {
      text << "q filtration, summand k";
      for (int kv : b.summands[si].k) text << " " << kv;
      text << "\n";
      for (auto& rep : t.lee[si]) {
        text << " page " << rep.index << (rep.stable ? " (stable)" : "") << "\n";
        for (auto& [fd, cnt] : rep.ranks)
          text << "  q " << fd.first << "  deg " << fd.second << "  rank " << cnt << "\n";
      }
    }
    emit(*pg_common, out, text.str());
  });

  // euler-check
  auto* ec = app.add_subcommand("euler-check",
                                "signed page ranks against the colored Jones polynomial");
  auto ec_common = std::make_shared<Common>();
  auto ec_in = std::make_shared<DiagramInput>();
  auto ec_n = std::make_shared<std::vector<int>>();
  auto ec_rmax = std::make_shared<int>(8);
  auto ec_framing = std::make_shared<std::string>("blackboard");
  ec_common->attach(ec);
  ec_in->attach(ec);
  ec->add_option("--n", *ec_n, "one color per component")->required()->delimiter(',');
  ec->add_option("--r-max", *ec_rmax, "page cap")->check(CLI::NonNegativeNumber);
  ec->add_option("--framing", *ec_framing, "framing policy")
      ->transform(CLI::IsMember({"blackboard", "normalize"}));
  ec->callback([ec_common, ec_in, ec_n, ec_rmax, ec_framing]() {
    PDCode d = ec_in->load();
    EulerReport r = euler_identity_check(d, *ec_n, *ec_rmax, framing_of(*ec_framing),
                                         ec_common->budgets);
    json out;
    out["command"] = "euler-check";
    out["n"] = *ec_n;
    out["jones"] = poly_json(r.jones);
    out["jones_text"] = r.jones.str();
    out["holds"] = r.holds;
    json seqs = json::array();
    std::ostringstream text;
    text << "jones " << r.jones.str() << "\n";
    for (auto& s : r.sequences) {
      json sj;
      sj["name"] = s.name;
      json pages = json::array();
      for (std::size_t i = 0; i < s.pages.size(); ++i) {
        pages.push_back(json{{"r", i}, {"euler", poly_json(s.pages[i])},
                             {"matches", static_cast<bool>(s.matches[i])}});
        text << s.name << " page " << i << ": " << s.pages[i].str() << "  "
             << (s.matches[i] ? "match" : "differ") << "\n";
      }
      sj["pages"] = pages;
      seqs.push_back(sj);
    }
    out["sequences"] = seqs;
    text << (r.holds ? "holds" : "fails") << "\n";
    emit(*ec_common, out, text.str());
  });

  // nano-map
  auto* nm = app.add_subcommand("nano-map", "apply a nanophrase functor");
  auto nm_common = std::make_shared<Common>();
  auto nm_in = std::make_shared<std::string>();
  auto nm_f = std::make_shared<std::string>();
  nm_common->attach(nm);
  nm->add_option("--in", *nm_in, "nanophrase file with its homotopy data")->required();
  nm->add_option("--functor", *nm_f, "which functor to apply")
      ->required()
      ->transform(CLI::IsMember({"v", "v1", "v2", "u", "project"}));
  nm->callback([nm_common, nm_in, nm_f]() {
    NanoFile f = parse_nano_file(slurp(*nm_in));
    HomotopyData d = f.data();
    Nanophrase p = f.phrase(d);
    Nanophrase img;
    const HomotopyData* target = nullptr;
    if (*nm_f == "v") {
      SignProfile prof = SignProfile::make(d, f.l_set(d), f.l1_set(d));
      img = functor_V(p, d, prof);
      target = &alpha_star();
    } else if (*nm_f == "v1") {
      img = functor_V1(p, d, f.l_set(d));
      target = &alpha_one();
    } else if (*nm_f == "v2") {
      img = functor_V2(p, d, f.l_set(d));
      target = &alpha_two();
    } else if (*nm_f == "u") {
      img = functor_U(p, d, f.l_set(d));
      target = &alpha_zero();
    } else {
      img = project_p(p);
      target = &alpha_one();
    }
    std::string file_text = serialize_homotopy_data(*target) + serialize_nanophrase(img, *target);
    json out;
    out["command"] = "nano-map";
    out["functor"] = *nm_f;
    out["words"] = img.word_count();
    out["letters"] = img.letter_count();
    out["canonical_key"] = img.canonical_key();
    out["image"] = file_text;
    emit(*nm_common, out, file_text);
  });

  // nano-equal
  auto* ne = app.add_subcommand("nano-equal", "bounded homotopy search between two phrases");
  auto ne_common = std::make_shared<Common>();
  auto ne_data = std::make_shared<std::string>();
  auto ne_p1 = std::make_shared<std::string>();
  auto ne_p2 = std::make_shared<std::string>();
  auto ne_depth = std::make_shared<int>(6);
  auto ne_extra = std::make_shared<int>(4);
  auto ne_nodes = std::make_shared<std::size_t>(std::size_t(200000));
  ne_common->attach(ne);
  ne->add_option("--data", *ne_data, "homotopy data file")->required();
  ne->add_option("--p1", *ne_p1, "first phrase file")->required();
  ne->add_option("--p2", *ne_p2, "second phrase file")->required();
  ne->add_option("--depth", *ne_depth, "move depth bound")->check(CLI::NonNegativeNumber);
  ne->add_option("--extra", *ne_extra, "letters allowed past the larger phrase")
      ->check(CLI::NonNegativeNumber);
  ne->add_option("--node-budget", *ne_nodes, "search node cap");
  ne->callback([&exit_code, ne_common, ne_data, ne_p1, ne_p2, ne_depth, ne_extra, ne_nodes]() {
    HomotopyData d = parse_nano_file(slurp(*ne_data)).data();
    NanoFile f1 = parse_nano_file(slurp(*ne_p1));
    NanoFile f2 = parse_nano_file(slurp(*ne_p2));
    Homotopy h = homotopic(f1.phrase(d), f2.phrase(d), d, *ne_depth, *ne_extra, *ne_nodes);
    const char* verdict = h == Homotopy::yes ? "yes"
                          : h == Homotopy::no_within_bound ? "no-within-bound"
                                                           : "budget-exceeded";
    if (h == Homotopy::budget_exceeded) exit_code = 3;
    json out;
    out["command"] = "nano-equal";
    out["depth"] = *ne_depth;
    out["extra"] = *ne_extra;
    out["verdict"] = verdict;
    emit(*ne_common, out, std::string(verdict) + "\n");
  });

  // nano-invariants
  auto* ni = app.add_subcommand("nano-invariants",
                                "polynomial and homology through the functor pipeline");
  auto ni_common = std::make_shared<Common>();
  auto ni_in = std::make_shared<std::string>();
  auto ni_n = std::make_shared<std::vector<int>>();
  ni_common->attach(ni);
  ni->add_option("--in", *ni_in, "nanophrase file with data, L, and L1")->required();
  ni->add_option("--n", *ni_n, "one color per word")->required()->delimiter(',');
  ni->callback([ni_common, ni_in, ni_n]() {
    NanoFile f = parse_nano_file(slurp(*ni_in));
    HomotopyData d = f.data();
    Nanophrase p = f.phrase(d);
    SignProfile prof = SignProfile::make(d, f.l_set(d), f.l1_set(d));
    NanophraseInvariants inv = nanophrase_invariants(p, d, prof, *ni_n, ni_common->budgets);
    json out;
    out["command"] = "nano-invariants";
    out["n"] = *ni_n;
    out["realizable"] = inv.realizable;
    out["jones"] = poly_json(inv.jones);
    out["jones_text"] = inv.jones.str();
    out["khovanov"] = inv.realizable ? table_json(inv.khovanov) : json();
    std::ostringstream text;
    text << (inv.realizable ? "realizable" : "not realizable") << "\n";
    text << "jones " << inv.jones.str() << "\n";
    if (inv.realizable) print_table_text(text, inv.khovanov);
    emit(*ni_common, out, text.str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
