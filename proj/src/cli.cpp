#include "sl2cert/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "sl2cert/constructors.hpp"
#include "sl2cert/errors.hpp"
#include "sl2cert/json_io.hpp"
#include "sl2cert/tracering.hpp"
#include "sl2cert/verifiers.hpp"

namespace sl2cert::cli {

namespace {

using json_io::Json;

/// Everything an invocation produces before it is written out.
struct Outcome {
  Json doc;
  std::string text;
  int code = kOk;
};

int code_for(Status s) { return s == Status::Refuted ? kRefuted : kOk; }

int code_for(const Error& e) {
  const std::string& k = e.kind();
  if (k == "ParseError" || k == "InvalidSpec" || k == "CapExceeded" || k == "UnknownGenerator" ||
      k == "WrongAlphabet" || k == "NotUnimodular" || k == "MalformedNormalForm" || k == "TowerMismatch") {
    return kUsage;
  }
  if (k == "BoundedCheckFailed" || k == "TraceScanFailed") return kCheckFailed;
  return kRefuted;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MarkedRep load_rep_file(const std::string& path) { return json_io::rep_from_json(json_io::parse(read_file(path))); }

Word parse_word(const std::string& text) { return Word::parse(text); }

std::array<long long, 4> parse_monodromy(const std::string& text) {
  std::array<long long, 4> m{};
  std::stringstream ss(text);
  std::string tok;
  size_t i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= 4) throw ParseError("monodromy needs four comma-separated integers");
    try {
      size_t used = 0;
      m[i++] = std::stoll(tok, &used);
      if (used != tok.size()) throw ParseError("bad integer '" + tok + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad integer '" + tok + "'");
    }
  }
  if (i != 4) throw ParseError("monodromy needs four comma-separated integers");
  return m;
}

std::pair<long long, long long> parse_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("range must look like lo:hi");
  try {
    return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
  } catch (const std::logic_error&) {
    throw ParseError("bad range '" + text + "'");
  }
}

// ---------------------------------------------------------------- text

std::string indent(const std::string& s, const std::string& pad) {
  std::string out;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) out += pad + line + "\n";
  return out;
}

std::string report_text(const Report& r) {
  std::ostringstream o;
  o << "report " << r.claim << ": " << status_name(r.status);
  if (r.bound > 0) o << " (bound " << r.bound << ")";
  o << "\n";
  if (r.examined > 0) o << "  examined: " << r.examined << "\n";
  for (const auto& [k, v] : r.parameters) o << "  " << k << " = " << v << "\n";
  for (const Witness& w : r.witnesses) {
    o << "  [" << w.property << "] " << w.label << "\n";
    if (w.element) o << "      " << w.element->to_string() << "\n";
    if (w.matrix) o << indent(w.matrix->to_string(), "      ");
    if (!w.lhs.empty()) o << "      " << w.lhs << (w.rhs.empty() ? "" : " = " + w.rhs) << "\n";
  }
  for (const std::string& n : r.notes) o << "  note: " << n << "\n";
  return o.str();
}

std::string rep_text(const MarkedRep& rep) {
  std::ostringstream o;
  o << "MarkedRep over " << rep.tower()->describe() << "\n";
  for (Symbol s : rep.generators()) {
    o << "  " << symbol_name(s) << " =\n" << indent(rep.image(s).to_string(), "    ");
  }
  for (const Word& w : rep.relators()) o << "  relator " << w.to_string() << "\n";
  return o.str();
}

Outcome report_outcome(const Report& r) {
  Outcome oc;
  oc.doc = json_io::to_json(r);
  oc.text = report_text(r);
  oc.code = code_for(r.status);
  return oc;
}

Outcome construction_outcome(const MarkedRep& rep, const std::vector<Report>& reports,
                             const std::vector<std::string>& assumptions = {},
                             const std::vector<std::pair<std::string, Word>>& words = {}) {
  Outcome oc;
  oc.doc = json_io::to_json(rep);
  oc.text = rep_text(rep);
  if (!words.empty()) {
    Json jw = Json::object();
    for (const auto& [k, w] : words) {
      jw[k] = w.to_string();
      oc.text += "  " + k + " = " + w.to_string() + "\n";
    }
    oc.doc["words"] = jw;
  }
  Json jr = Json::array();
  for (const Report& r : reports) {
    jr.push_back(json_io::to_json(r));
    oc.text += report_text(r);
    if (r.status == Status::Refuted) oc.code = kRefuted;
  }
  oc.doc["reports"] = jr;
  oc.doc["assumptions"] = assumptions;
  for (const std::string& a : assumptions) oc.text += "assumption: " + a + "\n";
  return oc;
}

// ---------------------------------------------------------------- reps

struct RepChoice {
  std::string name;
  std::string input;
  std::string branch = "plus";
  std::string monodromy = "2,1,1,1";
  std::optional<long long> m;
};

MarkedRep choose_rep(const RepChoice& c, const std::string& fallback) {
  if (!c.input.empty()) return load_rep_file(c.input);
  std::string n = c.name.empty() ? fallback : c.name;
  if (n == "figure8") return figure8_family().rep;
  if (n == "discrete") return figure8_discrete(c.branch == "minus" ? Branch::Minus : Branch::Plus).rep;
  if (n == "generic") return generic_free_rep();
  if (n == "bs1m") return bs1m_rep(c.m.value_or(2));
  if (n == "fibred") return figure8_fibred_rep().rep;
  if (n == "minsky") return minsky_quotient_rep().rep;
  if (n == "torus") {
    auto m = parse_monodromy(c.monodromy);
    return torus_bundle_rep(m[0], m[1], m[2], m[3]).rep;
  }
  throw InvalidSpec("unknown representation '" + n + "'");
}

void add_rep_options(CLI::App* app, RepChoice& c, const std::string& fallback) {
  app->add_option("--rep", c.name, "figure8, discrete, generic, bs1m, torus, fibred or minsky (default " + fallback + ")")
      ->check(CLI::IsMember({"figure8", "discrete", "generic", "bs1m", "torus", "fibred", "minsky"}));
  app->add_option("--input", c.input, "read the representation from a MarkedRep JSON file");
  app->add_option("--branch", c.branch, "branch of the discrete rep")->check(CLI::IsMember({"plus", "minus"}));
  app->add_option("--monodromy", c.monodromy, "torus monodromy as i,j,k,l");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact SL(2) representation constructions and bounded certificates", "sl2cert"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "show help for every subcommand");
  bool as_json = false;
  std::string output;
  app.add_flag("--json", as_json, "emit a JSON document");
  app.add_option("-o,--output", output, "write the document to a file");

  std::function<Outcome()> action;

  // figure8
  bool discrete = false;
  std::string branch = "plus";
  auto* f8 = app.add_subcommand("figure8", "figure-eight knot group representation");
  f8->add_flag("--discrete", discrete, "the discrete faithful representation over Q(omega)");
  f8->add_option("--branch", branch, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
  f8->callback([&] {
    action = [&] {
      if (discrete) {
        DiscreteFigure8 d = figure8_discrete(branch == "minus" ? Branch::Minus : Branch::Plus);
        return construction_outcome(d.rep, {check_relations(d.rep)}, {},
                                    {{"meridian", d.meridian}, {"longitude", d.longitude}});
      }
      Figure8Family f = figure8_family();
      return construction_outcome(f.rep, {check_relations(f.rep)}, {},
                                  {{"meridian", f.meridian}, {"longitude", f.longitude}});
    };
  });

  // torus-bundle
  std::vector<long long> mono;
  int box = 5;
  auto* tb = app.add_subcommand("torus-bundle", "torus bundle with monodromy (i j; k l)");
  tb->add_option("entries", mono, "i j k l")->expected(4)->required()->allow_extra_args(false);
  tb->add_option("--box", box, "box size for the a^p b^q t^r scan");
  tb->callback([&] {
    action = [&] {
      TorusBundle t = torus_bundle_rep(mono[0], mono[1], mono[2], mono[3]);
      std::vector<Report> reps{check_relations(t.rep)};
      if (!t.abelian) reps.push_back(torus_bundle_box_scan(t, box));
      return construction_outcome(t.rep, reps);
    };
  });

  // bs1m
  long long bs_m = 0;
  auto* bs = app.add_subcommand("bs1m", "Baumslag-Solitar group BS(1, m)");
  bs->add_option("m", bs_m, "the exponent m")->required();
  bs->callback([&] {
    action = [&] {
      MarkedRep r = bs1m_rep(bs_m);
      return construction_outcome(r, {check_relations(r)});
    };
  });

  // join-free
  std::string left, right;
  int syllables = kDefaultSyllableBound, syllable_len = 3;
  auto* jf = app.add_subcommand("join-free", "free product of two representations");
  jf->add_option("--left", left, "MarkedRep JSON for the first factor (default generic on A, B)");
  jf->add_option("--right", right, "MarkedRep JSON for the second factor (default generic on C, D)");
  jf->add_option("--syllables", syllables, "maximum number of syllables checked");
  jf->add_option("--syllable-len", syllable_len, "maximum syllable length");
  auto default_left = [&] { return left.empty() ? generic_free_rep() : load_rep_file(left); };
  auto default_right = [&] {
    GenericNames n;
    n.a = "C";
    n.b = "D";
    return right.empty() ? generic_free_rep(2, n) : load_rep_file(right);
  };
  jf->callback([&] {
    action = [&] {
      JoinResult j = free_product_join(default_left(), default_right(), syllables, syllable_len);
      return construction_outcome(j.rep, j.reports, j.assumptions);
    };
  });

  // join-amalgam
  std::string w1 = "A", w2 = "C", param = "lambda";
  int am_bound = kDefaultWordBound;
  auto* ja = app.add_subcommand("join-amalgam", "amalgam over a cyclic subgroup <w1> = <w2>");
  ja->add_option("--left", left, "MarkedRep JSON for the first factor (default generic on A, B)");
  ja->add_option("--right", right, "MarkedRep JSON for the second factor (default generic on C, D)");
  ja->add_option("--w1", w1, "edge word in the first factor");
  ja->add_option("--w2", w2, "edge word in the second factor");
  ja->add_option("--param", param, "indeterminate of the second factor solved for");
  ja->add_option("--bound", am_bound, "word bound for the trace and edge scans");
  ja->callback([&] {
    action = [&] {
      JoinResult j = amalgam_join(default_left(), parse_word(w1), default_right(), parse_word(w2), param, am_bound);
      return construction_outcome(j.rep, j.reports, j.assumptions);
    };
  });

  // hnn-extend
  std::string base, a_word = "A", g_word = "1";
  HnnOptions hopts;
  auto* he = app.add_subcommand("hnn-extend", "HNN extension t a t^-1 = g a g^-1");
  he->add_option("--base", base, "MarkedRep JSON for the base (default generic on A, B)");
  he->add_option("--a", a_word, "associated word a");
  he->add_option("--g", g_word, "conjugator g (default 1)");
  he->add_option("--stable", hopts.stable, "name of the stable letter");
  he->add_option("--parameter", hopts.parameter, "name of the new indeterminate");
  he->add_option("--bound", hopts.scan_bound, "word bound for the trace scan");
  he->add_option("--r-max", hopts.r_max, "normal-form length for the end-term scan (0 skips it)");
  he->add_option("--n-max", hopts.n_max, "largest stable exponent in the end-term scan");
  he->add_option("--g-len", hopts.g_len, "base word length in the end-term scan");
  he->callback([&] {
    action = [&] {
      MarkedRep b = base.empty() ? generic_free_rep() : load_rep_file(base);
      HnnConstruction h = hnn_extend(b, parse_word(a_word), parse_word(g_word), hopts);
      return construction_outcome(h.rep, h.reports);
    };
  });

  // minsky
  int mk_bound = kDefaultWordBound;
  auto* mk = app.add_subcommand("minsky", "surface-group quotient assembled from the figure-eight family");
  mk->add_option("--bound", mk_bound, "word bound for the trace and edge scans");
  mk->callback([&] {
    action = [&] {
      JoinResult j = minsky_quotient_rep(mk_bound);
      return construction_outcome(j.rep, j.reports, j.assumptions);
    };
  });

  // trace-poly
  std::string tp_word;
  auto* tp = app.add_subcommand("trace-poly", "trace of a word in A, B as a polynomial in p = tr A, q = tr B, r = tr AB");
  tp->add_option("word", tp_word, "word in A, B")->required();
  tp->callback([&] {
    action = [&] {
      Word w = parse_word(tp_word);
      Polynomial p = trace_of_word(w);
      Outcome oc;
      std::string s = p.to_string(trace_variable_names());
      oc.doc = Json{{"type", "TracePolynomial"},
                    {"word", w.to_string()},
                    {"variables", trace_variable_names()},
                    {"polynomial", json_io::to_json(p, 3)},
                    {"text", s}};
      oc.text = "tr(" + w.to_string() + ") = " + s + "\n";
      return oc;
    };
  });

  // verify
  std::string claim;
  int bound = -1;
  RepChoice rc;
  std::optional<long long> vm, vn;
  std::string n_range = "-5:5";
  int r_max = 3, n_max = 2, g_len = 2;
  std::string o4_g = "B";
  auto* vf = app.add_subcommand("verify", "run one verifier");
  vf->add_option("claim", claim, "claim id")
      ->required()
      ->check(CLI::IsMember({"relations", "trace-pm2", "ct", "csa", "gluing", "hnn-invariant", "order4", "triple-hnn",
                             "comm-eq", "lyndon", "faithful"}));
  vf->add_option("--bound", bound, "scan bound (recorded in the report)");
  add_rep_options(vf, rc, "per claim");
  vf->add_option("--m", vm, "exponent m (comm-eq; BS(1,m) for ct, csa and --rep bs1m)");
  vf->add_option("--n", vn, "exponent n (comm-eq) or the single gluing twist n");
  vf->add_option("--n-range", n_range, "gluing twists lo:hi");
  vf->add_option("--r-max", r_max, "hnn-invariant: normal-form length");
  vf->add_option("--n-max", n_max, "hnn-invariant: largest stable exponent");
  vf->add_option("--g-len", g_len, "hnn-invariant: base word length");
  vf->add_option("--g", o4_g, "order4: conjugator word");
  vf->callback([&] {
    action = [&] {
      rc.m = vm;
      auto L = [&](int dflt) { return bound >= 0 ? bound : dflt; };
      Report r;
      if (claim == "relations") {
        r = check_relations(choose_rep(rc, "figure8"));
      } else if (claim == "trace-pm2") {
        r = trace_pm2_scan(choose_rep(rc, "figure8"), L(kDefaultWordBound));
      } else if (claim == "ct") {
        if (vm && rc.name.empty() && rc.input.empty()) {
          r = ct_scan_bs1m(*vm, L(4));
        } else {
          r = ct_scan(choose_rep(rc, "generic"), L(3));
        }
      } else if (claim == "csa") {
        if (vm && rc.name.empty() && rc.input.empty()) rc.name = "bs1m";
        r = csa_scan(choose_rep(rc, "discrete"), L(3));
      } else if (claim == "gluing") {
        auto [lo, hi] = vn ? std::pair<long long, long long>{*vn, *vn} : parse_range(n_range);
        r = gluing_obstruction(lo, hi);
      } else if (claim == "hnn-invariant") {
        HnnOptions o;
        o.r_max = 0;
        HnnConstruction h = hnn_extend(generic_free_rep(), Word::parse("A"), Word(), o);
        r = hnn_invariant_scan(h, r_max, n_max, g_len);
      } else if (claim == "order4") {
        Symbol A = intern("A"), B = intern("B");
        HnnSpec spec{{A, B}, {{Word::letter(A), Word::parse("B*A^-1*B^-1")}}, intern("t")};
        r = order4_obstruction(spec, generic_free_rep(), parse_word(o4_g));
      } else if (claim == "triple-hnn") {
        r = triple_hnn_obstruction();
      } else if (claim == "comm-eq") {
        r = commutator_equation_search(vm.value_or(5), vn.value_or(2), L(4));
      } else if (claim == "lyndon") {
        r = lyndon_equation_scan(L(3));
      } else {
        std::string n = rc.name.empty() && rc.input.empty() ? "fibred" : rc.name;
        int b = L(4);
        if (n == "fibred") {
          FibredFigure8 f = figure8_fibred_rep();
          r = faithfulness_scan(f.rep, f.spec, b);
        } else if (n == "torus") {
          auto m = parse_monodromy(rc.monodromy);
          r = torus_bundle_box_scan(torus_bundle_rep(m[0], m[1], m[2], m[3]), b);
        } else if (n == "minsky") {
          AmalgamSpec spec{{intern("A"), intern("B")},
                           {intern("C"), intern("D")},
                           Word::parse("A*B*A^-1*B^-1"),
                           Word::parse("C*D*C^-1*D^-1")};
          r = faithfulness_scan(minsky_quotient_rep().rep, spec, b);
        } else {
          MarkedRep rep = choose_rep(rc, n);
          r = faithfulness_scan(rep, rep.generators(), b);
        }
      }
      return report_outcome(r);
    };
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  Outcome oc;
  try {
    oc = action();
  } catch (const Error& e) {
    int code = code_for(e);
    if (as_json) {
      Json doc{{"type", "Error"}, {"kind", e.kind()}, {"message", e.what()}, {"exit_code", code}};
      out << json_io::dump(doc) << "\n";
    }
    err << "error: " << e.what() << "\n";
    return code;
  }

  std::string body = as_json ? json_io::dump(oc.doc) + "\n" : oc.text;
  if (!output.empty()) {
    std::ofstream f(output);
    if (!f) {
      err << "error: cannot write '" << output << "'\n";
      return kUsage;
    }
    f << body;
  } else {
    out << body;
  }
  return oc.code;
}

}  // namespace sl2cert::cli
