#include "qclust/cli.hpp"

#include "qclust/bases.hpp"
#include "qclust/expression.hpp"
#include "qclust/multiplication.hpp"
#include "qclust/serialize.hpp"
#include "qclust/triangular.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>

namespace qclust::cli {

namespace {

struct Range {
  int lo = 0;
  int hi = 0;
};

const std::regex kRange(R"(\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?)");

Range parse_range(const std::string& text) {
  std::smatch mt;
  if (!std::regex_match(text, mt, kRange)) throw CLI::ValidationError("range", "expected lo..hi, got '" + text + "'");
  Range r{std::stoi(mt[1]), mt[2].matched ? std::stoi(mt[2]) : std::stoi(mt[1])};
  if (r.lo > r.hi) throw CLI::ValidationError("range", "empty range '" + text + "'");
  return r;
}

const CLI::Validator kRangeSyntax(
    [](std::string& s) -> std::string {
      std::smatch mt;
      if (!std::regex_match(s, mt, kRange)) return "expected lo..hi, got '" + s + "'";
      if (mt[2].matched && std::stoi(mt[1]) > std::stoi(mt[2])) return "empty range '" + s + "'";
      return {};
    },
    "LO..HI", "range");

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Result of one subcommand: the text and JSON renderings of the same data.
struct Output {
  std::string text;
  Json json;
  int code = 0;
};

Output torus_output(Json head, const TorusElement& x) {
  head["value"] = to_json(x);
  return {to_string(x) + "\n", std::move(head), 0};
}

Output report_output(const std::string& target, const Report& r) {
  const std::size_t fails = r.failures();
  std::ostringstream os;
  os << "verify " << target << ": " << r.entries.size() << " checks, " << fails << " failures\n" << r.summary();
  Json j = {{"command", "verify"},
            {"target", target},
            {"checks", r.entries.size()},
            {"failures", fails},
            {"report", to_json(r)}};
  return {os.str(), std::move(j), fails == 0 ? 0 : 1};
}

DeltaFormula parse_formula(const std::string& s) {
  if (s == "auto") return DeltaFormula::Auto;
  if (s == "even") return DeltaFormula::EvenWindow;
  return DeltaFormula::OddWindow;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact arithmetic in the quantum cluster algebra A_q(1,4).", "qclust"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  bool as_json = false;
  std::string out_file;
  app.add_flag("--json", as_json, "JSON output");
  app.add_option("--out", out_file, "Write the output to FILE instead of stdout")->type_name("FILE");

  int frame = 1;
  auto add_frame = [&](CLI::App* sub) {
    sub->add_option("--frame", frame, "Torus frame s: coordinates X_s, X_{s+1}")->capture_default_str();
  };
  std::vector<int> frames{1, 2};
  auto add_frames = [&](CLI::App* sub) {
    sub->add_option("--frames", frames, "Frames to check")->delimiter(',')->capture_default_str();
  };

  int m = 0;
  int n = 0;

  auto* expand = app.add_subcommand("expand", "Laurent expansion of X_m");
  expand->add_option("--m", m, "Cluster index")->required();
  add_frame(expand);

  std::string formula = "auto";
  int window_start = 0;
  auto* delta = app.add_subcommand("delta", "Expansion of X_delta");
  add_frame(delta);
  delta->add_option("--formula", formula, "auto (generator), even or odd window formula")
      ->check(CLI::IsMember({"auto", "even", "odd"}))
      ->capture_default_str();
  delta->add_option("--window", window_start, "First index of the four-variable window (even/odd formulas)");

  std::string kind = "F";
  auto* cheb = app.add_subcommand("cheb", "F_n(X_delta) or S_n(X_delta)");
  cheb->add_option("--kind", kind, "F or S")->check(CLI::IsMember({"F", "S"}))->capture_default_str();
  cheb->add_option("--n", n, "Index")->required()->check(CLI::NonNegativeNumber);
  add_frame(cheb);

  std::vector<std::string> factors;
  std::string case_name;
  auto* mul = app.add_subcommand("mul", "Product of expressions, or a closed-form product with --case");
  mul->add_option("factors", factors, "Expressions, multiplied left to right (X[m], F[n], S[n], delta, q^(e/2), ^k, *)");
  mul->add_option("--case", case_name, "Closed form: 1a, 1b, 2, 3a, 3b or 4 (needs --m, --n)");
  mul->add_option("--m", m, "m for --case");
  mul->add_option("--n", n, "n for --case");
  add_frame(mul);

  std::string expr;
  std::string family = "B";
  BasisWindow bwin{-48, 52, 16, 30};
  auto* bexp = app.add_subcommand("basis-expand", "Expansion of an expression in basis B, S or D");
  bexp->add_option("expr", expr, "Expression")->required();
  bexp->add_option("--family", family, "B, S or D")->check(CLI::IsMember({"B", "S", "D"}))->capture_default_str();
  std::string bwin_m = "-48..52";
  bexp->add_option("--m", bwin_m, "Cluster-monomial index window")->check(kRangeSyntax)->capture_default_str();
  bexp->add_option("--degree", bwin.max_degree, "Largest a+b in the window")->capture_default_str();
  bexp->add_option("--max-n", bwin.max_n, "Largest Chebyshev/power index in the window")->capture_default_str();
  add_frame(bexp);

  int a = 0;
  int b = 0;
  auto* tri = app.add_subcommand("triangular", "Triangular basis element C_(a,b) and its E-expansion");
  tri->add_option("--a", a)->required();
  tri->add_option("--b", b)->required();
  add_frame(tri);

  auto* verify = app.add_subcommand("verify", "Exact verification runs");
  verify->require_subcommand(1);

  std::string m_range = "-6..8";
  std::string n_range = "1..8";
  auto* v_thm = verify->add_subcommand("theorem2", "Closed-form products against direct torus products");
  v_thm->add_option("--m", m_range, "m range")->check(kRangeSyntax)->capture_default_str();
  v_thm->add_option("--n", n_range, "n range")->check(kRangeSyntax)->capture_default_str();
  add_frames(v_thm);

  std::string rel_range = "-8..10";
  std::string rec_range = "2..8";
  int cheb_max = 6;
  auto* v_id = verify->add_subcommand(
      "identities", "X_delta formulas, F-products, coefficient identities, the c_{n+1,n+1} recursion, cluster relations");
  v_id->add_option("--m", rel_range, "Cluster relation range (exchange on the interior)")
      ->check(kRangeSyntax)
      ->capture_default_str();
  v_id->add_option("--n", rec_range, "c_{n+1,n+1} recursion range")->check(kRangeSyntax)->capture_default_str();
  v_id->add_option("--cheb-max", cheb_max, "Largest index in the F-product identities")->capture_default_str();
  add_frames(v_id);

  Section4Window s4;
  std::string alpha_range = "-3..5";
  auto* v_s4 = verify->add_subcommand("section4", "Triangular basis statements (frame 1)");
  v_s4->add_option("--ab", s4.ab, "|a|, |b| bound")->capture_default_str();
  v_s4->add_option("--n-max", s4.n_max, "C_(-n,-2n) = S_n for n up to this")->capture_default_str();
  v_s4->add_option("--alpha", alpha_range, "alpha-lattice base points")->check(kRangeSyntax)->capture_default_str();
  v_s4->add_option("--alpha-mult", s4.alpha_mult, "a1, a2 bound")->capture_default_str();
  v_s4->add_option("--sn-formula-max", s4.sn_formula_max, "closed S_n formula up to this n")->capture_default_str();

  std::string pos_m = "-4..6";
  BasisWindow pos_labels{-4, 6, 3, 4};
  std::string pos_family = "B";
  auto* v_pos = verify->add_subcommand("positivity", "Positivity of basis expansions of pairwise label products");
  v_pos->add_option("--family", pos_family, "B, S or D")->check(CLI::IsMember({"B", "S", "D"}))->capture_default_str();
  v_pos->add_option("--m", pos_m, "Label index range")->check(kRangeSyntax)->capture_default_str();
  v_pos->add_option("--degree", pos_labels.max_degree, "Label a+b bound")->capture_default_str();
  v_pos->add_option("--max-n", pos_labels.max_n, "Label Chebyshev/power bound")->capture_default_str();
  v_pos->add_option("--window-m", bwin_m, "Expansion index window")->check(kRangeSyntax)->capture_default_str();
  v_pos->add_option("--window-degree", bwin.max_degree, "Expansion a+b bound")->capture_default_str();
  v_pos->add_option("--window-n", bwin.max_n, "Expansion Chebyshev/power bound")->capture_default_str();
  add_frames(v_pos);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    out << app.help("", e.get_name() == "--help-all" ? CLI::AppFormatMode::All : CLI::AppFormatMode::Normal);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    CLI::App* failing = &app;
    for (CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front(); sub;
         sub = sub->get_subcommands().empty() ? nullptr : sub->get_subcommands().front())
      failing = sub;
    err << failing->help();
    return 2;
  }

  Output result;
  try {
    const Frame f{frame};
    auto window_m = [&] {
      Range r = parse_range(bwin_m);
      bwin.m_lo = r.lo;
      bwin.m_hi = r.hi;
    };
    if (*expand) {
      result = torus_output({{"command", "expand"}, {"m", m}, {"frame", frame}}, cluster_var(m, f));
    } else if (*delta) {
      const DeltaFormula df = parse_formula(formula);
      Json head = {{"command", "delta"}, {"frame", frame}, {"formula", formula}};
      if (df == DeltaFormula::Auto) {
        result = torus_output(std::move(head), x_delta(f));
      } else {
        if ((window_start % 2 == 0) != (df == DeltaFormula::EvenWindow))
          throw UsageError("--window parity does not match --formula " + formula);
        head["window"] = window_start;
        result = torus_output(std::move(head), x_delta_from_window(f, df, window_start));
      }
    } else if (*cheb) {
      const ChebyshevKind k = kind == "F" ? ChebyshevKind::F : ChebyshevKind::S;
      result = torus_output({{"command", "cheb"}, {"kind", kind}, {"n", n}, {"frame", frame}}, chebyshev(k, n, f));
    } else if (*mul) {
      if (!case_name.empty()) {
        if (!factors.empty()) throw UsageError("--case takes no expressions");
        if (mul->count("--m") == 0 || mul->count("--n") == 0) throw UsageError("--case needs --m and --n");
        const TheoremCase tc = parse_case(case_name);
        const FormalCombination rhs = theorem2_rhs(tc, m, n);
        const TorusElement diff = theorem2_lhs(tc, m, n, f) - realize(rhs, f);
        result.text = to_string(rhs) + "\n";
        result.json = {{"command", "mul"},      {"case", to_string(tc)}, {"m", m}, {"n", n}, {"frame", frame},
                       {"rhs", to_json(rhs)}, {"match", diff.is_zero()}};
        if (!diff.is_zero()) {
          result.text += "mismatch: " + to_string(diff) + "\n";
          result.json["diff"] = to_json(diff);
          result.code = 1;
        }
      } else {
        if (factors.empty()) throw UsageError("mul needs expressions or --case");
        TorusElement prod = evaluate_expression(factors.front(), f);
        for (std::size_t i = 1; i < factors.size(); ++i) prod = prod * evaluate_expression(factors[i], f);
        result = torus_output({{"command", "mul"}, {"factors", factors}, {"frame", frame}}, prod);
      }
    } else if (*bexp) {
      window_m();
      const TorusElement x = evaluate_expression(expr, f);
      Json head = {{"command", "basis-expand"}, {"expr", expr}, {"family", family}, {"frame", frame}};
      try {
        const FormalCombination c = expand_in_basis(x, parse_family(family), f, bwin);
        head["expansion"] = to_json(c);
        result = {to_string(c) + "\n", std::move(head), 0};
      } catch (const ExpansionFailure& e) {
        head["residue"] = to_json(e.residue());
        head["partial"] = to_json(e.partial());
        result = {"residue: " + to_string(e.residue()) + "\npartial: " + to_string(e.partial()) + "\n",
                  std::move(head), 1};
      }
    } else if (*tri) {
      const TriangularElement& c = TriangularTable::global(f).c({a, b});
      result.text = "value: " + to_string(c.value) + "\nexpansion: " + to_string(c.expansion) + "\n";
      result.json = {{"command", "triangular"}, {"a", a},           {"b", b},
                     {"frame", frame},          {"value", to_json(c.value)}, {"expansion", to_json(c.expansion)}};
    } else if (*v_thm) {
      const Range mr = parse_range(m_range), nr = parse_range(n_range);
      VerifyOptions opts;
      opts.frames = frames;
      result = report_output("theorem2", verify_theorem2(mr.lo, mr.hi, nr.lo, nr.hi, opts));
    } else if (*v_id) {
      const Range mr = parse_range(rel_range), nr = parse_range(rec_range);
      Report r;
      for (int s : frames) {
        r.append(verify_delta_formulas(Frame{s}));
        r.append(verify_chebyshev_products(cheb_max, Frame{s}));
      }
      r.append(verify_coefficient_identities(nr.lo, nr.hi));
      r.append(verify_cluster_relations(mr.lo, mr.hi, frames));
      result = report_output("identities", r);
    } else if (*v_s4) {
      const Range ar = parse_range(alpha_range);
      s4.alpha_lo = ar.lo;
      s4.alpha_hi = ar.hi;
      result = report_output("section4", verify_section4(s4));
    } else if (*v_pos) {
      window_m();
      const Range lr = parse_range(pos_m);
      pos_labels.m_lo = lr.lo;
      pos_labels.m_hi = lr.hi;
      result = report_output("positivity", verify_product_positivity(parse_family(pos_family), pos_labels, bwin, frames));
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralViolation& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string rendered = as_json ? result.json.dump(2) + "\n" : result.text;
  if (out_file.empty()) {
    out << rendered;
  } else {
    std::ofstream file(out_file, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << out_file << "\n";
      return 2;
    }
    file << rendered;
  }
  return result.code;
}

}  // namespace qclust::cli
