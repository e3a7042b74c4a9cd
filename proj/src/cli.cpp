#include "gfc/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "gfc/ce_engine.hpp"
#include "gfc/errors.hpp"
#include "gfc/invariants.hpp"
#include "gfc/weil.hpp"

namespace gfc::cli {

using io::Json;

namespace {

constexpr std::size_t kMaxGroupOrder = 2048;

std::string matrix_key(const rep::Matrix& m) {
  std::string s;
  for (const auto& row : m)
    for (const auto& x : row) s += gfc::to_string(x) + ",";
  return s;
}

rep::Matrix generator_matrix_group_element(const io::Action& a) { return a.generator; }

}  // namespace

rep::FiniteMatrixGroup matrix_group(const io::Action& a) {
  std::vector<rep::Matrix> gens;
  bool closure = a.closure;
  if (a.kind == io::ActionKind::RealCyclicGenerator) {
    gens.push_back(generator_matrix_group_element(a));
    closure = true;
  } else {
    require(a.kind == io::ActionKind::RealMatrixGroup, "action is not given by matrices");
    gens = a.matrices;
  }
  if (!closure) return rep::FiniteMatrixGroup(gens, kMaxGroupOrder);
  const std::size_t n = gens.front().size();
  for (const auto& g : gens) require(g.size() == n, "generators must share one size");
  std::vector<rep::Matrix> elements{rep::identity_matrix(n)};
  std::set<std::string> seen{matrix_key(elements.front())};
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (const auto& g : gens) {
      rep::Matrix p = rep::multiply(elements[i], g);
      if (seen.insert(matrix_key(p)).second) {
        if (elements.size() >= kMaxGroupOrder)
          throw InputError("generated group exceeds order " + std::to_string(kMaxGroupOrder));
        elements.push_back(std::move(p));
      }
    }
  return rep::FiniteMatrixGroup(std::move(elements), kMaxGroupOrder);
}

rep::Decomposition decompose(const io::Action& a) {
  switch (a.kind) {
    case io::ActionKind::Decomposition: a.decomposition.validate(); return a.decomposition;
    case io::ActionKind::RealCyclicBlocks: return rep::decompose_real_cyclic(a.order, a.blocks);
    case io::ActionKind::ComplexCyclic: return rep::decompose_complex(a.order, a.weights);
    case io::ActionKind::RealCyclicGenerator: {
      std::size_t order = a.order;
      if (order == 0) {
        const auto o = rep::matrix_order(a.generator);
        require(o.has_value(), "generator has no finite order below the search limit");
        order = *o;
      }
      return rep::decompose_real_cyclic(order, a.generator);
    }
    case io::ActionKind::RealMatrixGroup: return rep::decompose_real_group(matrix_group(a));
  }
  throw InputError("unknown action kind");
}

Json cmd_decompose(const io::Action& a) { return io::to_json(decompose(a)); }

Json cmd_cohomology(const rep::Decomposition& d, int max_degree, cc::Mode mode, unsigned jobs) {
  require(max_degree >= 0, "maxDegree must be non-negative");
  const weil::LieProduct product = cc::lie_product_for(d);
  const int bound = 2 * static_cast<int>(d.dimV0);
  Json j;
  j["schema"] = "gfc.betti/v1";
  j["decomposition"] = io::to_json(d);
  j["mode"] = cc::to_string(mode);
  j["lieAlgebra"] = product.label();
  j["truncationBound"] = bound;
  j["maxDegree"] = max_degree;
  if (mode == cc::Mode::Absolute) {
    const gca::FreeGCA w = weil::weil_algebra(product, bound);
    j["complexDims"] = gca::hilbert_series(w, max_degree + 1);
    j["betti"] = io::to_json(gca::cdga_cohomology(w, max_degree, false, jobs));
  } else {
    const auto rel = weil::relative_weil(product, cc::subalgebra_for(d, mode), bound, max_degree, jobs);
    std::vector<std::size_t> dims;
    for (const auto& b : rel.complex.basis) dims.push_back(b.size());
    j["complexDims"] = dims;
    j["betti"] = io::to_json(weil::relative_cohomology(rel, false, jobs));
  }
  return j;
}

Json cmd_oracle(const rep::Decomposition& d, int max_degree, unsigned jobs) {
  require(max_degree >= 0, "maxDegree must be non-negative");
  const int window = ce::required_window(max_degree);
  const lie::LieAlgebra wx = ce::build_wx(d, window);
  const auto oracle = ce::weight_zero_cohomology(wx, max_degree, jobs);
  const weil::LieProduct product = cc::lie_product_for(d);
  const int bound = 2 * static_cast<int>(d.dimV0);
  const auto weil_betti = gca::cdga_cohomology(weil::weil_algebra(product, bound), max_degree, false, jobs);
  bool match = true;
  for (std::size_t q = 0; q <= static_cast<std::size_t>(max_degree); ++q)
    match = match && oracle.at(q).has_value() && oracle.at(q) == weil_betti.at(q);
  Json j;
  j["schema"] = "gfc.comparison/v1";
  j["decomposition"] = io::to_json(d);
  j["maxDegree"] = max_degree;
  j["oracle"] = Json{{"method", "weight-zero Chevalley-Eilenberg complex of W_X"},
                     {"weightWindow", d.dimV0 > 0 ? Json(window) : Json("none")},
                     {"sliceDim", wx.dim()},
                     {"betti", io::to_json(oracle)}};
  j["weil"] = Json{{"method", "truncated Weil algebra"},
                   {"lieAlgebra", product.label()},
                   {"truncationBound", bound},
                   {"betti", io::to_json(weil_betti)}};
  j["match"] = match;
  return j;
}

Json cmd_classes(const io::Action& a, std::optional<cc::Mode> mode_opt, int max_degree, unsigned jobs) {
  require(max_degree >= 0, "maxDegree must be non-negative");
  const cc::Mode mode =
      mode_opt ? *mode_opt : (a.field == rep::Field::Complex ? cc::Mode::RelativeGl : cc::Mode::RelativeO);
  std::vector<cc::InertiaEntry> entries;
  std::size_t group_order = 1;
  switch (a.kind) {
    case io::ActionKind::Decomposition: {
      cc::InertiaEntry e;
      e.label = "given";
      e.report = cc::char_class_ring(a.decomposition, mode, max_degree, jobs);
      e.report.inertia_label = e.label;
      e.fixed_dim = a.decomposition.dimV0;
      entries.push_back(std::move(e));
      break;
    }
    case io::ActionKind::RealCyclicBlocks:
      entries = cc::inertia_report(a.order, a.blocks, mode, max_degree, jobs);
      group_order = a.order;
      break;
    case io::ActionKind::ComplexCyclic:
      entries = cc::inertia_report(a.order, a.weights, mode, max_degree, jobs);
      group_order = a.order;
      break;
    case io::ActionKind::RealCyclicGenerator:
    case io::ActionKind::RealMatrixGroup: {
      const auto g = matrix_group(a);
      if (a.kind == io::ActionKind::RealCyclicGenerator && a.order != 0)
        require(g.order() == a.order, "generator has order " + std::to_string(g.order()) + ", not the declared " +
                                          std::to_string(a.order));
      entries = cc::inertia_report(g, mode, max_degree, jobs);
      group_order = g.order();
      break;
    }
  }
  Json j;
  j["schema"] = "gfc.classes/v1";
  j["mode"] = cc::to_string(mode);
  j["maxDegree"] = max_degree;
  j["scope"] = "one report per conjugacy class; fixed-point components are not separated";
  std::size_t total = 0;
  j["components"] = Json::array();
  for (const auto& e : entries) {
    total += e.class_size;
    j["components"].push_back(io::to_json(e));
  }
  j["classEquation"] = Json{{"sum", total}, {"groupOrder", group_order}, {"holds", total == group_order}};
  ensure(total == group_order, "class equation fails");
  return j;
}

Json cmd_invariants(std::size_t r, std::size_t s, std::size_t dim_v0, std::size_t dim_w) {
  const std::size_t predicted = inv::inv_dim_predicted(r, s, dim_v0, dim_w);
  const std::size_t brute = inv::inv_dim_bruteforce(r, s, dim_v0, dim_w);
  Json j;
  j["schema"] = "gfc.invariants/v1";
  j["r"] = r;
  j["s"] = s;
  j["dimV0"] = dim_v0;
  j["dimW"] = dim_w;
  j["predicted"] = predicted;
  j["bruteforce"] = brute;
  j["match"] = predicted == brute;
  return j;
}

namespace {

std::string cell(const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); }

void betti_rows(std::ostringstream& s, const std::string& title, const Json& betti) {
  s << title << "\n  degree:";
  for (std::size_t q = 0; q < betti.size(); ++q) s << std::setw(8) << q;
  s << "\n  betti: ";
  for (const auto& b : betti) s << std::setw(8) << (b.is_string() ? "?" : cell(b));
  s << "\n";
}

void decomposition_line(std::ostringstream& s, const Json& d) {
  s << "decomposition: field=" << cell(d["field"]) << " dimV0=" << cell(d["dimV0"])
    << " mMinus1=" << cell(d["mMinus1"]);
  for (const auto& f : d["factors"]) s << " [" << cell(f["label"]) << ": m=" << cell(f["m"]) << " dim=" << cell(f["dim"]) << "]";
  if (d.contains("beyondHypothesis")) s << " (beyond the cyclic hypothesis)";
  s << "\n";
}

void report_block(std::ostringstream& s, const Json& r) {
  decomposition_line(s, r["decomposition"]);
  s << "lie algebra: " << cell(r["lieAlgebra"]) << "  mode: " << cell(r["mode"])
    << "  truncation bound: " << cell(r["truncationBound"]) << "\n";
  betti_rows(s, "cohomology", r["betti"]);
  s << "generators:";
  for (const auto& g : r["generators"]) s << " " << cell(g["name"]) << "(" << cell(g["degree"]) << "," << cell(g["kind"]) << ")";
  s << "\nsecondary:";
  if (r["secondary"].empty()) s << " none";
  for (const auto& g : r["secondary"])
    s << " " << cell(g["name"]) << "(deg " << cell(g["degree"]) << ", p=" << cell(g["filtration"])
      << (g["corner"].get<bool>() ? ", corner" : "") << ")";
  s << "\nvanishing above degree " << cell(r["vanishing"]["bound"]) << ":";
  for (const auto& m : r["vanishing"]["monomials"]) s << " " << cell(m["monomial"]);
  s << (r["vanishing"]["verified"].get<bool>() ? "  (verified)" : "  (NOT verified)") << "\n";
}

}  // namespace

std::string render_table(const std::string& command, const Json& doc) {
  std::ostringstream s;
  if (command == "decompose") {
    decomposition_line(s, doc);
  } else if (command == "cohomology") {
    decomposition_line(s, doc["decomposition"]);
    s << "lie algebra: " << cell(doc["lieAlgebra"]) << "  mode: " << cell(doc["mode"])
      << "  truncation bound: " << cell(doc["truncationBound"]) << "\n";
    betti_rows(s, "cohomology", doc["betti"]);
  } else if (command == "oracle") {
    decomposition_line(s, doc["decomposition"]);
    betti_rows(s, "weight-zero CE oracle (slice dim " + cell(doc["oracle"]["sliceDim"]) + ")", doc["oracle"]["betti"]);
    betti_rows(s, "truncated Weil (" + cell(doc["weil"]["lieAlgebra"]) + ")", doc["weil"]["betti"]);
    s << (doc["match"].get<bool>() ? "MATCH" : "MISMATCH") << "\n";
  } else if (command == "classes") {
    s << "mode: " << cell(doc["mode"]) << "  components: " << doc["components"].size() << "\n";
    for (const auto& c : doc["components"]) {
      s << "\n== " << cell(c["label"]) << " (order " << cell(c["order"]) << ", class size " << cell(c["classSize"])
        << ", fixed dim " << cell(c["fixedDim"]) << ")\n";
      report_block(s, c["report"]);
    }
  } else if (command == "invariants") {
    s << "r=" << cell(doc["r"]) << " s=" << cell(doc["s"]) << " dimV0=" << cell(doc["dimV0"])
      << " dimW=" << cell(doc["dimW"]) << "\npredicted:   " << cell(doc["predicted"])
      << "\nbrute force: " << cell(doc["bruteforce"]) << "\n"
      << (doc["match"].get<bool>() ? "MATCH" : "MISMATCH") << "\n";
  } else {
    s << doc.dump(2) << "\n";
  }
  return s.str();
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return 2;
  if (dynamic_cast<const QuaternionicError*>(&e)) return 3;
  if (dynamic_cast<const InfeasibleError*>(&e)) return 4;
  return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gelfand-Fuchs cohomology of invariant formal vector fields via truncated Weil algebras", "gfcoh"};
  app.require_subcommand(1);
  app.fallthrough();
  JobConfig cfg;
  std::string mode;
  app.add_option("--input", cfg.input, "Action or Decomposition JSON: a file path or an inline document");
  app.add_option("--max-degree", cfg.max_degree, "Highest cohomological degree to report")->check(CLI::NonNegativeNumber);
  app.add_option("--mode", mode, "absolute | relative-gl | relative-so | relative-o")
      ->check(CLI::IsMember({"absolute", "relative-gl", "relative-so", "relative-o"}));
  app.add_option("--format", cfg.format, "json | table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for randomized runs (outputs never depend on it)");
  app.add_option("--r", cfg.r, "invariants: number of Sym2(V0*) x V0 slots");
  app.add_option("--s", cfg.s, "invariants: number of W x W* x V0* slots");
  app.add_option("--dim-v0", cfg.dim_v0, "invariants: dim V0");
  app.add_option("--dim-w", cfg.dim_w, "invariants: dim W");
  app.add_subcommand("decompose", "Isotypic decomposition of an action");
  app.add_subcommand("cohomology", "Betti table of the truncated (relative) Weil algebra");
  app.add_subcommand("oracle", "Compare the weight-zero CE oracle with the Weil pipeline");
  app.add_subcommand("classes", "Characteristic-class rings per inertia component");
  app.add_subcommand("invariants", "Predicted vs brute-force gl(V0)+gl(W) invariant dimensions");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (!mode.empty()) cfg.mode = mode;

  try {
    Json doc;
    auto action = [&] {
      if (cfg.input.empty()) throw InputError("--input is required for " + cfg.command);
      return io::parse_action(io::parse_json(io::read_input(cfg.input)));
    };
    bool ok = true;
    if (cfg.command == "decompose") {
      doc = cmd_decompose(action());
    } else if (cfg.command == "cohomology") {
      doc = cmd_cohomology(decompose(action()), cfg.max_degree, cfg.mode ? cc::parse_mode(*cfg.mode) : cc::Mode::Absolute,
                           cfg.jobs);
    } else if (cfg.command == "oracle") {
      if (cfg.mode && *cfg.mode != "absolute") throw InputError("oracle compares absolute cohomology only");
      doc = cmd_oracle(decompose(action()), cfg.max_degree, cfg.jobs);
      ok = doc["match"].get<bool>();
    } else if (cfg.command == "classes") {
      doc = cmd_classes(action(), cfg.mode ? std::optional<cc::Mode>(cc::parse_mode(*cfg.mode)) : std::nullopt,
                        cfg.max_degree, cfg.jobs);
    } else {
      doc = cmd_invariants(cfg.r, cfg.s, cfg.dim_v0, cfg.dim_w);
      ok = doc["match"].get<bool>();
    }
    out << (cfg.format == "table" ? render_table(cfg.command, doc) : io::dump(doc));
    if (!ok) err << "error: the two computations disagree\n";
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  }
}

}  // namespace gfc::cli
