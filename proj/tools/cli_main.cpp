#include "cli_main.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semibj/semibj.hpp"

namespace {

using namespace semibj;

struct CliState {
  Tolerances tol;
  int restarts = 64;
  std::uint64_t seed = 1;
  std::size_t grid = 256;
  std::string in_path;
  std::string out_path;
};

struct Loaded {
  ProblemInstance p;
  SpacePtr sp;
};

Loaded load(const CliState& st) {
  Loaded l;
  l.p = load_problem(st.in_path);
  l.sp = make_space(l.p.a, st.tol);
  return l;
}

void emit(const CliState& st, const std::string& text) {
  if (st.out_path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(st.out_path);
  if (!out) throw ParseError("cannot open '" + st.out_path + "' for writing");
  out << text << '\n';
}

void emit(const CliState& st, const Json& j) { emit(st, j.dump(2)); }

int run_space_info(const CliState& st) {
  const Loaded l = load(st);
  Json eigs = Json::array();
  for (const double v : l.sp->weight_eigs()) eigs.push_back(v);
  emit(st, Json{{"n", l.sp->dim()},
                {"rank", l.sp->rank()},
                {"weight_eigs", std::move(eigs)}});
  return 0;
}

int run_is_abounded(const CliState& st) {
  const Loaded l = load(st);
  const BoundednessCheck ct = check_a_bounded(l.sp, l.p.t);
  const BoundednessCheck cs = check_a_bounded(l.sp, l.p.s);
  const auto one = [](const BoundednessCheck& c) {
    return Json{{"ok", c.ok}, {"residual", c.residual}, {"scale", c.scale}};
  };
  emit(st, Json{{"T", one(ct)}, {"S", one(cs)}});
  return 0;
}

int run_seminorm(const CliState& st) {
  const Loaded l = load(st);
  const AOperator t(l.sp, l.p.t), s(l.sp, l.p.s);
  emit(st, Json{{"T", t.opnorm()}, {"S", s.opnorm()}});
  return 0;
}

int run_minmod(const CliState& st) {
  const Loaded l = load(st);
  const AOperator t(l.sp, l.p.t), s(l.sp, l.p.s);
  emit(st, Json{{"T", t.minmod()}, {"S", s.minmod()}});
  return 0;
}

int run_bj_check(const CliState& st) {
  const Loaded l = load(st);
  const AOperator t(l.sp, l.p.t), s(l.sp, l.p.s);
  emit(st, bj_to_json(bj_check(t, s)));
  return 0;
}

int run_witness(const CliState& st) {
  const Loaded l = load(st);
  const AOperator t(l.sp, l.p.t), s(l.sp, l.p.s);
  const BjResult bj = bj_check(t, s);
  if (!bj.orthogonal) {
    emit(st, Json{{"found", false},
                  {"orthogonal", false},
                  {"margin", bj.margin}});
    return 0;
  }
  const Witness w = find_witness(t, s, st.restarts, st.seed);
  Json j = witness_to_json(w);
  j["found"] = true;
  j["orthogonal"] = true;
  emit(st, j);
  return 0;
}

int run_wset(const CliState& st, bool csv) {
  const Loaded l = load(st);
  const AOperator t(l.sp, l.p.t), s(l.sp, l.p.s);
  const OrthogonalitySet ws = wset_build(t, s, st.grid);
  if (csv) {
    std::ostringstream os;
    os.precision(17);
    for (const SupportSample& smp : ws.samples)
      os << smp.theta << ',' << smp.h << ',' << smp.boundary.real() << ','
         << smp.boundary.imag() << '\n';
    std::string text = os.str();
    if (!text.empty()) text.pop_back();  // emit() supplies the last newline
    emit(st, text);
  } else {
    emit(st, wset_to_json(ws));
  }
  return 0;
}

int run_distance(const CliState& st, const std::string& method) {
  const Loaded l = load(st);
  const AOperator t(l.sp, l.p.t), s(l.sp, l.p.s);
  if (method == "gamma") {
    const GammaMin g = dist_gamma(t, s);
    emit(st, Json{{"d", g.d},
                  {"zeta0", cplx_to_json(g.zeta0)},
                  {"unique", g.unique}});
  } else if (method == "phi") {
    const PhiMax p = dist_phi(t, s, st.restarts, st.seed);
    emit(st, Json{{"d", p.d}, {"maximizer", vec_to_json(p.maximizer)}});
  } else if (method == "pairs") {
    emit(st, Json{{"d", dist_pairs(t, s, st.restarts, st.seed)}});
  } else {
    emit(st, distance_to_json(distance_all(t, s, st.restarts, st.seed)));
  }
  return 0;
}

int run_zeta(const CliState& st) {
  const Loaded l = load(st);
  const AOperator t(l.sp, l.p.t), s(l.sp, l.p.s);
  emit(st, zeta_to_json(zeta_unique_check(t, s)));
  return 0;
}

int run_infsup(const CliState& st) {
  const Loaded l = load(st);
  const AOperator t(l.sp, l.p.t), s(l.sp, l.p.s);
  const InfSupResult r = infsup_check(t, s, st.restarts, st.seed);
  emit(st, Json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"gap", r.gap}});
  return 0;
}

int run_verify(const CliState& st) {
  const Loaded l = load(st);
  const VerifyReport rep = verify_all(l.p, st.tol, st.restarts);
  emit(st, report_to_json(rep));
  return rep.overall ? 0 : 3;
}

int run_fuzz(const CliState& st, std::size_t count, std::size_t dim) {
  if (dim == 0) throw ParseError("--dim must be at least 1");
  std::vector<VerifyReport> reports(count);
  parallel_for_index(count, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(st.seed, i);
    Rng pick(derive_seed(seed, 0xfa11));
    const std::size_t n = 1 + pick.index(dim);
    const std::size_t r = 1 + pick.index(n);
    const bool plant = pick.index(2) == 1;
    const int variant = static_cast<int>(pick.index(3));
    reports[i] =
        verify_all(gen_problem(n, r, seed, plant, variant), st.tol, st.restarts);
  });
  std::size_t violations = 0;
  Json failures = Json::array();
  for (std::size_t i = 0; i < count; ++i) {
    if (reports[i].overall) continue;
    ++violations;
    for (const CheckRecord& c : reports[i].checks)
      if (c.status == CheckStatus::fail)
        failures.push_back(Json{{"index", i},
                                {"seed", reports[i].seed},
                                {"check", c.name},
                                {"value", c.value},
                                {"tolerance", c.tolerance},
                                {"note", c.note}});
  }
  emit(st, Json{{"count", count},
                {"violations", violations},
                {"threads", thread_budget()},
                {"failures", std::move(failures)}});
  return violations == 0 ? 0 : 3;
}

int run_gen(const CliState& st, std::size_t dim, long long rank, bool plant,
            int variant) {
  const std::size_t r =
      rank < 0 ? dim : static_cast<std::size_t>(rank);  // default: full rank
  const ProblemInstance p = gen_problem(dim, r, st.seed, plant, variant);
  emit(st, problem_to_json(p));
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"operator geometry under a positive semidefinite weight"};
  app.require_subcommand(1);
  app.fallthrough();

  CliState st;
  app.add_option("--tol-rank", st.tol.rank, "rank cutoff factor");
  app.add_option("--tol-zero", st.tol.zero, "zero-decision tolerance");
  app.add_option("--tol-member", st.tol.member, "membership margin factor");
  app.add_option("--restarts", st.restarts, "search restarts")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", st.seed, "random seed");
  app.add_option("--grid", st.grid, "support sampling resolution")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", st.out_path, "write output to this file");

  const auto with_input = [&](CLI::App* sc) {
    sc->add_option("--in", st.in_path, "problem file (JSON)")->required();
    return sc;
  };

  with_input(app.add_subcommand("space-info",
                                "dimension, rank, and weight spectrum"));
  with_input(app.add_subcommand("is-abounded",
                                "do T and S respect the null space of A"));
  with_input(app.add_subcommand("seminorm", "operator seminorms of T and S"));
  with_input(app.add_subcommand("minmod", "minimum moduli of T and S"));
  with_input(app.add_subcommand("bj-check",
                                "is T orthogonal to S in the weighted sense"));
  with_input(app.add_subcommand("witness", "certifying direction for T; S"));
  CLI::App* sc_wset = with_input(
      app.add_subcommand("wset", "joint range set with support polygon"));
  bool csv = false;
  sc_wset->add_flag("--csv", csv, "emit theta,h,re,im lines instead of JSON");
  CLI::App* sc_dist = with_input(
      app.add_subcommand("distance", "distance from T to multiples of S"));
  std::string method = "all";
  sc_dist->add_option("--method", method, "gamma|phi|pairs|all")
      ->check(CLI::IsMember({"gamma", "phi", "pairs", "all"}));
  with_input(app.add_subcommand("zeta", "minimizer location and uniqueness"));
  with_input(app.add_subcommand("infsup", "exchange of inf and sup"));
  with_input(app.add_subcommand("verify", "run every property check"));

  CLI::App* sc_fuzz =
      app.add_subcommand("fuzz", "verify a stream of random instances");
  std::size_t count = 100, dim = 6;
  sc_fuzz->add_option("--count", count, "number of instances");
  sc_fuzz->add_option("--dim", dim, "largest dimension")
      ->check(CLI::PositiveNumber);

  CLI::App* sc_gen =
      app.add_subcommand("gen", "write a random problem instance");
  std::size_t gdim = 4;
  long long grank = -1;
  bool gortho = false;
  int gvariant = 0;
  sc_gen->add_option("--dim", gdim, "dimension")->check(CLI::PositiveNumber);
  sc_gen->add_option("--rank", grank, "weight rank (default: full)");
  sc_gen->add_flag("--orthogonal", gortho, "plant an orthogonal pair");
  sc_gen->add_option("--variant", gvariant, "generator variant 0..2")
      ->check(CLI::Range(0, 2));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand("space-info")) return run_space_info(st);
    if (app.got_subcommand("is-abounded")) return run_is_abounded(st);
    if (app.got_subcommand("seminorm")) return run_seminorm(st);
    if (app.got_subcommand("minmod")) return run_minmod(st);
    if (app.got_subcommand("bj-check")) return run_bj_check(st);
    if (app.got_subcommand("witness")) return run_witness(st);
    if (app.got_subcommand("wset")) return run_wset(st, csv);
    if (app.got_subcommand("distance")) return run_distance(st, method);
    if (app.got_subcommand("zeta")) return run_zeta(st);
    if (app.got_subcommand("infsup")) return run_infsup(st);
    if (app.got_subcommand("verify")) return run_verify(st);
    if (app.got_subcommand("fuzz")) return run_fuzz(st, count, dim);
    if (app.got_subcommand("gen")) return run_gen(st, gdim, grank, gortho, gvariant);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
