#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "orbitlab/orbitlab.hpp"

using namespace orbitlab;
using io::json;

namespace {

enum Exit { Ok = 0, Internal = 1, Precondition = 2, InconclusiveOnly = 3 };

struct Global {
  std::string format = "auto";
  std::uint64_t seed = 1;
  long precision_bits = 0;
};

Global g_opts;

bool want_json(bool default_json) {
  if (g_opts.format == "json") return true;
  if (g_opts.format == "tsv") return false;
  return default_json;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

/// Reads `arg` as a file when one exists at that path, else as inline JSON.
json json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[') && !std::filesystem::exists(arg))
    return io::parse_json(arg);
  return io::parse_json(io::read_file(arg));
}

/// "1,0;0,1" or a JSON array of integer arrays.
std::vector<ProjPoint> point_list(const std::string& s) {
  std::vector<ProjPoint> out;
  if (s.find("[[") != std::string::npos) {
    for (const auto& row : io::parse_json(s)) {
      std::vector<BigInt> c;
      for (const auto& x : row) c.push_back(io::detail::as_int(x, "coordinate"));
      out.push_back(ProjPoint::from_integers(c));
    }
    return out;
  }
  for (const auto& part : io::split(s, ';'))
    if (!part.empty()) out.push_back(io::parse_point(part));
  return out;
}

std::string point_tsv(const ProjPoint& P) {
  std::string s = io::points_tsv({P});
  s.pop_back();
  return s;
}

// Options shared by the commands that take a morphism.
struct MapOpts {
  std::string map;
  std::string cert;
  bool heuristic = false;
  std::size_t samples = 10000;

  void add(CLI::App* c) {
    c->add_option("--map", map, "morphism JSON file or inline JSON")->required();
    c->add_option("--cert", cert, "Nullstellensatz certificate JSON file");
    c->add_flag("--heuristic-constants", heuristic, "estimate comparison constants by sampling");
    c->add_option("--samples", samples, "samples for heuristic constants");
  }
  MorphismPN morphism() const { return io::parse_morphism(json_arg(map)); }
  ComparisonConstants constants(const MorphismPN& f) const {
    if (!cert.empty()) return comparison_constants(f, io::parse_certificate(json_arg(cert), f));
    if (heuristic) {
      ConstantsHeuristic h;
      h.samples = samples;
      h.seed = g_opts.seed;
      return comparison_constants(f, h);
    }
    return comparison_constants(f);
  }
};

TriangularMap matrix_arg(const std::string& s) { return TriangularMap(io::parse_matrix(json_arg(s))); }

std::string density_tsv(const DensityCertificate& c) {
  std::string s = "D\tpoints\tmonomials\trank\tdense\n";
  s += std::to_string(c.D) + "\t" + std::to_string(c.n_points) + "\t" + std::to_string(c.n_monomials) + "\t" +
       std::to_string(c.rank) + "\t" + (c.dense ? "yes" : "no") + "\n";
  for (const auto& k : c.kernel_basis) s += "kernel\t" + k.str() + "\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbitlab: orbits, heights and density for morphisms of projective space"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", g_opts.format, "output format")->check(CLI::IsMember({"auto", "tsv", "json"}));
  app.add_option("--seed", g_opts.seed, "seed for heuristic sampling");
  app.add_option("--precision-bits", g_opts.precision_bits, "working precision (overrides ORBITLAB_PRECISION_BITS)");

  std::function<int()> run;

  // -- core ----------------------------------------------------------------
  std::string coords;
  auto* c_norm = app.add_subcommand("normalize", "normalize rational homogeneous coordinates");
  c_norm->add_option("--coords", coords, "comma separated rationals")->required();
  c_norm->callback([&] {
    run = [&] {
      const auto P = normalize_point(io::parse_rat_list(coords));
      if (want_json(false)) emit(io::to_json(P));
      else std::cout << point_tsv(P) << "\n";
      return Ok;
    };
  });

  MapOpts mo;
  std::string p_str, q_str;
  std::size_t n_steps = 1;
  auto* c_eval = app.add_subcommand("evaluate", "image f(P)");
  mo.add(c_eval);
  c_eval->add_option("--p", p_str, "point")->required();
  c_eval->callback([&] {
    run = [&] {
      const auto Q = evaluate(mo.morphism(), io::parse_point(p_str));
      if (want_json(false)) emit(io::to_json(Q));
      else std::cout << point_tsv(Q) << "\n";
      return Ok;
    };
  });

  auto* c_iter = app.add_subcommand("iterate", "n-th iterate f^n(P)");
  mo.add(c_iter);
  c_iter->add_option("--p", p_str, "point")->required();
  c_iter->add_option("--n", n_steps, "number of steps")->required();
  c_iter->callback([&] {
    run = [&] {
      const auto Q = iterate(mo.morphism(), io::parse_point(p_str), n_steps);
      if (want_json(false)) emit(io::to_json(Q));
      else std::cout << point_tsv(Q) << "\n";
      return Ok;
    };
  });

  OrbitBudget ob;
  auto* c_class = app.add_subcommand("classify", "preperiodic or wandering");
  mo.add(c_class);
  c_class->add_option("--p", p_str, "point")->required();
  c_class->add_option("--max-steps", ob.max_steps, "step budget");
  c_class->add_option("--cap-bits", ob.cap_bits, "height cap in bits");
  c_class->callback([&] {
    run = [&] {
      const auto f = mo.morphism();
      const auto r = classify_preperiodic(f, io::parse_point(p_str), ob, mo.constants(f));
      if (want_json(true)) emit(io::to_json(r));
      else std::cout << to_string(r.classification) << "\n";
      return std::holds_alternative<Inconclusive>(r.classification) ? InconclusiveOnly : Ok;
    };
  });

  std::string wd_method = "exact";
  WdHeuristic wdh;
  auto* c_wd = app.add_subcommand("well-defined", "check that f has no common zero");
  c_wd->add_option("--map", mo.map, "morphism JSON file or inline JSON")->required();
  c_wd->add_option("--method", wd_method, "exact (N=1) or heuristic")->check(CLI::IsMember({"exact", "heuristic"}));
  c_wd->add_option("--samples", wdh.samples, "random points per check");
  c_wd->add_option("--primes", wdh.prime_count, "number of primes");
  c_wd->callback([&] {
    run = [&] {
      const auto f = mo.morphism();
      json j;
      try {
        wdh.seed = g_opts.seed;
        const WdStatus s = wd_method == "exact" ? check_well_defined(f, WdExactN1{}) : check_well_defined(f, wdh);
        j = {{"status", s == WdStatus::CertifiedWellDefined ? "CertifiedWellDefined" : "HeuristicallyChecked"}};
      } catch (const NotAMorphism& e) {
        j = {{"status", "NotAMorphism"}};
        j["witness"] = e.witness() ? io::to_json(*e.witness()) : json(nullptr);
      }
      if (want_json(true)) emit(j);
      else std::cout << j["status"].get<std::string>() << (j.contains("witness") ? "\t" + j["witness"].dump() : "") << "\n";
      return Ok;
    };
  });

  auto* c_parse = app.add_subcommand("parse", "parse a morphism and print its canonical form");
  c_parse->add_option("--map", mo.map, "morphism JSON file or inline JSON")->required();
  c_parse->callback([&] {
    run = [&] {
      const auto f = mo.morphism();
      if (want_json(true)) std::cout << io::to_json(f).dump() << "\n";
      else std::cout << f.str() << "\n";
      return Ok;
    };
  });

  // -- heights -------------------------------------------------------------
  auto* c_weil = app.add_subcommand("weil-height", "H(P) and h(P) = log H(P)");
  c_weil->add_option("--p", p_str, "point")->required();
  c_weil->callback([&] {
    run = [&] {
      const auto h = weil_height(io::parse_point(p_str));
      if (want_json(true)) emit(json{{"H", io::detail::big(h.H)}, {"h", io::to_json(h.log)}});
      else std::cout << h.H.get_str() << "\t" << h.log.str(20) << "\n";
      return Ok;
    };
  });

  auto* c_const = app.add_subcommand("constants", "comparison constants for f");
  mo.add(c_const);
  c_const->callback([&] {
    run = [&] {
      const auto f = mo.morphism();
      emit(io::to_json(mo.constants(f)));
      return Ok;
    };
  });

  HeightBudget hb;
  std::string tol_str;
  auto* c_height = app.add_subcommand("height", "canonical height enclosure");
  mo.add(c_height);
  c_height->add_option("--p", p_str, "point")->required();
  c_height->add_option("--tol", tol_str, "target width (rational)");
  c_height->add_option("--cap-bits", hb.cap_bits, "height cap in bits");
  c_height->callback([&] {
    run = [&] {
      if (!tol_str.empty()) hb.tol = parse_rat(tol_str);
      const auto f = mo.morphism();
      const auto h = canonical_height(f, io::parse_point(p_str), mo.constants(f), hb);
      if (want_json(true)) emit(io::to_json(h));
      else std::cout << h.str() << "\n";
      return Ok;
    };
  });

  long T_int = 0;
  auto* c_min = app.add_subcommand("hhat-min", "minimal canonical height over wandering points of height <= T");
  mo.add(c_min);
  c_min->add_option("--T", T_int, "height bound")->required();
  c_min->callback([&] {
    run = [&] {
      const auto f = mo.morphism();
      const auto r = hhat_min(f, T_int, mo.constants(f));
      if (want_json(true)) emit(io::to_json(r));
      else std::cout << r.value.str() << "\t" << point_tsv(r.witness) << "\n";
      return Ok;
    };
  });

  // -- equivalence ---------------------------------------------------------
  EquivBudget eb;
  auto* c_equiv = app.add_subcommand("equiv", "decide grand-orbit equivalence of P and Q");
  mo.add(c_equiv);
  c_equiv->add_option("--p", p_str, "first point")->required();
  c_equiv->add_option("--q", q_str, "second point")->required();
  c_equiv->add_option("--max-sum", eb.max_sum, "largest i + j searched");
  c_equiv->add_option("--cap-bits", eb.cap_bits, "height cap in bits");
  c_equiv->callback([&] {
    run = [&] {
      const auto f = mo.morphism();
      const auto v = decide_grand_equiv(f, io::parse_point(p_str), io::parse_point(q_str), mo.constants(f), eb);
      if (want_json(true)) emit(io::to_json(v));
      else std::cout << to_string(v) << "\n";
      return std::holds_alternative<InconclusiveVerdict>(v) ? InconclusiveOnly : Ok;
    };
  });

  unsigned D = 1;
  std::string sidecar;
  auto* c_reps = app.add_subcommand("reps", "greedy grand-orbit representatives of height <= T");
  mo.add(c_reps);
  c_reps->add_option("--T", T_int, "height bound")->required();
  c_reps->add_option("--D", D, "degree for the density certificate");
  c_reps->add_option("--max-sum", eb.max_sum, "largest i + j searched");
  c_reps->add_option("--cap-bits", eb.cap_bits, "height cap in bits");
  c_reps->add_option("--sidecar", sidecar, "write the JSON certificate sidecar here");
  c_reps->callback([&] {
    run = [&] {
      const auto f = mo.morphism();
      const auto rs = greedy_representatives(f, T_int, D, mo.constants(f), eb);
      const json j = io::repset_sidecar(rs);
      if (!sidecar.empty()) std::ofstream(sidecar) << j.dump(2) << "\n";
      if (want_json(false)) emit(j);
      else std::cout << io::points_tsv(rs.reps);
      return Ok;
    };
  });

  // -- density -------------------------------------------------------------
  std::string points_str;
  std::size_t N_dim = 0;
  auto* c_dens = app.add_subcommand("density", "vanishing forms of degree D through a point set");
  c_dens->add_option("--points", points_str, "points separated by ';', e.g. \"1,0;0,1\"")->required();
  c_dens->add_option("--D", D, "degree")->required();
  c_dens->add_option("--N", N_dim, "ambient dimension (needed for an empty set)");
  c_dens->callback([&] {
    run = [&] {
      const auto pts = point_list(points_str);
      const auto c = N_dim ? vanishing_forms(pts, D, N_dim) : vanishing_forms(pts, D);
      if (want_json(true)) emit(io::to_json(c));
      else std::cout << density_tsv(c);
      return Ok;
    };
  });

  std::string alphas_str, beta_str = "0", d_str = "2", T_str, grid_str;
  bool all_gaps = false;
  auto* c_gaps = app.add_subcommand("gaps", "gaps in the cover of [0,T] by [a d^n - beta, a d^n + beta]");
  c_gaps->add_option("--alphas", alphas_str, "comma separated positive rationals")->required();
  c_gaps->add_option("--beta", beta_str, "half width");
  c_gaps->add_option("--d", d_str, "ratio > 1");
  c_gaps->add_option("--T", T_str, "right end of the range");
  c_gaps->add_option("--grid", grid_str, "comma separated T values for a growth scan");
  c_gaps->add_flag("--all", all_gaps, "list every gap");
  c_gaps->callback([&] {
    run = [&] {
      const auto alphas = io::parse_rat_list(alphas_str);
      const Rat beta = parse_rat(beta_str), d = parse_rat(d_str);
      if (!grid_str.empty()) {
        const auto rows = gap_growth_scan(alphas, beta, d, io::parse_rat_list(grid_str));
        if (want_json(false)) {
          json a = json::array();
          for (const auto& r : rows) a.push_back(io::to_json(r));
          emit(a);
        } else {
          std::cout << "T\tlargest_gap\tnormalized_lo\tnormalized_hi\n";
          for (const auto& r : rows) {
            std::cout << r.T.get_str() << "\t";
            if (!r.largest_gap_length) {
              std::cout << "DegenerateCover\tNA\tNA\n";
              continue;
            }
            std::cout << r.largest_gap_length->get_str() << "\t" << r.normalized->lo().str(12, MPFR_RNDD) << "\t"
                      << r.normalized->hi().str(12, MPFR_RNDU) << "\n";
          }
        }
        return Ok;
      }
      if (T_str.empty()) throw PreconditionViolated("T given", "gaps needs --T or --grid");
      const auto rep = find_gaps(alphas, beta, d, parse_rat(T_str));
      if (want_json(false)) {
        emit(io::to_json(rep));
      } else if (all_gaps) {
        for (const auto& gap : rep.gaps) std::cout << io::gap_string(gap) << "\t" << gap.length().get_str() << "\n";
      } else {
        if (!rep.largest_gap) throw Error(ErrorKind::DegenerateCover, "no gap in [0, T]");
        std::cout << io::gap_string(*rep.largest_gap) << "\n";
      }
      return Ok;
    };
  });

  std::string orbits_str;
  std::size_t count = 1;
  AvoidingOptions aopt;
  std::string min_width_str;
  auto* c_avoid = app.add_subcommand("avoid", "points whose heights avoid given orbits");
  mo.add(c_avoid);
  c_avoid->add_option("--orbits", orbits_str, "orbit base points separated by ';'");
  c_avoid->add_option("--count", count, "number of heights a to choose")->required();
  c_avoid->add_option("--T", T_str, "log-height range")->required();
  c_avoid->add_option("--D", D, "degree for the density certificate");
  c_avoid->add_option("--min-gap-width", min_width_str, "smallest admissible gap length");
  c_avoid->callback([&] {
    run = [&] {
      const auto f = mo.morphism();
      const auto c = mo.constants(f);
      if (!min_width_str.empty()) aopt.min_gap_width = parse_rat(min_width_str);
      std::vector<OrbitMinimum> minima;
      for (const auto& P : point_list(orbits_str)) minima.push_back({canonical_height(f, P, c), P.str()});
      const auto a = build_avoiding_set(f, minima, count, parse_rat(T_str), D, c, aopt);
      if (want_json(true)) emit(io::to_json(a));
      else std::cout << io::points_tsv(a.points);
      return Ok;
    };
  });

  // -- linear --------------------------------------------------------------
  std::string matrix_str, p_prime, r_str;
  std::size_t n_max = 10;
  auto* c_val = app.add_subcommand("linear-val", "p-adic valuations along a triangular orbit");
  c_val->add_option("--matrix", matrix_str, "upper triangular matrix (JSON or file)")->required();
  c_val->add_option("--p", p_prime, "prime")->required();
  c_val->add_option("--r", r_str, "strictly decreasing positive exponents")->required();
  c_val->add_option("--n", n_max, "last orbit index");
  c_val->callback([&] {
    run = [&] {
      std::vector<long> r;
      for (const auto& x : io::parse_int_list(r_str)) r.push_back(x.get_si());
      const auto t = triangular_orbit_valuations(matrix_arg(matrix_str), parse_int(p_prime), r, n_max);
      if (want_json(false)) emit(io::to_json(t));
      else std::cout << io::valuation_tsv(t);
      return Ok;
    };
  });

  unsigned deg = 1;
  auto* c_w = app.add_subcommand("weights", "injectivity of k -> k.r on exponent vectors of degree d");
  c_w->add_option("--N", N_dim, "dimension")->required();
  c_w->add_option("--d", deg, "degree")->required();
  c_w->add_option("--r", r_str, "weights (default (d+1)^(N-i))");
  c_w->callback([&] {
    run = [&] {
      WeightVector w = WeightVector::standard(N_dim, deg);
      if (!r_str.empty()) {
        w.r.clear();
        for (const auto& x : io::parse_int_list(r_str)) w.r.push_back(x.get_si());
        if (w.r.size() != N_dim + 1) throw PreconditionViolated("r has N+1 entries", r_str);
      }
      const auto res = monomial_weight_injectivity(w);
      json j{{"r", w.r}, {"d", w.d}, {"injective", res.injective}};
      if (res.collision) j["collision"] = json::array({res.collision->first, res.collision->second});
      if (want_json(true)) emit(j);
      else std::cout << (res.injective ? "injective" : "collision\t" + j["collision"].dump()) << "\n";
      return Ok;
    };
  });

  std::string values_str;
  auto* c_mi = app.add_subcommand("mult-indep", "multiplicative independence of nonzero rationals");
  c_mi->add_option("--values", values_str, "comma separated rationals")->required();
  c_mi->callback([&] {
    run = [&] {
      const auto res = multiplicative_independence(io::parse_rat_list(values_str));
      json j{{"independent", res.independent}};
      if (res.relation) {
        json rel = json::array();
        for (const auto& x : *res.relation) rel.push_back(io::detail::big(x));
        j["relation"] = rel;
      }
      if (want_json(true)) emit(j);
      else std::cout << (res.independent ? "independent" : "relation\t" + j["relation"].dump()) << "\n";
      return Ok;
    };
  });

  std::size_t steps = 1;
  auto* c_ld = app.add_subcommand("linear-density", "density of a linear orbit prefix");
  c_ld->add_option("--matrix", matrix_str, "upper triangular matrix (JSON or file)")->required();
  c_ld->add_option("--p", p_str, "start point")->required();
  c_ld->add_option("--steps", steps, "number of orbit points")->required();
  c_ld->add_option("--D", D, "degree")->required();
  c_ld->callback([&] {
    run = [&] {
      const auto r = linear_orbit_density(matrix_arg(matrix_str), io::parse_point(p_str), steps, D);
      json pts = json::array();
      for (const auto& P : r.points) pts.push_back(io::to_json(P));
      if (want_json(true))
        emit(json{{"points", pts}, {"density", io::to_json(r.density)}, {"case4_sufficient", r.case4_sufficient}});
      else std::cout << io::points_tsv(r.points) << density_tsv(r.density);
      return Ok;
    };
  });

  auto* c_back = app.add_subcommand("backward", "backward branch A^-n P of a linear map");
  c_back->add_option("--matrix", matrix_str, "upper triangular matrix (JSON or file)")->required();
  c_back->add_option("--p", p_str, "start point")->required();
  c_back->add_option("--steps", steps, "number of points")->required();
  c_back->add_option("--D", D, "degree")->required();
  c_back->callback([&] {
    run = [&] {
      const auto r = backward_branch(matrix_arg(matrix_str), io::parse_point(p_str), steps, D);
      json pts = json::array();
      for (const auto& P : r.points) pts.push_back(io::to_json(P));
      if (want_json(true)) emit(json{{"points", pts}, {"distinct", r.distinct}, {"density", io::to_json(r.density)}});
      else std::cout << io::points_tsv(r.points) << "distinct\t" << (r.distinct ? "yes" : "no") << "\n" << density_tsv(r.density);
      return Ok;
    };
  });

  // -- counting ------------------------------------------------------------
  std::optional<std::size_t> projective;
  std::string form_str;
  auto* c_count = app.add_subcommand("count", "count points of height <= T");
  c_count->add_option("--projective", projective, "count all of P^N");
  c_count->add_option("--map", mo.map, "morphism, counts the orbit of --p");
  c_count->add_option("--cert", mo.cert, "Nullstellensatz certificate JSON file");
  c_count->add_option("--p", p_str, "orbit start point");
  c_count->add_option("--form", form_str, "hypersurface form (JSON or file)");
  c_count->add_option("--T", T_str, "height bound");
  c_count->add_option("--grid", grid_str, "comma separated T values");
  c_count->callback([&] {
    run = [&] {
      const int kinds = (projective ? 1 : 0) + (!mo.map.empty() ? 1 : 0) + (!form_str.empty() ? 1 : 0);
      if (kinds != 1) throw PreconditionViolated("one of --projective, --map, --form", "choose exactly one count kind");
      if (T_str.empty() == grid_str.empty()) throw PreconditionViolated("one of --T, --grid", "choose exactly one");
      if (!mo.map.empty() && p_str.empty()) throw PreconditionViolated("--p given", "orbit counts need a start point");
      ScanKind kind = ProjectiveScan{projective.value_or(0)};
      std::optional<MorphismPN> f;
      if (!mo.map.empty()) {
        f = mo.morphism();
        kind = OrbitScan{*f, io::parse_point(p_str), mo.constants(*f)};
      }
      if (!form_str.empty()) kind = HypersurfaceScan{io::parse_form(json_arg(form_str))};
      if (!grid_str.empty()) {
        std::vector<long> grid;
        for (const auto& x : io::parse_int_list(grid_str)) grid.push_back(x.get_si());
        const auto rep = counting_scan(kind, grid);
        if (want_json(false)) emit(io::to_json(rep));
        else std::cout << io::count_tsv(rep);
        return Ok;
      }
      const BigInt T = parse_int(T_str);
      if (const auto* o = std::get_if<OrbitScan>(&kind)) {
        const auto r = count_orbit(o->f, o->P, T, o->constants);
        if (want_json(false)) emit(io::to_json(r));
        else std::cout << r.count.get_str() << "\n";
        return Ok;
      }
      if (!T.fits_slong_p()) throw PreconditionViolated("T fits a machine integer", T.get_str());
      const BigInt c = projective ? count_projective_points(*projective, T.get_si())
                                  : count_hypersurface_points(std::get<HypersurfaceScan>(kind).form, T.get_si());
      if (want_json(false)) emit(json{{"T", io::detail::big(T)}, {"count", io::detail::big(c)}});
      else std::cout << c.get_str() << "\n";
      return Ok;
    };
  });

  // -- abelian -------------------------------------------------------------
  std::string deg_str, M_str;
  unsigned long genus = 1;
  auto* c_gcd = app.add_subcommand("abelian-gcd", "distinctness of deg^n m^(2g) across pairs of multipliers");
  c_gcd->add_option("--deg", deg_str, "degree of f")->required();
  c_gcd->add_option("--g", genus, "dimension g");
  c_gcd->add_option("--M", M_str, "comma separated multipliers")->required();
  c_gcd->callback([&] {
    run = [&] {
      const auto v = gcd_distinctness(parse_int(deg_str), genus, io::parse_int_list(M_str));
      json a = json::array();
      for (const auto& x : v) {
        json j{{"m1", io::detail::big(x.m1)}, {"m2", io::detail::big(x.m2)}, {"distinct", x.distinct}};
        if (x.witness) j["witness"] = json::array({io::detail::big(x.witness->first), io::detail::big(x.witness->second)});
        a.push_back(j);
      }
      if (want_json(false)) {
        emit(a);
      } else {
        std::cout << "m1\tm2\tverdict\n";
        for (const auto& x : v) std::cout << x.m1 << "\t" << x.m2 << "\t" << (x.distinct ? "Distinct" : "NotDistinct") << "\n";
      }
      return Ok;
    };
  });

  std::string q0_str, q1_str;
  auto* c_tr = app.add_subcommand("abelian-translate", "orbit intersection under x -> x + Q0");
  c_tr->add_option("--Q0", q0_str, "translation (group point)")->required();
  c_tr->add_option("--p", p_str, "first group point")->required();
  c_tr->add_option("--q", q_str, "second group point")->required();
  c_tr->callback([&] {
    run = [&] {
      const auto f = AffineGroupMap::translation_by(io::parse_group_point(q0_str));
      const auto v = translation_orbit_equiv(f, io::parse_group_point(p_str), io::parse_group_point(q_str));
      json j{{"verdict", v.equivalent ? "Equivalent" : "NotEquivalent"}};
      if (v.witness) j["n"] = io::detail::big(v.witness->first), j["n_prime"] = io::detail::big(v.witness->second);
      if (want_json(true)) emit(j);
      else std::cout << (v.equivalent ? "Equivalent\t" + v.witness->first.get_str() + "\t" + v.witness->second.get_str() : "NotEquivalent") << "\n";
      return Ok;
    };
  });

  auto* c_lat = app.add_subcommand("abelian-reps", "points m Q1 in distinct orbits of x -> x + Q0");
  c_lat->add_option("--Q0", q0_str, "translation (group point)")->required();
  c_lat->add_option("--Q1", q1_str, "second generator")->required();
  c_lat->add_option("--count", count, "number of representatives")->required();
  c_lat->callback([&] {
    run = [&] {
      try {
        const auto reps = lattice_representatives(io::parse_group_point(q0_str), io::parse_group_point(q1_str), count);
        json a = json::array();
        for (const auto& r : reps) a.push_back(io::to_json(r));
        if (want_json(true)) emit(a);
        else for (const auto& r : reps) std::cout << r.str() << "\n";
        return Ok;
      } catch (const DependentGenerators& e) {
        std::cerr << json{{"error", "DependentGenerators"},
                          {"relation", json::array({io::detail::big(e.relation().first), io::detail::big(e.relation().second)})}}
                         .dump()
                  << "\n";
        return Precondition;
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    for (int i = 1; i < argc; ++i) {
      const std::string a = argv[i];
      if (a.rfind("-", 0) == 0) {
        if (a.find('=') == std::string::npos && (a == "--format" || a == "--seed" || a == "--precision-bits")) ++i;
        continue;
      }
      if (app.get_subcommand_no_throw(a) == nullptr) {
        std::cerr << json{{"error", "UnknownCommand"}, {"message", "unknown command " + a}}.dump() << "\n";
        return Precondition;
      }
      break;
    }
    const int code = app.exit(e);
    return code == 0 ? Ok : Precondition;
  }

  if (g_opts.precision_bits > 0) setenv("ORBITLAB_PRECISION_BITS", std::to_string(g_opts.precision_bits).c_str(), 1);

  auto report = [](const std::string& kind, const std::string& what) {
    std::cerr << json{{"error", kind}, {"message", what}}.dump() << "\n";
  };
  try {
    return run();
  } catch (const Error& e) {
    report(to_string(e.kind()), e.what());
    return e.kind() == ErrorKind::HeightOverflow ? InconclusiveOnly : Precondition;
  } catch (const std::exception& e) {
    report("Internal", e.what());
    return Internal;
  }
}
