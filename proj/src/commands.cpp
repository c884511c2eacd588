#include "conecalc/commands.hpp"

#include <functional>
#include <regex>

#include "conecalc/char_cycle.hpp"
#include "conecalc/errors.hpp"
#include "conecalc/halfspace.hpp"
#include "conecalc/plot.hpp"

namespace conecalc {

Report::Report(std::string command, std::string scenario, std::string digest, std::uint64_t seed)
    : command_(std::move(command)), scenario_(std::move(scenario)), digest_(std::move(digest)), seed_(seed) {}

void Report::add(std::string name, bool passed, Json details) {
  checks_.push_back({std::move(name), passed, std::move(details)});
}

bool Report::passed() const {
  for (const auto& c : checks_)
    if (!c.passed) return false;
  return true;
}

Json Report::to_json() const {
  Json j;
  j["command"] = command_;
  j["scenario"] = scenario_;
  j["inputs_digest"] = digest_;
  j["seed"] = seed_;
  Json checks = Json::array();
  for (const auto& c : checks_) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"details", c.details}});
  j["checks"] = checks;
  for (const auto& [k, v] : extra_.items()) j[k] = v;
  j["passed"] = passed();
  return j;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"heckman", "bg", "cc", "moments", "lattice-count", "verify", "plot"};
  return names;
}

namespace {

struct Context {
  const Scenario& s;
  const RunOptions& o;
  Report& r;

  SampleOptions sampling() const {
    SampleOptions so;
    so.seed = o.seed;
    if (o.samples)
      so.samples = *o.samples;
    else if (s.params.contains("samples"))
      so.samples = s.params.at("samples").get<std::size_t>();
    return so;
  }
  int order() const {
    if (o.order) return *o.order;
    if (s.params.contains("order")) return s.params.at("order").get<int>();
    return kDefaultTruncation;
  }
  const DelzantPolytope& polytope(const char* command) const {
    if (!s.polytope) throw InputError(std::string(command) + " needs a polytope");
    return *s.polytope;
  }
  const WeightVector& direction(const char* command) const {
    if (!s.direction_v) throw InputError(std::string(command) + " needs direction_v");
    return *s.direction_v;
  }

  // Runs f; a MathError becomes a failed check under `name`.
  void guarded(const std::string& name, const std::function<void()>& f) {
    try {
      f();
    } catch (const MathError& e) {
      r.add(name, false, Json{{"error", e.what()}});
    }
  }
};

Json points_json(const std::vector<RationalPoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

Json comparison_json(const MeasureComparison& c) {
  Json j{{"samples", c.samples.size()}, {"fourier_compared", c.fourier_compared}};
  if (c.counterexample) {
    j["counterexample"] = to_json(*c.counterexample);
    j["density_a"] = to_string(c.density_a);
    j["density_b"] = to_string(c.density_b);
  }
  if (c.fourier_counterexample) j["fourier_counterexample"] = to_json(*c.fourier_counterexample);
  return j;
}

Json indicator_json(const IndicatorCheck& c) {
  Json j{{"interior", points_json(c.interior)}, {"exterior", points_json(c.exterior)}};
  if (c.counterexample) {
    j["counterexample"] = to_json(*c.counterexample);
    j["expected"] = to_string(c.expected);
    j["actual"] = to_string(c.actual);
  }
  return j;
}

Json proper_json(const ProperVerdict& v) {
  Json j{{"proper", v.proper}};
  Json gens = Json::array();
  for (const auto& g : v.generators) gens.push_back(g);
  j["generators"] = gens;
  if (v.proper) {
    j["witness"] = v.witness;
  } else {
    Json cert = Json::array();
    for (const auto& y : v.certificate) cert.push_back(to_string(y));
    j["certificate"] = cert;
    j["reason"] = v.reason;
  }
  return j;
}

Json table_json(const CellClassTable& t) {
  Json a = Json::array();
  for (const auto& st : t.strata) {
    Json r = Json::object();
    for (std::size_t f = 0; f < t.points.size(); ++f) r[t.points[f].label] = st.restrictions[f].to_string();
    Json contains = Json::array();
    for (auto c : st.contains) contains.push_back(t.points[c].label);
    a.push_back(Json{{"stratum", st.label}, {"codim", st.codim}, {"contains", contains}, {"restrictions", r}});
  }
  return a;
}

Polynomial zero_section(const FixedPointDatum& f) {
  const std::size_t nvars = f.rank() + 1;
  Polynomial out = Polynomial::constant(nvars, 1);
  for (const auto& w : f.weights) out *= Polynomial::hbar(nvars) - Polynomial::linear_form(w, nvars);
  return out;
}

bool same_fixed_data(std::vector<FixedPointDatum> a, std::vector<FixedPointDatum> b) {
  auto key = [](const FixedPointDatum& f) {
    auto w = f.weights;
    std::sort(w.begin(), w.end());
    return std::make_pair(f.moment, w);
  };
  std::vector<std::pair<RationalPoint, std::vector<WeightVector>>> ka, kb;
  for (const auto& f : a) ka.push_back(key(f));
  for (const auto& f : b) kb.push_back(key(f));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

std::vector<RationalPoint> density_probes(const SignedConeSum& sum, const DensityEvaluator& eval, std::size_t k,
                                          std::uint64_t seed) {
  RationalPoint lo, hi;
  bounding_box({&sum}, lo, hi);
  GenericSampler sampler(seed);
  std::vector<RationalPoint> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(draw_generic_point(sampler, {&eval}, lo, hi));
  return out;
}

void tent_check(Context& c, const std::string& name, const SignedConeSum& sum) {
  if (!c.s.params.contains("tent")) return;
  c.guarded(name, [&] {
    DensityEvaluator eval(sum);
    Json rows = Json::array();
    bool ok = true;
    for (const auto& p : c.s.params.at("tent")) {
      RationalPoint x{rational_from_json(p.at("x"))};
      Rational want = rational_from_json(p.at("density"));
      Rational got = eval(x);
      ok = ok && got == want;
      rows.push_back(Json{{"x", to_string(x[0])}, {"expected", to_string(want)}, {"density", to_string(got)}});
    }
    c.r.add(name, ok, Json{{"points", rows}});
  });
}

void heckman(Context& c, bool table) {
  const auto data = c.s.data();
  const auto& v = c.direction("heckman");
  const std::size_t d = c.s.heckman_dimension();
  SignedConeSum sum;
  c.guarded("heckman: build", [&] { sum = heckman_cone_sum(data, d, v); });
  if (sum.rank() == 0) return;
  c.r.set("heckman_sum", to_json(sum));
  const auto so = c.sampling();

  if (table) {
    c.guarded("heckman: density table", [&] {
      DensityEvaluator eval(sum);
      Json rows = Json::array();
      for (const auto& x : density_probes(sum, eval, so.samples, so.seed))
        rows.push_back(Json{{"x", to_json(x)}, {"density", to_string(eval(x))}});
      c.r.set("densities", rows);
    });
  }
  c.guarded("heckman: properness", [&] {
    auto pv = is_proper(sum, {}, v);
    c.r.add("heckman: properness", pv.proper, proper_json(pv));
  });
  if (c.s.polytope) {
    const auto& p = *c.s.polytope;
    c.guarded("heckman: lebesgue on polytope", [&] {
      auto chk = matches_indicator(sum, p, 1, so.seed);
      c.r.add("heckman: lebesgue on polytope", chk.passed, indicator_json(chk));
    });
    c.guarded("heckman: equals brianchon-gram sum", [&] {
      auto cmp = measures_equal(sum, brianchon_gram_sum(p), so);
      c.r.add("heckman: equals brianchon-gram sum", cmp.equal, comparison_json(cmp));
    });
    if (!c.s.fixed_points.empty())
      c.r.add("heckman: fixed points match polytope", same_fixed_data(c.s.fixed_points, toric_fixed_data(p)));
  }
  for (const auto& alt : c.s.alt_directions_v) {
    const std::string name = "heckman: independent of v, " + to_string(v) + " vs " + to_string(alt);
    c.guarded(name, [&] {
      auto cmp = measures_equal(sum, heckman_cone_sum(data, d, alt), so);
      c.r.add(name, cmp.equal, comparison_json(cmp));
    });
  }
  tent_check(c, "heckman: tent density", sum);
}

void bg(Context& c) {
  const auto& p = c.polytope("bg");
  const auto so = c.sampling();
  const std::size_t n = p.rank();
  auto sum = brianchon_gram_sum(p);
  c.r.set("faces", p.faces().size());
  c.r.set("brianchon_gram_sum", to_json(sum));
  c.guarded("bg: lebesgue on polytope", [&] {
    auto chk = matches_indicator(sum, p, 1, so.seed);
    c.r.add("bg: lebesgue on polytope", chk.passed, indicator_json(chk));
  });
  c.guarded("bg: vertex choice independence", [&] {
    std::size_t variants = 0;
    for (std::size_t f = 0; f < p.faces().size(); ++f) {
      const auto& face = p.faces()[f];
      if (face.vertices.size() < 2) continue;
      for (auto v : face.vertices) {
        auto alt = brianchon_gram_sum(p, {{f, v}});
        auto cmp = measures_equal(sum, alt, so);
        ++variants;
        if (!cmp.equal) {
          Json det = comparison_json(cmp);
          det["face"] = face.vertices;
          det["vertex"] = v;
          c.r.add("bg: vertex choice independence", false, det);
          return;
        }
      }
    }
    c.r.add("bg: vertex choice independence", true, Json{{"variants", variants}});
  });
  c.guarded("bg: inward variant", [&] {
    Rational sign = (n % 2 == 0) ? 1 : -1;
    auto chk = matches_indicator(brianchon_gram_inward(p), p, sign, so.seed, 10, true);
    Json det = indicator_json(chk);
    det["expected_inside"] = to_string(sign);
    c.r.add("bg: inward variant", chk.passed, det);
  });
  c.guarded("bg: csm additivity", [&] {
    ClosureCombination all;
    for (std::size_t f = 0; f < p.faces().size(); ++f)
      for (const auto& t : open_orbit_indicator(p, f)) all.push_back(t);
    auto csm = csm_of_constructible(p, all);
    Json rows = Json::object();
    bool ok = true;
    for (std::size_t v = 0; v < p.vertices().size(); ++v) {
      auto zs = orbit_conormal_class(p, 0, v);
      ok = ok && csm[v] == zs;
      rows[vertex_label(p, v)] = csm[v].to_string();
    }
    c.r.add("bg: csm additivity", ok, Json{{"csm(1_M)", rows}});
  });
  if (!c.s.constructible.empty()) {
    c.guarded("bg: constructible strata partition M", [&] {
      auto strata = constructible_strata(c.s);
      bool ok = true;
      for (std::size_t v = 0; v < p.vertices().size(); ++v) {
        Polynomial total(n + 1);
        for (const auto& st : strata) total += st.restrictions[v] * Rational(st.codim % 2 == 0 ? 1 : -1);
        ok = ok && total == orbit_conormal_class(p, 0, v);
      }
      c.r.add("bg: constructible strata partition M", ok, Json{{"strata", strata.size()}});
    });
  }
}

void cc(Context& c) {
  const auto so = c.sampling();
  bool ran = false;
  if (c.s.polytope && c.s.circle_s) {
    ran = true;
    const auto& p = *c.s.polytope;
    const auto& s = *c.s.circle_s;
    CellClassTable table;
    bool built = false;
    c.guarded("cc: cell table audit", [&] {
      table = cell_cc_table(p, s);
      built = true;
      c.r.add("cc: cell table audit", true);
      c.r.set("cell_table", table_json(table));
    });
    if (built) {
      auto wv = weber_check(table);
      Json off = Json::array();
      for (const auto& o : wv.offenders)
        off.push_back(Json{{"stratum", o.stratum}, {"point", o.point}, {"restriction", o.restriction.to_string()}});
      c.r.add("cc: weber divisibility", wv.passed, Json{{"offenders", off}});
      MainTheoremOptions mo;
      mo.sampling = so;
      for (std::size_t i = 0; i < table.strata.size(); ++i) {
        const std::string name = "cc: main theorem, " + table.strata[i].label;
        c.guarded(name, [&] {
          auto v = main_theorem_check(table, i, mo);
          Json det{{"identity", v.identity}, {"proper", v.proper}, {"projection_equal", v.projection_equal},
                   {"directions", points_json(v.directions)}, {"properness", proper_json(v.properness)},
                   {"comparison", comparison_json(v.comparison)}};
          if (!v.detail.empty()) det["detail"] = v.detail;
          c.r.add(name, v.passed, det);
        });
      }
      c.guarded("cc: pipeline reproduces lebesgue on polytope", [&] {
        auto chk = matches_indicator(pipeline_sum(table, s), p, 1, so.seed);
        c.r.add("cc: pipeline reproduces lebesgue on polytope", chk.passed, indicator_json(chk));
      });
      c.guarded("cc: diagonal convention", [&] {
        // Swap each cell's diagonal entry for the alternative closed form and
        // rerun the main theorem and the pipeline on the altered table.
        CellClassTable alt = table;
        for (std::size_t i = 0; i < table.strata.size(); ++i) {
          const auto pv = *table.strata[i].bb_vertex;
          alt.strata[i].restrictions[pv] =
              diagonal_restriction(table.points[pv].weights, s, DiagonalConvention::kCaseStatement);
        }
        MainTheoremOptions mo;
        mo.sampling = so;
        auto run = [&](const CellClassTable& t) {
          Json cells = Json::object();
          bool ok = true;
          for (std::size_t i = 0; i < t.strata.size(); ++i) {
            bool cell = false;
            try {
              cell = main_theorem_check(t, i, mo).passed;
            } catch (const MathError&) {
            }
            cells[t.strata[i].label] = cell;
            ok = ok && cell;
          }
          bool lebesgue = false;
          try {
            lebesgue = matches_indicator(pipeline_sum(t, s), p, 1, so.seed).passed;
          } catch (const MathError&) {
          }
          return Json{{"cells", cells}, {"pipeline_is_lebesgue", lebesgue}, {"passes", ok && lebesgue}};
        };
        Json euler = run(table), other = run(alt);
        // After h -> 0 the two entries differ by (-1)^n, so only odd rank separates them.
        const bool odd = p.rank() % 2 == 1;
        const bool ok = euler.at("passes").get<bool>() && other.at("passes").get<bool>() != odd;
        c.r.add("cc: diagonal convention", ok,
                Json{{"euler_class", euler}, {"case_statement", other}, {"separated_by_rank", odd}});
      });
    }
  }
  if (!c.s.constructible.empty()) {
    ran = true;
    const auto& p = *c.s.polytope;
    CellClassTable table;
    table.points = toric_fixed_data(p);
    table.strata = constructible_strata(c.s);
    c.r.set("constructible_table", table_json(table));
    bool ok = true;
    for (std::size_t v = 0; v < p.vertices().size(); ++v) {
      Polynomial total(p.rank() + 1);
      for (const auto& st : table.strata) total += st.restrictions[v] * Rational(st.codim % 2 == 0 ? 1 : -1);
      ok = ok && total == zero_section(table.points[v]);
    }
    c.r.add("cc: constructible csm classes sum to the zero section", ok);
    auto audit = audit_table(table);
    c.r.add("cc: constructible table audit", audit.empty(), Json{{"problems", audit}});
    if (c.s.circle_s) {
      const auto& s = *c.s.circle_s;
      c.guarded("cc: constructible projections sum to lebesgue on polytope", [&] {
        auto chk = matches_indicator(pipeline_sum(table, s), p, 1, so.seed);
        c.r.add("cc: constructible projections sum to lebesgue on polytope", chk.passed, indicator_json(chk));
      });
    }
  }
  if (!c.s.cc_tables.empty()) {
    ran = true;
    auto table = table_from_scenario(c.s);
    c.r.set("cc_table", table_json(table));
    auto audit = audit_table(table);
    c.r.add("cc: table audit", audit.empty(), Json{{"problems", audit}});
    auto wv = weber_check(table);
    c.r.add("cc: weber divisibility", wv.passed);
    if (c.s.circle_s) {
      const auto& s = *c.s.circle_s;
      const std::size_t n = c.s.rank;
      std::vector<std::size_t> kept(n);
      for (std::size_t i = 0; i < n; ++i) kept[i] = i;
      SignedConeSum heck;
      c.guarded("cc: heckman sum", [&] { heck = heckman_cone_sum(table.points, c.s.heckman_dimension(), s); });
      c.guarded("cc: upward orientation", [&] {
        const auto up = upward_direction(table.points, s);
        SignedConeSum total(n + 1);
        bool any_improper = false, certificates_ok = true;
        Json per = Json::array();
        for (std::size_t i = 0; i < table.strata.size(); ++i) {
          auto ext = stratum_cone_sum(table, i, up);
          auto pv = is_proper(ext, kept);
          if (!pv.proper) {
            any_improper = true;
            std::vector<WeightVector> gens = pv.generators;
            certificates_ok = certificates_ok && verify_certificate(gens, pv.certificate);
          }
          per.push_back(Json{{"stratum", table.strata[i].label}, {"extended_sum", to_json(ext)},
                             {"projection", proper_json(pv)}});
          total.append(ext * Rational(table.strata[i].codim % 2 == 0 ? 1 : -1));
        }
        c.r.set("upward", Json{{"direction", up}, {"strata", per}});
        const bool expect = c.s.params.value("expect_improper_upward", false);
        if (expect)
          c.r.add("cc: upward projection is improper", any_improper && certificates_ok,
                  Json{{"certificates_verified", certificates_ok}});
        auto combined = total.simplified();
        auto pv = is_proper(combined, kept);
        bool ok = pv.proper;
        Json det{{"combined_sum", to_json(combined)}, {"projection", proper_json(pv)}};
        if (ok && heck.rank() == n) {
          auto cmp = measures_equal(project_drop_last(combined), heck, so);
          ok = cmp.equal;
          det["comparison"] = comparison_json(cmp);
        }
        c.r.add("cc: combined upward strata project to the heckman measure", ok, det);
      });
      c.guarded("cc: fixed orientation pipeline", [&] {
        auto pipe = pipeline_sum(table, s);
        auto cmp = measures_equal(pipe, heck, so);
        c.r.add("cc: fixed orientation pipeline", cmp.equal, comparison_json(cmp));
        tent_check(c, "cc: pipeline tent density", pipe);
      });
    }
  }
  if (!ran) throw InputError("cc needs a polytope with circle_s, constructible strata, or cc_tables");
}

void moments(Context& c) {
  const auto data = c.s.data();
  if (c.s.directions_xi.empty()) throw InputError("moments needs directions_xi");
  const int k = c.order();
  c.guarded("moments: holomorphy", [&] {
    auto hv = holomorphy_check(data, c.s.directions_xi, k);
    Json det = Json::object();
    if (!hv.passed)
      det = Json{{"direction", to_json(hv.direction)}, {"exponent", hv.exponent}, {"value", to_string(hv.value)}};
    c.r.add("moments: holomorphy", hv.passed, det);
  });
  if (data.size() > 1) {
    c.guarded("moments: deleting a fixed point leaves a pole", [&] {
      bool all_fail = true;
      Json rows = Json::object();
      for (std::size_t i = 0; i < data.size(); ++i) {
        auto fewer = data;
        fewer.erase(fewer.begin() + static_cast<long>(i));
        auto hv = holomorphy_check(fewer, c.s.directions_xi, k);
        all_fail = all_fail && !hv.passed;
        rows[data[i].label] = hv.passed ? Json("no pole") : Json("pole at t^" + std::to_string(hv.exponent));
      }
      c.r.add("moments: deleting a fixed point leaves a pole", all_fail, rows);
    });
  }
  Json series = Json::object();
  for (const auto& xi : c.s.directions_xi) series[to_string(xi)] = to_json(localization_series(data, xi, k));
  c.r.set("localization_series", series);
  if (c.s.direction_v) {
    c.guarded("moments: cone sum matches localization", [&] {
      auto sum = heckman_cone_sum(data, c.s.heckman_dimension(), *c.s.direction_v);
      for (const auto& xi : c.s.directions_xi) {
        auto mv = moments_match(data, sum, xi, k);
        if (!mv.passed) {
          c.r.add("moments: cone sum matches localization", false,
                  Json{{"xi", to_json(xi)}, {"exponent", mv.exponent}, {"localization", to_json(mv.localization)},
                       {"cones", to_json(mv.cones)}});
          return;
        }
      }
      c.r.add("moments: cone sum matches localization", true, Json{{"through", k}});
    });
  }
  if (c.s.polytope) {
    c.guarded("moments: polytope moments", [&] {
      Json rows = Json::array();
      bool ok = true;
      for (const auto& xi : c.s.directions_xi) {
        auto exact = polytope_moments(*c.s.polytope, xi, k);
        auto series = localization_series(data, xi, k);
        Json m = Json::array();
        for (int j = 0; j <= k; ++j) {
          Rational got = moment_from_series(series, j);
          ok = ok && got == exact[j];
          m.push_back(to_string(exact[j]));
        }
        rows.push_back(Json{{"xi", to_json(xi)}, {"moments", m}});
      }
      c.r.add("moments: polytope moments", ok, Json{{"moments", rows}});
    });
  }
}

void lattice(Context& c) {
  const auto& p = c.polytope("lattice-count");
  std::vector<unsigned> ds;
  if (c.o.d)
    ds.push_back(*c.o.d);
  else if (c.s.params.contains("d_values"))
    ds = c.s.params.at("d_values").get<std::vector<unsigned>>();
  else
    ds = {5, 10, 20};
  Json rows = Json::array();
  std::vector<Rational> errors;
  for (auto d : ds) {
    auto lc = lattice_count(p, d);
    errors.push_back(lc.error);
    rows.push_back(Json{{"d", d}, {"count", lc.count.get_str()}, {"scaled", to_string(lc.scaled)},
                        {"volume", to_string(lc.volume)}, {"error", to_string(lc.error)}});
  }
  c.r.set("lattice_counts", rows);
  if (ds.size() > 1) {
    bool ok = true;
    for (std::size_t i = 1; i < ds.size(); ++i) ok = ok && ds[i] > ds[i - 1] && errors[i] < errors[i - 1];
    c.r.add("lattice-count: error decreases with d", ok);
  }
}

void plot(Context& c, std::string* svg) {
  const auto data = c.s.data();
  SignedConeSum sum;
  std::vector<Overlay> overlays;
  std::string title;
  if (c.s.direction_v && !data.empty()) {
    const auto& v = *c.s.direction_v;
    sum = heckman_cone_sum(data, c.s.heckman_dimension(), v);
    for (const auto& f : data) {
      Overlay o;
      o.apex = f.moment;
      for (const auto& w : f.weights) {
        const bool flip = dot(w, v) < 0;
        o.rays.push_back(flip ? negate(w) : w);
        o.flipped.push_back(flip);
      }
      overlays.push_back(std::move(o));
    }
    title = c.s.name + ": Heckman sum, v=" + to_string(v);
  } else {
    sum = brianchon_gram_sum(c.polytope("plot"));
    title = c.s.name + ": Brianchon-Gram sum";
  }
  const std::size_t n = sum.rank();
  if (n > 2) throw InputError("plots are available in rank 1 and 2");
  PlotWindow w;
  if (c.o.window) {
    w = parse_window(*c.o.window, n);
  } else {
    std::vector<RationalPoint> pts;
    for (const auto& t : sum.terms()) pts.push_back(t.apex);
    RationalPoint lo = pts.front(), hi = pts.front();
    for (const auto& p : pts)
      for (std::size_t i = 0; i < n; ++i) {
        if (p[i] < lo[i]) lo[i] = p[i];
        if (p[i] > hi[i]) hi[i] = p[i];
      }
    w.x0 = lo[0] - 1;
    w.x1 = hi[0] + 1;
    w.y0 = n == 2 ? lo[1] - 1 : Rational(0);
    w.y1 = n == 2 ? hi[1] + 1 : Rational(1);
  }
  unsigned res = c.o.res ? *c.o.res : (c.s.params.contains("res") ? c.s.params.at("res").get<unsigned>() : (n == 2 ? 100u : 400u));
  std::string text = render_svg(sum, overlays, w, res, c.o.seed, title);
  Json window = Json::array();
  window.push_back(to_json(RationalPoint{w.x0, w.x1}));
  if (n == 2) window.push_back(to_json(RationalPoint{w.y0, w.y1}));
  c.r.set("window", window);
  c.r.set("resolution", res);
  c.r.add("plot: rendered", !text.empty(), Json{{"bytes", text.size()}});

  // Re-evaluate every 97th plotted pixel straight from its attributes.
  const std::regex probe(n == 2 ? R"re(data-x="([^"]+)" data-y="([^"]+)" data-density="([^"]+)")re"
                                : R"re(data-x="([^"]+)" data-density="([^"]+)")re");
  DensityEvaluator eval(sum);
  std::size_t seen = 0, checked = 0;
  Json mismatch;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), probe); it != std::sregex_iterator(); ++it, ++seen) {
    if (seen % 97 != 0) continue;
    const auto& m = *it;
    RationalPoint x{Rational(m[1].str())};
    if (n == 2) x.push_back(Rational(m[2].str()));
    Rational shown(m[n == 2 ? 3 : 2].str());
    shown.canonicalize();
    for (auto& xi : x) xi.canonicalize();
    ++checked;
    Rational exact = eval(x);
    if (exact != shown) {
      mismatch = Json{{"x", to_json(x)}, {"shown", to_string(shown)}, {"exact", to_string(exact)}};
      break;
    }
  }
  Json det{{"pixels", seen}, {"probes", checked}};
  if (!mismatch.is_null()) det["mismatch"] = mismatch;
  c.r.add("plot: probe pixels match exact density", mismatch.is_null() && checked > 0, det);
  if (svg) *svg = std::move(text);
}

}  // namespace

Report run_command(const std::string& command, const Scenario& scenario, const RunOptions& options, std::string* svg) {
  Report report(command, scenario.name, digest(to_json(scenario)), options.seed);
  Context c{scenario, options, report};
  try {
    if (command == "heckman") {
      heckman(c, true);
    } else if (command == "bg") {
      bg(c);
    } else if (command == "cc") {
      cc(c);
    } else if (command == "moments") {
      moments(c);
    } else if (command == "lattice-count") {
      lattice(c);
    } else if (command == "plot") {
      plot(c, svg);
    } else if (command == "verify") {
      Json j = to_json(scenario);
      report.add("verify: scenario round-trips", to_json(parse_scenario(j)) == j);
      if (scenario.direction_v && !scenario.data().empty()) heckman(c, false);
      if (scenario.polytope) bg(c);
      if ((scenario.polytope && scenario.circle_s) || !scenario.constructible.empty() || !scenario.cc_tables.empty())
        cc(c);
      if (!scenario.directions_xi.empty()) moments(c);
      if (scenario.polytope) lattice(c);
    } else {
      throw InputError("unknown command '" + command + "'");
    }
  } catch (const MathError& e) {
    report.add("error", false, Json{{"error", e.what()}});
  }
  return report;
}

}  // namespace conecalc
