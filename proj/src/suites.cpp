#include "bbk/suites.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <random>
#include <thread>

namespace bbk {

namespace {

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

CheckRecord run(const std::string& id, const std::string& anchor,
                const std::function<std::pair<bool, std::string>()>& body) {
  CheckRecord rec;
  rec.id = id;
  rec.anchor = anchor;
  auto start = Clock::now();
  try {
    auto [ok, witness] = body();
    rec.status = ok ? "pass" : "fail";
    rec.witness = witness;
  } catch (const std::exception& e) {
    rec.status = "fail";
    rec.witness = e.what();
  }
  rec.wallMs = msSince(start);
  return rec;
}

CheckRecord skipped(const std::string& id, const std::string& anchor, const std::string& why) {
  return CheckRecord{id, anchor, "skipped", why, 0};
}

Poly randomVanishingPoly(std::mt19937& rng, const Rat& at, int maxDeg) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 4), deg(0, maxDeg);
  int d = deg(rng);
  std::vector<Rat> c;
  for (int i = 0; i <= d; ++i) c.push_back(Rat(num(rng), den(rng)));
  Poly raw(std::move(c));
  return raw - Poly::constant(raw.eval(at));
}

// Deterministic parallel map over indexed checks.
std::vector<CheckRecord> parallelChecks(
    int threads, const std::vector<std::function<CheckRecord()>>& tasks) {
  std::vector<CheckRecord> out(tasks.size());
  if (threads <= 1 || tasks.size() <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
    return out;
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      out[i] = tasks[i]();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min<int>(threads, static_cast<int>(tasks.size())); ++t)
    pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

std::vector<CheckRecord> bvSuite(const BulkBoundarySystem& sys, const SuiteConfig& cfg) {
  std::vector<CheckRecord> checks;
  OpenSet bdyCell{{0}, true};
  checks.push_back(run("bv.jacobi-boundary", "higher-jacobi", [&] {
    auto r = checkJacobi(sys.boundary());
    return std::make_pair(r.pass, r.detail);
  }));
  checks.push_back(run("bv.jacobi-bulk-cell", "higher-jacobi-bulk", [&] {
    auto r = checkJacobi(sys.fields(bdyCell).algebra);
    return std::make_pair(r.pass, r.detail);
  }));
  checks.push_back(run("bv.cyclic-boundary", "cyclic-invariance", [&] {
    auto r = checkCyclic(sys.boundary());
    return std::make_pair(r.pass, r.detail);
  }));
  checks.push_back(run("bv.homotopy-identity", "interval-contracting-homotopy", [&] {
    std::mt19937 rng(cfg.seed);
    std::uniform_int_distribution<int> num(1, 9), den(1, 5);
    for (int t = 0; t < cfg.homotopyTrials; ++t) {
      Rat width(num(rng), den(rng));
      Poly p = randomVanishingPoly(rng, width, 7);
      PolyForm w{p, randomVanishingPoly(rng, width, 6), width};
      if (!(homotopyK(w.d()) + homotopyK(w).d() == w))
        return std::make_pair(false, "trial " + std::to_string(t));
    }
    return std::make_pair(true, std::string());
  }));
  checks.push_back(run("bv.defect-random", "boundary-defect", [&] {
    std::mt19937 rng(cfg.seed + 1);
    const Index nv = sys.boundary().space()->dim();
    if (nv == 0) return std::make_pair(true, std::string("empty boundary"));
    std::uniform_int_distribution<Index> coef(0, nv - 1);
    Rat width = sys.mesh().cellWidth(0);
    for (int t = 0; t < cfg.defectTrials; ++t) {
      HonestField f, g;
      f.parts[{coef(rng), 0}] = PolyForm::zeroForm(randomVanishingPoly(rng, width, 4), width);
      if (t % 2 == 0) {
        g.parts[{coef(rng), 0}] = PolyForm::zeroForm(randomVanishingPoly(rng, width, 4), width);
      } else {
        g.parts[{coef(rng), 0}] = PolyForm::oneForm(randomVanishingPoly(rng, width, 3), width);
      }
      auto [lhs, rhs] = sys.boundaryDefect(bdyCell, f, g);
      if (lhs != rhs)
        return std::make_pair(false, "trial " + std::to_string(t) + ": " + lhs.str() +
                                         " vs " + rhs.str());
    }
    return std::make_pair(true, std::string());
  }));
  if (sys.hasCondition()) {
    checks.push_back(run("bv.defect-conditioned-zero", "restored-cyclicity", [&] {
      const auto& of = sys.fields(bdyCell);
      for (Index i = 0; i < of.elCompactInclusion.cols(); ++i)
        for (Index j = 0; j < of.elCompactInclusion.cols(); ++j) {
          HonestField f = sys.fromVec(bdyCell, of.elCompactInclusion.col(i));
          HonestField g = sys.fromVec(bdyCell, of.elCompactInclusion.col(j));
          auto [lhs, rhs] = sys.boundaryDefect(bdyCell, f, g);
          if (!lhs.isZero() || !rhs.isZero())
            return std::make_pair(false, "pair (" + std::to_string(i) + ", " +
                                             std::to_string(j) + ")");
        }
      return std::make_pair(true, std::string());
    }));
  } else {
    checks.push_back(skipped("bv.defect-conditioned-zero", "restored-cyclicity", "no condition"));
  }
  checks.push_back(run("bv.action-quadratic-split", "action-functional", [&] {
    std::mt19937 rng(cfg.seed + 2);
    const auto& alg = sys.fields(bdyCell).algebra;
    std::uniform_int_distribution<int> val(-3, 3);
    for (int t = 0; t < 10; ++t) {
      Vec phi(alg.space()->dim());
      for (Index i = 0; i < phi.size(); ++i) phi(i) = Rat(val(rng));
      Rat s = actionFunctional(alg, phi);
      Rat in = interactionFunctional(alg, phi);
      Rat quad = Rat(1, 2) * alg.pair(phi, alg.differential().apply(phi));
      if (s - in != quad) return std::make_pair(false, "trial " + std::to_string(t));
    }
    return std::make_pair(true, std::string());
  }));
  return checks;
}

std::vector<CheckRecord> lagrangianSuite(const BulkBoundarySystem& sys, const SuiteConfig& cfg) {
  std::vector<CheckRecord> checks;
  if (sys.hasCondition()) {
    checks.push_back(run("lagrangian.condition-gate", "boundary-condition", [&] {
      auto r = validateBoundaryCondition(sys.boundary(), sys.condition());
      return std::make_pair(r.pass, r.detail);
    }));
  } else {
    checks.push_back(skipped("lagrangian.condition-gate", "boundary-condition", "no condition"));
  }
  checks.push_back(run("lagrangian.isotropy-boundary-cell", "isotropic-structure", [&] {
    auto r = sys.checkIsotropic(OpenSet{{0}, true});
    return std::make_pair(r.pass, r.detail);
  }));
  checks.push_back(run("lagrangian.isotropy-interior-cell", "isotropic-structure", [&] {
    OpenSet u = sys.mesh().cellCount() > 1 ? OpenSet{{1}, false} : OpenSet{{0}, false};
    auto r = sys.checkIsotropic(u);
    return std::make_pair(r.pass, r.detail);
  }));
  std::vector<std::function<CheckRecord()>> tasks;
  for (const auto& u : allOpens(sys.mesh())) {
    tasks.push_back([&sys, u] {
      return run("lagrangian.quasi-iso" + u.str(), "lagrangian-structure", [&] {
        auto r = sys.checkLagrangian(u);
        return std::make_pair(r.pass, r.detail);
      });
    });
  }
  if (sys.hasCondition()) {
    for (const auto& u : allOpens(sys.mesh())) {
      tasks.push_back([&sys, u] {
        return run("lagrangian.pullback" + u.str(), "strict-pullback-model", [&] {
          auto r = sys.strictPullbackCheck(u);
          return std::make_pair(r.pass, r.detail);
        });
      });
    }
  }
  auto parallel = parallelChecks(cfg.threads, tasks);
  checks.insert(checks.end(), parallel.begin(), parallel.end());
  if (sys.hasCondition()) {
    checks.push_back(run("lagrangian.splitting", "conditioned-splitting", [&] {
      auto rep = sys.splitting(OpenSet::wholeOf(sys.mesh()), sys.defaultCutoff());
      return std::make_pair(rep.pass, rep.detail);
    }));
  }
  return checks;
}

std::vector<CheckRecord> factorizationSuite(const BulkBoundarySystem& sys,
                                            const SuiteConfig& cfg) {
  std::vector<CheckRecord> checks;
  ObservablesContext ctx(sys, cfg.symTruncation);
  checks.push_back(run("factorization.prefactorization", "structure-maps", [&]() {
    // Identity, two-input product, and associativity on small configurations.
    const auto opens = allOpens(sys.mesh());
    for (const auto& u : opens) {
      const auto& c = ctx.obs(u);
      if (c.space()->dim() < 2) continue;
      WordElem f;
      f.emplace(c.basis.words()[1], Rat(1));
      if (!(ctx.structureMap({u}, {f}, u) == f))
        return std::make_pair(false, "identity fails on " + u.str());
    }
    if (sys.mesh().cellCount() >= 3) {
      OpenSet u1{{1}, false}, u2{{2}, false}, u3{{0}, true};
      OpenSet v = u1.unionWith(u2), w = v.unionWith(u3);
      const auto &c1 = ctx.obs(u1), &c2 = ctx.obs(u2), &c3 = ctx.obs(u3);
      if (c1.space()->dim() > 1 && c2.space()->dim() > 1 && c3.space()->dim() > 1) {
        WordElem f, g, h;
        f.emplace(c1.basis.words()[1], Rat(1));
        g.emplace(c2.basis.words()[1], Rat(1));
        h.emplace(c3.basis.words()[1], Rat(1));
        WordElem triple = ctx.structureMap({u1, u2, u3}, {f, g, h}, w);
        WordElem nested =
            ctx.structureMap({v, u3}, {ctx.structureMap({u1, u2}, {f, g}, v), h}, w);
        if (!(triple == nested)) return std::make_pair(false, std::string("associativity"));
      }
    }
    return std::make_pair(true, std::string());
  }));
  // Extension maps are chain maps on every inclusion into the whole mesh.
  checks.push_back(run("factorization.extensions-chain", "extension-maps", [&] {
    OpenSet whole = OpenSet::wholeOf(sys.mesh(), true);
    for (const auto& u : allOpens(sys.mesh())) {
      GradedMap ext = ctx.extension(u, whole);
      if (!isChainMap(ext, ctx.obs(u).complex, ctx.obs(whole).complex))
        return std::make_pair(false, "extension from " + u.str());
    }
    return std::make_pair(true, std::string());
  }));
  // Weiss covers, exhaustively over the enumerated irredundant families.
  std::vector<std::function<CheckRecord()>> tasks;
  for (const auto& v : allOpens(sys.mesh())) {
    if (static_cast<int>(v.cells.size()) > 3) continue;
    tasks.push_back([&ctx, v, &cfg] {
      return run("factorization.weiss" + v.str(), "weiss-cover-descent", [&] {
        auto covers = ctx.weissCovers(v, cfg.symTruncation);
        for (size_t i = 0; i < covers.size(); ++i) {
          auto r = ctx.weissCechCheck(v, covers[i]);
          if (!r.pass)
            return std::make_pair(false, "cover " + std::to_string(i) + ": " + r.detail);
        }
        return std::make_pair(true, "covers: " + std::to_string(covers.size()));
      });
    });
  }
  auto parallel = parallelChecks(cfg.threads, tasks);
  checks.insert(checks.end(), parallel.begin(), parallel.end());
  if (sys.hasCondition()) {
    checks.push_back(run("factorization.am-compare", "algebra-module-candidate", [&] {
      auto fam = famFromSystem(sys, cfg.symTruncation);
      auto rep = amCompare(ctx, fam);
      return std::make_pair(rep.pass, rep.detail);
    }));
  } else {
    checks.push_back(
        skipped("factorization.am-compare", "algebra-module-candidate", "no condition"));
  }
  // Informational: per-open cohomology table of the observable complexes.
  checks.push_back(run("factorization.cohomology-table", "observable-cohomology", [&] {
    std::string table;
    for (const auto& u : allOpens(sys.mesh())) {
      table += u.str() + ": {";
      bool first = true;
      for (const auto& [deg, dim] : cohomologyDims(ctx.obs(u).complex)) {
        if (!first) table += ", ";
        table += std::to_string(deg) + ": " + std::to_string(dim);
        first = false;
      }
      table += "} ";
    }
    return std::make_pair(true, table);
  }));
  return checks;
}

std::vector<CheckRecord> p0Suite(const BulkBoundarySystem& sys, const SuiteConfig& cfg) {
  std::vector<CheckRecord> checks;
  OpenSet u{{0}, true};
  Rat width = sys.mesh().cellWidth(0);
  // Generic kernel pool: conditioned vanishing 0-forms over L plus 1-forms
  // over the full coefficient space.
  std::vector<HonestField> kernels;
  if (sys.hasCondition()) {
    const Mat& l = sys.condition().l;
    for (Index c = 0; c < l.cols() && kernels.size() < 2; ++c) {
      HonestField h;
      for (Index v = 0; v < l.rows(); ++v)
        if (!l(v, c).isZero())
          h.parts[{v, 0}] =
              PolyForm::zeroForm(l(v, c) * (Poly::monomial(1) - Poly::constant(width)), width);
      kernels.push_back(std::move(h));
    }
  }
  const Index nv = sys.boundary().space()->dim();
  for (Index v = 0; v < nv && kernels.size() < 6; ++v) {
    HonestField h;
    h.parts[{v, 0}] = PolyForm::oneForm(Poly::constant(Rat(1)), width);
    kernels.push_back(std::move(h));
  }
  if (kernels.size() < 2) {
    checks.push_back(skipped("p0.axioms", "shifted-poisson", "boundary too small for a pool"));
    return checks;
  }
  checks.push_back(run("p0.axioms", "shifted-poisson", [&] {
    KernelObservables pool(sys, u, kernels);
    const auto& walg = pool.words();
    auto par = [](int x) { return ((x % 2) + 2) % 2; };
    auto elem = [](const Word& w) {
      WordElem e;
      e.emplace(w, Rat(1));
      return e;
    };
    auto eq = [](const WordElem& a, const WordElem& b) {
      WordElem diff = a;
      for (const auto& [w, c] : b) addTo(diff, w, -c);
      return diff.empty();
    };
    WordBasis two(walg, 2);
    for (const auto& wa : two.words())
      for (const auto& wb : two.words()) {
        WordElem lhs = pool.bracket(elem(wa), elem(wb));
        WordElem rhs = pool.bracket(elem(wb), elem(wa));
        Rat sign =
            (par((walg.degreeOf(wa) + 1) * (walg.degreeOf(wb) + 1)) == 0) ? Rat(-1) : Rat(1);
        if (!eq(lhs, scaled(rhs, sign))) return std::make_pair(false, std::string("antisymmetry"));
        for (const auto& [w, c] : lhs)
          if (walg.degreeOf(w) != walg.degreeOf(wa) + walg.degreeOf(wb) + 1)
            return std::make_pair(false, std::string("degree bookkeeping"));
      }
    WordBasis one(walg, 1);
    for (const auto& wf : one.words())
      for (const auto& wg : one.words())
        for (const auto& wh : one.words()) {
          if (wf.empty() || wg.empty() || wh.empty()) continue;
          WordElem gh = walg.mul(elem(wg), elem(wh));
          WordElem lhs = pool.bracket(elem(wf), gh);
          WordElem t1 = walg.mul(pool.bracket(elem(wf), elem(wg)), elem(wh));
          Rat sign = (par((walg.degreeOf(wf) + 1) * walg.degreeOf(wg)) == 0) ? Rat(1) : Rat(-1);
          WordElem t2 = scaled(walg.mul(elem(wg), pool.bracket(elem(wf), elem(wh))), sign);
          WordElem rhs = t1;
          for (const auto& [w, c] : t2) addTo(rhs, w, c);
          if (!eq(lhs, rhs)) return std::make_pair(false, std::string("Leibniz"));
        }
    for (const auto& wf : two.words())
      for (const auto& wg : two.words())
        for (const auto& wh : two.words()) {
          WordElem lhs = pool.bracket(elem(wf), pool.bracket(elem(wg), elem(wh)));
          WordElem t1 = pool.bracket(pool.bracket(elem(wf), elem(wg)), elem(wh));
          Rat sign =
              (par((walg.degreeOf(wf) + 1) * (walg.degreeOf(wg) + 1)) == 0) ? Rat(1) : Rat(-1);
          WordElem t2 = scaled(pool.bracket(elem(wg), pool.bracket(elem(wf), elem(wh))), sign);
          WordElem rhs = t1;
          for (const auto& [w, c] : t2) addTo(rhs, w, c);
          if (!eq(lhs, rhs)) return std::make_pair(false, std::string("Jacobi"));
        }
    return std::make_pair(true, std::string());
  }));
  if (sys.boundary().topNonzeroArity() < 2) {
    checks.push_back(run("p0.derivation-compatibility", "bracket-differential", [&] {
      // Close the pool under the differential first.
      std::vector<HonestField> closed = kernels;
      size_t base = closed.size();
      for (size_t i = 0; i < base; ++i) {
        HonestField d = sys.differentialOf(u, closed[i]);
        if (!d.isZero()) closed.push_back(d);
      }
      KernelObservables pool(sys, u, closed);
      const auto& walg = pool.words();
      auto par = [](int x) { return ((x % 2) + 2) % 2; };
      auto elem = [](const Word& w) {
        WordElem e;
        e.emplace(w, Rat(1));
        return e;
      };
      auto eq = [](const WordElem& a, const WordElem& b) {
        WordElem diff = a;
        for (const auto& [w, c] : b) addTo(diff, w, -c);
        return diff.empty();
      };
      WordBasis two(walg, 2);
      for (const auto& wf : two.words())
        for (const auto& wg : two.words()) {
          WordElem lhs = pool.differential(pool.bracket(elem(wf), elem(wg)));
          WordElem t1 = pool.bracket(pool.differential(elem(wf)), elem(wg));
          Rat sign = (par(walg.degreeOf(wf) + 1) == 0) ? Rat(1) : Rat(-1);
          WordElem t2 = scaled(pool.bracket(elem(wf), pool.differential(elem(wg))), sign);
          WordElem rhs = t1;
          for (const auto& [w, c] : t2) addTo(rhs, w, c);
          if (!eq(lhs, rhs)) return std::make_pair(false, std::string("d-compatibility"));
        }
      return std::make_pair(true, std::string());
    }));
  } else {
    checks.push_back(skipped("p0.derivation-compatibility", "bracket-differential",
                             "pool differential needs an abelian system"));
  }
  return checks;
}

}  // namespace

bool Report::allPass() const {
  for (const auto& c : checks)
    if (c.status == "fail") return false;
  return true;
}

Json Report::toJson() const {
  Json out;
  out["subject"] = subject;
  Json list = Json::array();
  int pass = 0, fail = 0, skip = 0;
  for (const auto& c : checks) {
    Json jc{{"check", c.id}, {"anchor", c.anchor}, {"status", c.status}, {"wallMs", c.wallMs}};
    if (!c.witness.empty()) jc["witness"] = c.witness;
    list.push_back(std::move(jc));
    if (c.status == "pass") ++pass;
    if (c.status == "fail") ++fail;
    if (c.status == "skipped") ++skip;
  }
  out["checks"] = std::move(list);
  out["summary"] = Json{{"pass", pass}, {"fail", fail}, {"skipped", skip}};
  return out;
}

const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names = {"bv", "lagrangian", "factorization", "p0",
                                                 "examples", "all"};
  return names;
}

bool knownSuite(const std::string& name) {
  for (const auto& n : suiteNames())
    if (n == name) return true;
  return false;
}

Report runSuite(const BulkBoundarySystem& sys, const std::string& suite, const SuiteConfig& cfg) {
  Report rep;
  rep.subject = sys.name();
  auto append = [&](std::vector<CheckRecord>&& checks) {
    for (auto& c : checks) rep.checks.push_back(std::move(c));
  };
  if (suite == "bv" || suite == "all") append(bvSuite(sys, cfg));
  if (suite == "lagrangian" || suite == "all") append(lagrangianSuite(sys, cfg));
  if (suite == "factorization" || suite == "all") append(factorizationSuite(sys, cfg));
  if (suite == "p0" || suite == "all") append(p0Suite(sys, cfg));
  if (suite == "examples")
    rep.checks.push_back(skipped("examples", "example-registry",
                                 "registered examples run via 'examples run <name>'"));
  return rep;
}

const std::vector<std::string>& exampleNames() {
  static const std::vector<std::string> names = {"toplmech",       "bf1d-abelian",
                                                 "bf1d-sl2",       "bf2d-sl2-weight1",
                                                 "bf-pushforward-abelian", "bf-pushforward-sl2"};
  return names;
}

std::optional<Json> exampleDescriptor(const std::string& name) {
  if (name == "toplmech") return toJson(makeToplmech());
  if (name == "bf1d-abelian") return toJson(makeBf1dAbelian());
  if (name == "bf1d-sl2") return toJson(makeBf1dSl2());
  return std::nullopt;
}

std::optional<Report> runExample(const std::string& name, const SuiteConfig& cfg) {
  if (name == "toplmech" || name == "bf1d-abelian" || name == "bf1d-sl2") {
    BulkBoundarySystem sys = name == "toplmech"       ? makeToplmech()
                             : name == "bf1d-abelian" ? makeBf1dAbelian()
                                                      : makeBf1dSl2();
    return runSuite(sys, "all", cfg);
  }
  if (name == "bf2d-sl2-weight1") {
    Report rep;
    rep.subject = name;
    HalfPlaneFunctionals hp(LieAlgebra::sl2(), HalfPlaneFunctionals::Variant::B,
                            std::max(1, cfg.weightCap));
    rep.checks.push_back(run("halfplane.weight1-dimension", "b-weight-cohomology", [&] {
      auto table = hp.cohomologyTable();
      Index total = 0;
      for (const auto& [key, dim] : table)
        if (key.second == 1) total += dim;
      return std::make_pair(total == 3, "dimension " + std::to_string(total));
    }));
    rep.checks.push_back(run("halfplane.closed-form-agreement", "b-weight-cohomology", [&] {
      return std::make_pair(hp.cohomologyTable() == hp.closedFormTable(), std::string());
    }));
    rep.checks.push_back(run("halfplane.boundary-functionals", "boundary-field-functional", [&] {
      Vec e = (Vec(3) << Rat(1), Rat(0), Rat(0)).finished();
      Vec f = (Vec(3) << Rat(0), Rat(1), Rat(0)).finished();
      Vec h = (Vec(3) << Rat(0), Rat(0), Rat(1)).finished();
      for (const Vec& x : {e, f, h})
        if (!hp.boundaryFunctional(x).closed) return std::make_pair(false, std::string("closed"));
      return std::make_pair(hp.boundaryClassesSpan({e, f, h}), std::string("span"));
    }));
    return rep;
  }
  if (name == "bf-pushforward-abelian" || name == "bf-pushforward-sl2") {
    Report rep;
    rep.subject = name;
    LieAlgebra g = name == "bf-pushforward-abelian" ? LieAlgebra::abelian(1) : LieAlgebra::sl2();
    rep.checks.push_back(run("pushforward.compare", "boundary-pushforward", [&] {
      auto r = pushforwardCompare(g, cfg.symTruncation, 2, name == "bf-pushforward-sl2" ? 1 : 2,
                                  1);
      return std::make_pair(r.pass, r.detail);
    }));
    return rep;
  }
  return std::nullopt;
}

int threadBudgetFromEnv() {
  const char* env = std::getenv("BBK_THREADS");
  if (!env) return 1;
  int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

}  // namespace bbk
