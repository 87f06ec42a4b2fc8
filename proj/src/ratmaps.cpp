#include "hsf/ratmaps.hpp"

#include "hsf/groebner.hpp"
#include "hsf/linalg.hpp"

namespace hsf {

RationalMap::RationalMap(ProjVariety source, std::vector<Poly> forms, RingPtr target) : st_(std::make_shared<State>()) {
  if (forms.empty()) throw InputError("empty linear system");
  int d = -1;
  for (auto& f : forms) {
    if (f.is_zero()) continue;
    if (!f.is_homogeneous()) throw InputError("map forms must be homogeneous");
    if (d >= 0 && f.degree() != d) throw InputError("map forms must have one degree");
    d = f.degree();
  }
  if (d < 0) throw MathError("degenerate linear system: all forms vanish");
  if (target->nvars() != static_cast<int>(forms.size())) throw InputError("target ring does not match form count");
  bool nonzero = false;
  for (auto& f : forms)
    if (!normal_form(f, source.gb()).is_zero()) nonzero = true;
  if (!nonzero) throw MathError("degenerate linear system: all forms vanish on the source");
  st_->source = std::move(source);
  st_->forms = std::move(forms);
  st_->target = std::move(target);
  st_->degree = d;
}

RationalMap map_from_system(const ProjVariety& V, const std::vector<Poly>& forms, RingPtr target) {
  if (!target) target = PolyRing::make(V.ring()->field(), static_cast<int>(forms.size()), "y");
  return RationalMap(V, forms, target);
}

const ProjVariety& RationalMap::image() const {
  std::lock_guard<std::mutex> lock(st_->mu);
  if (!st_->image) st_->image = ProjVariety(target_ring(), image_ideal_by_elimination(*this));
  return *st_->image;
}

bool RationalMap::image_cached() const {
  std::lock_guard<std::mutex> lock(st_->mu);
  return st_->image.has_value();
}

std::vector<Poly> RationalMap::base_locus() const {
  std::vector<Poly> g = source().gens();
  g.insert(g.end(), forms().begin(), forms().end());
  return ideal_sum(g, {});
}

std::vector<Poly> image_ideal_by_elimination(const RationalMap& phi) {
  const RingPtr& R = phi.source().ring();
  int n = R->nvars(), m = phi.target_ring()->nvars();
  std::vector<std::string> names = R->names();
  for (auto& s : phi.target_ring()->names()) names.push_back("_" + s);
  std::vector<int> w(n, 1);
  w.resize(n + m, phi.forms_degree());
  RingPtr G = PolyRing::make(R->field(), names, MonomialOrder::weighted_blocks({n, m}, w));
  std::vector<int> xmap(n), ymap(m, 0);
  for (int i = 0; i < n; ++i) xmap[i] = i;
  std::vector<Poly> gens;
  for (auto& f : phi.source().gens()) gens.push_back(f.embed(G, xmap));
  for (int j = 0; j < m; ++j) gens.push_back(Poly::var(G, n + j) - phi.forms()[j].embed(G, xmap));
  auto B = buchberger(gens);
  std::vector<int> back(n + m, 0);
  for (int j = 0; j < m; ++j) back[n + j] = j;
  std::vector<Poly> out;
  for (auto& f : B.gens()) {
    bool free = true;
    for (auto& t : f.terms())
      for (int i = 0; i < n && free; ++i)
        if (t.m.exp(i)) free = false;
    if (free) out.push_back(f.embed(phi.target_ring(), back));
  }
  if (out.empty()) return {};
  return buchberger(out).gens();
}

std::vector<Poly> image_ideal_by_interpolation(const RationalMap& phi, int maxdeg, Rng& rng) {
  int m = phi.target_ring()->nvars();
  long need = binomial_l(m - 1 + maxdeg, maxdeg) + 20;
  std::vector<Point> pts;
  while (static_cast<long>(pts.size()) < need) {
    Point q = phi(phi.source().sample(rng));
    if (!is_zero_point(q)) pts.push_back(q);
  }
  std::vector<Poly> gens;
  for (int d = 1; d <= maxdeg; ++d) {
    auto f = forms_through_points(phi.target_ring(), pts, d);
    gens.insert(gens.end(), f.begin(), f.end());
  }
  if (gens.empty()) return {};
  return buchberger(gens).gens();
}

ProjVariety preimage(const RationalMap& phi, const std::vector<Poly>& Z) {
  std::vector<Poly> J = phi.source().gens();
  for (auto& z : Z) {
    Poly g = z.substitute(phi.forms());
    if (!g.is_zero()) J.push_back(g);
  }
  return ProjVariety(phi.source().ring(), ideal_saturate(J, phi.forms()));
}

FiberDegree generic_fiber_degree(const RationalMap& phi, Rng& rng) {
  for (int attempt = 0; attempt < 3; ++attempt) {
    Point p = phi.source().sample(rng);
    Point q = phi(p);
    if (is_zero_point(q)) continue;
    std::vector<Poly> gens = phi.source().gens();
    for (auto& l : linear_forms_through(phi.target_ring(), {q})) gens.push_back(l.substitute(phi.forms()));
    try {
      return {count_points(gens, phi.forms(), rng), p};
    } catch (const MathError&) {
    }
  }
  throw MathError("generic fiber is not finite at the sampled points");
}

std::vector<Poly> apply_projectivity(const std::vector<Poly>& I, const Mat& M) {
  if (I.empty()) return {};
  RingPtr R = I[0].ring();
  const PrimeField& F = R->field();
  auto Mi = inverse(M, F);
  if (!Mi) throw MathError("singular projectivity");
  int n = R->nvars();
  std::vector<Poly> img;
  for (int i = 0; i < n; ++i) {
    Poly l(R);
    for (int j = 0; j < n; ++j)
      if ((*Mi)(i, j)) l += Poly::var(R, j).scaled((*Mi)(i, j));
    img.push_back(l);
  }
  std::vector<Poly> out;
  for (auto& f : I) out.push_back(f.substitute(img));
  return out;
}

ProjVariety apply_projectivity(const ProjVariety& V, const Mat& M) {
  auto gens = apply_projectivity(V.gens(), M);
  ProjVariety W(V.ring(), gens.empty() ? gens : buchberger(gens).gens());
  if (V.has_sampler()) {
    PrimeField F = V.ring()->field();
    W = W.with_sampler([V, M, F](Rng& rng) { return mat_vec(M, V.sample(rng), F); });
  }
  return W;
}

RationalMap compose_projectivity(const RationalMap& phi, const Mat& M) {
  const PrimeField& F = phi.source().ring()->field();
  if (!inverse(M, F)) throw MathError("singular projectivity");
  int m = phi.target_ring()->nvars();
  std::vector<Poly> g;
  for (int i = 0; i < m; ++i) {
    Poly s(phi.source().ring());
    for (int j = 0; j < m; ++j)
      if (M(i, j)) s += phi.forms()[j].scaled(M(i, j));
    g.push_back(s);
  }
  return RationalMap(phi.source(), g, phi.target_ring());
}

nlohmann::json to_json(const RationalMap& phi, const std::string& source_ref, std::optional<long> fiber_degree,
                       std::optional<u64> seed) {
  nlohmann::json j;
  j["source_ref"] = source_ref;
  j["degree_of_forms"] = phi.forms_degree();
  j["forms"] = nlohmann::json::array();
  for (auto& f : phi.forms()) j["forms"].push_back(f.str());
  if (phi.image_cached()) {
    const auto& I = phi.image();
    j["image_invariants"] = {{"dim", I.dim()}, {"degree", I.degree()}, {"ambient_dim", phi.target_dim()}};
  } else {
    j["image_invariants"] = nullptr;
  }
  j["fiber_degree"] = fiber_degree ? nlohmann::json(*fiber_degree) : nlohmann::json(nullptr);
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return j;
}

}  // namespace hsf
