#include "lusin/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace lusin {

QuadraticBundle::QuadraticBundle(double eta, std::vector<BundleAtom> atoms)
    : eta_(eta), atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw config_error("bundle needs at least one atom");
  if (!(eta_ > 0)) throw config_error("bundle modulus must be positive");
  int n = atoms_[0].z.dim();
  for (const auto& a : atoms_)
    if (a.z.dim() != n || a.xi.dim() != n)
      throw config_error("bundle atoms have mismatched dimensions");
  if (n == 1) build_hull();
}

void QuadraticBundle::build_hull() {
  // Reduce each atom to the line a + b x after subtracting (eta/2) x^2.
  struct Line {
    double b, a;
    int idx;
  };
  std::vector<Line> lines(atoms_.size());
  for (size_t j = 0; j < atoms_.size(); ++j) {
    double z = atoms_[j].z[0], xi = atoms_[j].xi[0];
    lines[j] = {xi - eta_ * z, atoms_[j].u - xi * z + 0.5 * eta_ * z * z,
                static_cast<int>(j)};
  }
  std::sort(lines.begin(), lines.end(), [](const Line& p, const Line& q) {
    if (p.b != q.b) return p.b < q.b;
    if (p.a != q.a) return p.a < q.a;
    return p.idx > q.idx;  // keep the lowest index last so it survives dedup
  });
  // Drop dominated duplicates of equal slope (keep the largest intercept).
  std::vector<Line> uniq;
  for (const auto& l : lines) {
    if (!uniq.empty() && uniq.back().b == l.b) uniq.back() = l;
    else uniq.push_back(l);
  }
  // Upper envelope via the usual stack construction.
  std::vector<Line> st;
  std::vector<double> from;
  auto cross = [](const Line& p, const Line& q) { return (p.a - q.a) / (q.b - p.b); };
  for (const auto& l : uniq) {
    double x = -std::numeric_limits<double>::infinity();
    while (!st.empty()) {
      x = cross(st.back(), l);
      if (from.size() >= 1 && x <= from.back()) {
        st.pop_back();
        from.pop_back();
      } else {
        break;
      }
    }
    if (st.empty()) x = -std::numeric_limits<double>::infinity();
    st.push_back(l);
    from.push_back(x);
  }
  hull_ = Hull{};
  for (size_t i = 0; i < st.size(); ++i) {
    hull_.slope.push_back(st[i].b);
    hull_.intercept.push_back(st[i].a);
    hull_.from.push_back(from[i]);
    hull_.atom.push_back(st[i].idx);
  }
}

int QuadraticBundle::hull_piece(double x) const {
  auto it = std::upper_bound(hull_.from.begin(), hull_.from.end(), x);
  int p = static_cast<int>(it - hull_.from.begin()) - 1;
  return std::max(p, 0);
}

double QuadraticBundle::eval(const Point& x) const {
  if (dim() == 1 && !hull_.slope.empty()) {
    double t = x[0];
    int p = hull_piece(t);
    return 0.5 * eta_ * t * t + hull_.intercept[p] + hull_.slope[p] * t;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& a : atoms_) {
    Point d = x - a.z;
    double v = a.u + a.xi.dot(d) + 0.5 * eta_ * d.norm2();
    if (v > best) best = v;
  }
  return best;
}

int QuadraticBundle::active_atom(const Point& x) const {
  if (dim() == 1 && !hull_.slope.empty()) {
    double t = x[0];
    int p = hull_piece(t);
    double v = hull_.intercept[p] + hull_.slope[p] * t;
    int best = hull_.atom[p];
    for (int q : {p - 1, p + 1}) {
      if (q < 0 || q >= static_cast<int>(hull_.slope.size())) continue;
      double w = hull_.intercept[q] + hull_.slope[q] * t;
      if (w >= v && hull_.atom[q] < best) best = hull_.atom[q];
    }
    return best;
  }
  double best = -std::numeric_limits<double>::infinity();
  int arg = 0;
  for (size_t j = 0; j < atoms_.size(); ++j) {
    Point d = x - atoms_[j].z;
    double v = atoms_[j].u + atoms_[j].xi.dot(d) + 0.5 * eta_ * d.norm2();
    if (v > best) {
      best = v;
      arg = static_cast<int>(j);
    }
  }
  return arg;
}

Point QuadraticBundle::subgradient(const Point& x) const {
  const BundleAtom& a = atoms_[active_atom(x)];
  return a.xi + (x - a.z) * eta_;
}

std::vector<double> QuadraticBundle::kink_loci() const {
  if (dim() != 1) throw config_error("kink_loci is 1-D only");
  std::vector<double> loci;
  for (size_t i = 1; i < hull_.from.size(); ++i)
    if (std::isfinite(hull_.from[i])) loci.push_back(hull_.from[i]);
  return loci;
}

ValueOracle QuadraticBundle::as_oracle() const {
  ValueOracle o;
  QuadraticBundle self = *this;
  o.value = [self](const Point& p) { return self.eval(p); };
  o.gradient = [self](const Point& p) { return self.subgradient(p); };
  o.dim = dim();
  o.modulus = eta_;
  o.smoothness = atoms_.size() > 1 ? Smoothness::C0 : Smoothness::CInf;
  if (dim() == 1) o.kinks = kink_loci();
  return o;
}

double eval_bundle(const QuadraticBundle& b, const Point& x) { return b.eval(x); }
Point bundle_subgradient(const QuadraticBundle& b, const Point& x) { return b.subgradient(x); }

std::string QuadraticBundle::to_json() const {
  nlohmann::json j;
  j["eta"] = eta_;
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : atoms_) {
    nlohmann::json ja;
    for (int i = 0; i < a.z.dim(); ++i) ja["z"].push_back(a.z[i]);
    ja["u"] = a.u;
    for (int i = 0; i < a.xi.dim(); ++i) ja["xi"].push_back(a.xi[i]);
    j["atoms"].push_back(ja);
  }
  return j.dump(2);
}

QuadraticBundle QuadraticBundle::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw config_error(std::string("bundle JSON parse failure: ") + e.what());
  }
  if (!j.contains("eta") || !j.contains("atoms"))
    throw config_error("bundle JSON needs 'eta' and 'atoms'");
  auto point_of = [](const nlohmann::json& arr) {
    if (!arr.is_array() || arr.empty() || arr.size() > 2)
      throw config_error("bundle JSON points must have 1 or 2 coordinates");
    if (arr.size() == 1) return Point(arr[0].get<double>());
    return Point(arr[0].get<double>(), arr[1].get<double>());
  };
  std::vector<BundleAtom> atoms;
  for (const auto& ja : j["atoms"]) {
    BundleAtom a;
    a.z = point_of(ja.at("z"));
    a.u = ja.at("u").get<double>();
    a.xi = point_of(ja.at("xi"));
    atoms.push_back(a);
  }
  return QuadraticBundle(j["eta"].get<double>(), std::move(atoms));
}

QuadraticBundle QuadraticBundle::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open bundle file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

void QuadraticBundle::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write bundle file: " + path);
  out << to_json() << "\n";
}

}  // namespace lusin
