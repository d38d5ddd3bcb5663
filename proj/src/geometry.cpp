#include "gsc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace gsc {

namespace {

constexpr const char* kModule = "geometry";

int monomial_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
  return m;
}

Monomial quotient(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] - b[i];
  return m;
}

std::string one_based(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k] + 1);
  return out + "}";
}

}  // namespace

// ---------------------------------------------------------------- CommPoly

bool GrevlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const int da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da < db;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

CommPoly CommPoly::constant(const Field& field, int num_vars, const Scalar& c) {
  CommPoly f(field, num_vars);
  f.add_term(Monomial(static_cast<std::size_t>(num_vars), 0), c);
  return f;
}

CommPoly CommPoly::variable(const Field& field, int num_vars, int index) {
  CommPoly f(field, num_vars);
  Monomial m(static_cast<std::size_t>(num_vars), 0);
  m[static_cast<std::size_t>(index)] = 1;
  f.add_term(m, Scalar::one(field));
  return f;
}

bool CommPoly::is_unit() const { return terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0; }

void CommPoly::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CommPoly& CommPoly::operator+=(const CommPoly& g) {
  for (const auto& [m, c] : g.terms_) add_term(m, c);
  return *this;
}

CommPoly& CommPoly::operator-=(const CommPoly& g) {
  for (const auto& [m, c] : g.terms_) add_term(m, -c);
  return *this;
}

CommPoly& CommPoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

CommPoly operator*(const CommPoly& f, const CommPoly& g) {
  CommPoly out(f.field(), f.num_vars());
  for (const auto& [m, c] : g.terms()) out += f.shifted(m, c);
  return out;
}

CommPoly CommPoly::shifted(const Monomial& m, const Scalar& c) const {
  CommPoly out(field_, num_vars_);
  if (c.is_zero()) return out;
  for (const auto& [w, v] : terms_) {
    Monomial x = w;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += m[i];
    out.terms_.emplace(std::move(x), v * c);
  }
  return out;
}

std::string format(const CommPoly& f, std::span<const std::string> names) {
  if (f.is_zero()) return "0";
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool neg = c.is_negative();
    const Scalar mag = neg ? -c : c;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty())
      out += mag.str();
    else
      out += (mag.is_one() ? "" : mag.str() + "*") + mono;
  }
  return out;
}

// ---------------------------------------------------------------- Buchberger

namespace {

struct Tracked {
  CommPoly f;
  std::vector<CommPoly> cof;
};

// Full reduction keeping f = sum cof_j gens_j.
Tracked reduce(Tracked h, const std::vector<Tracked>& basis) {
  const Field field = h.f.field();
  Tracked r{CommPoly(field, h.f.num_vars()), std::move(h.cof)};
  CommPoly rest = std::move(h.f);
  while (!rest.is_zero()) {
    const Monomial lm = rest.leading_monomial();
    const Scalar lc = rest.leading_coefficient();
    const Tracked* div = nullptr;
    for (const auto& g : basis)
      if (divides(g.f.leading_monomial(), lm)) {
        div = &g;
        break;
      }
    if (!div) {
      r.f.add_term(lm, lc);
      rest.add_term(lm, -lc);
      continue;
    }
    const Monomial m = quotient(lm, div->f.leading_monomial());
    const Scalar c = lc / div->f.leading_coefficient();
    rest -= div->f.shifted(m, c);
    for (std::size_t j = 0; j < r.cof.size(); ++j) r.cof[j] -= div->cof[j].shifted(m, c);
  }
  return r;
}

void make_monic(Tracked& t) {
  const Scalar inv = t.f.leading_coefficient().inverse();
  t.f *= inv;
  for (auto& c : t.cof) c *= inv;
}

}  // namespace

CommGroebnerResult commutative_gb(std::span<const CommPoly> gens, const Field& field, int num_vars) {
  CommGroebnerResult res;
  const std::size_t m = gens.size();
  std::vector<Tracked> basis;
  auto finish_unit = [&](const Tracked& t) {
    res.one_in_ideal = true;
    res.certificate = t.cof;
    res.basis = {t.f};
  };
  auto seed = [&](std::size_t j) {
    std::vector<CommPoly> cof(m, CommPoly(field, num_vars));
    cof[j] = CommPoly::constant(field, num_vars, Scalar::one(field));
    return Tracked{gens[j], std::move(cof)};
  };

  using Pair = std::pair<std::size_t, std::size_t>;
  auto pair_less = [&](const Pair& x, const Pair& y) {
    const Monomial lx = lcm(basis[x.first].f.leading_monomial(), basis[x.second].f.leading_monomial());
    const Monomial ly = lcm(basis[y.first].f.leading_monomial(), basis[y.second].f.leading_monomial());
    if (lx != ly) return GrevlexLess{}(lx, ly);
    return x < y;
  };
  std::vector<Pair> pairs;

  auto add = [&](Tracked t) -> bool {
    t = reduce(std::move(t), basis);
    if (t.f.is_zero()) return false;
    make_monic(t);
    if (t.f.is_unit()) {
      finish_unit(t);
      return true;
    }
    basis.push_back(std::move(t));
    for (std::size_t i = 0; i + 1 < basis.size(); ++i) pairs.emplace_back(i, basis.size() - 1);
    return false;
  };

  for (std::size_t j = 0; j < m; ++j) {
    if (gens[j].is_zero()) continue;
    if (add(seed(j))) return res;
  }
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), pair_less);
    const Pair pr = *best;
    pairs.erase(best);
    const Tracked& a = basis[pr.first];
    const Tracked& b = basis[pr.second];
    const Monomial la = a.f.leading_monomial(), lb = b.f.leading_monomial();
    const Monomial l = lcm(la, lb);
    if (monomial_degree(l) == monomial_degree(la) + monomial_degree(lb)) continue;  // coprime
    const Monomial ma = quotient(l, la), mb = quotient(l, lb);
    const Scalar one = Scalar::one(field), minus = -one;
    Tracked s{a.f.shifted(ma, one) - b.f.shifted(mb, one), {}};
    for (std::size_t j = 0; j < m; ++j) s.cof.push_back(a.cof[j].shifted(ma, one) + b.cof[j].shifted(mb, minus));
    if (add(std::move(s))) return res;
  }
  for (auto& t : basis) res.basis.push_back(std::move(t.f));
  return res;
}

bool verify_unit_certificate(std::span<const CommPoly> gens, std::span<const CommPoly> cofactors) {
  if (gens.empty() || gens.size() != cofactors.size()) return false;
  CommPoly sum(gens[0].field(), gens[0].num_vars());
  for (std::size_t j = 0; j < gens.size(); ++j) sum += cofactors[j] * gens[j];
  return sum == CommPoly::constant(sum.field(), sum.num_vars(), Scalar::one(sum.field()));
}

// ---------------------------------------------------------------- zero locus

BiPoint ZComponent::point(const Vector& a, std::optional<int> anchor_in) const {
  if (!consistent) throw Error(ErrorKind::InvalidArgument, kModule, "component " + support_str() + " is empty");
  const int n = mu.n();
  if (a.size() != static_cast<std::size_t>(n))
    throw Error(ErrorKind::SizeMismatch, kModule, "point has the wrong length");
  for (int i = 0; i < n; ++i) {
    const bool in = std::binary_search(support.begin(), support.end(), i);
    if (in == a[static_cast<std::size_t>(i)].is_zero())
      throw Error(ErrorKind::InvalidArgument, kModule, "point support differs from " + support_str());
  }
  const int t = anchor_in.value_or(anchor());
  if (!std::binary_search(support.begin(), support.end(), t))
    throw Error(ErrorKind::InvalidArgument, kModule, "anchor outside the support");
  Vector b(a.size(), Scalar::zero(mu.field()));
  const Scalar inv = a[static_cast<std::size_t>(t)].inverse();
  for (int i : support) b[static_cast<std::size_t>(i)] = mu(i, t) * a[static_cast<std::size_t>(i)] * inv;
  return BiPoint::make(a, b);
}

std::string ZComponent::support_str() const { return one_based(support); }

std::vector<ZComponent> zero_locus_components(const MuMatrix& mu) {
  const int n = mu.n();
  std::vector<std::vector<int>> supports;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    supports.push_back(std::move(s));
  }
  std::sort(supports.begin(), supports.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  std::vector<ZComponent> out;
  for (auto& s : supports) {
    ZComponent c{mu, s, true, std::nullopt};
    for (int i : s) {
      for (int j : s) {
        for (int k : s)
          if (!(mu(i, j) * mu(j, k) == mu(i, k))) {
            c.consistent = false;
            c.violated = std::array<int, 3>{i, j, k};
            break;
          }
        if (!c.consistent) break;
      }
      if (!c.consistent) break;
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<FreePoly> mu_relations(const MuMatrix& mu) { return SkewRing(mu).relations(); }

bool is_common_zero(const QuadricSystem& q, const BiPoint& p) {
  const SkewRing ring(q.mu);
  for (const auto& rel : ring.relations())
    if (!evaluate_deg2(rel, p).is_zero()) return false;
  for (const auto& qk : q.raw)
    if (!qk.is_zero() && !evaluate_deg2(ring.to_free(qk), p).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------- BPF mode

BpfMode BpfMode::parse(std::string_view text) {
  if (text == "exact") return {};
  const std::string_view prefix = "scan:";
  if (text.substr(0, prefix.size()) != prefix)
    throw Error(ErrorKind::InvalidArgument, kModule, "bpf mode must be exact or scan:p[,k]");
  std::string rest(text.substr(prefix.size()));
  BpfMode m;
  m.kind = Kind::Scan;
  try {
    const auto comma = rest.find(',');
    std::size_t used = 0;
    const std::string ps = rest.substr(0, comma);
    m.p = std::stoull(ps, &used);
    if (used != ps.size()) throw std::invalid_argument("p");
    if (comma != std::string::npos) {
      const std::string ks = rest.substr(comma + 1);
      m.k = std::stoi(ks, &used);
      if (used != ks.size()) throw std::invalid_argument("k");
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, kModule, "cannot parse bpf mode '" + std::string(text) + "'");
  }
  if (m.k < 1 || m.k > 3)
    throw Error(ErrorKind::InvalidArgument, kModule, "scan extension degree must be 1, 2 or 3");
  Field::prime(m.p);  // validates p
  return m;
}

std::string BpfMode::str() const {
  if (kind == Kind::Exact) return "exact";
  return "scan:" + std::to_string(p) + (k == 1 ? "" : "," + std::to_string(k));
}

// ---------------------------------------------------------------- exact

namespace {

struct Substituted {
  std::vector<int> free_vars;  // support minus anchor
  std::vector<std::string> names;
  std::vector<CommPoly> quadrics;
  CommPoly rabinowitsch;
};

// q_k(a, b) on the component with a_anchor = 1 and b_i = mu_{i,anchor} a_i.
Substituted substitute(const QuadricSystem& q, const ZComponent& comp) {
  const Field& field = q.mu.field();
  Substituted s;
  const int t = comp.anchor();
  for (int i : comp.support)
    if (i != t) s.free_vars.push_back(i);
  const int m = static_cast<int>(s.free_vars.size());
  const int nv = m + 1;
  for (int i : s.free_vars) s.names.push_back("a" + std::to_string(i + 1));
  s.names.push_back("u");
  auto var_of = [&](int i) {
    auto it = std::find(s.free_vars.begin(), s.free_vars.end(), i);
    return it == s.free_vars.end() ? -1 : static_cast<int>(it - s.free_vars.begin());
  };
  for (const Matrix& mk : q.matrices) {
    CommPoly f(field, nv);
    for (int i : comp.support)
      for (int j : comp.support) {
        const Scalar c = mk(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * q.mu(j, t);
        Monomial mono(static_cast<std::size_t>(nv), 0);
        if (int v = var_of(i); v >= 0) ++mono[static_cast<std::size_t>(v)];
        if (int v = var_of(j); v >= 0) ++mono[static_cast<std::size_t>(v)];
        f.add_term(mono, c);
      }
    s.quadrics.push_back(std::move(f));
  }
  Monomial prod(static_cast<std::size_t>(nv), 1);
  s.rabinowitsch = CommPoly(field, nv);
  s.rabinowitsch.add_term(prod, Scalar::one(field));
  s.rabinowitsch.add_term(Monomial(static_cast<std::size_t>(nv), 0), -Scalar::one(field));
  return s;
}

Scalar eval(const CommPoly& f, const Vector& x) {
  Scalar total = Scalar::zero(f.field());
  for (const auto& [m, c] : f.terms()) {
    Scalar term = c;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (m[i]) term *= x[i].pow(m[i]);
    total += term;
  }
  return total;
}

std::vector<Scalar> witness_values(const Field& field, std::size_t vars) {
  std::vector<Scalar> vals;
  if (field.is_prime()) {
    const std::uint64_t p = field.characteristic();
    double count = 1;
    for (std::size_t i = 0; i < vars; ++i) count *= static_cast<double>(p - 1);
    if (count <= 2e5) {
      for (std::uint64_t v = 1; v < p; ++v) vals.emplace_back(field, static_cast<long>(v));
      return vals;
    }
  }
  const std::pair<long, long> small[] = {{1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2},
                                         {-1, 2}, {3, 1}, {-3, 1}, {1, 3}, {-1, 3}};
  for (const auto& [num, den] : small) {
    const Scalar d(field, den);
    if (d.is_zero()) continue;
    const Scalar v = Scalar(field, num) / d;
    if (!v.is_zero() && std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
  }
  return vals;
}

std::optional<BiPoint> search_witness(const QuadricSystem& q, const ZComponent& comp, const Substituted& s) {
  const Field& field = q.mu.field();
  const std::size_t m = s.free_vars.size();
  const std::vector<Scalar> vals = witness_values(field, m);
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    Vector x;
    for (std::size_t v = 0; v < m; ++v) x.push_back(vals[idx[v]]);
    x.push_back(Scalar::one(field));  // u, unused by the quadrics
    bool zero = true;
    for (const auto& f : s.quadrics)
      if (!eval(f, x).is_zero()) {
        zero = false;
        break;
      }
    if (zero) {
      Vector a(static_cast<std::size_t>(q.mu.n()), Scalar::zero(field));
      a[static_cast<std::size_t>(comp.anchor())] = Scalar::one(field);
      for (std::size_t v = 0; v < m; ++v) a[static_cast<std::size_t>(s.free_vars[v])] = x[v];
      return comp.point(a);
    }
    std::size_t pos = m;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < vals.size()) break;
      idx[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
    if (m == 0) return std::nullopt;
  }
}

BpfVerdict exact_bpf(const QuadricSystem& q) {
  const int n = q.mu.n();
  if (n > 4)
    throw Error(ErrorKind::TooLarge, kModule,
                "exact base-point test supports n <= 4 (got n = " + std::to_string(n) + ")");
  BpfVerdict v;
  v.mode = "exact";
  v.certified = true;
  v.base_point_free = true;
  std::vector<std::string> nonempty_without_witness;
  for (const ZComponent& comp : zero_locus_components(q.mu)) {
    if (!comp.consistent) continue;
    const Substituted s = substitute(q, comp);
    ComponentCertificate cert;
    cert.support = comp.support;
    cert.variables = s.names;
    for (const auto& f : s.quadrics)
      if (!f.is_zero()) cert.generators.push_back(f);
    cert.generators.push_back(s.rabinowitsch);
    const auto gb = commutative_gb(cert.generators, q.mu.field(), static_cast<int>(s.names.size()));
    cert.empty = gb.one_in_ideal;
    if (cert.empty) cert.cofactors = gb.certificate;
    if (!cert.empty) {
      v.base_point_free = false;
      if (!v.witness) {
        if (auto w = search_witness(q, comp, s)) {
          v.witness = *w;
          v.witness_support = comp.support;
        } else {
          nonempty_without_witness.push_back(comp.support_str());
        }
      }
    }
    v.certificates.push_back(std::move(cert));
  }
  if (!v.base_point_free && !v.witness) {
    v.note = "base points exist over the algebraic closure on support";
    for (const auto& s : nonempty_without_witness) v.note += " " + s;
    v.note += "; none found with coordinates in the searched set";
  }
  return v;
}

// ---------------------------------------------------------------- scan

// GF(p^k) with elements encoded as base-p digit strings of the coefficient
// vector in the basis 1, g, g^2.
class ExtField {
 public:
  ExtField(std::uint64_t p, int k) : p_(p), k_(k) {
    q_ = 1;
    for (int i = 0; i < k; ++i) q_ *= p;
    if (q_ > (1u << 22)) throw Error(ErrorKind::TooLarge, kModule, "scan field too large");
    modulus_.assign(static_cast<std::size_t>(k) + 1, 0);
    modulus_[static_cast<std::size_t>(k)] = 1;
    if (k > 1) find_modulus();
    build_tables();
  }

  std::uint64_t size() const { return q_; }
  std::uint64_t p() const { return p_; }
  bool in_base(std::uint64_t x) const { return x < p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
      out += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return out;
  }
  std::uint64_t neg(std::uint64_t a) const {
    std::uint64_t out = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
      out += ((p_ - a % p_) % p_) * scale;
      a /= p_;
      scale *= p_;
    }
    return out;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  std::uint64_t inv(std::uint64_t a) const { return exp_[(q_ - 1 - log_[a]) % (q_ - 1)]; }

  std::string str(std::uint64_t a) const {
    if (a < p_) return std::to_string(a);
    std::string out;
    std::vector<std::uint64_t> d = digits(a);
    for (int i = k_ - 1; i >= 0; --i) {
      const std::uint64_t c = d[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!out.empty()) out += " + ";
      const std::string mono = i == 0 ? "" : (i == 1 ? "g" : "g^" + std::to_string(i));
      out += mono.empty() ? std::to_string(c) : (c == 1 ? mono : std::to_string(c) + "*" + mono);
    }
    return out;
  }
  std::string modulus_str() const {
    std::string out;
    for (int i = k_; i >= 0; --i) {
      const std::uint64_t c = modulus_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!out.empty()) out += " + ";
      const std::string mono = i == 0 ? "" : (i == 1 ? "g" : "g^" + std::to_string(i));
      out += mono.empty() ? std::to_string(c) : (c == 1 ? mono : std::to_string(c) + "*" + mono);
    }
    return out;
  }

 private:
  std::vector<std::uint64_t> digits(std::uint64_t a) const {
    std::vector<std::uint64_t> d(static_cast<std::size_t>(k_));
    for (auto& x : d) {
      x = a % p_;
      a /= p_;
    }
    return d;
  }
  std::uint64_t encode(const std::vector<std::uint64_t>& d) const {
    std::uint64_t out = 0;
    for (std::size_t i = d.size(); i-- > 0;) out = out * p_ + d[i];
    return out;
  }
  // Schoolbook product reduced by the monic modulus.
  std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const {
    const auto da = digits(a), db = digits(b);
    std::vector<std::uint64_t> prod(static_cast<std::size_t>(2 * k_), 0);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j)
        prod[static_cast<std::size_t>(i + j)] =
            (prod[static_cast<std::size_t>(i + j)] + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p_;
    for (int d = 2 * k_ - 1; d >= k_; --d) {
      const std::uint64_t c = prod[static_cast<std::size_t>(d)];
      if (c == 0) continue;
      for (int i = 0; i <= k_; ++i) {
        auto& slot = prod[static_cast<std::size_t>(d - k_ + i)];
        slot = (slot + (p_ - c) * modulus_[static_cast<std::size_t>(i)]) % p_;
      }
    }
    prod.resize(static_cast<std::size_t>(k_));
    return encode(prod);
  }
  // Degree 2 and 3 polynomials are irreducible iff they have no root.
  void find_modulus() {
    std::uint64_t lower = 1;
    for (int i = 0; i < k_; ++i) lower *= p_;
    for (std::uint64_t c = 0; c < lower; ++c) {
      std::uint64_t x = c;
      for (int i = 0; i < k_; ++i) {
        modulus_[static_cast<std::size_t>(i)] = x % p_;
        x /= p_;
      }
      bool root = false;
      for (std::uint64_t r = 0; r < p_ && !root; ++r) {
        std::uint64_t val = 0;
        for (int i = k_; i >= 0; --i) val = (val * r + modulus_[static_cast<std::size_t>(i)]) % p_;
        root = val == 0;
      }
      if (!root) return;
    }
    throw Error(ErrorKind::InvalidArgument, kModule, "no irreducible modulus found");
  }
  void build_tables() {
    exp_.assign(q_, 0);
    log_.assign(q_, 0);
    for (std::uint64_t gen = 1; gen < q_; ++gen) {
      std::uint64_t x = 1, order = 0;
      do {
        exp_[order] = x;
        x = mul_slow(x, gen);
        ++order;
      } while (x != 1 && order < q_);
      if (order == q_ - 1) {
        for (std::uint64_t e = 0; e < q_ - 1; ++e) log_[exp_[e]] = e;
        return;
      }
    }
    throw Error(ErrorKind::InvalidArgument, kModule, "no primitive element found");
  }

  std::uint64_t p_;
  int k_;
  std::uint64_t q_ = 1;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint64_t> exp_, log_;
};

std::uint64_t reduce_mod_p(const Scalar& s, std::uint64_t p, const char* what) {
  if (s.field().is_prime()) return s.residue();
  const mpz_class num = s.rational().get_num(), den = s.rational().get_den();
  const mpz_class pz(static_cast<unsigned long>(p));
  if (mpz_class(den % pz) == 0)
    throw Error(ErrorKind::UnsupportedFieldForScan, kModule,
                std::string(what) + " entry " + s.str() + " has a denominator divisible by " + std::to_string(p));
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  mpz_class r = (num % pz + pz) % pz * inv % pz;
  return r.get_ui();
}

// Kernel vector of a small dense system over the extension, if any.
std::optional<std::vector<std::uint64_t>> kernel_vector(std::vector<std::vector<std::uint64_t>> rows,
                                                       std::size_t cols, const ExtField& f) {
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const std::uint64_t inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, inv);
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c] == 0) continue;
      const std::uint64_t factor = rows[o][c];
      for (std::size_t k = 0; k < cols; ++k) rows[o][k] = f.sub(rows[o][k], f.mul(factor, rows[r][k]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (pivot_col.size() == cols) return std::nullopt;
  std::size_t free = 0;
  while (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) ++free;
  std::vector<std::uint64_t> x(cols, 0);
  x[free] = 1;
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = f.neg(rows[i][free]);
  return x;
}

BpfVerdict scan_bpf(const QuadricSystem& q, const BpfMode& mode) {
  const Field& field = q.mu.field();
  if (field.is_prime() && field.characteristic() != mode.p)
    throw Error(ErrorKind::UnsupportedFieldForScan, kModule,
                "scan characteristic " + std::to_string(mode.p) + " differs from the instance field " + field.name());
  const int n = q.mu.n();
  const std::uint64_t p = mode.p;
  const ExtField f(p, mode.k);
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<std::uint64_t>> mu(un, std::vector<std::uint64_t>(un));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = reduce_mod_p(q.mu(i, j), p, "mu");
  std::vector<std::vector<std::vector<std::uint64_t>>> mats;
  for (const Matrix& m : q.matrices) {
    std::vector<std::vector<std::uint64_t>> mm(un, std::vector<std::uint64_t>(un));
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = 0; j < un; ++j) mm[i][j] = reduce_mod_p(m(i, j), p, "matrix");
    mats.push_back(std::move(mm));
  }
  double points = 0;
  for (int i = 0; i < n; ++i) points += std::pow(static_cast<double>(f.size()), i);
  if (points > 5e6) throw Error(ErrorKind::TooLarge, kModule, "scan would visit more than 5e6 points");

  BpfVerdict v;
  v.mode = mode.str();
  const std::string field_name = mode.k == 1 ? "GF(" + std::to_string(p) + ")"
                                             : "GF(" + std::to_string(f.size()) + ") = GF(" + std::to_string(p) +
                                                   ")[g]/(" + f.modulus_str() + ")";

  auto check = [&](const std::vector<std::uint64_t>& a) -> std::optional<std::vector<std::uint64_t>> {
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = i + 1; j < un; ++j) {
        // a_j b_i - mu_ij a_i b_j = 0
        std::vector<std::uint64_t> row(un, 0);
        row[i] = a[j];
        row[j] = f.neg(f.mul(mu[i][j], a[i]));
        rows.push_back(std::move(row));
      }
    for (const auto& mm : mats) {
      std::vector<std::uint64_t> row(un, 0);
      for (std::size_t j = 0; j < un; ++j)
        for (std::size_t i = 0; i < un; ++i) row[j] = f.add(row[j], f.mul(mm[i][j], a[i]));
      rows.push_back(std::move(row));
    }
    return kernel_vector(std::move(rows), un, f);
  };

  // Canonical representatives: a_lead = 1, zeros before it. Base-field
  // points first, then points needing the extension.
  for (int pass = 0; pass < (mode.k == 1 ? 1 : 2); ++pass) {
    for (std::size_t lead = 0; lead < un; ++lead) {
      const std::size_t tail = un - lead - 1;
      std::vector<std::uint64_t> digits(tail, 0);
      while (true) {
        std::vector<std::uint64_t> a(un, 0);
        a[lead] = 1;
        bool base = true;
        for (std::size_t t = 0; t < tail; ++t) {
          a[lead + 1 + t] = digits[t];
          base = base && f.in_base(digits[t]);
        }
        if ((pass == 0) == base) {
          if (auto b = check(a)) {
            // normalize b so its first nonzero entry is 1
            std::size_t first = 0;
            while ((*b)[first] == 0) ++first;
            const std::uint64_t inv = f.inv((*b)[first]);
            for (auto& x : *b) x = f.mul(x, inv);
            const bool base_b = std::all_of(b->begin(), b->end(), [&](std::uint64_t x) { return f.in_base(x); });
            std::string text = "((";
            for (std::size_t i = 0; i < un; ++i) text += (i ? "," : "") + f.str(a[i]);
            text += "),(";
            for (std::size_t i = 0; i < un; ++i) text += (i ? "," : "") + f.str((*b)[i]);
            text += "))";
            v.base_point_free = false;
            std::vector<int> support;
            for (int i = 0; i < n; ++i)
              if (a[static_cast<std::size_t>(i)] != 0) support.push_back(i);
            v.witness_support = support;
            if (base && base_b && field.is_prime()) {
              Vector av, bv;
              for (std::size_t i = 0; i < un; ++i) {
                av.emplace_back(field, static_cast<long>(a[i]));
                bv.emplace_back(field, static_cast<long>((*b)[i]));
              }
              v.witness = BiPoint::make(av, bv);
              v.certified = true;
            } else if (field.is_prime()) {
              v.witness_text = text;
              v.certified = true;
              v.note = "base point over " + field_name + ", not rational over " + field.name();
            } else {
              v.witness_text = text;
              v.certified = false;
              v.note = "common zero of the reduction mod " + std::to_string(p) + " over " + field_name +
                       "; not a certificate over Q";
            }
            return v;
          }
        }
        std::size_t pos = tail;
        bool done = true;
        while (pos > 0) {
          --pos;
          if (++digits[pos] < f.size()) {
            done = false;
            break;
          }
          digits[pos] = 0;
        }
        if (done) break;
      }
    }
  }
  v.base_point_free = true;
  v.certified = false;
  v.note = "heuristic: no common zero over " + field_name;
  return v;
}

}  // namespace

BpfVerdict is_base_point_free(const QuadricSystem& q, const BpfMode& mode) {
  return mode.kind == BpfMode::Kind::Exact ? exact_bpf(q) : scan_bpf(q, mode);
}

bool verify_bpf_verdict(const QuadricSystem& q, const BpfVerdict& v) {
  if (v.witness && (v.base_point_free || !is_common_zero(q, *v.witness))) return false;
  for (const auto& c : v.certificates) {
    if (c.empty && !verify_unit_certificate(c.generators, c.cofactors)) return false;
  }
  if (v.base_point_free && v.certified) {
    // every consistent component must carry an emptiness proof for the
    // generators recomputed from q
    std::size_t k = 0;
    for (const ZComponent& comp : zero_locus_components(q.mu)) {
      if (!comp.consistent) continue;
      if (k >= v.certificates.size() || v.certificates[k].support != comp.support || !v.certificates[k].empty)
        return false;
      const Substituted s = substitute(q, comp);
      std::vector<CommPoly> gens;
      for (const auto& f : s.quadrics)
        if (!f.is_zero()) gens.push_back(f);
      gens.push_back(s.rabinowitsch);
      if (gens != v.certificates[k].generators) return false;
      ++k;
    }
  }
  return true;
}

}  // namespace gsc
