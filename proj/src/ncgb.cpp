#include "gsc/ncgb.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gsc {

namespace {

constexpr const char* kModule = "ncgb";

// Brings a set of homogeneous degree-d polynomials (already reduced against
// the lower-degree basis) to reduced echelon form: monic, distinct leading
// words, no pivot word in any other element.
std::vector<FreePoly> echelonize(const std::vector<FreePoly>& polys, const Field& field,
                                 int num_gens) {
  if (polys.empty()) return {};
  std::set<Word, DeglexLess> support;
  for (const auto& f : polys)
    for (const auto& [w, c] : f.terms()) support.insert(w);
  // columns from largest word to smallest so pivots are leading words
  std::vector<Word> columns(support.rbegin(), support.rend());
  std::map<Word, std::size_t> col_of;
  for (std::size_t c = 0; c < columns.size(); ++c) col_of[columns[c]] = c;
  Matrix m(field, polys.size(), columns.size());
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (const auto& [w, c] : polys[r].terms()) m(r, col_of[w]) = c;
  const RowEchelon e = row_reduce(m);
  std::vector<FreePoly> out;
  for (std::size_t r = 0; r < e.rank; ++r) {
    FreePoly f(field, num_gens);
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (!e.rref(r, c).is_zero()) f.add_term(columns[c], e.rref(r, c));
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- TermOrder

TermOrder::TermOrder(std::vector<int> precedence) : precedence_(std::move(precedence)) {
  rank_.assign(precedence_.size(), -1);
  for (std::size_t i = 0; i < precedence_.size(); ++i) {
    const int g = precedence_[i];
    if (g < 0 || static_cast<std::size_t>(g) >= precedence_.size() || rank_[static_cast<std::size_t>(g)] != -1)
      throw Error(ErrorKind::InvalidArgument, kModule, "precedence is not a permutation");
    rank_[static_cast<std::size_t>(g)] = static_cast<int>(i);
  }
}

TermOrder TermOrder::natural(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return TermOrder(std::move(p));
}

bool TermOrder::is_natural() const {
  for (std::size_t i = 0; i < precedence_.size(); ++i)
    if (precedence_[i] != static_cast<int>(i)) return false;
  return true;
}

bool TermOrder::less(const Word& a, const Word& b) const {
  return DeglexLess{}(to_internal(a), to_internal(b));
}

std::string TermOrder::str(std::span<const std::string> names) const {
  std::string s;
  for (std::size_t i = 0; i < precedence_.size(); ++i)
    s += (i ? " < " : "") + names[static_cast<std::size_t>(precedence_[i])];
  return s;
}

Word TermOrder::to_internal(const Word& w) const {
  if (rank_.empty()) return w;
  Word out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = rank_[static_cast<std::size_t>(w[i])];
  return out;
}

Word TermOrder::from_internal(const Word& w) const {
  if (precedence_.empty()) return w;
  Word out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = precedence_[static_cast<std::size_t>(w[i])];
  return out;
}

FreePoly TermOrder::to_internal(const FreePoly& f) const {
  if (rank_.empty() || is_natural()) return f;
  FreePoly r(f.field(), f.num_gens());
  for (const auto& [w, c] : f.terms()) r.add_term(to_internal(w), c);
  return r;
}

FreePoly TermOrder::from_internal(const FreePoly& f) const {
  if (precedence_.empty() || is_natural()) return f;
  FreePoly r(f.field(), f.num_gens());
  for (const auto& [w, c] : f.terms()) r.add_term(from_internal(w), c);
  return r;
}

// ---------------------------------------------------------------- basis

std::vector<FreePoly> GroebnerBasis::elements() const {
  std::vector<FreePoly> out;
  for (const auto& g : elements_) out.push_back(order_.from_internal(g));
  return out;
}

std::vector<Word> GroebnerBasis::leading_words() const {
  std::vector<Word> out;
  for (const auto& g : elements_) out.push_back(order_.from_internal(g.leading_word()));
  return out;
}

void GroebnerBasis::insert(FreePoly g) {
  const std::size_t len = g.leading_word().size();
  lead_index_[g.leading_word()] = elements_.size();
  if (std::find(lead_lengths_.begin(), lead_lengths_.end(), len) == lead_lengths_.end()) {
    lead_lengths_.push_back(len);
    std::sort(lead_lengths_.begin(), lead_lengths_.end());
  }
  elements_.push_back(std::move(g));
}

void GroebnerBasis::find_occurrences(
    const Word& w, std::vector<std::pair<std::size_t, std::size_t>>& out) const {
  out.clear();
  Word sub;
  for (std::size_t pos = 0; pos <= w.size(); ++pos)
    for (std::size_t len : lead_lengths_) {
      if (pos + len > w.size()) break;
      sub.assign(w.begin() + static_cast<std::ptrdiff_t>(pos),
                 w.begin() + static_cast<std::ptrdiff_t>(pos + len));
      if (auto it = lead_index_.find(sub); it != lead_index_.end()) out.emplace_back(pos, it->second);
    }
}

FreePoly GroebnerBasis::reduce_internal(FreePoly f, ReductionStrategy strategy,
                                        std::mt19937_64* rng) const {
  std::vector<std::pair<std::size_t, std::size_t>> occ;
  auto apply = [&](FreePoly& r, const Word& w, const Scalar& c, std::size_t pos, std::size_t idx) {
    const FreePoly& g = elements_[idx];
    const Word left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    const Word right(w.begin() + static_cast<std::ptrdiff_t>(pos + g.leading_word().size()), w.end());
    r -= g.sandwich(left, right) * c;
  };

  if (strategy == ReductionStrategy::Random) {
    if (!rng) throw Error(ErrorKind::InvalidArgument, kModule, "random reduction needs a generator");
    while (true) {
      std::vector<Word> reducible;
      for (const auto& [w, c] : f.terms()) {
        find_occurrences(w, occ);
        if (!occ.empty()) reducible.push_back(w);
      }
      if (reducible.empty()) return f;
      const Word w = reducible[std::uniform_int_distribution<std::size_t>(0, reducible.size() - 1)(*rng)];
      find_occurrences(w, occ);
      const auto [pos, idx] = occ[std::uniform_int_distribution<std::size_t>(0, occ.size() - 1)(*rng)];
      apply(f, w, f.coefficient(w), pos, idx);
    }
  }

  FreePoly out(f.field(), f.num_gens());
  while (!f.is_zero()) {
    const Word w = f.leading_word();
    const Scalar c = f.leading_coefficient();
    find_occurrences(w, occ);
    if (occ.empty()) {
      out.add_term(w, c);
      f.add_term(w, -c);
      continue;
    }
    const auto& [pos, idx] = strategy == ReductionStrategy::Leftmost ? occ.front() : occ.back();
    apply(f, w, c, pos, idx);
  }
  return out;
}

FreePoly GroebnerBasis::normal_form(const FreePoly& f, ReductionStrategy strategy,
                                    std::mt19937_64* rng) const {
  if (f.num_gens() != num_gens_)
    throw Error(ErrorKind::GeneratorMismatch, kModule, "polynomial and basis use different generators");
  if (f.degree() > complete_up_to_)
    throw Error(ErrorKind::DegreeExceedsTruncation, kModule,
                "degree " + std::to_string(f.degree()) + " exceeds the certified bound " +
                    std::to_string(complete_up_to_));
  return order_.from_internal(reduce_internal(order_.to_internal(f), strategy, rng));
}

std::vector<Word> GroebnerBasis::normal_words(int degree) const {
  if (degree > complete_up_to_)
    throw Error(ErrorKind::DegreeExceedsTruncation, kModule,
                "degree " + std::to_string(degree) + " exceeds the certified bound");
  // extend normal words letter by letter; a prefix-normal word is normal iff
  // no leading word is a suffix of it
  std::vector<Word> layer{Word{}};
  if (lead_index_.count(Word{})) layer.clear();
  Word sub;
  for (int d = 1; d <= degree; ++d) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (int x = 0; x < num_gens_; ++x) {
        Word v = w;
        v.push_back(x);
        bool ok = true;
        for (std::size_t len : lead_lengths_) {
          if (len > v.size()) break;
          sub.assign(v.end() - static_cast<std::ptrdiff_t>(len), v.end());
          if (lead_index_.count(sub)) {
            ok = false;
            break;
          }
        }
        if (ok) next.push_back(std::move(v));
      }
    layer = std::move(next);
  }
  for (Word& w : layer) w = order_.from_internal(w);
  std::sort(layer.begin(), layer.end(), DeglexLess{});
  return layer;
}

GroebnerBasis complete(std::span<const FreePoly> relations, const Field& field, int num_gens,
                       int max_degree, const TermOrder& order_in) {
  const TermOrder order =
      order_in.precedence().empty() ? TermOrder::natural(num_gens) : order_in;
  if (static_cast<int>(order.precedence().size()) != num_gens)
    throw Error(ErrorKind::InvalidArgument, kModule, "precedence length does not match generators");

  GroebnerBasis g;
  g.field_ = field;
  g.num_gens_ = num_gens;
  g.order_ = order;
  g.truncation_ = max_degree;

  std::map<int, std::vector<FreePoly>> inputs;
  for (const FreePoly& r : relations) {
    if (r.num_gens() != num_gens)
      throw Error(ErrorKind::GeneratorMismatch, kModule, "relation uses a different generator set");
    if (r.field() != field) throw Error(ErrorKind::FieldMismatch, kModule, "relation over another field");
    if (r.is_zero()) continue;
    if (!r.is_homogeneous())
      throw Error(ErrorKind::InhomogeneousInput, kModule, "relation is not homogeneous");
    if (r.degree() <= max_degree) inputs[r.degree()].push_back(order.to_internal(r));
  }

  for (int d = 0; d <= max_degree; ++d) {
    std::vector<FreePoly> candidates;
    for (const FreePoly& r : inputs[d]) {
      FreePoly nf = g.reduce_internal(r, ReductionStrategy::Leftmost, nullptr);
      if (!nf.is_zero()) candidates.push_back(std::move(nf));
    }
    const std::size_t existing = g.elements_.size();
    for (std::size_t i = 0; i < existing; ++i)
      for (std::size_t j = 0; j < existing; ++j) {
        const Word& u = g.elements_[i].leading_word();
        const Word& v = g.elements_[j].leading_word();
        const std::size_t max_k = std::min(u.size(), v.size());
        for (std::size_t k = 1; k < max_k; ++k) {
          if (static_cast<int>(u.size() + v.size() - k) != d) continue;
          if (!std::equal(u.end() - static_cast<std::ptrdiff_t>(k), u.end(), v.begin())) continue;
          // w = u * v[k:] = u[:-k] * v
          ++g.overlaps_checked_;
          const Word v_tail(v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
          const Word u_head(u.begin(), u.end() - static_cast<std::ptrdiff_t>(k));
          FreePoly s = g.elements_[i].sandwich({}, v_tail) - g.elements_[j].sandwich(u_head, {});
          FreePoly nf = g.reduce_internal(std::move(s), ReductionStrategy::Leftmost, nullptr);
          if (!nf.is_zero()) {
            ++g.overlaps_added_;
            candidates.push_back(std::move(nf));
          }
        }
      }
    for (FreePoly& f : echelonize(candidates, field, num_gens)) g.insert(std::move(f));
  }
  g.complete_up_to_ = max_degree;
  return g;
}

GroebnerBasis complete(const Presentation& p, int max_degree, const TermOrder& order) {
  if (!p.generated_in_degree_one())
    throw Error(ErrorKind::InhomogeneousInput, kModule,
                "the rewriting engine needs every generator in degree 1");
  return complete(p.relations, p.field, p.num_gens(), max_degree, order);
}

std::string serialize(const GroebnerBasis& g, std::span<const std::string> names) {
  std::string out = "# order=deglex precedence=" + g.order().str(names) +
                    " truncation=" + std::to_string(g.truncation_degree()) +
                    " complete_up_to=" + std::to_string(g.complete_up_to()) + "\n";
  for (const FreePoly& f : g.elements()) out += format(f, names) + "\n";
  return out;
}

// ---------------------------------------------------------------- Hilbert data

HilbertData hilbert_function(const GroebnerBasis& g) {
  HilbertData h;
  for (int d = 0; d <= g.complete_up_to(); ++d) h.dims.push_back(g.normal_words(d).size());
  return h;
}

HilbertData hilbert_function(const Presentation& p, int max_degree, const TermOrder& order) {
  return hilbert_function(complete(p, max_degree, order));
}

std::string GrowthEstimate::label() const {
  switch (kind) {
    case Kind::Polynomial: return "polynomial(" + std::to_string(delta) + ")";
    case Kind::Exponential: return "exponential";
    case Kind::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

GrowthEstimate growth_estimate(const HilbertData& h) {
  const std::size_t len = h.dims.size();
  if (len < 5)
    throw Error(ErrorKind::WindowTooShort, kModule,
                "growth estimate needs at least 5 values, got " + std::to_string(len));
  GrowthEstimate est;
  est.window_start = len / 2;
  std::vector<long long> cur(h.dims.begin(), h.dims.end());
  while (!cur.empty()) {
    est.differences.push_back(cur);
    std::vector<long long> next;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) next.push_back(cur[i + 1] - cur[i]);
    cur = std::move(next);
  }

  // minimal m with the (m+1)-th difference zero on every window index
  for (std::size_t m = 0; m + 1 < est.differences.size(); ++m) {
    const auto& diff = est.differences[m + 1];
    if (diff.size() <= est.window_start) break;
    const bool vanishes = std::all_of(diff.begin() + static_cast<std::ptrdiff_t>(est.window_start),
                                      diff.end(), [](long long x) { return x == 0; });
    if (vanishes) {
      est.kind = GrowthEstimate::Kind::Polynomial;
      est.delta = static_cast<int>(m);
      break;
    }
  }

  bool exponential = true;
  for (std::size_t i = est.window_start; i + 1 < len; ++i) {
    const auto a = h.dims[i], b = h.dims[i + 1];
    mpq_class ratio = a == 0 ? mpq_class(0) : mpq_class(mpz_class(std::to_string(b)), mpz_class(std::to_string(a)));
    ratio.canonicalize();
    est.tail_ratios.push_back(a == 0 ? "undefined" : ratio.get_str());
    if (a == 0 || 4 * mpz_class(std::to_string(b)) < 5 * mpz_class(std::to_string(a))) exponential = false;
  }
  if (est.kind != GrowthEstimate::Kind::Polynomial && exponential)
    est.kind = GrowthEstimate::Kind::Exponential;
  return est;
}

}  // namespace gsc
