#include "tutte/pasture.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace tutte {

namespace {

using Big = boost::multiprecision::cpp_int;

// Smith normal form with column transform tracking: U*R*V = D with V
// unimodular; W = V^{-1} is maintained alongside. Row operations are free.
struct SnfResult {
  std::vector<long long> diag;  // d1 | d2 | ..., positive
  std::vector<std::vector<long long>> v, w;
};

SnfResult snf_with_transform(std::vector<std::vector<Big>> a, int cols) {
  const int rows = (int)a.size();
  std::vector<std::vector<Big>> v(cols, std::vector<Big>(cols, 0)),
      w(cols, std::vector<Big>(cols, 0));
  for (int i = 0; i < cols; ++i) v[i][i] = w[i][i] = 1;
  auto col_addmul = [&](int j, int i, const Big& q) {  // col_j += q * col_i
    for (int r = 0; r < rows; ++r) a[r][j] += q * a[r][i];
    for (int r = 0; r < cols; ++r) v[r][j] += q * v[r][i];
    for (int c = 0; c < cols; ++c) w[i][c] -= q * w[j][c];
  };
  auto col_swap = [&](int i, int j) {
    for (int r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
    for (int r = 0; r < cols; ++r) std::swap(v[r][i], v[r][j]);
    std::swap(w[i], w[j]);
  };
  auto col_neg = [&](int i) {
    for (int r = 0; r < rows; ++r) a[r][i] = -a[r][i];
    for (int r = 0; r < cols; ++r) v[r][i] = -v[r][i];
    for (int c = 0; c < cols; ++c) w[i][c] = -w[i][c];
  };
  int t = 0;
  const int bound = std::min(rows, cols);
  while (t < bound) {
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pi < 0 || abs(a[i][j]) < abs(a[pi][pj]))) { pi = i; pj = j; }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    if (pj != t) col_swap(t, pj);
    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      if (a[i][t] == 0) continue;
      Big q = a[i][t] / a[t][t];
      if (q != 0)
        for (int j = 0; j < cols; ++j) a[i][j] -= q * a[t][j];
      if (a[i][t] != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      if (a[t][j] == 0) continue;
      Big q = a[t][j] / a[t][t];
      if (q != 0) col_addmul(j, t, -q);
      if (a[t][j] != 0) clean = false;
    }
    if (!clean) continue;
    // Divisor condition: the pivot must divide the rest of the submatrix;
    // fold an offending entry into the pivot column and continue reducing.
    int bi = -1, bj = -1;
    for (int i = t + 1; i < rows && bi < 0; ++i)
      for (int j = t + 1; j < cols && bi < 0; ++j)
        if (a[i][j] % a[t][t] != 0) { bi = i; bj = j; }
    if (bi >= 0) {
      col_addmul(t, bj, Big(1));
      continue;
    }
    if (a[t][t] < 0) col_neg(t);
    ++t;
  }
  SnfResult out;
  for (int i = 0; i < t; ++i) out.diag.push_back((long long)a[i][i]);
  out.v.assign(cols, std::vector<long long>(cols));
  out.w.assign(cols, std::vector<long long>(cols));
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < cols; ++j) {
      out.v[i][j] = (long long)v[i][j];
      out.w[i][j] = (long long)w[i][j];
    }
  return out;
}

long long mod_reduce(long long x, long long d) {
  if (d == 0) return x;
  long long r = x % d;
  return r < 0 ? r + d : r;
}

}  // namespace

Pasture Pasture::present(std::vector<std::string> gen_names, std::vector<MultRel> mult,
                         std::vector<std::array<RawTerm, 3>> additive, std::string name) {
  Pasture p;
  p.name_ = std::move(name);
  p.gen_names_ = std::move(gen_names);
  const std::size_t m = p.gen_names_.size();
  for (MultRel& r : mult) {
    if (r.exponents.size() != m) throw TutteError("pasture: malformed multiplicative relation");
    r.sign &= 1;
    p.mult_.push_back(std::move(r));
  }
  for (auto& triple : additive) {
    int zeros = 0;
    for (auto& t : triple) {
      if (t.zero) ++zeros;
      else if (t.exponents.size() != m)
        throw TutteError("pasture: malformed additive relation");
    }
    if (zeros == 3) continue;  // 0 + 0 + 0
    if (zeros == 2) throw TutteError("pasture: additive relation of the form a + 0 + 0");
    if (zeros == 1) {
      // a + b = 0 forces b = -a: record the multiplicative relation a/b = -1.
      std::array<RawTerm, 2> nz;
      int k = 0;
      for (auto& t : triple)
        if (!t.zero) nz[k++] = t;
      MultRel r;
      r.exponents.resize(m);
      for (std::size_t i = 0; i < m; ++i) r.exponents[i] = nz[0].exponents[i] - nz[1].exponents[i];
      r.sign = (nz[0].sign + nz[1].sign + 1) & 1;
      p.mult_.push_back(std::move(r));
      continue;
    }
    p.additive_.push_back(triple);
  }
  p.canonicalize();
  return p;
}

void Pasture::canonicalize() {
  const int m = (int)gen_names_.size();
  const int n_raw = m + 1;  // the sign generator comes last
  std::vector<std::vector<Big>> rows;
  for (const MultRel& r : mult_) {
    std::vector<Big> row(n_raw, 0);
    for (int i = 0; i < m; ++i) row[i] = r.exponents[i];
    row[m] = r.sign;
    rows.push_back(std::move(row));
  }
  {
    std::vector<Big> row(n_raw, 0);
    row[m] = 2;
    rows.push_back(std::move(row));
  }
  SnfResult snf = snf_with_transform(std::move(rows), n_raw);
  const int rank = (int)snf.diag.size();
  std::vector<int> kept;
  moduli_.clear();
  for (int i = 0; i < n_raw; ++i) {
    long long d = i < rank ? snf.diag[i] : 0;
    if (d == 1) continue;
    kept.push_back(i);
    moduli_.push_back(d);
  }
  free_rank_ = 0;
  torsion_.clear();
  for (long long d : moduli_) {
    if (d == 0) ++free_rank_;
    else torsion_.push_back(d);
  }
  std::sort(torsion_.begin(), torsion_.end());
  raw_to_canon_.assign(n_raw, std::vector<long long>(kept.size(), 0));
  for (int r = 0; r < n_raw; ++r)
    for (std::size_t j = 0; j < kept.size(); ++j) raw_to_canon_[r][j] = snf.v[r][kept[j]];
  canon_to_raw_.assign(kept.size(), std::vector<long long>(n_raw, 0));
  for (std::size_t j = 0; j < kept.size(); ++j)
    for (int r = 0; r < n_raw; ++r) canon_to_raw_[j][r] = snf.w[kept[j]][r];
  std::vector<long long> eps(n_raw, 0);
  eps[m] = 1;
  minus_one_trivial_ = from_raw(eps).coords == one().coords;
  std::vector<std::array<PastureElement, 3>> reps;
  for (const auto& triple : additive_) {
    std::array<PastureElement, 3> t;
    for (int k = 0; k < 3; ++k) {
      std::vector<long long> raw(n_raw, 0);
      for (int i = 0; i < m; ++i) raw[i] = triple[k].exponents[i];
      raw[m] = triple[k].sign;
      t[k] = from_raw(raw);
    }
    reps.push_back(orbit_rep(t));
  }
  std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  null_orbits_ = std::move(reps);
}

PastureElement Pasture::from_raw(const std::vector<long long>& raw) const {
  PastureElement e;
  e.zero = false;
  e.coords.assign(moduli_.size(), 0);
  for (std::size_t r = 0; r < raw.size(); ++r)
    if (raw[r] != 0)
      for (std::size_t j = 0; j < moduli_.size(); ++j)
        e.coords[j] += raw[r] * raw_to_canon_[r][j];
  for (std::size_t j = 0; j < moduli_.size(); ++j) e.coords[j] = mod_reduce(e.coords[j], moduli_[j]);
  return e;
}

std::vector<long long> Pasture::raw_coords(const PastureElement& a) const {
  if (a.zero) throw TutteError("pasture: zero has no multiplicative coordinates");
  const int m = (int)gen_names_.size();
  std::vector<long long> raw(m + 1, 0);
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    if (a.coords[j] == 0) continue;
    for (int r = 0; r <= m; ++r) raw[r] += a.coords[j] * canon_to_raw_[j][r];
  }
  return raw;
}

PastureElement Pasture::one() const {
  PastureElement e;
  e.zero = false;
  e.coords.assign(moduli_.size(), 0);
  return e;
}

PastureElement Pasture::minus_one() const {
  std::vector<long long> raw(gen_names_.size() + 1, 0);
  raw.back() = 1;
  return from_raw(raw);
}

PastureElement Pasture::generator(int raw_index) const {
  std::vector<long long> raw(gen_names_.size() + 1, 0);
  raw.at(raw_index) = 1;
  return from_raw(raw);
}

PastureElement Pasture::mul(const PastureElement& a, const PastureElement& b) const {
  if (a.zero || b.zero) return PastureElement::zero_elem();
  if (a.coords.size() != moduli_.size() || b.coords.size() != moduli_.size())
    throw TutteError("pasture: foreign element");
  PastureElement e;
  e.zero = false;
  e.coords.resize(moduli_.size());
  for (std::size_t j = 0; j < moduli_.size(); ++j)
    e.coords[j] = mod_reduce(a.coords[j] + b.coords[j], moduli_[j]);
  return e;
}

PastureElement Pasture::inv(const PastureElement& a) const {
  if (a.zero) throw TutteError("pasture: zero has no inverse");
  if (a.coords.size() != moduli_.size()) throw TutteError("pasture: foreign element");
  PastureElement e;
  e.zero = false;
  e.coords.resize(moduli_.size());
  for (std::size_t j = 0; j < moduli_.size(); ++j)
    e.coords[j] = mod_reduce(-a.coords[j], moduli_[j]);
  return e;
}

PastureElement Pasture::pow(const PastureElement& a, long long e) const {
  if (a.zero) return e == 0 ? one() : PastureElement::zero_elem();
  PastureElement out;
  out.zero = false;
  out.coords.resize(moduli_.size());
  for (std::size_t j = 0; j < moduli_.size(); ++j)
    out.coords[j] = mod_reduce(a.coords[j] * e, moduli_[j]);
  return out;
}

PastureElement Pasture::element(int sign, const std::vector<long long>& exponents) const {
  if (exponents.size() != gen_names_.size()) throw TutteError("pasture: bad exponent vector");
  std::vector<long long> raw(gen_names_.size() + 1, 0);
  for (std::size_t i = 0; i < exponents.size(); ++i) raw[i] = exponents[i];
  raw.back() = sign & 1;
  return from_raw(raw);
}

long long Pasture::unit_group_order() const {
  if (!finite_units()) throw TutteError("pasture: infinite unit group");
  long long n = 1;
  for (long long d : moduli_) n *= d;
  return n;
}

std::vector<PastureElement> Pasture::all_units() const {
  if (!finite_units()) throw TutteError("pasture: infinite unit group");
  std::vector<PastureElement> out{one()};
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    std::vector<PastureElement> next;
    for (const PastureElement& e : out)
      for (long long v = 0; v < moduli_[j]; ++v) {
        PastureElement f = e;
        f.coords[j] = v;
        next.push_back(std::move(f));
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::array<PastureElement, 3> Pasture::orbit_rep(const std::array<PastureElement, 3>& t) const {
  std::array<PastureElement, 3> best;
  bool have = false;
  for (int k = 0; k < 3; ++k) {
    PastureElement u = inv(t[k]);
    std::array<PastureElement, 3> cand{one(), mul(t[(k + 1) % 3], u), mul(t[(k + 2) % 3], u)};
    if (cand[2] < cand[1]) std::swap(cand[1], cand[2]);
    if (!have || std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end())) {
      best = cand;
      have = true;
    }
  }
  return best;
}

bool Pasture::nullset_contains(const PastureElement& a, const PastureElement& b,
                               const PastureElement& c) const {
  for (const PastureElement* e : {&a, &b, &c})
    if (!e->zero && e->coords.size() != moduli_.size()) throw TutteError("pasture: foreign element");
  int zeros = (int)a.zero + (int)b.zero + (int)c.zero;
  if (zeros == 3) return true;
  if (zeros == 2) return false;
  if (zeros == 1) {
    std::vector<const PastureElement*> nz;
    for (const PastureElement* e : {&a, &b, &c})
      if (!e->zero) nz.push_back(e);
    return *nz[1] == neg(*nz[0]);
  }
  std::array<PastureElement, 3> rep = orbit_rep({a, b, c});
  return std::binary_search(
      null_orbits_.begin(), null_orbits_.end(), rep, [](const auto& x, const auto& y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
      });
}

std::vector<std::pair<PastureElement, PastureElement>> Pasture::fundamental_pairs() const {
  std::set<std::pair<PastureElement, PastureElement>> out;
  PastureElement mone = minus_one();
  for (const auto& rep : null_orbits_)
    for (int k = 0; k < 3; ++k) {
      PastureElement u = mul(mone, inv(rep[k]));  // scale so slot k becomes -1
      PastureElement z = mul(rep[(k + 1) % 3], u);
      PastureElement t = mul(rep[(k + 2) % 3], u);
      if (nullset_contains(z, t, mone)) {
        out.emplace(z, t);
        out.emplace(t, z);
      }
    }
  return {out.begin(), out.end()};
}

std::string Pasture::to_string(const PastureElement& a) const {
  if (a.zero) return "0";
  std::string s;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    if (a.coords[j] == 0) continue;
    if (!s.empty()) s += "*";
    s += "c" + std::to_string(j);
    if (a.coords[j] != 1) s += "^" + std::to_string(a.coords[j]);
  }
  return s.empty() ? "1" : s;
}

std::string Pasture::signature() const {
  std::string units;
  if (free_rank_ > 0) units = "Z^" + std::to_string(free_rank_);
  for (long long d : torsion_) units += (units.empty() ? "" : " x ") + ("Z/" + std::to_string(d));
  if (units.empty()) units = "1";
  std::string s = "units: " + units;
  s += minus_one_trivial_ ? "; -1 = 1" : "; -1 != 1";
  s += "; null orbits: " + std::to_string(null_orbits_.size());
  return s;
}

Pasture Pasture::quotient_identify(
    const std::vector<std::pair<PastureElement, PastureElement>>& pairs,
    const std::string& name) const {
  std::vector<MultRel> mult = mult_;
  const int m = (int)gen_names_.size();
  for (const auto& [a, b] : pairs) {
    PastureElement ratio = mul(a, inv(b));
    std::vector<long long> raw = raw_coords(ratio);
    MultRel rel;
    rel.exponents.assign(raw.begin(), raw.begin() + m);
    rel.sign = (int)mod_reduce(raw[m], 2);
    mult.push_back(std::move(rel));
  }
  return present(gen_names_, std::move(mult), additive_, name);
}

namespace {

// Tiny finite fields GF(q), q <= 9.
struct SmallField {
  int q = 0;
  std::vector<std::vector<int>> addt, mult;
  int primitive = 0;
  int add(int a, int b) const { return addt[a][b]; }
  int mul(int a, int b) const { return mult[a][b]; }
};

SmallField make_field(int q) {
  SmallField f;
  f.q = q;
  int p = q, k = 1;
  if (q == 4) { p = 2; k = 2; }
  if (q == 8) { p = 2; k = 3; }
  if (q == 9) { p = 3; k = 2; }
  auto to_digits = [&](int a) {
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i) { d[i] = a % p; a /= p; }
    return d;
  };
  auto from_digits = [&](const std::vector<int>& d) {
    int a = 0;
    for (int i = k - 1; i >= 0; --i) a = a * p + d[i];
    return a;
  };
  f.addt.assign(q, std::vector<int>(q));
  f.mult.assign(q, std::vector<int>(q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      auto da = to_digits(a), db = to_digits(b);
      std::vector<int> ds(k);
      for (int i = 0; i < k; ++i) ds[i] = (da[i] + db[i]) % p;
      f.addt[a][b] = from_digits(ds);
      std::vector<int> prod(2 * k - 1, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      // Moduli: x^2+x+1 (GF4), x^3+x+1 (GF8), x^2+1 (GF9).
      for (int deg = 2 * k - 2; deg >= k; --deg) {
        int c = prod[deg];
        if (!c) continue;
        prod[deg] = 0;
        if (q == 4 || q == 8) {
          prod[deg - k] = (prod[deg - k] + c) % p;
          prod[deg - k + 1] = (prod[deg - k + 1] + c) % p;
        } else if (q == 9) {
          prod[deg - k] = (prod[deg - k] + c * (p - 1)) % p;
        }
      }
      std::vector<int> dm(prod.begin(), prod.begin() + k);
      f.mult[a][b] = from_digits(dm);
    }
  for (int g = 2; g < q; ++g) {
    int x = g, order = 1;
    while (x != 1) { x = f.mul(x, g); ++order; }
    if (order == q - 1) { f.primitive = g; break; }
  }
  if (q <= 3) f.primitive = q - 1;
  return f;
}

RawTerm term(int sign, std::vector<long long> exps) {
  return RawTerm{false, sign, std::move(exps)};
}

Pasture field_pasture(int q, const std::string& label) {
  SmallField f = make_field(q);
  std::vector<std::string> gens{"w"};
  std::vector<MultRel> mult;
  mult.push_back(MultRel{{q - 1}, 0});  // w^(q-1) = 1
  if (q % 2 == 1)
    mult.push_back(MultRel{{-(q - 1) / 2}, 1});  // -1 = w^((q-1)/2)
  else
    mult.push_back(MultRel{{0}, 1});  // -1 = 1
  std::vector<long long> log(q, 0);
  int x = 1;
  for (int e = 0; e < q - 1; ++e) {
    log[x] = e;
    x = f.mul(x, f.primitive);
  }
  std::vector<std::array<RawTerm, 3>> add;
  for (int a = 1; a < q; ++a)
    for (int b = a; b < q; ++b)
      for (int c = b; c < q; ++c)
        if (f.add(f.add(a, b), c) == 0)
          add.push_back({term(0, {log[a]}), term(0, {log[b]}), term(0, {log[c]})});
  return Pasture::present(gens, std::move(mult), std::move(add), label);
}

}  // namespace

Pasture Pasture::named(const std::string& label) {
  if (label == "F1pm") return present({}, {}, {}, "F1pm");
  if (label == "K")
    return present({}, {MultRel{{}, 1}}, {{term(0, {}), term(0, {}), term(0, {})}}, "K");
  if (label == "S") return present({}, {}, {{term(0, {}), term(0, {}), term(1, {})}}, "S");
  if (label == "U")
    return present({"x", "y"}, {}, {{term(0, {1, 0}), term(0, {0, 1}), term(1, {0, 0})}}, "U");
  if (label == "D")
    return present({"z"}, {}, {{term(0, {1}), term(1, {0}), term(1, {0})}}, "D");
  if (label == "H")
    return present({"z"}, {MultRel{{3}, 1}}, {{term(0, {2}), term(1, {1}), term(0, {0})}}, "H");
  if (label == "V") {
    std::vector<std::array<RawTerm, 3>> add;
    for (int i = 0; i < 5; ++i) {
      std::vector<long long> xi(5, 0), prod(5, 0), one_v(5, 0);
      xi[i] = 1;
      prod[(i + 4) % 5] += 1;
      prod[(i + 1) % 5] += 1;
      add.push_back({term(0, xi), term(0, prod), term(1, one_v)});
    }
    return present({"x1", "x2", "x3", "x4", "x5"}, {}, std::move(add), "V");
  }
  if (label.size() >= 2 && label[0] == 'F' && isdigit((unsigned char)label[1])) {
    int q = std::atoi(label.c_str() + 1);
    if (q == 2 || q == 3 || q == 4 || q == 5 || q == 7 || q == 8 || q == 9)
      return field_pasture(q, label);
  }
  throw TutteError("unknown pasture: " + label);
}

namespace {

RawTerm parse_monomial(const std::string& text, const std::vector<std::string>& gens) {
  std::string s;
  for (char c : text)
    if (!isspace((unsigned char)c)) s += c;
  if (s.empty()) throw TutteError("pasture: empty term");
  RawTerm t;
  t.zero = false;
  t.sign = 0;
  t.exponents.assign(gens.size(), 0);
  std::size_t pos = 0;
  if (s[pos] == '-') {
    t.sign = 1;
    ++pos;
  } else if (s[pos] == '+') {
    ++pos;
  }
  if (pos < s.size() && s[pos] == '0' && pos + 1 == s.size()) {
    if (t.sign) throw TutteError("pasture: -0 is not a term");
    return RawTerm{};
  }
  bool expect_factor = true;
  while (pos < s.size()) {
    if (!expect_factor) {
      if (s[pos] != '*') throw TutteError("pasture: malformed monomial " + text);
      ++pos;
    }
    expect_factor = false;
    if (s[pos] == '1') {
      ++pos;
      continue;
    }
    std::size_t start = pos;
    while (pos < s.size() && (isalnum((unsigned char)s[pos]) || s[pos] == '_' || s[pos] == '.' ||
                              s[pos] == ',' || s[pos] == '~'))
      ++pos;
    std::string name = s.substr(start, pos - start);
    auto it = std::find(gens.begin(), gens.end(), name);
    if (it == gens.end()) throw TutteError("pasture: unknown generator '" + name + "'");
    long long e = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      std::size_t estart = pos;
      if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
      while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
      if (estart == pos) throw TutteError("pasture: malformed exponent in " + text);
      e = std::stoll(s.substr(estart, pos - estart));
    }
    t.exponents[it - gens.begin()] += e;
  }
  return t;
}

}  // namespace

PastureElement Pasture::parse_element(const std::string& text) const {
  RawTerm t = parse_monomial(text, gen_names_);
  if (t.zero) return PastureElement::zero_elem();
  return element(t.sign, t.exponents);
}

Pasture Pasture::parse(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> gens;
  std::vector<MultRel> mult;
  std::vector<std::array<RawTerm, 3>> add;
  bool any = false;
  auto strip = [](std::string s) {
    while (!s.empty() && isspace((unsigned char)s.front())) s.erase(s.begin());
    while (!s.empty() && isspace((unsigned char)s.back())) s.pop_back();
    return s;
  };
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    any = true;
    if (line.rfind("gens:", 0) == 0) {
      std::istringstream gs(line.substr(5));
      std::string g;
      while (gs >> g) gens.push_back(g);
    } else if (line.rfind("mul:", 0) == 0) {
      std::string body = line.substr(4);
      auto eq = body.find('=');
      if (eq == std::string::npos) throw TutteError("pasture: mul line needs '='");
      RawTerm lhs = parse_monomial(strip(body.substr(0, eq)), gens);
      RawTerm rhs = parse_monomial(strip(body.substr(eq + 1)), gens);
      if (lhs.zero || rhs.zero) throw TutteError("pasture: zero in multiplicative relation");
      MultRel r;
      r.exponents.resize(gens.size());
      for (std::size_t i = 0; i < gens.size(); ++i)
        r.exponents[i] = lhs.exponents[i] - rhs.exponents[i];
      r.sign = (lhs.sign + rhs.sign) & 1;
      mult.push_back(std::move(r));
    } else if (line.rfind("add:", 0) == 0) {
      std::string body = line.substr(4);
      std::vector<std::string> parts;
      std::string cur;
      for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        bool splitter = (c == '+' || c == '-') && !strip(cur).empty() && i > 0 &&
                        body[i - 1] != '^' && body[i - 1] != '*';
        if (splitter) {
          parts.push_back(cur);
          cur = (c == '-') ? "-" : "";
        } else {
          cur += c;
        }
      }
      if (!strip(cur).empty()) parts.push_back(cur);
      if (parts.size() > 3) throw TutteError("pasture: additive relation has more than 3 terms");
      std::array<RawTerm, 3> triple{RawTerm{}, RawTerm{}, RawTerm{}};
      for (std::size_t i = 0; i < parts.size(); ++i) triple[i] = parse_monomial(parts[i], gens);
      add.push_back(triple);
    } else {
      throw TutteError("pasture: unrecognized line: " + line);
    }
  }
  if (!any) throw TutteError("pasture: empty presentation");
  return present(gens, std::move(mult), std::move(add), name);
}

Pasture tensor(const Pasture& p, const Pasture& q) {
  std::vector<std::string> gens;
  for (const std::string& g : p.gen_names()) gens.push_back(g + ".l");
  for (const std::string& g : q.gen_names()) gens.push_back(g + ".r");
  const std::size_t mp = p.gen_names().size(), mq = q.gen_names().size();
  auto embed = [&](const std::vector<long long>& e, bool left) {
    std::vector<long long> out(mp + mq, 0);
    for (std::size_t i = 0; i < e.size(); ++i) out[left ? i : mp + i] = e[i];
    return out;
  };
  auto embed_term = [&](const RawTerm& t, bool left) {
    if (t.zero) return RawTerm{};
    return RawTerm{false, t.sign, embed(t.exponents, left)};
  };
  std::vector<MultRel> mult;
  for (const MultRel& r : p.raw_mult()) mult.push_back(MultRel{embed(r.exponents, true), r.sign});
  for (const MultRel& r : q.raw_mult()) mult.push_back(MultRel{embed(r.exponents, false), r.sign});
  std::vector<std::array<RawTerm, 3>> add;
  for (const auto& tr : p.raw_additive())
    add.push_back({embed_term(tr[0], true), embed_term(tr[1], true), embed_term(tr[2], true)});
  for (const auto& tr : q.raw_additive())
    add.push_back({embed_term(tr[0], false), embed_term(tr[1], false), embed_term(tr[2], false)});
  std::string nm;
  if (!p.name().empty() && !q.name().empty()) nm = p.name() + " (x) " + q.name();
  return Pasture::present(std::move(gens), std::move(mult), std::move(add), nm);
}

PastureElement PastureMorphism::apply(const Pasture& src, const Pasture& dst,
                                      const PastureElement& a) const {
  if (a.zero) return PastureElement::zero_elem();
  std::vector<long long> raw = src.raw_coords(a);
  PastureElement out = dst.one();
  for (std::size_t i = 0; i + 1 < raw.size(); ++i)
    if (raw[i] != 0) out = dst.mul(out, dst.pow(gen_images[i], raw[i]));
  if (raw.back() % 2 != 0) out = dst.mul(out, dst.minus_one());
  return out;
}

std::vector<PastureMorphism> hom_enumerate(const Pasture& p, const Pasture& q) {
  if (!q.finite_units()) throw TutteError("hom: target has infinite unit group");
  std::vector<PastureElement> units = q.all_units();
  // Candidate images per canonical coordinate generator: order must divide
  // the modulus; free generators are unconstrained.
  std::vector<std::vector<PastureElement>> cands(p.num_coords());
  for (int i = 0; i < p.num_coords(); ++i) {
    long long d = p.moduli()[i];
    for (const PastureElement& u : units)
      if (d == 0 || q.pow(u, d) == q.one()) cands[i].push_back(u);
  }
  double work = 1;
  for (const auto& c : cands) work *= (double)c.size();
  if (work > 2e8)
    throw TutteError("hom: enumeration over " + std::to_string(p.num_coords()) +
                     " generators is too large");
  PastureElement p_mone = p.minus_one();
  PastureElement q_mone = q.minus_one();
  std::vector<PastureMorphism> out;
  std::vector<PastureElement> x(p.num_coords(), q.one());
  auto image = [&](const PastureElement& a) {
    PastureElement e = q.one();
    for (int i = 0; i < p.num_coords(); ++i)
      if (a.coords[i] != 0) e = q.mul(e, q.pow(x[i], a.coords[i]));
    return e;
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == p.num_coords()) {
      if (!(image(p_mone) == q_mone)) return;
      for (const auto& rep : p.null_orbits())
        if (!q.nullset_contains(image(rep[0]), image(rep[1]), image(rep[2]))) return;
      PastureMorphism f;
      for (std::size_t g = 0; g < p.gen_names().size(); ++g)
        f.gen_images.push_back(image(p.generator((int)g)));
      out.push_back(std::move(f));
      return;
    }
    for (const PastureElement& u : cands[i]) {
      x[i] = u;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

long long hom_count(const Pasture& p, const Pasture& q) {
  return (long long)hom_enumerate(p, q).size();
}

namespace {

Big mod_inverse(Big a, const Big& m) {
  a %= m;
  if (a < 0) a += m;
  Big r0 = m, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    Big q = r0 / r1;
    Big r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  Big inv = s0 % m;
  return inv < 0 ? inv + m : inv;
}

// All solutions x in Z^n of V x = w modulo e (e = 0: over Z), with x_i
// forced to 0 whenever e = 0 and kill[i] is set. Enumerated via a tracked
// diagonalization of V; throws when the family is infinite.
std::vector<std::vector<long long>> solve_linear(const std::vector<std::vector<long long>>& vmat,
                                                 const std::vector<long long>& w, long long e,
                                                 const std::vector<char>& kill) {
  const int k = (int)vmat.size();
  const int n = k ? (int)vmat[0].size() : 0;
  std::vector<int> cols;
  for (int i = 0; i < n; ++i)
    if (!(e == 0 && kill[i])) cols.push_back(i);
  const int nc = (int)cols.size();
  std::vector<std::vector<Big>> a(k, std::vector<Big>(nc + 1, 0));
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < nc; ++c) a[r][c] = vmat[r][cols[c]];
    a[r][nc] = w[r];
  }
  std::vector<std::vector<Big>> vtrans(nc, std::vector<Big>(nc, 0));
  for (int i = 0; i < nc; ++i) vtrans[i][i] = 1;
  int t = 0;
  while (t < k && t < nc) {
    int pi = -1, pj = -1;
    for (int i = t; i < k; ++i)
      for (int j = t; j < nc; ++j)
        if (a[i][j] != 0 && (pi < 0 || abs(a[i][j]) < abs(a[pi][pj]))) { pi = i; pj = j; }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    if (pj != t) {
      for (int r = 0; r < k; ++r) std::swap(a[r][t], a[r][pj]);
      std::swap(vtrans[t], vtrans[pj]);
    }
    bool clean = true;
    for (int i = 0; i < k; ++i) {
      if (i == t || a[i][t] == 0) continue;
      Big q = a[i][t] / a[t][t];
      if (q != 0)
        for (int j = 0; j <= nc; ++j) a[i][j] -= q * a[t][j];
      if (a[i][t] != 0) clean = false;
    }
    for (int j = 0; j < nc; ++j) {
      if (j == t || a[t][j] == 0) continue;
      Big q = a[t][j] / a[t][t];
      if (q != 0) {
        for (int r = 0; r < k; ++r) a[r][j] -= q * a[r][t];
        for (int c = 0; c < nc; ++c) vtrans[j][c] -= q * vtrans[t][c];
      }
      if (a[t][j] != 0) clean = false;
    }
    if (!clean) continue;
    ++t;
  }
  // Residual rows: 0 = rhs.
  for (int i = t; i < k; ++i) {
    const Big& b = a[i][nc];
    if (e == 0 ? b != 0 : b % e != 0) return {};
  }
  // Per-coordinate solutions of d_i z_i = b_i; free coordinates beyond the
  // rank range over all residues (or are rejected over Z).
  std::vector<std::vector<Big>> z_options(nc);
  for (int i = 0; i < nc; ++i) {
    if (i >= t) {
      if (e == 0) throw TutteError("pasture: iso solve underdetermined");
      for (Big v = 0; v < e; ++v) z_options[i].push_back(v);
      continue;
    }
    Big d = a[i][i], b = a[i][nc];
    if (e == 0) {
      if (b % d != 0) return {};
      z_options[i].push_back(b / d);
    } else {
      Big g = boost::multiprecision::gcd(d, Big(e));
      if (b % g != 0) return {};
      Big dg = d / g, bg = b / g, eg = e / g;
      Big z0 = eg > 1 ? (((bg % eg) * mod_inverse(dg, eg)) % eg + eg) % eg : Big(0);
      for (Big s = 0; s < g; ++s) z_options[i].push_back((z0 + eg * s) % e);
    }
  }
  std::vector<std::vector<long long>> out;
  std::vector<int> pick(nc, 0);
  while (true) {
    std::vector<Big> x(n, 0);
    for (int j = 0; j < nc; ++j) {
      const Big& zj = z_options[j][pick[j]];
      if (zj == 0) continue;
      for (int c = 0; c < nc; ++c) x[cols[c]] += zj * vtrans[j][c];
    }
    std::vector<long long> xo(n, 0);
    for (int i = 0; i < n; ++i)
      xo[i] = e > 0 ? (long long)(((x[i] % e) + e) % e) : (long long)x[i];
    out.push_back(std::move(xo));
    int j = 0;
    while (j < nc && ++pick[j] == (int)z_options[j].size()) pick[j++] = 0;
    if (j == nc) break;
    if (out.size() > 100000) throw TutteError("pasture: iso solve family too large");
  }
  return out;
}

}  // namespace

std::vector<PastureMorphism> pasture_isomorphisms(const Pasture& p, const Pasture& q,
                                                  bool first_only) {
  std::vector<PastureMorphism> result;
  if (p.free_rank() != q.free_rank() || p.torsion() != q.torsion() ||
      p.minus_one_is_one() != q.minus_one_is_one() ||
      p.null_orbits().size() != q.null_orbits().size())
    return result;

  const int np = p.num_coords();
  // Constraint vectors: -1 plus the entries of every orbit representative.
  // These must generate the source group.
  {
    std::vector<std::vector<Big>> gen_rows;
    auto add_row = [&](const PastureElement& el) {
      std::vector<Big> row(np);
      for (int i = 0; i < np; ++i) row[i] = el.coords[i];
      gen_rows.push_back(std::move(row));
    };
    add_row(p.minus_one());
    for (const auto& rep : p.null_orbits()) {
      add_row(rep[1]);
      add_row(rep[2]);
    }
    for (int i = 0; i < np; ++i) {
      if (p.moduli()[i] == 0) continue;
      std::vector<Big> row(np, 0);
      row[i] = p.moduli()[i];
      gen_rows.push_back(std::move(row));
    }
    SnfResult snf = snf_with_transform(std::move(gen_rows), np);
    bool generates = (int)snf.diag.size() == np;
    for (long long d : snf.diag)
      if (d != 1) generates = false;
    if (!generates)
      throw TutteError("pasture: isomorphism search requires null entries to generate the units");
  }

  // Forms of each target orbit: scalings with first entry 1 and both orders
  // of the remaining pair.
  struct Form {
    PastureElement a, b;
  };
  std::vector<std::vector<Form>> q_forms;
  for (const auto& rep : q.null_orbits()) {
    std::vector<Form> forms;
    for (int k = 0; k < 3; ++k) {
      PastureElement u = q.inv(rep[k]);
      PastureElement a = q.mul(rep[(k + 1) % 3], u);
      PastureElement b = q.mul(rep[(k + 2) % 3], u);
      forms.push_back({a, b});
      forms.push_back({b, a});
    }
    std::sort(forms.begin(), forms.end(), [](const Form& x, const Form& y) {
      return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    forms.erase(std::unique(forms.begin(), forms.end(),
                            [](const Form& x, const Form& y) { return x.a == y.a && x.b == y.b; }),
                forms.end());
    q_forms.push_back(std::move(forms));
  }

  auto element_order = [&](const Pasture& ps, const PastureElement& el) -> long long {
    for (int i = 0; i < ps.num_coords(); ++i)
      if (ps.moduli()[i] == 0 && el.coords[i] != 0) return 0;  // infinite
    long long o = 1;
    for (int i = 0; i < ps.num_coords(); ++i) {
      long long d = ps.moduli()[i];
      if (d == 0 || el.coords[i] == 0) continue;
      long long g = std::gcd(el.coords[i], d);
      o = std::lcm(o, d / g);
    }
    return o;
  };

  const int orbits = (int)p.null_orbits().size();
  std::vector<int> target(orbits, -1);
  std::vector<char> used(orbits, 0);
  std::vector<int> form_pick(orbits, -1);
  std::map<PastureElement, PastureElement> pinned;  // entry -> image

  auto solve_and_check = [&]() {
    // Assemble constraints.
    std::vector<PastureElement> srcs{p.minus_one()};
    std::vector<PastureElement> dsts{q.minus_one()};
    for (int r = 0; r < orbits; ++r) {
      const auto& rep = p.null_orbits()[r];
      const Form& f = q_forms[target[r]][form_pick[r]];
      srcs.push_back(rep[1]);
      dsts.push_back(f.a);
      srcs.push_back(rep[2]);
      dsts.push_back(f.b);
    }
    const int k = (int)srcs.size();
    std::vector<std::vector<long long>> vmat(k, std::vector<long long>(np));
    for (int r = 0; r < k; ++r)
      for (int i = 0; i < np; ++i) vmat[r][i] = srcs[r].coords[i];
    std::vector<char> kill(np, 0);
    for (int i = 0; i < np; ++i) kill[i] = p.moduli()[i] != 0;
    // Solve per target coordinate.
    std::vector<std::vector<std::vector<long long>>> per_coord;
    for (int j = 0; j < q.num_coords(); ++j) {
      std::vector<long long> w(k);
      for (int r = 0; r < k; ++r) w[r] = dsts[r].coords[j];
      auto sols = solve_linear(vmat, w, q.moduli()[j], kill);
      if (sols.empty()) return;
      // Well-definedness: d_i * x_i = 0 mod e_j.
      std::vector<std::vector<long long>> ok;
      for (auto& x : sols) {
        bool good = true;
        for (int i = 0; i < np && good; ++i) {
          long long d = p.moduli()[i];
          if (d == 0) continue;
          long long e = q.moduli()[j];
          if (e == 0 ? x[i] != 0 : (d * x[i]) % e != 0) good = false;
        }
        if (good) ok.push_back(std::move(x));
      }
      if (ok.empty()) return;
      per_coord.push_back(std::move(ok));
    }
    // Cartesian product of the per-coordinate families.
    std::vector<int> pick(q.num_coords(), 0);
    while (true) {
      // A(i, j) = image coordinate j of the source coordinate generator i.
      std::vector<PastureElement> coord_images(np, q.one());
      for (int i = 0; i < np; ++i)
        for (int j = 0; j < q.num_coords(); ++j)
          coord_images[i].coords[j] = mod_reduce(per_coord[j][pick[j]][i], q.moduli()[j]);
      auto apply = [&](const PastureElement& el) {
        PastureElement out = q.one();
        for (int i = 0; i < np; ++i)
          if (el.coords[i] != 0) out = q.mul(out, q.pow(coord_images[i], el.coords[i]));
        return out;
      };
      bool valid = apply(p.minus_one()) == q.minus_one();
      // Surjectivity: images plus target relations span Z^{nq}.
      if (valid) {
        std::vector<std::vector<Big>> rows;
        for (int i = 0; i < np; ++i) {
          std::vector<Big> row(q.num_coords());
          for (int j = 0; j < q.num_coords(); ++j) row[j] = coord_images[i].coords[j];
          rows.push_back(std::move(row));
        }
        for (int j = 0; j < q.num_coords(); ++j) {
          if (q.moduli()[j] == 0) continue;
          std::vector<Big> row(q.num_coords(), 0);
          row[j] = q.moduli()[j];
          rows.push_back(std::move(row));
        }
        SnfResult snf = snf_with_transform(std::move(rows), q.num_coords());
        if ((int)snf.diag.size() != q.num_coords()) valid = false;
        for (long long d : snf.diag)
          if (d != 1) valid = false;
      }
      // Null orbits map bijectively onto null orbits.
      if (valid) {
        std::set<std::array<PastureElement, 3>> images;
        for (const auto& rep : p.null_orbits()) {
          auto img = q.orbit_rep({apply(rep[0]), apply(rep[1]), apply(rep[2])});
          images.insert(img);
        }
        std::set<std::array<PastureElement, 3>> want(q.null_orbits().begin(),
                                                     q.null_orbits().end());
        if (images != want) valid = false;
      }
      if (valid) {
        PastureMorphism f;
        for (std::size_t g = 0; g < p.gen_names().size(); ++g) {
          PastureElement gen = p.generator((int)g);
          f.gen_images.push_back(apply(gen));
        }
        result.push_back(std::move(f));
      }
      if (first_only && !result.empty()) return;
      int j = 0;
      while (j < q.num_coords() && ++pick[j] == (int)per_coord[j].size()) pick[j++] = 0;
      if (j == q.num_coords()) break;
    }
  };

  auto backtrack = [&](auto&& self, int r) -> void {
    if (first_only && !result.empty()) return;
    if (r == orbits) {
      solve_and_check();
      return;
    }
    const auto& rep = p.null_orbits()[r];
    for (int tq = 0; tq < orbits; ++tq) {
      if (used[tq]) continue;
      for (int fi = 0; fi < (int)q_forms[tq].size(); ++fi) {
        const Form& f = q_forms[tq][fi];
        if (element_order(p, rep[1]) != element_order(q, f.a) ||
            element_order(p, rep[2]) != element_order(q, f.b))
          continue;
        auto it1 = pinned.find(rep[1]);
        if (it1 != pinned.end() && !(it1->second == f.a)) continue;
        auto it2 = pinned.find(rep[2]);
        if (it2 != pinned.end() && !(it2->second == f.b)) continue;
        bool ins1 = it1 == pinned.end(), ins2 = false;
        if (ins1) pinned.emplace(rep[1], f.a);
        auto it2b = pinned.find(rep[2]);
        if (it2b == pinned.end()) {
          pinned.emplace(rep[2], f.b);
          ins2 = true;
        } else if (!(it2b->second == f.b)) {
          if (ins1) pinned.erase(rep[1]);
          continue;
        }
        used[tq] = 1;
        target[r] = tq;
        form_pick[r] = fi;
        self(self, r + 1);
        used[tq] = 0;
        if (ins1) pinned.erase(rep[1]);
        if (ins2) pinned.erase(rep[2]);
      }
    }
  };
  backtrack(backtrack, 0);

  // Deduplicate by generator images.
  std::sort(result.begin(), result.end(), [](const PastureMorphism& a, const PastureMorphism& b) {
    return a.gen_images < b.gen_images;
  });
  result.erase(std::unique(result.begin(), result.end(),
                           [](const PastureMorphism& a, const PastureMorphism& b) {
                             return a.gen_images == b.gen_images;
                           }),
               result.end());
  return result;
}

bool pasture_equivalent(const Pasture& p, const Pasture& q) {
  if (p.free_rank() != q.free_rank() || p.torsion() != q.torsion() ||
      p.minus_one_is_one() != q.minus_one_is_one() ||
      p.null_orbits().size() != q.null_orbits().size())
    return false;
  if (p.null_orbits().empty()) return true;  // determined by group + sign
  return !pasture_isomorphisms(p, q, /*first_only=*/true).empty();
}

const std::vector<std::string>& fingerprint_panel() {
  static const std::vector<std::string> panel{"F2", "F3", "F4", "F5", "F7", "F8", "K", "S"};
  return panel;
}

std::vector<long long> hom_fingerprint(const Pasture& p) {
  static const std::vector<Pasture> targets = [] {
    std::vector<Pasture> t;
    for (const std::string& s : fingerprint_panel()) t.push_back(Pasture::named(s));
    return t;
  }();
  long long work = 1;
  for (long long d : p.moduli()) work *= (d == 0 ? 8 : std::min<long long>(d, 8));
  if (work > 50'000'000) throw TutteError("fingerprint: presentation too large");
  std::vector<long long> out;
  for (const Pasture& q : targets) out.push_back(hom_count(p, q));
  return out;
}

namespace {

struct Candidate {
  std::string display;
  std::vector<std::string> factors;
  int free_rank;
  std::vector<long long> torsion;
  bool minus_one_trivial;
  std::size_t fundamental_pairs;
  std::size_t null_orbits;
  std::vector<long long> fingerprint;
};

std::vector<Candidate> build_candidates() {
  std::vector<Candidate> out;
  std::map<std::string, Pasture> base;
  std::map<std::string, std::vector<long long>> base_fp;
  std::map<std::string, std::size_t> base_pairs;
  for (const char* n : {"F2", "F3", "H", "D", "U"}) {
    Pasture p = Pasture::named(n);
    base_fp.emplace(n, hom_fingerprint(p));
    base_pairs.emplace(n, p.fundamental_pairs().size());
    base.emplace(n, std::move(p));
  }
  // Hom counts and fundamental pairs of a tensor product come from the
  // factors (universal property / per-factor null orbits); only the unit
  // group needs the assembled presentation.
  auto add_candidate = [&](const std::vector<std::string>& factors) {
    Pasture p = factors.empty() ? Pasture::named("F1pm") : base.at(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i) p = tensor(p, base.at(factors[i]));
    Candidate c;
    c.factors = factors;
    if (factors.empty()) c.display = "F1pm";
    else {
      for (std::size_t i = 0; i < factors.size(); ++i)
        c.display += (i ? " (x) " : "") + factors[i];
    }
    c.free_rank = p.free_rank();
    c.torsion = p.torsion();
    c.minus_one_trivial = p.minus_one_is_one();
    c.null_orbits = p.null_orbits().size();
    c.fundamental_pairs = 0;
    c.fingerprint.assign(fingerprint_panel().size(), 1);
    for (const std::string& f : factors) {
      c.fundamental_pairs += base_pairs.at(f);
      for (std::size_t i = 0; i < c.fingerprint.size(); ++i) c.fingerprint[i] *= base_fp.at(f)[i];
    }
    out.push_back(std::move(c));
  };
  add_candidate({});
  // Multisets over {F2, F3, H, D, U} with at most one F2 and one F3 (extra
  // copies are absorbed: F2 (x) F2 = F2 and F3 (x) F3 = F3), up to 6 factors.
  const std::vector<std::string> names{"F2", "F3", "H", "D", "U"};
  std::vector<std::vector<std::string>> level{{}};
  for (int size = 1; size <= 6; ++size) {
    std::vector<std::vector<std::string>> next;
    for (const auto& ms : level)
      for (const std::string& n : names) {
        if (!ms.empty() && n < ms.back()) continue;
        if ((n == "F2" || n == "F3") && std::count(ms.begin(), ms.end(), n)) continue;
        auto e = ms;
        e.push_back(n);
        next.push_back(std::move(e));
      }
    for (const auto& ms : next) add_candidate(ms);
    level = std::move(next);
  }
  {
    Pasture v = Pasture::named("V");
    Candidate c;
    c.display = "V";
    c.factors = {"V"};
    c.free_rank = v.free_rank();
    c.torsion = v.torsion();
    c.minus_one_trivial = v.minus_one_is_one();
    c.null_orbits = v.null_orbits().size();
    c.fundamental_pairs = v.fundamental_pairs().size();
    c.fingerprint = hom_fingerprint(v);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return a.factors.size() != b.factors.size() ? a.factors.size() < b.factors.size()
                                                : a.display < b.display;
  });
  // The invariant channels must separate the table: a repeated tuple would
  // make recognition ambiguous.
  std::map<std::tuple<int, std::vector<long long>, bool, std::size_t, std::size_t,
                      std::vector<long long>>,
           std::string>
      seen;
  for (const Candidate& c : out) {
    auto key = std::make_tuple(c.free_rank, c.torsion, c.minus_one_trivial, c.fundamental_pairs,
                               c.null_orbits, c.fingerprint);
    auto [it, inserted] = seen.emplace(key, c.display);
    if (!inserted)
      throw TutteError("recognition collision in the candidate table: " + it->second + " vs " +
                       c.display);
  }
  return out;
}

}  // namespace

RecognizedStructure recognize(const Pasture& p) {
  static const std::vector<Candidate> candidates = build_candidates();
  RecognizedStructure r;
  r.display = "unrecognized";
  std::vector<long long> fp;
  std::size_t pairs;
  try {
    fp = hom_fingerprint(p);
    pairs = p.fundamental_pairs().size();
  } catch (const TutteError&) {
    return r;
  }
  std::vector<const Candidate*> matches;
  for (const Candidate& c : candidates)
    if (c.free_rank == p.free_rank() && c.torsion == p.torsion() &&
        c.minus_one_trivial == p.minus_one_is_one() && c.fundamental_pairs == pairs &&
        c.null_orbits == p.null_orbits().size() && c.fingerprint == fp)
      matches.push_back(&c);
  if (matches.empty()) return r;
  for (std::size_t i = 1; i < matches.size(); ++i)
    if (matches[i]->factors != matches[0]->factors)
      throw TutteError("recognition collision: " + matches[0]->display + " vs " +
                       matches[i]->display);
  r.recognized = true;
  r.display = matches[0]->display;
  r.factors = matches[0]->factors;
  return r;
}

}  // namespace tutte
