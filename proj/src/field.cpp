#include "ffpat/field.hpp"

#include <charconv>

#include "ffpat/error.hpp"

namespace ffpat {

bool is_prime_integer(long long n) noexcept {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using IntPoly = std::vector<int>;  // over F_p, constant term first

void trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

IntPoly int_mod(IntPoly a, const IntPoly& b, int p) {
  // b monic
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const int c = a.back();
    for (int i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

IntPoly digits(int index, int p, int len) {
  IntPoly out(len, 0);
  for (int i = 0; i < len; ++i) {
    out[i] = index % p;
    index /= p;
  }
  return out;
}

// Small-degree irreducibility over F_p by trial division with every monic
// polynomial of degree <= deg/2. Only used for moduli of degree <= 5.
bool small_irreducible(const IntPoly& f, int p) {
  const int d = static_cast<int>(f.size()) - 1;
  for (int dd = 1; 2 * dd <= d; ++dd) {
    int count = 1;
    for (int i = 0; i < dd; ++i) count *= p;
    for (int idx = 0; idx < count; ++idx) {
      IntPoly g = digits(idx, p, dd);
      g.push_back(1);
      if (int_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

Field Field::make(int p, int e) {
  if (!is_prime_integer(p)) throw Error(Errc::NotPrime, "characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw Error(Errc::InvalidInput, "extension degree must be >= 1");
  int q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxFieldSize) throw Error(Errc::FieldTooLarge, "q = p^e must not exceed 32");
  }

  auto t = std::make_shared<Tables>();
  if (e > 1) {
    int count = q;  // p^e choices for the lower coefficients
    for (int idx = 0; idx < count; ++idx) {
      IntPoly f = digits(idx, p, e);
      f.push_back(1);
      if (small_irreducible(f, p)) {
        t->modulus = f;
        break;
      }
    }
  }

  const auto n = static_cast<std::size_t>(q);
  t->add.resize(n * n);
  t->sub.resize(n * n);
  t->mul.resize(n * n);
  t->neg.resize(n);
  t->inv.assign(n, 0);

  auto to_index = [&](const IntPoly& v) {
    int idx = 0;
    for (int i = e - 1; i >= 0; --i) idx = idx * p + (i < static_cast<int>(v.size()) ? v[i] : 0);
    return static_cast<Elem>(idx);
  };

  for (int a = 0; a < q; ++a) {
    const IntPoly da = digits(a, p, e);
    IntPoly na(e);
    for (int i = 0; i < e; ++i) na[i] = (p - da[i]) % p;
    t->neg[a] = to_index(na);
    for (int b = 0; b < q; ++b) {
      const IntPoly db = digits(b, p, e);
      IntPoly s(e), d(e);
      for (int i = 0; i < e; ++i) {
        s[i] = (da[i] + db[i]) % p;
        d[i] = (da[i] - db[i] + p) % p;
      }
      t->add[a * q + b] = to_index(s);
      t->sub[a * q + b] = to_index(d);
      IntPoly prod(2 * e, 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      if (e > 1) prod = int_mod(prod, t->modulus, p);
      t->mul[a * q + b] = to_index(prod);
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (t->mul[a * q + b] == 1) t->inv[a] = static_cast<Elem>(b);

  return Field(p, e, std::move(t));
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(Errc::DivideByZero, "inverse of zero in " + describe());
  return tables_->inv[a];
}

Elem Field::pow(Elem a, std::uint64_t n) const noexcept {
  Elem result = 1;
  while (n) {
    if (n & 1) result = mul(result, a);
    a = mul(a, a);
    n >>= 1;
  }
  return result;
}

Elem Field::from_int(long long v) const noexcept {
  long long r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r);  // prime-subfield elements have index c_0
}

std::string Field::format(Elem a) const {
  if (e_ == 1) return std::to_string(a);
  std::string out;
  int v = a;
  for (int i = 0; i < e_; ++i) {
    if (i) out += '/';
    out += std::to_string(v % p_);
    v /= p_;
  }
  return out;
}

Elem Field::parse(std::string_view text) const {
  int index = 0;
  int scale = 1;
  int parts = 0;
  std::size_t pos = 0;
  while (true) {
    const std::size_t slash = text.find('/', pos);
    std::string_view tok = text.substr(pos, slash == std::string_view::npos ? std::string_view::npos : slash - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int c = -1;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), c);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || c < 0 || c >= p_)
      throw Error(Errc::ParseError, "bad field element '" + std::string(text) + "' for " + describe());
    if (++parts > e_) throw Error(Errc::ParseError, "too many components in '" + std::string(text) + "'");
    index += c * scale;
    scale *= p_;
    if (slash == std::string_view::npos) break;
    pos = slash + 1;
  }
  return static_cast<Elem>(index);
}

std::string Field::describe() const {
  std::string s = "F_" + std::to_string(q_);
  if (e_ > 1) {
    s += " (modulus ";
    for (std::size_t i = 0; i < modulus().size(); ++i) {
      if (i) s += ',';
      s += std::to_string(modulus()[i]);
    }
    s += ')';
  }
  return s;
}

}  // namespace ffpat
